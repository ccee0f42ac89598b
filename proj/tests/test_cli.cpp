#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "oracle.hpp"

// Exercises the built `vdna` binary end to end. VDNA_CLI_PATH is injected by
// the build.

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vdna_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VDNA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string run_cli_capture(const std::string& args, int* exit_code = nullptr) {
    TempDir tmp;
    const std::string out_path = tmp.file("stdout.txt");
    const std::string cmd =
        std::string(VDNA_CLI_PATH) + " " + args + " >" + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (exit_code) *exit_code = WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_bytes(const std::string& path, const vdna::Bytes& data) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
}

vdna::Bytes read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return vdna::Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("encode-bytes then decode restores the input exactly") {
    TempDir tmp;
    const auto payload = oracle::random_payload(1500, 808);
    write_bytes(tmp.file("in.bin"), payload);

    CHECK(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("pool.fasta")) == 0);
    CHECK(run_cli("decode " + tmp.file("pool.fasta") + " " + tmp.file("out.bin")) == 0);
    CHECK(read_bytes(tmp.file("out.bin")) == payload);
}

TEST_CASE("verify accepts encoder output and reports lengths") {
    TempDir tmp;
    write_bytes(tmp.file("in.bin"), oracle::random_payload(900, 111));
    REQUIRE(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("pool.fasta") +
                    " --pseudo-decoder") == 0);

    int code = -1;
    const auto out = run_cli_capture("verify " + tmp.file("pool.fasta"), &code);
    CHECK(code == 0);
    CHECK(out.find("length 200 nt") != std::string::npos);
    CHECK(out.find("length 236 nt: 1 oligo") != std::string::npos);
    CHECK(out.find("violations=0") != std::string::npos);
}

TEST_CASE("verify flags violations with exit 3") {
    TempDir tmp;
    std::ofstream fasta(tmp.file("bad.fasta"));
    fasta << ">r0\nAAAAAACGTACGTACGT\n";  // 6-run and low GC
    fasta.close();

    int code = -1;
    const auto out = run_cli_capture("verify " + tmp.file("bad.fasta") + " --format tsv", &code);
    CHECK(code == 3);
    CHECK(out.find("homopolymer") != std::string::npos);
}

TEST_CASE("simulate drop-count then decode reports missing oligos via exit 4") {
    TempDir tmp;
    write_bytes(tmp.file("in.bin"), oracle::random_payload(2000, 222));  // 44 source blocks
    REQUIRE(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("pool.fasta") +
                    " --pseudo-decoder") == 0);

    // A pseudo-decoder pool may still contain a few linearly dependent
    // packets (valid oligos are kept whether or not they raise the rank), so
    // dropping one random oligo is not guaranteed to break decoding. Dropping
    // emitted - n + 1 leaves fewer than n packet rows, which always does.
    std::size_t records = 0;
    {
        std::ifstream fasta(tmp.file("pool.fasta"));
        std::string line;
        while (std::getline(fasta, line)) {
            if (!line.empty() && line[0] == '>') ++records;
        }
    }
    REQUIRE(records > 44);
    const std::size_t drop = records - 44 + 1;

    int code = -1;
    const auto out = run_cli_capture("simulate " + tmp.file("pool.fasta") + " " +
                                         tmp.file("erased.fasta") + " --drop-count " +
                                         std::to_string(drop) + " --seed 5",
                                     &code);
    CHECK(code == 0);
    CHECK(out.find("decode=not-enough-oligos") != std::string::npos);

    CHECK(run_cli("decode " + tmp.file("erased.fasta") + " " + tmp.file("out.bin")) == 4);
}

TEST_CASE("decode without a header exits 5") {
    TempDir tmp;
    std::ofstream fasta(tmp.file("pool.fasta"));
    // two equal-length records: no detectable header
    fasta << ">a\n" << std::string(200, 'A') << "\n>b\n" << std::string(200, 'C') << "\n";
    fasta.close();
    CHECK(run_cli("decode " + tmp.file("pool.fasta") + " " + tmp.file("out.bin")) == 5);
}

TEST_CASE("missing input file exits 7") {
    TempDir tmp;
    CHECK(run_cli("decode " + tmp.file("absent.fasta") + " " + tmp.file("out.bin")) == 7);
    CHECK(run_cli("encode-bytes " + tmp.file("absent.bin") + " " + tmp.file("pool.fasta")) == 7);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("no-such-command") == 2);
    CHECK(run_cli("encode-bytes") == 2);
    TempDir tmp;
    write_bytes(tmp.file("in.bin"), oracle::random_payload(10, 1));
    CHECK(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("o.fasta") +
                  " --mode-byte 7f") == 2);
    CHECK(run_cli("simulate " + tmp.file("o.fasta") + " " + tmp.file("e.fasta") + " --seed 1") ==
          2);
}

TEST_CASE("external tool failure exits 6") {
    TempDir tmp;
    write_bytes(tmp.file("in.png"), oracle::random_payload(10, 2));
    std::ofstream cfg(tmp.file("tools.cfg"));
    cfg << "cjxl=/nonexistent/cjxl\n";
    cfg.close();
    CHECK(run_cli("--config " + tmp.file("tools.cfg") + " encode-image " + tmp.file("in.png") +
                  " " + tmp.file("pool.fasta") + " -q 90") == 6);
}

TEST_CASE("dump-codebook emits 256 table lines") {
    int code = -1;
    const auto out = run_cli_capture("dump-codebook", &code);
    CHECK(code == 0);
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++count;
    }
    CHECK(count == 256);
    CHECK(out.rfind("00\t", 0) == 0);
}

TEST_CASE("dump-params prints the wire constants") {
    int code = -1;
    const auto out = run_cli_capture("dump-params", &code);
    CHECK(code == 0);
    CHECK(out.find("0xA5A5A5A5") != std::string::npos);
    CHECK(out.find("degree.table") != std::string::npos);
}

TEST_CASE("identical invocations produce identical FASTA files") {
    TempDir tmp;
    write_bytes(tmp.file("in.bin"), oracle::random_payload(3000, 777));
    REQUIRE(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("a.fasta")) == 0);
    REQUIRE(run_cli("encode-bytes " + tmp.file("in.bin") + " " + tmp.file("b.fasta")) == 0);
    CHECK(read_bytes(tmp.file("a.fasta")) == read_bytes(tmp.file("b.fasta")));
}
