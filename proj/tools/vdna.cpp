// vdna - command line front end for the DNA fountain codec.
//
// Exit codes:
//   0  success
//   1  unexpected error
//   2  usage error
//   3  constraint violations found by `verify`
//   4  not enough oligos to decode (rank deficient)
//   5  header error (missing, ambiguous, corrupted, unencodable)
//   6  external tool failure
//   7  I/O or FASTA parse error

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <CLI11.hpp>

#include "vdna/vdna.hpp"

namespace fs = std::filesystem;

namespace {

class ExternalToolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// external tool configuration

struct ToolConfig {
    std::string cjxl = "cjxl";
    std::string djxl = "djxl";
    std::string compressor_cmd = "{cjxl} {in} {out} -q {q}";
    std::string transcoder_cmd = "{cjxl} {in} {out}";
    std::string decompressor_cmd = "{djxl} {in} {out}";
};

void apply_config_file(ToolConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw vdna::IoError("cannot open config file '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::string*> keys{{"cjxl", &cfg.cjxl},
                                             {"djxl", &cfg.djxl},
                                             {"compressor_cmd", &cfg.compressor_cmd},
                                             {"transcoder_cmd", &cfg.transcoder_cmd},
                                             {"decompressor_cmd", &cfg.decompressor_cmd}};
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw vdna::IoError("config line " + std::to_string(line_no) +
                                ": expected key=value");
        }
        const std::string key = line.substr(0, eq);
        const auto it = keys.find(key);
        if (it == keys.end()) {
            throw vdna::IoError("config line " + std::to_string(line_no) + ": unknown key '" +
                                key + "'");
        }
        *it->second = line.substr(eq + 1);
    }
}

ToolConfig load_tool_config(const std::string& config_path) {
    ToolConfig cfg;
    if (const char* env = std::getenv("VDNA_CJXL")) cfg.cjxl = env;
    if (const char* env = std::getenv("VDNA_DJXL")) cfg.djxl = env;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    return cfg;
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char ch : s) {
        if (ch == '\'') {
            out += "'\\''";
        } else {
            out += ch;
        }
    }
    out += "'";
    return out;
}

std::string substitute(std::string tmpl, const std::map<std::string, std::string>& vars) {
    for (const auto& [key, value] : vars) {
        const std::string token = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = tmpl.find(token, pos)) != std::string::npos) {
            tmpl.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    return tmpl;
}

// Runs a shell command, capturing combined output; failure surfaces the
// output with a nonzero exit.
void run_external(const std::string& cmd) {
    const std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) throw ExternalToolError("cannot launch: " + cmd);
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0) {
        throw ExternalToolError("command failed (exit " + std::to_string(code) + "): " + cmd +
                                "\n" + output);
    }
}

// ---------------------------------------------------------------------------
// file helpers

vdna::Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vdna::IoError("cannot open '" + path + "' for reading");
    vdna::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw vdna::IoError("failed to read '" + path + "'");
    return data;
}

void write_file(const std::string& path, const vdna::Bytes& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vdna::IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw vdna::IoError("failed to write '" + path + "'");
}

class TempFile {
public:
    explicit TempFile(const std::string& suffix) {
        std::random_device rd;
        path_ = (fs::temp_directory_path() /
                 ("vdna_" + std::to_string(rd()) + std::to_string(rd()) + suffix))
                    .string();
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// ---------------------------------------------------------------------------
// shared option plumbing

struct EncodeOptions {
    std::size_t block_size = vdna::params::kDefaultBlockSize;
    double overhead = vdna::params::kDefaultOverhead;
    bool pseudo_decoder = false;
    std::string mode_byte;
};

void add_encode_options(CLI::App* cmd, EncodeOptions& opts, bool with_mode) {
    cmd->add_option("--block-size", opts.block_size, "Payload block size in bytes [1,255]")
        ->check(CLI::Range(1, 255));
    auto* overhead =
        cmd->add_option("--overhead", opts.overhead, "Fixed overhead fraction (default 0.015)");
    auto* pseudo = cmd->add_flag("--pseudo-decoder", opts.pseudo_decoder,
                                 "Stop at the first decodable pool (minimal overhead)");
    overhead->excludes(pseudo);
    pseudo->excludes(overhead);
    if (with_mode) {
        cmd->add_option("--mode-byte", opts.mode_byte,
                        "Header mode byte, 00 or 11 (hex; default 00)");
    }
}

std::uint8_t parse_mode_byte(const std::string& text) {
    if (text.empty()) return vdna::params::kModeEncode;
    std::string t = text;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    unsigned long value = 0;
    try {
        std::size_t used = 0;
        value = std::stoul(t, &used, 16);
        if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
        throw UsageError("--mode-byte expects a hex byte, got '" + text + "'");
    }
    if (value != vdna::params::kModeEncode && value != vdna::params::kModeTranscode) {
        throw UsageError("--mode-byte must be 00 (encode) or 11 (transcode)");
    }
    return static_cast<std::uint8_t>(value);
}

vdna::EncodeConfig make_encode_config(const EncodeOptions& opts, std::uint8_t mode) {
    vdna::EncodeConfig cfg;
    cfg.block_size = opts.block_size;
    if (opts.pseudo_decoder) {
        cfg.policy = vdna::PseudoDecoder{};
    } else {
        cfg.policy = vdna::FixedOverhead{opts.overhead};
    }
    cfg.mode = mode;
    return cfg;
}

void report_encode(const vdna::EncodeResult& result, const std::string& out_path) {
    const auto& s = result.stats;
    std::cout << "oligos=" << s.emitted << " source_blocks=" << s.source_blocks
              << " aux_blocks=" << s.aux_blocks << " discarded=" << s.discarded
              << " achieved_overhead=" << s.achieved_overhead;
    if (s.overhead_target > 0) {
        std::cout << " target=" << s.overhead_target << " extended=" << (s.extended ? "yes" : "no");
    }
    std::cout << "\nwrote " << out_path << "\n";
}

int encode_bytes_to_fasta(const vdna::Bytes& data, const std::string& out_path,
                          const EncodeOptions& opts, std::uint8_t mode) {
    const auto cfg = make_encode_config(opts, mode);
    const auto result = vdna::encode_stream(data, cfg);
    vdna::write_fasta_file(result.oligos, out_path);
    report_encode(result, out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int cmd_encode_bytes(const std::string& in, const std::string& out, const EncodeOptions& opts) {
    return encode_bytes_to_fasta(read_file(in), out, opts, parse_mode_byte(opts.mode_byte));
}

int cmd_encode_image(const std::string& in, const std::string& out, int quality,
                     const EncodeOptions& opts, const ToolConfig& tools) {
    TempFile bitstream(".jxl");
    run_external(substitute(tools.compressor_cmd, {{"cjxl", shell_quote(tools.cjxl)},
                                                   {"in", shell_quote(in)},
                                                   {"out", shell_quote(bitstream.path())},
                                                   {"q", std::to_string(quality)}}));
    return encode_bytes_to_fasta(read_file(bitstream.path()), out, opts,
                                 vdna::params::kModeEncode);
}

int cmd_transcode_jpeg(const std::string& in, const std::string& out,
                       const EncodeOptions& opts, const ToolConfig& tools) {
    TempFile bitstream(".jxl");
    run_external(substitute(tools.transcoder_cmd, {{"cjxl", shell_quote(tools.cjxl)},
                                                   {"in", shell_quote(in)},
                                                   {"out", shell_quote(bitstream.path())}}));
    return encode_bytes_to_fasta(read_file(bitstream.path()), out, opts,
                                 vdna::params::kModeTranscode);
}

int cmd_decode(const std::string& in, const std::string& out, bool render, bool tolerant,
               const ToolConfig& tools) {
    auto oligos = vdna::records_to_oligos(vdna::read_fasta_file(in));
    const auto decoded = vdna::decode_stream(
        std::move(oligos), tolerant ? vdna::DecodeMode::Tolerant : vdna::DecodeMode::Strict);

    char mode_hex[5];
    std::snprintf(mode_hex, sizeof(mode_hex), "%02X", decoded.mode);
    std::cout << "decoded_bytes=" << decoded.data.size() << " mode=0x" << mode_hex
              << " skipped=" << decoded.skipped_oligos << "\n";

    if (render) {
        TempFile bitstream(".jxl");
        write_file(bitstream.path(), decoded.data);
        run_external(substitute(tools.decompressor_cmd,
                                {{"djxl", shell_quote(tools.djxl)},
                                 {"in", shell_quote(bitstream.path())},
                                 {"out", shell_quote(out)}}));
        std::cout << "rendered " << out << "\n";
    } else {
        write_file(out, decoded.data);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& in, const vdna::ConstraintPolicy& policy,
               const std::string& format) {
    const auto records = vdna::read_fasta_file(in);

    std::map<std::size_t, std::size_t> length_histogram;
    std::size_t violation_count = 0;
    std::ostringstream tsv;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        length_histogram[rec.sequence.size()] += 1;
        const auto report = vdna::validate_oligo(rec.sequence, policy);
        violation_count += report.violations.size();
        for (const auto& v : report.violations) {
            if (format == "tsv") {
                tsv << i << '\t' << rec.description << '\t' << vdna::to_string(v.kind) << '\t'
                    << v.position << '\t' << v.detail << '\n';
            } else {
                std::cout << "record " << i << " (" << rec.description
                          << "): " << vdna::to_string(v.kind) << " at " << v.position << ": "
                          << v.detail << "\n";
            }
        }
    }

    if (format == "tsv") {
        std::cout << tsv.str();
    } else {
        std::cout << "records=" << records.size() << "\n";
        for (const auto& [len, count] : length_histogram) {
            std::cout << "length " << len << " nt: " << count << " oligo"
                      << (count == 1 ? "" : "s") << "\n";
        }
        std::cout << "violations=" << violation_count << "\n";
    }
    return violation_count == 0 ? 0 : 3;
}

int cmd_simulate(const std::string& in, const std::string& out, std::optional<std::size_t> count,
                 std::optional<double> probability, std::uint64_t seed, bool protect_header) {
    auto pool = vdna::records_to_oligos(vdna::read_fasta_file(in));
    if (const auto header = vdna::find_header_bearing(pool)) {
        pool[*header].is_header_bearing = true;
    }

    vdna::ErasurePolicy policy;
    policy.protect_header = protect_header;
    policy.seed = seed;
    if (count) {
        policy.kind = vdna::DropCount{*count};
    } else {
        policy.kind = vdna::DropProbability{*probability};
    }

    const auto survivors = vdna::erase(pool, policy);
    vdna::write_fasta_file(survivors, out);

    std::size_t eligible = 0;
    for (const auto& o : pool) {
        if (!(policy.protect_header && o.is_header_bearing)) ++eligible;
    }
    std::cout << "total=" << pool.size() << " eligible=" << eligible
              << " dropped=" << (pool.size() - survivors.size()) << " survivors="
              << survivors.size() << " protect_header=" << (protect_header ? "yes" : "no")
              << " seed=" << seed << "\n";

    try {
        const auto decoded = vdna::decode_stream(survivors);
        char mode_hex[5];
        std::snprintf(mode_hex, sizeof(mode_hex), "%02X", decoded.mode);
        std::cout << "decode=ok decoded_bytes=" << decoded.data.size() << " mode=0x" << mode_hex
                  << "\n";
    } catch (const vdna::RankDeficientError& e) {
        std::cout << "decode=not-enough-oligos rank=" << e.rank() << " unknowns=" << e.unknowns()
                  << "\n";
    } catch (const vdna::HeaderError&) {
        std::cout << "decode=header-missing\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_dump_params() {
    using namespace vdna::params;
    std::printf("prng.update            s ^= s>>12; s ^= s<<25; s ^= s>>27\n");
    std::printf("prng.multiplier        %llu (0x%016llX)\n",
                static_cast<unsigned long long>(kPrngMultiplier),
                static_cast<unsigned long long>(kPrngMultiplier));
    std::printf("prng.seed_mix          0x%016llX\n",
                static_cast<unsigned long long>(kSeedMix));
    std::printf("header.mask_mix        0x%016llX\n",
                static_cast<unsigned long long>(kHeaderMaskMix));
    std::printf("header.mask            low 48 bits of one draw, little-endian\n");
    std::printf("header.layout          n[4 big-endian] last_block_len mode S;"
                " bytes 0..5 XOR mask(S)\n");
    std::printf("packet.id_mask         0x%08X\n", kIdMask);
    std::printf("packet.layout          masked_id[4 big-endian] || payload[c]\n");
    std::printf("map.phi                00->A 01->C 10->G 11->T, msb pair first\n");
    std::printf("block.default_size     %zu bytes\n", kDefaultBlockSize);
    std::printf("oligo.payload_nt       %zu (block size %zu)\n",
                payload_oligo_nt(kDefaultBlockSize), kDefaultBlockSize);
    std::printf("oligo.header_nt        %zu\n",
                payload_oligo_nt(kDefaultBlockSize) + kHeaderExtraNt);
    std::printf("overhead.default       %.3f\n", kDefaultOverhead);
    std::printf("degree.table          ");
    for (const auto& bin : vdna::DegreeDistribution::rfc5053().bins) {
        std::printf(" (%u,%u)", bin.cumulative_bound, bin.degree);
    }
    std::printf("\n");
    return 0;
}

int cmd_dump_codebook() {
    const auto& book = vdna::Codebook::instance();
    for (int b = 0; b < 256; ++b) {
        const auto cw = book.encode_byte(static_cast<std::uint8_t>(b));
        std::printf("%02x\t%.*s\n", b, static_cast<int>(cw.size()), cw.data());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vdna - binary-to-DNA fountain codec"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file for external tools");

    int exit_code = 0;

    // encode-bytes
    auto* enc = app.add_subcommand("encode-bytes", "Encode a byte stream into a FASTA oligo pool");
    std::string enc_in, enc_out;
    EncodeOptions enc_opts;
    enc->add_option("input", enc_in, "Input file")->required();
    enc->add_option("output", enc_out, "Output FASTA")->required();
    add_encode_options(enc, enc_opts, true);
    enc->callback([&] { exit_code = cmd_encode_bytes(enc_in, enc_out, enc_opts); });

    // encode-image
    auto* img = app.add_subcommand("encode-image",
                                   "Compress an image with the external compressor, then encode");
    std::string img_in, img_out;
    int img_quality = 90;
    EncodeOptions img_opts;
    img->add_option("input", img_in, "Input image (.png)")->required();
    img->add_option("output", img_out, "Output FASTA")->required();
    img->add_option("-q,--quality", img_quality, "Compressor quality parameter")->required();
    add_encode_options(img, img_opts, false);
    img->callback([&] {
        exit_code = cmd_encode_image(img_in, img_out, img_quality, img_opts,
                                     load_tool_config(config_path));
    });

    // transcode-jpeg
    auto* jpg = app.add_subcommand("transcode-jpeg",
                                   "Losslessly recompress a JPEG 1 bitstream, then encode");
    std::string jpg_in, jpg_out;
    EncodeOptions jpg_opts;
    jpg->add_option("input", jpg_in, "Input JPEG (.jpg)")->required();
    jpg->add_option("output", jpg_out, "Output FASTA")->required();
    add_encode_options(jpg, jpg_opts, false);
    jpg->callback([&] {
        exit_code = cmd_transcode_jpeg(jpg_in, jpg_out, jpg_opts, load_tool_config(config_path));
    });

    // decode
    auto* dec = app.add_subcommand("decode", "Decode a FASTA oligo pool back to bytes");
    std::string dec_in, dec_out;
    bool dec_render = false;
    bool dec_tolerant = false;
    dec->add_option("input", dec_in, "Input FASTA")->required();
    dec->add_option("output", dec_out, "Output file")->required();
    dec->add_flag("--render", dec_render, "Run the external decompressor on the decoded bytes");
    dec->add_flag("--tolerant", dec_tolerant, "Skip malformed oligos instead of failing");
    dec->callback([&] {
        exit_code = cmd_decode(dec_in, dec_out, dec_render, dec_tolerant,
                               load_tool_config(config_path));
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Check a FASTA against the biochemical constraints");
    std::string ver_in;
    std::string ver_format = "text";
    auto ver_policy = vdna::ConstraintPolicy::verifier_default();
    ver->add_option("input", ver_in, "Input FASTA")->required();
    ver->add_option("--gc-min", ver_policy.gc_min, "Minimum GC fraction (default 0.40)");
    ver->add_option("--gc-max", ver_policy.gc_max, "Maximum GC fraction (default 0.60)");
    ver->add_option("--max-run", ver_policy.max_homopolymer_run,
                    "Longest allowed homopolymer run (default 3)");
    ver->add_option("--format", ver_format, "Report format: text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    ver->callback([&] { exit_code = cmd_verify(ver_in, ver_policy, ver_format); });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Drop oligos from a pool and report decodability");
    std::string sim_in, sim_out;
    std::size_t sim_count = 0;
    double sim_prob = 0.0;
    std::uint64_t sim_seed = 0;
    bool sim_no_protect = false;
    sim->add_option("input", sim_in, "Input FASTA")->required();
    sim->add_option("output", sim_out, "Degraded output FASTA")->required();
    auto* count_opt = sim->add_option("--drop-count", sim_count, "Drop exactly K eligible oligos");
    auto* prob_opt =
        sim->add_option("--drop-prob", sim_prob, "Drop each eligible oligo with probability P");
    count_opt->excludes(prob_opt);
    prob_opt->excludes(count_opt);
    sim->add_option("--seed", sim_seed, "Erasure seed")->required();
    sim->add_flag("--no-protect-header", sim_no_protect,
                  "Allow the header-bearing oligo to be dropped");
    sim->callback([&] {
        if (count_opt->count() == 0 && prob_opt->count() == 0) {
            throw UsageError("simulate needs --drop-count or --drop-prob");
        }
        std::optional<std::size_t> count;
        std::optional<double> prob;
        if (count_opt->count() > 0) count = sim_count;
        if (prob_opt->count() > 0) prob = sim_prob;
        exit_code = cmd_simulate(sim_in, sim_out, count, prob, sim_seed, !sim_no_protect);
    });

    // dumps
    app.add_subcommand("dump-params", "Print the interop constants")->callback([&] {
        exit_code = cmd_dump_params();
    });
    app.add_subcommand("dump-codebook", "Print the 256-entry header codebook")->callback([&] {
        exit_code = cmd_dump_codebook();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vdna::RankDeficientError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const vdna::HeaderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ExternalToolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const vdna::FastaParseError& e) {
        std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
        return 7;
    } catch (const vdna::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 7;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
