#include <catch2/catch.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "vdna/fasta.hpp"

using namespace vdna;

TEST_CASE("write_fasta emits one record per oligo, single-line sequences") {
    std::vector<Oligo> pool{{"ACGT", false}, {"TTAA", false}};
    const std::string text = to_fasta_string(pool);
    CHECK(text == ">oligo_0\nACGT\n>oligo_1\nTTAA\n");
}

TEST_CASE("read accepts what write produces") {
    std::vector<Oligo> pool{{"ACGTACGT", false}, {"TGCATGCA", false}, {"AAAACCCC", false}};
    std::istringstream in(to_fasta_string(pool));
    const auto records = read_fasta(in);
    REQUIRE(records.size() == 3);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].description == "oligo_" + std::to_string(i));
        CHECK(records[i].sequence == pool[i].sequence);
    }
}

TEST_CASE("liberal input forms") {
    SECTION("multi-line sequences are concatenated") {
        std::istringstream in(">r1\nACGT\nACGT\n\n>r2\nTT\nAA\n");
        const auto records = read_fasta(in);
        REQUIRE(records.size() == 2);
        CHECK(records[0].sequence == "ACGTACGT");
        CHECK(records[1].sequence == "TTAA");
    }
    SECTION("lowercase is upcased") {
        std::istringstream in(">r\nacgt\n");
        CHECK(read_fasta(in)[0].sequence == "ACGT");
    }
    SECTION("CRLF matches LF") {
        std::istringstream crlf(">r\r\nACGT\r\n");
        std::istringstream lf(">r\nACGT\n");
        CHECK(read_fasta(crlf)[0].sequence == read_fasta(lf)[0].sequence);
    }
    SECTION("missing trailing newline still parses") {
        std::istringstream in(">r\nACGT");
        CHECK(read_fasta(in)[0].sequence == "ACGT");
    }
}

TEST_CASE("parse errors carry line numbers") {
    SECTION("content before any record") {
        std::istringstream in("ACGT\n>r\nACGT\n");
        try {
            read_fasta(in);
            FAIL("expected parse error");
        } catch (const FastaParseError& e) {
            CHECK(e.line() == 1);
        }
    }
    SECTION("invalid character") {
        std::istringstream in(">r\nACGT\nACXT\n");
        try {
            read_fasta(in);
            FAIL("expected parse error");
        } catch (const FastaParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SECTION("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(read_fasta(in), FastaParseError);
    }
    SECTION("record with no sequence") {
        std::istringstream in(">r1\n>r2\nACGT\n");
        CHECK_THROWS_AS(read_fasta(in), FastaParseError);
    }
}

TEST_CASE("write-read-write is byte stable") {
    std::istringstream in(">anything here\nac\ngt\n\n>other\nTTAA\n");
    const auto records = read_fasta(in);
    const auto pool = records_to_oligos(records);
    const std::string once = to_fasta_string(pool);
    std::istringstream again(once);
    const std::string twice = to_fasta_string(records_to_oligos(read_fasta(again)));
    CHECK(once == twice);
}
