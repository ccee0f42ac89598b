#include <catch2/catch.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "vdna/fasta.hpp"
#include "vdna/pipeline.hpp"

using namespace vdna;

namespace {

EncodeConfig pseudo_config() {
    EncodeConfig cfg;
    cfg.policy = PseudoDecoder{};
    return cfg;
}

std::uint32_t oligo_id(const Oligo& oligo, std::size_t block_size) {
    std::string seq = oligo.sequence;
    if (oligo.is_header_bearing) seq.resize(seq.size() - params::kHeaderExtraNt);
    return oligo_to_packet(seq, block_size).id;
}

}  // namespace

TEST_CASE("encode/decode round trip across sizes and policies") {
    // Segmentation boundaries (F = 1, c-1, c, c+1) run with the filter
    // disabled: pools with one or two source blocks have too few distinct
    // oligo bodies to ever satisfy the default GC band.
    for (std::size_t size : {std::size_t{1}, std::size_t{45}, std::size_t{46}, std::size_t{47}}) {
        for (int policy = 0; policy < 2; ++policy) {
            EncodeConfig cfg;
            if (policy == 1) cfg.policy = PseudoDecoder{};
            cfg.constraint_policy = oracle::permissive_policy();
            const auto data = oracle::random_payload(size, 7000 + size + policy);
            const auto encoded = encode_stream(data, cfg);
            const auto decoded = decode_stream(encoded.oligos);
            CHECK(decoded.data == data);
            CHECK(decoded.mode == 0x00);
        }
    }
    // Realistic sizes run with the default biochemical policy.
    for (std::size_t size : {std::size_t{1000}, std::size_t{5000}}) {
        for (int policy = 0; policy < 2; ++policy) {
            EncodeConfig cfg;
            if (policy == 1) cfg.policy = PseudoDecoder{};
            const auto data = oracle::random_payload(size, 7000 + size + policy);
            const auto encoded = encode_stream(data, cfg);
            const auto decoded = decode_stream(encoded.oligos);
            CHECK(decoded.data == data);
            CHECK(decoded.mode == 0x00);
        }
    }
}

TEST_CASE("degenerate payloads exhaust the trial budget under the default filter") {
    // A 1-byte payload produces oligos that are ~90% padding; no trial id
    // can reach the default GC band, so the encoder must fail cleanly.
    EncodeConfig cfg;
    cfg.max_trial_ids = 5000;
    const auto data = oracle::random_payload(1, 1);
    CHECK_THROWS_AS(encode_stream(data, cfg), EncodeFailureError);
}

TEST_CASE("pool structure: header first, lengths fixed") {
    const auto data = oracle::random_payload(500, 1234);
    const auto result = encode_stream(data, pseudo_config());
    REQUIRE_FALSE(result.oligos.empty());
    CHECK(result.oligos[0].is_header_bearing);
    CHECK(result.oligos[0].sequence.size() == 236);
    for (std::size_t i = 1; i < result.oligos.size(); ++i) {
        CHECK(result.oligos[i].sequence.size() == 200);
        CHECK_FALSE(result.oligos[i].is_header_bearing);
    }
}

TEST_CASE("payload oligos satisfy the encoder policy post-hoc") {
    const auto data = oracle::random_payload(700, 4321);
    const auto result = encode_stream(data, pseudo_config());
    const auto policy = ConstraintPolicy::encoder_default();
    for (std::size_t i = 0; i < result.oligos.size(); ++i) {
        std::string seq = result.oligos[i].sequence;
        if (result.oligos[i].is_header_bearing) seq.resize(200);
        CHECK(validate_oligo(seq, policy, 200).accepted());
    }
}

TEST_CASE("emitted ids are a strictly increasing subsequence of trial ids") {
    const auto data = oracle::random_payload(600, 99);
    const auto result = encode_stream(data, pseudo_config());
    std::uint32_t prev = 0;
    bool first = true;
    for (const auto& oligo : result.oligos) {
        const std::uint32_t id = oligo_id(oligo, 46);
        if (!first) CHECK(id > prev);
        prev = id;
        first = false;
    }
    CHECK(prev + 1 == result.stats.emitted + result.stats.discarded);
}

TEST_CASE("encoding is deterministic") {
    const auto data = oracle::random_payload(2000, 31337);
    EncodeConfig cfg;  // fixed overhead default
    const auto a = to_fasta_string(encode_stream(data, cfg).oligos);
    const auto b = to_fasta_string(encode_stream(data, cfg).oligos);
    CHECK(a == b);

    const auto c = to_fasta_string(encode_stream(data, pseudo_config()).oligos);
    const auto d2 = to_fasta_string(encode_stream(data, pseudo_config()).oligos);
    CHECK(c == d2);
}

TEST_CASE("stats are consistent") {
    const auto data = oracle::random_payload(460, 808);
    EncodeConfig cfg;
    cfg.policy = FixedOverhead{0.10};
    const auto result = encode_stream(data, cfg);
    CHECK(result.stats.source_blocks == 10);
    CHECK(result.stats.overhead_target == 11);  // 10 * 1.10
    CHECK(result.stats.emitted >= 11);
    CHECK(result.stats.emitted == result.oligos.size());
    CHECK(result.stats.achieved_overhead >= 0.0);
    CHECK(result.stats.achieved_overhead ==
          Approx(static_cast<double>(result.stats.emitted) / 10.0 - 1.0));
    CHECK(result.stats.extended == (result.stats.emitted > 11));
}

TEST_CASE("pseudo-decoder pools are minimal") {
    const auto data = oracle::random_payload(713, 2025);
    const auto result = encode_stream(data, pseudo_config());
    REQUIRE(decode_stream(result.oligos).data == data);

    auto clipped = result.oligos;
    clipped.pop_back();  // last-emitted payload oligo completes the rank
    REQUIRE(clipped.size() >= 1);
    try {
        decode_stream(clipped);
        FAIL("expected rank deficiency");
    } catch (const RankDeficientError& e) {
        CHECK(e.rank() == e.unknowns() - 1);
    }
}

TEST_CASE("mode byte round trips") {
    const auto data = oracle::random_payload(552, 2026);
    EncodeConfig cfg = pseudo_config();
    cfg.mode = 0x11;
    const auto result = encode_stream(data, cfg);
    const auto decoded = decode_stream(result.oligos);
    CHECK(decoded.mode == 0x11);
    CHECK(decoded.data == data);
}

TEST_CASE("exact multiple of the block size keeps a full last block") {
    const auto data = oracle::random_payload(552, 2027);
    const auto result = encode_stream(data, pseudo_config());
    CHECK(decode_stream(result.oligos).data == data);
}

TEST_CASE("wire format is frozen: fixed payload yields known oligos") {
    // Pins the composed format (segmentation, pre-code, LT selection, phi,
    // id mask, filter order, header codebook and mask) for one reference
    // payload. A mismatch means the pool format changed and existing FASTA
    // files would no longer decode.
    const auto data = oracle::random_payload(500, 1234);
    const auto result = encode_stream(data, pseudo_config());
    REQUIRE(result.oligos.size() == 16);
    CHECK(result.stats.discarded == 718);
    CHECK(result.oligos[0].sequence ==
          "GGCCGGCCGGCAGCCCATACACTCGCCACACGATGCCCACTGAACTTATAAAGATGTATGCTAGTTGTTTGTGGCGTCAC"
          "ACTAAAGTAATAATTAAAGGACCAATTTCTTAAGTCTTCCGCGTTCCTTTAATGTCCAATGACAAGCAAGCGCGGATAAG"
          "ATCTGCGCTAAGCTATGTGTCGGTTTGAAACTAACTCACGACGATACTGTTACCAACTAACATGTGCATGAACAAC");
    CHECK(result.oligos[1].sequence ==
          "GGCCGGCCGGCAGCTAGTATTCGTTAGCTCCTACGCTCATACTGACTTACACATTGCATCCGTACTATTTGACAAGCTCA"
          "TTGAGGCCTCGACCAGATGGCTGAGACTTGACCTTATGAGTCTCATTCCCATAACAAATCGTGCGCATGTCCGTGATAGG"
          "CACTGCTCATGATGATCTTATTAGCACACGGTGGGTACTG");
}

TEST_CASE("non-default block sizes round trip") {
    for (std::size_t block_size : {std::size_t{23}, std::size_t{101}}) {
        EncodeConfig cfg = pseudo_config();
        cfg.block_size = block_size;
        const auto data = oracle::random_payload(block_size * 14 + 5, 3000 + block_size);
        const auto result = encode_stream(data, cfg);
        CHECK(result.oligos[0].sequence.size() == (block_size + 4) * 4 + 36);
        for (std::size_t i = 1; i < result.oligos.size(); ++i) {
            CHECK(result.oligos[i].sequence.size() == (block_size + 4) * 4);
        }
        CHECK(decode_stream(result.oligos).data == data);
    }
}

TEST_CASE("strict decode rejects malformed oligos, tolerant skips them") {
    const auto data = oracle::random_payload(800, 6001);
    EncodeConfig cfg;
    cfg.policy = FixedOverhead{0.30};
    auto pool = encode_stream(data, cfg).oligos;

    // append a damaged duplicate (truncated: no longer a whole byte count);
    // the intact pool is untouched, so tolerant decode must still succeed
    pool.push_back(pool[3]);
    pool.back().sequence.resize(197);

    CHECK_THROWS_AS(decode_stream(pool, DecodeMode::Strict), MalformedOligoError);

    const auto decoded = decode_stream(pool, DecodeMode::Tolerant);
    CHECK(decoded.skipped_oligos == 1);
    CHECK(decoded.data == data);
}

TEST_CASE("decode order and duplication invariance at the pool level") {
    const auto data = oracle::random_payload(650, 6002);
    auto pool = encode_stream(data, pseudo_config()).oligos;
    // move the header-bearing oligo to the middle, duplicate a payload oligo
    std::swap(pool[0], pool[pool.size() / 2]);
    pool.push_back(pool.back());
    const auto decoded = decode_stream(pool);
    CHECK(decoded.data == data);
}

TEST_CASE("config validation") {
    const auto data = oracle::random_payload(10, 6003);
    EncodeConfig cfg;
    cfg.policy = FixedOverhead{-0.1};
    CHECK_THROWS_AS(encode_stream(data, cfg), ConfigError);

    EncodeConfig big;
    big.max_trial_ids = (std::uint64_t{1} << 32) + 1;
    CHECK_THROWS_AS(encode_stream(data, big), ConfigError);

    CHECK_THROWS_AS(encode_stream({}, EncodeConfig{}), EmptyPayloadError);
}

TEST_CASE("overhead target arithmetic avoids float drift") {
    // 1000 * 1.015 must be exactly 1015, not 1016
    const auto data = oracle::random_payload(46'000, 555);
    EncodeConfig cfg;  // default FixedOverhead(0.015)
    const auto result = encode_stream(data, cfg);
    CHECK(result.stats.source_blocks == 1000);
    CHECK(result.stats.overhead_target == 1015);
}
