#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "vdna/constraints.hpp"
#include "vdna/error.hpp"
#include "vdna/oligo.hpp"
#include "vdna/params.hpp"
#include "vdna/raptor.hpp"

// End-to-end encode/decode orchestration: segmentation, the constraint
// filter loop over sequential trial ids, the stopping policies, and header
// attachment. Everything is deterministic, so identical inputs produce
// byte-identical FASTA pools.

namespace vdna {

// Emit ceil(n * (1 + theta)) valid oligos, then extend until the pool is
// decodable (extension is the exception, not the rule).
struct FixedOverhead {
    double theta = params::kDefaultOverhead;
};

// Stop at the first packet that makes the pool decodable: minimal overhead,
// higher encoding cost.
struct PseudoDecoder {};

using StoppingPolicy = std::variant<FixedOverhead, PseudoDecoder>;

struct EncodeConfig {
    std::size_t block_size = params::kDefaultBlockSize;
    StoppingPolicy policy = FixedOverhead{};
    ConstraintPolicy constraint_policy = ConstraintPolicy::encoder_default();
    std::uint8_t mode = params::kModeEncode;
    std::uint64_t max_trial_ids = std::uint64_t{1} << 32;
};

struct EncodeStats {
    std::size_t source_blocks = 0;
    std::size_t aux_blocks = 0;
    std::size_t emitted = 0;
    std::size_t discarded = 0;
    std::size_t overhead_target = 0;  // 0 under the pseudo-decoder policy
    bool extended = false;            // fixed-overhead pool grew past the target
    double achieved_overhead = 0.0;
};

struct EncodeResult {
    std::vector<Oligo> oligos;  // header-bearing oligo first
    EncodeStats stats;
};

namespace detail {

// ceil(n * theta) with a snap against binary representation error, so a
// nominally integral product (1000 * 0.015) never rounds up an extra oligo.
inline std::size_t overhead_count(std::size_t n, double theta) {
    const double v = static_cast<double>(n) * theta;
    return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

}  // namespace detail

inline EncodeResult encode_stream(std::span<const std::uint8_t> data, const EncodeConfig& cfg) {
    if (const auto* fixed = std::get_if<FixedOverhead>(&cfg.policy)) {
        if (fixed->theta < 0.0) throw ConfigError("overhead must be >= 0");
    }
    if (cfg.max_trial_ids > (std::uint64_t{1} << 32)) {
        throw ConfigError("trial ids are 32-bit; max_trial_ids cannot exceed 2^32");
    }

    const SourceBlockPool pool = segment(data, cfg.block_size);
    const std::size_t n = pool.block_count();
    if (n > 0xFFFFFFFFull) {
        throw ConfigError("source block count does not fit the 32-bit header field");
    }
    const AuxStructure aux = aux_structure(n);
    const std::vector<Bytes> intermediates = build_intermediates(pool, aux);
    const DegreeDistribution& degrees = DegreeDistribution::rfc5053();
    const std::size_t oligo_nt = params::payload_oligo_nt(cfg.block_size);

    const bool pseudo = std::holds_alternative<PseudoDecoder>(cfg.policy);
    const std::size_t target =
        pseudo ? 0 : n + detail::overhead_count(n, std::get<FixedOverhead>(cfg.policy).theta);

    DecodabilityChecker checker(aux, degrees);
    std::vector<Oligo> kept;
    std::size_t discarded = 0;
    bool done = false;

    for (std::uint64_t trial = 0; trial < cfg.max_trial_ids && !done; ++trial) {
        const auto id = static_cast<std::uint32_t>(trial);
        const Packet packet = lt_packet(id, intermediates, degrees);
        Oligo oligo = packet_to_oligo(packet);
        if (!validate_oligo(oligo.sequence, cfg.constraint_policy, oligo_nt).accepted()) {
            ++discarded;
            continue;
        }
        kept.push_back(std::move(oligo));
        const bool decodable = checker.insert(id);
        done = pseudo ? decodable : (kept.size() >= target && decodable);
    }
    if (!done) {
        throw EncodeFailureError("trial-id budget exhausted after " +
                                 std::to_string(cfg.max_trial_ids) + " candidates");
    }

    const HeaderSegment header =
        build_header_segment(static_cast<std::uint32_t>(n),
                             static_cast<std::uint8_t>(pool.last_block_len), cfg.mode,
                             cfg.constraint_policy);
    kept.front() = attach_header(kept.front(), header.sequence);

    EncodeResult result;
    result.stats.source_blocks = n;
    result.stats.aux_blocks = aux.aux_count();
    result.stats.emitted = kept.size();
    result.stats.discarded = discarded;
    result.stats.overhead_target = target;
    result.stats.extended = !pseudo && kept.size() > target;
    result.stats.achieved_overhead =
        static_cast<double>(kept.size()) / static_cast<double>(n) - 1.0;
    result.oligos = std::move(kept);
    return result;
}

enum class DecodeMode { Strict, Tolerant };

struct DecodeResult {
    Bytes data;
    std::uint8_t mode = params::kModeEncode;
    std::size_t skipped_oligos = 0;  // tolerant mode only
};

inline DecodeResult decode_stream(std::vector<Oligo> oligos,
                                  DecodeMode decode_mode = DecodeMode::Strict) {
    ParsedHeader parsed = detect_and_parse_header(std::move(oligos));
    const std::size_t n = parsed.fields.source_block_count;

    // The stripped header oligo pins the payload oligo length, hence the
    // block size; the header itself does not carry it.
    const std::size_t payload_nt = parsed.oligos[parsed.header_index].sequence.size();
    const std::size_t block_size = payload_nt / 4 - 4;
    if (block_size < 1 || block_size > 255) {
        throw CorruptedHeaderError("payload oligo length " + std::to_string(payload_nt) +
                                   " implies block size " + std::to_string(block_size) +
                                   ", outside [1, 255]");
    }
    if (parsed.fields.last_block_len > block_size) {
        throw CorruptedHeaderError("last-block length " +
                                   std::to_string(parsed.fields.last_block_len) +
                                   " exceeds block size " + std::to_string(block_size));
    }

    std::vector<Packet> packets;
    packets.reserve(parsed.oligos.size());
    std::size_t skipped = 0;
    for (const Oligo& o : parsed.oligos) {
        try {
            packets.push_back(oligo_to_packet(o.sequence, block_size));
        } catch (const MalformedOligoError&) {
            if (decode_mode == DecodeMode::Strict) throw;
            ++skipped;
        }
    }

    std::vector<Bytes> blocks = decode_blocks(packets, n, block_size);

    DecodeResult result;
    result.mode = parsed.fields.mode;
    result.skipped_oligos = skipped;
    result.data.reserve(n * block_size);
    for (const Bytes& b : blocks) result.data.insert(result.data.end(), b.begin(), b.end());
    result.data.resize((n - 1) * block_size + parsed.fields.last_block_len);
    return result;
}

}  // namespace vdna
