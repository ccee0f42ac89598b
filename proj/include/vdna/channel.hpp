#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "vdna/error.hpp"
#include "vdna/oligo.hpp"
#include "vdna/randomness.hpp"

// Erasure-channel harness: drops oligos from a pool to measure how much loss
// the overhead absorbs. Erasures only; in-oligo errors are out of scope.

namespace vdna {

struct DropCount {
    std::size_t count = 0;
};

struct DropProbability {
    double probability = 0.0;
};

struct ErasurePolicy {
    std::variant<DropCount, DropProbability> kind = DropCount{0};
    bool protect_header = true;
    std::uint64_t seed = 0;
};

// The unique strictly-longest oligo, if any; mirrors the decoder's header
// detection without parsing.
inline std::optional<std::size_t> find_header_bearing(const std::vector<Oligo>& pool) {
    if (pool.empty()) return std::nullopt;
    if (pool.size() == 1) return 0;
    std::size_t longest = 0;
    for (const Oligo& o : pool) longest = std::max(longest, o.sequence.size());
    std::optional<std::size_t> index;
    std::size_t count = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i].sequence.size() == longest) {
            index = i;
            ++count;
        }
    }
    if (count != 1) return std::nullopt;
    return index;
}

inline std::vector<Oligo> erase(const std::vector<Oligo>& pool, const ErasurePolicy& policy) {
    std::vector<std::size_t> eligible;
    eligible.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (policy.protect_header && pool[i].is_header_bearing) continue;
        eligible.push_back(i);
    }

    std::vector<bool> dropped(pool.size(), false);
    PrngState st = prng_init(policy.seed);

    if (const auto* count = std::get_if<DropCount>(&policy.kind)) {
        if (count->count > eligible.size()) {
            throw PolicyError("cannot drop " + std::to_string(count->count) + " of " +
                              std::to_string(eligible.size()) + " eligible oligos");
        }
        if (count->count > 0) {
            for (std::uint32_t pos : sample_indices(st, static_cast<std::uint32_t>(count->count),
                                                    static_cast<std::uint32_t>(eligible.size()))) {
                dropped[eligible[pos]] = true;
            }
        }
    } else {
        const double p = std::get<DropProbability>(policy.kind).probability;
        if (p < 0.0 || p > 1.0) throw PolicyError("drop probability must be in [0, 1]");
        for (std::size_t idx : eligible) {
            const double u = std::ldexp(static_cast<double>(prng_next(st)), -64);
            if (u < p) dropped[idx] = true;
        }
    }

    std::vector<Oligo> survivors;
    survivors.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!dropped[i]) survivors.push_back(pool[i]);
    }
    return survivors;
}

}  // namespace vdna
