#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "vdna/error.hpp"
#include "vdna/params.hpp"

// Deterministic pseudo-random machinery shared by encoder and decoder.
// Every function is a pure function of its inputs; the decoder reproduces
// the encoder's block selections from the packet Id alone.

namespace vdna {

struct PrngState {
    std::uint64_t state = params::kSeedMix;
};

inline PrngState prng_init(std::uint64_t seed) {
    std::uint64_t s = seed ^ params::kSeedMix;
    if (s == 0) s = params::kSeedMix;
    return {s};
}

// xorshift-star: state update by three shifts, output by multiplication.
inline std::uint64_t prng_next(PrngState& st) {
    std::uint64_t s = st.state;
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    st.state = s;
    return s * params::kPrngMultiplier;
}

struct DegreeDistribution {
    struct Bin {
        std::uint32_t cumulative_bound;  // exclusive upper bound over [0, 2^20)
        std::uint32_t degree;
    };
    std::vector<Bin> bins;

    // RFC 5053 degree table.
    static const DegreeDistribution& rfc5053() {
        static const DegreeDistribution d{{{10241, 1},
                                           {491582, 2},
                                           {712794, 3},
                                           {831695, 4},
                                           {948446, 10},
                                           {1032189, 11},
                                           {1048576, 40}}};
        return d;
    }

    void validate() const {
        if (bins.empty() || bins.back().cumulative_bound != (1u << 20)) {
            throw ConfigError("degree distribution must end at 2^20");
        }
        std::uint32_t prev = 0;
        for (const Bin& b : bins) {
            if (b.cumulative_bound <= prev || b.degree == 0) {
                throw ConfigError("degree distribution bounds must be increasing, degrees > 0");
            }
            prev = b.cumulative_bound;
        }
    }
};

// Threshold lookup: the first bin whose bound exceeds v.
inline std::uint32_t degree_for_value(std::uint32_t v, const DegreeDistribution& d) {
    for (const auto& bin : d.bins) {
        if (bin.cumulative_bound > v) return bin.degree;
    }
    throw ConfigError("degree value outside distribution range");
}

inline std::uint32_t sample_degree(PrngState& st, const DegreeDistribution& d) {
    const auto v = static_cast<std::uint32_t>(prng_next(st) & ((1u << 20) - 1));
    return degree_for_value(v, d);
}

// Samples `degree` distinct indices from [0, pool_size) by a partial
// Fisher-Yates shuffle; returned in ascending order.
inline std::vector<std::uint32_t> sample_indices(PrngState& st, std::uint32_t degree,
                                                 std::uint32_t pool_size) {
    if (degree == 0 || degree > pool_size) {
        throw ConfigError("degree must be in [1, pool size]");
    }
    std::vector<std::uint32_t> arr(pool_size);
    std::iota(arr.begin(), arr.end(), 0u);
    for (std::uint32_t k = 0; k < degree; ++k) {
        const std::uint64_t v = prng_next(st);
        const std::uint32_t j = k + static_cast<std::uint32_t>(v % (pool_size - k));
        std::swap(arr[k], arr[j]);
    }
    arr.resize(degree);
    std::sort(arr.begin(), arr.end());
    return arr;
}

// 6-byte mask for the binary header: the S parameter seeds the generator
// directly (XORed with its own mixing constant), one draw supplies the low
// 48 bits, serialized little-endian.
inline std::array<std::uint8_t, 6> header_mask(std::uint8_t s_param) {
    PrngState st{static_cast<std::uint64_t>(s_param) ^ params::kHeaderMaskMix};
    const std::uint64_t v = prng_next(st);
    std::array<std::uint8_t, 6> mask{};
    for (int i = 0; i < 6; ++i) {
        mask[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF);
    }
    return mask;
}

}  // namespace vdna
