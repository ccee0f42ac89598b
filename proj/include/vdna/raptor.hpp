#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vdna/error.hpp"
#include "vdna/gf2.hpp"
#include "vdna/params.hpp"
#include "vdna/randomness.hpp"

// RU10 Raptor core: payload segmentation, the auxiliary (LDPC + Half)
// pre-code structure, LT packet generation, and GF(2) Gaussian-elimination
// decoding over the intermediate blocks.

namespace vdna {

using Bytes = std::vector<std::uint8_t>;

struct SourceBlockPool {
    std::vector<Bytes> blocks;   // each exactly block_size bytes
    std::size_t block_size = 0;
    std::size_t last_block_len = 0;  // true byte count of the final block

    std::size_t block_count() const { return blocks.size(); }

    std::size_t payload_size() const {
        return (blocks.size() - 1) * block_size + last_block_len;
    }
};

// For each auxiliary block, the indices of the intermediate blocks it is the
// XOR of. LDPC relations reference source indices; Half relations reference
// source and LDPC indices.
struct AuxStructure {
    std::size_t source_count = 0;
    std::size_t s_count = 0;  // LDPC blocks
    std::size_t h_count = 0;  // Half blocks
    std::vector<std::vector<std::uint32_t>> relations;

    std::size_t aux_count() const { return s_count + h_count; }
    std::size_t intermediate_count() const { return source_count + aux_count(); }
};

struct Packet {
    std::uint32_t id = 0;
    Bytes payload;
};

inline SourceBlockPool segment(std::span<const std::uint8_t> data, std::size_t block_size) {
    if (data.empty()) throw EmptyPayloadError("cannot encode an empty payload");
    if (block_size < 1 || block_size > 255) {
        throw ConfigError("block size must be in [1, 255]");
    }
    const std::size_t n = (data.size() + block_size - 1) / block_size;
    SourceBlockPool pool;
    pool.block_size = block_size;
    pool.blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = i * block_size;
        const std::size_t take = std::min(block_size, data.size() - off);
        Bytes block(block_size, 0x00);
        std::copy(data.begin() + static_cast<std::ptrdiff_t>(off),
                  data.begin() + static_cast<std::ptrdiff_t>(off + take), block.begin());
        pool.blocks.push_back(std::move(block));
    }
    pool.last_block_len = data.size() - (n - 1) * block_size;
    return pool;
}

namespace detail {

inline bool is_prime(std::size_t v) {
    if (v < 2) return false;
    for (std::size_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

// C(h, floor(h/2)-complement) with saturation; only the comparison against
// small counts matters.
inline std::uint64_t central_binomial(std::size_t h, std::size_t k) {
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t num = h - k + i;
        if (result > (~std::uint64_t{0}) / num) return ~std::uint64_t{0};
        result = result * num / i;
    }
    return result;
}

}  // namespace detail

// Pre-code structure derived deterministically from the source block count.
//   X: smallest positive integer with X(X-1) >= 2n
//   S: smallest prime >= ceil(n/100) + X
//   H: smallest integer with C(H, ceil(H/2)) >= n + S
// Each source block feeds three LDPC blocks at b, b+a, b+2a (mod S); Half
// block h is fed by every index j < n+S whose Gray sequence element m[j]
// (the j-th Gray code with exactly ceil(H/2) one-bits) has bit h set.
inline AuxStructure aux_structure(std::size_t n) {
    if (n < 1) throw ConfigError("source block count must be >= 1");

    std::size_t x = 1;
    while (x * (x - 1) < 2 * n) ++x;

    std::size_t s = (n + 99) / 100 + x;
    while (!detail::is_prime(s)) ++s;

    std::size_t h = 1;
    while (detail::central_binomial(h, (h + 1) / 2) < n + s) ++h;
    const std::size_t h_half = (h + 1) / 2;

    AuxStructure aux;
    aux.source_count = n;
    aux.s_count = s;
    aux.h_count = h;
    aux.relations.assign(s + h, {});

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = 1 + (i / s) % (s - 1);
        std::size_t b = i % s;
        for (int round = 0; round < 3; ++round) {
            aux.relations[b].push_back(static_cast<std::uint32_t>(i));
            b = (b + a) % s;
        }
    }

    // Gray sequence elements with exactly h_half one-bits, one per source or
    // LDPC index.
    std::vector<std::uint64_t> gray;
    gray.reserve(n + s);
    for (std::uint64_t k = 0; gray.size() < n + s; ++k) {
        const std::uint64_t g = k ^ (k >> 1);
        if (static_cast<std::size_t>(std::popcount(g)) == h_half) gray.push_back(g);
    }
    for (std::size_t j = 0; j < n + s; ++j) {
        for (std::size_t bit = 0; bit < h; ++bit) {
            if ((gray[j] >> bit) & 1u) {
                aux.relations[s + bit].push_back(static_cast<std::uint32_t>(j));
            }
        }
    }
    return aux;
}

inline void xor_into(Bytes& dst, const Bytes& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

// Intermediate pool {source blocks, LDPC blocks, Half blocks}, each the XOR
// of its contributors. Half contributors may include LDPC blocks, which are
// built first.
inline std::vector<Bytes> build_intermediates(const SourceBlockPool& pool,
                                              const AuxStructure& aux) {
    const std::size_t c = pool.block_size;
    std::vector<Bytes> blocks;
    blocks.reserve(aux.intermediate_count());
    for (const Bytes& b : pool.blocks) blocks.push_back(b);
    for (std::size_t j = 0; j < aux.aux_count(); ++j) {
        Bytes acc(c, 0x00);
        for (std::uint32_t idx : aux.relations[j]) xor_into(acc, blocks[idx]);
        blocks.push_back(std::move(acc));
    }
    return blocks;
}

// Block selection for a packet Id: seed the generator, sample a degree
// (capped at the pool size), then sample that many distinct indices.
inline std::vector<std::uint32_t> lt_selection(std::uint32_t id, std::size_t pool_size,
                                               const DegreeDistribution& d) {
    PrngState st = prng_init(id);
    const std::uint32_t degree =
        std::min<std::uint32_t>(sample_degree(st, d), static_cast<std::uint32_t>(pool_size));
    return sample_indices(st, degree, static_cast<std::uint32_t>(pool_size));
}

inline Packet lt_packet(std::uint32_t id, const std::vector<Bytes>& intermediates,
                        const DegreeDistribution& d) {
    Packet p;
    p.id = id;
    p.payload.assign(intermediates.front().size(), 0x00);
    for (std::uint32_t idx : lt_selection(id, intermediates.size(), d)) {
        xor_into(p.payload, intermediates[idx]);
    }
    return p;
}

namespace detail {

// Zero-RHS row stating that an auxiliary block XORed with its contributors
// vanishes. Contributor indices within one relation are distinct and never
// collide with the block's own index.
inline BitRow constraint_row(const AuxStructure& aux, std::size_t j) {
    BitRow row(aux.intermediate_count());
    row.set(aux.source_count + j);
    for (std::uint32_t idx : aux.relations[j]) row.set(idx);
    return row;
}

}  // namespace detail

// Incremental decodability check: the elimination state starts from the
// auxiliary constraint rows and accepts packet rows one by one; the system
// is decodable once the rank reaches the intermediate count. Monotone.
class DecodabilityChecker {
public:
    DecodabilityChecker(const AuxStructure& aux, const DegreeDistribution& d)
        : aux_(&aux), degrees_(&d), elim_(aux.intermediate_count()) {
        for (std::size_t j = 0; j < aux.aux_count(); ++j) {
            elim_.insert(detail::constraint_row(aux, j));
        }
    }

    bool insert(std::uint32_t packet_id) {
        BitRow row(aux_->intermediate_count());
        for (std::uint32_t idx : lt_selection(packet_id, aux_->intermediate_count(), *degrees_)) {
            row.set(idx);
        }
        elim_.insert(std::move(row));
        return decodable();
    }

    bool decodable() const { return elim_.complete(); }
    std::size_t rank() const { return elim_.rank(); }
    std::size_t unknowns() const { return elim_.unknowns(); }

private:
    const AuxStructure* aux_;
    const DegreeDistribution* degrees_;
    IncrementalElimination elim_;
};

// Solves the packet/constraint system by Gaussian elimination with partial
// pivoting over GF(2) and returns the n source blocks. Pivot selection takes
// the lowest-index candidate row, which keeps elimination deterministic.
inline std::vector<Bytes> decode_blocks(const std::vector<Packet>& packets, std::size_t n,
                                        std::size_t block_size,
                                        const DegreeDistribution& d = DegreeDistribution::rfc5053()) {
    const AuxStructure aux = aux_structure(n);
    const std::size_t unknowns = aux.intermediate_count();

    // A system with fewer rows than unknowns cannot reach full rank; bail
    // out before materializing it (a corrupted header can make n huge). The
    // carried rank is the row count, an upper bound on the achievable rank.
    const std::size_t row_count = aux.aux_count() + packets.size();
    if (row_count < unknowns) {
        throw RankDeficientError(row_count, unknowns,
                                 "not enough oligos: " + std::to_string(packets.size()) +
                                     " packets cannot determine " + std::to_string(n) +
                                     " source blocks (rank <= " + std::to_string(row_count) +
                                     " of " + std::to_string(unknowns) + ")");
    }

    struct Row {
        BitRow mask;
        Bytes rhs;
    };
    std::vector<Row> rows;
    rows.reserve(row_count);
    for (std::size_t j = 0; j < aux.aux_count(); ++j) {
        rows.push_back({detail::constraint_row(aux, j), Bytes(block_size, 0x00)});
    }
    for (const Packet& p : packets) {
        if (p.payload.size() != block_size) {
            throw MalformedOligoError("packet payload length " +
                                      std::to_string(p.payload.size()) + ", expected " +
                                      std::to_string(block_size));
        }
        BitRow mask(unknowns);
        for (std::uint32_t idx : lt_selection(p.id, unknowns, d)) mask.set(idx);
        rows.push_back({std::move(mask), p.payload});
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
        std::size_t pivot = BitRow::npos;
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r].mask.test(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == BitRow::npos) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r].mask.test(col)) {
                rows[r].mask ^= rows[rank].mask;
                xor_into(rows[r].rhs, rows[rank].rhs);
            }
        }
        ++rank;
    }

    if (rank < unknowns) {
        throw RankDeficientError(rank, unknowns,
                                 "not enough oligos: system rank " + std::to_string(rank) +
                                     " of " + std::to_string(unknowns));
    }

    // Full rank: pivot i sits on column i. Clear everything above the
    // diagonal, then read the solution off the right-hand sides.
    for (std::size_t i = unknowns; i-- > 0;) {
        for (std::size_t r = 0; r < i; ++r) {
            if (rows[r].mask.test(i)) {
                rows[r].mask ^= rows[i].mask;
                xor_into(rows[r].rhs, rows[i].rhs);
            }
        }
    }

    std::vector<Bytes> source;
    source.reserve(n);
    for (std::size_t i = 0; i < n; ++i) source.push_back(std::move(rows[i].rhs));
    return source;
}

}  // namespace vdna
