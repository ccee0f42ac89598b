#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

// Bit-packed GF(2) rows and an incremental elimination that tracks the rank
// of a growing row set. Row insertion reduces against stored pivot rows; a
// nonzero remainder becomes a new pivot.

namespace vdna {

class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    std::size_t width() const { return width_; }

    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }

    bool test(std::size_t i) const {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    BitRow& operator^=(const BitRow& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    bool any() const {
        for (std::uint64_t w : words_) {
            if (w != 0) return true;
        }
        return false;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t lowest_set_bit() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) {
                return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
            }
        }
        return npos;
    }

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

class IncrementalElimination {
public:
    explicit IncrementalElimination(std::size_t unknowns)
        : unknowns_(unknowns), pivots_(unknowns), has_pivot_(unknowns, false) {}

    // Reduces the row against the current pivots; returns true when the row
    // was independent and increased the rank.
    bool insert(BitRow row) {
        for (;;) {
            const std::size_t c = row.lowest_set_bit();
            if (c == BitRow::npos) return false;
            if (!has_pivot_[c]) {
                pivots_[c] = std::move(row);
                has_pivot_[c] = true;
                ++rank_;
                return true;
            }
            row ^= pivots_[c];
        }
    }

    std::size_t rank() const { return rank_; }
    std::size_t unknowns() const { return unknowns_; }
    bool complete() const { return rank_ == unknowns_; }

private:
    std::size_t unknowns_;
    std::size_t rank_ = 0;
    std::vector<BitRow> pivots_;
    std::vector<bool> has_pivot_;
};

}  // namespace vdna
