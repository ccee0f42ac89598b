#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "vdna/error.hpp"
#include "vdna/params.hpp"

// Byte <-> 5-nucleotide codebook used for the header segment.
//
// The table is re-derived deterministically instead of transcribed from a
// published dictionary: all 1024 5-nt strings are enumerated in lexicographic
// order (A < C < G < T) and the first 256 satisfying
//   - GC count in {2, 3}                  (40%-60% of 5 nt)
//   - no homopolymer run longer than 3
//   - second nucleotide differs from the first      (start run <= 1)
//   - last three nucleotides not all identical      (end run <= 2)
// become the codewords for bytes 0..255 in enumeration order. The boundary
// rules cap any cross-codeword run at 3 for arbitrary concatenations.

namespace vdna {

namespace detail {

inline constexpr char kNucleotides[4] = {'A', 'C', 'G', 'T'};

inline int nucleotide_digit(char ch) {
    switch (ch) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    }
    return -1;
}

inline bool codeword_qualifies(const char* w) {
    int gc = 0;
    for (int i = 0; i < 5; ++i) {
        if (w[i] == 'G' || w[i] == 'C') ++gc;
    }
    if (gc < 2 || gc > 3) return false;
    int run = 1;
    for (int i = 1; i < 5; ++i) {
        run = (w[i] == w[i - 1]) ? run + 1 : 1;
        if (run > 3) return false;
    }
    if (w[1] == w[0]) return false;
    if (w[2] == w[3] && w[3] == w[4]) return false;
    return true;
}

}  // namespace detail

class Codebook {
public:
    static const Codebook& instance() {
        static const Codebook book;
        return book;
    }

    std::string_view encode_byte(std::uint8_t b) const {
        return {encode_[b].data(), params::kCodewordNt};
    }

    std::uint8_t decode_codeword(std::string_view cw) const {
        if (cw.size() == params::kCodewordNt) {
            int value = 0;
            for (char ch : cw) {
                const int d = detail::nucleotide_digit(ch);
                if (d < 0) throw UnknownCodewordError("codeword '" + std::string(cw) +
                                                      "' contains a non-nucleotide");
                value = value * 4 + d;
            }
            const int b = decode_[static_cast<std::size_t>(value)];
            if (b >= 0) return static_cast<std::uint8_t>(b);
        }
        throw UnknownCodewordError("'" + std::string(cw) + "' is not a codeword");
    }

    // Appends the 5-nt codeword for every byte to `out`.
    void encode_bytes(const std::uint8_t* data, std::size_t size, std::string& out) const {
        for (std::size_t i = 0; i < size; ++i) {
            out.append(encode_[data[i]].data(), params::kCodewordNt);
        }
    }

private:
    Codebook() {
        decode_.fill(-1);
        std::size_t assigned = 0;
        for (int value = 0; value < 1024 && assigned < 256; ++value) {
            char w[5];
            for (int pos = 0; pos < 5; ++pos) {
                w[pos] = detail::kNucleotides[(value >> (2 * (4 - pos))) & 3];
            }
            if (!detail::codeword_qualifies(w)) continue;
            for (int pos = 0; pos < 5; ++pos) encode_[assigned][pos] = w[pos];
            decode_[static_cast<std::size_t>(value)] = static_cast<std::int16_t>(assigned);
            ++assigned;
        }
        if (assigned < 256) {
            throw Error("codebook construction yielded only " + std::to_string(assigned) +
                        " codewords");
        }
    }

    std::array<std::array<char, 5>, 256> encode_{};
    std::array<std::int16_t, 1024> decode_{};
};

}  // namespace vdna
