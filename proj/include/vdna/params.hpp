#pragma once

#include <cstddef>
#include <cstdint>

// Interop constants. Two independent implementations of this codec must
// agree on every value in this header to exchange FASTA files.

namespace vdna::params {

// Seed mixer applied when a 32/64-bit seed is turned into a generator state.
inline constexpr std::uint64_t kSeedMix = 0x9E3779B97F4A7C15ull;

// Seed mixer for the 6-byte header mask derived from the S parameter.
inline constexpr std::uint64_t kHeaderMaskMix = 0xC2B2AE3D27D4EB4Full;

// xorshift-star output multiplier.
inline constexpr std::uint64_t kPrngMultiplier = 2685821657736338717ull;

// Fixed mask XORed over the 32-bit packet Id before it is written to the wire.
inline constexpr std::uint32_t kIdMask = 0xA5A5A5A5u;

// Default payload block size in bytes; 46 bytes yield 200-nucleotide oligos.
inline constexpr std::size_t kDefaultBlockSize = 46;

// Default fixed-overhead fraction.
inline constexpr double kDefaultOverhead = 0.015;

// Binary header: n (4 bytes, big-endian), last-block length, mode, S.
inline constexpr std::size_t kHeaderBytes = 7;

// Each header byte maps to a 5-nucleotide codeword.
inline constexpr std::size_t kCodewordNt = 5;
inline constexpr std::size_t kHeaderSegmentNt = kHeaderBytes * kCodewordNt;

// Joint nucleotide + header segment appended to the first oligo.
inline constexpr std::size_t kHeaderExtraNt = 1 + kHeaderSegmentNt;

inline constexpr std::uint8_t kModeEncode = 0x00;
inline constexpr std::uint8_t kModeTranscode = 0x11;

// Nucleotide length of a payload oligo for a given block size.
inline constexpr std::size_t payload_oligo_nt(std::size_t block_size) {
    return (4 + block_size) * 4;
}

}  // namespace vdna::params
