#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdna/codebook.hpp"
#include "vdna/constraints.hpp"
#include "vdna/error.hpp"
#include "vdna/params.hpp"
#include "vdna/randomness.hpp"
#include "vdna/raptor.hpp"

// Binary <-> DNA layer: the 2-bit nucleotide mapping, Id masking, and the
// header segment appended to the first oligo.
//
// Wire layouts (bit-exact):
//   payload oligo        = phi( masked_id[4 big-endian] || payload[c] )
//   header-bearing oligo = payload_oligo || joint[1] || codebook( masked_header[6] || S )
// where phi expands each byte most-significant bit-pair first as
// 00->A, 01->C, 10->G, 11->T.

namespace vdna {

struct Oligo {
    std::string sequence;
    bool is_header_bearing = false;
};

struct HeaderFields {
    std::uint32_t source_block_count = 0;
    std::uint8_t last_block_len = 0;
    std::uint8_t mode = params::kModeEncode;
    std::uint8_t s_param = 0;
};

inline std::string map_to_dna(std::span<const std::uint8_t> bytes) {
    static constexpr char kMap[4] = {'A', 'C', 'G', 'T'};
    std::string seq;
    seq.reserve(bytes.size() * 4);
    for (std::uint8_t b : bytes) {
        seq.push_back(kMap[(b >> 6) & 3]);
        seq.push_back(kMap[(b >> 4) & 3]);
        seq.push_back(kMap[(b >> 2) & 3]);
        seq.push_back(kMap[b & 3]);
    }
    return seq;
}

inline Bytes unmap_dna(std::string_view seq) {
    if (seq.size() % 4 != 0) {
        throw MalformedOligoError("sequence length " + std::to_string(seq.size()) +
                                  " is not a whole number of bytes");
    }
    Bytes out;
    out.reserve(seq.size() / 4);
    for (std::size_t i = 0; i < seq.size(); i += 4) {
        unsigned b = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const int d = detail::nucleotide_digit(seq[i + k]);
            if (d < 0) {
                throw MalformedOligoError("invalid nucleotide '" + std::string(1, seq[i + k]) +
                                          "' at position " + std::to_string(i + k));
            }
            b = (b << 2) | static_cast<unsigned>(d);
        }
        out.push_back(static_cast<std::uint8_t>(b));
    }
    return out;
}

inline Oligo packet_to_oligo(const Packet& p) {
    const std::uint32_t masked = p.id ^ params::kIdMask;
    Bytes wire;
    wire.reserve(4 + p.payload.size());
    wire.push_back(static_cast<std::uint8_t>(masked >> 24));
    wire.push_back(static_cast<std::uint8_t>(masked >> 16));
    wire.push_back(static_cast<std::uint8_t>(masked >> 8));
    wire.push_back(static_cast<std::uint8_t>(masked));
    wire.insert(wire.end(), p.payload.begin(), p.payload.end());
    return {map_to_dna(wire), false};
}

inline Packet oligo_to_packet(std::string_view seq, std::size_t block_size) {
    if (seq.size() != params::payload_oligo_nt(block_size)) {
        throw MalformedOligoError("oligo length " + std::to_string(seq.size()) + ", expected " +
                                  std::to_string(params::payload_oligo_nt(block_size)));
    }
    Bytes wire = unmap_dna(seq);
    const std::uint32_t masked = (static_cast<std::uint32_t>(wire[0]) << 24) |
                                 (static_cast<std::uint32_t>(wire[1]) << 16) |
                                 (static_cast<std::uint32_t>(wire[2]) << 8) |
                                 static_cast<std::uint32_t>(wire[3]);
    Packet p;
    p.id = masked ^ params::kIdMask;
    p.payload.assign(wire.begin() + 4, wire.end());
    return p;
}

struct HeaderSegment {
    std::string sequence;  // 35 nt
    std::uint8_t s_param = 0;
};

namespace detail {

inline std::array<std::uint8_t, params::kHeaderBytes> header_bytes(std::uint32_t n,
                                                                   std::uint8_t last_block_len,
                                                                   std::uint8_t mode,
                                                                   std::uint8_t s_param) {
    std::array<std::uint8_t, params::kHeaderBytes> bytes{};
    bytes[0] = static_cast<std::uint8_t>(n >> 24);
    bytes[1] = static_cast<std::uint8_t>(n >> 16);
    bytes[2] = static_cast<std::uint8_t>(n >> 8);
    bytes[3] = static_cast<std::uint8_t>(n);
    bytes[4] = last_block_len;
    bytes[5] = mode;
    bytes[6] = s_param;
    const auto mask = header_mask(s_param);
    for (std::size_t i = 0; i < 6; ++i) bytes[i] ^= mask[i];
    return bytes;
}

}  // namespace detail

// Retries S = s_start, s_start+1, ... (mod 256) until the masked, codebook
// encoded segment passes the constraint policy; the last byte carries S in
// the clear so the decoder can undo the mask. The s_start hook exists so
// tests can force any mask; encoding always starts at 0.
inline HeaderSegment build_header_segment(std::uint32_t n, std::uint8_t last_block_len,
                                          std::uint8_t mode, const ConstraintPolicy& policy,
                                          std::uint8_t s_start = 0) {
    const Codebook& book = Codebook::instance();
    for (unsigned trial = 0; trial < 256; ++trial) {
        const auto s = static_cast<std::uint8_t>((s_start + trial) & 0xFF);
        const auto bytes = detail::header_bytes(n, last_block_len, mode, s);
        std::string seq;
        seq.reserve(params::kHeaderSegmentNt);
        book.encode_bytes(bytes.data(), bytes.size(), seq);
        if (validate_oligo(seq, policy).accepted()) {
            return {std::move(seq), s};
        }
    }
    throw HeaderUnencodableError("no S in 0..255 yields a constraint-compliant header segment");
}

inline HeaderFields parse_header_segment(std::string_view segment) {
    if (segment.size() != params::kHeaderSegmentNt) {
        throw CorruptedHeaderError("header segment length " + std::to_string(segment.size()) +
                                   ", expected " + std::to_string(params::kHeaderSegmentNt));
    }
    const Codebook& book = Codebook::instance();
    std::array<std::uint8_t, params::kHeaderBytes> bytes{};
    for (std::size_t i = 0; i < params::kHeaderBytes; ++i) {
        bytes[i] = book.decode_codeword(segment.substr(i * params::kCodewordNt,
                                                       params::kCodewordNt));
    }
    const std::uint8_t s = bytes[6];
    const auto mask = header_mask(s);
    for (std::size_t i = 0; i < 6; ++i) bytes[i] ^= mask[i];

    HeaderFields fields;
    fields.source_block_count = (static_cast<std::uint32_t>(bytes[0]) << 24) |
                                (static_cast<std::uint32_t>(bytes[1]) << 16) |
                                (static_cast<std::uint32_t>(bytes[2]) << 8) |
                                static_cast<std::uint32_t>(bytes[3]);
    fields.last_block_len = bytes[4];
    fields.mode = bytes[5];
    fields.s_param = s;
    if (fields.mode != params::kModeEncode && fields.mode != params::kModeTranscode) {
        static constexpr char kHex[] = "0123456789ABCDEF";
        const std::string hex{kHex[fields.mode >> 4], kHex[fields.mode & 0xF]};
        throw InvalidModeError("header mode byte 0x" + hex + " is neither encode nor transcode");
    }
    if (fields.source_block_count < 1 || fields.last_block_len < 1) {
        throw CorruptedHeaderError("header fields out of range (n or last-block length is 0)");
    }
    return fields;
}

// First nucleotide in A < C < G < T order differing from both neighbors.
inline char joint_nucleotide(char prev, char next) {
    for (char ch : {'A', 'C', 'G', 'T'}) {
        if (ch != prev && ch != next) return ch;
    }
    return 'A';  // unreachable: two exclusions leave two candidates
}

inline Oligo attach_header(const Oligo& first, std::string_view segment) {
    if (first.sequence.empty() || segment.empty()) {
        throw Error("attach_header requires a non-empty oligo and segment");
    }
    Oligo out{first.sequence, true};
    out.sequence.reserve(first.sequence.size() + 1 + segment.size());
    out.sequence.push_back(joint_nucleotide(first.sequence.back(), segment.front()));
    out.sequence.append(segment);
    return out;
}

struct ParsedHeader {
    HeaderFields fields;
    std::vector<Oligo> oligos;     // header oligo replaced by its payload part
    std::size_t header_index = 0;  // position of the stripped oligo
};

// Locates the header-bearing oligo (the unique one longer than the rest; a
// single-oligo pool is taken as header-bearing), strips the joint nucleotide
// and the 35-nt segment, and decodes the fields.
inline ParsedHeader detect_and_parse_header(std::vector<Oligo> oligos) {
    if (oligos.empty()) throw HeaderMissingError("empty oligo pool");

    std::size_t header_index = 0;
    if (oligos.size() > 1) {
        std::size_t longest = 0;
        for (const Oligo& o : oligos) longest = std::max(longest, o.sequence.size());
        std::size_t count = 0;
        for (std::size_t i = 0; i < oligos.size(); ++i) {
            if (oligos[i].sequence.size() == longest) {
                header_index = i;
                ++count;
            }
        }
        if (count == oligos.size()) {
            throw HeaderMissingError("no oligo is longer than the remaining ones");
        }
        if (count > 1) {
            throw HeaderAmbiguousError(std::to_string(count) +
                                       " oligos share the largest length");
        }
    }

    const std::string& seq = oligos[header_index].sequence;
    if (seq.size() <= params::kHeaderExtraNt ||
        (seq.size() - params::kHeaderExtraNt) % 4 != 0) {
        throw CorruptedHeaderError("header-bearing oligo length " + std::to_string(seq.size()) +
                                   " cannot carry a header segment");
    }
    const std::size_t payload_nt = seq.size() - params::kHeaderExtraNt;
    const HeaderFields fields = parse_header_segment(
        std::string_view(seq).substr(payload_nt + 1, params::kHeaderSegmentNt));

    ParsedHeader parsed;
    parsed.fields = fields;
    parsed.oligos = std::move(oligos);
    parsed.header_index = header_index;
    parsed.oligos[header_index].sequence.resize(payload_nt);
    parsed.oligos[header_index].is_header_bearing = false;
    return parsed;
}

}  // namespace vdna
