#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vdna {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Sequence contains characters outside {A,C,G,T}, or is empty where content
// is required.
class MalformedSequenceError : public Error {
public:
    using Error::Error;
};

// Oligo cannot be interpreted as a binary packet (bad length, bad alphabet).
class MalformedOligoError : public Error {
public:
    using Error::Error;
};

// 5-nt string is not a codeword of the header codebook.
class UnknownCodewordError : public Error {
public:
    using Error::Error;
};

class HeaderError : public Error {
public:
    using Error::Error;
};

class HeaderMissingError : public HeaderError {
public:
    using HeaderError::HeaderError;
};

class HeaderAmbiguousError : public HeaderError {
public:
    using HeaderError::HeaderError;
};

// No S value in 0..255 produced a constraint-compliant header segment.
class HeaderUnencodableError : public HeaderError {
public:
    using HeaderError::HeaderError;
};

class CorruptedHeaderError : public HeaderError {
public:
    using HeaderError::HeaderError;
};

class InvalidModeError : public HeaderError {
public:
    using HeaderError::HeaderError;
};

// The packet/constraint system does not reach full rank: not enough oligos.
class RankDeficientError : public Error {
public:
    RankDeficientError(std::size_t rank, std::size_t unknowns, const std::string& what)
        : Error(what), rank_(rank), unknowns_(unknowns) {}

    std::size_t rank() const { return rank_; }
    std::size_t unknowns() const { return unknowns_; }

private:
    std::size_t rank_;
    std::size_t unknowns_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyPayloadError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Trial-id budget exhausted before the pool became decodable.
class EncodeFailureError : public Error {
public:
    using Error::Error;
};

// Erasure policy cannot be applied to the given pool.
class PolicyError : public Error {
public:
    using Error::Error;
};

class FastaParseError : public Error {
public:
    FastaParseError(std::size_t line, const std::string& what)
        : Error(what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vdna
