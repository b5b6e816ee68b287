#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gliomil {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent configuration (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Malformed dataset/checkpoint files (CLI exit code 3). Carries the byte
// offset at which decoding failed.
struct FormatError : Error {
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset = 0;
};

// Non-finite values produced by a forward op or a diverging loss
// (CLI exit code 4).
struct NumericError : Error {
    using Error::Error;
};

// API misuse: violated preconditions such as backward on a non-scalar.
struct ContractError : Error {
    using Error::Error;
};

// Inputs that are structurally valid but mathematically degenerate,
// e.g. a zero-norm vector passed to cosine similarity or an empty bag.
struct DegenerateInputError : Error {
    using Error::Error;
};

} // namespace gliomil
