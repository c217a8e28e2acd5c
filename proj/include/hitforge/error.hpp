#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hitforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in polynomial rings with different variable counts, or in
/// different degree components.
class DimensionError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// A variable index, generator tag or other argument outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Reaching this is a bug.
class InvariantError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace hitforge
