#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bootperc {

/// Malformed or out-of-range input: bad coordinates, invalid lattice
/// parameters, mismatched geometries.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation that is not defined for the lattice topology it was given
/// (for example the perimeter of a set on a torus).
class UnsupportedTopology : public InputError {
public:
    using InputError::InputError;
};

/// A well-formed question whose answer is negative in a way the caller asked
/// us to treat as an error (no percolating set of the requested size, a
/// non-percolating set passed to a minimality check).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A brute-force search refused to run because it would exceed its budget.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t examined, int last_completed_size)
        : std::runtime_error(what), examined_(examined), last_completed_size_(last_completed_size)
    {
    }

    /// Subsets examined before the search stopped.
    std::uint64_t examined() const noexcept { return examined_; }
    /// Largest subset size that was fully enumerated, or -1 if none was.
    int last_completed_size() const noexcept { return last_completed_size_; }

private:
    std::uint64_t examined_;
    int last_completed_size_;
};

/// An internal consistency check failed. Never expected to fire; when it does
/// it is a bug, or a counterexample to a proved statement.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bootperc
