#pragma once

#include <stdexcept>
#include <string>

namespace flatlink {

/// Malformed user input: bad files, out-of-range vertices, violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource bound (ground-set size, ball size, search budget) was hit.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal mathematical invariant failed. Always a bug or a non-sphere ambient.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace flatlink
