#pragma once

#include <stdexcept>
#include <string>

namespace pmetric {

/// Malformed or inconsistent input (bad dimensions, duplicate labels,
/// out-of-range indices, zero radius, ...). Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on arguments violating its documented
/// precondition, e.g. a non-metric space handed to the isometry search.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A search would exceed its configured enumeration cap. Exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Internal consistency check: two independently computed answers must agree.
inline void ensure(bool condition, const char* what)
{
    if (!condition)
        throw std::logic_error(std::string("pmetric internal check failed: ") + what);
}

} // namespace detail
} // namespace pmetric
