#pragma once

#include <stdexcept>
#include <string>

namespace wonder {

/// Bad mathematical input (mismatched ground sets, invalid labels, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the supported numeric range.
class BoundsError : public std::out_of_range {
public:
    explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

/// Request exceeds a configured size guardrail.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// The operation is sound but this implementation refuses the instance
/// (e.g. a blowup center it cannot account for).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant that valid inputs can never violate fired anyway.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace wonder
