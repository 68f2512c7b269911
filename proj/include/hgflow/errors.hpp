#pragma once

#include <stdexcept>
#include <string>

namespace hgflow {

/// Invalid mathematical input (non-finite radius, index out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mismatched array length between a field and its grid.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Configuration value outside its documented range, or malformed config text.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Target outside the invertible bracket of a monotone function.
class RangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Initial shape failed positivity or convexity validation.
class ShapeRejectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flow step could not be completed without losing convexity or finiteness.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stability control drove dt below its configured floor.
class CflCollapseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough usable samples to perform a fit.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hgflow
