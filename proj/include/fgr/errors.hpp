// errors.hpp: exception types shared by the fgr library

#pragma once

#include <stdexcept>
#include <string>

namespace fgr {

// Argument outside the mathematical domain of an operation (t <= 0, omega < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Model parameters violate a type invariant.
class InvalidModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The regime decomposition cannot be applied (omega_x not well separated from omega0).
class IllPosedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested enumeration would exceed its configured size cap.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A curve does not satisfy the preconditions of an analysis (coverage, point count, flags).
class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fgr
