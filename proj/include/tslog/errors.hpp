#pragma once

#include <stdexcept>
#include <string>

namespace tslog {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid scale description or construction parameters (bad q, bad window, ...).
struct SpecError : Error {
    using Error::Error;
};

// Violated mathematical precondition: point not in the scale, derivative at
// the maximum, non-monotone image map, and similar.
struct DomainError : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance. Never
// downgraded to a best-effort value.
struct QuadratureError : Error {
    using Error::Error;
};

} // namespace tslog
