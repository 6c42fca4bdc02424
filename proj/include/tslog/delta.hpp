#pragma once

#include "tslog/scale_fn.hpp"
#include "tslog/time_scale.hpp"

namespace tslog {

// Tolerances and limits for quadrature on dense segments and for one-sided
// difference quotients at right-dense points.
struct IntegrationConfig {
    double quad_tol = 1e-10; // absolute tolerance per dense segment
    int max_depth = 40;      // adaptive recursion cap
    double deriv_h0 = 1e-3;  // initial step for dense-point differentiation
};

enum class DerivMethod {
    ExactScattered,    // forward difference quotient, no truncation error
    ExactCallback,     // user-supplied derivative at a right-dense point
    ExtrapolatedLimit, // one-sided quotients with Richardson extrapolation
};

struct DerivativeResult {
    double value = 0.0;
    double err_estimate = 0.0; // zero for the exact methods
    DerivMethod method = DerivMethod::ExactScattered;
};

// Delta derivative of f at t. At a right-scattered point this is the exact
// quotient (f(sigma(t)) - f(t)) / mu(t); at a right-dense point the supplied
// exact_derivative is used when present, otherwise one-sided forward
// quotients with steps kept inside the dense segment, Richardson-extrapolated
// over three levels. Undefined (DomainError) at the maximum of the scale.
DerivativeResult delta_derivative(const ScaleFn& f, const TimeScale& T, double t,
                                  const IntegrationConfig& cfg = {});

// Cauchy delta integral of f from a to b over T: the exact sum f(t) * mu(t)
// across right-scattered points plus adaptive Simpson quadrature on each
// maximal dense subinterval. Reversed endpoints negate the result exactly.
// Throws QuadratureError when a dense segment fails to converge.
double delta_integral(const ScaleFn& f, const TimeScale& T, double a, double b,
                      const IntegrationConfig& cfg = {});

// Second delta derivative: the delta derivative of s -> delta_derivative(f, T, s)
// evaluated at t, with error estimates propagated. Requires t and, at
// scattered points, sigma(t) to be below the maximum.
DerivativeResult delta_second_derivative(const ScaleFn& f, const TimeScale& T, double t,
                                         const IntegrationConfig& cfg = {});

} // namespace tslog
