#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tslog/delta.hpp"
#include "tslog/time_scale.hpp"

namespace tslog {

// Verdict carrier for identity checks: |lhs - rhs| against the tolerance that
// was actually applied.
struct Residual {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tol_used = 0.0;
    bool pass = false;
};

// Default identity tolerance for a scale: purely scattered scales evaluate as
// exact finite sums, mixed scales go through quadrature.
double default_identity_tol(const TimeScale& T);

// Natural logarithm on the scale: the delta integral of 1/tau from 1 to t.
// Requires 1 in T, t in T, t > 0. Dispatches to the family closed form when
// the scale was built from a spec that has one; log_ts_integral always takes
// the integral route. The two must agree, which is enforced by tests, not
// assumed here.
double log_ts(const TimeScale& T, double t, const IntegrationConfig& cfg = {});
double log_ts_integral(const TimeScale& T, double t, const IntegrationConfig& cfg = {});

// Family closed forms: ln t on R, (q-1) log t / log q on the q-geometric
// scales, harmonic-number sums on N / Z / hZ. Returns nullopt for custom
// scales; throws DomainError when t does not lie on the family inside the
// window.
std::optional<double> log_closed_form(const ScaleSpec& spec, double t);

// L(sigma(t)) vs L(t) + mu(t)/t at a non-maximal positive point.
Residual sigma_recurrence_residual(const TimeScale& T, double t,
                                   const IntegrationConfig& cfg = {},
                                   std::optional<double> tol = std::nullopt);

// L_T(a b) vs L_T(a) + L_{T/a}(b). Requires a in T, a > 0, b > 0, a*b in T.
// b itself need not lie in T; it always lies in T/a, which is checked and
// reported as an internal consistency error if violated.
Residual product_identity_residual(const TimeScale& T, double a, double b,
                                   const IntegrationConfig& cfg = {},
                                   std::optional<double> tol = std::nullopt);

// L_T(a^n) vs the sum over k < n of L_{T/a^k}(a). Requires a^k in T for all
// k = 0..n.
Residual power_sum_residual(const TimeScale& T, double a, int n,
                            const IntegrationConfig& cfg = {},
                            std::optional<double> tol = std::nullopt);

// L_T(x/y) vs L_T(x) - L_{(yT)/x}(y). Requires x in T and x/y in T, both
// positive; y need not lie in T.
Residual quotient_identity_residual(const TimeScale& T, double x, double y,
                                    const IntegrationConfig& cfg = {},
                                    std::optional<double> tol = std::nullopt);

// Delta derivative of L_{p(T)} ∘ p at t vs p^Δ(t)/p(t), for strictly
// increasing positive p with p(t0) = 1 somewhere on the scale (the image
// scale must contain 1 so its logarithm is anchored). p^Δ comes from the
// callback when supplied, otherwise from delta_derivative.
Residual chain_rule_residual(const ScaleFn& p, const TimeScale& T, double t,
                             const IntegrationConfig& cfg = {},
                             std::optional<double> tol = std::nullopt);

// L at every scattered point and at a sample grid on the positive part of
// each dense component, ordered by t.
std::vector<std::pair<double, double>> log_table(const TimeScale& T,
                                                 const IntegrationConfig& cfg = {},
                                                 int dense_samples = 9);

} // namespace tslog
