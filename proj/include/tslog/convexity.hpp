#pragma once

#include <optional>

#include "tslog/delta.hpp"
#include "tslog/scale_fn.hpp"
#include "tslog/time_scale.hpp"

namespace tslog {

// Point triple t1 < t < t2 witnessing an extreme of the tested expression.
// Pair- and point-based checks reuse the type with repeated coordinates.
struct Triple {
    double t1 = 0.0;
    double t = 0.0;
    double t2 = 0.0;
};

// Two-sided verdict. The tested expression is nonnegative for convex
// functions and nonpositive for concave ones, so:
//   convex  <=>  min_value >= -tol_used
//   concave <=>  max_value <=  tol_used
// min_witness / max_witness locate the extremes; test sets with fewer than
// three points are reported both convex and concave.
struct ConvexityVerdict {
    bool convex = true;
    bool concave = true;
    double min_value = 0.0;
    double max_value = 0.0;
    std::optional<Triple> min_witness;
    std::optional<Triple> max_witness;
    double tol_used = 0.0;

    double convexity_violation() const { return min_value < 0.0 ? -min_value : 0.0; }
    double concavity_violation() const { return max_value > 0.0 ? max_value : 0.0; }
    // Violation of whichever tested property fails; zero when both hold.
    double max_violation() const;
    // The triple violating convexity when convexity fails, else the
    // concavity-violating one, else nullopt.
    std::optional<Triple> witness() const;
};

// Three-point determinant test over all ordered triples of the test set: the
// scattered points of T ∩ [lo, hi] plus grid_n samples per dense component.
// tol_rel is scaled by the magnitude of the sampled f values.
ConvexityVerdict check_definition(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                  int grid_n = 33, double tol_rel = 1e-9);

// Equivalent slope form: chord slope left of t must not exceed chord slope
// right of t. Verdicts agree with check_definition on the same test set.
ConvexityVerdict check_slope_form(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                  int grid_n = 33, double tol_rel = 1e-9);

// Sufficient criterion: nondecreasing delta derivative across consecutive
// test points implies convex, nonincreasing implies concave. A negative
// verdict here does not refute convexity; check_definition is authoritative.
ConvexityVerdict check_by_derivative(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                     const IntegrationConfig& cfg = {}, int grid_n = 33,
                                     double tol_rel = 1e-9);

// Sufficient criterion via the sign of the second delta derivative.
ConvexityVerdict check_by_second_derivative(const ScaleFn& f, const TimeScale& T, double lo,
                                            double hi, const IntegrationConfig& cfg = {},
                                            int grid_n = 33, double tol_rel = 1e-9);

} // namespace tslog
