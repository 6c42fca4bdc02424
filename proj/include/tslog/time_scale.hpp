#pragma once

#include <optional>
#include <vector>

#include "tslog/errors.hpp"
#include "tslog/scale_fn.hpp"

namespace tslog {

inline constexpr double kDefaultEps = 1e-9;

// One closed interval [lo, hi] of a time scale; lo == hi encodes an isolated
// point.
struct Component {
    double lo = 0.0;
    double hi = 0.0;

    bool is_point() const { return lo == hi; }
};

enum class Family { R, Z, N, HZ, QN0, QZ, Custom };

// Serializable description of a time scale: a named family plus parameters,
// materialized inside a bounded window, or an explicit component list.
struct ScaleSpec {
    Family kind = Family::Custom;
    double q = 0.0;                    // QN0 / QZ, requires q > 1
    double h = 0.0;                    // HZ, requires h > 0
    std::vector<Component> components; // Custom
    double window_lo = 0.0;
    double window_hi = 0.0;
    double eps = kDefaultEps;
};

// Point topology at one scale point. Flags follow the usual taxonomy: a point
// is right-scattered when the forward jump moves, right-dense when it stays
// put and the point is not the maximum; left analogues via the backward jump.
struct PointClass {
    bool right_scattered = false;
    bool right_dense = false;
    bool left_scattered = false;
    bool left_dense = false;
    bool is_min = false;
    bool is_max = false;

    bool isolated() const { return right_scattered && left_scattered; }
    bool dense() const { return right_dense && left_dense; }
};

// Maximal dense subinterval or scattered point of a scale restricted to a
// range; produced by enumerate().
struct Segment {
    double lo = 0.0;
    double hi = 0.0;

    bool is_point() const { return lo == hi; }
};

// A time scale as a canonical finite union of disjoint closed intervals.
//
// Canonical form: components sorted by lo, non-overlapping, with gaps larger
// than the membership tolerance (touching or overlapping intervals are merged
// on construction). The tolerance `eps` is relative: a coordinate t matches a
// component edge within eps * max(1, |t|). All instances are immutable.
class TimeScale {
  public:
    TimeScale(std::vector<Component> components, double eps = kDefaultEps);

    // Materializes a named family inside its window. The resulting scale
    // remembers the spec so closed-form evaluation stays available.
    static TimeScale build(const ScaleSpec& spec);

    const std::vector<Component>& components() const { return components_; }
    double eps() const { return eps_; }
    const std::optional<ScaleSpec>& origin() const { return origin_; }

    double min() const { return components_.front().lo; }
    double max() const { return components_.back().hi; }

    bool contains(double t) const;

    // Canonical representative of t in the scale: component edges within
    // tolerance snap to the edge, interior points of dense components pass
    // through. Throws DomainError if t is not in the scale.
    double snap(double t) const;

    // Forward jump: least scale point strictly greater than t, or t itself at
    // a right-dense point or at the maximum.
    double sigma(double t) const;

    // Backward jump: greatest scale point strictly less than t, or t itself
    // at a left-dense point or at the minimum.
    double rho(double t) const;

    // Graininess sigma(t) - t; zero exactly at right-dense or maximum points.
    double mu(double t) const;

    PointClass classify(double t) const;

    // Effective absolute tolerance near coordinate x.
    double tol_at(double x) const;

  private:
    friend TimeScale scale_div(const TimeScale&, double);
    friend TimeScale scale_mul(double, const TimeScale&);

    TimeScale() = default;

    // Index of the component containing the (already snapped) point.
    std::size_t component_of(double s) const;

    std::vector<Component> components_;
    double eps_ = kDefaultEps;
    std::optional<ScaleSpec> origin_;
};

// The scale {t / a : t in T}, a > 0.
TimeScale scale_div(const TimeScale& T, double a);

// The scale {y * t : t in T}, y > 0. Equals scale_div(T, 1/y).
TimeScale scale_mul(double y, const TimeScale& T);

// Image p(T) of the scale under a strictly increasing map: scattered points
// map pointwise, dense components map to [p(lo), p(hi)]. Monotonicity is
// checked on all component endpoints plus sampled interior points of dense
// components; a violation raises DomainError.
TimeScale image_under_monotone(const ScaleFn& p, const TimeScale& T, int dense_samples = 33);

// Ordered partition of T ∩ [a, b] into maximal dense subintervals and
// scattered points. Both endpoints must belong to the scale.
std::vector<Segment> enumerate(const TimeScale& T, double a, double b);

// Structural equality up to per-coordinate tolerance; used by tests and by
// scale-arithmetic consistency checks.
bool approx_equal(const TimeScale& A, const TimeScale& B, double tol);

} // namespace tslog
