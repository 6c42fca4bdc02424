#include "tslog/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tslog {

namespace {

// Scattered points of T ∩ [lo, hi] plus a uniform grid on each clipped dense
// component. Ordered by construction.
std::vector<double> test_points(const TimeScale& T, double lo, double hi, int grid_n) {
    if (grid_n < 2) grid_n = 2;
    std::vector<double> pts;
    for (const auto& c : T.components()) {
        double clo = std::max(c.lo, lo);
        double chi = std::min(c.hi, hi);
        if (clo > chi) continue;
        if (clo == chi) {
            pts.push_back(clo);
            continue;
        }
        for (int i = 0; i < grid_n; ++i) {
            double u = static_cast<double>(i) / (grid_n - 1);
            pts.push_back(clo + u * (chi - clo));
        }
    }
    if (pts.empty()) throw DomainError("interval does not intersect the time scale");
    return pts;
}

std::vector<double> eval_all(const ScaleFn& f, const std::vector<double>& pts) {
    std::vector<double> v;
    v.reserve(pts.size());
    for (double t : pts) {
        double y = f(t);
        if (!std::isfinite(y)) throw DomainError("function not evaluable on the test set");
        v.push_back(y);
    }
    return v;
}

double value_scale(const std::vector<double>& v) {
    double m = 1.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct Extremes {
    double min_value = 0.0;
    double max_value = 0.0;
    Triple min_witness;
    Triple max_witness;
    bool any = false;

    void account(double value, const Triple& where) {
        if (!any || value < min_value) {
            min_value = value;
            min_witness = where;
        }
        if (!any || value > max_value) {
            max_value = value;
            max_witness = where;
        }
        any = true;
    }
};

ConvexityVerdict finish(const Extremes& ex, double tol) {
    ConvexityVerdict v;
    v.tol_used = tol;
    if (!ex.any) return v; // degenerate: convex and concave
    v.min_value = ex.min_value;
    v.max_value = ex.max_value;
    v.min_witness = ex.min_witness;
    v.max_witness = ex.max_witness;
    v.convex = ex.min_value >= -tol;
    v.concave = ex.max_value <= tol;
    return v;
}

} // namespace

double ConvexityVerdict::max_violation() const {
    double worst = 0.0;
    if (!convex) worst = std::max(worst, convexity_violation());
    if (!concave) worst = std::max(worst, concavity_violation());
    return worst;
}

std::optional<Triple> ConvexityVerdict::witness() const {
    if (!convex) return min_witness;
    if (!concave) return max_witness;
    return std::nullopt;
}

ConvexityVerdict check_definition(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                  int grid_n, double tol_rel) {
    auto pts = test_points(T, lo, hi, grid_n);
    auto fv = eval_all(f, pts);
    double tol = tol_rel * value_scale(fv) * std::max(1.0, std::abs(hi - lo));
    Extremes ex;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                double t1 = pts[i], t = pts[j], t2 = pts[k];
                double e = (t2 - t) * fv[i] + (t1 - t2) * fv[j] + (t - t1) * fv[k];
                ex.account(e, {t1, t, t2});
            }
    return finish(ex, tol);
}

ConvexityVerdict check_slope_form(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                  int grid_n, double tol_rel) {
    auto pts = test_points(T, lo, hi, grid_n);
    auto fv = eval_all(f, pts);
    std::size_t n = pts.size();
    double slope_scale = 1.0;
    Extremes ex;
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = i + 1; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                double left = (fv[j] - fv[i]) / (pts[j] - pts[i]);
                double right = (fv[k] - fv[j]) / (pts[k] - pts[j]);
                slope_scale = std::max({slope_scale, std::abs(left), std::abs(right)});
                ex.account(right - left, {pts[i], pts[j], pts[k]});
            }
    return finish(ex, tol_rel * slope_scale);
}

ConvexityVerdict check_by_derivative(const ScaleFn& f, const TimeScale& T, double lo, double hi,
                                     const IntegrationConfig& cfg, int grid_n, double tol_rel) {
    auto pts = test_points(T, lo, hi, grid_n);
    std::vector<double> dv;
    std::vector<double> at;
    double err = 0.0;
    for (double t : pts) {
        if (T.snap(t) == T.max()) continue; // derivative undefined there
        auto r = delta_derivative(f, T, t, cfg);
        dv.push_back(r.value);
        at.push_back(t);
        err = std::max(err, r.err_estimate);
    }
    Extremes ex;
    for (std::size_t i = 0; i + 1 < dv.size(); ++i)
        ex.account(dv[i + 1] - dv[i], {at[i], at[i + 1], at[i + 1]});
    double tol = tol_rel * value_scale(dv) + 2.0 * err;
    return finish(ex, tol);
}

ConvexityVerdict check_by_second_derivative(const ScaleFn& f, const TimeScale& T, double lo,
                                            double hi, const IntegrationConfig& cfg, int grid_n,
                                            double tol_rel) {
    auto pts = test_points(T, lo, hi, grid_n);
    Extremes ex;
    std::vector<double> vals;
    double err = 0.0;
    for (double t : pts) {
        double s = T.snap(t);
        if (s == T.max()) continue;
        double sg = T.sigma(s);
        if (sg > s && sg == T.max()) continue; // outside T^{kappa^2}
        auto r = delta_second_derivative(f, T, s, cfg);
        vals.push_back(r.value);
        err = std::max(err, r.err_estimate);
        ex.account(r.value, {s, s, s});
    }
    double tol = tol_rel * value_scale(vals) + err;
    return finish(ex, tol);
}

} // namespace tslog
