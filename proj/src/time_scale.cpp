#include "tslog/time_scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace tslog {

namespace {

constexpr std::size_t kMaxMaterializedPoints = 1u << 21;

[[noreturn]] void fail_spec(const std::string& what) { throw SpecError(what); }

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) fail_spec(std::string(what) + " must be finite");
}

double tol_for(double eps, double x) { return eps * std::max(1.0, std::abs(x)); }

std::vector<Component> canonicalize(std::vector<Component> comps, double eps) {
    if (comps.empty()) fail_spec("time scale needs at least one component");
    for (const auto& c : comps) {
        require_finite(c.lo, "component bound");
        require_finite(c.hi, "component bound");
        if (c.lo > c.hi) fail_spec("component with lo > hi");
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Component> out;
    out.push_back(comps.front());
    for (std::size_t i = 1; i < comps.size(); ++i) {
        Component& cur = out.back();
        const Component& next = comps[i];
        double gap = next.lo - cur.hi;
        double tol = std::max(tol_for(eps, cur.hi), tol_for(eps, next.lo));
        if (gap <= tol) {
            cur.hi = std::max(cur.hi, next.hi);
        } else {
            out.push_back(next);
        }
    }
    return out;
}

} // namespace

TimeScale::TimeScale(std::vector<Component> components, double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) fail_spec("eps must be finite and >= 0");
    eps_ = eps;
    components_ = canonicalize(std::move(components), eps);
}

double TimeScale::tol_at(double x) const { return tol_for(eps_, x); }

bool TimeScale::contains(double t) const {
    if (!std::isfinite(t)) return false;
    double tol = tol_at(t);
    auto it = std::lower_bound(components_.begin(), components_.end(), t - tol,
                               [](const Component& c, double v) { return c.hi < v; });
    if (it == components_.end()) return false;
    return t >= it->lo - tol && t <= it->hi + tol;
}

double TimeScale::snap(double t) const {
    if (std::isfinite(t)) {
        double tol = tol_at(t);
        auto it = std::lower_bound(components_.begin(), components_.end(), t - tol,
                                   [](const Component& c, double v) { return c.hi < v; });
        if (it != components_.end() && t >= it->lo - tol && t <= it->hi + tol) {
            if (std::abs(t - it->lo) <= tol) return it->lo;
            if (std::abs(t - it->hi) <= tol) return it->hi;
            return t;
        }
    }
    throw DomainError("point " + std::to_string(t) + " is not in the time scale");
}

std::size_t TimeScale::component_of(double s) const {
    auto it = std::lower_bound(components_.begin(), components_.end(), s,
                               [](const Component& c, double v) { return c.hi < v; });
    return static_cast<std::size_t>(it - components_.begin());
}

double TimeScale::sigma(double t) const {
    double s = snap(t);
    std::size_t i = component_of(s);
    if (s < components_[i].hi) return s; // right-dense
    if (i + 1 < components_.size()) return components_[i + 1].lo;
    return s; // maximum
}

double TimeScale::rho(double t) const {
    double s = snap(t);
    std::size_t i = component_of(s);
    if (s > components_[i].lo) return s; // left-dense
    if (i > 0) return components_[i - 1].hi;
    return s; // minimum
}

double TimeScale::mu(double t) const {
    double s = snap(t);
    return sigma(s) - s;
}

PointClass TimeScale::classify(double t) const {
    double s = snap(t);
    PointClass pc;
    pc.is_min = (s == min());
    pc.is_max = (s == max());
    double sg = sigma(s);
    double rh = rho(s);
    pc.right_scattered = sg > s;
    pc.right_dense = (sg == s) && !pc.is_max;
    pc.left_scattered = rh < s;
    pc.left_dense = (rh == s) && !pc.is_min;
    return pc;
}

namespace {

std::vector<Component> materialize(const ScaleSpec& spec) {
    const double wlo = spec.window_lo;
    const double whi = spec.window_hi;
    require_finite(wlo, "window bound");
    require_finite(whi, "window bound");
    if (wlo > whi) fail_spec("window with lo > hi");

    auto in_window = [&](double p) {
        double tol = tol_for(spec.eps, p);
        return p >= wlo - tol && p <= whi + tol;
    };

    std::vector<Component> comps;
    switch (spec.kind) {
    case Family::R:
        comps.push_back({wlo, whi});
        break;
    case Family::Z:
    case Family::N: {
        double lo = wlo - tol_for(spec.eps, wlo);
        double hi = whi + tol_for(spec.eps, whi);
        double k_lo = std::ceil(lo);
        double k_hi = std::floor(hi);
        if (spec.kind == Family::N) k_lo = std::max(k_lo, 1.0);
        if (k_hi - k_lo > static_cast<double>(kMaxMaterializedPoints))
            fail_spec("window materializes too many points");
        for (double k = k_lo; k <= k_hi; k += 1.0) comps.push_back({k, k});
        break;
    }
    case Family::HZ: {
        if (!(spec.h > 0.0) || !std::isfinite(spec.h)) fail_spec("hZ requires h > 0");
        double k_lo = std::ceil((wlo - tol_for(spec.eps, wlo)) / spec.h);
        double k_hi = std::floor((whi + tol_for(spec.eps, whi)) / spec.h);
        if (k_hi - k_lo > static_cast<double>(kMaxMaterializedPoints))
            fail_spec("window materializes too many points");
        for (double k = k_lo; k <= k_hi; k += 1.0) {
            double p = k * spec.h;
            if (in_window(p)) comps.push_back({p, p});
        }
        break;
    }
    case Family::QN0: {
        if (!(spec.q > 1.0) || !std::isfinite(spec.q)) fail_spec("qN0 requires q > 1");
        for (double p = 1.0; p <= whi + tol_for(spec.eps, whi); p *= spec.q) {
            if (in_window(p)) comps.push_back({p, p});
            if (comps.size() > kMaxMaterializedPoints)
                fail_spec("window materializes too many points");
            if (p > std::numeric_limits<double>::max() / spec.q) break;
        }
        break;
    }
    case Family::QZ: {
        if (!(spec.q > 1.0) || !std::isfinite(spec.q)) fail_spec("qZ requires q > 1");
        if (wlo < 0.0) fail_spec("qZ window must have lo >= 0");
        // Powers below the membership resolution cannot stay disjoint from
        // the accumulation point, so a zero lower edge materializes powers
        // down to a floor a little above eps and adds the point 0 itself.
        double floor_p = wlo > 0.0 ? wlo - tol_for(spec.eps, wlo) : 16.0 * spec.eps / (spec.q - 1.0);
        if (wlo == 0.0) comps.push_back({0.0, 0.0});
        for (double p = 1.0; p >= floor_p; p /= spec.q) {
            if (in_window(p)) comps.push_back({p, p});
            if (comps.size() > kMaxMaterializedPoints)
                fail_spec("window materializes too many points");
            if (p < std::numeric_limits<double>::min() * spec.q) break;
        }
        for (double p = spec.q; p <= whi + tol_for(spec.eps, whi); p *= spec.q) {
            if (in_window(p)) comps.push_back({p, p});
            if (comps.size() > kMaxMaterializedPoints)
                fail_spec("window materializes too many points");
            if (p > std::numeric_limits<double>::max() / spec.q) break;
        }
        break;
    }
    case Family::Custom: {
        for (const auto& c : spec.components) {
            double lo = std::max(c.lo, wlo);
            double hi = std::min(c.hi, whi);
            if (lo <= hi) comps.push_back({lo, hi});
        }
        break;
    }
    }
    if (comps.empty()) fail_spec("scale family has empty intersection with the window");
    return comps;
}

} // namespace

TimeScale TimeScale::build(const ScaleSpec& spec) {
    TimeScale T(materialize(spec), spec.eps);
    T.origin_ = spec;
    return T;
}

TimeScale scale_div(const TimeScale& T, double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("scale_div requires a > 0");
    std::vector<Component> comps;
    comps.reserve(T.components().size());
    for (const auto& c : T.components()) comps.push_back({c.lo / a, c.hi / a});
    return TimeScale(std::move(comps), T.eps());
}

TimeScale scale_mul(double y, const TimeScale& T) {
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("scale_mul requires y > 0");
    std::vector<Component> comps;
    comps.reserve(T.components().size());
    for (const auto& c : T.components()) comps.push_back({y * c.lo, y * c.hi});
    return TimeScale(std::move(comps), T.eps());
}

TimeScale image_under_monotone(const ScaleFn& p, const TimeScale& T, int dense_samples) {
    if (dense_samples < 2) dense_samples = 2;
    std::vector<double> samples;
    for (const auto& c : T.components()) {
        if (c.is_point()) {
            samples.push_back(c.lo);
        } else {
            for (int i = 0; i < dense_samples; ++i) {
                double u = static_cast<double>(i) / (dense_samples - 1);
                samples.push_back(c.lo + u * (c.hi - c.lo));
            }
        }
    }
    double prev_t = samples.front();
    double prev_v = p(prev_t);
    if (!std::isfinite(prev_v)) throw DomainError("image map not evaluable on the scale");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double v = p(samples[i]);
        if (!std::isfinite(v)) throw DomainError("image map not evaluable on the scale");
        if (v <= prev_v)
            throw DomainError("image map is not strictly increasing between " +
                              std::to_string(prev_t) + " and " + std::to_string(samples[i]));
        prev_t = samples[i];
        prev_v = v;
    }
    std::vector<Component> comps;
    comps.reserve(T.components().size());
    for (const auto& c : T.components()) comps.push_back({p(c.lo), p(c.hi)});
    return TimeScale(std::move(comps), T.eps());
}

std::vector<Segment> enumerate(const TimeScale& T, double a, double b) {
    double sa = T.snap(a);
    double sb = T.snap(b);
    if (sa > sb) throw DomainError("enumerate requires a <= b");
    std::vector<Segment> segs;
    for (const auto& c : T.components()) {
        if (c.hi < sa) continue;
        if (c.lo > sb) break;
        segs.push_back({std::max(c.lo, sa), std::min(c.hi, sb)});
    }
    return segs;
}

bool approx_equal(const TimeScale& A, const TimeScale& B, double tol) {
    const auto& ca = A.components();
    const auto& cb = B.components();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        double tlo = tol * std::max(1.0, std::abs(ca[i].lo));
        double thi = tol * std::max(1.0, std::abs(ca[i].hi));
        if (std::abs(ca[i].lo - cb[i].lo) > tlo) return false;
        if (std::abs(ca[i].hi - cb[i].hi) > thi) return false;
    }
    return true;
}

} // namespace tslog
