#include "tslog/log.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace tslog {

namespace {

const ScaleFn kReciprocal{[](double tau) { return 1.0 / tau; }, {}};

Residual make_residual(double lhs, double rhs, double tol) {
    double r = std::abs(lhs - rhs);
    return {lhs, rhs, r, tol, r <= tol};
}

// Partial harmonic sum 1/a + ... + 1/b, accumulated small-to-large.
double harmonic_between(std::int64_t a, std::int64_t b) {
    double s = 0.0;
    for (std::int64_t j = b; j >= a; --j) s += 1.0 / static_cast<double>(j);
    return s;
}

std::int64_t aligned_index(double value, double step, double tol, const char* what) {
    double k = value / step;
    auto n = static_cast<std::int64_t>(std::llround(k));
    if (std::abs(static_cast<double>(n) * step - value) > tol)
        throw DomainError(std::string(what) + " does not lie on the scale family");
    return n;
}

void require_in_window(const ScaleSpec& spec, double t) {
    double tol = spec.eps * std::max(1.0, std::abs(t));
    if (t < spec.window_lo - tol || t > spec.window_hi + tol)
        throw DomainError("point " + std::to_string(t) + " is outside the window");
}

double anchor_check(const TimeScale& T) {
    if (!T.contains(1.0)) throw DomainError("logarithm needs 1 in the time scale");
    return T.snap(1.0);
}

} // namespace

double default_identity_tol(const TimeScale& T) {
    for (const auto& c : T.components())
        if (!c.is_point()) return 1e-8;
    return 1e-12;
}

double log_ts_integral(const TimeScale& T, double t, const IntegrationConfig& cfg) {
    double one = anchor_check(T);
    double s = T.snap(t);
    if (!(s > 0.0)) throw DomainError("logarithm needs t > 0");
    return delta_integral(kReciprocal, T, one, s, cfg);
}

std::optional<double> log_closed_form(const ScaleSpec& spec, double t) {
    if (!(t > 0.0)) throw DomainError("logarithm needs t > 0");
    if (spec.kind != Family::Custom)
        require_in_window(spec, 1.0); // the formulas are anchored at 1
    double tol = spec.eps * std::max(1.0, std::abs(t));
    switch (spec.kind) {
    case Family::R:
        require_in_window(spec, t);
        return std::log(t);
    case Family::QN0:
    case Family::QZ: {
        require_in_window(spec, t);
        double n = std::round(std::log(t) / std::log(spec.q));
        if (std::abs(std::pow(spec.q, n) - t) > tol)
            throw DomainError("point is not a power of q");
        if (spec.kind == Family::QN0 && n < 0.0)
            throw DomainError("point is not a power of q");
        return (spec.q - 1.0) * n; // the log-ratio snapped to the exact exponent
    }
    case Family::N:
    case Family::Z: {
        require_in_window(spec, t);
        std::int64_t n = aligned_index(t, 1.0, tol, "point");
        if (n < 1) throw DomainError("harmonic form needs an integer t >= 1");
        return harmonic_between(1, n - 1);
    }
    case Family::HZ: {
        require_in_window(spec, t);
        std::int64_t m = aligned_index(1.0, spec.h, spec.eps, "1");
        std::int64_t j = aligned_index(t, spec.h, tol, "point");
        if (m < 1 || j < 1) throw DomainError("harmonic form needs positive grid indices");
        return j >= m ? harmonic_between(m, j - 1) : -harmonic_between(j, m - 1);
    }
    case Family::Custom:
        return std::nullopt;
    }
    return std::nullopt;
}

double log_ts(const TimeScale& T, double t, const IntegrationConfig& cfg) {
    anchor_check(T);
    double s = T.snap(t);
    if (!(s > 0.0)) throw DomainError("logarithm needs t > 0");
    if (T.origin()) {
        auto cf = log_closed_form(*T.origin(), s);
        if (cf) return *cf;
    }
    return delta_integral(kReciprocal, T, T.snap(1.0), s, cfg);
}

Residual sigma_recurrence_residual(const TimeScale& T, double t, const IntegrationConfig& cfg,
                                   std::optional<double> tol) {
    anchor_check(T);
    double s = T.snap(t);
    if (!(s > 0.0)) throw DomainError("recurrence needs t > 0");
    if (s == T.max()) throw DomainError("recurrence needs t below the maximum");
    double sg = T.sigma(s);
    double lhs = log_ts_integral(T, sg, cfg);
    double rhs = log_ts_integral(T, s, cfg) + (sg - s) / s;
    return make_residual(lhs, rhs, tol.value_or(default_identity_tol(T)));
}

Residual product_identity_residual(const TimeScale& T, double a, double b,
                                   const IntegrationConfig& cfg, std::optional<double> tol) {
    anchor_check(T);
    double sa = T.snap(a);
    if (!(sa > 0.0)) throw DomainError("product identity needs a > 0");
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("product identity needs b > 0");
    double sab = T.snap(sa * b);
    TimeScale Ta = scale_div(T, sa);
    // ab in T forces b into T/a; anything else is a scale-arithmetic defect
    if (!Ta.contains(b)) throw Error("internal: b missing from T/a despite ab in T");
    double lhs = log_ts_integral(T, sab, cfg);
    double rhs = log_ts_integral(T, sa, cfg) + log_ts_integral(Ta, b, cfg);
    return make_residual(lhs, rhs, tol.value_or(default_identity_tol(T)));
}

Residual power_sum_residual(const TimeScale& T, double a, int n, const IntegrationConfig& cfg,
                            std::optional<double> tol) {
    anchor_check(T);
    if (n < 1) throw DomainError("power identity needs n >= 1");
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("power identity needs a > 0");
    std::vector<double> powers(static_cast<std::size_t>(n) + 1);
    double p = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (!T.contains(p))
            throw DomainError("power identity needs a^" + std::to_string(k) + " in the scale");
        powers[static_cast<std::size_t>(k)] = T.snap(p);
        p *= a;
    }
    double lhs = log_ts_integral(T, powers.back(), cfg);
    double rhs = 0.0;
    for (int k = 0; k < n; ++k)
        rhs += log_ts_integral(scale_div(T, powers[static_cast<std::size_t>(k)]), a, cfg);
    return make_residual(lhs, rhs, tol.value_or(default_identity_tol(T)));
}

Residual quotient_identity_residual(const TimeScale& T, double x, double y,
                                    const IntegrationConfig& cfg, std::optional<double> tol) {
    anchor_check(T);
    double sx = T.snap(x);
    if (!(sx > 0.0)) throw DomainError("quotient identity needs x > 0");
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("quotient identity needs y > 0");
    double sz = T.snap(sx / y);
    if (!(sz > 0.0)) throw DomainError("quotient identity needs x/y > 0");
    TimeScale Tq = scale_div(scale_mul(y, T), sx);
    double lhs = log_ts_integral(T, sz, cfg);
    double rhs = log_ts_integral(T, sx, cfg) - log_ts_integral(Tq, y, cfg);
    return make_residual(lhs, rhs, tol.value_or(default_identity_tol(T)));
}

Residual chain_rule_residual(const ScaleFn& p, const TimeScale& T, double t,
                             const IntegrationConfig& cfg, std::optional<double> tol) {
    double s = T.snap(t);
    if (s == T.max()) throw DomainError("chain rule needs t below the maximum");
    TimeScale Timg = image_under_monotone(p, T);
    if (!(Timg.min() > 0.0)) throw DomainError("chain rule needs p positive on the scale");
    if (!Timg.contains(1.0))
        throw DomainError("chain rule needs 1 in the image scale to anchor the logarithm");
    // Extrapolated quotients amplify integral noise by 1/h, so the composite
    // is evaluated with a tightened quadrature tolerance.
    IntegrationConfig inner = cfg;
    inner.quad_tol = std::min(cfg.quad_tol, 1e-13);
    ScaleFn composite{[&](double u) { return log_ts_integral(Timg, p(u), inner); }, {}};
    double lhs = delta_derivative(composite, T, s, cfg).value;
    // the scattered branch of delta_derivative takes precedence over the
    // callback, which only speaks for right-dense points
    double rhs = delta_derivative(p, T, s, cfg).value / p(s);
    return make_residual(lhs, rhs, tol.value_or(default_identity_tol(T)));
}

std::vector<std::pair<double, double>> log_table(const TimeScale& T, const IntegrationConfig& cfg,
                                                 int dense_samples) {
    anchor_check(T);
    if (dense_samples < 2) dense_samples = 2;
    std::vector<std::pair<double, double>> rows;
    for (const auto& c : T.components()) {
        if (c.is_point()) {
            if (c.lo > 0.0) rows.emplace_back(c.lo, log_ts(T, c.lo, cfg));
            continue;
        }
        if (c.hi <= 0.0) continue;
        double lo = std::max(c.lo, 0.0);
        for (int i = 0; i < dense_samples; ++i) {
            double u = static_cast<double>(i) / (dense_samples - 1);
            double t = lo + u * (c.hi - lo);
            if (t > 0.0) rows.emplace_back(t, log_ts(T, t, cfg));
        }
    }
    return rows;
}

} // namespace tslog
