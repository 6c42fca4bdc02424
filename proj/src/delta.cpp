#include "tslog/delta.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace tslog {

namespace {

void validate(const IntegrationConfig& cfg) {
    if (!(cfg.quad_tol > 0.0) || cfg.max_depth < 1 || !(cfg.deriv_h0 > 0.0))
        throw SpecError("integration config needs quad_tol > 0, max_depth >= 1, deriv_h0 > 0");
}

double eval_checked(const ScaleFn& f, double t) {
    double v = f(t);
    if (!std::isfinite(v))
        throw DomainError("function not evaluable at " + std::to_string(t));
    return v;
}

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const ScaleFn& f, double a, double m, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = eval_checked(f, lm);
    double frm = eval_checked(f, rm);
    double left = simpson(fa, flm, fm, a, m);
    double right = simpson(fm, frm, fb, m, b);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_dense(const ScaleFn& f, double a, double b, const IntegrationConfig& cfg) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = eval_checked(f, a);
    double fm = eval_checked(f, m);
    double fb = eval_checked(f, b);
    double whole = simpson(fa, fm, fb, a, b);
    return adaptive_simpson(f, a, m, b, fa, fm, fb, whole, cfg.quad_tol, cfg.max_depth);
}

// Forward quotients at h, h/2, h/4 extrapolated twice; the quotient error is
// a power series in h, so each level cancels the leading term.
DerivativeResult one_sided_limit(const ScaleFn& f, double t, double room,
                                 const IntegrationConfig& cfg) {
    double h = std::min(cfg.deriv_h0 * std::max(1.0, std::abs(t)), 0.25 * room);
    double ft = eval_checked(f, t);
    double d1 = (eval_checked(f, t + h) - ft) / h;
    double d2 = (eval_checked(f, t + 0.5 * h) - ft) * 2.0 / h;
    double d4 = (eval_checked(f, t + 0.25 * h) - ft) * 4.0 / h;
    double r1 = 2.0 * d2 - d1;
    double r2 = 2.0 * d4 - d2;
    double value = (4.0 * r2 - r1) / 3.0;
    double err = std::abs(value - r2) + 1e-14 * std::max(1.0, std::abs(value));
    return {value, err, DerivMethod::ExtrapolatedLimit};
}

} // namespace

DerivativeResult delta_derivative(const ScaleFn& f, const TimeScale& T, double t,
                                  const IntegrationConfig& cfg) {
    validate(cfg);
    double s = T.snap(t);
    if (s == T.max())
        throw DomainError("delta derivative is undefined at the maximum of the scale");
    double sg = T.sigma(s);
    if (sg > s) {
        double v = (eval_checked(f, sg) - eval_checked(f, s)) / (sg - s);
        return {v, 0.0, DerivMethod::ExactScattered};
    }
    if (f.has_exact_derivative())
        return {f.exact_derivative(s), 0.0, DerivMethod::ExactCallback};
    // right-dense: s sits strictly inside a dense component, so there is room
    // for forward steps
    const auto& comps = T.components();
    double hi = comps[0].hi;
    for (const auto& c : comps) {
        if (s >= c.lo && s <= c.hi) {
            hi = c.hi;
            break;
        }
    }
    return one_sided_limit(f, s, hi - s, cfg);
}

double delta_integral(const ScaleFn& f, const TimeScale& T, double a, double b,
                      const IntegrationConfig& cfg) {
    validate(cfg);
    double sa = T.snap(a);
    double sb = T.snap(b);
    if (sa == sb) return 0.0;
    if (sa > sb) return -delta_integral(f, T, sb, sa, cfg);
    auto segs = enumerate(T, sa, sb);
    double total = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!segs[i].is_point()) total += integrate_dense(f, segs[i].lo, segs[i].hi, cfg);
        if (i + 1 < segs.size())
            total += eval_checked(f, segs[i].hi) * (segs[i + 1].lo - segs[i].hi);
    }
    return total;
}

DerivativeResult delta_second_derivative(const ScaleFn& f, const TimeScale& T, double t,
                                         const IntegrationConfig& cfg) {
    validate(cfg);
    double s = T.snap(t);
    if (s == T.max())
        throw DomainError("second delta derivative is undefined at the maximum");
    double sg = T.sigma(s);
    if (sg > s && sg == T.max())
        throw DomainError("second delta derivative needs sigma(t) below the maximum");

    if (sg > s) {
        auto g1 = delta_derivative(f, T, sg, cfg);
        auto g0 = delta_derivative(f, T, s, cfg);
        double mu = sg - s;
        double v = (g1.value - g0.value) / mu;
        double err = (g1.err_estimate + g0.err_estimate) / mu;
        auto method = (g1.err_estimate == 0.0 && g0.err_estimate == 0.0)
                          ? DerivMethod::ExactScattered
                          : DerivMethod::ExtrapolatedLimit;
        return {v, err, method};
    }

    double inner_err = 0.0;
    ScaleFn g{[&](double u) {
                  auto r = delta_derivative(f, T, u, cfg);
                  inner_err = std::max(inner_err, r.err_estimate);
                  return r.value;
              },
              {}};
    const auto& comps = T.components();
    double hi = comps[0].hi;
    for (const auto& c : comps) {
        if (s >= c.lo && s <= c.hi) {
            hi = c.hi;
            break;
        }
    }
    auto r = one_sided_limit(g, s, hi - s, cfg);
    double h = std::min(cfg.deriv_h0 * std::max(1.0, std::abs(s)), 0.25 * (hi - s));
    // inner evaluation noise is amplified by the 1/h in the quotients
    r.err_estimate += 16.0 * inner_err / h;
    return r;
}

} // namespace tslog
