#pragma once

#include <functional>

namespace tslog {

// A real-valued function evaluable at points of a time scale. The optional
// exact_derivative is used verbatim at right-dense points; leave it empty to
// force one-sided extrapolation there.
struct ScaleFn {
    std::function<double(double)> eval;
    std::function<double(double)> exact_derivative;

    double operator()(double t) const { return eval(t); }
    bool has_exact_derivative() const { return static_cast<bool>(exact_derivative); }
};

} // namespace tslog
