#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tslog/convexity.hpp"
#include "tslog/log.hpp"

using namespace tslog;

namespace {

TimeScale nat(double hi) {
    ScaleSpec s;
    s.kind = Family::N;
    s.window_lo = 1;
    s.window_hi = hi;
    return TimeScale::build(s);
}

const ScaleFn kSquare{[](double t) { return t * t; }, [](double t) { return 2 * t; }};

ScaleFn cubic_fn(double c3, double c2, double c1, double c0) {
    return {[=](double t) { return ((c3 * t + c2) * t + c1) * t + c0; },
            [=](double t) { return (3 * c3 * t + 2 * c2) * t + c1; }};
}

} // namespace

TEST_CASE("definition check on the basic examples") {
    auto N = nat(10);
    auto sq = check_definition(kSquare, N, 1, 10);
    CHECK(sq.convex);
    CHECK_FALSE(sq.concave);
    CHECK(sq.max_violation() > 0);

    ScaleFn logN{[&](double t) { return log_ts(N, t); }, {}};
    auto lg = check_definition(logN, N, 1, 10);
    CHECK(lg.concave);
    CHECK_FALSE(lg.convex);
    CHECK(lg.concavity_violation() == 0.0);
    REQUIRE(lg.witness().has_value());
    // the convexity-violating witness satisfies the stated inequality strictly
    CHECK(lg.min_value < -lg.tol_used);

    TimeScale three({{1, 1}, {2, 2}, {5, 5}});
    ScaleFn affine{[](double t) { return 3 * t - 2; }, {}};
    auto af = check_definition(affine, three, 1, 5);
    CHECK(af.convex);
    CHECK(af.concave);

    TimeScale two({{1, 1}, {2, 2}});
    ScaleFn anything{[](double t) { return std::sin(3 * t); }, {}};
    auto deg = check_definition(anything, two, 0, 3);
    CHECK(deg.convex);
    CHECK(deg.concave);

    CHECK_THROWS_AS(check_definition(kSquare, N, 11, 12), DomainError);
}

TEST_CASE("absolute deviation is convex with a concavity witness at the kink") {
    auto N = nat(6);
    ScaleFn vee{[](double t) { return std::abs(t - 3); }, {}};
    auto v = check_definition(vee, N, 1, 6);
    CHECK(v.convex);
    CHECK_FALSE(v.concave);
    REQUIRE(v.witness().has_value());
    // any concavity-violating triple must bracket the kink at 3
    CHECK(v.witness()->t1 < 3.0);
    CHECK(v.witness()->t2 > 3.0);
    // hand value at (2, 3, 4): (4-3)*1 + (2-4)*0 + (3-2)*1 = 2
    CHECK(v.max_value >= 2.0);
}

TEST_CASE("slope form agrees with the definition") {
    auto N = nat(10);
    auto a = check_definition(kSquare, N, 1, 10);
    auto b = check_slope_form(kSquare, N, 1, 10);
    CHECK(a.convex == b.convex);
    CHECK(a.concave == b.concave);

    TimeScale P({{1, 1}, {2, 2}, {4, 4}, {8, 8}});
    ScaleFn logP{[&](double t) { return log_ts(P, t); }, {}};
    auto s = check_slope_form(logP, P, 1, 8);
    CHECK(s.concave); // chord slopes 1, 1/2, 1/4 are decreasing
    CHECK_FALSE(s.convex);
}

TEST_CASE("derivative criterion") {
    auto N = nat(12);
    ScaleFn logN{[&](double t) { return log_ts(N, t); }, {}};
    auto lg = check_by_derivative(logN, N, 1, 12);
    CHECK(lg.concave); // delta derivative 1/t decreases
    CHECK_FALSE(lg.convex);

    auto sq = check_by_derivative(kSquare, N, 1, 12);
    CHECK(sq.convex); // 2t + 1 increases
    CHECK_FALSE(sq.concave);

    ScaleFn constant{[](double) { return 4.25; }, {}};
    auto ct = check_by_derivative(constant, N, 1, 12);
    CHECK(ct.convex);
    CHECK(ct.concave);
}

TEST_CASE("second derivative criterion") {
    auto N = nat(10);
    ScaleFn logN{[&](double t) { return log_ts(N, t); }, {}};
    auto lg = check_by_second_derivative(logN, N, 1, 10);
    CHECK(lg.concave); // 1/(t+1) - 1/t < 0
    CHECK_FALSE(lg.convex);

    auto sq = check_by_second_derivative(kSquare, N, 1, 10);
    CHECK(sq.convex);
    CHECK(sq.max_value == doctest::Approx(2.0).epsilon(1e-12));

    ScaleSpec rs;
    rs.kind = Family::R;
    rs.window_lo = -1;
    rs.window_hi = 1;
    auto R = TimeScale::build(rs);
    auto cube = cubic_fn(1, 0, 0, 0);
    auto cb = check_by_second_derivative(cube, R, -1, 1);
    CHECK_FALSE(cb.convex); // second derivative changes sign at 0
    CHECK_FALSE(cb.concave);
    CHECK(cb.min_value < 0);
    CHECK(cb.max_value > 0);
    CHECK(cb.min_witness->t < 0);
    CHECK(cb.max_witness->t > 0);
}

TEST_CASE("definition and slope form give identical verdicts on random instances") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 80; ++trial) {
        auto T = oracle::random_rational_scale(rng);
        auto f = cubic_fn(coef(rng), coef(rng), coef(rng), coef(rng));
        auto a = check_definition(f, T, T.min(), T.max());
        auto b = check_slope_form(f, T, T.min(), T.max());
        CHECK(a.convex == b.convex);
        CHECK(a.concave == b.concave);
    }
}

TEST_CASE("sufficient criteria are sound for the definition") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    int derivative_hits = 0, second_hits = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto T = oracle::random_rational_scale(rng);
        auto f = cubic_fn(coef(rng), coef(rng), coef(rng), coef(rng));
        auto def = check_definition(f, T, T.min(), T.max());
        auto der = check_by_derivative(f, T, T.min(), T.max());
        auto sec = check_by_second_derivative(f, T, T.min(), T.max());
        if (der.convex) {
            CHECK(def.convex);
            ++derivative_hits;
        }
        if (der.concave) CHECK(def.concave);
        if (sec.convex) {
            CHECK(def.convex);
            ++second_hits;
        }
        if (sec.concave) CHECK(def.concave);
    }
    // the generator must actually produce monotone-derivative instances
    CHECK(derivative_hits > 10);
    CHECK(second_hits > 10);
}

TEST_CASE("log is concave on every scale in the zoo") {
    std::vector<TimeScale> zoo = {
        nat(30),
        TimeScale({{1, 1}, {2, 2}, {4, 4}, {8, 8}, {16, 16}}),
        TimeScale({{0.5, 1.5}, {2, 2}, {2.5, 3.5}}),
    };
    std::mt19937 rng(555);
    for (int i = 0; i < 8; ++i) zoo.push_back(oracle::random_rational_scale(rng));
    for (const auto& T : zoo) {
        ScaleFn L{[&](double t) { return log_ts_integral(T, t); }, {}};
        auto v = check_definition(L, T, std::nextafter(0.0, 1.0), T.max(), 9);
        CHECK(v.concave);
        CHECK(v.concavity_violation() <= 1e-9);
    }
}
