#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "tslog/log.hpp"
#include "tslog/spec_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + TSLOG_CLI_PATH + " " + args +
                      " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("eval produces log values and honest exit codes") {
    auto r = run_cli("eval --scale N --window 1 10 --at 4 --format json");
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["command"] == "eval");
    CHECK(doc["pass"] == true);
    CHECK(doc["results"][0]["t"] == 4.0);
    CHECK(doc["results"][0]["L"].get<double>() ==
          doctest::Approx(11.0 / 6.0).epsilon(1e-15));

    auto q = run_cli("eval --scale qN0 --q 2 --window 1 16 --at 8 --format csv");
    CHECK(q.exit_code == 0);
    CHECK(q.out == "t,L\n8,3\n");

    auto one = run_cli("eval --scale R --window 0.5 3 --at 1 --format csv");
    CHECK(one.exit_code == 0);
    CHECK(one.out == "t,L\n1,0\n");

    // point outside the scale is a failed check (1), not a usage error (2)
    CHECK(run_cli("eval --scale N --window 1 10 --at 2.5").exit_code == 1);
    // bad spec and bad flags are usage errors
    CHECK(run_cli("eval --scale qN0 --window 1 16 --at 8").exit_code == 2);
    CHECK(run_cli("eval --scale N --window 1 10").exit_code == 2);
    CHECK(run_cli("frobnicate --scale N").exit_code == 2);
}

TEST_CASE("table emits re-parseable CSV and JSON") {
    auto r = run_cli("table --scale qN0 --q 2 --window 1 8 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "t,L\n1,0\n2,1\n4,2\n8,3\n");

    // CSV rows round-trip to exactly the library values
    auto spec = tslog::scale_spec_from_json(R"({"kind":"custom",
        "components":[[0.5,1.5],[2,2],[3,3]], "window":[0.5,3]})");
    auto T = tslog::TimeScale::build(spec);
    auto csv = run_cli("table --spec '{\"kind\":\"custom\","
                       "\"components\":[[0.5,1.5],[2,2],[3,3]],\"window\":[0.5,3]}'"
                       " --samples 5 --format csv");
    REQUIRE(csv.exit_code == 0);
    std::size_t pos = csv.out.find('\n') + 1;
    int rows = 0;
    while (pos < csv.out.size()) {
        std::size_t comma = csv.out.find(',', pos);
        std::size_t eol = csv.out.find('\n', pos);
        REQUIRE(comma != std::string::npos);
        double t = std::strtod(csv.out.substr(pos, comma - pos).c_str(), nullptr);
        double L = std::strtod(csv.out.substr(comma + 1, eol - comma - 1).c_str(), nullptr);
        CHECK(L == tslog::log_ts(T, t)); // 17 significant digits round-trip losslessly
        pos = eol + 1;
        ++rows;
    }
    CHECK(rows == 7); // 5 dense samples + 2 isolated points
}

TEST_CASE("verify single cases and sweeps") {
    auto r = run_cli("verify product --scale N --window 1 10 --a 2 --b 3 --format json");
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["max_residual"].get<double>() <= 1e-12);

    auto sweep = run_cli("verify product --scale N --window 1 20 --sweep --format json");
    REQUIRE(sweep.exit_code == 0);
    auto sdoc = json::parse(sweep.out);
    CHECK(sdoc["results"].size() == 400); // 20 x 20 admissible pairs
    CHECK(sdoc["max_residual"].get<double>() <= 1e-12);

    // mixed dense/scattered scale sweeps run the quadrature route
    auto mixed = run_cli("verify product --scale custom "
                         "--components '[[0.5,1.5],[2,2],[3,3]]' --sweep --format json");
    REQUIRE(mixed.exit_code == 0);
    auto mdoc = json::parse(mixed.out);
    CHECK(mdoc["results"].size() == 121); // (9 samples + 2 points)^2
    CHECK(mdoc["max_residual"].get<double>() <= 1e-8);

    CHECK(run_cli("verify power --scale qN0 --q 2 --window 1 16 --a 2 --n 3").exit_code == 0);
    CHECK(run_cli("verify power --scale qN0 --q 2 --window 1 1024 --a 2 --sweep").exit_code == 0);
    CHECK(run_cli("verify quotient --scale N --window 1 10 --x 6 --y 2").exit_code == 0);
    CHECK(run_cli("verify sigma --scale N --window 1 10 --t 3").exit_code == 0);
    CHECK(run_cli("verify sigma --scale N --window 1 30 --sweep").exit_code == 0);
    CHECK(run_cli("verify chain --scale N --window 1 20 --fn square --t 3").exit_code == 0);

    // precondition violations are usage-level failures
    CHECK(run_cli("verify product --scale N --window 1 10 --a 2.5 --b 2").exit_code == 2);
    CHECK(run_cli("verify power --scale N --window 1 10 --a 2 --n 5").exit_code == 2);
    CHECK(run_cli("verify wibble --scale N --window 1 10").exit_code == 2);
}

TEST_CASE("tolerance can force a residual failure, flag beats env") {
    // dense-point chain rule has a small but nonzero extrapolation residual
    std::string args = "verify chain --scale R --window 0.5 3 --fn square --t 1.5";
    CHECK(run_cli(args).exit_code == 0);
    CHECK(run_cli(args + " --tol 1e-15").exit_code == 1);
    CHECK(run_cli(args, "TSLOG_DEFAULT_TOL=1e-15").exit_code == 1);
    CHECK(run_cli(args + " --tol 1e-3", "TSLOG_DEFAULT_TOL=1e-15").exit_code == 0);
}

TEST_CASE("convexity verdicts and the requested property") {
    auto r = run_cli(
        "convexity --scale N --window 1 20 --fn log --method definition --format json");
    REQUIRE(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["results"][0]["concave"] == true);
    CHECK(doc["results"][0]["convex"] == false);

    CHECK(run_cli("convexity --scale N --window 1 20 --fn log --require concave").exit_code == 0);
    CHECK(run_cli("convexity --scale N --window 1 20 --fn log --require convex").exit_code == 1);
    CHECK(run_cli("convexity --scale N --window 1 20 --fn square --method derivative "
                  "--require convex")
              .exit_code == 0);
    CHECK(run_cli("convexity --scale custom --components '[[1,1],[2,2]]' --fn log "
                  "--require both")
              .exit_code == 0);
    CHECK(run_cli("convexity --scale N --window 1 6 --fn abs3 --require concave").exit_code == 1);
}

TEST_CASE("identical invocations are byte-identical") {
    for (const char* args :
         {"table --scale N --window 1 12 --format json",
          "verify product --scale N --window 1 12 --sweep --format csv",
          "convexity --scale R --window 0.25 4 --fn log --method slope --format json"}) {
        auto first = run_cli(args);
        auto second = run_cli(args);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.out == second.out);
    }
}
