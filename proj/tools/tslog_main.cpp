// Command-line front end: build scales, evaluate and tabulate the time-scale
// logarithm, verify its identities, and test convexity.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or scale-spec error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tslog/convexity.hpp"
#include "tslog/log.hpp"
#include "tslog/spec_io.hpp"

using nlohmann::json;
using namespace tslog;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

struct ScaleOptions {
    std::string family;
    std::string spec_json;
    std::string components_json;
    double q = 0.0;
    double h = 0.0;
    std::vector<double> window;
    double eps = kDefaultEps;
};

struct OutputOptions {
    std::string format = "human";
    std::optional<double> tol;
};

void add_scale_options(CLI::App* cmd, ScaleOptions& s) {
    cmd->set_help_flag("--help", "Print help"); // frees -h / --h for the hZ step
    cmd->add_option("--scale", s.family, "Scale family: R, Z, N, hZ, qN0, qZ, custom");
    cmd->add_option("--spec", s.spec_json, "Inline JSON scale spec (alternative to flags)");
    cmd->add_option("--q", s.q, "Ratio for qN0 / qZ (q > 1)");
    cmd->add_option("--h", s.h, "Step for hZ (h > 0)");
    cmd->add_option("--components", s.components_json, "Components for custom, e.g. [[0,1],[2,2]]");
    cmd->add_option("--window", s.window, "Materialization window LO HI")->expected(2);
    cmd->add_option("--eps", s.eps, "Membership snap tolerance (relative)");
}

void add_output_options(CLI::App* cmd, OutputOptions& o, double* tol_slot) {
    cmd->add_option("--format", o.format, "Output format: human, csv, json")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    auto* opt = cmd->add_option("--tol", *tol_slot, "Residual tolerance (default per scale)");
    cmd->callback([&o, opt, tol_slot]() {
        if (opt->count() > 0) o.tol = *tol_slot;
    });
}

ScaleSpec make_spec(const ScaleOptions& s) {
    if (!s.spec_json.empty()) return scale_spec_from_json(s.spec_json);
    if (s.family.empty()) throw SpecError("give --scale FAMILY or --spec JSON");
    json j;
    j["kind"] = s.family;
    if (s.window.size() == 2) j["window"] = {s.window[0], s.window[1]};
    j["eps"] = s.eps;
    Family kind = family_from_name(s.family);
    if (kind == Family::QN0 || kind == Family::QZ) j["q"] = s.q;
    if (kind == Family::HZ) j["h"] = s.h;
    if (kind == Family::Custom) {
        if (s.components_json.empty()) throw SpecError("custom scale needs --components");
        json comps = json::parse(s.components_json, nullptr, false);
        if (comps.is_discarded()) throw SpecError("--components is not valid JSON");
        j["components"] = comps;
        if (s.window.size() != 2 && comps.is_array() && !comps.empty()) {
            // custom scales may omit the window; use the component hull
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (const auto& c : comps) {
                if (!c.is_array() || c.size() != 2 || !c[0].is_number()) continue;
                double clo = c[0].get<double>(), chi = c[1].get<double>();
                lo = first ? clo : std::min(lo, clo);
                hi = first ? chi : std::max(hi, chi);
                first = false;
            }
            if (!first) j["window"] = {lo, hi};
        }
    }
    if (!j.contains("window")) throw SpecError("scale family needs --window LO HI");
    return scale_spec_from_json(j.dump());
}

double pick_tol(const OutputOptions& o, const TimeScale& T) {
    if (o.tol) return *o.tol;
    if (const char* env = std::getenv("TSLOG_DEFAULT_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return default_identity_tol(T);
}

// Built-in functions usable for convexity checks and as the chain-rule map.
ScaleFn builtin_fn(const std::string& name, const TimeScale& T, const IntegrationConfig& cfg) {
    if (name == "log")
        return {[&T, cfg](double t) { return log_ts(T, t, cfg); },
                [](double t) { return 1.0 / t; }};
    if (name == "square") return {[](double t) { return t * t; }, [](double t) { return 2 * t; }};
    if (name == "cube")
        return {[](double t) { return t * t * t; }, [](double t) { return 3 * t * t; }};
    if (name == "identity") return {[](double t) { return t; }, [](double) { return 1.0; }};
    if (name == "sqrt")
        return {[](double t) { return std::sqrt(t); },
                [](double t) { return 0.5 / std::sqrt(t); }};
    if (name == "exp")
        return {[](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }};
    if (name == "recip")
        return {[](double t) { return 1.0 / t; }, [](double t) { return -1.0 / (t * t); }};
    if (name == "abs3") return {[](double t) { return std::abs(t - 3.0); }, {}};
    throw SpecError("unknown function '" + name +
                    "' (expected log, square, cube, identity, sqrt, exp, recip, abs3)");
}

// Sample points for sweeps: every scattered point plus a small grid on each
// dense component.
std::vector<double> sweep_points(const TimeScale& T, int dense_samples = 9) {
    std::vector<double> pts;
    for (const auto& c : T.components()) {
        if (c.is_point()) {
            pts.push_back(c.lo);
            continue;
        }
        for (int i = 0; i < dense_samples; ++i) {
            double u = static_cast<double>(i) / (dense_samples - 1);
            pts.push_back(c.lo + u * (c.hi - c.lo));
        }
    }
    return pts;
}

void emit(const json& doc, const OutputOptions& o, const std::string& csv,
          const std::string& human) {
    if (o.format == "json")
        std::cout << doc.dump() << "\n";
    else if (o.format == "csv")
        std::cout << csv;
    else
        std::cout << human;
}

// ---------------------------------------------------------------- eval/table

int run_eval(const ScaleOptions& so, const OutputOptions& oo, const std::vector<double>& at) {
    ScaleSpec spec = make_spec(so);
    TimeScale T = TimeScale::build(spec);
    IntegrationConfig cfg;

    json results = json::array();
    std::string csv = "t,L\n";
    std::string human;
    for (double t : at) {
        double L = log_ts(T, t, cfg);
        results.push_back({{"t", t}, {"L", L}});
        csv += fmt17(t) + "," + fmt17(L) + "\n";
        human += "L(" + fmt6(t) + ") = " + fmt6(L) + "\n";
    }
    json doc{{"command", "eval"},
             {"scale", json::parse(scale_spec_to_json(spec))},
             {"results", results},
             {"pass", true}};
    emit(doc, oo, csv, human);
    return 0;
}

int run_table(const ScaleOptions& so, const OutputOptions& oo, int samples) {
    ScaleSpec spec = make_spec(so);
    TimeScale T = TimeScale::build(spec);
    IntegrationConfig cfg;

    auto rows = log_table(T, cfg, samples);
    json results = json::array();
    std::string csv = "t,L\n";
    std::string human;
    for (auto [t, L] : rows) {
        results.push_back({{"t", t}, {"L", L}});
        csv += fmt17(t) + "," + fmt17(L) + "\n";
        human += fmt6(t) + "\t" + fmt6(L) + "\n";
    }
    json doc{{"command", "table"},
             {"scale", json::parse(scale_spec_to_json(spec))},
             {"results", results},
             {"pass", true}};
    emit(doc, oo, csv, human);
    return 0;
}

// -------------------------------------------------------------------- verify

struct VerifyCase {
    json params;
    Residual r;
};

int report_verify(const std::string& kind, const ScaleSpec& spec, const OutputOptions& oo,
                  const std::vector<VerifyCase>& cases) {
    bool all_pass = true;
    double max_residual = 0.0;
    json results = json::array();
    std::string csv = "kind,params,lhs,rhs,residual,tol,pass\n";
    std::string human;
    for (const auto& c : cases) {
        all_pass = all_pass && c.r.pass;
        max_residual = std::max(max_residual, c.r.residual);
        json entry = c.params;
        entry["lhs"] = c.r.lhs;
        entry["rhs"] = c.r.rhs;
        entry["residual"] = c.r.residual;
        entry["tol"] = c.r.tol_used;
        entry["pass"] = c.r.pass;
        results.push_back(entry);
        csv += kind + ",\"" + c.params.dump() + "\"," + fmt17(c.r.lhs) + "," + fmt17(c.r.rhs) +
               "," + fmt17(c.r.residual) + "," + fmt17(c.r.tol_used) + "," +
               (c.r.pass ? "true" : "false") + "\n";
    }
    human += kind + ": " + std::to_string(cases.size()) + " case(s), max residual " +
             fmt6(max_residual) + (all_pass ? " -- PASS\n" : " -- FAIL\n");
    if (cases.size() == 1) {
        const auto& r = cases[0].r;
        human += "  lhs = " + fmt6(r.lhs) + "  rhs = " + fmt6(r.rhs) + "  tol = " +
                 fmt6(r.tol_used) + "\n";
    }
    json doc{{"command", std::string("verify ") + kind},
             {"scale", json::parse(scale_spec_to_json(spec))},
             {"results", results},
             {"max_residual", max_residual},
             {"pass", all_pass}};
    emit(doc, oo, csv, human);
    return all_pass ? 0 : 1;
}

int run_verify(const std::string& kind, const ScaleOptions& so, const OutputOptions& oo,
               bool sweep, double a, double b, int n, double x, double y, double t,
               const std::string& fn_name) {
    ScaleSpec spec = make_spec(so);
    TimeScale T = TimeScale::build(spec);
    IntegrationConfig cfg;
    double tol = pick_tol(oo, T);
    std::vector<VerifyCase> cases;

    auto positive_points = [&]() {
        std::vector<double> pts;
        for (double p : sweep_points(T))
            if (p > 0.0) pts.push_back(p);
        return pts;
    };

    if (kind == "product") {
        if (sweep) {
            auto pts = positive_points();
            for (double pa : pts)
                for (double pc : pts) {
                    double pb = pc / pa;
                    auto r = product_identity_residual(T, pa, pb, cfg, tol);
                    cases.push_back({json{{"a", pa}, {"b", pb}}, r});
                }
        } else {
            auto r = product_identity_residual(T, a, b, cfg, tol);
            cases.push_back({json{{"a", a}, {"b", b}}, r});
        }
    } else if (kind == "power") {
        if (sweep) {
            for (int k = 1;; ++k) {
                double p = 1.0;
                bool ok = true;
                for (int i = 0; i <= k && ok; ++i) {
                    ok = p > 0.0 && T.contains(p);
                    p *= a;
                }
                if (!ok) break;
                auto r = power_sum_residual(T, a, k, cfg, tol);
                cases.push_back({json{{"a", a}, {"n", k}}, r});
            }
            if (cases.empty()) throw DomainError("no admissible n for the given a");
        } else {
            auto r = power_sum_residual(T, a, n, cfg, tol);
            cases.push_back({json{{"a", a}, {"n", n}}, r});
        }
    } else if (kind == "quotient") {
        if (sweep) {
            auto pts = positive_points();
            for (double px : pts)
                for (double pz : pts) {
                    double py = px / pz;
                    auto r = quotient_identity_residual(T, px, py, cfg, tol);
                    cases.push_back({json{{"x", px}, {"y", py}}, r});
                }
        } else {
            auto r = quotient_identity_residual(T, x, y, cfg, tol);
            cases.push_back({json{{"x", x}, {"y", y}}, r});
        }
    } else if (kind == "sigma") {
        if (sweep) {
            for (double p : positive_points()) {
                if (T.snap(p) == T.max()) continue;
                auto r = sigma_recurrence_residual(T, p, cfg, tol);
                cases.push_back({json{{"t", p}}, r});
            }
            if (cases.empty()) throw DomainError("no admissible points for the recurrence");
        } else {
            auto r = sigma_recurrence_residual(T, t, cfg, tol);
            cases.push_back({json{{"t", t}}, r});
        }
    } else if (kind == "chain") {
        ScaleFn p = builtin_fn(fn_name, T, cfg);
        if (sweep) {
            for (double pt : sweep_points(T)) {
                if (T.snap(pt) == T.max()) continue;
                auto r = chain_rule_residual(p, T, pt, cfg, tol);
                cases.push_back({json{{"t", pt}, {"fn", fn_name}}, r});
            }
            if (cases.empty()) throw DomainError("no admissible points for the chain rule");
        } else {
            auto r = chain_rule_residual(p, T, t, cfg, tol);
            cases.push_back({json{{"t", t}, {"fn", fn_name}}, r});
        }
    } else {
        throw SpecError("unknown identity '" + kind +
                        "' (expected product, power, quotient, sigma, chain)");
    }
    return report_verify(kind, spec, oo, cases);
}

// ----------------------------------------------------------------- convexity

int run_convexity(const ScaleOptions& so, const OutputOptions& oo, const std::string& fn_name,
                  const std::string& method, const std::string& require, int grid,
                  std::vector<double> interval) {
    ScaleSpec spec = make_spec(so);
    TimeScale T = TimeScale::build(spec);
    IntegrationConfig cfg;
    ScaleFn f = builtin_fn(fn_name, T, cfg);

    double lo = T.min(), hi = T.max();
    if (interval.size() == 2) {
        lo = interval[0];
        hi = interval[1];
    } else if (fn_name == "log" || fn_name == "sqrt" || fn_name == "recip") {
        lo = std::max(lo, std::nextafter(0.0, 1.0)); // these need t > 0
    }
    double tol_rel = oo.tol.value_or(1e-9);

    ConvexityVerdict v;
    if (method == "definition")
        v = check_definition(f, T, lo, hi, grid, tol_rel);
    else if (method == "slope")
        v = check_slope_form(f, T, lo, hi, grid, tol_rel);
    else if (method == "derivative")
        v = check_by_derivative(f, T, lo, hi, cfg, grid, tol_rel);
    else
        v = check_by_second_derivative(f, T, lo, hi, cfg, grid, tol_rel);

    bool pass = false;
    if (require == "convex")
        pass = v.convex;
    else if (require == "concave")
        pass = v.concave;
    else if (require == "both")
        pass = v.convex && v.concave;
    else
        pass = v.convex || v.concave;

    json result{{"fn", fn_name},
                {"method", method},
                {"convex", v.convex},
                {"concave", v.concave},
                {"min_value", v.min_value},
                {"max_value", v.max_value},
                {"convexity_violation", v.convexity_violation()},
                {"concavity_violation", v.concavity_violation()},
                {"tol", v.tol_used}};
    if (auto w = v.witness())
        result["witness"] = {{"t1", w->t1}, {"t", w->t}, {"t2", w->t2}};

    std::string csv = "fn,method,convex,concave,min_value,max_value,pass\n";
    csv += fn_name + "," + method + "," + (v.convex ? "true" : "false") + "," +
           (v.concave ? "true" : "false") + "," + fmt17(v.min_value) + "," + fmt17(v.max_value) +
           "," + (pass ? "true" : "false") + "\n";
    std::string human = fn_name + " on the scale is " +
                        (v.convex && v.concave ? "convex and concave"
                         : v.convex            ? "convex"
                         : v.concave           ? "concave"
                                               : "neither convex nor concave") +
                        " (" + method + ")" + (pass ? " -- PASS\n" : " -- FAIL\n");

    json doc{{"command", "convexity"},
             {"scale", json::parse(scale_spec_to_json(spec))},
             {"results", json::array({result})},
             {"pass", pass}};
    emit(doc, oo, csv, human);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"natural logarithm and convexity on time scales"};
    app.require_subcommand(1);

    ScaleOptions so;
    OutputOptions oo;
    double tol_slot = 0.0;

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate L at given points");
    std::vector<double> at;
    add_scale_options(eval_cmd, so);
    add_output_options(eval_cmd, oo, &tol_slot);
    eval_cmd->add_option("--at", at, "Evaluation points (repeatable)")->required();

    auto* table_cmd = app.add_subcommand("table", "Tabulate L over the scale");
    int samples = 9;
    add_scale_options(table_cmd, so);
    add_output_options(table_cmd, oo, &tol_slot);
    table_cmd->add_option("--samples", samples, "Samples per dense component");

    auto* verify_cmd = app.add_subcommand("verify", "Verify a logarithm identity");
    std::string kind;
    bool sweep = false;
    double a = 0, b = 0, x = 0, y = 0, t = 0;
    int n = 0;
    std::string chain_fn = "square";
    verify_cmd->add_option("kind", kind, "product, power, quotient, sigma, chain")->required();
    add_scale_options(verify_cmd, so);
    add_output_options(verify_cmd, oo, &tol_slot);
    verify_cmd->add_flag("--sweep", sweep, "Enumerate all admissible parameters");
    verify_cmd->add_option("--a", a);
    verify_cmd->add_option("--b", b);
    verify_cmd->add_option("--n", n);
    verify_cmd->add_option("--x", x);
    verify_cmd->add_option("--y", y);
    verify_cmd->add_option("--t", t);
    verify_cmd->add_option("--fn", chain_fn, "Chain-rule map (builtin name)");

    auto* conv_cmd = app.add_subcommand("convexity", "Convexity / concavity verdicts");
    std::string fn_name = "log";
    std::string method = "definition";
    std::string require = "either";
    int grid = 33;
    std::vector<double> interval;
    add_scale_options(conv_cmd, so);
    add_output_options(conv_cmd, oo, &tol_slot);
    conv_cmd->add_option("--fn", fn_name, "Function: log or a builtin name");
    conv_cmd->add_option("--method", method, "definition, slope, derivative, second")
        ->check(CLI::IsMember({"definition", "slope", "derivative", "second"}));
    conv_cmd->add_option("--require", require, "Property required for exit 0")
        ->check(CLI::IsMember({"convex", "concave", "either", "both"}));
    conv_cmd->add_option("--grid", grid, "Samples per dense component");
    conv_cmd->add_option("--interval", interval, "Restrict to [LO, HI]")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors are exit 2
    }

    try {
        if (*eval_cmd) return run_eval(so, oo, at);
        if (*table_cmd) return run_table(so, oo, samples);
        if (*verify_cmd) return run_verify(kind, so, oo, sweep, a, b, n, x, y, t, chain_fn);
        if (*conv_cmd) return run_convexity(so, oo, fn_name, method, require, grid, interval);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        // eval treats out-of-scale points as a failed check, not usage
        return *eval_cmd ? 1 : 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
