#include "tslog/spec_io.hpp"

#include <json.hpp>

namespace tslog {

namespace {

using nlohmann::json;

double number_at(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw SpecError(std::string("scale spec needs numeric field '") + key + "'");
    return j[key].get<double>();
}

} // namespace

std::string family_name(Family kind) {
    switch (kind) {
    case Family::R: return "R";
    case Family::Z: return "Z";
    case Family::N: return "N";
    case Family::HZ: return "hZ";
    case Family::QN0: return "qN0";
    case Family::QZ: return "qZ";
    case Family::Custom: return "custom";
    }
    return "custom";
}

Family family_from_name(const std::string& name) {
    if (name == "R") return Family::R;
    if (name == "Z") return Family::Z;
    if (name == "N") return Family::N;
    if (name == "hZ") return Family::HZ;
    if (name == "qN0") return Family::QN0;
    if (name == "qZ") return Family::QZ;
    if (name == "custom") return Family::Custom;
    throw SpecError("unknown scale family '" + name + "'");
}

ScaleSpec scale_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("invalid scale spec JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SpecError("scale spec needs a string field 'kind'");

    ScaleSpec spec;
    spec.kind = family_from_name(j["kind"].get<std::string>());
    if (!j.contains("window") || !j["window"].is_array() || j["window"].size() != 2 ||
        !j["window"][0].is_number() || !j["window"][1].is_number())
        throw SpecError("scale spec needs 'window': [lo, hi]");
    spec.window_lo = j["window"][0].get<double>();
    spec.window_hi = j["window"][1].get<double>();

    if (spec.kind == Family::QN0 || spec.kind == Family::QZ) spec.q = number_at(j, "q");
    if (spec.kind == Family::HZ) spec.h = number_at(j, "h");
    if (spec.kind == Family::Custom) {
        if (!j.contains("components") || !j["components"].is_array())
            throw SpecError("custom scale spec needs 'components': [[lo, hi], ...]");
        for (const auto& c : j["components"]) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw SpecError("each component must be [lo, hi]");
            spec.components.push_back({c[0].get<double>(), c[1].get<double>()});
        }
    }
    if (j.contains("eps")) {
        if (!j["eps"].is_number()) throw SpecError("'eps' must be a number");
        spec.eps = j["eps"].get<double>();
        if (!(spec.eps >= 0.0)) throw SpecError("'eps' must be >= 0");
    }
    return spec;
}

std::string scale_spec_to_json(const ScaleSpec& spec) {
    json j;
    j["kind"] = family_name(spec.kind);
    j["window"] = {spec.window_lo, spec.window_hi};
    j["eps"] = spec.eps;
    if (spec.kind == Family::QN0 || spec.kind == Family::QZ) j["q"] = spec.q;
    if (spec.kind == Family::HZ) j["h"] = spec.h;
    if (spec.kind == Family::Custom) {
        json comps = json::array();
        for (const auto& c : spec.components) comps.push_back({c.lo, c.hi});
        j["components"] = comps;
    }
    return j.dump();
}

} // namespace tslog
