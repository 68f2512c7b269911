#include "hgflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hgflow/errors.hpp"

namespace hgflow {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) {
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError("config: " + where + "." + key + " must be a number");
    }
    return v.get<double>();
}

long get_integer(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("config: " + where + "." + key + " must be an integer");
    }
    return v.get<long>();
}

ShapeSpec parse_shape(const json& obj) {
    reject_unknown_keys(obj, {"kind", "params"}, "shape");
    if (!obj.contains("kind") || !obj.at("kind").is_string()) {
        throw ConfigError("config: shape.kind must be a string");
    }
    const std::string kind = obj.at("kind").get<std::string>();
    const json params = obj.contains("params") ? obj.at("params") : json::object();
    if (!params.is_object()) {
        throw ConfigError("config: shape.params must be an object");
    }

    if (kind == "sphere") {
        reject_unknown_keys(params, {"r"}, "shape.params (sphere)");
        SphereShape s;
        if (params.contains("r")) s.r = get_number(params, "r", "shape.params");
        if (!(s.r > 0.0) || !std::isfinite(s.r)) {
            throw ConfigError("config: shape.params.r must be positive and finite");
        }
        return s;
    }
    if (kind == "cosine") {
        reject_unknown_keys(params, {"r0", "eps", "mode"}, "shape.params (cosine)");
        CosineShape s;
        if (params.contains("r0")) s.r0 = get_number(params, "r0", "shape.params");
        if (params.contains("eps")) s.eps = get_number(params, "eps", "shape.params");
        if (params.contains("mode")) s.mode = static_cast<int>(get_integer(params, "mode", "shape.params"));
        if (!(s.r0 > 0.0) || !std::isfinite(s.r0)) {
            throw ConfigError("config: shape.params.r0 must be positive and finite");
        }
        if (!(std::abs(s.eps) < s.r0)) {
            throw ConfigError("config: shape.params.eps must satisfy |eps| < r0 "
                              "(field not guaranteed positive otherwise)");
        }
        if (s.mode != 1 && s.mode != 2) {
            throw ConfigError("config: shape.params.mode must be 1 or 2");
        }
        return s;
    }
    if (kind == "offcenter") {
        reject_unknown_keys(params, {"r", "d"}, "shape.params (offcenter)");
        OffcenterShape s;
        if (params.contains("r")) s.r = get_number(params, "r", "shape.params");
        if (params.contains("d")) s.d = get_number(params, "d", "shape.params");
        if (!(s.r > 0.0) || !std::isfinite(s.r)) {
            throw ConfigError("config: shape.params.r must be positive and finite");
        }
        if (!(s.d >= 0.0 && s.d < s.r)) {
            throw ConfigError("config: shape.params.d must satisfy 0 <= d < r "
                              "(origin must stay inside the sphere)");
        }
        return s;
    }
    if (kind == "custom-table") {
        reject_unknown_keys(params, {"psi", "rho"}, "shape.params (custom-table)");
        TableShape s;
        if (!params.contains("psi") || !params.contains("rho")
            || !params.at("psi").is_array() || !params.at("rho").is_array()) {
            throw ConfigError("config: custom-table shape requires psi[] and rho[] arrays");
        }
        s.psi = params.at("psi").get<std::vector<double>>();
        s.rho = params.at("rho").get<std::vector<double>>();
        return s; // monotonicity/span/positivity checked in make_shape
    }
    throw ConfigError("config: shape.kind \"" + kind
                      + "\" is not one of sphere|cosine|offcenter|custom-table");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config: malformed JSON: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(root, {"n", "m", "shape", "ctrl", "outputs", "seed"}, "top level");

    RunConfig cfg;
    if (root.contains("n")) cfg.n = static_cast<int>(get_integer(root, "n", "top level"));
    if (root.contains("m")) cfg.m = static_cast<int>(get_integer(root, "m", "top level"));
    if (cfg.n < 2 || cfg.n > 5) {
        throw ConfigError("config: n must lie in [2, 5] (hypersurface dimension)");
    }
    if (cfg.m < 16 || cfg.m > 8192) {
        throw ConfigError("config: m must lie in [16, 8192]");
    }

    if (root.contains("shape")) {
        if (!root.at("shape").is_object()) {
            throw ConfigError("config: shape must be an object");
        }
        cfg.shape = parse_shape(root.at("shape"));
    }

    if (root.contains("ctrl")) {
        const json& ctrl = root.at("ctrl");
        if (!ctrl.is_object()) throw ConfigError("config: ctrl must be an object");
        reject_unknown_keys(ctrl, {"cfl_safety", "dt_min", "dt_max", "t_max", "osc_tol"}, "ctrl");
        if (ctrl.contains("cfl_safety")) cfg.ctrl.cfl_safety = get_number(ctrl, "cfl_safety", "ctrl");
        if (ctrl.contains("dt_min")) cfg.ctrl.dt_min = get_number(ctrl, "dt_min", "ctrl");
        if (ctrl.contains("dt_max")) cfg.ctrl.dt_max = get_number(ctrl, "dt_max", "ctrl");
        if (ctrl.contains("t_max")) cfg.ctrl.t_max = get_number(ctrl, "t_max", "ctrl");
        if (ctrl.contains("osc_tol")) cfg.ctrl.osc_tol = get_number(ctrl, "osc_tol", "ctrl");
        if (!(cfg.ctrl.cfl_safety > 0.0 && cfg.ctrl.cfl_safety <= 1.0)) {
            throw ConfigError("config: ctrl.cfl_safety must lie in (0, 1]");
        }
        if (!(cfg.ctrl.dt_min > 0.0 && cfg.ctrl.dt_min <= cfg.ctrl.dt_max)) {
            throw ConfigError("config: ctrl requires 0 < dt_min <= dt_max");
        }
        if (!(cfg.ctrl.t_max > 0.0)) throw ConfigError("config: ctrl.t_max must be positive");
        if (!(cfg.ctrl.osc_tol > 0.0)) throw ConfigError("config: ctrl.osc_tol must be positive");
    }

    if (root.contains("outputs")) {
        const json& out = root.at("outputs");
        if (!out.is_object()) throw ConfigError("config: outputs must be an object");
        reject_unknown_keys(out, {"trace_path", "snapshot_every", "snapshot_dir"}, "outputs");
        if (out.contains("trace_path")) {
            cfg.outputs.trace_path = out.at("trace_path").get<std::string>();
        }
        if (out.contains("snapshot_every")) {
            cfg.outputs.snapshot_every =
                static_cast<int>(get_integer(out, "snapshot_every", "outputs"));
            if (cfg.outputs.snapshot_every < 0) {
                throw ConfigError("config: outputs.snapshot_every must be >= 0");
            }
        }
        if (out.contains("snapshot_dir")) {
            cfg.outputs.snapshot_dir = out.at("snapshot_dir").get<std::string>();
        }
    }

    if (root.contains("seed")) cfg.seed = get_integer(root, "seed", "top level");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace hgflow
