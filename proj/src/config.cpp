#include "dp3/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "dp3/errors.hpp"

namespace dp3 {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing required section or key '") + key + "'");
    return *it;
}

double need_number(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

double opt_number(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) fail(std::string("'") + key + "' must be a number");
    return it->get<double>();
}

std::string need_string(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

RunConfig parse_config_json(const nlohmann::json& j) {
    if (!j.is_object()) fail("document root must be an object");
    RunConfig cfg;
    cfg.raw = j;

    const json& domain = need(j, "domain");
    cfg.L = need_number(domain, "L");
    const double np = need_number(domain, "n_points");
    if (!(cfg.L > 0.0)) fail("domain.L must be positive");
    if (!(np >= 16.0) || np != std::floor(np)) fail("domain.n_points must be an integer >= 16");
    cfg.n_points = static_cast<std::size_t>(np);
    if ((cfg.n_points & (cfg.n_points - 1)) != 0) fail("domain.n_points must be a power of two");

    const json& time = need(j, "time");
    cfg.time.dt_max = need_number(time, "dt_max");
    cfg.time.cfl = opt_number(time, "cfl", 0.3);
    cfg.time.dt_min = opt_number(time, "dt_min", 1e-9);
    cfg.time.t_end = need_number(time, "t_end");
    const double se = opt_number(time, "sample_every", 1.0);
    if (!(se >= 1.0) || se != std::floor(se)) fail("time.sample_every must be an integer >= 1");
    cfg.sample_every = static_cast<std::size_t>(se);

    const json& model = need(j, "model");
    try {
        cfg.form = parse_rhs_form(need_string(model, "form"));
    } catch (const domain_error& e) {
        fail(e.what());
    }
    cfg.sobolev_s = opt_number(model, "sobolev_s", 2.0);

    const json& init = need(j, "init");
    try {
        cfg.init.kind = parse_init_kind(need_string(init, "kind"));
        if (auto it = init.find("params"); it != init.end()) {
            if (!it->is_object()) fail("init.params must be an object");
            for (auto& [key, value] : it->items()) {
                if (!value.is_number()) fail("init.params." + key + " must be a number");
                cfg.init.params[key] = value.get<double>();
            }
        }
        if (auto it = init.find("field_kinds"); it != init.end()) {
            if (!it->is_object()) fail("init.field_kinds must be an object");
            for (auto& [key, value] : it->items()) {
                if (key != "eta" && key != "u" && key != "v") fail("init.field_kinds keys must be eta/u/v");
                cfg.init.field_kinds[key] = parse_init_kind(value.get<std::string>());
            }
        }
    } catch (const domain_error& e) {
        fail(e.what());
    }

    if (auto it = j.find("certify"); it != j.end()) cfg.certify_x0 = need_number(*it, "x0");

    if (auto it = j.find("weights"); it != j.end()) {
        if (!it->is_array()) fail("weights must be an array");
        for (const json& w : *it) {
            try {
                cfg.weights.emplace_back(parse_weight_kind(need_string(w, "kind")),
                                         need_number(w, "beta"), need_number(w, "N"));
            } catch (const domain_error& e) {
                fail(e.what());
            }
        }
    }

    if (auto it = j.find("mollify"); it != j.end()) {
        const json& eps = need(*it, "epsilons");
        if (!eps.is_array()) fail("mollify.epsilons must be an array");
        for (const json& e : eps) {
            if (!e.is_number()) fail("mollify.epsilons entries must be numbers");
            cfg.mollify_epsilons.push_back(e.get<double>());
        }
        cfg.mollify_calibration = opt_number(*it, "calibration_C", 1.0);
        if (!(cfg.mollify_calibration > 0.0)) fail("mollify.calibration_C must be positive");
    }

    if (auto it = j.find("persist"); it != j.end()) {
        PersistConfig pc;
        pc.beta = need_number(*it, "beta");
        pc.gamma = need_number(*it, "gamma");
        const json& ladder = need(*it, "N_ladder");
        if (!ladder.is_array()) fail("persist.N_ladder must be an array");
        for (const json& e : ladder) pc.n_ladder.push_back(e.get<double>());
        if (auto sel = it->find("selector"); sel != it->end()) {
            for (const json& e : *sel) pc.selector.push_back(e.get<std::string>());
        }
        if (auto fx = it->find("flux_sample_xs"); fx != it->end()) {
            for (const json& e : *fx) pc.flux_sample_xs.push_back(e.get<double>());
        }
        cfg.persist = std::move(pc);
    }

    if (auto it = j.find("thresholds"); it != j.end()) {
        cfg.time.slope_threshold = opt_number(*it, "slope_threshold", 1e6);
        if (auto cl = it->find("classify"); cl != it->end()) {
            cfg.classify_o_drop = opt_number(*cl, "o_drop", 0.5);
            cfg.classify_O_factor = opt_number(*cl, "O_factor", 2.0);
        }
    }

    if (auto it = j.find("reductions"); it != j.end()) {
        try {
            cfg.reduction = parse_reduction_kind(need_string(*it, "kind"));
        } catch (const domain_error& e) {
            fail(e.what());
        }
    }

    try {
        cfg.time.validate();
    } catch (const domain_error& e) {
        fail(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config_json(j);
}

}  // namespace dp3
