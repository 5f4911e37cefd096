#include "dp3/artifacts.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dp3/errors.hpp"

namespace dp3 {

namespace fs = std::filesystem;

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

namespace {

void append_norms(std::string& row, const NormReport& n) {
    for (double v : {n.L1, n.L2, n.Linf, n.W11, n.W1inf, n.Hs, n.B221}) {
        row += ',';
        row += format17(v);
    }
}

}  // namespace

std::string render_series_csv(const DiagnosticsSeries& series, const std::string& extra_name,
                              const std::vector<double>& extra) {
    std::string out = "t,eta_mass,min_ux,min_vx,criterion_integrand,criterion_integral";
    for (const char* f : {"eta", "u", "v"})
        for (const char* n : {"L1", "L2", "Linf", "W11", "W1inf", "Hs", "B221"})
            out += std::string(",") + f + "_" + n;
    for (const auto& label : series.profile_labels) out += ",wsup_" + label;
    if (!extra_name.empty()) out += "," + extra_name;
    out += '\n';

    for (std::size_t i = 0; i < series.samples.size(); ++i) {
        const DiagnosticsSample& d = series.samples[i];
        std::string row = format17(d.t);
        for (double v : {d.eta_mass, d.min_ux, d.min_vx, d.criterion_integrand, d.criterion_integral}) {
            row += ',';
            row += format17(v);
        }
        append_norms(row, d.norms.eta);
        append_norms(row, d.norms.u);
        append_norms(row, d.norms.v);
        for (double v : d.weighted_sups) {
            row += ',';
            row += format17(v);
        }
        if (!extra_name.empty()) {
            row += ',';
            row += format17(i < extra.size() ? extra[i] : 0.0);
        }
        out += row;
        out += '\n';
    }
    return out;
}

void write_snapshots(const std::string& dir, const std::vector<FieldState>& snapshots, const Grid& g) {
    fs::create_directories(dir);
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%06zu.csv", s);
        std::string body = "x,eta,u,v\n";
        const FieldState& st = snapshots[s];
        for (std::size_t i = 0; i < g.n(); ++i) {
            body += format17(g.x(i));
            body += ',';
            body += format17(st.eta[i]);
            body += ',';
            body += format17(st.u[i]);
            body += ',';
            body += format17(st.v[i]);
            body += '\n';
        }
        write_text_file((fs::path(dir) / name).string(), body);
    }
}

std::string render_trace_csv(const CharTrace& trace, const std::vector<double>& margin) {
    std::string out = "t,q,f,v_at_q,margin\n";
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
        out += format17(trace.t[i]);
        out += ',';
        out += format17(trace.q_wrapped[i]);
        out += ',';
        out += format17(trace.f[i]);
        out += ',';
        out += format17(trace.v_at_q[i]);
        out += ',';
        out += format17(i < margin.size() ? margin[i] : 0.0);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const BlowupReport& r) {
    return {{"detected", r.detected},
            {"t_detect", r.t_detect},
            {"reason", to_string(r.reason)},
            {"final_min_slope", r.final_min_slope},
            {"criterion_integral_at_detection", r.criterion_integral_at_detection}};
}

nlohmann::json to_json(const BlowupCertificate& c) {
    return {{"x0", c.x0},
            {"v0_at_x0", c.v0_at_x0},
            {"B", c.B},
            {"T1", c.T1},
            {"T2", c.T2},
            {"b1", c.b1},
            {"a", c.a},
            {"f0", c.f0},
            {"rhs14", c.rhs14},
            {"cond14_ok", c.cond14_ok},
            {"cond14_indeterminate", c.cond14_indeterminate},
            {"lemma29_ok", c.lemma29_ok},
            {"T0", c.T0},
            {"t0_within_t2", c.t0_within_t2},
            {"t2_within_t1", c.t2_within_t1},
            {"verdict", c.verdict},
            {"boundary_warning", c.boundary_warning},
            {"provenance",
             {{"grid_L", c.grid_L},
              {"grid_n", c.grid_n},
              {"eta_w11", c.eta_w11},
              {"u_w11", c.u_w11},
              {"n_inf", c.n_inf}}}};
}

nlohmann::json to_json(const LadderTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"eps_coarse", r.eps_coarse},
                        {"eps_fine", r.eps_fine},
                        {"sup_distance", r.sup_distance},
                        {"failed", r.failed}});
    return {{"epsilons", t.epsilons},
            {"rows", rows},
            {"ratios", t.ratios},
            {"sample_times", t.sample_times}};
}

nlohmann::json to_json(const SizeEstimateReport& r) {
    return {{"initial_hs", r.initial_hs}, {"window", r.window},
            {"window_capped", r.window_capped}, {"sup_ratio", r.sup_ratio},
            {"bound", r.bound}, {"within_bound", r.within_bound},
            {"calibration", r.calibration}, {"sobolev_s", r.sobolev_s}};
}

nlohmann::json to_json(const WeightedSeries& s) {
    return {{"profile", s.profile_label}, {"t", s.t}, {"sup", s.sup}, {"growth_rate", s.growth_rate}};
}

nlohmann::json to_json(const DecayClassification& c) {
    return {{"classification", to_string(c.cls)}, {"ladder", c.ladder},
            {"s_values", c.s_values}, {"o_drop", c.o_drop}, {"O_factor", c.O_factor}};
}

nlohmann::json to_json(const FluxDecayReport& r) {
    return {{"beta", r.beta},
            {"gamma", r.gamma},
            {"sample_xs", r.sample_xs},
            {"flux_transport", r.flux_transport},
            {"flux_stretch", r.flux_stretch},
            {"envelope_transport", r.envelope_transport},
            {"envelope_stretch", r.envelope_stretch},
            {"balance_residual", r.balance_residual}};
}

nlohmann::json make_manifest(const nlohmann::json& config_echo, const Grid& g,
                             const std::vector<std::string>& outputs) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return {{"tool", "dp3"},
            {"version", "0.1.0"},
            {"created_unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
            {"config", config_echo},
            {"grid", {{"L", g.L()}, {"n_points", g.n()}, {"dx", g.dx()}, {"k_max", g.k_max()}}},
            {"scheme",
             {{"integrator", "rk4"},
              {"step_control", "cfl-capped fixed step"},
              {"dealias", "two-thirds rule"},
              {"transforms", "fftw3 r2c"}}},
            {"outputs", outputs}};
}

}  // namespace dp3
