#include "dp3/cli.hpp"

#include <filesystem>
#include <iostream>

#include "dp3/artifacts.hpp"
#include "dp3/config.hpp"
#include "dp3/errors.hpp"

namespace dp3::cli {

namespace fs = std::filesystem;

namespace {

struct Prepared {
    RunConfig cfg;
    Grid grid;
    FieldState initial;
};

Prepared prepare(const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    Grid grid(cfg.L, cfg.n_points);
    FieldState initial = make_initial(cfg.init, grid);
    return {std::move(cfg), std::move(grid), std::move(initial)};
}

RunResult run_configured(const Prepared& p) {
    RunOptions opts;
    opts.sample_every = p.cfg.sample_every;
    opts.sobolev_s = p.cfg.sobolev_s;
    opts.profiles = p.cfg.weights;
    opts.keep_snapshots = true;
    return run(p.initial, p.cfg.time, p.cfg.form, p.grid, opts);
}

int guard(const std::string& what, int (*body)(const std::string&, const std::string&),
          const std::string& config_path, const std::string& out_dir) {
    try {
        return body(config_path, out_dir);
    } catch (const config_error& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return exit_config;
    } catch (const hypothesis_error& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return exit_hypothesis;
    } catch (const numeric_error& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return exit_numeric;
    } catch (const domain_error& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return exit_config;
    } catch (const shape_error& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << what << ": " << e.what() << "\n";
        return 1;
    }
}

int simulate_body(const std::string& config_path, const std::string& out_dir) {
    const Prepared p = prepare(config_path);
    fs::create_directories(out_dir);

    const RunResult rr = run_configured(p);

    std::vector<std::string> outputs = {"series.csv", "blowup_report.json", "snapshots/"};

    std::string extra_name;
    std::vector<double> extra;
    if (p.cfg.reduction) {
        extra_name = "reduction_residual";
        extra.reserve(rr.snapshots.size());
        for (const auto& snap : rr.snapshots)
            extra.push_back(reduction_residual(snap, *p.cfg.reduction, p.grid));
    }

    write_text_file((fs::path(out_dir) / "series.csv").string(),
                    render_series_csv(rr.series, extra_name, extra));
    write_snapshots((fs::path(out_dir) / "snapshots").string(), rr.snapshots, p.grid);
    write_json_file((fs::path(out_dir) / "blowup_report.json").string(), to_json(rr.report));

    if (p.cfg.certify_x0) {
        try {
            const BlowupCertificate cert = certify(p.initial, *p.cfg.certify_x0, p.grid);
            write_json_file((fs::path(out_dir) / "certificate.json").string(), to_json(cert));
            outputs.push_back("certificate.json");
            if (rr.snapshots.size() >= 3) {
                std::vector<CharTrace> traces =
                    trace_probes(rr.snapshots, {*p.cfg.certify_x0}, p.grid);
                const RiccatiCheck rc = riccati_check(traces.front(), cert.a, cert.b1);
                write_text_file((fs::path(out_dir) / "char_trace.csv").string(),
                                render_trace_csv(traces.front(), rc.margin));
                outputs.push_back("char_trace.csv");
            }
        } catch (const hypothesis_error& e) {
            std::cerr << "simulate: certificate skipped: " << e.what() << "\n";
        }
    }

    write_json_file((fs::path(out_dir) / "manifest.json").string(),
                    make_manifest(p.cfg.raw, p.grid, outputs));
    return exit_ok;
}

int certify_body(const std::string& config_path, const std::string& out_dir) {
    const Prepared p = prepare(config_path);
    if (!p.cfg.certify_x0) throw config_error("config: certify.x0 is required for this command");
    fs::create_directories(out_dir);

    const BlowupCertificate cert = certify(p.initial, *p.cfg.certify_x0, p.grid);
    if (cert.boundary_warning)
        std::cerr << "certify: warning: field magnitude at the domain ends exceeds 1e-10; "
                     "W^{1,1} quadratures may not represent line integrals\n";
    write_json_file((fs::path(out_dir) / "certificate.json").string(), to_json(cert));
    write_json_file((fs::path(out_dir) / "manifest.json").string(),
                    make_manifest(p.cfg.raw, p.grid, {"certificate.json"}));
    return exit_ok;
}

int mollify_body(const std::string& config_path, const std::string& out_dir) {
    const Prepared p = prepare(config_path);
    if (p.cfg.mollify_epsilons.size() < 3)
        throw config_error("config: mollify.epsilons needs at least 3 entries");
    fs::create_directories(out_dir);

    LadderTable table;
    try {
        table = epsilon_ladder(p.initial, p.cfg.mollify_epsilons, p.cfg.time, p.grid,
                               p.cfg.sample_every);
    } catch (const domain_error& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    const SizeEstimateReport size_rep =
        size_estimate_check(p.initial, p.cfg.time, p.cfg.mollify_calibration, p.grid, p.cfg.sobolev_s);

    nlohmann::json rep = {{"ladder", to_json(table)}, {"size_estimate", to_json(size_rep)}};
    write_json_file((fs::path(out_dir) / "mollify_report.json").string(), rep);
    write_json_file((fs::path(out_dir) / "manifest.json").string(),
                    make_manifest(p.cfg.raw, p.grid, {"mollify_report.json"}));
    return exit_ok;
}

int persist_body(const std::string& config_path, const std::string& out_dir) {
    const Prepared p = prepare(config_path);
    if (p.cfg.weights.empty()) throw config_error("config: persist requires a non-empty weights list");
    fs::create_directories(out_dir);

    const RunResult rr = run_configured(p);

    std::vector<TrackField> selector;
    if (p.cfg.persist && !p.cfg.persist->selector.empty()) {
        for (const auto& name : p.cfg.persist->selector) {
            try {
                selector.push_back(parse_track_field(name));
            } catch (const domain_error& e) {
                throw config_error(std::string("config: ") + e.what());
            }
        }
    } else {
        selector = {TrackField::rho, TrackField::rho_x, TrackField::u,  TrackField::u_x,
                    TrackField::u_xx, TrackField::v,    TrackField::v_x, TrackField::v_xx};
    }

    nlohmann::json rep;
    nlohmann::json tracked = nlohmann::json::array();
    for (const auto& s : persistence_track(rr.snapshots, p.cfg.weights, selector, p.grid))
        tracked.push_back(to_json(s));
    rep["weighted_series"] = tracked;

    if (p.cfg.persist && !p.cfg.persist->n_ladder.empty()) {
        try {
            const DecayClassification cls =
                rho_decay_classify(rr.snapshots, p.cfg.persist->beta, p.cfg.persist->gamma,
                                   p.cfg.persist->n_ladder, p.grid, p.cfg.classify_o_drop,
                                   p.cfg.classify_O_factor);
            rep["rho_decay"] = to_json(cls);
            std::vector<double> xs = p.cfg.persist->flux_sample_xs;
            if (xs.empty()) xs = p.cfg.persist->n_ladder;
            rep["flux_decay"] =
                to_json(flux_decay_audit(rr.snapshots, p.cfg.persist->beta, p.cfg.persist->gamma, xs, p.grid));
        } catch (const domain_error& e) {
            throw config_error(std::string("config: ") + e.what());
        }
    }

    write_json_file((fs::path(out_dir) / "persistence_report.json").string(), rep);
    write_json_file((fs::path(out_dir) / "manifest.json").string(),
                    make_manifest(p.cfg.raw, p.grid, {"persistence_report.json"}));
    return exit_ok;
}

int check_reductions_body(const std::string& config_path, const std::string& out_dir) {
    const Prepared p = prepare(config_path);
    if (!p.cfg.reduction) throw config_error("config: reductions.kind is required for this command");
    fs::create_directories(out_dir);

    const ReductionKind kind = *p.cfg.reduction;
    nlohmann::json rep;
    rep["kind"] = to_string(kind);

    const RunResult rr = run_configured(p);
    std::vector<double> residuals;
    residuals.reserve(rr.snapshots.size());

    if (kind == ReductionKind::swap) {
        Prepared swapped = p;
        std::swap(swapped.initial.u, swapped.initial.v);
        const RunResult rs = run_configured(swapped);
        const std::size_t m = std::min(rr.snapshots.size(), rs.snapshots.size());
        for (std::size_t s = 0; s < m; ++s) {
            const FieldState& a = rr.snapshots[s];
            const FieldState& b = rs.snapshots[s];
            double worst = 0.0;
            for (std::size_t i = 0; i < p.grid.n(); ++i) {
                worst = std::max(worst, std::fabs(a.u[i] - b.v[i]));
                worst = std::max(worst, std::fabs(a.v[i] - b.u[i]));
                worst = std::max(worst, std::fabs(a.eta[i] - b.eta[i]));
            }
            residuals.push_back(worst);
        }
    } else {
        for (const auto& snap : rr.snapshots)
            residuals.push_back(reduction_residual(snap, kind, p.grid));
    }

    double max_res = 0.0;
    for (double r : residuals) max_res = std::max(max_res, r);
    rep["max_residual"] = max_res;
    rep["residuals"] = residuals;
    rep["t"] = [&] {
        std::vector<double> ts;
        for (const auto& snap : rr.snapshots) ts.push_back(snap.t);
        return ts;
    }();

    write_json_file((fs::path(out_dir) / "reductions_report.json").string(), rep);
    write_json_file((fs::path(out_dir) / "manifest.json").string(),
                    make_manifest(p.cfg.raw, p.grid, {"reductions_report.json"}));
    return exit_ok;
}

}  // namespace

int cmd_simulate(const std::string& c, const std::string& o) { return guard("simulate", simulate_body, c, o); }
int cmd_certify(const std::string& c, const std::string& o) { return guard("certify", certify_body, c, o); }
int cmd_mollify(const std::string& c, const std::string& o) { return guard("mollify", mollify_body, c, o); }
int cmd_persist(const std::string& c, const std::string& o) { return guard("persist", persist_body, c, o); }
int cmd_check_reductions(const std::string& c, const std::string& o) {
    return guard("check-reductions", check_reductions_body, c, o);
}

}  // namespace dp3::cli
