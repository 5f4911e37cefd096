#include "dp3/evolution.hpp"

#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"

namespace dp3 {

void StepControl::validate() const {
    if (!(dt_min > 0.0) || !(dt_max > dt_min)) throw domain_error("need 0 < dt_min < dt_max");
    if (!(cfl > 0.0) || cfl > 1.0) throw domain_error("cfl must lie in (0, 1]");
    if (!(slope_threshold > 0.0)) throw domain_error("slope_threshold must be positive");
    if (!(t_end > 0.0)) throw domain_error("t_end must be positive");
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::none: return "none";
        case StopReason::slope_threshold: return "slope_threshold";
        case StopReason::dt_underflow: return "dt_underflow";
        case StopReason::non_finite: return "non_finite";
    }
    return "?";
}

double criterion_value(const FieldState& s, const Grid& g) {
    const double wu = w1inf_norm(s.u, g);
    const double wv = w1inf_norm(s.v, g);
    double rho_inf = 0.0;
    for (double e : s.eta) rho_inf = std::max(rho_inf, std::fabs(e + 1.0));
    return wu * wv + rho_inf * rho_inf;
}

double adaptive_dt(const FieldState& s, const StepControl& c, const Grid& g) {
    validate(s, g, "adaptive_dt");
    const double speed = std::max(1e-12, kernels::max_abs_mul2(s.u.data(), s.v.data(), g.n()));
    return std::min(c.dt_max, c.cfl * g.dx() / speed);
}

namespace {

FieldState stage_state(const FieldState& base, double alpha, const Derivatives& k, const Grid& g) {
    FieldState s;
    s.t = base.t;
    s.eta.resize(g.n());
    s.u.resize(g.n());
    s.v.resize(g.n());
    kernels::stage_add(base.eta.data(), alpha, k.eta_t.data(), s.eta.data(), g.n());
    kernels::stage_add(base.u.data(), alpha, k.u_t.data(), s.u.data(), g.n());
    kernels::stage_add(base.v.data(), alpha, k.v_t.data(), s.v.data(), g.n());
    return s;
}

FieldState rk4_field(const FieldState& s, double dt, RhsForm form, const Grid& g) {
    Derivatives k1, k2, k3, k4;
    try {
        k1 = rhs(s, g, form);
        k2 = rhs(stage_state(s, 0.5 * dt, k1, g), g, form);
        k3 = rhs(stage_state(s, 0.5 * dt, k2, g), g, form);
        k4 = rhs(stage_state(s, dt, k3, g), g, form);
    } catch (const numeric_error& e) {
        throw numeric_error(std::string("rk4 stage: ") + e.where);
    }
    FieldState out;
    out.t = s.t + dt;
    out.eta.resize(g.n());
    out.u.resize(g.n());
    out.v.resize(g.n());
    kernels::rk4_combine(s.eta.data(), dt, k1.eta_t.data(), k2.eta_t.data(), k3.eta_t.data(),
                         k4.eta_t.data(), out.eta.data(), g.n());
    kernels::rk4_combine(s.u.data(), dt, k1.u_t.data(), k2.u_t.data(), k3.u_t.data(), k4.u_t.data(),
                         out.u.data(), g.n());
    kernels::rk4_combine(s.v.data(), dt, k1.v_t.data(), k2.v_t.data(), k3.v_t.data(), k4.v_t.data(),
                         out.v.data(), g.n());
    return out;
}

struct MomentumTriple {
    Field rho, m, n;
};

MomentumTriple stage_momentum(const MomentumTriple& base, double alpha, const MomentumDerivatives& k,
                              const Grid& g) {
    MomentumTriple s;
    s.rho.resize(g.n());
    s.m.resize(g.n());
    s.n.resize(g.n());
    kernels::stage_add(base.rho.data(), alpha, k.rho_t.data(), s.rho.data(), g.n());
    kernels::stage_add(base.m.data(), alpha, k.m_t.data(), s.m.data(), g.n());
    kernels::stage_add(base.n.data(), alpha, k.n_t.data(), s.n.data(), g.n());
    return s;
}

FieldState rk4_momentum_form(const FieldState& s, double dt, const Grid& g) {
    const MomentumState ms0 = to_momentum(s, g);
    MomentumTriple y{ms0.rho, ms0.m, ms0.n};

    auto eval = [&](const MomentumTriple& t) {
        MomentumState ms;
        ms.t = s.t;
        ms.rho = t.rho;
        ms.m = t.m;
        ms.n = t.n;
        const FieldState fs = from_momentum(ms, g);
        return rhs_momentum(ms, fs, g);
    };

    MomentumDerivatives k1, k2, k3, k4;
    try {
        k1 = eval(y);
        k2 = eval(stage_momentum(y, 0.5 * dt, k1, g));
        k3 = eval(stage_momentum(y, 0.5 * dt, k2, g));
        k4 = eval(stage_momentum(y, dt, k3, g));
    } catch (const numeric_error& e) {
        throw numeric_error(std::string("rk4 stage: ") + e.where);
    }
    MomentumTriple out;
    out.rho.resize(g.n());
    out.m.resize(g.n());
    out.n.resize(g.n());
    kernels::rk4_combine(y.rho.data(), dt, k1.rho_t.data(), k2.rho_t.data(), k3.rho_t.data(),
                         k4.rho_t.data(), out.rho.data(), g.n());
    kernels::rk4_combine(y.m.data(), dt, k1.m_t.data(), k2.m_t.data(), k3.m_t.data(), k4.m_t.data(),
                         out.m.data(), g.n());
    kernels::rk4_combine(y.n.data(), dt, k1.n_t.data(), k2.n_t.data(), k3.n_t.data(), k4.n_t.data(),
                         out.n.data(), g.n());
    MomentumState ms;
    ms.t = s.t + dt;
    ms.rho = std::move(out.rho);
    ms.m = std::move(out.m);
    ms.n = std::move(out.n);
    return from_momentum(ms, g);
}

}  // namespace

FieldState rk4_step(const FieldState& s, double dt, RhsForm form, const Grid& g) {
    if (!(dt > 0.0)) throw domain_error("rk4_step: dt must be positive");
    validate(s, g, "rk4_step");
    return form == RhsForm::momentum ? rk4_momentum_form(s, dt, g) : rk4_field(s, dt, form, g);
}

namespace {

DiagnosticsSample sample_state(const FieldState& s, const Grid& g, const RunOptions& opts,
                               const std::vector<Field>& weight_tables) {
    DiagnosticsSample d;
    d.t = s.t;
    d.eta_mass = kernels::sum(s.eta) * g.dx();
    const Field ux = spectral_derivative(s.u, g, 1);
    const Field vx = spectral_derivative(s.v, g, 1);
    d.min_ux = kernels::min(ux);
    d.min_vx = kernels::min(vx);
    d.norms = norm_suite(s, g, opts.sobolev_s);
    const double w1u = d.norms.u.W1inf, w1v = d.norms.v.W1inf;
    double rho_inf = 0.0;
    for (double e : s.eta) rho_inf = std::max(rho_inf, std::fabs(e + 1.0));
    d.criterion_integrand = w1u * w1v + rho_inf * rho_inf;
    d.weighted_sups.reserve(weight_tables.size());
    for (const Field& w : weight_tables) {
        double best = 0.0;
        best = std::max(best, kernels::max_abs_weighted(s.eta.data(), w.data(), g.n()));
        best = std::max(best, kernels::max_abs_weighted(s.u.data(), w.data(), g.n()));
        best = std::max(best, kernels::max_abs_weighted(s.v.data(), w.data(), g.n()));
        d.weighted_sups.push_back(best);
    }
    return d;
}

bool finite_state(const FieldState& s) {
    return kernels::all_finite(s.eta) && kernels::all_finite(s.u) && kernels::all_finite(s.v);
}

double max_slope(const DiagnosticsSample& d) {
    // sup-norm of the derivatives, from the W1inf - Linf split
    const double su = d.norms.u.W1inf - d.norms.u.Linf;
    const double sv = d.norms.v.W1inf - d.norms.v.Linf;
    return std::max(su, sv);
}

}  // namespace

RunResult run(const FieldState& initial, const StepControl& c, RhsForm form, const Grid& g,
              const RunOptions& opts) {
    c.validate();
    validate(initial, g, "run");
    if (opts.sample_every == 0) throw domain_error("sample_every must be >= 1");

    std::vector<Field> weight_tables;
    weight_tables.reserve(opts.profiles.size());
    for (const auto& p : opts.profiles) weight_tables.push_back(weight_samples(p, g));

    RunResult result;
    for (const auto& p : opts.profiles) result.series.profile_labels.push_back(p.label());

    FieldState s = initial;
    DiagnosticsSample d = sample_state(s, g, opts, weight_tables);
    d.criterion_integral = 0.0;
    result.series.samples.push_back(d);
    if (opts.keep_snapshots) result.snapshots.push_back(s);

    auto record = [&](const FieldState& st) {
        DiagnosticsSample nd = sample_state(st, g, opts, weight_tables);
        const DiagnosticsSample& prev = result.series.samples.back();
        nd.criterion_integral = prev.criterion_integral +
                                0.5 * (nd.criterion_integrand + prev.criterion_integrand) * (nd.t - prev.t);
        result.series.samples.push_back(nd);
        if (opts.keep_snapshots) result.snapshots.push_back(st);
    };

    // ensure the stop time is itself a sample time
    auto record_if_new = [&](const FieldState& st) {
        if (result.series.samples.back().t < st.t) record(st);
    };

    BlowupReport& rep = result.report;
    std::size_t step = 0;
    while (s.t < c.t_end) {
        double dt = adaptive_dt(s, c, g);
        if (dt < c.dt_min) {
            record_if_new(s);
            rep.detected = true;
            rep.reason = StopReason::dt_underflow;
            rep.t_detect = s.t;
            break;
        }
        if (s.t + dt > c.t_end) dt = c.t_end - s.t;

        FieldState next;
        try {
            next = rk4_step(s, dt, form, g);
        } catch (const numeric_error&) {
            record_if_new(s);
            rep.detected = true;
            rep.reason = StopReason::non_finite;
            rep.t_detect = s.t;
            break;
        }
        if (!finite_state(next)) {
            record_if_new(s);
            rep.detected = true;
            rep.reason = StopReason::non_finite;
            rep.t_detect = s.t;
            break;
        }

        ++step;
        const bool sample_now = (step % opts.sample_every == 0) || next.t >= c.t_end;
        if (sample_now) {
            record(next);
            if (max_slope(result.series.samples.back()) >= c.slope_threshold) {
                rep.detected = true;
                rep.reason = StopReason::slope_threshold;
                // last stable sample time: the previous sample
                const auto& ss = result.series.samples;
                rep.t_detect = ss.size() >= 2 ? ss[ss.size() - 2].t : ss.back().t;
                s = next;
                break;
            }
        }
        s = next;
    }

    const DiagnosticsSample& last = result.series.samples.back();
    rep.final_min_slope = std::min(last.min_ux, last.min_vx);
    rep.criterion_integral_at_detection = last.criterion_integral;
    return result;
}

}  // namespace dp3
