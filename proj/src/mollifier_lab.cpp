#include "dp3/mollifier_lab.hpp"

#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"
#include "dp3/norms.hpp"

namespace dp3 {

Derivatives rhs_mollified(const FieldState& s, const MollifierSpec& spec, const Grid& g) {
    using namespace rhs_detail;
    const Prepared p = prepare(s, g);
    const std::size_t n = g.n();

    auto J = [&](const Field& f) { return mollify(f, spec, g); };

    const Field jrho = J(p.rho);  // 1 + J(eta)
    const Field ju = J(p.u);
    const Field jv = J(p.v);
    const Field jux = J(p.ux);
    const Field jvx = J(p.vx);
    const Field jetax = J(p.eta_x);

    Derivatives d;

    // eta transport: J[(1+J eta)(J u_x)(J v) + (1+J eta)(J u)(J v_x) + (J eta_x)(J u)(J v)]
    Field tr(n);
    for (std::size_t i = 0; i < n; ++i)
        tr[i] = jrho[i] * jux[i] * jv[i] + jrho[i] * ju[i] * jvx[i] + jetax[i] * ju[i] * jv[i];
    if (!kernels::all_finite(tr)) throw numeric_error("mollified eta transport");
    {
        Spectrum spec_tr = fft::forward(tr);
        kernels::apply_symbol(spec_tr.data(), spec.symbol().data(), spec_tr.size());
        dealias_spectrum(spec_tr, g);
        d.eta_t = fft::inverse(spec_tr, n);
        for (auto& x : d.eta_t) x = -x;
    }

    // velocity transport J[(J c)(J d)(J c_x)] plus the unmollified nonlocal term
    auto velocity = [&](const Field& jc, const Field& jd, const Field& jcx, const Field& c,
                        const Field& dd, const Field& cx, const Field& cxx, const Field& dx,
                        const Field& dxx, double sign, const char* label) {
        Field local(n);
        kernels::mul3(jc.data(), jd.data(), jcx.data(), local.data(), n);
        if (!kernels::all_finite(local)) throw numeric_error(std::string(label) + " mollified transport");

        Field arg = conv_argument(c, dd, cx, cxx, dx, dxx, p.rho_sq, sign);
        if (!kernels::all_finite(arg)) throw numeric_error(std::string(label) + " convolution argument");

        Spectrum local_spec = fft::forward(local);
        Spectrum arg_spec = fft::forward(arg);
        for (std::size_t j = 0; j < local_spec.size(); ++j) {
            const double k = g.k(j);
            local_spec[j] = -(spec.symbol()[j] * local_spec[j] + arg_spec[j] / (1.0 + k * k));
        }
        dealias_spectrum(local_spec, g);
        Field out = fft::inverse(local_spec, n);
        if (!kernels::all_finite(out)) throw numeric_error(label);
        return out;
    };

    d.u_t = velocity(ju, jv, jux, p.u, p.v, p.ux, p.uxx, p.vx, p.vxx, +1.0, "u_t");
    d.v_t = velocity(jv, ju, jvx, p.v, p.u, p.vx, p.vxx, p.ux, p.uxx, -1.0, "v_t");
    return d;
}

namespace {

FieldState mollified_rk4_step(const FieldState& s, double dt, const MollifierSpec& spec, const Grid& g) {
    auto stage = [&](const FieldState& base, double alpha, const Derivatives& k) {
        FieldState out;
        out.t = base.t;
        out.eta.resize(g.n());
        out.u.resize(g.n());
        out.v.resize(g.n());
        kernels::stage_add(base.eta.data(), alpha, k.eta_t.data(), out.eta.data(), g.n());
        kernels::stage_add(base.u.data(), alpha, k.u_t.data(), out.u.data(), g.n());
        kernels::stage_add(base.v.data(), alpha, k.v_t.data(), out.v.data(), g.n());
        return out;
    };
    const Derivatives k1 = rhs_mollified(s, spec, g);
    const Derivatives k2 = rhs_mollified(stage(s, 0.5 * dt, k1), spec, g);
    const Derivatives k3 = rhs_mollified(stage(s, 0.5 * dt, k2), spec, g);
    const Derivatives k4 = rhs_mollified(stage(s, dt, k3), spec, g);
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

struct MemberRun {
    std::vector<FieldState> snapshots;
    bool failed = false;
};

MemberRun run_member(const FieldState& initial, double eps, double dt, double t_end,
                     std::size_t sample_every, const Grid& g) {
    MemberRun mr;
    const MollifierSpec spec(eps, g);
    FieldState s = initial;
    mr.snapshots.push_back(s);
    std::size_t step = 0;
    try {
        while (s.t < t_end - 0.5 * dt) {
            s = mollified_rk4_step(s, dt, spec, g);
            ++step;
            if (!kernels::all_finite(s.u) || !kernels::all_finite(s.v) || !kernels::all_finite(s.eta))
                throw numeric_error("mollified run state");
            if (step % sample_every == 0) mr.snapshots.push_back(s);
        }
    } catch (const numeric_error&) {
        mr.failed = true;
    }
    return mr;
}

double rel_l2_distance(const FieldState& a, const FieldState& b, const Grid& g) {
    double diff = 0.0, ref = 0.0;
    const Field* pairs[3][2] = {{&a.eta, &b.eta}, {&a.u, &b.u}, {&a.v, &b.v}};
    for (auto& pr : pairs) {
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double e = (*pr[0])[i] - (*pr[1])[i];
            diff += e * e;
            ref += (*pr[0])[i] * (*pr[0])[i];
        }
    }
    return std::sqrt(diff * g.dx()) / (1.0 + std::sqrt(ref * g.dx()));
}

}  // namespace

LadderTable epsilon_ladder(const FieldState& initial, const std::vector<double>& epsilons,
                           const StepControl& c, const Grid& g, std::size_t sample_every) {
    c.validate();
    validate(initial, g, "epsilon_ladder");
    if (epsilons.size() < 3) throw domain_error("epsilon_ladder: need at least 3 epsilons");
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i)
        if (!(epsilons[i] > epsilons[i + 1]) || !(epsilons[i + 1] > 0.0))
            throw domain_error("epsilon_ladder: epsilons must be strictly decreasing and positive");
    if (sample_every == 0) throw domain_error("epsilon_ladder: sample_every must be >= 1");

    // one shared fixed step so every member samples the same times
    const double dt = adaptive_dt(initial, c, g);

    LadderTable table;
    table.epsilons = epsilons;

    std::vector<MemberRun> members(epsilons.size());
    // members are independent; snapshots and plans tolerate concurrent use
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(epsilons.size()); ++i)
        members[static_cast<std::size_t>(i)] =
            run_member(initial, epsilons[static_cast<std::size_t>(i)], dt, c.t_end, sample_every, g);

    for (const auto& s : members.front().snapshots) table.sample_times.push_back(s.t);

    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
        LadderRow row;
        row.eps_coarse = epsilons[i];
        row.eps_fine = epsilons[i + 1];
        const MemberRun& a = members[i];
        const MemberRun& b = members[i + 1];
        if (a.failed || b.failed || a.snapshots.size() != b.snapshots.size()) {
            row.failed = true;
        } else {
            for (std::size_t s = 0; s < a.snapshots.size(); ++s)
                row.sup_distance = std::max(row.sup_distance,
                                            rel_l2_distance(a.snapshots[s], b.snapshots[s], g));
        }
        table.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
        const double denom = table.rows[i].sup_distance;
        table.ratios.push_back(denom > 0.0 ? table.rows[i + 1].sup_distance / denom : 0.0);
    }
    return table;
}

SizeEstimateReport size_estimate_check(const FieldState& initial, const StepControl& c,
                                       double calibration, const Grid& g, double sobolev_s) {
    if (!(calibration > 0.0)) throw domain_error("size_estimate_check: calibration must be positive");
    validate(initial, g, "size_estimate_check");

    SizeEstimateReport rep;
    rep.calibration = calibration;
    rep.sobolev_s = sobolev_s;
    rep.bound = std::sqrt(2.0);

    auto triple_hs = [&](const FieldState& s) {
        return hs_norm(s.eta, g, sobolev_s) + hs_norm(s.u, g, sobolev_s) + hs_norm(s.v, g, sobolev_s);
    };
    rep.initial_hs = triple_hs(initial);

    double window = c.t_end;
    if (rep.initial_hs > 0.0)
        window = 1.0 / (4.0 * calibration * rep.initial_hs * rep.initial_hs);
    if (window >= c.t_end) {
        window = c.t_end;
        rep.window_capped = true;
    }
    rep.window = window;

    StepControl cc = c;
    cc.t_end = window;
    RunOptions opts;
    opts.keep_snapshots = true;
    opts.sobolev_s = sobolev_s;
    const RunResult rr = run(initial, cc, RhsForm::convolution, g, opts);

    double sup_ratio = 0.0;
    if (rep.initial_hs > 0.0) {
        for (const auto& snap : rr.snapshots)
            sup_ratio = std::max(sup_ratio, triple_hs(snap) / rep.initial_hs);
    }
    rep.sup_ratio = sup_ratio;
    rep.within_bound = sup_ratio <= rep.bound;
    return rep;
}

}  // namespace dp3
