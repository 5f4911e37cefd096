#include "dp3/persistence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"
#include "dp3/spectral.hpp"

namespace dp3 {

TrackField parse_track_field(const std::string& name) {
    if (name == "rho") return TrackField::rho;
    if (name == "rho_x") return TrackField::rho_x;
    if (name == "u") return TrackField::u;
    if (name == "u_x") return TrackField::u_x;
    if (name == "u_xx") return TrackField::u_xx;
    if (name == "v") return TrackField::v;
    if (name == "v_x") return TrackField::v_x;
    if (name == "v_xx") return TrackField::v_xx;
    throw domain_error("unknown track field: " + name);
}

std::string to_string(TrackField f) {
    switch (f) {
        case TrackField::rho: return "rho";
        case TrackField::rho_x: return "rho_x";
        case TrackField::u: return "u";
        case TrackField::u_x: return "u_x";
        case TrackField::u_xx: return "u_xx";
        case TrackField::v: return "v";
        case TrackField::v_x: return "v_x";
        case TrackField::v_xx: return "v_xx";
    }
    return "?";
}

std::string to_string(DecayClass c) {
    switch (c) {
        case DecayClass::little_o: return "little_o";
        case DecayClass::big_O: return "big_O";
        case DecayClass::unbounded: return "unbounded";
    }
    return "?";
}

namespace {

Field tracked_field(const FieldState& s, TrackField f, const Grid& g) {
    switch (f) {
        case TrackField::rho: return s.eta;  // decaying part of rho
        case TrackField::rho_x: return spectral_derivative(s.eta, g, 1);
        case TrackField::u: return s.u;
        case TrackField::u_x: return spectral_derivative(s.u, g, 1);
        case TrackField::u_xx: return spectral_derivative(s.u, g, 2);
        case TrackField::v: return s.v;
        case TrackField::v_x: return spectral_derivative(s.v, g, 1);
        case TrackField::v_xx: return spectral_derivative(s.v, g, 2);
    }
    throw domain_error("tracked_field: bad selector");
}

}  // namespace

std::vector<WeightedSeries> persistence_track(const std::vector<FieldState>& snapshots,
                                              const std::vector<WeightProfile>& profiles,
                                              const std::vector<TrackField>& selector,
                                              const Grid& g) {
    if (snapshots.empty()) throw domain_error("persistence_track: no snapshots");
    if (selector.empty()) throw domain_error("persistence_track: empty field selector");

    std::vector<Field> tables;
    tables.reserve(profiles.size());
    for (const auto& p : profiles) tables.push_back(weight_samples(p, g));

    std::vector<WeightedSeries> out(profiles.size());
    for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
        out[pi].profile_label = profiles[pi].label();
        out[pi].t.reserve(snapshots.size());
        out[pi].sup.reserve(snapshots.size());
    }

    for (const auto& snap : snapshots) {
        std::vector<Field> fields;
        fields.reserve(selector.size());
        for (TrackField f : selector) fields.push_back(tracked_field(snap, f, g));
        for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
            double best = 0.0;
            for (const Field& f : fields)
                best = std::max(best, kernels::max_abs_weighted(f.data(), tables[pi].data(), g.n()));
            out[pi].t.push_back(snap.t);
            out[pi].sup.push_back(best);
        }
    }

    for (auto& series : out) {
        const double s0 = series.sup.front();
        double kappa = 0.0;
        if (s0 > 0.0) {
            for (std::size_t i = 1; i < series.t.size(); ++i) {
                const double dt = series.t[i] - series.t.front();
                if (dt > 0.0 && series.sup[i] > s0)
                    kappa = std::max(kappa, std::log(series.sup[i] / s0) / dt);
            }
        }
        series.growth_rate = kappa;
    }
    return out;
}

DecayClassification rho_decay_classify(const std::vector<FieldState>& snapshots, double beta,
                                       double gamma, const std::vector<double>& n_ladder,
                                       const Grid& g, double o_drop, double O_factor) {
    if (snapshots.empty()) throw domain_error("rho_decay_classify: no snapshots");
    if (!(beta > 0.0)) throw domain_error("rho_decay_classify: beta must be positive");
    if (!(gamma > beta / 3.0) || !(gamma < beta))
        throw domain_error("rho_decay_classify: gamma must lie in (beta/3, beta)");
    if (n_ladder.size() < 2) throw domain_error("rho_decay_classify: ladder needs >= 2 entries");
    for (std::size_t i = 0; i + 1 < n_ladder.size(); ++i)
        if (!(n_ladder[i] < n_ladder[i + 1])) throw domain_error("rho_decay_classify: ladder must increase");
    if (!(n_ladder.back() <= 0.35 * g.L()))
        throw domain_error("rho_decay_classify: ladder exceeds the periodization-safe region");

    DecayClassification out;
    out.ladder = n_ladder;
    out.o_drop = o_drop;
    out.O_factor = O_factor;

    Field weight(g.n());
    for (std::size_t i = 0; i < g.n(); ++i)
        weight[i] = std::pow(std::log(std::numbers::e + beta + std::fabs(g.x(i))), beta);

    for (double N : n_ladder) {
        double s = 0.0;
        for (const auto& snap : snapshots)
            for (std::size_t i = 0; i < g.n(); ++i)
                if (std::fabs(g.x(i)) >= N) s = std::max(s, std::fabs(snap.eta[i]) * weight[i]);
        out.s_values.push_back(s);
    }

    const double s_first = out.s_values.front();
    const double s_last = out.s_values.back();
    if (s_first <= 0.0) {
        out.cls = DecayClass::little_o;
        return out;
    }
    const bool bounded =
        std::all_of(out.s_values.begin(), out.s_values.end(),
                    [&](double s) { return s <= O_factor * s_first; });
    if (s_last <= (1.0 - o_drop) * s_first)
        out.cls = DecayClass::little_o;
    else if (bounded)
        out.cls = DecayClass::big_O;
    else
        out.cls = DecayClass::unbounded;
    return out;
}

FluxDecayReport flux_decay_audit(const std::vector<FieldState>& snapshots, double beta, double gamma,
                                 const std::vector<double>& sample_xs, const Grid& g) {
    if (snapshots.size() < 2) throw domain_error("flux_decay_audit: need >= 2 snapshots");
    if (!(beta > 0.0) || !(gamma > 0.0)) throw domain_error("flux_decay_audit: beta, gamma must be positive");

    const std::size_t n = g.n();
    Field I1(n, 0.0), I2(n, 0.0);
    Field prev1(n, 0.0), prev2(n, 0.0);

    auto integrands = [&](const FieldState& s, Field& f1, Field& f2) {
        const Field ex = spectral_derivative(s.eta, g, 1);
        const Field ux = spectral_derivative(s.u, g, 1);
        const Field vx = spectral_derivative(s.v, g, 1);
        for (std::size_t i = 0; i < n; ++i) {
            f1[i] = ex[i] * s.u[i] * s.v[i];
            f2[i] = (s.eta[i] + 1.0) * (ux[i] * s.v[i] + s.u[i] * vx[i]);
        }
    };

    integrands(snapshots.front(), prev1, prev2);
    Field cur1(n), cur2(n);
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        integrands(snapshots[k], cur1, cur2);
        const double h = 0.5 * (snapshots[k].t - snapshots[k - 1].t);
        for (std::size_t i = 0; i < n; ++i) {
            I1[i] += h * (cur1[i] + prev1[i]);
            I2[i] += h * (cur2[i] + prev2[i]);
        }
        prev1.swap(cur1);
        prev2.swap(cur2);
    }

    FluxDecayReport rep;
    rep.beta = beta;
    rep.gamma = gamma;
    rep.sample_xs = sample_xs;

    auto at_abs_x = [&](const Field& f, double x) {
        // worst of the two symmetric points, nearest grid sample
        auto idx = [&](double xx) {
            const double pos = (g.wrap(xx) - g.x(0)) / g.dx();
            std::size_t i = static_cast<std::size_t>(std::llround(pos));
            return i >= n ? 0 : i;
        };
        return std::max(std::fabs(f[idx(x)]), std::fabs(f[idx(-x)]));
    };

    for (double x : sample_xs) {
        const double f1 = at_abs_x(I1, x);
        const double f2 = at_abs_x(I2, x);
        const double env = std::pow(std::log(std::numbers::e + beta + std::fabs(x)), 3.0 * gamma);
        rep.flux_transport.push_back(f1);
        rep.flux_stretch.push_back(f2);
        rep.envelope_transport.push_back(f1 * env);
        rep.envelope_stretch.push_back(f2 * env);
    }

    double worst = 0.0;
    const FieldState& first = snapshots.front();
    const FieldState& last = snapshots.back();
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::fabs(last.eta[i] - first.eta[i] + I1[i] + I2[i]));
    rep.balance_residual = worst;
    return rep;
}

}  // namespace dp3
