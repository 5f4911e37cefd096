#include "dp3/state.hpp"

#include <cmath>
#include <numbers>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"
#include "dp3/spectral.hpp"

namespace dp3 {

FieldState make_zero_state(const Grid& g) {
    FieldState s;
    s.eta.assign(g.n(), 0.0);
    s.u.assign(g.n(), 0.0);
    s.v.assign(g.n(), 0.0);
    return s;
}

void validate(const FieldState& s, const Grid& g, const char* who) {
    if (s.eta.size() != g.n() || s.u.size() != g.n() || s.v.size() != g.n())
        throw shape_error(std::string(who) + ": state fields do not match grid");
    if (!kernels::all_finite(s.eta)) throw numeric_error(std::string(who) + " eta");
    if (!kernels::all_finite(s.u)) throw numeric_error(std::string(who) + " u");
    if (!kernels::all_finite(s.v)) throw numeric_error(std::string(who) + " v");
}

MomentumState to_momentum(const FieldState& s, const Grid& g) {
    validate(s, g, "to_momentum");
    MomentumState ms;
    ms.t = s.t;
    ms.rho.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) ms.rho[i] = s.eta[i] + 1.0;
    const Field uxx = spectral_derivative(s.u, g, 2);
    const Field vxx = spectral_derivative(s.v, g, 2);
    ms.m.resize(g.n());
    ms.n.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        ms.m[i] = s.u[i] - uxx[i];
        ms.n[i] = s.v[i] - vxx[i];
    }
    return ms;
}

FieldState from_momentum(const MomentumState& ms, const Grid& g) {
    if (ms.rho.size() != g.n() || ms.m.size() != g.n() || ms.n.size() != g.n())
        throw shape_error("from_momentum: state fields do not match grid");
    FieldState s;
    s.t = ms.t;
    s.eta.resize(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) s.eta[i] = ms.rho[i] - 1.0;
    s.u = helmholtz_solve(ms.m, g);
    s.v = helmholtz_solve(ms.n, g);
    validate(s, g, "from_momentum");
    return s;
}

double momentum_roundtrip_residual(const FieldState& s, const Grid& g) {
    const FieldState back = from_momentum(to_momentum(s, g), g);
    double worst = 0.0;
    const Field* pairs[3][2] = {{&s.eta, &back.eta}, {&s.u, &back.u}, {&s.v, &back.v}};
    for (auto& pr : pairs) {
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double d = (*pr[0])[i] - (*pr[1])[i];
            diff += d * d;
            ref += (*pr[0])[i] * (*pr[0])[i];
        }
        worst = std::max(worst, std::sqrt(diff) / (1.0 + std::sqrt(ref)));
    }
    return worst;
}

InitKind parse_init_kind(const std::string& name) {
    if (name == "constant") return InitKind::constant;
    if (name == "gaussian") return InitKind::gaussian;
    if (name == "smooth_peakon") return InitKind::smooth_peakon;
    if (name == "fourier_mode") return InitKind::fourier_mode;
    if (name == "blowup_candidate") return InitKind::blowup_candidate;
    if (name == "algebraic_decay") return InitKind::algebraic_decay;
    if (name == "log_decay") return InitKind::log_decay;
    throw domain_error("unknown initial-data kind: " + name);
}

std::string to_string(InitKind k) {
    switch (k) {
        case InitKind::constant: return "constant";
        case InitKind::gaussian: return "gaussian";
        case InitKind::smooth_peakon: return "smooth_peakon";
        case InitKind::fourier_mode: return "fourier_mode";
        case InitKind::blowup_candidate: return "blowup_candidate";
        case InitKind::algebraic_decay: return "algebraic_decay";
        case InitKind::log_decay: return "log_decay";
    }
    return "?";
}

namespace {

double get(const InitParams& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

bool has_block(const InitParams& p, const std::string& field) {
    const std::string prefix = field + ".";
    for (const auto& [k, v] : p)
        if (k.rfind(prefix, 0) == 0) return true;
    return false;
}

double require_positive(double v, const std::string& what) {
    if (!(v > 0.0)) throw domain_error(what + " must be positive");
    return v;
}

Field profile_field(InitKind kind, const InitParams& p, const std::string& field, const Grid& g) {
    Field out(g.n(), 0.0);
    if (!has_block(p, field)) return out;
    const std::string pre = field + ".";
    const double center = get(p, pre + "center", 0.0);

    switch (kind) {
        case InitKind::constant: {
            const double value = get(p, pre + "value", 0.0);
            out.assign(g.n(), value);
            break;
        }
        case InitKind::gaussian: {
            const double amp = get(p, pre + "amp", 1.0);
            const double width = require_positive(get(p, pre + "width", 1.0), field + " gaussian width");
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double y = (g.x(i) - center) / width;
                out[i] = amp * std::exp(-y * y);
            }
            break;
        }
        case InitKind::smooth_peakon: {
            // c * exp(-sqrt(x^2 + kappa^2)); kappa > 0 keeps the crest smooth
            const double c = get(p, pre + "c", 1.0);
            const double kappa = require_positive(get(p, pre + "kappa", 0.1), field + " peakon kappa");
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double y = g.x(i) - center;
                out[i] = c * std::exp(-std::sqrt(y * y + kappa * kappa));
            }
            break;
        }
        case InitKind::fourier_mode: {
            const double amp = get(p, pre + "amp", 1.0);
            const double kraw = get(p, pre + "k", 1.0);
            const auto mode = static_cast<long>(std::llround(kraw));
            if (mode < 0 || mode > static_cast<long>(g.n() / 2 - 1))
                throw domain_error(field + " fourier mode outside resolved band");
            const double k = 2.0 * std::numbers::pi * static_cast<double>(mode) / g.L();
            for (std::size_t i = 0; i < g.n(); ++i) out[i] = amp * std::cos(k * (g.x(i) - center));
            break;
        }
        case InitKind::algebraic_decay: {
            const double amp = get(p, pre + "amp", 1.0);
            const double expo = require_positive(get(p, pre + "expo", 1.0), field + " decay exponent");
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double y = g.x(i) - center;
                out[i] = amp * std::pow(1.0 + y * y, -0.5 * expo);
            }
            break;
        }
        case InitKind::log_decay: {
            const double amp = get(p, pre + "amp", 1.0);
            const double expo = require_positive(get(p, pre + "expo", 1.0), field + " decay exponent");
            for (std::size_t i = 0; i < g.n(); ++i) {
                const double y = g.x(i) - center;
                out[i] = amp * std::pow(std::log(std::numbers::e + std::sqrt(1.0 + y * y)), -expo);
            }
            break;
        }
        default:
            throw domain_error("profile_field: unsupported kind");
    }
    return out;
}

}  // namespace

FieldState make_initial(InitKind kind, const InitParams& params, const Grid& g) {
    InitSpec spec;
    spec.kind = kind;
    spec.params = params;
    return make_initial(spec, g);
}

FieldState make_initial(const InitSpec& spec, const Grid& g) {
    const InitKind kind = spec.kind;
    const InitParams& params = spec.params;
    if (kind == InitKind::blowup_candidate) {
        const double v0 = require_positive(get(params, "v0", 0.0), "blowup_candidate v0");
        const double slope = get(params, "slope", -1.0);
        const double x0 = get(params, "x0", 0.0);
        const double width = require_positive(get(params, "width", 4.0 * g.dx()), "blowup_candidate width");
        const double v_width = require_positive(get(params, "v_width", g.L() / 10.0), "blowup_candidate v_width");
        const double offset = get(params, "offset", 0.0);

        FieldState s = make_zero_state(g);
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double y = g.x(i) - x0;
            s.u[i] = slope * y * std::exp(-(y * y) / (width * width)) + offset;
            const double z = y / v_width;
            s.v[i] = v0 * std::exp(-z * z);
        }
        validate(s, g, "make_initial");
        return s;
    }

    FieldState s;
    for (const std::string field : {"eta", "u", "v"}) {
        InitKind fk = kind;
        if (auto it = spec.field_kinds.find(field); it != spec.field_kinds.end()) {
            if (it->second == InitKind::blowup_candidate)
                throw domain_error("blowup_candidate cannot be a per-field kind");
            fk = it->second;
        }
        Field prof = profile_field(fk, params, field, g);
        if (field == "eta")
            s.eta = std::move(prof);
        else if (field == "u")
            s.u = std::move(prof);
        else
            s.v = std::move(prof);
    }
    validate(s, g, "make_initial");
    return s;
}

}  // namespace dp3
