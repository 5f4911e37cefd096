#include "dp3/dynamics.hpp"

#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"
#include "dp3/norms.hpp"

namespace dp3 {

RhsForm parse_rhs_form(const std::string& name) {
    if (name == "convolution") return RhsForm::convolution;
    if (name == "flux") return RhsForm::flux;
    if (name == "momentum") return RhsForm::momentum;
    throw domain_error("unknown rhs form: " + name);
}

std::string to_string(RhsForm f) {
    switch (f) {
        case RhsForm::convolution: return "convolution";
        case RhsForm::flux: return "flux";
        case RhsForm::momentum: return "momentum";
    }
    return "?";
}

namespace rhs_detail {

namespace {

void check_term(const Field& f, const char* name) {
    if (!kernels::all_finite(f)) throw numeric_error(name);
}

Spectrum masked_spectrum(const Field& f, const Grid& g) {
    Spectrum s = fft::forward(f);
    dealias_spectrum(s, g);
    return s;
}

Field derivative_of(const Spectrum& spec, const Grid& g, int order) {
    Spectrum s(spec);
    const std::size_t m = s.size();
    for (std::size_t j = 0; j < m; ++j) {
        const std::complex<double> ik(0.0, g.k(j));
        std::complex<double> mult = ik;
        for (int p = 1; p < order; ++p) mult *= ik;
        s[j] *= mult;
    }
    if (order % 2 != 0) s[m - 1] = 0.0;
    return fft::inverse(s, g.n());
}

}  // namespace

Prepared prepare(const FieldState& s, const Grid& g) {
    validate(s, g, "rhs");
    const std::size_t n = g.n();

    Field rho_raw(n);
    for (std::size_t i = 0; i < n; ++i) rho_raw[i] = s.eta[i] + 1.0;

    const Spectrum rho_spec = masked_spectrum(rho_raw, g);
    const Spectrum u_spec = masked_spectrum(s.u, g);
    const Spectrum v_spec = masked_spectrum(s.v, g);

    Prepared p;
    p.rho = fft::inverse(rho_spec, n);
    p.u = fft::inverse(u_spec, n);
    p.v = fft::inverse(v_spec, n);
    p.ux = derivative_of(u_spec, g, 1);
    p.uxx = derivative_of(u_spec, g, 2);
    p.vx = derivative_of(v_spec, g, 1);
    p.vxx = derivative_of(v_spec, g, 2);
    p.eta_x = derivative_of(rho_spec, g, 1);
    p.rho_sq.resize(n);
    kernels::mul2(p.rho.data(), p.rho.data(), p.rho_sq.data(), n);
    return p;
}

Field transport_derivative(const Field& rho, const Field& u, const Field& v, const Grid& g) {
    const std::size_t n = g.n();
    Field prod(n);
    kernels::mul3(rho.data(), u.data(), v.data(), prod.data(), n);
    Spectrum spec = fft::forward(prod);
    const std::size_t m = spec.size();
    for (std::size_t j = 0; j < m; ++j) spec[j] *= std::complex<double>(0.0, -g.k(j));
    spec[m - 1] = 0.0;
    dealias_spectrum(spec, g);
    Field out = fft::inverse(spec, n);
    check_term(out, "transport flux derivative");
    return out;
}

Field conv_argument(const Field& c, const Field& d, const Field& cx, const Field& cxx,
                    const Field& dx, const Field& dxx, const Field& rho_sq, double sign) {
    const std::size_t n = c.size();
    Field arg(n);
    for (std::size_t i = 0; i < n; ++i) {
        arg[i] = 3.0 * c[i] * d[i] * cx[i] + 2.0 * c[i] * dx[i] * cxx[i] +
                 2.0 * cx[i] * cx[i] * dx[i] + c[i] * dxx[i] * cx[i] + sign * rho_sq[i] * c[i];
    }
    return arg;
}

Field nonlocal_term(const Field& c, const Field& d, const Field& cx, const Field& cxx,
                    const Field& dx, const Field& dxx, const Field& rho_sq, double sign,
                    const Grid& g) {
    Field arg = conv_argument(c, d, cx, cxx, dx, dxx, rho_sq, sign);
    check_term(arg, sign > 0 ? "u convolution argument" : "v convolution argument");
    Spectrum spec = fft::forward(arg);
    for (std::size_t j = 0; j < spec.size(); ++j) spec[j] /= 1.0 + g.k(j) * g.k(j);
    dealias_spectrum(spec, g);
    return fft::inverse(spec, g.n());
}

namespace {

// Convolution-form velocity equation for (c, d) = (u, v) with sign = +1 or
// (c, d) = (v, u) with sign = -1. Local and nonlocal parts are combined in
// spectral space so the dealias mask is applied once.
Field velocity_rhs_conv(const Field& c, const Field& d, const Field& cx, const Field& cxx,
                        const Field& dx, const Field& dxx, const Field& rho_sq, double sign,
                        const Grid& g, const char* label) {
    const std::size_t n = g.n();
    Field local(n);
    kernels::mul3(c.data(), d.data(), cx.data(), local.data(), n);
    if (!kernels::all_finite(local)) throw numeric_error(std::string(label) + " local transport term");

    Field arg = conv_argument(c, d, cx, cxx, dx, dxx, rho_sq, sign);
    if (!kernels::all_finite(arg)) throw numeric_error(std::string(label) + " convolution argument");

    Spectrum local_spec = fft::forward(local);
    Spectrum arg_spec = fft::forward(arg);
    for (std::size_t j = 0; j < local_spec.size(); ++j) {
        const double k = g.k(j);
        local_spec[j] = -(local_spec[j] + arg_spec[j] / (1.0 + k * k));
    }
    dealias_spectrum(local_spec, g);
    Field out = fft::inverse(local_spec, n);
    check_term(out, label);
    return out;
}

// Flux-form velocity equation: local transport, a p-convolution with the
// reduced argument, and a p_x-convolution carrying the product derivative.
Field velocity_rhs_flux(const Field& c, const Field& d, const Field& cx, const Field& /*cxx*/,
                        const Field& dx, const Field& dxx, const Field& rho_sq, double sign,
                        const Grid& g, const char* label) {
    const std::size_t n = g.n();
    Field local(n);
    kernels::mul3(c.data(), d.data(), cx.data(), local.data(), n);

    Field parg(n);
    for (std::size_t i = 0; i < n; ++i)
        parg[i] = 3.0 * d[i] * c[i] * cx[i] - c[i] * cx[i] * dxx[i] + sign * rho_sq[i] * c[i];

    Field pxarg(n);
    kernels::mul3(c.data(), dx.data(), cx.data(), pxarg.data(), n);

    if (!kernels::all_finite(local)) throw numeric_error(std::string(label) + " local transport term");
    if (!kernels::all_finite(parg)) throw numeric_error(std::string(label) + " p-convolution argument");
    if (!kernels::all_finite(pxarg)) throw numeric_error(std::string(label) + " p_x-convolution argument");

    Spectrum local_spec = fft::forward(local);
    Spectrum parg_spec = fft::forward(parg);
    Spectrum pxarg_spec = fft::forward(pxarg);
    const std::size_t m = local_spec.size();
    for (std::size_t j = 0; j < m; ++j) {
        const double k = g.k(j);
        const double helm = 1.0 + k * k;
        std::complex<double> px = std::complex<double>(0.0, k / helm) * pxarg_spec[j];
        if (j == m - 1) px = 0.0;
        local_spec[j] = -(local_spec[j] + parg_spec[j] / helm + 2.0 * px);
    }
    dealias_spectrum(local_spec, g);
    Field out = fft::inverse(local_spec, n);
    check_term(out, label);
    return out;
}

}  // namespace

}  // namespace rhs_detail

Derivatives rhs_convolution(const FieldState& s, const Grid& g) {
    using namespace rhs_detail;
    const Prepared p = prepare(s, g);
    Derivatives d;
    d.eta_t = transport_derivative(p.rho, p.u, p.v, g);
    d.u_t = velocity_rhs_conv(p.u, p.v, p.ux, p.uxx, p.vx, p.vxx, p.rho_sq, +1.0, g, "u_t");
    d.v_t = velocity_rhs_conv(p.v, p.u, p.vx, p.vxx, p.ux, p.uxx, p.rho_sq, -1.0, g, "v_t");
    return d;
}

Derivatives rhs_flux(const FieldState& s, const Grid& g) {
    using namespace rhs_detail;
    const Prepared p = prepare(s, g);
    Derivatives d;
    d.eta_t = transport_derivative(p.rho, p.u, p.v, g);
    d.u_t = velocity_rhs_flux(p.u, p.v, p.ux, p.uxx, p.vx, p.vxx, p.rho_sq, +1.0, g, "u_t");
    d.v_t = velocity_rhs_flux(p.v, p.u, p.vx, p.vxx, p.ux, p.uxx, p.rho_sq, -1.0, g, "v_t");
    return d;
}

Derivatives rhs(const FieldState& s, const Grid& g, RhsForm form) {
    switch (form) {
        case RhsForm::convolution: return rhs_convolution(s, g);
        case RhsForm::flux: return rhs_flux(s, g);
        case RhsForm::momentum: break;
    }
    throw domain_error("rhs: momentum form evolves (rho, m, n); use rhs_momentum");
}

double momentum_consistency_residual(const MomentumState& ms, const FieldState& s, const Grid& g) {
    const MomentumState image = to_momentum(s, g);
    double worst = 0.0;
    const Field* pairs[3][2] = {{&image.rho, &ms.rho}, {&image.m, &ms.m}, {&image.n, &ms.n}};
    for (auto& pr : pairs) {
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) {
            const double e = (*pr[0])[i] - (*pr[1])[i];
            diff += e * e;
            ref += (*pr[0])[i] * (*pr[0])[i];
        }
        worst = std::max(worst, std::sqrt(diff) / (1.0 + std::sqrt(ref)));
    }
    return worst;
}

MomentumDerivatives rhs_momentum(const MomentumState& ms, const FieldState& s, const Grid& g) {
    using namespace rhs_detail;
    if (momentum_consistency_residual(ms, s, g) > 1e-8)
        throw consistency_error("rhs_momentum: momentum state inconsistent with field state");

    const std::size_t n = g.n();
    const Prepared p = prepare(s, g);

    const Spectrum m_spec = masked_spectrum(ms.m, g);
    const Spectrum n_spec = masked_spectrum(ms.n, g);
    const Field m = fft::inverse(m_spec, n);
    const Field mn = fft::inverse(n_spec, n);
    const Field mx = derivative_of(m_spec, g, 1);
    const Field nx = derivative_of(n_spec, g, 1);

    MomentumDerivatives out;
    out.rho_t = transport_derivative(p.rho, p.u, p.v, g);

    Field mt(n), nt(n);
    for (std::size_t i = 0; i < n; ++i) {
        mt[i] = -(p.u[i] * p.v[i] * mx[i] + 3.0 * p.v[i] * p.ux[i] * m[i] + p.rho_sq[i] * p.u[i]);
        nt[i] = -(p.u[i] * p.v[i] * nx[i] + 3.0 * p.vx[i] * p.u[i] * mn[i]) + p.rho_sq[i] * p.v[i];
    }
    out.m_t = dealias(mt, g);
    out.n_t = dealias(nt, g);
    if (!kernels::all_finite(out.m_t)) throw numeric_error("m_t");
    if (!kernels::all_finite(out.n_t)) throw numeric_error("n_t");
    return out;
}

ReductionKind parse_reduction_kind(const std::string& name) {
    if (name == "dp") return ReductionKind::dp;
    if (name == "novikov") return ReductionKind::novikov;
    if (name == "swap") return ReductionKind::swap;
    throw domain_error("unknown reduction kind: " + name);
}

std::string to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::dp: return "dp";
        case ReductionKind::novikov: return "novikov";
        case ReductionKind::swap: return "swap";
    }
    return "?";
}

double reduction_residual(const FieldState& s, ReductionKind kind, const Grid& g) {
    validate(s, g, "reduction_residual");
    switch (kind) {
        case ReductionKind::dp: {
            double worst = 0.0;
            for (double x : s.v) worst = std::max(worst, std::fabs(x - 1.0));
            return worst;
        }
        case ReductionKind::novikov: {
            double worst = 0.0;
            for (std::size_t i = 0; i < g.n(); ++i) worst = std::max(worst, std::fabs(s.u[i] - s.v[i]));
            return worst;
        }
        case ReductionKind::swap: {
            FieldState a = s, b = s;
            a.eta.assign(g.n(), -1.0);
            b.eta.assign(g.n(), -1.0);
            std::swap(b.u, b.v);
            const Derivatives ra = rhs_convolution(a, g);
            const Derivatives rb = rhs_convolution(b, g);
            double worst = 0.0;
            for (std::size_t i = 0; i < g.n(); ++i) {
                worst = std::max(worst, std::fabs(ra.u_t[i] - rb.v_t[i]));
                worst = std::max(worst, std::fabs(ra.v_t[i] - rb.u_t[i]));
                worst = std::max(worst, std::fabs(ra.eta_t[i] - rb.eta_t[i]));
            }
            return worst;
        }
    }
    throw domain_error("reduction_residual: bad kind");
}

}  // namespace dp3
