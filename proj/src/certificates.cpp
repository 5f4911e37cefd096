#include "dp3/certificates.hpp"

#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/norms.hpp"
#include "dp3/spectral.hpp"

namespace dp3 {

double base_quantity(const FieldState& s0, const Grid& g) {
    validate(s0, g, "base_quantity");
    const Field n0 = [&] {
        const Field vxx = spectral_derivative(s0.v, g, 2);
        Field out(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) out[i] = s0.v[i] - vxx[i];
        return out;
    }();
    return 0.5 * w11_norm(s0.eta, g) + 1.0 + w11_norm(s0.u, g) + linf_norm(n0);
}

std::pair<double, double> times_T1_T2(double B, double v0_at_x0) {
    if (!(B >= 1.0)) throw domain_error("times_T1_T2: B must be >= 1");
    if (!(v0_at_x0 > 0.0)) throw hypothesis_error("times_T1_T2: v0(x0) must be positive");
    const double T1 = 1.0 / (40.0 * B * B);
    const double T2 = v0_at_x0 / (40.0 * B * B * B);
    return {T1, T2};
}

double b1_of(double B, double v0_at_x0) {
    if (!(v0_at_x0 > 0.0)) throw hypothesis_error("b1_of: v0(x0) must be positive");
    const double B3 = B * B * B;
    return B * B3 / (4.0 * v0_at_x0) + 6.0 * B3;
}

Condition14 condition14(double f0, double v0_at_x0, double b1, double T2) {
    if (!(v0_at_x0 > 0.0)) throw hypothesis_error("condition14: v0(x0) must be positive");
    if (!(T2 > 0.0)) throw domain_error("condition14: T2 must be positive");
    Condition14 out;
    const double z = std::sqrt(v0_at_x0 * b1) * T2;
    double ratio;  // (1+E)/(1-E), always < -1
    if (z > 700.0) {
        ratio = -1.0;
        out.indeterminate = true;
    } else {
        const double E = std::exp(z);
        ratio = (1.0 + E) / (1.0 - E);
    }
    out.rhs14 = 2.0 * ratio * std::sqrt(b1 / v0_at_x0);
    out.ok = f0 <= out.rhs14;
    return out;
}

double lemma29_time(double a, double b, double f0) {
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("lemma29_time: a and b must be positive");
    const double c = std::sqrt(b / a);
    if (!(f0 < -c))
        throw threshold_error("lemma29_time: f0 must lie below -sqrt(b/a)", -c);
    return std::log((f0 - c) / (f0 + c)) / (2.0 * std::sqrt(a * b));
}

BlowupCertificate certify(const FieldState& s0, double x0, const Grid& g) {
    validate(s0, g, "certify");

    BlowupCertificate cert;
    cert.x0 = x0;
    cert.grid_L = g.L();
    cert.grid_n = g.n();

    cert.v0_at_x0 = trig_eval(fft::forward(s0.v), g, x0);
    if (!(cert.v0_at_x0 > 0.0))
        throw hypothesis_error("certify: v0(x0) must be strictly positive");

    cert.boundary_warning = boundary_magnitude(s0, g) > 1e-10;

    cert.eta_w11 = w11_norm(s0.eta, g);
    cert.u_w11 = w11_norm(s0.u, g);
    const Field vxx = spectral_derivative(s0.v, g, 2);
    Field n0(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) n0[i] = s0.v[i] - vxx[i];
    cert.n_inf = linf_norm(n0);
    cert.B = 0.5 * cert.eta_w11 + 1.0 + cert.u_w11 + cert.n_inf;

    std::tie(cert.T1, cert.T2) = times_T1_T2(cert.B, cert.v0_at_x0);
    cert.b1 = b1_of(cert.B, cert.v0_at_x0);
    cert.a = cert.v0_at_x0 / 4.0;

    const Field ux = spectral_derivative(s0.u, g, 1);
    cert.f0 = trig_eval(fft::forward(ux), g, x0);

    const Condition14 c14 = condition14(cert.f0, cert.v0_at_x0, cert.b1, cert.T2);
    cert.rhs14 = c14.rhs14;
    cert.cond14_ok = c14.ok;
    cert.cond14_indeterminate = c14.indeterminate;

    const double lemma_threshold = -std::sqrt(cert.b1 / cert.a);
    cert.lemma29_ok = cert.f0 < lemma_threshold;
    if (cert.lemma29_ok) {
        cert.T0 = lemma29_time(cert.a, cert.b1, cert.f0);
        cert.t0_within_t2 = cert.T0 <= cert.T2;
    }
    cert.t2_within_t1 = cert.T2 <= cert.T1;
    cert.verdict = cert.cond14_ok && cert.lemma29_ok && cert.t0_within_t2 && cert.t2_within_t1;
    return cert;
}

}  // namespace dp3
