#include "dp3/norms.hpp"

#include <cmath>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"

namespace dp3 {

double l1_norm(const Field& f, const Grid& g) { return kernels::sum_abs(f) * g.dx(); }

double l2_norm(const Field& f, const Grid& g) { return std::sqrt(kernels::sum_sq(f) * g.dx()); }

double linf_norm(const Field& f) { return kernels::max_abs(f); }

double w11_norm(const Field& f, const Grid& g) {
    const Field fx = spectral_derivative(f, g, 1);
    return l1_norm(f, g) + l1_norm(fx, g);
}

double w1inf_norm(const Field& f, const Grid& g) {
    const Field fx = spectral_derivative(f, g, 1);
    return linf_norm(f) + linf_norm(fx);
}

double hs_norm(const Field& f, const Grid& g, double s) {
    // Normalized so s = 0 reproduces the physical-measure L2 norm.
    const Spectrum spec = fft::forward(f);
    const double n = static_cast<double>(g.n());
    double acc = std::norm(spec[0]);
    for (std::size_t j = 1; j + 1 < spec.size(); ++j) {
        const double k = g.k(j);
        acc += 2.0 * std::pow(1.0 + k * k, s) * std::norm(spec[j]);
    }
    const double kN = g.k_max();
    acc += std::pow(1.0 + kN * kN, s) * std::norm(spec.back());
    return std::sqrt(acc * g.L() / (n * n));
}

double besov_b221_norm(const Field& f, const LPPartition& partition, const Grid& g) {
    double acc = 0.0;
    for (int j = -1; j <= partition.j_max(); ++j) {
        const Field block = lp_block(j, f, partition, g);
        acc += std::ldexp(1.0, 2 * j) * l2_norm(block, g);
    }
    return acc;
}

NormReport norm_report(const Field& f, const Grid& g, double sobolev_s, const LPPartition& partition) {
    NormReport r;
    r.L1 = l1_norm(f, g);
    r.L2 = l2_norm(f, g);
    r.Linf = linf_norm(f);
    const Field fx = spectral_derivative(f, g, 1);
    r.W11 = r.L1 + l1_norm(fx, g);
    r.W1inf = r.Linf + linf_norm(fx);
    r.Hs = hs_norm(f, g, sobolev_s);
    r.B221 = besov_b221_norm(f, partition, g);
    return r;
}

StateNorms norm_suite(const FieldState& s, const Grid& g, double sobolev_s) {
    validate(s, g, "norm_suite");
    const LPPartition partition(g);
    StateNorms out;
    out.eta = norm_report(s.eta, g, sobolev_s, partition);
    out.u = norm_report(s.u, g, sobolev_s, partition);
    out.v = norm_report(s.v, g, sobolev_s, partition);
    return out;
}

double boundary_magnitude(const Field& f, const Grid&) {
    // endpoints of [-L/2, L/2): first sample and the wrap-around neighbour
    return std::max(std::fabs(f.front()), std::fabs(f.back()));
}

double boundary_magnitude(const FieldState& s, const Grid& g) {
    return std::max({boundary_magnitude(s.eta, g), boundary_magnitude(s.u, g), boundary_magnitude(s.v, g)});
}

}  // namespace dp3
