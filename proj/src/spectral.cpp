#include "dp3/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"

namespace dp3 {

namespace {

void check_input(const Field& f, const Grid& g, const char* who) {
    if (f.size() != g.n()) throw shape_error(std::string(who) + ": field length does not match grid");
    if (!kernels::all_finite(f)) throw numeric_error(std::string(who) + " input");
}

}  // namespace

Field spectral_derivative(const Field& f, const Grid& g, int order) {
    check_input(f, g, "spectral_derivative");
    if (order < 1 || order > 3) throw domain_error("spectral_derivative: order must be 1, 2 or 3");

    Spectrum spec = fft::forward(f);
    const std::size_t m = spec.size();
    const bool odd = (order % 2) != 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::complex<double> ik(0.0, g.k(j));
        std::complex<double> mult = ik;
        for (int p = 1; p < order; ++p) mult *= ik;
        spec[j] *= mult;
    }
    if (odd) spec[m - 1] = 0.0;  // Nyquist has no well-defined odd derivative
    return fft::inverse(spec, g.n());
}

Field helmholtz_solve(const Field& f, const Grid& g) {
    check_input(f, g, "helmholtz_solve");
    Spectrum spec = fft::forward(f);
    for (std::size_t j = 0; j < spec.size(); ++j) spec[j] /= 1.0 + g.k(j) * g.k(j);
    return fft::inverse(spec, g.n());
}

Field conv_p(const Field& f, const Grid& g) { return helmholtz_solve(f, g); }

Field conv_px(const Field& f, const Grid& g) {
    check_input(f, g, "conv_px");
    Spectrum spec = fft::forward(f);
    const std::size_t m = spec.size();
    for (std::size_t j = 0; j < m; ++j) {
        const double k = g.k(j);
        spec[j] *= std::complex<double>(0.0, k / (1.0 + k * k));
    }
    spec[m - 1] = 0.0;
    return fft::inverse(spec, g.n());
}

void dealias_spectrum(Spectrum& spec, const Grid& g) {
    const double cut = (2.0 / 3.0) * g.k_max();
    for (std::size_t j = 0; j < spec.size(); ++j)
        if (g.k(j) > cut) spec[j] = 0.0;
}

Field dealias(const Field& f, const Grid& g) {
    check_input(f, g, "dealias");
    Spectrum spec = fft::forward(f);
    dealias_spectrum(spec, g);
    return fft::inverse(spec, g.n());
}

double trig_eval(const Spectrum& spec, const Grid& g, double x) {
    const std::size_t n = g.n();
    if (spec.size() != n / 2 + 1) throw shape_error("trig_eval: spectrum size mismatch");
    const double theta = x - g.x(0);
    double acc = spec[0].real();
    for (std::size_t j = 1; j + 1 < spec.size(); ++j) {
        const double ph = g.k(j) * theta;
        acc += 2.0 * (spec[j].real() * std::cos(ph) - spec[j].imag() * std::sin(ph));
    }
    acc += spec.back().real() * std::cos(g.k_max() * theta);
    return acc / static_cast<double>(n);
}

double smooth_step_down(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return b / (a + b);
}

double LPPartition::chi_symbol(double xi) {
    // 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, smooth monotone between
    const double a = std::fabs(xi);
    return smooth_step_down((a - 0.75) / (4.0 / 3.0 - 0.75));
}

double LPPartition::phi_symbol(double xi) { return chi_symbol(xi / 2.0) - chi_symbol(xi); }

LPPartition::LPPartition(const Grid& g) {
    const double kmax = g.k_max();
    int jm = 0;
    while (std::ldexp(0.75, jm + 1) < kmax) ++jm;  // smallest J with kmax/2^{J+1} <= 3/4
    j_max_ = jm;

    const std::size_t m = g.n_modes();
    chi_.resize(m);
    for (std::size_t j = 0; j < m; ++j) chi_[j] = chi_symbol(g.k(j));
    phis_.resize(static_cast<std::size_t>(j_max_) + 1);
    for (int jj = 0; jj <= j_max_; ++jj) {
        Field& sym = phis_[static_cast<std::size_t>(jj)];
        sym.resize(m);
        const double scale = std::ldexp(1.0, -jj);
        for (std::size_t j = 0; j < m; ++j) sym[j] = phi_symbol(g.k(j) * scale);
    }
}

const Field& LPPartition::phi(int j) const {
    if (j < 0 || j > j_max_) throw domain_error("LPPartition::phi: block index out of range");
    return phis_[static_cast<std::size_t>(j)];
}

Field lp_block(int j, const Field& f, const LPPartition& partition, const Grid& g) {
    check_input(f, g, "lp_block");
    if (j > partition.j_max()) throw domain_error("lp_block: j exceeds j_max");
    if (j <= -2) return Field(g.n(), 0.0);

    Spectrum spec = fft::forward(f);
    const Field& sym = (j == -1) ? partition.chi() : partition.phi(j);
    kernels::apply_symbol(spec.data(), sym.data(), spec.size());
    return fft::inverse(spec, g.n());
}

double MollifierSpec::symbol_at(double xi) {
    // plateau on [-1,1], smooth monotone decay, identically 0 past |xi| = 2
    return smooth_step_down(std::fabs(xi) - 1.0);
}

MollifierSpec::MollifierSpec(double epsilon, const Grid& g) : eps_(epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw domain_error("mollifier epsilon must be positive");
    symbol_.resize(g.n_modes());
    for (std::size_t j = 0; j < symbol_.size(); ++j) symbol_[j] = symbol_at(eps_ * g.k(j));
}

Field mollify(const Field& f, const MollifierSpec& spec, const Grid& g) {
    check_input(f, g, "mollify");
    if (spec.symbol().size() != g.n_modes()) throw shape_error("mollify: spec built for another grid");
    Spectrum s = fft::forward(f);
    kernels::apply_symbol(s.data(), spec.symbol().data(), s.size());
    return fft::inverse(s, g.n());
}

double l2_norm_spectral(const Spectrum& spec, const Grid& g) {
    const double n = static_cast<double>(g.n());
    double acc = std::norm(spec[0]);
    for (std::size_t j = 1; j + 1 < spec.size(); ++j) acc += 2.0 * std::norm(spec[j]);
    acc += std::norm(spec.back());
    return std::sqrt(acc * g.L() / (n * n));
}

}  // namespace dp3
