#pragma once

#include <complex>
#include <vector>

#include "dp3/fft.hpp"
#include "dp3/grid.hpp"

namespace dp3 {

using Spectrum = fft::Spectrum;

/// Fourier-collocation derivative of order 1, 2 or 3; exact on the resolved
/// band. Odd orders zero the Nyquist mode.
Field spectral_derivative(const Field& f, const Grid& g, int order);

/// (1 - d_xx)^{-1} f via the multiplier 1/(1+k^2) (Green-function convolution).
Field helmholtz_solve(const Field& f, const Grid& g);

/// Convolution with the Green kernel p: identical to helmholtz_solve.
Field conv_p(const Field& f, const Grid& g);

/// Convolution with p_x: multiplier ik/(1+k^2).
Field conv_px(const Field& f, const Grid& g);

/// Zero every mode with |k| > (2/3) k_max (dealiasing for product terms).
Field dealias(const Field& f, const Grid& g);
void dealias_spectrum(Spectrum& spec, const Grid& g);

/// Trigonometric interpolation of a grid field at an arbitrary coordinate.
double trig_eval(const Spectrum& spec, const Grid& g, double x);

/// Smooth transition step: 1 for t <= 0, 0 for t >= 1 (exp(-1/t) construction).
double smooth_step_down(double t);

/// Dyadic Littlewood-Paley partition sampled on the grid's frequencies.
/// chi is 1 on |xi| <= 3/4 and supported in |xi| <= 4/3; phi(xi) = chi(xi/2) - chi(xi)
/// lives on 3/4 <= |xi| <= 8/3, and chi + sum_{j=0..j_max} phi(2^{-j} xi) = 1 on
/// the resolved band.
class LPPartition {
  public:
    explicit LPPartition(const Grid& g);

    int j_max() const { return j_max_; }
    const Field& chi() const { return chi_; }
    const Field& phi(int j) const;  // symbol of block j in [0, j_max]

    static double chi_symbol(double xi);
    static double phi_symbol(double xi);

  private:
    int j_max_;
    Field chi_;
    std::vector<Field> phis_;
};

/// Dyadic block Delta_j f: j = -1 applies chi(D), 0 <= j <= j_max applies
/// phi(2^{-j} D); j <= -2 is the zero field by convention.
Field lp_block(int j, const Field& f, const LPPartition& partition, const Grid& g);

/// Friedrichs mollifier symbol: 1 on |xi| <= 1, smooth monotone decay, exactly
/// 0 by |xi| = 2; the operator multiplies mode k by symbol(eps * k).
class MollifierSpec {
  public:
    MollifierSpec(double epsilon, const Grid& g);

    double epsilon() const { return eps_; }
    const Field& symbol() const { return symbol_; }  // sampled at eps*k_j

    static double symbol_at(double xi);

  private:
    double eps_;
    Field symbol_;
};

/// J_eps f: multiply the spectrum by the mollifier symbol.
Field mollify(const Field& f, const MollifierSpec& spec, const Grid& g);

/// L2 norm (physical measure) computed in frequency space via Parseval.
double l2_norm_spectral(const Spectrum& spec, const Grid& g);

}  // namespace dp3
