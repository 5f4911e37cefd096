#pragma once

#include <cstddef>
#include <vector>

namespace dp3 {

using Field = std::vector<double>;

/// Uniform periodic grid on [-L/2, L/2) with power-of-two resolution.
class Grid {
  public:
    Grid(double length, std::size_t n_points);

    double L() const { return length_; }
    std::size_t n() const { return n_; }
    double dx() const { return dx_; }

    double x(std::size_t i) const { return -0.5 * length_ + static_cast<double>(i) * dx_; }
    const Field& xs() const { return xs_; }

    /// Wavenumber of half-complex mode j in [0, n/2]: k_j = 2*pi*j/L.
    double k(std::size_t j) const { return ks_[j]; }
    const Field& ks() const { return ks_; }
    std::size_t n_modes() const { return ks_.size(); }
    double k_max() const { return ks_.back(); }

    /// Signed wavenumbers in FFT order (j and j-n halves), Nyquist positive.
    Field wavenumbers_signed() const;

    /// Map an arbitrary coordinate back into [-L/2, L/2).
    double wrap(double x) const;

    bool operator==(const Grid& other) const { return length_ == other.length_ && n_ == other.n_; }

  private:
    double length_;
    std::size_t n_;
    double dx_;
    Field xs_;
    Field ks_;
};

}  // namespace dp3
