#include "dp3/grid.hpp"

#include <cmath>
#include <numbers>

#include "dp3/errors.hpp"

namespace dp3 {

namespace {
bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}

Grid::Grid(double length, std::size_t n_points) : length_(length), n_(n_points) {
    if (!(length > 0.0) || !std::isfinite(length)) throw domain_error("grid length must be positive and finite");
    if (n_points < 16 || !power_of_two(n_points)) throw domain_error("n_points must be a power of two >= 16");
    dx_ = length_ / static_cast<double>(n_);
    xs_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) xs_[i] = x(i);
    const double dk = 2.0 * std::numbers::pi / length_;
    ks_.resize(n_ / 2 + 1);
    for (std::size_t j = 0; j < ks_.size(); ++j) ks_[j] = dk * static_cast<double>(j);
}

Field Grid::wavenumbers_signed() const {
    const double dk = 2.0 * std::numbers::pi / length_;
    Field out(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const auto sj = static_cast<std::ptrdiff_t>(j);
        const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
        out[j] = dk * static_cast<double>(sj <= half ? sj : sj - static_cast<std::ptrdiff_t>(n_));
    }
    return out;
}

double Grid::wrap(double x) const {
    const double half = 0.5 * length_;
    double y = std::fmod(x + half, length_);
    if (y < 0.0) y += length_;
    return y - half;
}

}  // namespace dp3
