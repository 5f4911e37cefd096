// Test-only oracles, kept independent of the implementation paths they check:
// finite differences, trapezoid quadrature, the closed-form Riccati solution,
// and a deterministic band-limited random state generator.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dp3/grid.hpp"
#include "dp3/state.hpp"

namespace oracles {

/// Platform-independent uniform in [0, 1): distributions from <random> are
/// implementation-defined, the raw 53-bit draw is not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) { return lo * std::exp(uniform() * std::log(hi / lo)); }

  private:
    std::mt19937_64 gen_;
};

/// Random real trig polynomial with modes up to max_mode and geometrically
/// decaying amplitudes; smooth and exactly band-limited.
inline dp3::Field random_band_limited(const dp3::Grid& g, Rng& rng, std::size_t max_mode,
                                      double amp = 1.0) {
    dp3::Field f(g.n(), 0.0);
    const double base_k = 2.0 * M_PI / g.L();
    for (std::size_t m = 0; m <= max_mode; ++m) {
        const double a = amp * std::pow(0.6, static_cast<double>(m)) * (2.0 * rng.uniform() - 1.0);
        const double b = amp * std::pow(0.6, static_cast<double>(m)) * (2.0 * rng.uniform() - 1.0);
        const double k = base_k * static_cast<double>(m);
        for (std::size_t i = 0; i < g.n(); ++i)
            f[i] += a * std::cos(k * g.x(i)) + (m > 0 ? b * std::sin(k * g.x(i)) : 0.0);
    }
    return f;
}

inline dp3::FieldState random_state(const dp3::Grid& g, Rng& rng, std::size_t max_mode,
                                    double amp = 0.5) {
    dp3::FieldState s;
    s.eta = random_band_limited(g, rng, max_mode, amp);
    s.u = random_band_limited(g, rng, max_mode, amp);
    s.v = random_band_limited(g, rng, max_mode, amp);
    return s;
}

/// Centered finite differences on the periodic grid.
inline dp3::Field fd_derivative(const dp3::Field& f, const dp3::Grid& g, int order) {
    const std::size_t n = f.size();
    dp3::Field out(n);
    const double h = g.dx();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
        if (order == 1)
            out[i] = (f[ip] - f[im]) / (2.0 * h);
        else
            out[i] = (f[ip] - 2.0 * f[i] + f[im]) / (h * h);
    }
    return out;
}

/// Trapezoid quadrature over the periodic grid (equals the rectangle rule).
inline double trapezoid(const dp3::Field& f, const dp3::Grid& g) {
    double acc = 0.0;
    for (double v : f) acc += v;
    return acc * g.dx();
}

inline double trapezoid_fn(const std::function<double(double)>& fn, const dp3::Grid& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) acc += fn(g.x(i));
    return acc * g.dx();
}

/// Exact solution of f' = -a f^2 + b from f(0) = f0 < -sqrt(b/a):
/// f(t) = -c coth(sqrt(ab) (t* - t)) with c = sqrt(b/a); diverges at t*.
struct RiccatiSolution {
    double a, b, f0;
    double c() const { return std::sqrt(b / a); }
    double t_star() const { return std::log((f0 - c()) / (f0 + c())) / (2.0 * std::sqrt(a * b)); }
    double operator()(double t) const {
        const double s = std::sqrt(a * b) * (t_star() - t);
        return -c() / std::tanh(s);
    }
};

inline double rel_l2(const dp3::Field& a, const dp3::Field& b) {
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        ref += a[i] * a[i];
    }
    return std::sqrt(diff) / (1.0 + std::sqrt(ref));
}

inline double max_abs_diff(const dp3::Field& a, const dp3::Field& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    return worst;
}

}  // namespace oracles
