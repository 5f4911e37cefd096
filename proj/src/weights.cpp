#include "dp3/weights.hpp"

#include <cmath>
#include <numbers>

#include "dp3/errors.hpp"
#include "dp3/kernels.hpp"

namespace dp3 {

WeightKind parse_weight_kind(const std::string& name) {
    if (name == "log") return WeightKind::log;
    if (name == "algebraic") return WeightKind::algebraic;
    throw domain_error("unknown weight kind: " + name);
}

std::string to_string(WeightKind k) { return k == WeightKind::log ? "log" : "algebraic"; }

WeightProfile::WeightProfile(WeightKind kind, double beta, double cap)
    : kind(kind), beta(beta), cap(cap) {
    if (!(beta > 0.0)) throw domain_error("weight beta must be positive");
    if (!(cap > 0.0)) throw domain_error("weight cap N must be positive");
}

double WeightProfile::contraction() const {
    const double e = std::numbers::e;
    if (kind == WeightKind::log) return beta / ((e + beta) * std::log(e + beta));
    return beta / (1.0 + beta);
}

double WeightProfile::operator()(double x) const {
    const double r = std::min(std::fabs(x), cap);
    if (kind == WeightKind::log) return std::pow(std::log(std::numbers::e + beta + r), beta);
    return std::pow(1.0 + beta + r, beta);
}

std::string WeightProfile::label() const {
    std::string base = to_string(kind);
    char buf[64];
    std::snprintf(buf, sizeof buf, "_b%g_N%g", beta, cap);
    return base + buf;
}

double weight_eval(const WeightProfile& p, double x) { return p(x); }

Field weight_samples(const WeightProfile& p, const Grid& g) {
    Field w(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) w[i] = p(g.x(i));
    return w;
}

double omega_bound(const WeightProfile& p, const Grid& g) {
    if (!(p.cap < 0.5 * g.L())) throw domain_error("omega_bound: cap N must satisfy N < L/2");
    const std::size_t n = g.n();
    const Field w = weight_samples(p, g);
    Field inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = 1.0 / w[i];

    const double half = 0.5 * g.L();
    Field sup_per_row(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        double acc = 0.0;
        const double xi = g.x(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::fabs(xi - g.x(j));
            if (d > half) d = g.L() - d;
            acc += std::exp(-d) * inv[j];
        }
        sup_per_row[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * acc * g.dx();
    }
    return kernels::max_abs(sup_per_row);
}

double weighted_sup(const std::vector<const Field*>& fields, const WeightProfile& p, const Grid& g) {
    const Field w = weight_samples(p, g);
    double best = 0.0;
    for (const Field* f : fields) {
        if (f->size() != g.n()) throw shape_error("weighted_sup: field length mismatch");
        best = std::max(best, kernels::max_abs_weighted(f->data(), w.data(), g.n()));
    }
    return best;
}

double weighted_sup(const Field& f, const WeightProfile& p, const Grid& g) {
    return weighted_sup(std::vector<const Field*>{&f}, p, g);
}

}  // namespace dp3
