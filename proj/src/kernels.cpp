#include "dp3/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace dp3::kernels {

namespace {
std::atomic<bool> g_parallel{true};

inline bool use_omp(std::size_t n) { return g_parallel.load(std::memory_order_relaxed) && n >= parallel_grain; }

struct ChunkRange {
    std::size_t begin, end;
};

// Fixed decomposition: chunk boundaries depend only on n, never on the thread
// count, so ordered recombination gives one answer everywhere.
inline ChunkRange chunk(std::size_t c, std::size_t n) {
    const std::size_t k = reduction_chunks;
    const std::size_t base = n / k, rem = n % k;
    const std::size_t b = c * base + std::min(c, rem);
    return {b, b + base + (c < rem ? 1 : 0)};
}
}  // namespace

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void mul2_serial(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void mul2_omp(const double* a, const double* b, double* out, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) out[i] = a[i] * b[i];
}
void mul2(const double* a, const double* b, double* out, std::size_t n) {
    use_omp(n) ? mul2_omp(a, b, out, n) : mul2_serial(a, b, out, n);
}

void mul3_serial(const double* a, const double* b, const double* c, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * c[i];
}
void mul3_omp(const double* a, const double* b, const double* c, double* out, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) out[i] = a[i] * b[i] * c[i];
}
void mul3(const double* a, const double* b, const double* c, double* out, std::size_t n) {
    use_omp(n) ? mul3_omp(a, b, c, out, n) : mul3_serial(a, b, c, out, n);
}

void stage_add_serial(const double* base, double alpha, const double* k, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + alpha * k[i];
}
void stage_add_omp(const double* base, double alpha, const double* k, double* out, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) out[i] = base[i] + alpha * k[i];
}
void stage_add(const double* base, double alpha, const double* k, double* out, std::size_t n) {
    use_omp(n) ? stage_add_omp(base, alpha, k, out, n) : stage_add_serial(base, alpha, k, out, n);
}

void rk4_combine_serial(const double* base, double h, const double* k1, const double* k2,
                        const double* k3, const double* k4, double* out, std::size_t n) {
    const double c = h / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = base[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}
void rk4_combine_omp(const double* base, double h, const double* k1, const double* k2,
                     const double* k3, const double* k4, double* out, std::size_t n) {
    const double c = h / 6.0;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        out[i] = base[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}
void rk4_combine(const double* base, double h, const double* k1, const double* k2,
                 const double* k3, const double* k4, double* out, std::size_t n) {
    use_omp(n) ? rk4_combine_omp(base, h, k1, k2, k3, k4, out, n)
               : rk4_combine_serial(base, h, k1, k2, k3, k4, out, n);
}

void apply_symbol_serial(cplx* spec, const double* symbol, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) spec[j] *= symbol[j];
}
void apply_symbol_omp(cplx* spec, const double* symbol, std::size_t m) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(m); ++j) spec[j] *= symbol[j];
}
void apply_symbol(cplx* spec, const double* symbol, std::size_t m) {
    use_omp(m) ? apply_symbol_omp(spec, symbol, m) : apply_symbol_serial(spec, symbol, m);
}

// max/min are exact under any association, so the parallel reductions may use
// plain omp reductions; sums go through the chunked path.

double max_abs_serial(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}
double max_abs_omp(const double* a, std::size_t n) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}
double max_abs(const double* a, std::size_t n) {
    return use_omp(n) ? max_abs_omp(a, n) : max_abs_serial(a, n);
}

double max_abs_mul2_serial(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] * b[i]));
    return m;
}
double max_abs_mul2_omp(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        m = std::max(m, std::fabs(a[i] * b[i]));
    return m;
}
double max_abs_mul2(const double* a, const double* b, std::size_t n) {
    return use_omp(n) ? max_abs_mul2_omp(a, b, n) : max_abs_mul2_serial(a, b, n);
}

double max_abs_weighted_serial(const double* a, const double* w, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]) * w[i]);
    return m;
}
double max_abs_weighted_omp(const double* a, const double* w, std::size_t n) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        m = std::max(m, std::fabs(a[i]) * w[i]);
    return m;
}
double max_abs_weighted(const double* a, const double* w, std::size_t n) {
    return use_omp(n) ? max_abs_weighted_omp(a, w, n) : max_abs_weighted_serial(a, w, n);
}

double min_serial(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i) m = std::min(m, a[i]);
    return m;
}
double min_omp(const double* a, std::size_t n) {
    double m = a[0];
#pragma omp parallel for schedule(static) reduction(min : m)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) m = std::min(m, a[i]);
    return m;
}
double min(const double* a, std::size_t n) {
    return use_omp(n) ? min_omp(a, n) : min_serial(a, n);
}

namespace {

template <class Term>
double chunked_sum_serial(std::size_t n, Term term) {
    double partial[reduction_chunks];
    for (std::size_t c = 0; c < reduction_chunks; ++c) {
        auto [b, e] = chunk(c, n);
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += term(i);
        partial[c] = s;
    }
    double total = 0.0;
    for (std::size_t c = 0; c < reduction_chunks; ++c) total += partial[c];
    return total;
}

template <class Term>
double chunked_sum_omp(std::size_t n, Term term) {
    double partial[reduction_chunks];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(reduction_chunks); ++c) {
        auto [b, e] = chunk(static_cast<std::size_t>(c), n);
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += term(i);
        partial[c] = s;
    }
    double total = 0.0;
    for (std::size_t c = 0; c < reduction_chunks; ++c) total += partial[c];
    return total;
}

}  // namespace

double sum_serial(const double* a, std::size_t n) {
    return chunked_sum_serial(n, [a](std::size_t i) { return a[i]; });
}
double sum_omp(const double* a, std::size_t n) {
    return chunked_sum_omp(n, [a](std::size_t i) { return a[i]; });
}
double sum(const double* a, std::size_t n) {
    return use_omp(n) ? sum_omp(a, n) : sum_serial(a, n);
}

double sum_abs_serial(const double* a, std::size_t n) {
    return chunked_sum_serial(n, [a](std::size_t i) { return std::fabs(a[i]); });
}
double sum_abs_omp(const double* a, std::size_t n) {
    return chunked_sum_omp(n, [a](std::size_t i) { return std::fabs(a[i]); });
}
double sum_abs(const double* a, std::size_t n) {
    return use_omp(n) ? sum_abs_omp(a, n) : sum_abs_serial(a, n);
}

double sum_sq_serial(const double* a, std::size_t n) {
    return chunked_sum_serial(n, [a](std::size_t i) { return a[i] * a[i]; });
}
double sum_sq_omp(const double* a, std::size_t n) {
    return chunked_sum_omp(n, [a](std::size_t i) { return a[i] * a[i]; });
}
double sum_sq(const double* a, std::size_t n) {
    return use_omp(n) ? sum_sq_omp(a, n) : sum_sq_serial(a, n);
}

bool all_finite(const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

}  // namespace dp3::kernels
