#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Data-parallel inner loops used throughout the solver. Every kernel exists in
// a serial reference version and an OpenMP version; the unsuffixed entry point
// dispatches at runtime. Reductions use a fixed chunk decomposition combined
// in chunk order, so serial and parallel results are bitwise identical and
// independent of the thread count.

namespace dp3::kernels {

using cplx = std::complex<double>;

void set_parallel(bool on);
bool parallel_enabled();

// Below this many elements the dispatcher always runs the serial path.
inline constexpr std::size_t parallel_grain = 4096;
inline constexpr std::size_t reduction_chunks = 64;

// out[i] = a[i] * b[i]
void mul2_serial(const double* a, const double* b, double* out, std::size_t n);
void mul2_omp(const double* a, const double* b, double* out, std::size_t n);
void mul2(const double* a, const double* b, double* out, std::size_t n);

// out[i] = a[i] * b[i] * c[i]
void mul3_serial(const double* a, const double* b, const double* c, double* out, std::size_t n);
void mul3_omp(const double* a, const double* b, const double* c, double* out, std::size_t n);
void mul3(const double* a, const double* b, const double* c, double* out, std::size_t n);

// out[i] = base[i] + alpha * k[i]   (RK4 stage states)
void stage_add_serial(const double* base, double alpha, const double* k, double* out, std::size_t n);
void stage_add_omp(const double* base, double alpha, const double* k, double* out, std::size_t n);
void stage_add(const double* base, double alpha, const double* k, double* out, std::size_t n);

// out[i] = base[i] + h/6 * (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
void rk4_combine_serial(const double* base, double h, const double* k1, const double* k2,
                        const double* k3, const double* k4, double* out, std::size_t n);
void rk4_combine_omp(const double* base, double h, const double* k1, const double* k2,
                     const double* k3, const double* k4, double* out, std::size_t n);
void rk4_combine(const double* base, double h, const double* k1, const double* k2,
                 const double* k3, const double* k4, double* out, std::size_t n);

// spec[j] *= symbol[j]  (real multiplier on a half-complex spectrum)
void apply_symbol_serial(cplx* spec, const double* symbol, std::size_t m);
void apply_symbol_omp(cplx* spec, const double* symbol, std::size_t m);
void apply_symbol(cplx* spec, const double* symbol, std::size_t m);

// max_i |a[i]|
double max_abs_serial(const double* a, std::size_t n);
double max_abs_omp(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);

// max_i |a[i] * b[i]|
double max_abs_mul2_serial(const double* a, const double* b, std::size_t n);
double max_abs_mul2_omp(const double* a, const double* b, std::size_t n);
double max_abs_mul2(const double* a, const double* b, std::size_t n);

// max_i |a[i]| * w[i]   (w >= 0)
double max_abs_weighted_serial(const double* a, const double* w, std::size_t n);
double max_abs_weighted_omp(const double* a, const double* w, std::size_t n);
double max_abs_weighted(const double* a, const double* w, std::size_t n);

// min_i a[i]
double min_serial(const double* a, std::size_t n);
double min_omp(const double* a, std::size_t n);
double min(const double* a, std::size_t n);

// Deterministic chunked sums.
double sum_serial(const double* a, std::size_t n);
double sum_omp(const double* a, std::size_t n);
double sum(const double* a, std::size_t n);

double sum_abs_serial(const double* a, std::size_t n);
double sum_abs_omp(const double* a, std::size_t n);
double sum_abs(const double* a, std::size_t n);

double sum_sq_serial(const double* a, std::size_t n);
double sum_sq_omp(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);

bool all_finite(const double* a, std::size_t n);

// Convenience overloads on vectors.
inline double max_abs(const std::vector<double>& a) { return max_abs(a.data(), a.size()); }
inline double min(const std::vector<double>& a) { return min(a.data(), a.size()); }
inline double sum(const std::vector<double>& a) { return sum(a.data(), a.size()); }
inline double sum_abs(const std::vector<double>& a) { return sum_abs(a.data(), a.size()); }
inline double sum_sq(const std::vector<double>& a) { return sum_sq(a.data(), a.size()); }
inline bool all_finite(const std::vector<double>& a) { return all_finite(a.data(), a.size()); }

}  // namespace dp3::kernels
