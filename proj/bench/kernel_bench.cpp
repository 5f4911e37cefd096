// Timing comparison of the serial reference kernels against their OpenMP
// counterparts. Build and run:  ./dp3_bench [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <omp.h>

#include "dp3/grid.hpp"
#include "dp3/kernels.hpp"
#include "dp3/weights.hpp"

namespace k = dp3::kernels;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <class F>
double time_ms(int reps, F&& body) {
    body();  // warm up
    const double t0 = now_ms();
    for (int r = 0; r < reps; ++r) body();
    return (now_ms() - t0) / reps;
}

std::vector<double> random_field(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return out;
}

void report(const char* name, std::size_t n, double serial_ms, double omp_ms) {
    std::printf("%-16s n=%-9zu serial %10.4f ms   omp %10.4f ms   speedup %5.2fx\n", name, n,
                serial_ms, omp_ms, serial_ms / omp_ms);
}

volatile double sink;

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
    std::printf("threads: %d, reps: %d\n", omp_get_max_threads(), reps);

    for (std::size_t n : {std::size_t(1) << 14, std::size_t(1) << 18, std::size_t(1) << 21}) {
        const auto a = random_field(n, 1);
        const auto b = random_field(n, 2);
        const auto c = random_field(n, 3);
        const auto d = random_field(n, 4);
        std::vector<double> out(n);

        report("mul3", n,
               time_ms(reps, [&] { k::mul3_serial(a.data(), b.data(), c.data(), out.data(), n); }),
               time_ms(reps, [&] { k::mul3_omp(a.data(), b.data(), c.data(), out.data(), n); }));

        report("rk4_combine", n,
               time_ms(reps, [&] {
                   k::rk4_combine_serial(a.data(), 1e-3, b.data(), c.data(), d.data(), a.data(),
                                         out.data(), n);
               }),
               time_ms(reps, [&] {
                   k::rk4_combine_omp(a.data(), 1e-3, b.data(), c.data(), d.data(), a.data(),
                                      out.data(), n);
               }));

        report("sum_sq", n, time_ms(reps, [&] { sink = k::sum_sq_serial(a.data(), n); }),
               time_ms(reps, [&] { sink = k::sum_sq_omp(a.data(), n); }));

        report("max_abs_mul2", n,
               time_ms(reps, [&] { sink = k::max_abs_mul2_serial(a.data(), b.data(), n); }),
               time_ms(reps, [&] { sink = k::max_abs_mul2_omp(a.data(), b.data(), n); }));
    }

    // quadratic-cost weighted kernel bound, dominated by the inner reduction
    {
        const dp3::Grid g(32.0 * 3.141592653589793, 2048);
        const dp3::WeightProfile p(dp3::WeightKind::log, 1.0, 10.0);
        const double t_omp = time_ms(3, [&] { sink = dp3::omega_bound(p, g); });
        omp_set_num_threads(1);
        const double t_serial = time_ms(3, [&] { sink = dp3::omega_bound(p, g); });
        report("omega_bound", g.n(), t_serial, t_omp);
    }
    return 0;
}
