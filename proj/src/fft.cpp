#include "dp3/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace dp3::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;

// FFTW planning is not reentrant; execution via the new-array API is. Plans
// are created FFTW_UNALIGNED so they accept any caller buffer.
PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(n);
    std::vector<std::complex<double>> cpx(n / 2 + 1);
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(),
                                 reinterpret_cast<fftw_complex*>(cpx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                 reinterpret_cast<fftw_complex*>(cpx.data()), real.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum forward(const std::vector<double>& f) {
    const std::size_t n = f.size();
    Spectrum out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(g_plan_mutex);
        plan = plans_for(n).fwd;
    }
    std::vector<double> in(f);  // r2c may clobber its input
    fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> inverse(const Spectrum& spec, std::size_t n) {
    if (spec.size() != n / 2 + 1) throw std::runtime_error("spectrum size mismatch");
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard lock(g_plan_mutex);
        plan = plans_for(n).bwd;
    }
    Spectrum in(spec);  // c2r clobbers its input
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace dp3::fft
