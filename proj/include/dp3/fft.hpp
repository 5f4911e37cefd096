#pragma once

#include <complex>
#include <vector>

// Thin wrapper over FFTW's real transforms. Plans are cached per size behind a
// mutex; execution goes through the new-array interface, which is reentrant,
// so concurrent workers can transform distinct buffers freely.

namespace dp3::fft {

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized forward real-to-complex transform (n real -> n/2+1 complex).
Spectrum forward(const std::vector<double>& f);

/// Inverse transform scaled by 1/n, so inverse(forward(f)) == f.
std::vector<double> inverse(const Spectrum& spec, std::size_t n);

}  // namespace dp3::fft
