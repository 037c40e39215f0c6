#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ndcwt {

/// In-place iterative radix-2 FFT. Length must be a power of two.
/// inverse=true applies the 1/N-normalized inverse transform. Kept internal
/// so simulator output is reproducible regardless of external FFT backends.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

/// Row-column 2-D transform of a power-of-two-sized matrix, in place.
void fft2_pow2(Eigen::MatrixXcd& a, bool inverse);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace ndcwt
