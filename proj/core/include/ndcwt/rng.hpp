#pragma once

#include <cstdint>
#include <random>

namespace ndcwt {

/// Splitmix64-derived child seed for replicate streams. Replicate k of a base
/// seed gets derive_seed(base, k); streams for distinct k are decorrelated and
/// the scheme is stable across releases.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Standard-normal stream: mt19937_64 (bit-exact per the C++ standard) plus a
/// fixed Box-Muller recipe, so a seed reproduces the same draws on every run.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next();

    /// Uniform on [0,1) with 53-bit resolution.
    double next_uniform();

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace ndcwt
