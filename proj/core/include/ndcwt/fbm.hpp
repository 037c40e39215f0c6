#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace ndcwt {

/// Exact fractional-Brownian-motion sample request. Increments are
/// normalized so the unit-lag variogram is 1; output is deterministic in
/// (hurst, shape, seed).
struct FbmSpec {
    double hurst = 0.5;
    Eigen::Index length = 0;  ///< m
    Eigen::Index cols = 0;    ///< n; 0 selects the 1-D simulator
    std::uint64_t seed = 0;
};

/// Cumulative sum of exact fractional Gaussian noise drawn by circulant
/// embedding of the fGn autocovariance. The embedding is checked for
/// nonnegative eigenvalues and doubled once on failure.
Eigen::VectorXd simulate_fbm_1d(const FbmSpec& spec);

/// Exact isotropic 2-D fBm: covariance factorization for small grids,
/// compactly-supported circulant embedding with a linear correction for
/// larger ones. B(0,0) = 0 exactly. Grids above 2^18 points are rejected.
Eigen::MatrixXd simulate_fbm_2d(const FbmSpec& spec);

}  // namespace ndcwt
