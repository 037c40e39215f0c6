#pragma once

#include <vector>

#include "ndcwt/spectra.hpp"
#include "ndcwt/transform1d.hpp"
#include "ndcwt/transform2d.hpp"

namespace ndcwt {

/// Four-quadrant angle of z on (-pi, pi]; exactly 0 for z == 0 (callers
/// count those separately).
double coefficient_phase(cplx z);

struct PhaseLevel {
    int level = 0;
    double mean = 0.0;
    std::size_t count = 0;       ///< always the full level size (m or m*n)
    std::size_t zero_count = 0;  ///< coefficients with degenerate phase 0
};

struct PhaseSummary {
    std::vector<PhaseLevel> per_level;  ///< ascending level
    SpectrumMode mode = SpectrumMode::OneD;
    int shift = 0;
    bool circular = false;
};

/// Arithmetic mean of principal-branch phases per detail level, over exactly
/// the m coefficients of the level (zeros contribute 0 and are tallied).
/// circular_mean switches to atan2(mean sin, mean cos) for experimentation;
/// the arithmetic mean is the reported descriptor.
PhaseSummary phase_averages_1d(const Coefficients1D& coeffs,
                               bool circular_mean = false);

/// Same per (j, j+s) diagonal block; mean over the m*n entries in storage
/// order (column-major).
PhaseSummary phase_averages_2d(const Coefficients2D& coeffs, int s,
                               bool circular_mean = false);

}  // namespace ndcwt
