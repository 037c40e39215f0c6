#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ndcwt/transform1d.hpp"
#include "ndcwt/transform2d.hpp"

namespace ndcwt {

enum class SpectrumMode { OneD, TwoDDiagonal };
enum class FitMethod { Ols, Wls, TheilSen };

struct LogscalePoint {
    int level = 0;
    double log2_energy = 0.0;  ///< -inf when excluded
    std::size_t count = 0;     ///< coefficients averaged at this level
    bool excluded = false;     ///< zero-energy level, skipped by fits
};

/// 2nd-order logscale diagram: (j, log2 mean squared modulus) per detail
/// level, ascending j. The moment order is fixed at q = 2.
struct LogscaleDiagram {
    std::vector<LogscalePoint> points;
    SpectrumMode mode = SpectrumMode::OneD;
    int shift = 0;  ///< scale shift s, 2-D diagonal mode only
    static constexpr int q = 2;

    std::size_t usable_levels() const;
};

struct SpectrumFit {
    double slope = 0.0;
    double intercept = 0.0;
    double hurst = 0.0;
    int level_lo = 0, level_hi = 0;
    FitMethod method = FitMethod::Ols;
    std::vector<std::pair<int, double>> residuals;  ///< (level, data - fit)
};

LogscaleDiagram logscale_1d(const Coefficients1D& coeffs);
LogscaleDiagram logscale_2d(const Coefficients2D& coeffs, int s);

/// slope -> Hurst: -(slope+1)/2 in 1-D, -(slope+2)/2 in 2-D diagonal mode.
double hurst_from_slope(double slope, SpectrumMode mode);

/// Least-squares (or weighted / Theil-Sen) line through the usable diagram
/// points, restricted to [range.first, range.second] when given. Weighted
/// fits weight level j by its effective independent coefficient count
/// (halving per coarser level in 1-D, quartering in 2-D). Throws when fewer
/// than two usable levels remain.
SpectrumFit fit_spectrum(const LogscaleDiagram& diagram,
                         std::optional<std::pair<int, int>> range = {},
                         FitMethod method = FitMethod::Ols);

/// Removes the straight line through the first and last sample so circular
/// filtering sees no wrap jump. No effect on interior detail coefficients of
/// filters with two or more vanishing moments.
Eigen::VectorXd bridge_detrend(const Eigen::Ref<const Eigen::VectorXd>& y);

/// Row then column bridge; the wrapped image is continuous across both seams.
Eigen::MatrixXd bridge_detrend2d(const Eigen::Ref<const Eigen::MatrixXd>& A);

}  // namespace ndcwt
