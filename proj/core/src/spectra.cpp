#include "ndcwt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ndcwt {

namespace {

// A level counts as zero when its energy sits at roundoff scale relative to
// the whole coefficient stack; filters whose cancellation is inexact would
// otherwise never flag degenerate inputs.
constexpr double kZeroLevelRel = 1e-13;

LogscalePoint make_point(int level, double mean_sq, std::size_t count,
                         double stack_mean_sq) {
    LogscalePoint pt;
    pt.level = level;
    pt.count = count;
    if (mean_sq > kZeroLevelRel * kZeroLevelRel * stack_mean_sq) {
        pt.log2_energy = std::log2(mean_sq);
    } else {
        pt.log2_energy = -std::numeric_limits<double>::infinity();
        pt.excluded = true;
    }
    return pt;
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::size_t LogscaleDiagram::usable_levels() const {
    std::size_t n = 0;
    for (const auto& pt : points)
        if (!pt.excluded) ++n;
    return n;
}

LogscaleDiagram logscale_1d(const Coefficients1D& coeffs) {
    if (coeffs.stacked.size() == 0)
        throw std::invalid_argument("logscale_1d: empty coefficients");
    LogscaleDiagram diag;
    diag.mode = SpectrumMode::OneD;
    double stack = 0.0;
    for (Eigen::Index k = 0; k < coeffs.stacked.size(); ++k)
        stack += std::norm(coeffs.stacked[k]);
    stack /= static_cast<double>(coeffs.stacked.size());
    for (int j : coeffs.detail_levels()) {
        const auto d = coeffs.detail(j);
        double acc = 0.0;
        for (Eigen::Index k = 0; k < d.size(); ++k) acc += std::norm(d[k]);
        diag.points.push_back(
            make_point(j, acc / static_cast<double>(d.size()),
                       static_cast<std::size_t>(d.size()), stack));
    }
    return diag;
}

LogscaleDiagram logscale_2d(const Coefficients2D& coeffs, int s) {
    LogscaleDiagram diag;
    diag.mode = SpectrumMode::TwoDDiagonal;
    diag.shift = s;
    double stack = 0.0;
    for (Eigen::Index c = 0; c < coeffs.B.cols(); ++c)
        for (Eigen::Index r = 0; r < coeffs.B.rows(); ++r)
            stack += std::norm(coeffs.B(r, c));
    stack /= static_cast<double>(coeffs.B.size());
    const auto blocks = coeffs.diagonal_blocks(s);  // finest first; throws if empty
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        const auto& [j, blk] = *it;
        double acc = 0.0;
        for (Eigen::Index c = 0; c < blk.cols(); ++c)
            for (Eigen::Index r = 0; r < blk.rows(); ++r) acc += std::norm(blk(r, c));
        const auto count = static_cast<std::size_t>(blk.rows() * blk.cols());
        diag.points.push_back(
            make_point(j, acc / static_cast<double>(count), count, stack));
    }
    return diag;
}

double hurst_from_slope(double slope, SpectrumMode mode) {
    return mode == SpectrumMode::OneD ? -(slope + 1.0) / 2.0
                                      : -(slope + 2.0) / 2.0;
}

SpectrumFit fit_spectrum(const LogscaleDiagram& diagram,
                         std::optional<std::pair<int, int>> range,
                         FitMethod method) {
    std::vector<const LogscalePoint*> pts;
    for (const auto& pt : diagram.points) {
        if (pt.excluded) continue;
        if (range && (pt.level < range->first || pt.level > range->second)) continue;
        pts.push_back(&pt);
    }
    if (pts.size() < 2)
        throw std::invalid_argument(
            "insufficient levels: a spectrum fit needs at least 2 usable levels, got " +
            std::to_string(pts.size()));

    const std::size_t n = pts.size();
    double slope = 0.0, intercept = 0.0;

    if (method == FitMethod::TheilSen) {
        std::vector<double> pair_slopes;
        pair_slopes.reserve(n * (n - 1) / 2);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                pair_slopes.push_back(
                    (pts[b]->log2_energy - pts[a]->log2_energy) /
                    static_cast<double>(pts[b]->level - pts[a]->level));
        slope = median(std::move(pair_slopes));
        std::vector<double> offs(n);
        for (std::size_t i = 0; i < n; ++i)
            offs[i] = pts[i]->log2_energy - slope * pts[i]->level;
        intercept = median(std::move(offs));
    } else {
        // effective independent counts shrink by the level spacing factor
        // toward coarse scales; OLS is the unit-weight special case.
        const double base = diagram.mode == SpectrumMode::OneD ? 2.0 : 4.0;
        double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto* pt : pts) {
            const double w =
                method == FitMethod::Wls ? std::pow(base, pt->level) : 1.0;
            const double x = pt->level;
            const double y = pt->log2_energy;
            sw += w;
            sx += w * x;
            sy += w * y;
            sxx += w * x * x;
            sxy += w * x * y;
        }
        const double xbar = sx / sw, ybar = sy / sw;
        slope = (sxy - sw * xbar * ybar) / (sxx - sw * xbar * xbar);
        intercept = ybar - slope * xbar;
    }

    SpectrumFit fit;
    fit.slope = slope;
    fit.intercept = intercept;
    fit.hurst = hurst_from_slope(slope, diagram.mode);
    fit.level_lo = pts.front()->level;
    fit.level_hi = pts.back()->level;
    fit.method = method;
    for (const auto* pt : pts)
        fit.residuals.emplace_back(
            pt->level, pt->log2_energy - (slope * pt->level + intercept));
    return fit;
}

Eigen::VectorXd bridge_detrend(const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index m = y.size();
    if (m < 2) return y;
    Eigen::VectorXd out(m);
    const double step = (y[m - 1] - y[0]) / static_cast<double>(m - 1);
    for (Eigen::Index k = 0; k < m; ++k) out[k] = y[k] - step * static_cast<double>(k);
    return out;
}

Eigen::MatrixXd bridge_detrend2d(const Eigen::Ref<const Eigen::MatrixXd>& A) {
    Eigen::MatrixXd out = A;
    const Eigen::Index m = A.rows(), n = A.cols();
    if (m >= 2) {
        const Eigen::RowVectorXd dr = (A.row(m - 1) - A.row(0)) / double(m - 1);
        for (Eigen::Index i = 0; i < m; ++i) out.row(i) -= double(i) * dr;
    }
    if (n >= 2) {
        const Eigen::VectorXd dc = (out.col(n - 1) - out.col(0)) / double(n - 1);
        for (Eigen::Index j = 0; j < n; ++j) out.col(j) -= double(j) * dc;
    }
    return out;
}

}  // namespace ndcwt
