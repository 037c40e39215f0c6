#include "ndcwt/phase.hpp"

#include <cmath>

namespace ndcwt {

double coefficient_phase(cplx z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    return std::atan2(z.imag(), z.real());
}

namespace {

template <typename Range>
PhaseLevel summarize(int level, const Range& values, bool circular) {
    PhaseLevel out;
    out.level = level;
    out.count = static_cast<std::size_t>(values.size());
    if (circular) {
        double ss = 0.0, cc = 0.0;
        for (Eigen::Index k = 0; k < values.size(); ++k) {
            if (values[k] == cplx{}) {
                ++out.zero_count;
                cc += 1.0;  // phase 0
                continue;
            }
            const double ph = coefficient_phase(values[k]);
            ss += std::sin(ph);
            cc += std::cos(ph);
        }
        out.mean = std::atan2(ss, cc);
    } else {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < values.size(); ++k) {
            if (values[k] == cplx{}) ++out.zero_count;
            acc += coefficient_phase(values[k]);
        }
        out.mean = acc / static_cast<double>(values.size());
    }
    return out;
}

}  // namespace

PhaseSummary phase_averages_1d(const Coefficients1D& coeffs, bool circular_mean) {
    if (coeffs.stacked.size() == 0)
        throw std::invalid_argument("phase_averages_1d: empty coefficients");
    PhaseSummary out;
    out.mode = SpectrumMode::OneD;
    out.circular = circular_mean;
    for (int j : coeffs.detail_levels())
        out.per_level.push_back(summarize(j, coeffs.detail(j), circular_mean));
    return out;
}

PhaseSummary phase_averages_2d(const Coefficients2D& coeffs, int s,
                               bool circular_mean) {
    PhaseSummary out;
    out.mode = SpectrumMode::TwoDDiagonal;
    out.shift = s;
    out.circular = circular_mean;
    auto blocks = coeffs.diagonal_blocks(s);  // throws when s is out of range
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        const auto& [j, blk] = *it;
        // flatten column-major to match storage order
        CVec flat(blk.rows() * blk.cols());
        Eigen::Index idx = 0;
        for (Eigen::Index c = 0; c < blk.cols(); ++c)
            for (Eigen::Index r = 0; r < blk.rows(); ++r) flat[idx++] = blk(r, c);
        out.per_level.push_back(summarize(j, flat, circular_mean));
    }
    return out;
}

}  // namespace ndcwt
