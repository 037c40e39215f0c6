#include "ndcwt/transform1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ndcwt {

namespace {

// Sparse tap list with explicit integer support, used while composing the
// per-level equivalent filters of the cascade.
struct TapSequence {
    int offset = 0;
    std::vector<cplx> taps;
};

TapSequence dilate(const std::vector<cplx>& taps, int offset, int stage) {
    TapSequence out;
    out.offset = offset * (1 << stage);
    out.taps.resize((taps.size() - 1) * (std::size_t{1} << stage) + 1, cplx{});
    for (std::size_t i = 0; i < taps.size(); ++i)
        out.taps[i * (std::size_t{1} << stage)] = taps[i];
    return out;
}

TapSequence convolve(const TapSequence& a, const TapSequence& b) {
    TapSequence out;
    out.offset = a.offset + b.offset;
    out.taps.assign(a.taps.size() + b.taps.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.taps.size(); ++i) {
        if (a.taps[i] == cplx{}) continue;
        for (std::size_t j = 0; j < b.taps.size(); ++j)
            out.taps[i + j] += a.taps[i] * b.taps[j];
    }
    return out;
}

// Wrap the conjugated taps into one circular row of length m:
// folded[c] = sum of conj(tap_t) over t == c (mod m).
CVec fold_conj(const TapSequence& f, Eigen::Index m) {
    CVec folded = CVec::Zero(m);
    for (std::size_t i = 0; i < f.taps.size(); ++i) {
        const long long t = f.offset + static_cast<long long>(i);
        const Eigen::Index c = static_cast<Eigen::Index>(((t % m) + m) % m);
        folded[c] += std::conj(f.taps[i]);
    }
    return folded;
}

// out[k] = sum_t conj(taps[t]) x[(k + dil*(t+offset)) mod m]
void correlate_conj(const CVec& x, const std::vector<cplx>& taps, int offset,
                    Eigen::Index dil, CVec& out) {
    const Eigen::Index m = x.size();
    out.setZero();
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const cplx w = std::conj(taps[i]);
        const long long t = dil * (static_cast<long long>(i) + offset);
        const Eigen::Index s = static_cast<Eigen::Index>(((t % m) + m) % m);
        // out[k] += w * x[(k + s) mod m]
        for (Eigen::Index k = 0; k + s < m; ++k) out[k] += w * x[k + s];
        for (Eigen::Index k = m - s; k < m; ++k) out[k] += w * x[k + s - m];
    }
}

// adjoint of correlate_conj: out[k] += w_scale * taps[t] * x[(k - dil*(t+offset)) mod m]
void convolve_adjoint(const CVec& x, const std::vector<cplx>& taps, int offset,
                      Eigen::Index dil, CVec& out) {
    const Eigen::Index m = x.size();
    for (std::size_t i = 0; i < taps.size(); ++i) {
        const cplx w = taps[i];
        const long long t = dil * (static_cast<long long>(i) + offset);
        const Eigen::Index s = static_cast<Eigen::Index>(((t % m) + m) % m);
        // out[k] += w * x[(k - s) mod m]  ==  out[(j + s) mod m] += w * x[j]
        for (Eigen::Index j = 0; j + s < m; ++j) out[j + s] += w * x[j];
        for (Eigen::Index j = m - s; j < m; ++j) out[j + s - m] += w * x[j];
    }
}

}  // namespace

int max_depth(Eigen::Index m) {
    if (m < 2) throw std::invalid_argument("signal length must be at least 2");
    int J = 0;
    while ((Eigen::Index{1} << J) < m) ++J;
    return J;
}

std::vector<int> Coefficients1D::detail_levels() const {
    std::vector<int> out(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = J - p + i;
    return out;
}

Eigen::VectorBlock<const CVec> Coefficients1D::detail(int j) const {
    if (j < J - p || j > J - 1)
        throw std::invalid_argument("detail level " + std::to_string(j) +
                                    " outside [" + std::to_string(J - p) + ", " +
                                    std::to_string(J - 1) + "]");
    return stacked.segment((1 + (j - (J - p))) * m, m);
}

Eigen::VectorBlock<CVec> Coefficients1D::detail(int j) {
    if (j < J - p || j > J - 1)
        throw std::invalid_argument("detail level " + std::to_string(j) +
                                    " outside [" + std::to_string(J - p) + ", " +
                                    std::to_string(J - 1) + "]");
    return stacked.segment((1 + (j - (J - p))) * m, m);
}

TransformPlan1D::TransformPlan1D(Eigen::Index m, int p, ComplexFilterPair filter)
    : m_(m), p_(p), filter_(std::move(filter)) {
    if (m_ < filter_.length())
        throw std::invalid_argument("signal too short: m = " + std::to_string(m_) +
                                    " < filter length " +
                                    std::to_string(filter_.length()));
    J_ = max_depth(m_);
    if (p_ < 1 || p_ > J_)
        throw std::invalid_argument("depth too large: p = " + std::to_string(p_) +
                                    " not in [1, " + std::to_string(J_) +
                                    "] for m = " + std::to_string(m_));

    T_.resize((p_ + 1) * m_);
    T_.segment(0, 2 * m_).setConstant(1.0 / std::pow(2.0, p_));
    for (int i = 1; i < p_; ++i)
        T_.segment((i + 1) * m_, m_).setConstant(1.0 / std::pow(2.0, p_ - i));

    const Eigen::Index entries = (p_ + 1) * m_ * m_;
    if (entries > kDenseEntryLimit || m_ > 32768) return;  // convolution path

    // Equivalent filter of each output block: detail block at stage s+1 is
    // g^(2^s) * h^(2^(s-1)) * ... * h^(1); the smooth block composes all p
    // low-pass stages. Blocks stacked [smooth | coarsest .. finest detail].
    std::vector<TapSequence> blocks(static_cast<std::size_t>(p_) + 1);
    TapSequence smooth{0, {cplx(1.0, 0.0)}};
    for (int s = 0; s < p_; ++s) {
        blocks[static_cast<std::size_t>(p_ - s)] =
            convolve(dilate(filter_.g, filter_.g_offset, s), smooth);
        smooth = convolve(dilate(filter_.h, filter_.h_offset, s), smooth);
    }
    blocks[0] = std::move(smooth);

    W_.resize((p_ + 1) * m_, m_);
    for (int b = 0; b <= p_; ++b) {
        const CVec folded = fold_conj(blocks[static_cast<std::size_t>(b)], m_);
        const cplx* f = folded.data();
        for (Eigen::Index c = 0; c < m_; ++c) {
            // column c of the block is W[b*m + k, c] = folded[(c - k) mod m]
            cplx* col = W_.data() + c * W_.rows() + b * m_;
            std::reverse_copy(f, f + c + 1, col);
            std::reverse_copy(f + c + 1, f + m_, col + c + 1);
        }
    }
}

Coefficients1D TransformPlan1D::make_output() const {
    Coefficients1D out;
    out.m = m_;
    out.p = p_;
    out.J = J_;
    out.filter_name = filter_.name;
    return out;
}

Coefficients1D TransformPlan1D::forward(
    const Eigen::Ref<const Eigen::VectorXd>& y) const {
    return forward(CVec(y.cast<cplx>()));
}

Coefficients1D TransformPlan1D::forward(const Eigen::Ref<const CVec>& y) const {
    if (y.size() != m_)
        throw std::invalid_argument("length mismatch: signal has " +
                                    std::to_string(y.size()) +
                                    " samples, plan expects " + std::to_string(m_));
    if (!is_dense()) return forward_cascade(y);
    Coefficients1D out = make_output();
    out.stacked.noalias() = W_ * y;
    return out;
}

Coefficients1D TransformPlan1D::forward_cascade(const CVec& y) const {
    Coefficients1D out = make_output();
    out.stacked.resize((p_ + 1) * m_);
    CVec a = y, next(m_), d(m_);
    for (int s = 0; s < p_; ++s) {
        const Eigen::Index dil = Eigen::Index{1} << s;
        correlate_conj(a, filter_.g, filter_.g_offset, dil, d);
        out.detail(J_ - 1 - s) = d;
        correlate_conj(a, filter_.h, filter_.h_offset, dil, next);
        a.swap(next);
    }
    out.smooth() = a;
    return out;
}

CVec TransformPlan1D::inverse(const Coefficients1D& coeffs) const {
    if (coeffs.m != m_ || coeffs.p != p_ ||
        coeffs.stacked.size() != (p_ + 1) * m_)
        throw std::invalid_argument(
            "shape mismatch: coefficients do not belong to this plan");
    if (!is_dense()) return inverse_cascade(coeffs);
    const CVec weighted = coeffs.stacked.cwiseProduct(T_.cast<cplx>());
    return W_.adjoint() * weighted;
}

CVec TransformPlan1D::inverse_cascade(const Coefficients1D& coeffs) const {
    // Stage-wise reconstruction a_s = (H_s^H a_{s+1} + G_s^H d_{s+1}) / 2,
    // which expands to W^H T d.
    CVec a = coeffs.smooth();
    CVec acc(m_);
    for (int s = p_ - 1; s >= 0; --s) {
        const Eigen::Index dil = Eigen::Index{1} << s;
        acc.setZero();
        convolve_adjoint(a, filter_.h, filter_.h_offset, dil, acc);
        const CVec d = coeffs.detail(J_ - 1 - s);
        convolve_adjoint(d, filter_.g, filter_.g_offset, dil, acc);
        a = 0.5 * acc;
    }
    return a;
}

}  // namespace ndcwt
