#include "ndcwt/transform2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndcwt {

namespace {

int level_to_row_block(int j, int J, int p) {
    if (j < J - p || j > J - 1)
        throw std::invalid_argument("detail level " + std::to_string(j) +
                                    " outside [" + std::to_string(J - p) + ", " +
                                    std::to_string(J - 1) + "]");
    return 1 + (j - (J - p));
}

}  // namespace

Coefficients2D::ConstBlock Coefficients2D::block(int rb, int cb) const {
    if (rb < 0 || rb > p1 || cb < 0 || cb > p2)
        throw std::invalid_argument("block index out of range");
    return B.block(rb * m, cb * n, m, n);
}

Coefficients2D::ConstBlock Coefficients2D::diagonal_block(int j, int s) const {
    const int rb = level_to_row_block(j, J, p1);
    const int cb = level_to_row_block(j + s, J, p2);
    return B.block(rb * m, cb * n, m, n);
}

std::vector<int> Coefficients2D::diagonal_levels(int s) const {
    const int lo = std::max(J - p1, (J - p2) - s);
    const int hi = std::min(J - 1, (J - 1) - s);
    std::vector<int> out;
    for (int j = hi; j >= lo; --j) out.push_back(j);  // finest first
    return out;
}

std::vector<std::pair<int, Coefficients2D::ConstBlock>>
Coefficients2D::diagonal_blocks(int s) const {
    const auto levels = diagonal_levels(s);
    if (levels.empty())
        throw std::invalid_argument(
            "shift s = " + std::to_string(s) +
            " leaves no valid (j, j+s) detail level pairs");
    std::vector<std::pair<int, ConstBlock>> out;
    out.reserve(levels.size());
    for (int j : levels) out.emplace_back(j, diagonal_block(j, s));
    return out;
}

TransformPlan2D::TransformPlan2D(Eigen::Index m, Eigen::Index n, int p1, int p2,
                                 const ComplexFilterPair& filter)
    : TransformPlan2D(m, n, p1, p2, filter, filter) {}

TransformPlan2D::TransformPlan2D(Eigen::Index m, Eigen::Index n, int p1, int p2,
                                 const ComplexFilterPair& row_filter,
                                 const ComplexFilterPair& col_filter)
    : m_(m), n_(n), p1_(p1), p2_(p2) {
    row_plan_ = std::make_shared<TransformPlan1D>(m, p1, row_filter);
    if (n == m && p2 == p1 && col_filter.name == row_filter.name) {
        col_plan_ = row_plan_;
    } else {
        col_plan_ = std::make_shared<TransformPlan1D>(n, p2, col_filter);
    }
    if (!row_plan_->is_dense() || !col_plan_->is_dense())
        throw std::invalid_argument(
            "image axis too large for the dense two-sided transform");
    J_ = max_depth(std::min(m_, n_));
}

Coefficients2D TransformPlan2D::forward(
    const Eigen::Ref<const Eigen::MatrixXd>& A) const {
    if (A.rows() != m_ || A.cols() != n_)
        throw std::invalid_argument(
            "shape mismatch: image is " + std::to_string(A.rows()) + "x" +
            std::to_string(A.cols()) + ", plan expects " + std::to_string(m_) +
            "x" + std::to_string(n_));
    Coefficients2D out;
    out.m = m_;
    out.n = n_;
    out.p1 = p1_;
    out.p2 = p2_;
    out.J = J_;
    out.filter_name = row_plan_->filter().name;
    CMat P = row_plan_->W() * A.cast<cplx>();
    out.B.noalias() = P * col_plan_->W().adjoint();
    return out;
}

CMat TransformPlan2D::inverse(const Coefficients2D& coeffs) const {
    if (coeffs.m != m_ || coeffs.n != n_ || coeffs.p1 != p1_ ||
        coeffs.p2 != p2_ || coeffs.B.rows() != (p1_ + 1) * m_ ||
        coeffs.B.cols() != (p2_ + 1) * n_)
        throw std::invalid_argument(
            "shape mismatch: coefficients do not belong to this plan");
    CMat S = coeffs.B;
    S.array().colwise() *= row_plan_->weights().cast<cplx>().array();
    S.array().rowwise() *= col_plan_->weights().cast<cplx>().transpose().array();
    const CMat U = S * col_plan_->W();
    return row_plan_->W().adjoint() * U;
}

}  // namespace ndcwt
