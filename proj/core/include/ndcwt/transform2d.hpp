#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ndcwt/transform1d.hpp"

namespace ndcwt {

/// Scale-mixing coefficient matrix B of shape (p1+1)m x (p2+1)n with its
/// block bookkeeping. Row block 0 holds the smooth rows (level J01 = J-p1);
/// row block i >= 1 holds detail level J-p1+i-1, and likewise for columns.
/// J = ceil(log2 min(m,n)) labels both axes.
struct Coefficients2D {
    CMat B;
    Eigen::Index m = 0, n = 0;
    int p1 = 0, p2 = 0;
    int J = 0;
    std::string filter_name;

    int coarsest_row_level() const { return J - p1; }
    int coarsest_col_level() const { return J - p2; }

    using ConstBlock = Eigen::Block<const CMat>;

    /// Block (rb, cb), rb in [0, p1], cb in [0, p2]; block (0,0) is the
    /// all-smooth corner.
    ConstBlock block(int rb, int cb) const;

    /// Diagonal-hierarchy detail block pairing row level j with column level
    /// j + s (both must be detail levels).
    ConstBlock diagonal_block(int j, int s) const;

    /// Levels j with valid (j, j+s) pairs, finest first. Empty shift ranges
    /// are reported via out-of-range errors by diagonal_blocks().
    std::vector<int> diagonal_levels(int s) const;

    /// The d_(j, j+s) blocks, finest to coarsest.
    std::vector<std::pair<int, ConstBlock>> diagonal_blocks(int s) const;
};

/// Two-sided transform plan B = W_m A W_n^H. Row and column plans must fit
/// the dense-matrix budget; arbitrary rectangular, non-dyadic shapes are
/// accepted. Immutable and shareable across threads once built.
class TransformPlan2D {
  public:
    TransformPlan2D(Eigen::Index m, Eigen::Index n, int p1, int p2,
                    const ComplexFilterPair& filter);

    /// Distinct row/column filters (kept behind this constructor rather than
    /// the common one; the default everywhere is one filter for both axes).
    TransformPlan2D(Eigen::Index m, Eigen::Index n, int p1, int p2,
                    const ComplexFilterPair& row_filter,
                    const ComplexFilterPair& col_filter);

    Eigen::Index rows() const { return m_; }
    Eigen::Index cols() const { return n_; }
    int row_depth() const { return p1_; }
    int col_depth() const { return p2_; }
    int max_level() const { return J_; }

    const TransformPlan1D& row_plan() const { return *row_plan_; }
    const TransformPlan1D& col_plan() const { return *col_plan_; }

    Coefficients2D forward(const Eigen::Ref<const Eigen::MatrixXd>& A) const;

    /// Reconstruction W_m^H (T_m B T_n) W_n; satisfies the round-trip
    /// identity given W^H T W = I on each axis.
    CMat inverse(const Coefficients2D& coeffs) const;

  private:
    Eigen::Index m_, n_;
    int p1_, p2_, J_;
    std::shared_ptr<const TransformPlan1D> row_plan_, col_plan_;
};

}  // namespace ndcwt
