#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ndcwt/complex_filter.hpp"

namespace ndcwt {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Level-stacked transform output. Layout of `stacked`:
/// [smooth at J-p | detail J-p | detail J-p+1 | ... | detail J-1],
/// each block of length m, (p+1)*m coefficients in total.
struct Coefficients1D {
    CVec stacked;
    Eigen::Index m = 0;
    int p = 0;
    int J = 0;
    std::string filter_name;

    int coarsest_level() const { return J - p; }

    /// Detail levels in ascending order, J-p .. J-1 (coarse to fine).
    std::vector<int> detail_levels() const;

    Eigen::VectorBlock<const CVec> smooth() const { return stacked.segment(0, m); }
    Eigen::VectorBlock<CVec> smooth() { return stacked.segment(0, m); }

    /// Detail vector at level j in [J-p, J-1].
    Eigen::VectorBlock<const CVec> detail(int j) const;
    Eigen::VectorBlock<CVec> detail(int j);
};

/// Non-decimated transform plan: the ((p+1)m x m) analysis matrix W, its
/// diagonal weight T, and the cascade equivalent used when W would be too
/// large to materialize. Immutable after construction; forward/inverse are
/// const and safe to call concurrently on a shared plan.
class TransformPlan1D {
  public:
    /// Entry budget above which W is not materialized and the a-trous
    /// convolution path is used instead (it matches the matrix path to
    /// 1e-10 and is covered by the same tests). 1.5e8 complex entries keep
    /// the largest plan under 2.5 GB.
    static constexpr Eigen::Index kDenseEntryLimit = 150'000'000;

    TransformPlan1D(Eigen::Index m, int p, ComplexFilterPair filter);

    Eigen::Index m() const { return m_; }
    int depth() const { return p_; }
    int max_level() const { return J_; }
    const ComplexFilterPair& filter() const { return filter_; }

    /// Dense W; empty (0x0) when the plan runs on the convolution path.
    const CMat& W() const { return W_; }
    bool is_dense() const { return W_.size() != 0; }

    /// Diagonal of the weight matrix T, length (p+1)*m.
    const Eigen::VectorXd& weights() const { return T_; }

    Coefficients1D forward(const Eigen::Ref<const Eigen::VectorXd>& y) const;
    Coefficients1D forward(const Eigen::Ref<const CVec>& y) const;

    /// Hermitian-transpose reconstruction W^H T d.
    CVec inverse(const Coefficients1D& coeffs) const;

  private:
    Coefficients1D forward_cascade(const CVec& y) const;
    CVec inverse_cascade(const Coefficients1D& coeffs) const;
    Coefficients1D make_output() const;

    Eigen::Index m_;
    int p_;
    int J_;
    ComplexFilterPair filter_;
    CMat W_;
    Eigen::VectorXd T_;
};

/// ceil(log2 m); the finest multiresolution index J for an m-sample signal.
int max_depth(Eigen::Index m);

}  // namespace ndcwt
