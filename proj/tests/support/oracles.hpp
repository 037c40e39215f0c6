#pragma once

// Reference implementations used only as test oracles. Everything here is
// written directly from the defining formulas, independent of the library's
// computation paths.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ndcwt/complex_filter.hpp"

namespace oracle {

using ndcwt::cplx;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline Eigen::Index wrap(long long i, Eigen::Index m) {
    const long long r = i % static_cast<long long>(m);
    return static_cast<Eigen::Index>(r < 0 ? r + m : r);
}

// One analysis stage: out[k] = sum_t conj(taps[t]) x[(k + dil*(t+off)) mod m]
inline CVec stage(const CVec& x, const std::vector<cplx>& taps, int off,
                  long long dil) {
    const Eigen::Index m = x.size();
    CVec out = CVec::Zero(m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (std::size_t t = 0; t < taps.size(); ++t)
            out[k] += std::conj(taps[t]) *
                      x[wrap(k + dil * (static_cast<long long>(t) + off), m)];
    return out;
}

struct Cascade1D {
    CVec smooth;
    std::vector<CVec> details_finest_first;
};

// Mallat cascade without decimation: stage s filters with dilation 2^s.
inline Cascade1D atrous_forward(const CVec& y, const ndcwt::ComplexFilterPair& f,
                                int p) {
    Cascade1D out;
    CVec a = y;
    for (int s = 0; s < p; ++s) {
        const long long dil = 1LL << s;
        out.details_finest_first.push_back(stage(a, f.g, f.g_offset, dil));
        a = stage(a, f.h, f.h_offset, dil);
    }
    out.smooth = std::move(a);
    return out;
}

// Stacked in the library's block order [smooth | coarsest .. finest detail].
inline CVec atrous_forward_stacked(const CVec& y, const ndcwt::ComplexFilterPair& f,
                                   int p) {
    const auto cas = atrous_forward(y, f, p);
    const Eigen::Index m = y.size();
    CVec out((p + 1) * m);
    out.segment(0, m) = cas.smooth;
    for (int s = 0; s < p; ++s)
        out.segment((1 + (p - 1 - s)) * m, m) = cas.details_finest_first[s];
    return out;
}

// Dense analysis matrix of one stage, straight from the definition.
inline CMat stage_matrix(Eigen::Index m, const std::vector<cplx>& taps, int off,
                         long long dil) {
    CMat M = CMat::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (std::size_t t = 0; t < taps.size(); ++t)
            M(k, wrap(k + dil * (static_cast<long long>(t) + off), m)) +=
                std::conj(taps[t]);
    return M;
}

// W assembled by multiplying stage matrices (tiny m only).
inline CMat brute_force_W(Eigen::Index m, int p, const ndcwt::ComplexFilterPair& f) {
    CMat A = CMat::Identity(m, m);
    std::vector<CMat> detail_blocks;  // stage order (finest composition first)
    for (int s = 0; s < p; ++s) {
        const long long dil = 1LL << s;
        detail_blocks.push_back(stage_matrix(m, f.g, f.g_offset, dil) * A);
        A = stage_matrix(m, f.h, f.h_offset, dil) * A;
    }
    CMat W((p + 1) * m, m);
    W.block(0, 0, m, m) = A;
    for (int s = 0; s < p; ++s)
        W.block((1 + (p - 1 - s)) * m, 0, m, m) = detail_blocks[s];
    return W;
}

// Full two-sided transform via sequential 1-D passes: columns through the
// cascade, then rows through W^H from the right, as conj(forward(conj(row))).
inline CMat scale_mixing_forward(const Eigen::MatrixXd& A,
                                 const ndcwt::ComplexFilterPair& f, int p1,
                                 int p2) {
    const Eigen::Index m = A.rows(), n = A.cols();
    CMat P((p1 + 1) * m, n);
    for (Eigen::Index c = 0; c < n; ++c)
        P.col(c) = atrous_forward_stacked(A.col(c).cast<cplx>(), f, p1);
    CMat B((p1 + 1) * m, (p2 + 1) * n);
    for (Eigen::Index r = 0; r < P.rows(); ++r) {
        const CVec row = P.row(r).transpose().conjugate();
        B.row(r) = atrous_forward_stacked(row, f, p2).conjugate().transpose();
    }
    return B;
}

inline CVec random_complex(Eigen::Index m, unsigned seed) {
    std::mt19937 eng(seed);
    std::normal_distribution<double> g;
    CVec y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[i] = cplx(g(eng), g(eng));
    return y;
}

inline Eigen::VectorXd random_real(Eigen::Index m, unsigned seed) {
    std::mt19937 eng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[i] = g(eng);
    return y;
}

}  // namespace oracle
