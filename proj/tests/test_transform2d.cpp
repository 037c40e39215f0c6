#include <doctest.h>

#include <cmath>

#include "ndcwt/transform2d.hpp"
#include "support/oracles.hpp"

using namespace ndcwt;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index m, Eigen::Index n, unsigned seed) {
    std::mt19937 eng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXd A(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i) A(i, j) = g(eng);
    return A;
}

}  // namespace

TEST_CASE("output shapes") {
    SUBCASE("square dyadic") {
        const auto plan = TransformPlan2D(64, 64, 4, 4, get_filter("cdaub6"));
        const auto coeffs = plan.forward(Eigen::MatrixXd::Zero(64, 64));
        CHECK(coeffs.B.rows() == 5 * 64);
        CHECK(coeffs.B.cols() == 5 * 64);
    }
    SUBCASE("rectangular non-dyadic") {
        const auto plan = TransformPlan2D(300, 200, 3, 3, get_filter("haar"));
        const auto coeffs = plan.forward(Eigen::MatrixXd::Zero(300, 200));
        CHECK(coeffs.B.rows() == 1200);
        CHECK(coeffs.B.cols() == 800);
        CHECK(coeffs.J == 8);  // ceil(log2 min(300,200))
    }
    SUBCASE("depth too large propagates per axis") {
        CHECK_THROWS_WITH_AS(TransformPlan2D(8, 8, 4, 2, get_filter("haar")),
                             doctest::Contains("depth too large"),
                             std::invalid_argument);
    }
    SUBCASE("shape mismatch") {
        const auto plan = TransformPlan2D(16, 16, 2, 2, get_filter("haar"));
        CHECK_THROWS_WITH_AS(plan.forward(Eigen::MatrixXd::Zero(16, 15)),
                             doctest::Contains("shape mismatch"),
                             std::invalid_argument);
    }
}

TEST_CASE("constant image: blocks touching any detail axis vanish") {
    const auto plan = TransformPlan2D(24, 30, 3, 2, get_filter("cdaub6"));
    const auto coeffs = plan.forward(Eigen::MatrixXd::Constant(24, 30, 2.5));
    for (int rb = 0; rb <= 3; ++rb)
        for (int cb = 0; cb <= 2; ++cb) {
            if (rb == 0 && cb == 0) continue;
            CHECK(coeffs.block(rb, cb).cwiseAbs().maxCoeff() < 1e-9);
        }
    CHECK(coeffs.block(0, 0).cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("separability on rank-one input") {
    const auto f = get_filter("cdaub6");
    const Eigen::Index m = 20, n = 14;
    const int p = 2;
    const auto plan2 = TransformPlan2D(m, n, p, p, f);
    const auto plan_u = TransformPlan1D(m, p, f);
    const auto plan_v = TransformPlan1D(n, p, f);
    const Eigen::VectorXd u = oracle::random_real(m, 1);
    const Eigen::VectorXd v = oracle::random_real(n, 2);
    const Eigen::MatrixXd A = u * v.transpose();
    const auto B = plan2.forward(A);
    const CVec Wu = plan_u.forward(u).stacked;
    const CVec Wv = plan_v.forward(v).stacked;
    const CMat want = Wu * Wv.adjoint();
    CHECK((B.B - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("matrix transform equals the sequential-1-D oracle") {
    for (const auto& name : available_filters()) {
        const auto f = get_filter(name);
        struct Shape {
            Eigen::Index m, n;
            int p;
        };
        for (const auto& sh : {Shape{33, 47, 3}, Shape{64, 64, 4}, Shape{25, 16, 2}}) {
            CAPTURE(name); CAPTURE(sh.m); CAPTURE(sh.n); CAPTURE(sh.p);
            const auto plan = TransformPlan2D(sh.m, sh.n, sh.p, sh.p, f);
            const auto A = random_matrix(sh.m, sh.n, 77);
            const auto got = plan.forward(A);
            const CMat want = oracle::scale_mixing_forward(A, f, sh.p, sh.p);
            CHECK((got.B - want).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("round trips on rectangular non-dyadic shapes") {
    for (const auto& name : available_filters()) {
        const auto f = get_filter(name);
        struct Shape {
            Eigen::Index m, n;
        };
        for (const auto& sh : {Shape{33, 47}, Shape{64, 64}, Shape{100, 60}}) {
            CAPTURE(name); CAPTURE(sh.m); CAPTURE(sh.n);
            const auto plan = TransformPlan2D(sh.m, sh.n, 3, 3, f);
            const auto A = random_matrix(sh.m, sh.n, 5);
            const CMat back = plan.inverse(plan.forward(A));
            CHECK(back.imag().cwiseAbs().maxCoeff() < 1e-8);
            CHECK((back.real() - A).norm() / A.norm() < 1e-8);
        }
    }
}

TEST_CASE("zero coefficients invert to the zero image") {
    const auto plan = TransformPlan2D(16, 12, 2, 2, get_filter("haar"));
    auto coeffs = plan.forward(random_matrix(16, 12, 9));
    coeffs.B.setZero();
    CHECK(plan.inverse(coeffs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("transpose symmetry for square plans") {
    // B(A^T) = conj(B(A)^T) blockwise when m = n and p1 = p2
    const auto plan = TransformPlan2D(24, 24, 3, 3, get_filter("cdaub6"));
    const auto A = random_matrix(24, 24, 13);
    const auto Bt = plan.forward(A.transpose());
    const auto B = plan.forward(A);
    CHECK((Bt.B - B.B.transpose().conjugate()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("diagonal block bookkeeping") {
    const auto plan = TransformPlan2D(32, 32, 4, 4, get_filter("haar"));
    const auto coeffs = plan.forward(random_matrix(32, 32, 3));
    REQUIRE(coeffs.J == 5);

    SUBCASE("s=0: one block per detail level, finest first, each m x n") {
        const auto blocks = coeffs.diagonal_blocks(0);
        REQUIRE(blocks.size() == 4);
        CHECK(blocks.front().first == 4);  // J-1
        CHECK(blocks.back().first == 1);   // J-p
        for (const auto& [j, blk] : blocks) {
            CHECK(blk.rows() == 32);
            CHECK(blk.cols() == 32);
            CHECK((blk - coeffs.block(1 + (j - 1), 1 + (j - 1))).cwiseAbs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("s=1 pairs j with j+1 where both exist") {
        const auto blocks = coeffs.diagonal_blocks(1);
        REQUIRE(blocks.size() == 3);
        CHECK(blocks.front().first == 3);
        CHECK(blocks.back().first == 1);
    }
    SUBCASE("negative shift") {
        CHECK(coeffs.diagonal_blocks(-1).size() == 3);
    }
    SUBCASE("out-of-range shift") {
        CHECK_THROWS_WITH_AS(coeffs.diagonal_blocks(100),
                             doctest::Contains("no valid"),
                             std::invalid_argument);
    }
}

TEST_CASE("per-axis filters behind the dedicated constructor") {
    const auto plan =
        TransformPlan2D(20, 18, 2, 2, get_filter("haar"), get_filter("cdaub6"));
    const auto A = random_matrix(20, 18, 21);
    const CMat back = plan.inverse(plan.forward(A));
    CHECK((back.real() - A).norm() / A.norm() < 1e-8);
}
