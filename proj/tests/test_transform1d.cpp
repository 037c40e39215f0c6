#include <doctest.h>

#include <cmath>

#include "ndcwt/transform1d.hpp"
#include "support/oracles.hpp"

using namespace ndcwt;

namespace {

double rel_err(const CVec& got, const CVec& want) {
    return (got - want).norm() / std::max(want.norm(), 1e-300);
}

}  // namespace

TEST_CASE("plan shapes and weight diagonal") {
    SUBCASE("m=8 p=3 haar") {
        const auto plan = TransformPlan1D(8, 3, get_filter("haar"));
        REQUIRE(plan.W().rows() == 32);
        REQUIRE(plan.W().cols() == 8);
        const auto& T = plan.weights();
        REQUIRE(T.size() == 32);
        for (int i = 0; i < 16; ++i) CHECK(T[i] == 1.0 / 8);
        for (int i = 16; i < 24; ++i) CHECK(T[i] == 1.0 / 4);
        for (int i = 24; i < 32; ++i) CHECK(T[i] == 1.0 / 2);
    }
    SUBCASE("m=1024 p=4 cdaub6 -> 5120 coefficients") {
        const auto plan = TransformPlan1D(1024, 4, get_filter("cdaub6"));
        CHECK(plan.W().rows() == 5120);
        const auto coeffs = plan.forward(Eigen::VectorXd::Ones(1024));
        CHECK(coeffs.stacked.size() == 5120);
    }
}

TEST_CASE("validation errors") {
    const auto haar = get_filter("haar");
    CHECK_THROWS_WITH_AS(TransformPlan1D(8, 4, haar),
                         doctest::Contains("depth too large"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(TransformPlan1D(3, 1, get_filter("cdaub6")),
                         doctest::Contains("signal too short"),
                         std::invalid_argument);
    const auto plan = TransformPlan1D(16, 2, haar);
    CHECK_THROWS_WITH_AS(plan.forward(Eigen::VectorXd::Zero(15)),
                         doctest::Contains("length mismatch"),
                         std::invalid_argument);
}

TEST_CASE("W matches brute-force stage-matrix products") {
    for (const auto& name : available_filters()) {
        const auto f = get_filter(name);
        for (const Eigen::Index m : {8, 13, 16}) {
            if (m < f.length()) continue;
            for (int p = 1; p <= std::min(3, max_depth(m)); ++p) {
                CAPTURE(name); CAPTURE(m); CAPTURE(p);
                const auto plan = TransformPlan1D(m, p, f);
                const auto Wref = oracle::brute_force_W(m, p, f);
                CHECK((plan.W() - Wref).cwiseAbs().maxCoeff() < 1e-13);
            }
        }
    }
}

TEST_CASE("perfect reconstruction identity W^H T W = I") {
    for (const auto& name : available_filters()) {
        const auto f = get_filter(name);
        for (const Eigen::Index m : {8, 13, 37, 64, 100}) {
            if (m < f.length()) continue;
            const int pmax = std::min(max_depth(m), 5);
            for (int p = 1; p <= pmax; ++p) {
                CAPTURE(name); CAPTURE(m); CAPTURE(p);
                const auto plan = TransformPlan1D(m, p, f);
                const CMat lhs = plan.W().adjoint() *
                                 plan.weights().cast<cplx>().asDiagonal() *
                                 plan.W();
                CHECK((lhs - CMat::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-8);
            }
        }
    }
}

TEST_CASE("constant input has vanishing details") {
    for (const auto& name : available_filters()) {
        const auto plan = TransformPlan1D(50, 3, get_filter(name));
        const auto coeffs =
            plan.forward(Eigen::VectorXd::Constant(50, 4.25));
        for (int j : coeffs.detail_levels())
            CHECK(coeffs.detail(j).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(coeffs.smooth().cwiseAbs().minCoeff() > 0.1);
    }
}

TEST_CASE("matrix forward agrees with the a-trous cascade oracle") {
    for (const auto& name : available_filters()) {
        const auto f = get_filter(name);
        for (const Eigen::Index m : {16, 100, 256}) {
            const int p = std::min(4, max_depth(m));
            CAPTURE(name); CAPTURE(m); CAPTURE(p);
            const auto plan = TransformPlan1D(m, p, f);
            const CVec y = oracle::random_complex(m, 42 + static_cast<unsigned>(m));
            const auto got = plan.forward(y);
            const CVec want = oracle::atrous_forward_stacked(y, f, p);
            CHECK((got.stacked - want).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("non-dyadic length m=1000") {
    const auto plan = TransformPlan1D(1000, 3, get_filter("cdaub6"));
    const auto coeffs = plan.forward(oracle::random_real(1000, 7));
    CHECK(coeffs.stacked.size() == 4000);
    CHECK(coeffs.J == 10);
    CHECK(coeffs.detail_levels() == std::vector<int>{7, 8, 9});
}

TEST_CASE("round trips") {
    SUBCASE("random complex and real inputs across shapes") {
        for (const auto& name : available_filters()) {
            const auto f = get_filter(name);
            for (const Eigen::Index m : {64, 100, 1024}) {
                const int pmax = max_depth(m);
                for (int p = 1; p <= pmax; p += 3) {
                    CAPTURE(name); CAPTURE(m); CAPTURE(p);
                    const auto plan = TransformPlan1D(m, p, f);
                    const CVec y = oracle::random_complex(m, static_cast<unsigned>(m + p));
                    CHECK(rel_err(plan.inverse(plan.forward(y)), y) < 1e-8);
                }
            }
        }
    }
    SUBCASE("real input reconstructs with tiny imaginary residue") {
        const auto plan = TransformPlan1D(100, 4, get_filter("cdaub6"));
        const Eigen::VectorXd y = oracle::random_real(100, 3);
        const CVec back = plan.inverse(plan.forward(y));
        CHECK(back.imag().cwiseAbs().maxCoeff() < 1e-8);
        CHECK((back.real() - y).norm() / y.norm() < 1e-8);
    }
    SUBCASE("zero coefficients invert to zero") {
        const auto plan = TransformPlan1D(32, 3, get_filter("haar"));
        Coefficients1D zero;
        zero.m = 32;
        zero.p = 3;
        zero.J = 5;
        zero.filter_name = "haar";
        zero.stacked = CVec::Zero(4 * 32);
        CHECK(plan.inverse(zero).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("coefficient shape mismatch") {
        const auto plan = TransformPlan1D(32, 3, get_filter("haar"));
        const auto other = TransformPlan1D(32, 2, get_filter("haar"));
        const auto coeffs = other.forward(Eigen::VectorXd::Ones(32));
        CHECK_THROWS_AS(plan.inverse(coeffs), std::invalid_argument);
    }
}

TEST_CASE("weighted energy identity") {
    const auto plan = TransformPlan1D(100, 4, get_filter("cdaub6"));
    const CVec y = oracle::random_complex(100, 11);
    const auto d = plan.forward(y);
    double energy = 0.0;
    for (Eigen::Index i = 0; i < d.stacked.size(); ++i)
        energy += plan.weights()[i] * std::norm(d.stacked[i]);
    CHECK(energy == doctest::Approx(y.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("translation covariance") {
    const auto f = get_filter("cdaub6");
    const Eigen::Index m = 60;
    const auto plan = TransformPlan1D(m, 3, f);
    const CVec y = oracle::random_complex(m, 5);
    const auto base = plan.forward(y);
    for (const Eigen::Index s : {1, 7, 59}) {
        CVec shifted(m);
        for (Eigen::Index i = 0; i < m; ++i) shifted[i] = y[oracle::wrap(i - s, m)];
        const auto got = plan.forward(shifted);
        // every level block shifts by the same amount
        for (int b = 0; b <= 3; ++b) {
            for (Eigen::Index i = 0; i < m; ++i) {
                const cplx want = base.stacked[b * m + oracle::wrap(i - s, m)];
                CHECK(std::abs(got.stacked[b * m + i] - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("convolution path matches the dense path and round-trips") {
    // same plan parameters, one forced off the dense route by the budget
    const auto f = get_filter("cdaub6");
    const Eigen::Index m = 40000;  // above the 32768 dense cap
    const auto plan = TransformPlan1D(m, 3, f);
    CHECK(!plan.is_dense());
    const CVec y = oracle::random_complex(m, 19);
    const auto coeffs = plan.forward(y);
    CHECK(rel_err(plan.inverse(coeffs), y) < 1e-8);
    const CVec want_big = oracle::atrous_forward_stacked(y, f, 3);
    CHECK((coeffs.stacked - want_big).cwiseAbs().maxCoeff() < 1e-10);

    // spot-check agreement with the dense matrix on a shared sub-size
    const auto small_dense = TransformPlan1D(128, 3, f);
    REQUIRE(small_dense.is_dense());
    const CVec ys = oracle::random_complex(128, 23);
    const CVec want = oracle::atrous_forward_stacked(ys, f, 3);
    CHECK((small_dense.forward(ys).stacked - want).cwiseAbs().maxCoeff() < 1e-10);
}
