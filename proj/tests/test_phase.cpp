#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ndcwt/fbm.hpp"
#include "ndcwt/phase.hpp"
#include "support/oracles.hpp"

using namespace ndcwt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("coefficient_phase quadrants and conventions") {
    CHECK(coefficient_phase(cplx(1, 1)) == doctest::Approx(kPi / 4));
    CHECK(coefficient_phase(cplx(-1, 0)) == doctest::Approx(kPi));  // branch edge
    CHECK(coefficient_phase(cplx(-1, -1)) == doctest::Approx(-3 * kPi / 4));
    CHECK(coefficient_phase(cplx(0, -2)) == doctest::Approx(-kPi / 2));
    CHECK(coefficient_phase(cplx(0, 0)) == 0.0);

    SUBCASE("conjugation negates away from the branch edge") {
        for (double th : {0.3, -1.2, 2.9}) {
            const cplx z = std::polar(2.0, th);
            CHECK(coefficient_phase(std::conj(z)) ==
                  doctest::Approx(-coefficient_phase(z)));
        }
    }
    SUBCASE("positive real scaling preserves the phase") {
        const cplx z(0.6, -1.1);
        for (double a : {0.25, 3.0, 1e6})
            CHECK(std::abs(coefficient_phase(a * z) - coefficient_phase(z)) <
                  1e-12);
    }
}

TEST_CASE("1-D phase averages") {
    const auto plan = TransformPlan1D(16, 2, get_filter("haar"));
    auto coeffs = plan.forward(Eigen::VectorXd::Zero(16));

    SUBCASE("mean of {pi/4, -pi/4} phases is zero") {
        for (int j : coeffs.detail_levels()) {
            auto d = coeffs.detail(j);
            for (Eigen::Index k = 0; k < d.size(); ++k)
                d[k] = (k % 2 == 0) ? cplx(1, 1) : cplx(1, -1);
        }
        const auto ph = phase_averages_1d(coeffs);
        REQUIRE(ph.per_level.size() == 2);
        for (const auto& lvl : ph.per_level) {
            CHECK(lvl.mean == doctest::Approx(0.0));
            CHECK(lvl.count == 16);
            CHECK(lvl.zero_count == 0);
        }
    }
    SUBCASE("zero coefficients contribute 0 and are tallied") {
        coeffs.stacked.setZero();
        coeffs.detail(3)[0] = cplx(0, 1);
        const auto ph = phase_averages_1d(coeffs);
        CHECK(ph.per_level[1].zero_count == 15);
        CHECK(ph.per_level[1].mean == doctest::Approx(kPi / 2 / 16));
        CHECK(ph.per_level[0].zero_count == 16);
        CHECK(ph.per_level[0].mean == 0.0);
    }
}

TEST_CASE("real filter on real input keeps means inside [0, pi]") {
    const auto plan = TransformPlan1D(128, 3, get_filter("haar"));
    const auto coeffs = plan.forward(oracle::random_real(128, 17));
    const auto ph = phase_averages_1d(coeffs);
    for (const auto& lvl : ph.per_level) {
        CHECK(lvl.mean >= 0.0);
        CHECK(lvl.mean <= kPi);
    }
    // and each individual phase is 0 or pi
    for (int j : coeffs.detail_levels()) {
        const auto d = coeffs.detail(j);
        for (Eigen::Index k = 0; k < d.size(); ++k) {
            const double p = coefficient_phase(d[k]);
            CHECK((p == 0.0 || p == doctest::Approx(kPi)));
        }
    }
}

TEST_CASE("arithmetic mean reproduces exactly from per-coefficient phases") {
    const auto plan = TransformPlan1D(100, 4, get_filter("cdaub6"));
    const auto coeffs = plan.forward(oracle::random_real(100, 8));
    const auto ph = phase_averages_1d(coeffs);
    for (std::size_t li = 0; li < ph.per_level.size(); ++li) {
        const int j = coeffs.detail_levels()[li];
        const auto d = coeffs.detail(j);
        double acc = 0.0;
        for (Eigen::Index k = 0; k < d.size(); ++k) acc += coefficient_phase(d[k]);
        CHECK(ph.per_level[li].mean == acc / static_cast<double>(d.size()));
    }
}

TEST_CASE("input scaling leaves phase averages put") {
    const Eigen::VectorXd y =
        simulate_fbm_1d({.hurst = 0.4, .length = 512, .cols = 0, .seed = 21});
    const auto plan = TransformPlan1D(512, 4, get_filter("cdaub6"));
    const auto base = phase_averages_1d(plan.forward(y));
    const auto scaled = phase_averages_1d(plan.forward((7.25 * y).eval()));
    for (std::size_t i = 0; i < base.per_level.size(); ++i)
        CHECK(std::abs(base.per_level[i].mean - scaled.per_level[i].mean) < 1e-12);
}

TEST_CASE("2-D phase averages") {
    const auto plan = TransformPlan2D(16, 12, 2, 2, get_filter("haar"));
    auto coeffs = plan.forward(Eigen::MatrixXd::Zero(16, 12));

    SUBCASE("uniform 1+i block means pi/4") {
        coeffs.B.setConstant(cplx(1, 1));
        const auto ph = phase_averages_2d(coeffs, 0);
        REQUIRE(ph.per_level.size() == 2);
        for (const auto& lvl : ph.per_level) {
            CHECK(lvl.mean == doctest::Approx(kPi / 4));
            CHECK(lvl.count == 16 * 12);
        }
    }
    SUBCASE("conjugated blocks negate the mean off the branch edge") {
        std::mt19937 eng(5);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (Eigen::Index c = 0; c < coeffs.B.cols(); ++c)
            for (Eigen::Index r = 0; r < coeffs.B.rows(); ++r)
                coeffs.B(r, c) = cplx(1.0 + std::abs(u(eng)), u(eng));
        const auto ph = phase_averages_2d(coeffs, 0);
        auto conj_coeffs = coeffs;
        conj_coeffs.B = coeffs.B.conjugate();
        const auto phc = phase_averages_2d(conj_coeffs, 0);
        for (std::size_t i = 0; i < ph.per_level.size(); ++i)
            CHECK(phc.per_level[i].mean ==
                  doctest::Approx(-ph.per_level[i].mean).epsilon(1e-12));
    }
    SUBCASE("2-D fBm means stay within [-pi, pi]") {
        const Eigen::MatrixXd A = simulate_fbm_2d(
            {.hurst = 0.5, .length = 128, .cols = 128, .seed = 3});
        const auto plan128 = TransformPlan2D(128, 128, 4, 4, get_filter("cdaub6"));
        const auto ph = phase_averages_2d(plan128.forward(A), 0);
        REQUIRE(ph.per_level.size() == 4);
        for (const auto& lvl : ph.per_level) {
            CHECK(std::isfinite(lvl.mean));
            CHECK(std::abs(lvl.mean) <= kPi);
        }
    }
    SUBCASE("shift out of range") {
        CHECK_THROWS_AS(phase_averages_2d(coeffs, 9), std::invalid_argument);
    }
}

TEST_CASE("circular mean variant stays behind its flag") {
    const auto plan = TransformPlan1D(64, 3, get_filter("cdaub6"));
    const auto coeffs = plan.forward(oracle::random_real(64, 2));
    const auto arith = phase_averages_1d(coeffs, false);
    const auto circ = phase_averages_1d(coeffs, true);
    CHECK(!arith.circular);
    CHECK(circ.circular);
    for (const auto& lvl : circ.per_level) CHECK(std::abs(lvl.mean) <= kPi);
}
