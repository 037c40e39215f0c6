#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>

#include "ndcwt/fbm.hpp"
#include "ndcwt/spectra.hpp"
#include "ndcwt/transform2d.hpp"

namespace ndcwt::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CVec random_signal(Eigen::Index m, unsigned seed) {
    std::mt19937 eng(seed);
    std::normal_distribution<double> g;
    CVec y(m);
    for (Eigen::Index i = 0; i < m; ++i) y[i] = cplx(g(eng), g(eng));
    return y;
}

// straight a-trous cascade, coded from the stage definition
CVec cascade_reference(const CVec& y, const ComplexFilterPair& f, int p) {
    const Eigen::Index m = y.size();
    auto stage = [m](const CVec& x, const std::vector<cplx>& taps, int off,
                     long long dil) {
        CVec out = CVec::Zero(m);
        for (Eigen::Index k = 0; k < m; ++k)
            for (std::size_t t = 0; t < taps.size(); ++t) {
                long long idx = (k + dil * (static_cast<long long>(t) + off)) %
                                static_cast<long long>(m);
                if (idx < 0) idx += m;
                out[k] += std::conj(taps[t]) * x[idx];
            }
        return out;
    };
    CVec a = y;
    CVec out((p + 1) * m);
    for (int s = 0; s < p; ++s) {
        const CVec d = stage(a, f.g, f.g_offset, 1LL << s);
        out.segment((1 + (p - 1 - s)) * m, m) = d;
        a = stage(a, f.h, f.h_offset, 1LL << s);
    }
    out.segment(0, m) = a;
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_suites(bool quick) {
    std::vector<CheckResult> out;

    {  // filter identities
        bool ok = true;
        std::string detail = "haar, cdaub6 pass the pair invariants";
        try {
            for (const auto& name : available_filters()) get_filter(name).validate();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        out.push_back({"filter identities", ok, detail});
    }

    {  // perfect reconstruction round trips
        double worst = 0.0;
        const std::vector<Eigen::Index> sizes =
            quick ? std::vector<Eigen::Index>{64, 100}
                  : std::vector<Eigen::Index>{64, 100, 1000};
        for (const auto& name : available_filters()) {
            const auto f = get_filter(name);
            for (Eigen::Index m : sizes) {
                const int pmax = quick ? 3 : max_depth(m);
                for (int p = 1; p <= pmax; ++p) {
                    const auto plan = TransformPlan1D(m, p, f);
                    const CVec y = random_signal(m, static_cast<unsigned>(m + p));
                    const CVec back = plan.inverse(plan.forward(y));
                    worst = std::max(worst, (back - y).norm() / y.norm());
                }
            }
        }
        out.push_back({"1-D round trip", worst < 1e-8,
                       "max relative error " + fmt(worst)});
    }

    {  // 2-D round trip
        double worst = 0.0;
        for (const auto& name : available_filters()) {
            const auto f = get_filter(name);
            const Eigen::Index m = quick ? 33 : 100, n = quick ? 47 : 60;
            const auto plan = TransformPlan2D(m, n, 3, 3, f);
            std::mt19937 eng(5);
            std::normal_distribution<double> g;
            Eigen::MatrixXd A(m, n);
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < m; ++i) A(i, j) = g(eng);
            const CMat back = plan.inverse(plan.forward(A));
            worst = std::max(worst, (back.real() - A).norm() / A.norm());
            worst = std::max(worst, back.imag().cwiseAbs().maxCoeff());
        }
        out.push_back({"2-D round trip", worst < 1e-8,
                       "max relative error " + fmt(worst)});
    }

    {  // matrix vs cascade
        double worst = 0.0;
        for (const auto& name : available_filters()) {
            const auto f = get_filter(name);
            const Eigen::Index m2 = quick ? 50 : 256;
            for (Eigen::Index m : {Eigen::Index{16}, m2}) {
                const int p = std::min(3, max_depth(m));
                const auto plan = TransformPlan1D(m, p, f);
                const CVec y = random_signal(m, 11);
                const CVec ref = cascade_reference(y, f, p);
                worst = std::max(
                    worst, (plan.forward(y).stacked - ref).cwiseAbs().maxCoeff());
            }
        }
        out.push_back({"matrix vs a-trous cascade", worst < 1e-10,
                       "max elementwise difference " + fmt(worst)});
    }

    {  // weighted energy identity
        const auto plan = TransformPlan1D(100, 4, get_filter("cdaub6"));
        const CVec y = random_signal(100, 3);
        const auto d = plan.forward(y);
        double energy = 0.0;
        for (Eigen::Index i = 0; i < d.stacked.size(); ++i)
            energy += plan.weights()[i] * std::norm(d.stacked[i]);
        const double rel = std::abs(energy - y.squaredNorm()) / y.squaredNorm();
        out.push_back({"weighted energy identity", rel < 1e-8,
                       "relative error " + fmt(rel)});
    }

    {  // estimator smoke: one seeded fBm recovers its H loosely
        const Eigen::Index m = 2048;
        const auto plan = TransformPlan1D(m, 6, get_filter("cdaub6"));
        const Eigen::VectorXd y =
            simulate_fbm_1d({.hurst = 0.5, .length = m, .cols = 0, .seed = 17});
        const auto fit = fit_spectrum(
            logscale_1d(plan.forward(bridge_detrend(y))), {{5, 9}});
        out.push_back({"fBm spectrum smoke", std::abs(fit.hurst - 0.5) < 0.15,
                       "H-hat = " + fmt(fit.hurst) + " for H = 0.5"});
    }

    return out;
}

std::vector<CheckResult> run_bench() {
    std::vector<CheckResult> out;
    const auto f = get_filter("cdaub6");

    {
        const auto plan = TransformPlan1D(1024, 4, f);
        const CVec y = random_signal(1024, 1);
        (void)plan.forward(y);  // warm up
        double best = 1e9;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = Clock::now();
            const auto coeffs = plan.forward(y);
            const double dt = seconds_since(t0);
            best = std::min(best, dt);
            if (coeffs.stacked.size() != 5120) best = 1e9;
        }
        out.push_back({"1-D transform, m=1024 p=4", best < 0.050,
                       fmt(best * 1e3) + " ms (budget 50 ms)"});
    }

    {
        const Eigen::Index n = 1024;
        const auto plan = TransformPlan2D(n, n, 4, 4, f);
        std::mt19937 eng(2);
        std::normal_distribution<double> g;
        Eigen::MatrixXd A(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) A(i, j) = g(eng);
        const auto t0 = Clock::now();
        const auto coeffs = plan.forward(A);
        const double dt = seconds_since(t0);
        const bool shape_ok = coeffs.B.rows() == 5120 && coeffs.B.cols() == 5120;
        out.push_back({"2-D transform, 1024x1024 p=4", shape_ok && dt < 30.0,
                       fmt(dt) + " s (budget 30 s)"});
    }

    return out;
}

bool report(const std::vector<CheckResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all;
}

}  // namespace ndcwt::verify
