#include "ndcwt/fbm.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "ndcwt/fft.hpp"
#include "ndcwt/rng.hpp"

namespace ndcwt {

namespace {

constexpr Eigen::Index kSizeLimit = Eigen::Index{1} << 18;
constexpr Eigen::Index kCholeskyLimit = 4096;

void check_spec(const FbmSpec& spec) {
    if (!(spec.hurst > 0.0 && spec.hurst < 1.0))
        throw std::invalid_argument("hurst must lie strictly inside (0, 1)");
}

double fgn_autocov(Eigen::Index k, double H) {
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(std::abs(kk + 1.0), 2.0 * H) -
                  2.0 * std::pow(std::abs(kk), 2.0 * H) +
                  std::pow(std::abs(kk - 1.0), 2.0 * H));
}

// Eigenvalues of the circulant embedding of size M (power of two), or empty
// when negative beyond tolerance.
std::vector<double> fgn_eigenvalues(double H, std::size_t M) {
    std::vector<std::complex<double>> c(M);
    for (std::size_t j = 0; j < M; ++j) {
        const auto lag = static_cast<Eigen::Index>(std::min(j, M - j));
        c[j] = fgn_autocov(lag, H);
    }
    fft_pow2(c, false);
    std::vector<double> lam(M);
    double lo = 0.0, hi = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        lam[j] = c[j].real();
        lo = std::min(lo, lam[j]);
        hi = std::max(hi, lam[j]);
    }
    if (lo < -1e-9 * std::max(hi, 1.0)) return {};
    for (double& v : lam) v = std::max(v, 0.0);
    return lam;
}

// Stein's compactly supported covariance c(r) = c0 - r^(2H) + c2 r^2 on
// r <= 1, continued by beta (R - r)^3 / r up to R for 2H > 1.5.
struct SteinParams {
    double R, beta, c0, c2;
};

SteinParams stein_params(double H) {
    const double alpha = 2.0 * H;
    SteinParams p{};
    if (alpha <= 1.5) {
        p.R = 1.0;
        p.beta = 0.0;
        p.c2 = alpha / 2.0;
        p.c0 = 1.0 - alpha / 2.0;
    } else {
        p.R = 2.0;
        p.beta = alpha * (2.0 - alpha) / (3.0 * p.R * (p.R * p.R - 1.0));
        p.c2 = (alpha - p.beta * (p.R - 1.0) * (p.R - 1.0) * (p.R + 2.0)) / 2.0;
        p.c0 = p.beta * (p.R - 1.0) * (p.R - 1.0) * (p.R - 1.0) + 1.0 - p.c2;
    }
    return p;
}

double stein_cov(double r, double H, const SteinParams& p) {
    const double alpha = 2.0 * H;
    if (r <= 1.0) return p.c0 - std::pow(r, alpha) + p.c2 * r * r;
    if (r <= p.R) {
        const double d = p.R - r;
        return p.beta * d * d * d / r;
    }
    return 0.0;
}

Eigen::MatrixXd fbm2d_cholesky(const FbmSpec& spec) {
    const Eigen::Index m = spec.length, n = spec.cols;
    const double H = spec.hurst;
    const Eigen::Index npts = m * n - 1;  // origin pinned to zero
    auto cov = [H](double dx, double dy, double x1, double y1, double x2,
                   double y2) {
        const double a = std::pow(x1 * x1 + y1 * y1, H);
        const double b = std::pow(x2 * x2 + y2 * y2, H);
        const double d = std::pow(dx * dx + dy * dy, H);
        return 0.5 * (a + b - d);
    };
    Eigen::MatrixXd K(npts, npts);
    // column-major point order, origin skipped
    auto coords = [m](Eigen::Index idx) {
        const Eigen::Index flat = idx + 1;
        return std::pair<double, double>(static_cast<double>(flat % m),
                                         static_cast<double>(flat / m));
    };
    for (Eigen::Index b = 0; b < npts; ++b) {
        const auto [xb, yb] = coords(b);
        for (Eigen::Index a = 0; a < npts; ++a) {
            const auto [xa, ya] = coords(a);
            K(a, b) = cov(xa - xb, ya - yb, xa, ya, xb, yb);
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success) {
        K.diagonal().array() += 1e-10 * K.diagonal().maxCoeff();
        llt.compute(K);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("fbm2d: covariance factorization failed");
    }
    GaussianStream gs(spec.seed);
    Eigen::VectorXd g(npts);
    for (Eigen::Index i = 0; i < npts; ++i) g[i] = gs.next();
    const Eigen::VectorXd z = llt.matrixL() * g;
    Eigen::MatrixXd out(m, n);
    out(0, 0) = 0.0;
    for (Eigen::Index idx = 0; idx < npts; ++idx) {
        const Eigen::Index flat = idx + 1;
        out(flat % m, flat / m) = z[idx];
    }
    return out;
}

Eigen::MatrixXd fbm2d_embedding(const FbmSpec& spec) {
    const Eigen::Index m = spec.length, n = spec.cols;
    const double H = spec.hurst;
    const SteinParams prm = stein_params(H);
    const double delta =
        1.0 / std::hypot(static_cast<double>(m - 1), static_cast<double>(n - 1));
    const auto support = static_cast<Eigen::Index>(std::ceil(prm.R / delta)) + 1;

    auto eigenvalues = [&](std::size_t M1, std::size_t M2,
                           Eigen::MatrixXcd& lam) -> bool {
        lam.resize(static_cast<Eigen::Index>(M1), static_cast<Eigen::Index>(M2));
        for (std::size_t j = 0; j < M2; ++j) {
            const double dy = delta * static_cast<double>(std::min(j, M2 - j));
            for (std::size_t i = 0; i < M1; ++i) {
                const double dx = delta * static_cast<double>(std::min(i, M1 - i));
                lam(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    stein_cov(std::hypot(dx, dy), H, prm);
            }
        }
        fft2_pow2(lam, false);
        double lo = 0.0, hi = 0.0;
        for (Eigen::Index j = 0; j < lam.cols(); ++j)
            for (Eigen::Index i = 0; i < lam.rows(); ++i) {
                lo = std::min(lo, lam(i, j).real());
                hi = std::max(hi, lam(i, j).real());
            }
        if (lo < -1e-9 * std::max(hi, 1.0)) return false;
        for (Eigen::Index j = 0; j < lam.cols(); ++j)
            for (Eigen::Index i = 0; i < lam.rows(); ++i)
                lam(i, j) = std::sqrt(std::max(lam(i, j).real(), 0.0));
        return true;
    };

    std::size_t M1 = next_pow2(static_cast<std::size_t>(m - 1 + support));
    std::size_t M2 = next_pow2(static_cast<std::size_t>(n - 1 + support));
    Eigen::MatrixXcd lam;
    if (!eigenvalues(M1, M2, lam)) {
        M1 *= 2;
        M2 *= 2;
        if (!eigenvalues(M1, M2, lam)) {
            if (m * n <= kCholeskyLimit * 4)
                return fbm2d_cholesky(spec);
            throw std::runtime_error(
                "fbm2d: circulant embedding is not nonnegative definite for H = " +
                std::to_string(H));
        }
    }

    GaussianStream gs(spec.seed);
    for (Eigen::Index j = 0; j < lam.cols(); ++j)
        for (Eigen::Index i = 0; i < lam.rows(); ++i) {
            const double a = gs.next();
            const double b = gs.next();
            lam(i, j) *= std::complex<double>(a, b);
        }
    fft2_pow2(lam, true);
    const double scale =
        std::sqrt(static_cast<double>(M1) * static_cast<double>(M2));

    const double xi1 = gs.next();
    const double xi2 = gs.next();
    const double drift = std::sqrt(2.0 * prm.c2) * delta;
    const double norm = std::pow(delta, -H) / std::sqrt(2.0);

    Eigen::MatrixXd out(m, n);
    const double z00 = scale * lam(0, 0).real();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i) {
            const double z = scale * lam(i, j).real();
            out(i, j) = norm * (z - z00 +
                                drift * (static_cast<double>(i) * xi1 +
                                         static_cast<double>(j) * xi2));
        }
    return out;
}

}  // namespace

Eigen::VectorXd simulate_fbm_1d(const FbmSpec& spec) {
    check_spec(spec);
    const Eigen::Index m = spec.length;
    if (m < 1) throw std::invalid_argument("fbm1d: length must be positive");

    std::size_t M = next_pow2(static_cast<std::size_t>(2 * m));
    std::vector<double> lam = fgn_eigenvalues(spec.hurst, M);
    if (lam.empty()) {
        M *= 2;
        lam = fgn_eigenvalues(spec.hurst, M);
        if (lam.empty())
            throw std::runtime_error(
                "fbm1d: circulant embedding is not nonnegative definite");
    }

    GaussianStream gs(spec.seed);
    std::vector<std::complex<double>> w(M);
    for (std::size_t k = 0; k < M; ++k) {
        const double a = gs.next();
        const double b = gs.next();
        w[k] = std::sqrt(lam[k]) * std::complex<double>(a, b);
    }
    fft_pow2(w, true);
    const double scale = std::sqrt(static_cast<double>(M));

    Eigen::VectorXd path(m);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        acc += scale * w[static_cast<std::size_t>(k)].real();
        path[k] = acc;
    }
    return path;
}

Eigen::MatrixXd simulate_fbm_2d(const FbmSpec& spec) {
    check_spec(spec);
    const Eigen::Index m = spec.length, n = spec.cols;
    if (m < 2 || n < 2)
        throw std::invalid_argument("fbm2d: both dimensions must be at least 2");
    if (m * n > kSizeLimit)
        throw std::invalid_argument("fbm2d: size limit exceeded (" +
                                    std::to_string(m) + "x" + std::to_string(n) +
                                    " > 2^18 points)");
    if (m * n <= kCholeskyLimit) return fbm2d_cholesky(spec);
    return fbm2d_embedding(spec);
}

}  // namespace ndcwt
