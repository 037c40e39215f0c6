#include "ndcwt/complex_filter.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ndcwt {

namespace {

constexpr double kMirrorTol = 1e-12;
constexpr double kSumTol = 1e-10;
constexpr double kOrthoTol = 1e-10;

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

ComplexFilterPair make_haar() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexFilterPair f;
    f.name = "haar";
    f.h = {cplx(r, 0.0), cplx(r, 0.0)};
    f.h_offset = 0;
    auto [g, goff] = derive_highpass(f.h, f.h_offset);
    f.g = std::move(g);
    f.g_offset = goff;
    return f;
}

// Symmetric complex Daubechies, 6 taps, three vanishing moments.
// Spectral factorization of 1 + 3y + 6y^2 at the root y = (-3 + i sqrt15)/12,
// keeping the reciprocal root pair of one conjugate branch; the binomial part
// is (1+z)^3 / 8. A global unit phase makes the tap sum exactly sqrt(2).
ComplexFilterPair make_cdaub6() {
    const double gamma = std::sqrt(15.0) / 3.0;
    // taps proportional to conv([1,3,3,1], [1, -(3 - gamma i), 1]):
    //   [1, gamma i, -5 + 3 gamma i, -5 + 3 gamma i, gamma i, 1]
    const cplx c0(1.0, 0.0);
    const cplx c1(0.0, gamma);
    const cplx c2(-5.0, 3.0 * gamma);
    const cplx scale = std::sqrt(2.0) * 3.0 / 64.0 * cplx(-1.0, -gamma);
    ComplexFilterPair f;
    f.name = "cdaub6";
    f.h = {scale * c0, scale * c1, scale * c2, scale * c2, scale * c1, scale * c0};
    f.h_offset = -2;  // symmetric about 1/2: h_k = h_{1-k}
    auto [g, goff] = derive_highpass(f.h, f.h_offset);
    f.g = std::move(g);
    f.g_offset = goff;
    return f;
}

}  // namespace

void ComplexFilterPair::validate() const {
    const int L = length();
    if (L == 0) throw std::invalid_argument("filter '" + name + "': empty taps");
    if (g.size() != h.size())
        throw std::invalid_argument("filter '" + name + "': len(g) != len(h)");

    // g_k = (-1)^k conj(h_{1-k})
    for (int i = 0; i < L; ++i) {
        const int k = i + g_offset;
        const int hj = (1 - k) - h_offset;
        if (hj < 0 || hj >= L)
            throw std::invalid_argument("filter '" + name +
                                        "': mirror index out of support");
        const cplx want = sign_pow(k) * std::conj(h[hj]);
        if (std::abs(g[i] - want) > kMirrorTol)
            throw std::invalid_argument("filter '" + name +
                                        "': quadrature mirror relation violated");
    }

    cplx hsum{};
    for (const cplx& v : h) hsum += v;
    if (std::abs(hsum - std::sqrt(2.0)) > kSumTol)
        throw std::invalid_argument("filter '" + name + "': sum(h) != sqrt(2)");

    for (int l = -(L / 2); l <= L / 2; ++l) {
        cplx acc{};
        for (int i = 0; i < L; ++i) {
            const int j = i + 2 * l;
            if (j >= 0 && j < L) acc += h[i] * std::conj(h[j]);
        }
        const double want = (l == 0) ? 1.0 : 0.0;
        if (std::abs(acc - want) > kOrthoTol)
            throw std::invalid_argument("filter '" + name +
                                        "': shift-2 orthonormality violated");
    }

    cplx gsum{};
    for (const cplx& v : g) gsum += v;
    if (std::abs(gsum) > kSumTol)
        throw std::invalid_argument("filter '" + name + "': sum(g) != 0");
}

std::pair<std::vector<cplx>, int> derive_highpass(const std::vector<cplx>& h,
                                                  int h_offset) {
    if (h.empty()) throw std::invalid_argument("derive_highpass: empty taps");
    const int L = static_cast<int>(h.size());
    // support of g: k with 1-k in [h_offset, h_offset+L-1]
    const int g_offset = 1 - (h_offset + L - 1);
    std::vector<cplx> g(L);
    for (int i = 0; i < L; ++i) {
        const int k = i + g_offset;
        g[i] = sign_pow(k) * std::conj(h[(1 - k) - h_offset]);
    }
    return {std::move(g), g_offset};
}

std::vector<cplx> dilate_filter(const std::vector<cplx>& taps, int level) {
    if (level < 0) throw std::invalid_argument("dilate_filter: level < 0");
    if (level == 0 || taps.empty()) return taps;
    const std::size_t step = std::size_t{1} << level;
    std::vector<cplx> out((taps.size() - 1) * step + 1, cplx{});
    for (std::size_t i = 0; i < taps.size(); ++i) out[i * step] = taps[i];
    return out;
}

ComplexFilterPair get_filter(const std::string& name) {
    ComplexFilterPair f;
    if (name == "haar") {
        f = make_haar();
    } else if (name == "cdaub6") {
        f = make_cdaub6();
    } else {
        std::string avail;
        for (const auto& n : available_filters()) {
            if (!avail.empty()) avail += ", ";
            avail += n;
        }
        throw std::invalid_argument("unknown filter '" + name +
                                    "' (available: " + avail + ")");
    }
    f.validate();
    return f;
}

std::vector<std::string> available_filters() { return {"haar", "cdaub6"}; }

ComplexFilterPair load_filter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open filter file: " + path);
    ComplexFilterPair f;
    f.name = path;
    f.h_offset = 0;
    std::string line;
    bool saw_offset = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!saw_offset && f.h.empty() && first == "offset") {
            if (!(ls >> f.h_offset))
                throw std::invalid_argument("filter file: bad offset line");
            saw_offset = true;
            continue;
        }
        double re = 0.0, im = 0.0;
        try {
            re = std::stod(first);
        } catch (const std::exception&) {
            throw std::invalid_argument("filter file: bad tap line '" + line + "'");
        }
        if (!(ls >> im))
            throw std::invalid_argument("filter file: tap line needs 're im': '" +
                                        line + "'");
        f.h.emplace_back(re, im);
    }
    if (f.h.empty()) throw std::invalid_argument("filter file: no taps in " + path);
    auto [g, goff] = derive_highpass(f.h, f.h_offset);
    f.g = std::move(g);
    f.g_offset = goff;
    f.validate();
    return f;
}

}  // namespace ndcwt
