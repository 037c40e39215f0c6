#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ndcwt {

using cplx = std::complex<double>;

/// Quadrature-mirror pair of complex filter taps.
///
/// Taps are stored densely; `h[i]` is the tap at integer index `i + h_offset`
/// (and likewise for `g`), so the mirror relation g_k = (-1)^k conj(h_{1-k})
/// can be checked with explicit index arithmetic. Low-pass taps sum to
/// sqrt(2); shifted-by-two self products are orthonormal. Instances are
/// immutable after construction and safe to share across threads.
struct ComplexFilterPair {
    std::string name;
    std::vector<cplx> h;  ///< low-pass taps
    std::vector<cplx> g;  ///< high-pass taps
    int h_offset = 0;     ///< index of h[0]
    int g_offset = 0;     ///< index of g[0]

    int length() const { return static_cast<int>(h.size()); }

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;
};

/// g_k = (-1)^k conj(h_{1-k}). Returns the taps and the offset of the first
/// one. Applying the map twice negates the input (global sign convention).
std::pair<std::vector<cplx>, int> derive_highpass(const std::vector<cplx>& h,
                                                  int h_offset);

/// A-trous upsampling: 2^level - 1 zeros between consecutive taps.
/// level 0 is the identity.
std::vector<cplx> dilate_filter(const std::vector<cplx>& taps, int level);

/// Look up a registered filter ("haar", "cdaub6"). The returned pair has
/// passed validate(). Throws std::invalid_argument for unknown names,
/// listing what is available.
ComplexFilterPair get_filter(const std::string& name);

std::vector<std::string> available_filters();

/// Parse a low-pass filter from a text file: one "re im" pair per line,
/// blank lines and '#' comments ignored. An optional leading line
/// "offset <int>" places the first tap (default 0). The high-pass half is
/// derived and the result validated.
ComplexFilterPair load_filter_file(const std::string& path);

}  // namespace ndcwt
