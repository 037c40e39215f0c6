#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ndcwt/transform2d.hpp"

namespace ndcwt {

class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One sample per line, either a real value or "re,im". Blank lines and
/// '#' comments are skipped.
CVec read_signal_csv(const std::string& path);

/// Comma-separated matrix, one row per line, '#' comments skipped.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// 8- or 16-bit PGM (P5 binary or P2 ascii), values cast to double;
/// 16-bit binary samples are big-endian per the format.
Eigen::MatrixXd read_pgm(const std::string& path);

/// Dispatch on file magic: PGM when the file starts with P2/P5, CSV otherwise.
Eigen::MatrixXd read_image(const std::string& path);

/// Writers are atomic: content goes to a sibling temp file that is renamed
/// over the target. Comment lines are emitted with a leading "# ".
void write_text_atomic(const std::string& path, const std::string& content);
void write_signal_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const std::vector<std::string>& comments = {});
void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const std::vector<std::string>& comments = {});

/// Binary 2-D coefficient container (see docs/formats.md): 8-byte magic
/// "NDCWT2D\0", u32 version, u32 flags (bit 0: complex64 payload), u64 m, n,
/// u32 p1, p2, u32 filter-name length + bytes, then the row-major payload of
/// (p1+1)m x (p2+1)n re/im pairs. All integers and payload little-endian.
void write_coefficients2d(const std::string& path, const Coefficients2D& coeffs,
                          bool single_precision = false);
Coefficients2D read_coefficients2d(const std::string& path);

}  // namespace ndcwt
