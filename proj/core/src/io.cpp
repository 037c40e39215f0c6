#include "ndcwt/io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ndcwt/transform1d.hpp"

namespace ndcwt {

namespace {

std::vector<std::string> read_data_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (!blank) lines.push_back(line);
    }
    return lines;
}

std::vector<double> parse_csv_row(const std::string& line, const std::string& path) {
    std::vector<double> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw io_error("bad numeric cell '" + cell + "' in " + path);
        }
    }
    return out;
}

template <typename T>
void put_le(std::string& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.append(tmp, sizeof(T));
}

template <typename T>
T get_le(const char*& p, const char* end) {
    if (p + sizeof(T) > end) throw io_error("truncated coefficient file");
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

void rename_over(const std::string& tmp, const std::string& path) {
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw io_error("cannot write " + path + ": " + ec.message());
    }
}

void write_binary_atomic(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw io_error("short write to " + tmp);
    }
    rename_over(tmp, path);
}

constexpr char kMagic[8] = {'N', 'D', 'C', 'W', 'T', '2', 'D', '\0'};

}  // namespace

CVec read_signal_csv(const std::string& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) throw io_error("no samples in " + path);
    CVec y(static_cast<Eigen::Index>(lines.size()));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto cells = parse_csv_row(lines[i], path);
        if (cells.size() == 1) {
            y[static_cast<Eigen::Index>(i)] = cplx(cells[0], 0.0);
        } else if (cells.size() == 2) {
            y[static_cast<Eigen::Index>(i)] = cplx(cells[0], cells[1]);
        } else {
            throw io_error("signal line must have 1 or 2 values in " + path);
        }
    }
    return y;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto lines = read_data_lines(path);
    if (lines.empty()) throw io_error("no rows in " + path);
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size());
    for (const auto& ln : lines) rows.push_back(parse_csv_row(ln, path));
    const std::size_t n = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != n) throw io_error("ragged rows in " + path);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    return A;
}

Eigen::MatrixXd read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2") throw io_error(path + " is not a PGM file");
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw io_error("truncated PGM header in " + path);
    };
    const long width = std::stol(next_token());
    const long height = std::stol(next_token());
    const long maxval = std::stol(next_token());
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw io_error("bad PGM header in " + path);
    Eigen::MatrixXd A(height, width);
    if (magic == "P2") {
        for (long r = 0; r < height; ++r)
            for (long c = 0; c < width; ++c) A(r, c) = std::stod(next_token());
        return A;
    }
    in.get();  // single whitespace after maxval
    const bool wide = maxval > 255;
    const std::size_t need =
        static_cast<std::size_t>(width) * height * (wide ? 2 : 1);
    std::string buf(need, '\0');
    in.read(buf.data(), static_cast<std::streamsize>(need));
    if (static_cast<std::size_t>(in.gcount()) != need)
        throw io_error("truncated PGM payload in " + path);
    const auto* bytes = reinterpret_cast<const unsigned char*>(buf.data());
    std::size_t idx = 0;
    for (long r = 0; r < height; ++r)
        for (long c = 0; c < width; ++c) {
            if (wide) {
                A(r, c) = static_cast<double>(bytes[idx] << 8 | bytes[idx + 1]);
                idx += 2;
            } else {
                A(r, c) = static_cast<double>(bytes[idx++]);
            }
        }
    return A;
}

Eigen::MatrixXd read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    char head[2] = {0, 0};
    in.read(head, 2);
    in.close();
    if (head[0] == 'P' && (head[1] == '5' || head[1] == '2')) return read_pgm(path);
    return read_matrix_csv(path);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw io_error("short write to " + tmp);
    }
    rename_over(tmp, path);
}

void write_signal_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const std::vector<std::string>& comments) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& c : comments) out << "# " << c << "\n";
    for (Eigen::Index i = 0; i < y.size(); ++i) out << y[i] << "\n";
    write_text_atomic(path, out.str());
}

void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::MatrixXd>& A,
                      const std::vector<std::string>& comments) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& c : comments) out << "# " << c << "\n";
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        for (Eigen::Index c = 0; c < A.cols(); ++c) {
            if (c) out << ',';
            out << A(r, c);
        }
        out << "\n";
    }
    write_text_atomic(path, out.str());
}

void write_coefficients2d(const std::string& path, const Coefficients2D& coeffs,
                          bool single_precision) {
    std::string buf;
    const auto rows = coeffs.B.rows(), cols = coeffs.B.cols();
    buf.reserve(64 + static_cast<std::size_t>(rows) * cols *
                         (single_precision ? 8 : 16));
    buf.append(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(buf, 1);                          // version
    put_le<std::uint32_t>(buf, single_precision ? 1u : 0u); // flags
    put_le<std::uint64_t>(buf, static_cast<std::uint64_t>(coeffs.m));
    put_le<std::uint64_t>(buf, static_cast<std::uint64_t>(coeffs.n));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(coeffs.p1));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(coeffs.p2));
    put_le<std::uint32_t>(buf,
                          static_cast<std::uint32_t>(coeffs.filter_name.size()));
    buf.append(coeffs.filter_name);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const cplx v = coeffs.B(r, c);
            if (single_precision) {
                put_le<float>(buf, static_cast<float>(v.real()));
                put_le<float>(buf, static_cast<float>(v.imag()));
            } else {
                put_le<double>(buf, v.real());
                put_le<double>(buf, v.imag());
            }
        }
    write_binary_atomic(path, buf);
}

Coefficients2D read_coefficients2d(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    const char* p = bytes.data();
    const char* end = p + bytes.size();
    if (bytes.size() < sizeof(kMagic) ||
        std::memcmp(p, kMagic, sizeof(kMagic)) != 0)
        throw io_error(path + " is not an NDCWT2D coefficient file");
    p += sizeof(kMagic);
    const auto version = get_le<std::uint32_t>(p, end);
    if (version != 1)
        throw io_error("unsupported coefficient file version " +
                       std::to_string(version));
    const auto flags = get_le<std::uint32_t>(p, end);
    const bool single = (flags & 1u) != 0;
    Coefficients2D coeffs;
    coeffs.m = static_cast<Eigen::Index>(get_le<std::uint64_t>(p, end));
    coeffs.n = static_cast<Eigen::Index>(get_le<std::uint64_t>(p, end));
    coeffs.p1 = static_cast<int>(get_le<std::uint32_t>(p, end));
    coeffs.p2 = static_cast<int>(get_le<std::uint32_t>(p, end));
    const auto name_len = get_le<std::uint32_t>(p, end);
    if (p + name_len > end) throw io_error("truncated coefficient file");
    coeffs.filter_name.assign(p, name_len);
    p += name_len;
    coeffs.J = max_depth(std::min(coeffs.m, coeffs.n));
    const Eigen::Index rows = (coeffs.p1 + 1) * coeffs.m;
    const Eigen::Index cols = (coeffs.p2 + 1) * coeffs.n;
    coeffs.B.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double re, im;
            if (single) {
                re = get_le<float>(p, end);
                im = get_le<float>(p, end);
            } else {
                re = get_le<double>(p, end);
                im = get_le<double>(p, end);
            }
            coeffs.B(r, c) = cplx(re, im);
        }
    if (p != end) throw io_error("trailing bytes in " + path);
    return coeffs;
}

}  // namespace ndcwt
