#include "pabs/matrix_market.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace pabs {

namespace {

enum class Field { Real, Complex, Pattern };
enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw MatrixMarketError(line, "cannot parse number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) {
    throw MatrixMarketError(line, "non-finite value '" + std::string(tok) + "'");
  }
  return v;
}

long parse_index(std::string_view tok, std::size_t line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) {
    throw MatrixMarketError(line, "cannot parse size or index '" + std::string(tok) + "'");
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

// Next non-comment, non-blank line. Returns false at end of input.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split(line);
    if (toks.empty() || toks.front().front() == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw MatrixMarketError(1, "empty input");
  ++lineno;

  const auto head = split(line);
  if (head.size() != 5 || lower(std::string(head[0])) != "%%matrixmarket" ||
      lower(std::string(head[1])) != "matrix") {
    throw MatrixMarketError(lineno, "expected '%%MatrixMarket matrix <layout> <field> <symmetry>'");
  }
  const std::string layout_s = lower(std::string(head[2]));
  const std::string field_s = lower(std::string(head[3]));
  const std::string sym_s = lower(std::string(head[4]));

  MatrixMarketLayout layout;
  if (layout_s == "array") {
    layout = MatrixMarketLayout::Array;
  } else if (layout_s == "coordinate") {
    layout = MatrixMarketLayout::Coordinate;
  } else {
    throw MatrixMarketError(lineno, "unknown layout '" + layout_s + "'");
  }

  Field field;
  if (field_s == "real" || field_s == "double" || field_s == "integer") {
    field = Field::Real;
  } else if (field_s == "complex") {
    field = Field::Complex;
  } else if (field_s == "pattern" && layout == MatrixMarketLayout::Coordinate) {
    field = Field::Pattern;
  } else {
    throw MatrixMarketError(lineno, "unsupported field '" + field_s + "'");
  }

  Symmetry sym;
  if (sym_s == "general") {
    sym = Symmetry::General;
  } else if (sym_s == "symmetric") {
    sym = Symmetry::Symmetric;
  } else if (sym_s == "skew-symmetric") {
    sym = Symmetry::SkewSymmetric;
  } else if (sym_s == "hermitian" && field == Field::Complex) {
    sym = Symmetry::Hermitian;
  } else {
    throw MatrixMarketError(lineno, "unsupported symmetry '" + sym_s + "'");
  }

  if (!next_data_line(in, line, lineno)) {
    throw MatrixMarketError(lineno, "missing size line");
  }
  const auto size_toks = split(line);
  const std::size_t want = layout == MatrixMarketLayout::Array ? 2 : 3;
  if (size_toks.size() != want) {
    throw MatrixMarketError(lineno, "size line must have " + std::to_string(want) + " entries");
  }
  const long rows = parse_index(size_toks[0], lineno);
  const long cols = parse_index(size_toks[1], lineno);
  if (sym != Symmetry::General && rows != cols) {
    throw MatrixMarketError(lineno, "symmetric storage requires a square matrix");
  }

  const std::size_t values_per_entry = field == Field::Complex ? 2 : (field == Field::Pattern ? 0 : 1);
  auto read_value = [&](const std::vector<std::string_view>& toks, std::size_t offset) {
    if (toks.size() != offset + values_per_entry) {
      throw MatrixMarketError(lineno, "expected " + std::to_string(offset + values_per_entry) +
                                          " fields, found " + std::to_string(toks.size()));
    }
    switch (field) {
      case Field::Real: return Complex(parse_double(toks[offset], lineno), 0.0);
      case Field::Complex:
        return Complex(parse_double(toks[offset], lineno), parse_double(toks[offset + 1], lineno));
      case Field::Pattern: return Complex(1.0, 0.0);
    }
    return Complex();
  };
  auto mirror = [&](Matrix& m, long i, long j, Complex v) {
    if (i == j) return;
    switch (sym) {
      case Symmetry::General: break;
      case Symmetry::Symmetric: m(j, i) = v; break;
      case Symmetry::SkewSymmetric: m(j, i) = -v; break;
      case Symmetry::Hermitian: m(j, i) = std::conj(v); break;
    }
  };

  Matrix m = Matrix::Zero(rows, cols);
  if (layout == MatrixMarketLayout::Array) {
    // Column-major; symmetric variants store the lower triangle only.
    for (long j = 0; j < cols; ++j) {
      const long first = (sym == Symmetry::General) ? 0
                         : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
      for (long i = first; i < rows; ++i) {
        if (!next_data_line(in, line, lineno)) {
          throw MatrixMarketError(lineno, "unexpected end of data (dimension header mismatch)");
        }
        const Complex v = read_value(split(line), 0);
        m(i, j) = v;
        mirror(m, i, j, v);
      }
    }
  } else {
    const long nnz = parse_index(size_toks[2], lineno);
    for (long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line, lineno)) {
        throw MatrixMarketError(lineno, "unexpected end of data (dimension header mismatch)");
      }
      const auto toks = split(line);
      if (toks.size() < 2) throw MatrixMarketError(lineno, "missing indices");
      const long i = parse_index(toks[0], lineno) - 1;
      const long j = parse_index(toks[1], lineno) - 1;
      if (i < 0 || i >= rows || j < 0 || j >= cols) {
        throw MatrixMarketError(lineno, "index out of range");
      }
      const Complex v = read_value(toks, 2);
      m(i, j) = v;
      mirror(m, i, j, v);
    }
  }
  if (next_data_line(in, line, lineno)) {
    throw MatrixMarketError(lineno, "trailing data beyond declared size");
  }
  return m;
}

Matrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError(0, "cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& a, MatrixMarketLayout layout) {
  const bool complex = (a.imag().array() != 0.0).any();
  const char* field = complex ? "complex" : "real";
  auto entry = [&](Complex v) {
    std::string s = format_double(v.real());
    if (complex) s += " " + format_double(v.imag());
    return s;
  };

  if (layout == MatrixMarketLayout::Array) {
    out << "%%MatrixMarket matrix array " << field << " general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) out << entry(a(i, j)) << '\n';
    }
    return;
  }

  Eigen::Index nnz = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) nnz += a(i, j) != Complex(0.0, 0.0);
  }
  out << "%%MatrixMarket matrix coordinate " << field << " general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) {
        out << i + 1 << ' ' << j + 1 << ' ' << entry(a(i, j)) << '\n';
      }
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a,
                         MatrixMarketLayout layout) {
  std::ofstream out(path);
  if (!out) throw MatrixMarketError(0, "cannot write '" + path.string() + "'");
  write_matrix_market(out, a, layout);
}

}  // namespace pabs
