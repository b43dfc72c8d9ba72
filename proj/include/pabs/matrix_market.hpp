#pragma once

#include "pabs/linalg.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pabs {

class MatrixMarketError : public std::runtime_error {
 public:
  MatrixMarketError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class MatrixMarketLayout { Array, Coordinate };

// Reads array or coordinate files with real, integer, pattern or complex
// fields and general, symmetric, skew-symmetric or hermitian symmetry.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market(const std::filesystem::path& path);

// Writes a general matrix, real field when every imaginary part is zero,
// values printed with 17 significant digits.
void write_matrix_market(std::ostream& out, const Matrix& a,
                         MatrixMarketLayout layout = MatrixMarketLayout::Array);
void write_matrix_market(const std::filesystem::path& path, const Matrix& a,
                         MatrixMarketLayout layout = MatrixMarketLayout::Array);

}  // namespace pabs
