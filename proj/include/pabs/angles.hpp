#pragma once

#include "pabs/linalg.hpp"

#include <string_view>
#include <vector>

namespace pabs {

// A subspace of C^n represented by an orthonormal basis.
class Subspace {
 public:
  // Validates basis^H basis = I within tol.orth.
  explicit Subspace(Matrix basis, const Tolerance& tol = {});

  // range(a), orthonormalised. Throws EmptySubspace for rank-0 input.
  static Subspace from_span(const Matrix& a, const Tolerance& tol = {});

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  // Orthogonal complement in C^n (may be zero-dimensional).
  Subspace complement(const Tolerance& tol = {}) const;

 private:
  Matrix basis_;
};

// Principal angles in ascending order together with the number classified as
// exactly 0 and exactly pi/2.
struct AngleSpectrum {
  std::vector<double> angles;
  std::size_t zero_count = 0;
  std::size_t right_angle_count = 0;
  double angle_class = 0.0;

  std::size_t size() const { return angles.size(); }
  std::size_t open_count() const {
    return angles.size() - zero_count - right_angle_count;
  }
  std::vector<double> descending() const;
};

// Dimensions of the five-way orthogonal split of C^n induced by a pair.
struct HalmosDims {
  long r = 0;    // dim(X ∩ Y)
  long s = 0;    // angles in (0, pi/2)
  long m01 = 0;  // dim(X ∩ Y⊥)
  long m10 = 0;  // dim(X⊥ ∩ Y)
  long m11 = 0;  // dim(X⊥ ∩ Y⊥)

  long p() const { return r + s + m01; }
  long q() const { return r + s + m10; }
  long n() const { return m11 + p() + q() - r; }

  friend bool operator==(const HalmosDims&, const HalmosDims&) = default;
};

struct PrincipalVectors {
  Matrix x;  // n x m
  Matrix y;  // n x m, column k paired with x column k
};

enum class ComplementPair { PerpPerp, XYPerp, XPerpY };

std::string_view complement_pair_name(ComplementPair which);

AngleSpectrum cos_pabs(const Subspace& x, const Subspace& y,
                       const Tolerance& tol = {});

PrincipalVectors principal_vectors(const Subspace& x, const Subspace& y);

HalmosDims halmos_dims(const Subspace& x, const Subspace& y,
                       const Tolerance& tol = {});

// Same as above from an already computed spectrum of the pair.
HalmosDims halmos_dims(const AngleSpectrum& spec, long n, long p, long q);

// Angles of a complemented pair obtained only from the padding and
// reflection rules relating them to the angles of (X, Y).
AngleSpectrum complement_spectrum(const AngleSpectrum& spec,
                                  const HalmosDims& dims, long n,
                                  ComplementPair which);

// Builds an AngleSpectrum from raw cosines (any order, values clamped into
// [0, 1] before arccos).
AngleSpectrum spectrum_from_cosines(const RealVector& cosines,
                                    const Tolerance& tol);

}  // namespace pabs
