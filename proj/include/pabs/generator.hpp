#pragma once

#include "pabs/angles.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pabs {

// A pair with prescribed principal angles: r zeros, then `angles_open`
// (each in (0, pi/2)), then min(p, q) - r - |angles_open| right angles.
struct GeneratorSpec {
  long n = 0;
  long p = 0;
  long q = 0;
  long r = 0;
  std::vector<double> angles_open;
  std::uint64_t seed = 0;

  // Throws InvalidSpec unless r + |angles_open| <= min(p, q),
  // n >= p + q - r, 1 <= p, q <= n and every angle lies in (0, pi/2).
  void validate() const;

  // The five intersection dimensions the construction produces.
  HalmosDims dims() const;

  // Ascending list of all min(p, q) prescribed angles.
  std::vector<double> prescribed_angles() const;
};

struct GeneratedPair {
  Subspace x;
  Subspace y;
  Matrix d;  // [X X⊥]^H [Y Y⊥] as assembled, n x n
};

// Haar-distributed n x n unitary from a complex Gaussian matrix via QR with
// the diagonal phase correction.
Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng);

// Complex Gaussian matrix with entries of unit variance.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

// The block matrix with identity, cosine, sine and zero blocks laid out as
// rows (r, s, p-r-s | n-p-q+r, s, q-r-s), columns (r, s, q-r-s | n-p-q+r, s, p-r-s).
Matrix csd_block_matrix(const GeneratorSpec& spec);

// [X X⊥] = Q and [Y Y⊥] = Q D with Q Haar-random from spec.seed.
GeneratedPair generate_pair(const GeneratorSpec& spec);

}  // namespace pabs
