#pragma once

#include "pabs/generator.hpp"
#include "pabs/linalg.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace pabs {

struct CampaignOptions {
  int trials = 1;
  int n_max = 8;
  std::uint64_t seed = 0;
  Tolerance tol;
  double check_tol = 1e-9;  // bound on every residual and angle error
  unsigned jobs = 1;
};

struct IdentityStat {
  double max_residual = 0.0;
  std::size_t evaluations = 0;
};

struct CampaignReport {
  CampaignOptions options;
  std::map<std::string, IdentityStat> identities;
  std::size_t count_checks = 0;
  std::vector<std::string> count_mismatches;
  std::vector<std::string> errors;
  double seconds = 0.0;

  bool passed() const;
  // Names of identities whose max residual exceeds options.check_tol.
  std::vector<std::string> failing_identities() const;
};

// Independent RNG stream for trial `trial` of a campaign seeded with `seed`.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);

// The generator spec drawn for one trial: n in [2, n_max], p, q in [1, n],
// r and s within the admissible range, open angles in [0.05, 1.45].
GeneratorSpec random_spec(std::mt19937_64& rng, int n_max);

// Random q x q matrix U diag(sigma) V^H with sigma in [0.5, 2].
Matrix random_invertible(Eigen::Index q, std::mt19937_64& rng);

// Runs every applicable identity on `trials` generated pairs. Throws
// InvalidSpec for trials < 1 or n_max < 2.
CampaignReport run_campaign(const CampaignOptions& options);

}  // namespace pabs
