#pragma once

#include "pabs/angles.hpp"
#include "pabs/campaign.hpp"
#include "pabs/projectors.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pabs {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitCheckFailed = 1;

// Result of `angles`: route is "cosine", "tangent:<ID>" or "qr".
struct AngleReport {
  std::string route;
  AngleSpectrum angles;
  HalmosDims dims;
  ResidualMap residuals;
  double seconds = 0.0;
};

// Fixed field set: route, angles, zero_count, right_angle_count, dims
// {r, s, m01, m10, m11}, residuals, timing_seconds.
nlohmann::ordered_json to_json(const AngleReport& report);

// Fixed field set: trials, n_max, seed, check_tol, passed, count_checks,
// count_mismatches, errors, identities {name: {max_residual, evaluations}},
// timing_seconds.
nlohmann::ordered_json to_json(const CampaignReport& report);

// Computes the angles between range(x_raw) and range(y_raw) by the requested
// route. Tangent routes pass y_raw unchanged so the rank guard applies.
AngleReport compute_angles(const Matrix& x_raw, const Matrix& y_raw,
                           const std::string& route, const Tolerance& tol);

// Entry point of the `pabs` tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pabs
