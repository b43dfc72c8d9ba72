#include "pabs/cli.hpp"

#include "pabs/error.hpp"
#include "pabs/generator.hpp"
#include "pabs/matrix_market.hpp"
#include "pabs/tangent.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pabs {

namespace {

using ordered_json = nlohmann::ordered_json;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ordered_json dims_json(const HalmosDims& d) {
  return {{"r", d.r}, {"s", d.s}, {"m01", d.m01}, {"m10", d.m10}, {"m11", d.m11}};
}

struct TolFlags {
  double rank_rel = 0.0;  // 0 keeps the size-dependent default
  double rank_abs = Tolerance{}.rank_abs;
  double orth = Tolerance{}.orth;
  double angle_class = Tolerance{}.angle_class;

  void attach(CLI::App& app) {
    app.add_option("--tol-rank", rank_rel, "relative rank threshold (default max(m,n)*eps)");
    app.add_option("--tol-abs", rank_abs, "absolute rank floor");
    app.add_option("--tol-orth", orth, "orthonormality residual bound");
    app.add_option("--tol-class", angle_class, "threshold classifying angles as 0 or pi/2");
  }

  Tolerance resolve() const {
    Tolerance tol;
    if (rank_rel != 0.0) tol.rank_rel = rank_rel;
    tol.rank_abs = rank_abs;
    tol.orth = orth;
    tol.angle_class = angle_class;
    tol.validate();
    return tol;
  }
};

void print_table(std::ostream& out, const AngleReport& r) {
  out << "route: " << r.route << '\n';
  out << "dims:  r=" << r.dims.r << " s=" << r.dims.s << " m01=" << r.dims.m01
      << " m10=" << r.dims.m10 << " m11=" << r.dims.m11 << '\n';
  out << std::setw(4) << "k" << std::setw(26) << "angle (rad)" << std::setw(26) << "degrees"
      << '\n';
  out << std::setprecision(17);
  for (std::size_t k = 0; k < r.angles.size(); ++k) {
    const double a = r.angles.angles[k];
    out << std::setw(4) << k + 1 << std::setw(26) << a << std::setw(26)
        << a * 180.0 / std::numbers::pi << '\n';
  }
  for (const auto& [name, v] : r.residuals) out << "residual " << name << ": " << v << '\n';
}

void print_campaign(std::ostream& out, const CampaignReport& r) {
  out << "trials " << r.options.trials << ", n_max " << r.options.n_max << ", seed "
      << r.options.seed << ", tolerance " << r.options.check_tol << '\n';
  out << std::setprecision(3) << std::scientific;
  for (const auto& [name, s] : r.identities) {
    out << (s.max_residual <= r.options.check_tol ? "  ok   " : "  FAIL ") << std::left
        << std::setw(36) << name << std::right << ' ' << s.max_residual << "  ("
        << s.evaluations << " evaluations)\n";
  }
  out << std::defaultfloat;
  out << "count checks: " << r.count_checks << ", mismatches: " << r.count_mismatches.size()
      << ", errors: " << r.errors.size() << '\n';
  for (const auto& m : r.count_mismatches) out << "  mismatch: " << m << '\n';
  for (const auto& e : r.errors) out << "  error: " << e << '\n';
  out << (r.passed() ? "PASS" : "FAIL") << '\n';
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw Error(ErrorClass::InvalidSpec, "cannot parse angle '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

ordered_json to_json(const AngleReport& report) {
  ordered_json j;
  j["route"] = report.route;
  j["angles"] = report.angles.angles;
  j["zero_count"] = report.angles.zero_count;
  j["right_angle_count"] = report.angles.right_angle_count;
  j["dims"] = dims_json(report.dims);
  j["residuals"] = ordered_json::object();
  for (const auto& [k, v] : report.residuals) j["residuals"][k] = v;
  j["timing_seconds"] = report.seconds;
  return j;
}

ordered_json to_json(const CampaignReport& report) {
  ordered_json j;
  j["trials"] = report.options.trials;
  j["n_max"] = report.options.n_max;
  j["seed"] = report.options.seed;
  j["check_tol"] = report.options.check_tol;
  j["passed"] = report.passed();
  j["count_checks"] = report.count_checks;
  j["count_mismatches"] = report.count_mismatches;
  j["errors"] = report.errors;
  j["identities"] = ordered_json::object();
  for (const auto& [name, s] : report.identities) {
    j["identities"][name] = {{"max_residual", s.max_residual}, {"evaluations", s.evaluations}};
  }
  j["timing_seconds"] = report.seconds;
  return j;
}

AngleReport compute_angles(const Matrix& x_raw, const Matrix& y_raw, const std::string& route,
                           const Tolerance& tol) {
  const auto start = std::chrono::steady_clock::now();
  if (x_raw.rows() != y_raw.rows()) {
    throw Error(ErrorClass::DimMismatch, "X and Y have different row counts");
  }
  const Subspace x = Subspace::from_span(x_raw, tol);
  const Subspace y = Subspace::from_span(y_raw, tol);
  const AngleSpectrum cosine = cos_pabs(x, y, tol);
  const long n = static_cast<long>(x.ambient_dim());
  const long p = static_cast<long>(x.dim());
  const long q = static_cast<long>(y.dim());

  AngleReport report;
  report.route = route;
  report.dims = halmos_dims(cosine, n, p, q);

  if (route == "cosine") {
    report.angles = cosine;
    const PrincipalVectors pv = principal_vectors(x, y);
    double err = 0.0;
    for (Eigen::Index k = 0; k < pv.x.cols(); ++k) {
      const double c = std::abs(pv.x.col(k).dot(pv.y.col(k)));
      err = std::max(err, std::abs(c - std::cos(cosine.angles[static_cast<std::size_t>(k)])));
    }
    report.residuals["principal_vectors_cos"] = err;
  } else if (route == "qr") {
    const TangentSpectrum ts = y_raw.cols() <= x_raw.cols() ? qr_tangent(x_raw, y_raw, tol)
                                                            : qr_tangent(y_raw, x_raw, tol);
    report.angles = angles_from_tangents(ts);
    report.angles.angle_class = tol.angle_class;
    report.residuals["vs_cosine_max_abs"] = max_abs_diff(report.angles.angles, cosine.angles);
  } else if (route.rfind("tangent:", 0) == 0) {
    const std::string id = route.substr(8);
    const auto formula = parse_formula(id);
    if (!formula) throw Error(ErrorClass::InvalidSpec, "unknown formula '" + id + "'");
    const Matrix t = build_T(x, y_raw, *formula, tol);
    const TangentSpectrum ts =
        tangent_spectrum(t, report.dims, static_cast<std::size_t>(std::min(p, q)), tol);
    report.angles = angles_from_tangents(ts);
    report.angles.angle_class = tol.angle_class;
    report.residuals["vs_cosine_max_abs"] = max_abs_diff(report.angles.angles, cosine.angles);
  } else {
    throw Error(ErrorClass::InvalidSpec, "unknown route '" + route + "'");
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Principal angles between subspaces: cosine, tangent and QR routes"};
  app.require_subcommand(1);

  TolFlags tol_flags;
  bool json = false;

  std::string x_path, y_path, route = "cosine";
  CLI::App* angles = app.add_subcommand("angles", "angles between range(X) and range(Y)");
  angles->add_option("--x", x_path, "Matrix Market file for X")->required();
  angles->add_option("--y", y_path, "Matrix Market file for Y")->required();
  angles->add_option("--route", route, "cosine | tangent:<ID> | qr");
  angles->add_flag("--json", json, "emit JSON");
  tol_flags.attach(*angles);

  GeneratorSpec gen;
  std::string angle_list, prefix = "pair";
  CLI::App* generate = app.add_subcommand("generate", "write a pair with prescribed angles");
  generate->add_option("--n", gen.n, "ambient dimension")->required();
  generate->add_option("--p", gen.p, "dim X")->required();
  generate->add_option("--q", gen.q, "dim Y")->required();
  generate->add_option("--r", gen.r, "dim of the intersection");
  generate->add_option("--angles", angle_list, "comma-separated angles in (0, pi/2)");
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("--out-prefix", prefix, "writes <prefix>_X.mtx and <prefix>_Y.mtx");

  CampaignOptions campaign;
  CLI::App* verify = app.add_subcommand("verify", "randomised cross-formula campaign");
  verify->add_option("--trials", campaign.trials, "number of generated pairs")
      ->check(CLI::PositiveNumber);
  verify->add_option("--n-max", campaign.n_max, "largest ambient dimension")
      ->check(CLI::Range(2, 1 << 12));
  verify->add_option("--seed", campaign.seed, "campaign seed");
  verify->add_option("--check-tol", campaign.check_tol, "residual bound");
  verify->add_option("--jobs", campaign.jobs, "worker threads");
  verify->add_flag("--json", json, "emit JSON");
  tol_flags.attach(*verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*angles) {
      const Tolerance tol = tol_flags.resolve();
      const Matrix x_raw = read_matrix_market(std::filesystem::path(x_path));
      const Matrix y_raw = read_matrix_market(std::filesystem::path(y_path));
      const AngleReport report = compute_angles(x_raw, y_raw, route, tol);
      if (json) {
        out << to_json(report).dump(2) << '\n';
      } else {
        print_table(out, report);
      }
      return kExitOk;
    }
    if (*generate) {
      gen.angles_open = parse_angle_list(angle_list);
      const GeneratedPair pair = generate_pair(gen);
      write_matrix_market(std::filesystem::path(prefix + "_X.mtx"), pair.x.basis());
      write_matrix_market(std::filesystem::path(prefix + "_Y.mtx"), pair.y.basis());
      const HalmosDims d = gen.dims();
      out << "wrote " << prefix << "_X.mtx and " << prefix << "_Y.mtx (r=" << d.r
          << " s=" << d.s << " m01=" << d.m01 << " m10=" << d.m10 << " m11=" << d.m11
          << ")\n";
      return kExitOk;
    }
    campaign.tol = tol_flags.resolve();
    const CampaignReport report = run_campaign(campaign);
    if (json) {
      out << to_json(report).dump(2) << '\n';
    } else {
      print_campaign(out, report);
    }
    return report.passed() ? kExitOk : kExitCheckFailed;
  } catch (const MatrixMarketError& e) {
    err << "error [PARSE]: " << e.what() << '\n';
    if (json) out << ordered_json{{"error", "PARSE"}, {"message", e.what()}}.dump() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << e.class_name() << "]: " << e.what() << '\n';
    if (json) {
      out << ordered_json{{"error", std::string(e.class_name())}, {"message", e.what()}}.dump()
          << '\n';
    }
    return is_precondition(e.error_class()) ? kExitPrecondition : kExitUsage;
  }
}

}  // namespace pabs
