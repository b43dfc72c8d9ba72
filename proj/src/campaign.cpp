#include "pabs/campaign.hpp"

#include "pabs/error.hpp"
#include "pabs/projectors.hpp"
#include "pabs/tangent.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

namespace pabs {

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> positive_part(const RealVector& s, const Tolerance& tol,
                                  const Matrix& t) {
  std::vector<double> out;
  if (s.size() == 0) return out;
  const double cut = tol.rank_threshold(t, std::max(s(0), 1.0));
  for (Eigen::Index k = 0; k < s.size() && s(k) > cut; ++k) out.push_back(s(k));
  return out;
}

struct TrialResult {
  std::vector<std::pair<std::string, double>> residuals;
  std::size_t count_checks = 0;
  std::vector<std::string> count_mismatches;
  std::vector<std::string> errors;
};

class Trial {
 public:
  Trial(int index, const CampaignOptions& opt) : index_(index), opt_(opt) {}

  TrialResult run();

 private:
  void residual(const std::string& name, double v) { out_.residuals.emplace_back(name, v); }

  void count(const std::string& name, long got, long want) {
    ++out_.count_checks;
    if (got != want) {
      out_.count_mismatches.push_back(prefix() + name + ": got " + std::to_string(got) +
                                      ", want " + std::to_string(want));
    }
  }

  // Runs one check group; a thrown Error becomes a reported failure.
  void guard(const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      out_.errors.push_back(prefix() + name + ": " + std::string(e.class_name()) + ": " +
                            e.what());
    }
  }

  std::string prefix() const {
    return "trial " + std::to_string(index_) + " (n=" + std::to_string(spec_.n) +
           " p=" + std::to_string(spec_.p) + " q=" + std::to_string(spec_.q) +
           " r=" + std::to_string(spec_.r) + " s=" +
           std::to_string(spec_.angles_open.size()) + "): ";
  }

  int index_;
  const CampaignOptions& opt_;
  GeneratorSpec spec_;
  TrialResult out_;
};

TrialResult Trial::run() {
  std::mt19937_64 rng = trial_stream(opt_.seed, static_cast<std::uint64_t>(index_));
  spec_ = random_spec(rng, opt_.n_max);
  const Tolerance& tol = opt_.tol;

  const GeneratedPair pair = generate_pair(spec_);
  const Subspace& X = pair.x;
  const Subspace& Y = pair.y;
  const long n = spec_.n, p = spec_.p, q = spec_.q;
  const std::size_t m = static_cast<std::size_t>(std::min(p, q));
  const std::vector<double> want = spec_.prescribed_angles();
  const HalmosDims want_dims = spec_.dims();
  const bool acute = want_dims.m01 == 0 || want_dims.m10 == 0;

  AngleSpectrum cosine;
  HalmosDims dims;
  try {
    cosine = cos_pabs(X, Y, tol);
    dims = halmos_dims(cosine, n, p, q);
  } catch (const Error& e) {
    out_.errors.push_back(prefix() + "cosine: " + std::string(e.class_name()) + ": " + e.what());
    return out_;
  }
  residual("generator.angles", max_abs_diff(cosine.angles, want));
  count("halmos.r", dims.r, want_dims.r);
  count("halmos.s", dims.s, want_dims.s);
  count("halmos.m01", dims.m01, want_dims.m01);
  count("halmos.m10", dims.m10, want_dims.m10);
  count("halmos.m11", dims.m11, want_dims.m11);

  guard("symmetry", [&] {
    residual("cosine.symmetry", max_abs_diff(cos_pabs(Y, X, tol).angles, cosine.angles));
  });
  guard("unitary_invariance", [&] {
    const Matrix U = haar_unitary(n, rng);
    const AngleSpectrum rotated =
        cos_pabs(Subspace(U * X.basis()), Subspace(U * Y.basis()), tol);
    residual("cosine.unitary_invariance", max_abs_diff(rotated.angles, cosine.angles));
  });
  guard("principal_vectors", [&] {
    const PrincipalVectors pv = principal_vectors(X, Y);
    double err = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const double c = std::abs(pv.x.col(kk).dot(pv.y.col(kk)));
      err = std::max(err, std::abs(c - std::cos(want[k])));
    }
    residual("principal_vectors.cos", err);
    residual("principal_vectors.orth_x", orthonormality_residual(pv.x));
    residual("principal_vectors.orth_y", orthonormality_residual(pv.y));
  });

  // Every member of the tangent family, orthonormal bases.
  for (FormulaId f : all_formulas()) {
    if (needs_acute_angles(f) && (!acute || !dim_order_ok(f, p, q))) continue;
    const std::string name(formula_name(f));
    guard("formula." + name, [&] {
      const Matrix T = build_T(X, Y.basis(), f, tol);
      const TangentSpectrum ts = tangent_spectrum(T, dims, m, tol);
      count("formula." + name + ".positive", static_cast<long>(ts.finite.size()), want_dims.s);
      count("formula." + name + ".infinite", static_cast<long>(ts.infinite_count),
            std::min(want_dims.m10, want_dims.m01));
      count("formula." + name + ".zero", static_cast<long>(ts.zero_count), want_dims.r);
      residual("formula." + name, max_abs_diff(angles_from_tangents(ts).angles, want));
      residual("transpose." + name,
               max_abs_diff(positive_part(singular_values(T), tol, T),
                            positive_part(singular_values(T.adjoint()), tol, T)));
    });
  }

  guard("sign", [&] {
    residual("sign.B1_B7", (build_T(X, Y.basis(), FormulaId::B1, tol) +
                            build_T(X, Y.basis(), FormulaId::B7, tol)).norm());
    residual("sign.B3_B8", (build_T(X, Y.basis(), FormulaId::B3, tol) +
                            build_T(X, Y.basis(), FormulaId::B8, tol)).norm());
  });

  // Projector identities.
  guard("projectors", [&] {
    const Subspace Xp = X.complement(tol);
    const Subspace Yp = Y.complement(tol);
    const Matrix PX = orthogonal_projector(X).matrix;
    const Matrix PY = orthogonal_projector(Y).matrix;
    const Matrix PXp = orthogonal_projector(Xp).matrix;
    const Matrix PYp = orthogonal_projector(Yp).matrix;
    const ObliqueProjector W = oblique_projector(X, Y, tol);
    for (const auto& [k, v] : oblique_contract_residuals(X, Y, W)) residual("oblique." + k, v);

    const Matrix t41 = PXp * W.matrix;
    const Matrix t41a = PYp * pinv(PY * PX, tol);
    const Matrix t41b = PX * pinv(PXp * PYp, tol);
    const Matrix py_pypxp = PY * pinv(PYp * PXp, tol);
    residual("chain.t41_pxperp_py_w", (t41 - PXp * PY * W.matrix).norm());
    residual("chain.t41_c1", (t41 - (PY - PX) * W.matrix).norm());
    residual("chain.t41_basis",
             (t41 - PXp * Y.basis() * pinv(X.basis().adjoint() * Y.basis(), tol) *
                        X.basis().adjoint()).norm());
    residual("chain.t41_neg_t41b_h", (t41 + t41b.adjoint()).norm());
    residual("chain.t41b_c4", (t41b - PX * PYp * pinv(PXp * PYp, tol)).norm());
    residual("chain.t41b_c2", (t41b - (PYp - PXp) * pinv(PXp * PYp, tol)).norm());
    residual("chain.t41a_neg_h", (t41a + py_pypxp.adjoint()).norm());
    residual("chain.t41a_c3", (t41a - (PX - PY) * pinv(PY * PX, tol)).norm());

    // P_X P_Y annihilates Y⊥ and Y ∩ X⊥; its rank is q - dim(Y ∩ X⊥).
    const Matrix pxpy = PX * PY;
    residual("nullspace.yperp", (pxpy * Yp.basis()).norm());
    const SvdResult f = svd(X.basis().adjoint() * Y.basis());
    const Matrix y_cap_xperp =
        Y.basis() * f.right.rightCols(static_cast<Eigen::Index>(want_dims.m10));
    residual("nullspace.y_cap_xperp", (pxpy * y_cap_xperp).norm());
    count("nullspace.rank", static_cast<long>(numerical_rank(pxpy, tol)), q - want_dims.m10);
    // range W = Y ∩ (Y ∩ X⊥)⊥; angles stay away from pi/2 so the rank is unambiguous.
    residual("oblique.range", (W.matrix * pinv(W.matrix, tol) -
                               (PY - y_cap_xperp * y_cap_xperp.adjoint())).norm());

    // Block factorisation of P_X P_Y through the unitary bases.
    Matrix left(n, n), right(n, n);
    left << X.basis(), Xp.basis();
    right << Y.basis(), Yp.basis();
    Matrix middle = Matrix::Zero(n, n);
    middle.topLeftCorner(p, q) = X.basis().adjoint() * Y.basis();
    residual("factorization.pxpy", (left * middle * right.adjoint() - pxpy).norm());
    Matrix middle_pinv = Matrix::Zero(n, n);
    middle_pinv.topLeftCorner(q, p) = pinv(X.basis().adjoint() * Y.basis(), tol);
    residual("factorization.pxpy_pinv",
             (right * middle_pinv * left.adjoint() - W.matrix).norm());
  });

  if (acute) {
    guard("lemma44", [&] {
      for (const auto& [k, v] : lemma44_residuals(X, Y, tol)) residual("lemma44." + k, v);
    });
  }

  for (ComplementPair which :
       {ComplementPair::PerpPerp, ComplementPair::XYPerp, ComplementPair::XPerpY}) {
    const std::string name = "property21." + std::string(complement_pair_name(which));
    guard(name, [&] {
      const AngleSpectrum padded = complement_spectrum(cosine, dims, n, which);
      const Subspace a = which == ComplementPair::XYPerp ? X : X.complement(tol);
      const Subspace b = which == ComplementPair::XPerpY ? Y : Y.complement(tol);
      const AngleSpectrum direct = cos_pabs(a, b, tol);
      residual(name, max_abs_diff(padded.angles, direct.angles));
      count(name + ".zero", static_cast<long>(padded.zero_count),
            static_cast<long>(direct.zero_count));
      count(name + ".right", static_cast<long>(padded.right_angle_count),
            static_cast<long>(direct.right_angle_count));
    });
  }

  guard("csd", [&] {
    const CsdReport csd = csd_structure_check(X, Y, tol);
    for (const auto& b : csd.blocks) residual("csd." + b.name, b.residual);
    residual("csd.unitarity", csd.unitarity_residual);
  });

  // Routes that need a non-orthonormal basis and no right angles.
  if (acute) {
    const Matrix GX = random_invertible(p, rng);
    const Matrix GY = random_invertible(q, rng);
    const Matrix x_raw = X.basis() * GX;
    const Matrix y_raw = Y.basis() * GY;

    guard("qr", [&] {
      const TangentSpectrum ts = q <= p ? qr_tangent(x_raw, y_raw, tol)
                                        : qr_tangent(y_raw, x_raw, tol);
      count("qr.zero", static_cast<long>(ts.zero_count), want_dims.r);
      residual("qr.angles", max_abs_diff(angles_from_tangents(ts).angles, want));
    });

    if (q <= p) {
      for (FormulaId f : {FormulaId::B1, FormulaId::B2, FormulaId::P1, FormulaId::P2}) {
        const std::string name(formula_name(f));
        guard("case_ii." + name, [&] {
          count("case_ii." + name + ".classified",
                static_cast<long>(check_rank_condition(X, y_raw, tol)),
                static_cast<long>(RankCase::CaseII));
          residual("case_ii." + name,
                   (build_T(X, y_raw, f, tol) - build_T(X, Y.basis(), f, tol)).norm());
        });
      }
      guard("z", [&] {
        const ZConstruction zc = build_Z(X, y_raw, tol);
        for (const auto& [k, v] : z_identity_residuals(X, y_raw, zc)) residual("z." + k, v);
        const AngleSpectrum xz = cos_pabs(X, Subspace::from_span(zc.z, tol), tol);
        std::vector<double> open_xz, open_xy;
        for (std::size_t k = xz.zero_count; k < xz.zero_count + xz.open_count(); ++k) {
          open_xz.push_back(xz.angles[k]);
        }
        for (std::size_t k = cosine.zero_count; k < cosine.zero_count + cosine.open_count(); ++k) {
          open_xy.push_back(cosine.angles[k]);
        }
        residual("z.open_angles", max_abs_diff(open_xz, open_xy));
        if (p == q) residual("z.angles", max_abs_diff(xz.angles, cosine.angles));
      });
    }
  }
  return out_;
}

}  // namespace

bool CampaignReport::passed() const {
  return errors.empty() && count_mismatches.empty() && failing_identities().empty();
}

std::vector<std::string> CampaignReport::failing_identities() const {
  std::vector<std::string> out;
  for (const auto& [name, stat] : identities) {
    if (!(stat.max_residual <= options.check_tol)) out.push_back(name);
  }
  return out;
}

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

GeneratorSpec random_spec(std::mt19937_64& rng, int n_max) {
  auto uniform = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  GeneratorSpec s;
  s.n = uniform(2, n_max);
  s.p = uniform(1, s.n);
  s.q = uniform(1, s.n);
  const long m = std::min(s.p, s.q);
  s.r = uniform(std::max(0L, s.p + s.q - s.n), m);
  const long open = uniform(0, m - s.r);
  std::uniform_real_distribution<double> angle(0.05, 1.45);
  for (long k = 0; k < open; ++k) s.angles_open.push_back(angle(rng));
  s.seed = rng();
  return s;
}

Matrix random_invertible(Eigen::Index q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sigma(0.5, 2.0);
  RealVector d(q);
  for (Eigen::Index k = 0; k < q; ++k) d(k) = sigma(rng);
  const Matrix U = haar_unitary(q, rng);
  const Matrix V = haar_unitary(q, rng);
  return U * d.cast<Complex>().asDiagonal() * V.adjoint();
}

CampaignReport run_campaign(const CampaignOptions& options) {
  if (options.trials < 1) throw Error(ErrorClass::InvalidSpec, "verify: trials must be >= 1");
  if (options.n_max < 2) throw Error(ErrorClass::InvalidSpec, "verify: n_max must be >= 2");
  options.tol.validate();

  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialResult> results(static_cast<std::size_t>(options.trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < options.trials; t = next++) {
      results[static_cast<std::size_t>(t)] = Trial(t, options).run();
    }
  };
  const unsigned jobs = std::clamp<unsigned>(options.jobs, 1u, static_cast<unsigned>(options.trials));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  CampaignReport report;
  report.options = options;
  for (const TrialResult& r : results) {
    for (const auto& [name, v] : r.residuals) {
      IdentityStat& stat = report.identities[name];
      ++stat.evaluations;
      // A NaN residual sticks so that it fails the check.
      if (std::isnan(stat.max_residual)) continue;
      if (std::isnan(v) || v > stat.max_residual) stat.max_residual = v;
    }
    report.count_checks += r.count_checks;
    report.count_mismatches.insert(report.count_mismatches.end(), r.count_mismatches.begin(),
                                   r.count_mismatches.end());
    report.errors.insert(report.errors.end(), r.errors.begin(), r.errors.end());
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace pabs
