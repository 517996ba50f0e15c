#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gk {

// One named check inside a suite run.  pass means the residual is finite
// and at most the tolerance; wall_ms is informational and excluded from
// the deterministic serializations.
struct CaseRecord {
  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
};

// A full verification run: the named cases plus the convention constants
// the formulas leave open (d^c calibration c0, Cartan constant c, dressing
// form normalization c_z).  Suites that do not measure a constant leave it
// at zero; the group suite measures all three through calibration cases
// that run first.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config;
  double c0 = 0.0;
  double c_cartan = 0.0;
  double c_z = 0.0;
  std::vector<CaseRecord> cases;

  bool pass() const;
};

// Pointwise battery: axioms, Manin triples, matched pairs, gauge cycle,
// Hitchin identity and the metric reconstruction roundtrip, aggregated
// over seeded bihermitian points of complex dimension n.  tol <= 0 keeps
// the per-case defaults; tol > 0 replaces every tolerance.
SuiteReport run_point_suite(int seeds, int n, double tol, std::uint64_t seed);

// Group battery on SU(2) x R: d^c calibration, Cartan 3-form fit, the GK
// property of the invariant bihermitian data in exponential charts at FD
// step h, factorization roundtrips, dressing laws and the dressing 2-form
// fit.
SuiteReport run_group_suite(int samples, double h, std::uint64_t seed);

// Annulus moduli battery: antisymmetry, stratum multiplicativity for both
// groupoid structures, real-structure equivariance, the interchange law,
// the three printed boundary families and the bisection pullbacks.
SuiteReport run_moduli_suite(int seeds, std::uint64_t seed);

// Hopf potential battery on a grid x grid window: generating property,
// path-integral cross-check, the pinned dilogarithm constants and the
// Re-Lagrangian property of the graph.
SuiteReport run_hopf_suite(int grid, std::uint64_t seed);

// Commuting-type deformation on flat C x C with f = eps * Gaussian at
// parameter t: GK verification, positivity margin and the exact identity
// at f = 0.
SuiteReport run_deform_suite(double t, double eps, std::uint64_t seed);

// Replaces every case tolerance and recomputes the pass flags (the --tol /
// GK_DEFAULT_TOL override).
void override_tolerances(SuiteReport& r, double tol);

// Deterministic serializations: identical reports produce identical bytes.
// Wall times are included only on request.
std::string report_json(const SuiteReport& r, bool include_walls = false);
std::string report_csv(const SuiteReport& r, bool include_walls = false);

}  // namespace gk
