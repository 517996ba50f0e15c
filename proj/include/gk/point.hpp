#pragma once

#include <gk/linalg.hpp>

#include <string>

namespace gk {

// Bihermitian data (g, I+, I-) on one 2n-dimensional real tangent space.
struct BihermitianPoint {
  int n = 0;
  rmat g, Iplus, Iminus;

  int dim() const { return 2 * n; }
  rmat omega_plus() const { return g * Iplus; }
  rmat omega_minus() const { return g * Iminus; }
};

// worst invariant residual: I^2 + Id, I^T g I - g, g - g^T
double bihermitian_residual(const BihermitianPoint& b);

// Seeded generator.  g = A^T A + 1/2 Id; each I is J0 conjugated by a
// g-orthonormal column matrix, which makes I^2 = -Id and I^T g I = g hold
// to machine precision rather than to a tolerance.
BihermitianPoint random_bihermitian(int n, Rng& rng);
BihermitianPoint kahler_bihermitian(int n, Rng& rng);

// flat block model: I+ = diag(J0, J0), I- = diag(J0, -J0), g = Id
BihermitianPoint commuting_bihermitian(int n1, int n2);

struct GCPair {
  rmat ja, jb;
};

GCPair gualtieri_map(const BihermitianPoint& b);

struct AxiomReport {
  double j_squared = 0;      // max |J^2 + Id| over both structures
  double commutator = 0;     // max |[JA, JB]|
  double pairing_orth = 0;   // max |J^T P J - P|
  double metric_min_eig = 0; // smallest eigenvalue of <JA., JB.>
  bool gk = false;
};

AxiomReport gk_axioms_check(const GCPair& p, double tol = kTolDefault);

// column span of (Id - iJ); requires J^2 = -Id and rank = half the ambient
Subspace plus_i_eigenspace(const rmat& j, double tol = kTolDefault);

// spectral projectors and eigenspaces of an almost complex structure
cmat proj10(const rmat& i);  // 1/2 (Id - i I)
cmat proj01(const rmat& i);  // 1/2 (Id + i I)
Subspace t10(const rmat& i);
Subspace t01(const rmat& i);
Subspace forms10(const rmat& i);       // +i eigenspace of I^T
Subspace tangent_embed(const Subspace& s);   // s ⊂ V as s ⊕ 0 ⊂ V+V*
Subspace form_embed(const Subspace& s);      // s ⊂ V* as 0 ⊕ s
Subspace tt10(const rmat& i);          // T_{1,0} ⊕ (1,0)-forms inside V+V*

struct EllPair {
  Subspace ell_plus, ell_minus;
  double resid_plus = 0, resid_minus = 0;  // gaps against L_A∩L_B, L_A∩conj(L_B)
};

EllPair ell_decomposition(const BihermitianPoint& b);

inline Subspace gauge_transform(const cmat& bfield, const Subspace& l) {
  return gauge_frame(bfield, l);
}

struct RealImagParts {
  Subspace real_part, imag_part;  // real frames stored with complex entries
};

RealImagParts real_imag_parts(const Subspace& l, double tol = kTolDefault);

struct DiracDifference {
  cmat sigma;      // bivector with Gr(sigma) = the difference
  Subspace diff;   // the subspace {X + alpha - beta} itself
};

// Baer difference over a common tangent.  form_proj selects the extension
// of sigma by zero off the form projection of the difference; pass the
// identity when the difference is a graph over all of V*.
DiracDifference dirac_difference(const Subspace& a, const Subspace& b,
                                 const cmat& form_proj,
                                 double tol = kTolDefault);

struct ManinTriples {
  Subspace aplus, bplus, aminus, bminus;
};

ManinTriples manin_triples(const BihermitianPoint& b);

// matched pair L = T^±_{0,1} ⊕ part for the requested side (+1 or -1)
Subspace matched_pair_space(const BihermitianPoint& b, const Subspace& part,
                            int side);

struct GaugeCycleResidual {
  double first = 0;   // L_{A+} vs e^{-i(w+ + w-)} L_{A-}
  double second = 0;  // conj(L_{B-}) vs e^{i(w+ - w-)} L_{B+}
};

GaugeCycleResidual gauge_cycle_check(const BihermitianPoint& b);

struct PoissonTensors {
  rmat pi_a, pi_b, q;
  double consistency = 0;  // |(-pi_A g pi_B) - (-1/4 [I+,I-] g^{-1})|
};

PoissonTensors poisson_tensors(const BihermitianPoint& b);

struct ImagPartReport {
  double ai_plus = 0, bi_plus = 0, ai_minus = 0, bi_minus = 0;
  double ar_plus = 0, br_plus = 0, ar_minus = 0, br_minus = 0;
  double max() const;
};

ImagPartReport imag_part_identities(const BihermitianPoint& b);

struct Reconstruction {
  rmat omega_plus, omega_minus, g;
  double compat1 = 0;  // w+ I± + I∓^T w-
  double compat2 = 0;  // I+^T w+ - I-^T w-
  double mixed = 0;    // I± pi_A - pi_A I∓^T and -I± pi_B - pi_B I∓^T
  std::string verdict; // "GK" or "pseudo-GK"
};

Reconstruction reconstruct_metric(const rmat& pi_a, const rmat& pi_b,
                                  const rmat& iplus, const rmat& iminus);

struct GaugeDataResult {
  rmat omega_plus, omega_minus, beta_plus, beta_minus, g, b;
  double coincide_g = 0;  // |g+ - g-|
  double coincide_b = 0;  // |b+ + b-|
  std::string verdict;    // "GK", "pseudo-GK" or "inconsistent"
};

GaugeDataResult gk_from_gauge_data(const rmat& iplus, const rmat& iminus,
                                   const rmat& f1, const rmat& f2);

}  // namespace gk
