#pragma once

#include <gk/chart.hpp>
#include <gk/point.hpp>

#include <array>
#include <vector>

namespace gk {

using cmat2 = Eigen::Matrix2cd;

// Element of G = SL2(C) x C; z is the cover coordinate of the second factor,
// so multiplication adds it.
struct GElem {
  cmat2 A = cmat2::Identity();
  cplx z = 0.0;
};

// Element of K = SU(2) x R.  K sits inside G through (U, t) -> (U, it): the
// real factor covers U(1) along the imaginary axis, which is what makes the
// basis vector v = i unit length for s_R.
struct KElem {
  cmat2 U = cmat2::Identity();
  double t = 0.0;
};

// Pair (X, u) in sl2(C) + C.
struct AlgVec {
  cmat2 X = cmat2::Zero();
  cplx u = 0.0;
};

GElem gmul(const GElem& a, const GElem& b);
GElem ginv(const GElem& a);
KElem kmul(const KElem& a, const KElem& b);
KElem kinv(const KElem& a);
GElem embed(const KElem& k);

double det_residual(const GElem& g);
double unitary_residual(const KElem& k);

AlgVec avec_add(const AlgVec& a, const AlgVec& b);
AlgVec avec_scale(cplx s, const AlgVec& a);
AlgVec bracket(const AlgVec& a, const AlgVec& b);
double avec_norm(const AlgVec& a);

// s_C((X,u),(Y,v)) = -1/2 tr(XY) - uv
cplx pairing(const AlgVec& a, const AlgVec& b);
double s_r(const AlgVec& a, const AlgVec& b);
double s_i(const AlgVec& a, const AlgVec& b);

// (u1, u2, u3, v): s_R-orthonormal basis of the compact algebra k.
const std::array<AlgVec, 4>& kbasis();

AlgVec k_from_coords(const rvec& c);
// coordinates in kbasis(); throws when a is not in k within tol
rvec coords_from_k(const AlgVec& a, double tol = kTolDefault);

// Complex structure on k with +i / -i eigenspaces equal to the tangent
// algebras of the triangular subgroups G+ / G-.
AlgVec algebra_I(const AlgVec& a);
const rmat& algebra_I_matrix();

// C-basis {nilpotent, torus} of the Lagrangian subalgebra g_sign.
std::array<AlgVec, 2> lagrangian_basis(int sign);

// closed-form exponential of a traceless 2x2 matrix
cmat2 exp2(const cmat2& m);
GElem gexp(const AlgVec& a);
KElem kexp(const rvec& c);

AlgVec ad_g(const GElem& g, const AlgVec& a);
rmat ad_matrix(const KElem& k);  // Ad_k on k in kbasis() coordinates

GElem theta(const GElem& g);           // (A, z) -> ((A^dag)^-1, -conj z)
AlgVec dtheta(const AlgVec& a);        // (X, u) -> (-X^dag, -conj u)

// -1 when A is upper triangular with diag (e^{iz}, e^{-iz}), +1 for the
// lower mirror with diag (e^{-iz}, e^{iz}); throws when neither fits.
int shape_sign(const GElem& g, double tol = 1e-8);
double shape_residual(const GElem& g, int sign);

struct Factorization {
  GElem b;
  KElem k;
};
Factorization factorize(const GElem& g, int sign);       // g = b k
Factorization factorize_left(const GElem& g, int sign);  // g = k b

struct Dressing {
  KElem k;  // {}^x k
  GElem x;  // x^k
};
Dressing dressing(const GElem& x, const KElem& k);

// ({}^{exp(s a)}k)' at s = 0 in right-invariant kbasis() coordinates,
// computed from the exact splitting g = k + Ad_k(g_sign).
rvec infinitesimal_dressing(const AlgVec& a, const KElem& k);
rvec dressing_vector_fd(const AlgVec& a, const KElem& k, double h = 1e-5);

// (g, I+, I-) = (Id, I^r, I^l) at k in the right-invariant frame.
BihermitianPoint invariant_gk_at(const KElem& k);
rmat pi_z_matrix(const KElem& k);  // (I^l - I^r) g^{-1} / 2

// Exponential chart x -> exp(x) k0 in the right-invariant frame.
rmat chart_jacobian(const rvec& x);  // (e^{ad_x} - 1)/ad_x
BihermitianChart group_chart(const KElem& k0);

struct CartanFit {
  double c = 0.0;
  double fit_residual = 0.0;  // max |H - c s([.,.],.)| at the identity
  double dc_sum = 0.0;        // max |d^c+ w+ + d^c- w-| over samples
  double c_drift = 0.0;       // max relative variation of c over samples
};
CartanFit cartan_form_check(const std::vector<rvec>& samples,
                            const FDConfig& cfg);

// Tangent to G- x K at (b, k) via right translation.
struct TangentPair {
  AlgVec beta;
  AlgVec kappa;
};
double omega_Z_eval(const GElem& b, const KElem& k, const TangentPair& xi1,
                    const TangentPair& xi2, double h = 1e-5);

struct IMFit {
  double c_z = 0.0;
  double residual = 0.0;  // max |rho(a) - c_z pi_Z mu(a)| over probes
};
IMFit im_form_check(const std::vector<KElem>& pts, int dirs_per_pt, Rng& rng,
                    double h = 1e-5);

}  // namespace gk
