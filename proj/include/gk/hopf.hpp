#pragma once

#include <gk/group.hpp>

#include <ostream>
#include <utility>

namespace gk {

// Point of X = C^2 - {(0,0)}.  The two symplectic-type charts are
// O_A = {z1 != 0} and O_B = {z2 != 0}; most of the coordinate formulas
// below live on the overlap.
struct SurfPoint {
  cplx z1{1.0, 0.0};
  cplx z2{0.0, 0.0};
  bool in_chart_a(double tol = 1e-12) const { return std::abs(z1) > tol; }
  bool in_chart_b(double tol = 1e-12) const { return std::abs(z2) > tol; }
};

// Log coordinates v_i = log z_i on X_- together with the sheared pair
// x1 = u2 - u1 - log(-1), x2 = u2 - log(-1) built from u_i = log w_i on
// X_+, with the branch pinned to log(-1) = i pi.  In these coordinates
// omega = dv2 ^ dv1 - dx2 ^ dx1 with primitive alpha = v2 dv1 - x2 dx1.
struct LogCoords {
  cplx v1, v2;
  cplx x1, x2;
};

// Element (a, b) of C x| C, the universal cover of the affine group of the
// complex line, with (a,b)(c,d) = (a+c, e^c b + d).
struct AffElem {
  cplx a = 0.0;
  cplx b = 0.0;
};

AffElem aff_mult(const AffElem& h1, const AffElem& h2);
AffElem aff_inv(const AffElem& h);

// Which action groupoid over X acts: the minus-side pair are left actions
// of C x| C, the plus-side pair are the same affine maps read as right
// actions (left actions of the opposite group).
enum class GroupoidSide { AMinus, BMinus, APlus, BPlus };

// p-(A, z) = A (e^{-iz}, 0)^T and p+(A, z) = (e^{iz}, 0) A; the first is
// invariant under right G- translation, the second under left G+.
SurfPoint project_minus(const GElem& g);
SurfPoint project_plus(const GElem& g);

// A-side maps send (z1, z2) to (e^a z1, b z1 + z2), B-side maps to
// (z1 + b z2, e^a z2).
SurfPoint groupoid_action(const AffElem& h, const SurfPoint& p,
                          GroupoidSide which);

// Coefficient of the Hitchin Poisson structure sigma_sign on X in the
// frame d/dz1 ^ d/dz2: 2 z1 z2 for sign = -1 and the negative for +1.
cplx hitchin_sigma(const SurfPoint& p, int sign);

// Principal-branch dilogarithm Li_2, absolute error near 1e-12 on the cut
// plane; reduction by series on |w| <= 1/2 plus the standard inversion,
// reflection, Landen and duplication identities.
cplx dilog(cplx w);

// The diffeomorphism psi: X_- -> X_+ in log coordinates,
// (v1, v2) -> (log(R^-2 e^{v1}), log(-R^-2 e^{conj v2})) with
// R^2 = |e^{v1}|^2 + |e^{v2}|^2; principal logs.
std::pair<cplx, cplx> psi_map(cplx v1, cplx v2);

// Graph of psi in the (v, x) coordinates: (v1, x1) is free and
// v2 = conj(x1) + conj(v1), x2 = x1 - conj(v1) - log(1 + e^{x1 + conj x1}).
LogCoords graph_psi(cplx v1, cplx x1);

// The combination 1/2 (v1 conj v1 + conj(v1) x1 + conj(x1) v1
// - 1/2 (x1^2 + conj(x1)^2) + I(x1 + conj x1)) with
// I(s) = -Li_2(-e^s), the integral of log(1 + e^t) pinned at -infinity.
// It is real; potential_f takes the real part and potential_terms exposes
// the full complex value so the imaginary residual can be measured.
cplx potential_terms(cplx v1, cplx x1);
double potential_f(cplx v1, cplx x1);

// Gradient covector of the generating identity in the real coordinates
// (Re v1, Im v1, Re x1, Im x1): the coefficients of Re(v2 dv1 - x2 dx1)
// pulled back through graph_psi.
rvec graph_alpha(cplx v1, cplx x1);

// Max over a grid x grid square of half-width hw around the origin of
// |FD gradient of f - graph_alpha|, central differences with step h.
double generating_check(int grid, double hw = 0.5, double h = 1e-5);

// Tangent to Gr(psi) over the direction (dv1, dx1), from the exact
// partials of the closed-form graph; the differential depends on the base
// point only through Re x1.
LogCoords graph_tangent(cplx x1, cplx dv1, cplx dx1);

// omega = dv2 ^ dv1 - dx2 ^ dx1 evaluated on a pair of tangents.
cplx omega_log_eval(const LogCoords& t1, const LogCoords& t2);

// Max |Re omega| over seeded points and tangent pairs on Gr(psi); the
// graph is Re-Lagrangian, so this is a pure residual.
double graph_lagrangian_check(int seeds, std::uint64_t seed);

// CSV grid of the potential: one header row, then grid x grid rows of
// (v1, x1) as paired real columns, f, and the local generating residual.
void write_potential_grid(std::ostream& os, int grid, double hw = 0.5,
                          double h = 1e-5);

}  // namespace gk
