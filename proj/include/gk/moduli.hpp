#pragma once

#include <gk/group.hpp>

#include <array>
#include <string>

namespace gk {

// Representation of the fundamental groupoid of the marked annulus on its
// eight free generators: four outer edges g1..g4 and four dashed edges
// k1..k4 joining the outer vertices to the inner ones.  No relation is
// imposed; boundary conditions and gauge reduction are expressed as checks
// on top of this free model.
struct AnnulusRep {
  GElem g1, g2, g3, g4;
  GElem k1, k2, k3, k4;
};

// Right-translation rates attached to the eight generators (delta g = xi g).
struct TangentRep {
  AlgVec g1, g2, g3, g4;
  AlgVec k1, k2, k3, k4;
};

// One of the nine boundary decorations; arcs lists the subgroup assigned to
// the boundary arcs L1..L8 (+1 for G+, -1 for G-).
struct BoundaryLabel {
  std::string name;
  std::array<int, 8> arcs{};
};

const std::array<BoundaryLabel, 9>& boundary_labels();
const BoundaryLabel& boundary_label(const std::string& name);

// Holonomies (w5, w6, w7, w8) of the four inner boundary arcs:
// w5 = k1 g2 k2^-1, w6 = k3 g3 k2^-1, w7 = k4 g4 k3^-1, w8 = k4 g1 k1^-1.
std::array<GElem, 4> inner_arc_holonomies(const AnnulusRep& rho);

// Boundary values (g1, g2, g3, g4, w5, w6, w7, w8).
std::array<GElem, 8> moment_map(const AnnulusRep& rho);

// Membership of each moment component in its decorated subgroup.  The arc
// slots L1..L8 read the components in the order (g2, g1, g4, g3, w5..w8).
struct BoundaryCheck {
  bool ok = false;
  std::array<double, 8> residuals{};
};
BoundaryCheck boundary_check(const AnnulusRep& rho, const BoundaryLabel& label,
                             double tol = 1e-9);

// Gauge transformations are indexed by the eight vertices in the order
// (outer bottom-left, bottom-right, top-right, top-left), then the inner
// vertices in the same rotational order.
using Gauge = std::array<GElem, 8>;
Gauge trivial_gauge();
AnnulusRep gauge_act(const Gauge& phi, const AnnulusRep& rho);
// The induced action on a moment tuple through the boundary-arc incidences.
std::array<GElem, 8> gauge_act_boundary(const Gauge& phi,
                                        const std::array<GElem, 8>& mu);

// Quasi-symplectic 2-forms of the disc moduli, evaluated on pairs of
// right-translation tangents.  The triangle carries
// 1/2 s_C(g2*theta^l, g1*theta^r); the square, with coordinates (g1,g2,g3)
// and induced fourth edge g4 = g3 g2 g1^-1, carries
// 1/2 (s_C(g4*theta^l, g1*theta^r) - s_C(g3*theta^l, g2*theta^r)).
cplx omega_triangle(const std::array<GElem, 2>& g,
                    const std::array<AlgVec, 2>& d1,
                    const std::array<AlgVec, 2>& d2);
cplx omega_square(const std::array<GElem, 3>& g,
                  const std::array<AlgVec, 3>& d1,
                  const std::array<AlgVec, 3>& d2);

// Annulus form: Om_P4(k3,g4,k4) + Om_P4(k2,g3,k3) - Om_P4(k1,g1,k4)
// - Om_P4(k2,g2,k1).
cplx omega_annulus(const AnnulusRep& rho, const TangentRep& d1,
                   const TangentRep& d2);

// Square datum [x, g, y] produced by the four side projections.
struct SideTriple {
  GElem x, g, y;
};
SideTriple side_h_source(const AnnulusRep& rho);  // right:  [k3, g3, k2]
SideTriple side_h_target(const AnnulusRep& rho);  // left:   [k4, g1, k1]
SideTriple side_v_source(const AnnulusRep& rho);  // top:    [k4, g4, k3]
SideTriple side_v_target(const AnnulusRep& rho);  // bottom: [k1, g2, k2]

// Representations constant along the glued direction.
AnnulusRep unit_from_side_h(const SideTriple& s);
AnnulusRep unit_from_side_v(const SideTriple& s);
AnnulusRep unit_h(const AnnulusRep& rho);  // unit at side_h_source(rho)
AnnulusRep unit_v(const AnnulusRep& rho);  // unit at side_v_source(rho)

// Cut-and-glue multiplications.  Horizontal glues rho' to the right of rho
// (requires g1' = g3, k1' = k2, k4' = k3) and yields
// (g1, g2 g2', g3', g4 g4', k1, k2', k3', k4); vertical glues rho' on top
// (requires g2' = g4, k1' = k4, k2' = k3) and yields
// (g1' g1, g2, g3' g3, g4', k1, k2, k3', k4').  Composability violations
// beyond tol throw.
AnnulusRep mult_h(const AnnulusRep& rho, const AnnulusRep& rhop,
                  double tol = 1e-10);
AnnulusRep mult_v(const AnnulusRep& rho, const AnnulusRep& rhop,
                  double tol = 1e-10);

// Pushforward of a composable tangent pair through the multiplications.
TangentRep mult_h_tangent(const AnnulusRep& rho, const AnnulusRep& rhop,
                          const TangentRep& d, const TangentRep& dp);
TangentRep mult_v_tangent(const AnnulusRep& rho, const AnnulusRep& rhop,
                          const TangentRep& d, const TangentRep& dp);

// |Om(m_*(d1,d1'), m_*(d2,d2')) - Om(d1,d2) - Om(d1',d2')| at m(rho, rho').
// The residual vanishes when both factors lie in a common decorated locus
// and the tangents are tangent to it; on the free moduli the form is only
// quasi-symplectic and the identity fails.
double multiplicativity_residual(const AnnulusRep& rho, const AnnulusRep& rhop,
                                 const TangentRep& d1, const TangentRep& d1p,
                                 const TangentRep& d2, const TangentRep& d2p,
                                 bool horizontal);

// Triangular factorization q = n m with n upper (G-) and m lower (G+),
// covers adding up to the cover of q.  Throws when |q22| is too small for
// the split to be stable.
void triangular_split(const GElem& q, GElem& n, GElem& m);

// Annulus value of the D- stratum family: outer edges trivial except
// g2 = z, dashed edges k1 = y g z^-1, k2 = g, k3 = u g, k4 = y' u g, where
// (y', u') = (n^-1, m) are the triangular factors of u (g z g^-1) y^-1 and
// are written to the out parameters.  The inner holonomies then come out
// as (y, u, y', u') and the value lies in the D- locus.
AnnulusRep rho_minus_family(const GElem& g, const GElem& y, const GElem& u,
                            const GElem& z, GElem& y_out, GElem& u_out);

// Linearized D- boundary conditions at rho: 16 row functionals on a
// tangent flattened to C^32 in the slot order (g1..g4, k1..k4), each slot
// contributing the AlgVec coordinates (X00, X01, X10, u).
cmat stratum_rows(const AnnulusRep& rho);

// Conditions cutting out stratum-tangent composable pairs: both factors'
// stratum rows plus the glued-edge equalities of mult_h or mult_v, stacked
// as 44 rows on C^64 (rho in the first 32 columns, rho' in the last 32).
cmat composable_pair_rows(const AnnulusRep& rho, const AnnulusRep& rhop,
                          bool horizontal);

// Orthonormal basis of the kernel of a row system (SVD with relative
// threshold 1e-10).
cmat kernel_basis(const cmat& rows);

// Reads a flat coordinate vector back into a tangent starting at offset.
TangentRep tangent_from_coords(const cvec& v, int offset = 0);

// (g_i, k_i) -> (Th(g3^-1), Th(g4^-1), Th(g1^-1), Th(g2^-1),
//                Th(k3), Th(k4), Th(k1), Th(k2)).
AnnulusRep tau_real_structure(const AnnulusRep& rho);
TangentRep tau_pushforward(const AnnulusRep& rho, const TangentRep& d);

// Distinguished bisections.  lambda(k) places k on the dashed edges and the
// identity on the outer ones; the Lambda elements are the dressed words
// Lambda_Z(b,k) = (1, b^k, 1, Th(b^k); {}^bk, k, k, {}^bk) for b in G- and
// Lambda_W(a,k) = (Th(a^k), 1, a^k, 1; k, k, {}^ak, {}^ak) for a in G+.
AnnulusRep core_bisection_lambda(const KElem& k);
AnnulusRep lambda_Z_element(const GElem& b, const KElem& k);
AnnulusRep lambda_W_element(const GElem& a, const KElem& k);

enum class BisectionFamily { Core, Z, Wbar };

// Pullback of the annulus form along a parametrized bisection family over
// seeded base points and tangent pairs.  max_re bounds |Re| of the
// pullback; im_mismatch compares Im against c_ann times the reference
// dressing 2-form of the family (omega_Z_eval for Z, the mirrored form for
// Wbar, zero for the core).
struct LagrangianResidual {
  double max_re = 0.0;
  double max_im = 0.0;
  double im_mismatch = 0.0;
};
LagrangianResidual lagrangian_residual(BisectionFamily family, int seeds,
                                       Rng& rng, double c_ann,
                                       double h = 1e-5);

}  // namespace gk
