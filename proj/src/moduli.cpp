#include <gk/moduli.hpp>

#include <cmath>

namespace gk {

namespace {

cmat2 adj2(const cmat2& m) {
  cmat2 a;
  a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return a;
}

// theta^l(delta g) for a right-translation rate xi
AlgVec left_rate(const GElem& g, const AlgVec& xi) { return ad_g(ginv(g), xi); }

double gdist(const GElem& a, const GElem& b) {
  return (a.A - b.A).cwiseAbs().maxCoeff() + std::abs(a.z - b.z);
}

// Triangular element of G_sign with cover zeta and off-diagonal entry w.
GElem shaped_elem(int sign, const cplx& zeta, const cplx& w) {
  const cplx d = std::exp(kI * (sign < 0 ? zeta : -zeta));
  GElem g;
  g.A(0, 0) = d;
  g.A(1, 1) = 1.0 / d;
  g.A(sign < 0 ? 0 : 1, sign < 0 ? 1 : 0) = w;
  g.z = zeta;
  return g;
}

}  // namespace

const std::array<BoundaryLabel, 9>& boundary_labels() {
  static const std::array<BoundaryLabel, 9> rows = {{
      {"Dbar-", {+1, +1, +1, +1, +1, -1, +1, -1}},
      {"W", {+1, -1, +1, +1, +1, +1, +1, -1}},
      {"D+", {+1, -1, +1, -1, +1, +1, +1, +1}},
      {"Zbar", {-1, +1, +1, +1, -1, -1, +1, -1}},
      {"C", {-1, -1, +1, +1, -1, +1, +1, -1}},
      {"Z", {-1, -1, +1, -1, -1, +1, +1, +1}},
      {"Dbar+", {-1, +1, -1, +1, -1, -1, -1, -1}},
      {"Wbar", {-1, -1, -1, +1, -1, +1, -1, -1}},
      {"D-", {-1, -1, -1, -1, -1, +1, -1, +1}},
  }};
  return rows;
}

const BoundaryLabel& boundary_label(const std::string& name) {
  for (const auto& row : boundary_labels())
    if (row.name == name) return row;
  throw gk_error("unknown boundary label: " + name);
}

std::array<GElem, 4> inner_arc_holonomies(const AnnulusRep& rho) {
  return {gmul(gmul(rho.k1, rho.g2), ginv(rho.k2)),
          gmul(gmul(rho.k3, rho.g3), ginv(rho.k2)),
          gmul(gmul(rho.k4, rho.g4), ginv(rho.k3)),
          gmul(gmul(rho.k4, rho.g1), ginv(rho.k1))};
}

std::array<GElem, 8> moment_map(const AnnulusRep& rho) {
  const auto w = inner_arc_holonomies(rho);
  return {rho.g1, rho.g2, rho.g3, rho.g4, w[0], w[1], w[2], w[3]};
}

BoundaryCheck boundary_check(const AnnulusRep& rho, const BoundaryLabel& label,
                             double tol) {
  const auto w = inner_arc_holonomies(rho);
  const std::array<GElem, 8> slots = {rho.g2, rho.g1, rho.g4, rho.g3,
                                      w[0],   w[1],   w[2],   w[3]};
  BoundaryCheck out;
  out.ok = true;
  for (int i = 0; i < 8; ++i) {
    out.residuals[i] = shape_residual(slots[i], label.arcs[i]);
    if (!(out.residuals[i] < tol)) out.ok = false;
  }
  return out;
}

Gauge trivial_gauge() { return Gauge{}; }

// Vertex order: outer (A, B, C, D) counterclockwise from bottom-left, then
// inner (a, b, c, d) likewise.  Edge sources and targets follow the figure:
// g1: A->D, g2: B->A, g3: B->C, g4: C->D, k_i joins the i-th outer vertex
// to the matching inner one.
AnnulusRep gauge_act(const Gauge& phi, const AnnulusRep& rho) {
  auto act = [&](int t, int s, const GElem& g) {
    return gmul(gmul(phi[t], g), ginv(phi[s]));
  };
  AnnulusRep out;
  out.g1 = act(3, 0, rho.g1);
  out.g2 = act(0, 1, rho.g2);
  out.g3 = act(2, 1, rho.g3);
  out.g4 = act(3, 2, rho.g4);
  out.k1 = act(4, 0, rho.k1);
  out.k2 = act(5, 1, rho.k2);
  out.k3 = act(6, 2, rho.k3);
  out.k4 = act(7, 3, rho.k4);
  return out;
}

std::array<GElem, 8> gauge_act_boundary(const Gauge& phi,
                                        const std::array<GElem, 8>& mu) {
  static const int tv[8] = {3, 0, 2, 3, 4, 6, 7, 7};
  static const int sv[8] = {0, 1, 1, 2, 5, 5, 6, 4};
  std::array<GElem, 8> out;
  for (int i = 0; i < 8; ++i)
    out[i] = gmul(gmul(phi[tv[i]], mu[i]), ginv(phi[sv[i]]));
  return out;
}

cplx omega_triangle(const std::array<GElem, 2>& g,
                    const std::array<AlgVec, 2>& d1,
                    const std::array<AlgVec, 2>& d2) {
  return 0.5 * (pairing(left_rate(g[1], d1[1]), d2[0]) -
                pairing(left_rate(g[1], d2[1]), d1[0]));
}

cplx omega_square(const std::array<GElem, 3>& g,
                  const std::array<AlgVec, 3>& d1,
                  const std::array<AlgVec, 3>& d2) {
  const GElem g4 = gmul(gmul(g[2], g[1]), ginv(g[0]));
  const GElem g32 = gmul(g[2], g[1]);
  auto rate4 = [&](const std::array<AlgVec, 3>& d) {
    AlgVec r = avec_add(d[2], ad_g(g[2], d[1]));
    return avec_add(r, avec_scale(-1.0, ad_g(g32, ad_g(ginv(g[0]), d[0]))));
  };
  const AlgVec x4 = rate4(d1);
  const AlgVec y4 = rate4(d2);
  const cplx first =
      pairing(left_rate(g4, x4), d2[0]) - pairing(left_rate(g4, y4), d1[0]);
  const cplx second = pairing(left_rate(g[2], d1[2]), d2[1]) -
                      pairing(left_rate(g[2], d2[2]), d1[1]);
  return 0.5 * (first - second);
}

cplx omega_annulus(const AnnulusRep& r, const TangentRep& d1,
                   const TangentRep& d2) {
  return omega_square({r.k3, r.g4, r.k4}, {d1.k3, d1.g4, d1.k4},
                      {d2.k3, d2.g4, d2.k4}) +
         omega_square({r.k2, r.g3, r.k3}, {d1.k2, d1.g3, d1.k3},
                      {d2.k2, d2.g3, d2.k3}) -
         omega_square({r.k1, r.g1, r.k4}, {d1.k1, d1.g1, d1.k4},
                      {d2.k1, d2.g1, d2.k4}) -
         omega_square({r.k2, r.g2, r.k1}, {d1.k2, d1.g2, d1.k1},
                      {d2.k2, d2.g2, d2.k1});
}

SideTriple side_h_source(const AnnulusRep& rho) {
  return {rho.k3, rho.g3, rho.k2};
}
SideTriple side_h_target(const AnnulusRep& rho) {
  return {rho.k4, rho.g1, rho.k1};
}
SideTriple side_v_source(const AnnulusRep& rho) {
  return {rho.k4, rho.g4, rho.k3};
}
SideTriple side_v_target(const AnnulusRep& rho) {
  return {rho.k1, rho.g2, rho.k2};
}

AnnulusRep unit_from_side_h(const SideTriple& s) {
  AnnulusRep r;
  r.g1 = s.g;
  r.g3 = s.g;
  r.k1 = s.y;
  r.k2 = s.y;
  r.k3 = s.x;
  r.k4 = s.x;
  return r;
}

AnnulusRep unit_from_side_v(const SideTriple& s) {
  AnnulusRep r;
  r.g2 = s.g;
  r.g4 = s.g;
  r.k1 = s.x;
  r.k2 = s.y;
  r.k3 = s.y;
  r.k4 = s.x;
  return r;
}

AnnulusRep unit_h(const AnnulusRep& rho) {
  return unit_from_side_h(side_h_source(rho));
}
AnnulusRep unit_v(const AnnulusRep& rho) {
  return unit_from_side_v(side_v_source(rho));
}

AnnulusRep mult_h(const AnnulusRep& rho, const AnnulusRep& rhop, double tol) {
  const double gap = gdist(rhop.g1, rho.g3) + gdist(rhop.k1, rho.k2) +
                     gdist(rhop.k4, rho.k3);
  if (gap > tol)
    throw gk_error("representations are not horizontally composable");
  AnnulusRep out;
  out.g1 = rho.g1;
  out.g2 = gmul(rho.g2, rhop.g2);
  out.g3 = rhop.g3;
  out.g4 = gmul(rho.g4, rhop.g4);
  out.k1 = rho.k1;
  out.k2 = rhop.k2;
  out.k3 = rhop.k3;
  out.k4 = rho.k4;
  return out;
}

AnnulusRep mult_v(const AnnulusRep& rho, const AnnulusRep& rhop, double tol) {
  const double gap = gdist(rhop.g2, rho.g4) + gdist(rhop.k1, rho.k4) +
                     gdist(rhop.k2, rho.k3);
  if (gap > tol) throw gk_error("representations are not vertically composable");
  AnnulusRep out;
  out.g1 = gmul(rhop.g1, rho.g1);
  out.g2 = rho.g2;
  out.g3 = gmul(rhop.g3, rho.g3);
  out.g4 = rhop.g4;
  out.k1 = rho.k1;
  out.k2 = rho.k2;
  out.k3 = rhop.k3;
  out.k4 = rhop.k4;
  return out;
}

TangentRep mult_h_tangent(const AnnulusRep& rho, const AnnulusRep&,
                          const TangentRep& d, const TangentRep& dp) {
  TangentRep out;
  out.g1 = d.g1;
  out.g2 = avec_add(d.g2, ad_g(rho.g2, dp.g2));
  out.g3 = dp.g3;
  out.g4 = avec_add(d.g4, ad_g(rho.g4, dp.g4));
  out.k1 = d.k1;
  out.k2 = dp.k2;
  out.k3 = dp.k3;
  out.k4 = d.k4;
  return out;
}

TangentRep mult_v_tangent(const AnnulusRep&, const AnnulusRep& rhop,
                          const TangentRep& d, const TangentRep& dp) {
  TangentRep out;
  out.g1 = avec_add(dp.g1, ad_g(rhop.g1, d.g1));
  out.g2 = d.g2;
  out.g3 = avec_add(dp.g3, ad_g(rhop.g3, d.g3));
  out.g4 = dp.g4;
  out.k1 = d.k1;
  out.k2 = d.k2;
  out.k3 = dp.k3;
  out.k4 = dp.k4;
  return out;
}

double multiplicativity_residual(const AnnulusRep& rho, const AnnulusRep& rhop,
                                 const TangentRep& d1, const TangentRep& d1p,
                                 const TangentRep& d2, const TangentRep& d2p,
                                 bool horizontal) {
  const AnnulusRep m = horizontal ? mult_h(rho, rhop) : mult_v(rho, rhop);
  const TangentRep m1 = horizontal ? mult_h_tangent(rho, rhop, d1, d1p)
                                   : mult_v_tangent(rho, rhop, d1, d1p);
  const TangentRep m2 = horizontal ? mult_h_tangent(rho, rhop, d2, d2p)
                                   : mult_v_tangent(rho, rhop, d2, d2p);
  const cplx glued = omega_annulus(m, m1, m2);
  const cplx split = omega_annulus(rho, d1, d2) + omega_annulus(rhop, d1p, d2p);
  return std::abs(glued - split);
}

namespace {

cvec flat_coords(const AlgVec& a) {
  cvec v(4);
  v << a.X(0, 0), a.X(0, 1), a.X(1, 0), a.u;
  return v;
}

AlgVec alg_from_flat(const cvec& v) {
  AlgVec a;
  a.X(0, 0) = v(0);
  a.X(0, 1) = v(1);
  a.X(1, 0) = v(2);
  a.X(1, 1) = -v(0);
  a.u = v(3);
  return a;
}

cmat ad_flat(const GElem& g) {
  cmat M(4, 4);
  for (int j = 0; j < 4; ++j) {
    cvec e = cvec::Zero(4);
    e(j) = 1.0;
    M.col(j) = flat_coords(ad_g(g, alg_from_flat(e)));
  }
  return M;
}

// Membership of a rate in g_sign: the off-diagonal entry of the wrong
// triangle vanishes and X00 = i u.
cmat member_rows(int sign) {
  cmat R = cmat::Zero(2, 4);
  R(0, sign < 0 ? 2 : 1) = 1.0;
  R(1, 0) = 1.0;
  R(1, 3) = -kI;
  return R;
}

}  // namespace

void triangular_split(const GElem& q, GElem& n, GElem& m) {
  const cplx q22 = q.A(1, 1);
  if (std::abs(q22) <= 1e-6) throw gk_error("triangular split is degenerate");
  const cplx diff = -kI * std::log(q22);
  const cplx a = 0.5 * (q.z - diff);
  const cplx b = q.z - a;
  n = shaped_elem(-1, a, q.A(0, 1) * std::exp(-kI * b));
  m = shaped_elem(+1, b, q.A(1, 0) * std::exp(kI * a));
}

AnnulusRep rho_minus_family(const GElem& g, const GElem& y, const GElem& u,
                            const GElem& z, GElem& y_out, GElem& u_out) {
  const GElem q = gmul(gmul(u, gmul(gmul(g, z), ginv(g))), ginv(y));
  GElem n, m;
  triangular_split(q, n, m);
  y_out = ginv(n);
  u_out = m;
  AnnulusRep r;
  r.g2 = z;
  r.k1 = gmul(gmul(y, g), ginv(z));
  r.k2 = g;
  r.k3 = gmul(u, g);
  r.k4 = gmul(y_out, gmul(u, g));
  return r;
}

cmat stratum_rows(const AnnulusRep& r) {
  cmat C = cmat::Zero(16, 32);
  const cmat Rm = member_rows(-1);
  const cmat Rp = member_rows(+1);
  for (int i = 0; i < 4; ++i) C.block(2 * i, 4 * i, 2, 4) = Rm;
  const auto w = inner_arc_holonomies(r);
  C.block(8, 16, 2, 4) = Rm;
  C.block(8, 4, 2, 4) = Rm * ad_flat(r.k1);
  C.block(8, 20, 2, 4) = -Rm * ad_flat(w[0]);
  C.block(10, 24, 2, 4) = Rp;
  C.block(10, 8, 2, 4) = Rp * ad_flat(r.k3);
  C.block(10, 20, 2, 4) = -Rp * ad_flat(w[1]);
  C.block(12, 28, 2, 4) = Rm;
  C.block(12, 12, 2, 4) = Rm * ad_flat(r.k4);
  C.block(12, 24, 2, 4) = -Rm * ad_flat(w[2]);
  C.block(14, 28, 2, 4) = Rp;
  C.block(14, 0, 2, 4) = Rp * ad_flat(r.k4);
  C.block(14, 16, 2, 4) = -Rp * ad_flat(w[3]);
  return C;
}

cmat composable_pair_rows(const AnnulusRep& rho, const AnnulusRep& rhop,
                          bool horizontal) {
  cmat C = cmat::Zero(44, 64);
  C.block(0, 0, 16, 32) = stratum_rows(rho);
  C.block(16, 32, 16, 32) = stratum_rows(rhop);
  const cmat I4 = cmat::Identity(4, 4);
  const int prime[3] = {horizontal ? 0 : 4, 16, horizontal ? 28 : 20};
  const int base[3] = {horizontal ? 8 : 12, horizontal ? 20 : 28, 24};
  for (int i = 0; i < 3; ++i) {
    C.block(32 + 4 * i, 32 + prime[i], 4, 4) = I4;
    C.block(32 + 4 * i, base[i], 4, 4) = -I4;
  }
  return C;
}

cmat kernel_basis(const cmat& rows) {
  Eigen::JacobiSVD<cmat> svd(rows, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  return svd.matrixV().rightCols(rows.cols() - rank);
}

TangentRep tangent_from_coords(const cvec& v, int offset) {
  TangentRep d;
  d.g1 = alg_from_flat(v.segment(offset + 0, 4));
  d.g2 = alg_from_flat(v.segment(offset + 4, 4));
  d.g3 = alg_from_flat(v.segment(offset + 8, 4));
  d.g4 = alg_from_flat(v.segment(offset + 12, 4));
  d.k1 = alg_from_flat(v.segment(offset + 16, 4));
  d.k2 = alg_from_flat(v.segment(offset + 20, 4));
  d.k3 = alg_from_flat(v.segment(offset + 24, 4));
  d.k4 = alg_from_flat(v.segment(offset + 28, 4));
  return d;
}

AnnulusRep tau_real_structure(const AnnulusRep& rho) {
  AnnulusRep out;
  out.g1 = theta(ginv(rho.g3));
  out.g2 = theta(ginv(rho.g4));
  out.g3 = theta(ginv(rho.g1));
  out.g4 = theta(ginv(rho.g2));
  out.k1 = theta(rho.k3);
  out.k2 = theta(rho.k4);
  out.k3 = theta(rho.k1);
  out.k4 = theta(rho.k2);
  return out;
}

TangentRep tau_pushforward(const AnnulusRep& rho, const TangentRep& d) {
  auto inv_rate = [](const GElem& g, const AlgVec& xi) {
    return avec_scale(-1.0, ad_g(ginv(g), xi));
  };
  TangentRep out;
  out.g1 = dtheta(inv_rate(rho.g3, d.g3));
  out.g2 = dtheta(inv_rate(rho.g4, d.g4));
  out.g3 = dtheta(inv_rate(rho.g1, d.g1));
  out.g4 = dtheta(inv_rate(rho.g2, d.g2));
  out.k1 = dtheta(d.k3);
  out.k2 = dtheta(d.k4);
  out.k3 = dtheta(d.k1);
  out.k4 = dtheta(d.k2);
  return out;
}

AnnulusRep core_bisection_lambda(const KElem& k) {
  AnnulusRep r;
  r.k1 = r.k2 = r.k3 = r.k4 = embed(k);
  return r;
}

AnnulusRep lambda_Z_element(const GElem& b, const KElem& k) {
  if (shape_residual(b, -1) > 1e-8) throw gk_error("element is not in G-");
  const Factorization f = factorize_left(gmul(b, embed(k)), -1);
  AnnulusRep r;
  r.g2 = f.b;
  r.g4 = theta(f.b);
  r.k1 = r.k4 = embed(f.k);
  r.k2 = r.k3 = embed(k);
  return r;
}

AnnulusRep lambda_W_element(const GElem& a, const KElem& k) {
  if (shape_residual(a, +1) > 1e-8) throw gk_error("element is not in G+");
  const Factorization f = factorize_left(gmul(a, embed(k)), +1);
  AnnulusRep r;
  r.g1 = theta(f.b);
  r.g3 = f.b;
  r.k1 = r.k2 = embed(k);
  r.k3 = r.k4 = embed(f.k);
  return r;
}

namespace {

struct FactorRates {
  AlgVec k_right;  // right rate of the K factor
  AlgVec k_left;   // left rate of the K factor
  AlgVec x_right;  // right rate of the G_sign factor
};

// Central differences of the dressed pair along the product curve
// (exp(s alpha) x, exp(s kappa) k).
FactorRates dressing_rates(const GElem& x0, const KElem& k0,
                           const AlgVec& alpha, const AlgVec& kappa, int sign,
                           double h) {
  const rvec kc = coords_from_k(kappa);
  auto at = [&](double s) {
    const GElem xs = gmul(gexp(avec_scale(s, alpha)), x0);
    const KElem ks = kmul(kexp(rvec(s * kc)), k0);
    return factorize_left(gmul(xs, embed(ks)), sign);
  };
  const Factorization fp = at(h);
  const Factorization fm = at(-h);
  const Factorization f0 = factorize_left(gmul(x0, embed(k0)), sign);
  const cmat2 du = (fp.k.U - fm.k.U) / (2.0 * h);
  const double dt = (fp.k.t - fm.k.t) / (2.0 * h);
  const cmat2 db = (fp.b.A - fm.b.A) / (2.0 * h);
  const cplx dz = (fp.b.z - fm.b.z) / (2.0 * h);
  FactorRates r;
  r.k_right = {du * f0.k.U.adjoint(), kI * dt};
  r.k_left = {f0.k.U.adjoint() * du, kI * dt};
  r.x_right = {db * adj2(f0.b.A), dz};
  return r;
}

KElem random_k(Rng& rng) {
  rvec c(4);
  for (int i = 0; i < 4; ++i) c[i] = 0.6 * rng.gauss();
  return kexp(c);
}

AlgVec random_kvec(Rng& rng) {
  rvec c(4);
  for (int i = 0; i < 4; ++i) c[i] = rng.gauss();
  return k_from_coords(c);
}

AlgVec random_lagrangian(int sign, Rng& rng) {
  const auto basis = lagrangian_basis(sign);
  return avec_add(avec_scale(rng.cgauss(), basis[0]),
                  avec_scale(rng.cgauss(), basis[1]));
}

GElem random_shaped(int sign, Rng& rng) {
  const cplx zeta(rng.uniform(-1.0, 1.0), rng.uniform(-0.7, 0.7));
  return shaped_elem(sign, zeta, 0.7 * rng.cgauss());
}

// Printed mirror of omega_Z_eval for the G+ dressing space.
double omega_wbar_reference(const GElem& a, const FactorRates& r1,
                            const FactorRates& r2, const AlgVec& a1,
                            const AlgVec& a2, const AlgVec& kp1,
                            const AlgVec& kp2) {
  const double first =
      s_i(r1.k_left, r2.x_right) - s_i(r2.k_left, r1.x_right);
  const double second = s_i(ad_g(ginv(a), a1), kp2) - s_i(ad_g(ginv(a), a2), kp1);
  return -(first - second);
}

}  // namespace

LagrangianResidual lagrangian_residual(BisectionFamily family, int seeds,
                                       Rng& rng, double c_ann, double h) {
  LagrangianResidual out;
  for (int s = 0; s < seeds; ++s) {
    const KElem k = random_k(rng);
    if (family == BisectionFamily::Core) {
      const AnnulusRep rep = core_bisection_lambda(k);
      TangentRep d1, d2;
      d1.k1 = d1.k2 = d1.k3 = d1.k4 = random_kvec(rng);
      d2.k1 = d2.k2 = d2.k3 = d2.k4 = random_kvec(rng);
      const cplx val = omega_annulus(rep, d1, d2);
      out.max_re = std::max(out.max_re, std::abs(val.real()));
      out.max_im = std::max(out.max_im, std::abs(val.imag()));
      out.im_mismatch = std::max(out.im_mismatch, std::abs(val.imag()));
      continue;
    }
    const int sign = family == BisectionFamily::Z ? -1 : +1;
    const GElem x = random_shaped(sign, rng);
    const AlgVec a1 = random_lagrangian(sign, rng);
    const AlgVec a2 = random_lagrangian(sign, rng);
    const AlgVec kp1 = random_kvec(rng);
    const AlgVec kp2 = random_kvec(rng);
    const FactorRates r1 = dressing_rates(x, k, a1, kp1, sign, h);
    const FactorRates r2 = dressing_rates(x, k, a2, kp2, sign, h);
    AnnulusRep rep;
    TangentRep d1, d2;
    double ref = 0.0;
    if (family == BisectionFamily::Z) {
      rep = lambda_Z_element(x, k);
      d1.g2 = r1.x_right;
      d1.g4 = dtheta(r1.x_right);
      d1.k1 = d1.k4 = r1.k_right;
      d1.k2 = d1.k3 = kp1;
      d2.g2 = r2.x_right;
      d2.g4 = dtheta(r2.x_right);
      d2.k1 = d2.k4 = r2.k_right;
      d2.k2 = d2.k3 = kp2;
      ref = omega_Z_eval(x, k, {a1, kp1}, {a2, kp2}, h);
    } else {
      rep = lambda_W_element(x, k);
      d1.g3 = r1.x_right;
      d1.g1 = dtheta(r1.x_right);
      d1.k3 = d1.k4 = r1.k_right;
      d1.k1 = d1.k2 = kp1;
      d2.g3 = r2.x_right;
      d2.g1 = dtheta(r2.x_right);
      d2.k3 = d2.k4 = r2.k_right;
      d2.k1 = d2.k2 = kp2;
      ref = omega_wbar_reference(x, r1, r2, a1, a2, kp1, kp2);
    }
    const cplx val = omega_annulus(rep, d1, d2);
    out.max_re = std::max(out.max_re, std::abs(val.real()));
    out.max_im = std::max(out.max_im, std::abs(val.imag()));
    out.im_mismatch =
        std::max(out.im_mismatch, std::abs(val.imag() - c_ann * ref));
  }
  return out;
}

}  // namespace gk
