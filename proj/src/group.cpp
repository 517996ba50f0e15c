#include <gk/group.hpp>

#include <cmath>

namespace gk {

namespace {

cmat2 adjugate2(const cmat2& a) {
  cmat2 r;
  r << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
  return r;
}

// (det A = 1 throughout, so the adjugate is the inverse)
cmat2 inv2(const cmat2& a) { return adjugate2(a); }

}  // namespace

GElem gmul(const GElem& a, const GElem& b) { return {a.A * b.A, a.z + b.z}; }

GElem ginv(const GElem& a) { return {inv2(a.A), -a.z}; }

KElem kmul(const KElem& a, const KElem& b) { return {a.U * b.U, a.t + b.t}; }

KElem kinv(const KElem& a) { return {a.U.adjoint(), -a.t}; }

GElem embed(const KElem& k) { return {k.U, cplx(0.0, k.t)}; }

double det_residual(const GElem& g) {
  return std::abs(g.A.determinant() - 1.0);
}

double unitary_residual(const KElem& k) {
  const cmat2 r = k.U * k.U.adjoint() - cmat2::Identity();
  return std::max(max_abs(cmat(r)), std::abs(k.U.determinant() - 1.0));
}

AlgVec avec_add(const AlgVec& a, const AlgVec& b) {
  return {a.X + b.X, a.u + b.u};
}

AlgVec avec_scale(cplx s, const AlgVec& a) { return {s * a.X, s * a.u}; }

AlgVec bracket(const AlgVec& a, const AlgVec& b) {
  return {a.X * b.X - b.X * a.X, 0.0};
}

double avec_norm(const AlgVec& a) {
  return std::max(max_abs(cmat(a.X)), std::abs(a.u));
}

cplx pairing(const AlgVec& a, const AlgVec& b) {
  return -0.5 * (a.X * b.X).trace() - a.u * b.u;
}

double s_r(const AlgVec& a, const AlgVec& b) { return pairing(a, b).real(); }

double s_i(const AlgVec& a, const AlgVec& b) { return pairing(a, b).imag(); }

const std::array<AlgVec, 4>& kbasis() {
  static const std::array<AlgVec, 4> basis = [] {
    std::array<AlgVec, 4> e;
    e[0].X << 0.0, kI, kI, 0.0;
    e[1].X << 0.0, -1.0, 1.0, 0.0;
    e[2].X << kI, 0.0, 0.0, -kI;
    e[3].u = kI;
    return e;
  }();
  return basis;
}

AlgVec k_from_coords(const rvec& c) {
  const auto& e = kbasis();
  AlgVec out;
  for (int i = 0; i < 4; ++i) out = avec_add(out, avec_scale(c(i), e[i]));
  return out;
}

rvec coords_from_k(const AlgVec& a, double tol) {
  const auto& e = kbasis();
  rvec c(4);
  for (int i = 0; i < 4; ++i) c(i) = s_r(a, e[i]);
  const AlgVec back = k_from_coords(c);
  if (avec_norm(avec_add(a, avec_scale(-1.0, back))) > tol)
    throw gk_error("vector is not in the compact algebra");
  return c;
}

// The sign on u1 is forced by the triangular shapes below: with I(u1) = -u2
// and I(v) = u3 the +i eigenvectors u1 + i u2 and v - i u3 span the tangent
// algebra of the lower-triangular subgroup, and their conjugates the upper.
const rmat& algebra_I_matrix() {
  static const rmat m = [] {
    rmat i4 = rmat::Zero(4, 4);
    i4(1, 0) = -1.0;
    i4(0, 1) = 1.0;
    i4(3, 2) = -1.0;
    i4(2, 3) = 1.0;
    return i4;
  }();
  return m;
}

AlgVec algebra_I(const AlgVec& a) {
  return k_from_coords(rvec(algebra_I_matrix() * coords_from_k(a)));
}

std::array<AlgVec, 2> lagrangian_basis(int sign) {
  std::array<AlgVec, 2> b;
  if (sign < 0) {
    b[0].X << 0.0, 1.0, 0.0, 0.0;
    b[1].X << kI, 0.0, 0.0, -kI;
    b[1].u = 1.0;
  } else {
    b[0].X << 0.0, 0.0, 1.0, 0.0;
    b[1].X << -kI, 0.0, 0.0, kI;
    b[1].u = 1.0;
  }
  return b;
}

cmat2 exp2(const cmat2& m) {
  const cplx w = -m.determinant();  // mu^2 with exp = cosh(mu) + sinhc(mu) m
  cplx ch, shc;
  if (std::abs(w) < 1e-6) {
    ch = 1.0 + w / 2.0 + w * w / 24.0 + w * w * w / 720.0;
    shc = 1.0 + w / 6.0 + w * w / 120.0 + w * w * w / 5040.0;
  } else {
    const cplx mu = std::sqrt(w);
    ch = std::cosh(mu);
    shc = std::sinh(mu) / mu;
  }
  return ch * cmat2::Identity() + shc * m;
}

GElem gexp(const AlgVec& a) { return {exp2(a.X), a.u}; }

KElem kexp(const rvec& c) {
  const AlgVec a = k_from_coords(c);
  return {exp2(a.X), c(3)};
}

AlgVec ad_g(const GElem& g, const AlgVec& a) {
  return {g.A * a.X * inv2(g.A), a.u};
}

rmat ad_matrix(const KElem& k) {
  const GElem g = embed(k);
  const auto& e = kbasis();
  rmat ad(4, 4);
  for (int j = 0; j < 4; ++j) ad.col(j) = coords_from_k(ad_g(g, e[j]));
  return ad;
}

GElem theta(const GElem& g) { return {inv2(cmat2(g.A.adjoint())), -std::conj(g.z)}; }

AlgVec dtheta(const AlgVec& a) { return {-a.X.adjoint(), -std::conj(a.u)}; }

double shape_residual(const GElem& g, int sign) {
  const cplx d1 = std::exp(cplx(0.0, sign < 0 ? 1.0 : -1.0) * g.z);
  double r = std::abs(g.A(0, 0) - d1) + std::abs(g.A(1, 1) - 1.0 / d1);
  r += std::abs(sign < 0 ? g.A(1, 0) : g.A(0, 1));
  return r;
}

int shape_sign(const GElem& g, double tol) {
  const double rm = shape_residual(g, -1);
  const double rp = shape_residual(g, +1);
  if (rm <= tol && rm <= rp) return -1;
  if (rp <= tol) return +1;
  throw gk_error("element is not in a triangular subgroup");
}

// Row q of the unitary factor is a rescaled row of A, because the
// triangular factor's corresponding row is (0 .. e^{-i zeta} .. 0); the
// modulus of the diagonal entry fixes Im zeta and the cover coordinate of
// g fixes Re zeta, so no branch choice enters.
Factorization factorize(const GElem& g, int sign) {
  const int q = sign < 0 ? 1 : 0;
  const double nrm = g.A.row(q).norm();
  const cplx zeta(g.z.real(), std::log(nrm));
  const cplx phase = std::exp(kI * zeta);
  Factorization f;
  f.k.U.row(q) = phase * g.A.row(q);
  f.k.U(1 - q, 0) = std::conj(f.k.U(q, 1)) * (q == 1 ? 1.0 : -1.0);
  f.k.U(1 - q, 1) = std::conj(f.k.U(q, 0)) * (q == 1 ? -1.0 : 1.0);
  f.k.t = g.z.imag() - zeta.imag();
  f.b.A = g.A * f.k.U.adjoint();
  f.b.z = zeta;
  return f;
}

Factorization factorize_left(const GElem& g, int sign) {
  const int q = sign < 0 ? 0 : 1;
  const double nrm = g.A.col(q).norm();
  const cplx zeta(g.z.real(), -std::log(nrm));
  const cplx phase = std::exp(-kI * zeta);
  Factorization f;
  f.k.U.col(q) = phase * g.A.col(q);
  f.k.U(0, 1 - q) = std::conj(f.k.U(1, q)) * (q == 0 ? -1.0 : 1.0);
  f.k.U(1, 1 - q) = std::conj(f.k.U(0, q)) * (q == 0 ? 1.0 : -1.0);
  f.k.t = g.z.imag() - zeta.imag();
  f.b.A = f.k.U.adjoint() * g.A;
  f.b.z = zeta;
  return f;
}

Dressing dressing(const GElem& x, const KElem& k) {
  const int sign = shape_sign(x);
  const Factorization f = factorize_left(gmul(x, embed(k)), sign);
  return {f.k, f.b};
}

namespace {

// AlgVec as a real 8-vector (X00, X01, X10, u over C); X11 is dependent.
Eigen::Matrix<double, 8, 1> flatten(const AlgVec& a) {
  Eigen::Matrix<double, 8, 1> v;
  v << a.X(0, 0).real(), a.X(0, 0).imag(), a.X(0, 1).real(), a.X(0, 1).imag(),
      a.X(1, 0).real(), a.X(1, 0).imag(), a.u.real(), a.u.imag();
  return v;
}

// columns: kbasis then {n, i n, tau, i tau} of g_sign
Eigen::Matrix<double, 8, 8> split_basis(int sign) {
  Eigen::Matrix<double, 8, 8> m;
  const auto& e = kbasis();
  for (int j = 0; j < 4; ++j) m.col(j) = flatten(e[j]);
  const auto lb = lagrangian_basis(sign);
  for (int j = 0; j < 2; ++j) {
    m.col(4 + 2 * j) = flatten(lb[j]);
    m.col(5 + 2 * j) = flatten(avec_scale(kI, lb[j]));
  }
  return m;
}

int algebra_side(const AlgVec& a) {
  for (int sign : {-1, +1}) {
    const auto lb = lagrangian_basis(sign);
    cmat frame(8, 2);
    frame.col(0) = flatten(lb[0]).cast<cplx>();
    frame.col(1) = flatten(avec_scale(kI, lb[0])).cast<cplx>();
    cmat tor(8, 2);
    tor.col(0) = flatten(lb[1]).cast<cplx>();
    tor.col(1) = flatten(avec_scale(kI, lb[1])).cast<cplx>();
    cmat all(8, 4);
    all << frame, tor;
    const Eigen::Matrix<double, 8, 1> v = flatten(a);
    const cvec sol = all.colPivHouseholderQr().solve(v.cast<cplx>());
    if ((all * sol - v.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-9) return sign;
  }
  throw gk_error("vector is not in a Lagrangian subalgebra");
}

}  // namespace

rvec infinitesimal_dressing(const AlgVec& a, const KElem& k) {
  const int sign = algebra_side(a);
  static const Eigen::PartialPivLU<Eigen::Matrix<double, 8, 8>> lu_m(
      split_basis(-1));
  static const Eigen::PartialPivLU<Eigen::Matrix<double, 8, 8>> lu_p(
      split_basis(+1));
  const AlgVec w = ad_g(ginv(embed(k)), a);
  const Eigen::Matrix<double, 8, 1> c =
      (sign < 0 ? lu_m : lu_p).solve(flatten(w));
  const AlgVec nu = k_from_coords(rvec(c.head<4>()));
  return coords_from_k(ad_g(embed(k), nu));
}

rvec dressing_vector_fd(const AlgVec& a, const KElem& k, double h) {
  const auto at = [&](double s) {
    return dressing(gexp(avec_scale(s, a)), k).k;
  };
  const KElem kp = at(h), km = at(-h), k0 = at(0.0);
  const cmat2 du = (kp.U - km.U) / (2.0 * h);
  const AlgVec v{du * k0.U.adjoint(), kI * (kp.t - km.t) / (2.0 * h)};
  const auto& e = kbasis();
  rvec c(4);
  for (int i = 0; i < 4; ++i) c(i) = s_r(v, e[i]);
  return c;
}

BihermitianPoint invariant_gk_at(const KElem& k) {
  BihermitianPoint b;
  b.n = 2;
  b.g = rmat::Identity(4, 4);
  b.Iplus = algebra_I_matrix();
  const rmat ad = ad_matrix(k);
  b.Iminus = ad * b.Iplus * ad.transpose();
  return b;
}

rmat pi_z_matrix(const KElem& k) {
  const BihermitianPoint b = invariant_gk_at(k);
  return 0.5 * (b.Iminus - b.Iplus);
}

rmat chart_jacobian(const rvec& x) {
  const AlgVec xa = k_from_coords(x);
  const auto& e = kbasis();
  rmat m(4, 4);
  for (int j = 0; j < 4; ++j) m.col(j) = coords_from_k(bracket(xa, e[j]));
  rmat term = rmat::Identity(4, 4);
  rmat j = term;
  for (int p = 1; p < 40; ++p) {
    term = rmat(term * m) / double(p + 1);
    j += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return j;
}

BihermitianChart group_chart(const KElem& k0) {
  BihermitianChart chart;
  chart.dim = 4;
  const rmat i4 = algebra_I_matrix();
  chart.g = [](const rvec& x) {
    const rmat j = chart_jacobian(x);
    return rmat(j.transpose() * j);
  };
  chart.iplus = [i4](const rvec& x) {
    const rmat j = chart_jacobian(x);
    return rmat(j.partialPivLu().solve(rmat(i4 * j)));
  };
  chart.iminus = [i4, k0](const rvec& x) {
    const rmat j = chart_jacobian(x);
    const rmat ad = ad_matrix(kmul(kexp(x), k0));
    return rmat(j.partialPivLu().solve(rmat(ad * i4 * ad.transpose() * j)));
  };
  return chart;
}

namespace {

// c s_R([.,.],.) pushed through the chart differential
Form cartan_candidate(const rvec& x) {
  const rmat j = chart_jacobian(x);
  std::array<AlgVec, 4> push;
  for (int i = 0; i < 4; ++i) push[i] = k_from_coords(rvec(j.col(i)));
  Form s(4, 3);
  for (const auto& idx : Form::tuples(4, 3))
    s.add_term(idx, s_r(bracket(push[idx[0]], push[idx[1]]), push[idx[2]]));
  return s;
}

double fit_scalar(const Form& h, const Form& s, double* resid) {
  double num = 0.0, den = 0.0;
  for (int p = 0; p < s.terms(); ++p) {
    num += h.raw(p).real() * s.raw(p).real();
    den += s.raw(p).real() * s.raw(p).real();
  }
  const double c = num / den;
  if (resid) {
    Form diff = h;
    diff -= s * cplx(c);
    *resid = diff.max_abs();
  }
  return c;
}

}  // namespace

CartanFit cartan_form_check(const std::vector<rvec>& samples,
                            const FDConfig& cfg) {
  const BihermitianChart chart = group_chart(KElem{});
  const MatrixField g = chart.g, ip = chart.iplus, im = chart.iminus;
  const FormField wp = [g, ip](const rvec& y) {
    return form_from_matrix2(rmat(ip(y).transpose() * g(y)));
  };
  const FormField wm = [g, im](const rvec& y) {
    return form_from_matrix2(rmat(im(y).transpose() * g(y)));
  };
  CartanFit out;
  const rvec x0 = rvec::Zero(4);
  const Form h0 = dc_op(wp, ip, x0, cfg);
  out.c = fit_scalar(h0, cartan_candidate(x0), &out.fit_residual);
  for (const rvec& x : samples) {
    const Form dcp = dc_op(wp, ip, x, cfg);
    const Form dcm = dc_op(wm, im, x, cfg);
    out.dc_sum = std::max(out.dc_sum, (dcp + dcm).max_abs());
    const double cx = fit_scalar(dcp, cartan_candidate(x), nullptr);
    out.c_drift = std::max(out.c_drift, std::abs(cx - out.c) / std::abs(out.c));
  }
  return out;
}

namespace {

struct MovedPair {
  KElem k;
  GElem b;
};

MovedPair move_pair(const GElem& b, const KElem& k, const TangentPair& xi,
                    double s) {
  const GElem bs = gmul(gexp(avec_scale(s, xi.beta)), b);
  const KElem ks = kmul(kexp(rvec(s * coords_from_k(xi.kappa))), k);
  return {ks, bs};
}

// theta^l of the dressed-K curve and theta^r of the dressed-G- curve,
// differentiated along xi by a central step.
struct DressedRates {
  AlgVec left;   // ({}^bk)^* theta^l
  AlgVec right;  // (b^k)^* theta^r
};

DressedRates dressed_rates(const GElem& b, const KElem& k,
                           const TangentPair& xi, double h) {
  const auto dress = [&](double s) {
    const MovedPair mp = move_pair(b, k, xi, s);
    return factorize_left(gmul(mp.b, embed(mp.k)), -1);
  };
  const Factorization fp = dress(h), fm = dress(-h), f0 = dress(0.0);
  DressedRates r;
  const cmat2 du = (fp.k.U - fm.k.U) / (2.0 * h);
  r.left = {f0.k.U.adjoint() * du, kI * (fp.k.t - fm.k.t) / (2.0 * h)};
  const cmat2 db = (fp.b.A - fm.b.A) / (2.0 * h);
  r.right = {db * inv2(f0.b.A), (fp.b.z - fm.b.z) / (2.0 * h)};
  return r;
}

}  // namespace

double omega_Z_eval(const GElem& b, const KElem& k, const TangentPair& xi1,
                    const TangentPair& xi2, double h) {
  const DressedRates r1 = dressed_rates(b, k, xi1, h);
  const DressedRates r2 = dressed_rates(b, k, xi2, h);
  const GElem binv = ginv(b);
  const AlgVec bl1 = ad_g(binv, xi1.beta);
  const AlgVec bl2 = ad_g(binv, xi2.beta);
  const double first = s_i(r1.left, r2.right) - s_i(r2.left, r1.right);
  const double second = s_i(bl1, xi2.kappa) - s_i(bl2, xi1.kappa);
  return first - second;
}

IMFit im_form_check(const std::vector<KElem>& pts, int dirs_per_pt, Rng& rng,
                    double h) {
  struct Probe {
    rvec rho, pim;
  };
  std::vector<Probe> probes;
  const auto lb = lagrangian_basis(-1);
  const GElem e;
  for (const KElem& k : pts) {
    const rmat piz = pi_z_matrix(k);
    for (int d = 0; d < dirs_per_pt; ++d) {
      const AlgVec a = avec_add(avec_scale(rng.cgauss(), lb[0]),
                                avec_scale(rng.cgauss(), lb[1]));
      TangentPair xa;
      xa.beta = a;
      rvec mu(4);
      for (int j = 0; j < 4; ++j) {
        TangentPair xj;
        xj.kappa = kbasis()[j];
        mu(j) = omega_Z_eval(e, k, xa, xj, h);
      }
      probes.push_back({dressing_vector_fd(a, k, h), rvec(piz * mu)});
    }
  }
  double num = 0.0, den = 0.0;
  for (const Probe& p : probes) {
    num += p.rho.dot(p.pim);
    den += p.pim.dot(p.pim);
  }
  IMFit fit;
  fit.c_z = num / den;
  for (const Probe& p : probes)
    fit.residual = std::max(fit.residual,
                            (p.rho - fit.c_z * p.pim).cwiseAbs().maxCoeff());
  return fit;
}

}  // namespace gk
