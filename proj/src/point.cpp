#include <gk/point.hpp>

#include <Eigen/Eigenvalues>

namespace gk {

namespace {

rmat j0_block(int n) {
  rmat j = rmat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -rmat::Identity(n, n);
  j.bottomLeftCorner(n, n) = rmat::Identity(n, n);
  return j;
}

// modified Gram process making q^T g q = Id for a positive form g
rmat gram_columns(rmat q, const rmat& g) {
  for (int j = 0; j < q.cols(); ++j) {
    for (int k = 0; k < j; ++k) {
      const double c = q.col(k).transpose() * g * q.col(j);
      q.col(j) -= c * q.col(k);
    }
    const double nrm2 = q.col(j).transpose() * g * q.col(j);
    q.col(j) /= std::sqrt(nrm2);
  }
  return q;
}

rmat random_complex_structure(int n, const rmat& g, Rng& rng) {
  const rmat q = gram_columns(rng.gauss_matrix(2 * n, 2 * n), g);
  return q * j0_block(n) * q.inverse();
}

rmat pairing_real(int d) {
  rmat p = rmat::Zero(2 * d, 2 * d);
  p.topRightCorner(d, d) = rmat::Identity(d, d);
  p.bottomLeftCorner(d, d) = rmat::Identity(d, d);
  return p;
}

double min_eig_sym(const rmat& m) {
  Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (m + m.transpose()));
  return es.eigenvalues().minCoeff();
}

cmat kernel_of(const cmat& m, double tol) {
  Eigen::FullPivLU<cmat> lu(m);
  lu.setThreshold(tol);
  if (lu.dimensionOfKernel() == 0) return cmat::Zero(m.cols(), 0);
  return lu.kernel();
}

rmat kernel_of(const rmat& m, double tol) {
  Eigen::FullPivLU<rmat> lu(m);
  lu.setThreshold(tol);
  if (lu.dimensionOfKernel() == 0) return rmat::Zero(m.cols(), 0);
  return lu.kernel();
}

}  // namespace

double bihermitian_residual(const BihermitianPoint& b) {
  const int d = b.dim();
  const rmat id = rmat::Identity(d, d);
  double r = max_abs(rmat(b.g - b.g.transpose()));
  for (const rmat* i : {&b.Iplus, &b.Iminus}) {
    r = std::max(r, max_abs(rmat((*i) * (*i) + id)));
    r = std::max(r, max_abs(rmat(i->transpose() * b.g * (*i) - b.g)));
  }
  return r;
}

BihermitianPoint random_bihermitian(int n, Rng& rng) {
  BihermitianPoint b;
  b.n = n;
  const rmat a = rng.gauss_matrix(2 * n, 2 * n);
  b.g = a.transpose() * a + 0.5 * rmat::Identity(2 * n, 2 * n);
  b.Iplus = random_complex_structure(n, b.g, rng);
  b.Iminus = random_complex_structure(n, b.g, rng);
  return b;
}

BihermitianPoint kahler_bihermitian(int n, Rng& rng) {
  BihermitianPoint b = random_bihermitian(n, rng);
  b.Iminus = b.Iplus;
  return b;
}

BihermitianPoint commuting_bihermitian(int n1, int n2) {
  BihermitianPoint b;
  b.n = n1 + n2;
  const int d = 2 * b.n;
  b.g = rmat::Identity(d, d);
  b.Iplus = rmat::Zero(d, d);
  b.Iplus.topLeftCorner(2 * n1, 2 * n1) = j0_block(n1);
  b.Iplus.bottomRightCorner(2 * n2, 2 * n2) = j0_block(n2);
  b.Iminus = b.Iplus;
  b.Iminus.bottomRightCorner(2 * n2, 2 * n2) = -j0_block(n2);
  return b;
}

GCPair gualtieri_map(const BihermitianPoint& b) {
  if (bihermitian_residual(b) > 1e-8)
    throw gk_error("incompatible bihermitian data");
  const int d = b.dim();
  const rmat ginv = b.g.inverse();
  const rmat sp = b.Iplus + b.Iminus;
  const rmat dm = b.Iplus - b.Iminus;
  GCPair p;
  p.ja.resize(2 * d, 2 * d);
  p.ja << sp, dm * ginv, b.g * dm, -sp.transpose();
  p.ja *= 0.5;
  p.jb.resize(2 * d, 2 * d);
  p.jb << dm, sp * ginv, b.g * sp, -dm.transpose();
  p.jb *= 0.5;
  return p;
}

AxiomReport gk_axioms_check(const GCPair& p, double tol) {
  AxiomReport r;
  const int m = static_cast<int>(p.ja.rows());
  const rmat id = rmat::Identity(m, m);
  const rmat pr = pairing_real(m / 2);
  r.j_squared = std::max(max_abs(rmat(p.ja * p.ja + id)),
                         max_abs(rmat(p.jb * p.jb + id)));
  r.commutator = max_abs(rmat(p.ja * p.jb - p.jb * p.ja));
  r.pairing_orth = std::max(max_abs(rmat(p.ja.transpose() * pr * p.ja - pr)),
                            max_abs(rmat(p.jb.transpose() * pr * p.jb - pr)));
  r.metric_min_eig = min_eig_sym(p.ja.transpose() * pr * p.jb);
  r.gk = r.j_squared < tol && r.commutator < tol && r.pairing_orth < tol &&
         r.metric_min_eig > 0;
  return r;
}

Subspace plus_i_eigenspace(const rmat& j, double tol) {
  const int m = static_cast<int>(j.rows());
  if (max_abs(rmat(j * j + rmat::Identity(m, m))) > 1e-8)
    throw gk_error("plus_i_eigenspace: matrix does not square to -Id");
  const cmat span = cmat::Identity(m, m) - kI * j.cast<cplx>();
  Subspace s = span_reduce(span, tol);
  if (s.rank != m / 2)
    throw gk_error("plus_i_eigenspace: defective eigenspace");
  return s;
}

cmat proj10(const rmat& i) {
  const int d = static_cast<int>(i.rows());
  return 0.5 * (cmat::Identity(d, d) - kI * i.cast<cplx>());
}

cmat proj01(const rmat& i) {
  const int d = static_cast<int>(i.rows());
  return 0.5 * (cmat::Identity(d, d) + kI * i.cast<cplx>());
}

Subspace t10(const rmat& i) {
  const int d = static_cast<int>(i.rows());
  return span_reduce(cmat::Identity(d, d) - kI * i.cast<cplx>());
}

Subspace t01(const rmat& i) {
  const int d = static_cast<int>(i.rows());
  return span_reduce(cmat::Identity(d, d) + kI * i.cast<cplx>());
}

Subspace forms10(const rmat& i) {
  const int d = static_cast<int>(i.rows());
  return span_reduce(cmat::Identity(d, d) -
                     kI * i.transpose().cast<cplx>());
}

Subspace tangent_embed(const Subspace& s) {
  const int d = s.ambient();
  cmat f = cmat::Zero(2 * d, s.rank);
  f.topRows(d) = s.frame.leftCols(s.rank);
  return from_frame(f);
}

Subspace form_embed(const Subspace& s) {
  const int d = s.ambient();
  cmat f = cmat::Zero(2 * d, s.rank);
  f.bottomRows(d) = s.frame.leftCols(s.rank);
  return from_frame(f);
}

Subspace tt10(const rmat& i) {
  return span_sum(tangent_embed(t10(i)), form_embed(forms10(i)));
}

EllPair ell_decomposition(const BihermitianPoint& b) {
  EllPair e;
  const cmat yp = t10(b.Iplus).frame;
  const cmat ym = t10(b.Iminus).frame;
  const cmat wp = b.omega_plus().cast<cplx>();
  const cmat wm = b.omega_minus().cast<cplx>();

  cmat fp(2 * b.dim(), yp.cols());
  fp << yp, -kI * (wp * yp);
  e.ell_plus = span_reduce(fp);

  cmat fm(2 * b.dim(), ym.cols());
  fm << ym, kI * (wm * ym);
  e.ell_minus = span_reduce(fm);

  const GCPair p = gualtieri_map(b);
  const Subspace la = plus_i_eigenspace(p.ja);
  const Subspace lb = plus_i_eigenspace(p.jb);
  e.resid_plus = subspace_gap(e.ell_plus, intersect(la, lb));
  e.resid_minus = subspace_gap(e.ell_minus, intersect(la, conjugate(lb)));
  return e;
}

RealImagParts real_imag_parts(const Subspace& l, double tol) {
  const int m = l.ambient();
  const int d = m / 2;
  const cmat f = l.onb();
  const int r = static_cast<int>(f.cols());

  cmat trans(d, 2 * r);
  trans << f.topRows(d), f.topRows(d).conjugate();
  if (span_reduce(trans, tol).rank != d)
    throw gk_error("non-transverse conjugate projections");

  const rmat ftr = f.topRows(d).real();
  const rmat fti = f.topRows(d).imag();
  const rmat fbr = f.bottomRows(d).real();
  const rmat fbi = f.bottomRows(d).imag();
  const rmat z = rmat::Zero(d, r);

  // unknowns [Re a; Im a; Re b; Im b] for u = F a in L, w = conj(F) b in
  // conj(L); rows force a common real tangent and a real output form
  rmat common(3 * d, 4 * r);
  common << ftr, -fti, -ftr, -fti,
            fti, ftr, fti, -ftr,
            fti, ftr, z, z;

  rmat sys_r(4 * d, 4 * r), sys_i(4 * d, 4 * r);
  sys_r << common, fbi, fbr, -fbi, fbr;
  sys_i << common, fbr, -fbi, -fbr, -fbi;

  const rmat kr = kernel_of(sys_r, tol);
  const rmat ki = kernel_of(sys_i, tol);

  auto harvest = [&](const rmat& k, bool imag_combo) {
    cmat cols(m, k.cols());
    for (int j = 0; j < k.cols(); ++j) {
      const cvec a = k.col(j).segment(0, r).cast<cplx>() +
                     kI * k.col(j).segment(r, r).cast<cplx>();
      const cvec bb = k.col(j).segment(2 * r, r).cast<cplx>() +
                      kI * k.col(j).segment(3 * r, r).cast<cplx>();
      const cvec u = f * a;
      const cvec w = f.conjugate() * bb;
      cvec v(m);
      v.head(d) = u.head(d);
      if (imag_combo)
        v.tail(d) = (u.tail(d) - w.tail(d)) / (2.0 * kI);
      else
        v.tail(d) = 0.5 * (u.tail(d) + w.tail(d));
      cols.col(j) = v.real().cast<cplx>();
    }
    return span_reduce(cols, tol);
  };

  RealImagParts out;
  out.real_part = harvest(kr, false);
  out.imag_part = harvest(ki, true);
  return out;
}

DiracDifference dirac_difference(const Subspace& a, const Subspace& b,
                                 const cmat& form_proj, double tol) {
  const int m = a.ambient();
  const int d = m / 2;
  if (b.ambient() != m)
    throw gk_error("dirac_difference: ambient dimension mismatch");
  const cmat fa = a.onb();
  const cmat fb = b.onb();
  const int ra = static_cast<int>(fa.cols());
  const int rb = static_cast<int>(fb.cols());

  cmat match(d, ra + rb);
  match << fa.topRows(d), -fb.topRows(d);
  const cmat k = kernel_of(match, tol);
  if (k.cols() == 0) throw gk_error("difference is not a graph");

  cmat xs(d, k.cols()), gs(d, k.cols());
  for (int j = 0; j < k.cols(); ++j) {
    const cvec u = fa * k.col(j).head(ra);
    const cvec w = fb * k.col(j).tail(rb);
    xs.col(j) = u.head(d);
    gs.col(j) = u.tail(d) - w.tail(d);
  }

  DiracDifference out;
  cmat stacked(m, k.cols());
  stacked << xs, gs;
  out.diff = span_reduce(stacked, tol);

  Eigen::CompleteOrthogonalDecomposition<cmat> cod(gs);
  cod.setThreshold(tol);
  out.sigma = xs * cod.pseudoInverse() * form_proj;

  // every matched column must be reproduced modulo pure tangent directions
  // already present in the difference
  cmat tang = cmat::Zero(m, d);
  tang.topRows(d) = cmat::Identity(d, d);
  const Subspace pure_t = intersect(out.diff, from_frame(tang), tol);
  const cmat q = pure_t.onb();
  const double scale = 1.0 + max_abs(stacked);
  for (int j = 0; j < k.cols(); ++j) {
    cvec resid = cvec::Zero(m);
    resid.head(d) = out.sigma * gs.col(j) - xs.col(j);
    if (q.cols() > 0) resid -= q * (q.adjoint() * resid);
    if (resid.norm() > 1e3 * tol * scale)
      throw gk_error("difference is not a graph");
  }
  return out;
}

ManinTriples manin_triples(const BihermitianPoint& b) {
  Eigen::FullPivLU<rmat> glu(b.g);
  if (!glu.isInvertible()) throw gk_error("manin_triples: degenerate metric");

  const int d = b.dim();
  const cmat p10p = proj10(b.Iplus);
  const cmat p01p = proj01(b.Iplus);
  const cmat gC = b.g.cast<cplx>();

  auto plus_side = [&](const Subspace& source) {
    const cmat x = source.frame.leftCols(source.rank);
    cmat f(2 * d, x.cols());
    f << p10p * x, -2.0 * (gC * (p01p * x));
    return span_reduce(f);
  };

  ManinTriples t;
  t.aplus = plus_side(t01(b.Iminus));
  t.bplus = plus_side(t10(b.Iminus));

  const GCPair p = gualtieri_map(b);
  const Subspace la = plus_i_eigenspace(p.ja);
  const Subspace lb = plus_i_eigenspace(p.jb);
  const cmat iwm = kI * b.omega_minus().cast<cplx>();
  const Subspace tt = tt10(b.Iminus);
  t.aminus = intersect(tt, gauge_frame(iwm, conjugate(la)));
  t.bminus = intersect(tt, gauge_frame(iwm, lb));
  return t;
}

Subspace matched_pair_space(const BihermitianPoint& b, const Subspace& part,
                            int side) {
  const rmat& i = side > 0 ? b.Iplus : b.Iminus;
  return span_sum(tangent_embed(t01(i)), part);
}

GaugeCycleResidual gauge_cycle_check(const BihermitianPoint& b) {
  const ManinTriples t = manin_triples(b);
  const Subspace lap = matched_pair_space(b, t.aplus, +1);
  const Subspace lam = matched_pair_space(b, t.aminus, -1);
  const Subspace lbp = matched_pair_space(b, t.bplus, +1);
  const Subspace lbm = matched_pair_space(b, t.bminus, -1);

  const cmat wp = b.omega_plus().cast<cplx>();
  const cmat wm = b.omega_minus().cast<cplx>();

  GaugeCycleResidual r;
  r.first = subspace_gap(lap, gauge_frame(-kI * (wp + wm), lam));
  r.second = subspace_gap(conjugate(lbm), gauge_frame(kI * (wp - wm), lbp));
  return r;
}

PoissonTensors poisson_tensors(const BihermitianPoint& b) {
  PoissonTensors p;
  const rmat ginv = b.g.inverse();
  p.pi_a = 0.5 * (b.Iplus - b.Iminus) * ginv;
  p.pi_b = 0.5 * (b.Iplus + b.Iminus) * ginv;
  p.q = -p.pi_a * b.g * p.pi_b;
  const rmat q2 =
      -0.25 * (b.Iplus * b.Iminus - b.Iminus * b.Iplus) * ginv;
  p.consistency = max_abs(rmat(p.q - q2));
  return p;
}

double ImagPartReport::max() const {
  double r = ai_plus;
  for (double v : {bi_plus, ai_minus, bi_minus, ar_plus, br_plus, ar_minus,
                   br_minus})
    r = std::max(r, v);
  return r;
}

ImagPartReport imag_part_identities(const BihermitianPoint& b) {
  const int d = b.dim();
  const ManinTriples t = manin_triples(b);
  const PoissonTensors p = poisson_tensors(b);
  const GCPair gc = gualtieri_map(b);

  auto graph_of = [&](const rmat& pi) {
    cmat f(2 * d, d);
    f << pi.cast<cplx>(), cmat::Identity(d, d);
    return from_frame(f);
  };

  const cmat wp = b.omega_plus().cast<cplx>();
  const cmat wm = b.omega_minus().cast<cplx>();

  const RealImagParts ap = real_imag_parts(matched_pair_space(b, t.aplus, +1));
  const RealImagParts bp = real_imag_parts(matched_pair_space(b, t.bplus, +1));
  const RealImagParts am = real_imag_parts(matched_pair_space(b, t.aminus, -1));
  const RealImagParts bm = real_imag_parts(matched_pair_space(b, t.bminus, -1));

  ImagPartReport r;
  r.ai_plus = subspace_gap(ap.imag_part, gauge_frame(-wp, graph_of(-p.pi_a)));
  r.bi_plus = subspace_gap(bp.imag_part, gauge_frame(-wp, graph_of(-p.pi_b)));
  r.ai_minus = subspace_gap(am.imag_part, gauge_frame(wm, graph_of(-p.pi_a)));
  r.bi_minus = subspace_gap(bm.imag_part, gauge_frame(wm, graph_of(p.pi_b)));

  cmat cot = cmat::Zero(2 * d, d);
  cot.bottomRows(d) = cmat::Identity(d, d);
  const Subspace ja_img = span_reduce(gc.ja.cast<cplx>() * cot);
  const Subspace jb_img = span_reduce(gc.jb.cast<cplx>() * cot);
  r.ar_plus = subspace_gap(ap.real_part, ja_img);
  r.ar_minus = subspace_gap(am.real_part, ja_img);
  r.br_plus = subspace_gap(bp.real_part, jb_img);
  r.br_minus = subspace_gap(bm.real_part, jb_img);
  return r;
}

Reconstruction reconstruct_metric(const rmat& pi_a, const rmat& pi_b,
                                  const rmat& iplus, const rmat& iminus) {
  const rmat mp = pi_b + pi_a;
  const rmat mm = pi_b - pi_a;
  Eigen::FullPivLU<rmat> lup(mp), lum(mm);
  if (!lup.isInvertible() || !lum.isInvertible())
    throw gk_error("non-complementary graphs");

  Reconstruction r;
  r.omega_plus = -lup.inverse();
  r.omega_minus = -lum.inverse();

  r.compat1 = std::max(
      max_abs(rmat(r.omega_plus * iplus + iminus.transpose() * r.omega_minus)),
      max_abs(rmat(r.omega_plus * iminus + iplus.transpose() * r.omega_minus)));
  r.compat2 = max_abs(
      rmat(iplus.transpose() * r.omega_plus - iminus.transpose() * r.omega_minus));
  double mix = max_abs(rmat(iplus * pi_a - pi_a * iminus.transpose()));
  mix = std::max(mix, max_abs(rmat(iminus * pi_a - pi_a * iplus.transpose())));
  mix = std::max(mix, max_abs(rmat(-iplus * pi_b - pi_b * iminus.transpose())));
  mix = std::max(mix, max_abs(rmat(-iminus * pi_b - pi_b * iplus.transpose())));
  r.mixed = mix;

  r.g = -r.omega_plus * iplus;
  r.verdict = min_eig_sym(r.g) > 0 ? "GK" : "pseudo-GK";
  return r;
}

GaugeDataResult gk_from_gauge_data(const rmat& iplus, const rmat& iminus,
                                   const rmat& f1, const rmat& f2) {
  const rmat fp = 0.5 * (-f1 + f2);
  const rmat fm = 0.5 * (-f1 - f2);

  GaugeDataResult r;
  r.omega_plus = 0.5 * (fp + iplus.transpose() * fp * iplus);
  r.beta_plus = 0.5 * (fp - iplus.transpose() * fp * iplus);
  r.omega_minus = 0.5 * (fm + iminus.transpose() * fm * iminus);
  r.beta_minus = 0.5 * (fm - iminus.transpose() * fm * iminus);

  const rmat mplus = -fp * iplus;
  const rmat mminus = -fm * iminus;
  const rmat gplus = 0.5 * (mplus + mplus.transpose());
  const rmat gminus = 0.5 * (mminus + mminus.transpose());
  const rmat bplus = 0.5 * (mplus - mplus.transpose());
  const rmat bminus = 0.5 * (mminus - mminus.transpose());

  r.coincide_g = max_abs(rmat(gplus - gminus));
  r.coincide_b = max_abs(rmat(bplus + bminus));
  r.g = gplus;
  r.b = bplus;
  if (r.coincide_g > 1e-8 || r.coincide_b > 1e-8)
    r.verdict = "inconsistent";
  else
    r.verdict = min_eig_sym(r.g) > 0 ? "GK" : "pseudo-GK";
  return r;
}

}  // namespace gk
