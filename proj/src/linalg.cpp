#include <gk/linalg.hpp>

namespace gk {

cmat SplitSpace::pairing() const {
  cmat p = cmat::Zero(2 * d, 2 * d);
  p.topRightCorner(d, d) = cmat::Identity(d, d);
  p.bottomLeftCorner(d, d) = cmat::Identity(d, d);
  return p;
}

cmat Subspace::onb() const {
  if (rank == 0) return cmat::Zero(frame.rows(), 0);
  Eigen::ColPivHouseholderQR<cmat> qr(frame);
  const int r = static_cast<int>(qr.rank());
  cmat q = qr.householderQ() * cmat::Identity(frame.rows(), r);
  return q;
}

Subspace span_reduce(const cmat& vectors, double tol) {
  Subspace s;
  if (vectors.cols() == 0) {
    s.frame = cmat::Zero(vectors.rows(), 0);
    s.rank = 0;
    return s;
  }
  Eigen::ColPivHouseholderQR<cmat> qr(vectors);
  qr.setThreshold(tol);
  const int r = static_cast<int>(qr.rank());
  s.frame = qr.householderQ() * cmat::Identity(vectors.rows(), r);
  s.rank = r;
  return s;
}

Subspace from_frame(const cmat& frame) {
  Subspace s;
  s.frame = frame;
  s.rank = static_cast<int>(frame.cols());
  return s;
}

Subspace intersect(const Subspace& u, const Subspace& w, double tol) {
  if (u.ambient() != w.ambient())
    throw gk_error("intersect: ambient dimension mismatch");
  if (u.rank == 0 || w.rank == 0) {
    Subspace s;
    s.frame = cmat::Zero(u.ambient(), 0);
    s.rank = 0;
    return s;
  }
  const cmat uo = u.onb();
  const cmat wo = w.onb();
  cmat m(u.ambient(), uo.cols() + wo.cols());
  m << uo, -wo;
  Eigen::FullPivLU<cmat> lu(m);
  lu.setThreshold(tol);
  const cmat k = lu.kernel();
  if (lu.dimensionOfKernel() == 0) {
    Subspace s;
    s.frame = cmat::Zero(u.ambient(), 0);
    s.rank = 0;
    return s;
  }
  const cmat vectors = uo * k.topRows(uo.cols());
  return span_reduce(vectors, tol);
}

Subspace span_sum(const Subspace& u, const Subspace& w, double tol) {
  if (u.ambient() != w.ambient())
    throw gk_error("span_sum: ambient dimension mismatch");
  cmat m(u.ambient(), u.frame.cols() + w.frame.cols());
  m << u.frame, w.frame;
  return span_reduce(m, tol);
}

double subspace_gap(const Subspace& u, const Subspace& w) {
  if (u.rank == 0 && w.rank == 0) return 0.0;
  if (u.rank == 0 || w.rank == 0) return 1.0;
  const cmat uo = u.onb();
  const cmat wo = w.onb();
  const cmat resid = wo - uo * (uo.adjoint() * wo);
  const cmat resid2 = uo - wo * (wo.adjoint() * uo);
  return std::max(spectral_norm(resid), spectral_norm(resid2));
}

bool subspace_eq(const Subspace& u, const Subspace& w, double tol) {
  if (u.ambient() != w.ambient()) return false;
  if (u.rank != w.rank) return false;
  return subspace_gap(u, w) < tol;
}

double isotropy_check(const Subspace& l, const SplitSpace& space) {
  if (l.rank == 0) return 0.0;
  if (l.ambient() != space.ambient())
    throw gk_error("isotropy_check: ambient dimension mismatch");
  const cmat f = l.frame.leftCols(l.rank);
  const cmat m = f.transpose() * space.pairing() * f;
  return spectral_norm(m);
}

Subspace conjugate(const Subspace& u) {
  Subspace s;
  s.frame = u.frame.conjugate();
  s.rank = u.rank;
  return s;
}

Subspace gauge_frame(const cmat& b, const Subspace& l) {
  if (max_abs(cmat(b + b.transpose())) > 1e-9)
    throw gk_error("gauge_frame: B is not antisymmetric");
  const int d = static_cast<int>(b.rows());
  if (l.ambient() != 2 * d)
    throw gk_error("gauge_frame: dimension mismatch");
  Subspace s;
  s.frame = l.frame;
  s.frame.bottomRows(d) += b * l.frame.topRows(d);
  s.rank = l.rank;
  return s;
}

}  // namespace gk
