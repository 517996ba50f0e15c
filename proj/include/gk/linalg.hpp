#pragma once

#include <gk/common.hpp>

namespace gk {

// The split space V + V* with dim V = d.  Vectors are stored as stacked
// coordinate columns [X; a], tangent block on top.  The canonical pairing
// <X+a, Y+b> = a(Y) + b(X) has matrix P = [[0, Id], [Id, 0]]; on the
// complexification the same matrix is extended bilinearly (no conjugation).
struct SplitSpace {
  int d = 0;

  explicit SplitSpace(int dim) : d(dim) {}
  int ambient() const { return 2 * d; }
  cmat pairing() const;
};

// Subspace of C^m spanned by the columns of `frame`.  span_reduce stores an
// orthonormal frame obtained by rank-revealing reduction; from_frame keeps
// the caller's columns untouched, which matters for checks specified on the
// raw frame (isotropy_check below reports frame-dependent magnitudes).
struct Subspace {
  cmat frame;
  int rank = 0;

  int ambient() const { return static_cast<int>(frame.rows()); }
  bool zero() const { return rank == 0; }
  cmat onb() const;
};

Subspace span_reduce(const cmat& vectors, double tol = kTolDefault);
Subspace from_frame(const cmat& frame);

Subspace intersect(const Subspace& u, const Subspace& w,
                   double tol = kTolDefault);
Subspace span_sum(const Subspace& u, const Subspace& w,
                  double tol = kTolDefault);

// Largest principal-angle sine between two subspaces; 0 when both are zero.
double subspace_gap(const Subspace& u, const Subspace& w);
bool subspace_eq(const Subspace& u, const Subspace& w,
                 double tol = kTolDefault);

// Worst pairing magnitude over the stored frame: the largest singular value
// of F^T P F.  Zero (up to tol) iff the span is isotropic.
double isotropy_check(const Subspace& l, const SplitSpace& space);

Subspace conjugate(const Subspace& u);

// e^B acting by X+a -> X + (a + BX) for antisymmetric B (real or complex).
Subspace gauge_frame(const cmat& b, const Subspace& l);

}  // namespace gk
