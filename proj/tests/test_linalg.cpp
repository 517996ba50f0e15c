#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gk/linalg.hpp>

using namespace gk;

namespace {

cmat basis_cols(int m, std::initializer_list<int> idx) {
  cmat f = cmat::Zero(m, static_cast<long>(idx.size()));
  int j = 0;
  for (int i : idx) f(i, j++) = 1.0;
  return f;
}

}  // namespace

TEST_CASE("span_reduce basics") {
  const cmat id4 = cmat::Identity(4, 4);
  CHECK(span_reduce(id4).rank == 4);

  Rng rng(7);
  cvec v = rng.cgauss_matrix(4, 1);
  cmat coll(4, 3);
  coll << v, 2.0 * v, 3.0 * v;
  const Subspace s = span_reduce(coll);
  CHECK(s.rank == 1);
  CHECK(subspace_eq(s, span_reduce(v)));

  // six vectors through a rank-3 factor
  cmat a = rng.cgauss_matrix(4, 3);
  cmat vecs = a * rng.cgauss_matrix(3, 6);
  CHECK(span_reduce(vecs).rank == 3);

  const Subspace z = span_reduce(cmat::Zero(4, 0));
  CHECK(z.rank == 0);
}

TEST_CASE("intersect and dimension formula") {
  const Subspace u12 = span_reduce(basis_cols(4, {0, 1}));
  const Subspace u34 = span_reduce(basis_cols(4, {2, 3}));
  CHECK(subspace_eq(intersect(u12, u12), u12));
  CHECK(intersect(u12, u34).rank == 0);

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 4 + (trial % 3);
    const Subspace u = span_reduce(rng.cgauss_matrix(m, 3));
    const Subspace w = span_reduce(rng.cgauss_matrix(m, 3));
    const int dim_sum = span_sum(u, w).rank;
    const int dim_cap = intersect(u, w).rank;
    CHECK(dim_sum + dim_cap == u.rank + w.rank);
  }
}

TEST_CASE("subspace_eq") {
  Rng rng(3);
  const Subspace u = span_reduce(rng.cgauss_matrix(4, 2));

  cmat mix = rng.cgauss_matrix(2, 2);
  CHECK(subspace_eq(u, span_reduce(u.frame * mix)));

  CHECK_FALSE(subspace_eq(span_reduce(basis_cols(4, {0})),
                          span_reduce(basis_cols(4, {1}))));

  cmat noisy = u.frame + 1e-14 * rng.cgauss_matrix(4, 2);
  CHECK(subspace_eq(u, span_reduce(noisy), 1e-10));
}

TEST_CASE("span_reduce is projectively idempotent") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const cmat f = rng.cgauss_matrix(6, 4) * rng.cgauss_matrix(4, 5);
    const Subspace s = span_reduce(f);
    CHECK(subspace_eq(s, span_reduce(s.frame)));
  }
}

TEST_CASE("isotropy_check") {
  const int d = 3;
  const SplitSpace sp(d);

  // tangent block: a = 0
  cmat tm = cmat::Zero(2 * d, d);
  tm.topRows(d) = cmat::Identity(d, d);
  CHECK(isotropy_check(from_frame(tm), sp) == doctest::Approx(0.0));

  // graph of a symmetric positive g scores twice its top eigenvalue
  Rng rng(17);
  rmat a = rng.gauss_matrix(d, d);
  rmat g = a.transpose() * a + 0.5 * rmat::Identity(d, d);
  cmat gf(2 * d, d);
  gf.topRows(d) = cmat::Identity(d, d);
  gf.bottomRows(d) = g.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<rmat> es(g);
  const double lmax = es.eigenvalues().maxCoeff();
  CHECK(isotropy_check(from_frame(gf), sp) ==
        doctest::Approx(2.0 * lmax).epsilon(1e-12));

  // graph of an antisymmetric B is isotropic
  rmat braw = rng.gauss_matrix(d, d);
  rmat b = braw - braw.transpose();
  cmat bf(2 * d, d);
  bf.topRows(d) = cmat::Identity(d, d);
  bf.bottomRows(d) = b.cast<cplx>();
  CHECK(isotropy_check(from_frame(bf), sp) < 1e-14);
}

TEST_CASE("isotropy_check stable across orthonormal re-frames") {
  const int d = 3;
  const SplitSpace sp(d);
  Rng rng(23);
  const Subspace l = span_reduce(rng.cgauss_matrix(2 * d, d));
  const double base = isotropy_check(l, sp);
  for (int trial = 0; trial < 20; ++trial) {
    cmat mix = rng.cgauss_matrix(d, d);
    const Subspace re = span_reduce(l.frame * mix);
    CHECK(std::abs(isotropy_check(re, sp) - base) < 1e-12);
  }
}

TEST_CASE("gauge_frame") {
  const int d = 3;
  const SplitSpace sp(d);
  Rng rng(29);

  rmat braw = rng.gauss_matrix(d, d);
  cmat b = (braw - braw.transpose()).cast<cplx>();
  const Subspace l = span_reduce(rng.cgauss_matrix(2 * d, d));

  CHECK(subspace_eq(gauge_frame(cmat::Zero(d, d), l), l));
  CHECK(subspace_eq(gauge_frame(-b, gauge_frame(b, l)), l));

  // composition law e^{B1} e^{B2} = e^{B1+B2}
  rmat b2raw = rng.gauss_matrix(d, d);
  cmat b2 = (b2raw - b2raw.transpose()).cast<cplx>();
  CHECK(subspace_eq(gauge_frame(b, gauge_frame(b2, l)),
                    gauge_frame(b + b2, l)));

  // pairing isometry: isotropy residuals agree on matched frames
  const Subspace lg = gauge_frame(b, l);
  CHECK(std::abs(isotropy_check(lg, sp) - isotropy_check(l, sp)) < 1e-9);

  cmat notanti = cmat::Identity(d, d);
  CHECK_THROWS_AS(gauge_frame(notanti, l), gk_error);
}
