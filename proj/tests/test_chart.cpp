#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gk/chart.hpp>

#include <cmath>
#include <fstream>

using namespace gk;

namespace {

double form_dist(const Form& a, const Form& b) { return (a - b).max_abs(); }

double section_dist(const Section& a, const Section& b) {
  const double v = (a.vec - b.vec).cwiseAbs().maxCoeff();
  return std::max(v, form_dist(a.form, b.form));
}

// Random trigonometric 2-form on R^4 with a hand-coded exterior derivative.
struct Trig2 {
  double amp[6];
  rvec w[6];
  double ph[6];

  static const int kPairs[6][2];

  explicit Trig2(Rng& rng) {
    for (int t = 0; t < 6; ++t) {
      amp[t] = rng.uniform(0.5, 1.5);
      ph[t] = rng.uniform(0.0, 2.0 * kPi);
      w[t] = rvec(4);
      for (int i = 0; i < 4; ++i) w[t](i) = rng.uniform(-1.5, 1.5);
    }
  }

  Form eval(const rvec& x) const {
    Form f(4, 2);
    for (int t = 0; t < 6; ++t)
      f.add_term({kPairs[t][0], kPairs[t][1]},
                 amp[t] * std::sin(w[t].dot(x) + ph[t]));
    return f;
  }

  Form d(const rvec& x) const {
    Form out(4, 3);
    for (int t = 0; t < 6; ++t) {
      const double c = amp[t] * std::cos(w[t].dot(x) + ph[t]);
      for (int k = 0; k < 4; ++k)
        out.add_term({k, kPairs[t][0], kPairs[t][1]}, c * w[t](k));
    }
    return out;
  }
};

const int Trig2::kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                 {1, 2}, {1, 3}, {2, 3}};

// Trigonometric 1-form; d of it gives a closed 2-form in closed form.
struct Trig1 {
  double amp[4];
  rvec w[4];

  explicit Trig1(Rng& rng) {
    for (int t = 0; t < 4; ++t) {
      amp[t] = rng.uniform(0.5, 1.5);
      w[t] = rvec(4);
      for (int i = 0; i < 4; ++i) w[t](i) = rng.uniform(-1.0, 1.0);
    }
  }

  Form eval(const rvec& x) const {
    Form f(4, 1);
    for (int t = 0; t < 4; ++t)
      f.add_term({t}, amp[t] * std::sin(w[t].dot(x)));
    return f;
  }

  Form d(const rvec& x) const {
    Form out(4, 2);
    for (int t = 0; t < 4; ++t) {
      const double c = amp[t] * std::cos(w[t].dot(x));
      for (int k = 0; k < 4; ++k) out.add_term({k, t}, c * w[t](k));
    }
    return out;
  }
};

std::vector<rvec> random_points(int count, int dim, Rng& rng, double radius) {
  std::vector<rvec> out;
  for (int s = 0; s < count; ++s) {
    rvec x(dim);
    for (int i = 0; i < dim; ++i) x(i) = rng.uniform(-radius, radius);
    out.push_back(x);
  }
  return out;
}

// Hermitian form of the round metric rescaled by 1/r^2 on C^2 minus 0.
Form hopf_hermitian(const rvec& x) {
  const rmat j0 = standard_complex_structure(4);
  const rmat w = j0.transpose() / x.squaredNorm();
  return form_from_matrix2(w);
}

// phi dz1^dz2 for a smooth complex amplitude phi: a (2,0)-form field.
Form twozero_gauge(const rvec& x) {
  const cplx phi =
      (0.3 + 0.2 * kI) * std::exp(0.1 * (x(0) - x(3))) +
      0.15 * std::sin(x(1) + 0.4 * x(2));
  Form out(4, 2);
  out.add_term({0, 2}, phi);
  out.add_term({1, 3}, -phi);
  out.add_term({0, 3}, phi * kI);
  out.add_term({1, 2}, phi * kI);
  return out;
}

}  // namespace

TEST_CASE("exterior derivative: polynomial exactness and d^2") {
  const FDConfig cfg;
  const FormField alpha = [](const rvec& x) {
    Form f(2, 1);
    f.add_term({1}, x(0));
    return f;
  };
  for (const double x0 : {0.0, 1.3, -0.4}) {
    rvec x(2);
    x << x0, 0.7 * x0 - 0.2;
    const Form da = fd_d(alpha, x, cfg);
    CHECK(std::abs(da.coef({0, 1}) - 1.0) < 1e-12);
  }

  const FormField df = [](const rvec& x) {
    Form f(2, 1);
    f.add_term({0}, std::cos(x(0)) * x(1));
    f.add_term({1}, std::sin(x(0)));
    return f;
  };
  rvec x(2);
  x << 0.4, -1.1;
  CHECK(fd_d(df, x, cfg).max_abs() < 1e-8);
}

TEST_CASE("exterior derivative matches the analytic oracle on R^4") {
  Rng rng(411);
  const Trig2 trig(rng);
  const FormField field = [&trig](const rvec& x) { return trig.eval(x); };
  const FDConfig cfg;
  for (const rvec& x : random_points(6, 4, rng, 1.0))
    CHECK(form_dist(fd_d(field, x, cfg), trig.d(x)) < 1e-7);
}

TEST_CASE("d of d: residual at h = 1e-3 and order of the scheme") {
  Rng rng(412);
  const Trig2 trig(rng);
  const FormField field = [&trig](const rvec& x) { return trig.eval(x); };
  const auto pts = random_points(3, 4, rng, 1.0);

  FDConfig fine;
  fine.h = 1e-3;
  for (const rvec& x : pts) {
    const FormField dfield = [&](const rvec& y) { return fd_d(field, y, fine); };
    CHECK(fd_d(dfield, x, fine).max_abs() < 1e-7);
  }

  // Nesting the same stencil twice cancels exactly, so the order of the
  // scheme is measured on a single derivative against the analytic one.
  FDConfig coarse;
  coarse.h = 0.05;
  FDConfig half = coarse;
  half.h = 0.025;
  for (const rvec& x : pts) {
    const double ec = form_dist(fd_d(field, x, coarse), trig.d(x));
    const double eh = form_dist(fd_d(field, x, half), trig.d(x));
    CHECK(ec / eh >= 8.0);
  }
}

TEST_CASE("d^c calibration on |z|^2") {
  const FDConfig cfg;
  const double c0 = dc_calibration(cfg);
  CHECK(std::abs(c0 - 2.0) < 1e-6);
}

TEST_CASE("d^c is odd under I -> -I") {
  const FDConfig cfg;
  const rmat j0 = standard_complex_structure(4);
  const MatrixField ip = [j0](const rvec&) { return j0; };
  const MatrixField in = [j0](const rvec&) { return rmat(-j0); };

  const FormField f = [](const rvec& x) {
    Form v(4, 0);
    v.raw(0) = std::sin(x(0)) * x(2) + std::cos(x(1) * x(3));
    return v;
  };
  Rng rng(413);
  const Trig2 trig(rng);
  const FormField two = [&trig](const rvec& x) { return trig.eval(x); };

  for (const rvec& x : random_points(4, 4, rng, 1.0)) {
    CHECK(form_dist(dc_op(f, ip, x, cfg), dc_op(f, in, x, cfg) * cplx(-1.0)) <
          1e-13);
    CHECK(form_dist(dc_op(two, ip, x, cfg),
                    dc_op(two, in, x, cfg) * cplx(-1.0)) < 1e-13);
  }

  const MatrixField bad = [](const rvec&) {
    return rmat(rmat::Identity(4, 4));
  };
  rvec x = rvec::Zero(4);
  CHECK_THROWS_AS(dc_op(f, bad, x, cfg), gk_error);
}

TEST_CASE("pluriharmonicity of holomorphic functions") {
  const FDConfig cfg;
  const rmat j0 = standard_complex_structure(4);
  const MatrixField ii = [j0](const rvec&) { return j0; };
  // Re(z1^2 + z1 e^{z2})
  const FormField f = [](const rvec& x) {
    const cplx z1(x(0), x(1)), z2(x(2), x(3));
    Form v(4, 0);
    v.raw(0) = (z1 * z1 + z1 * std::exp(z2)).real();
    return v;
  };
  const FormField dcf = [&](const rvec& y) { return dc_op(f, ii, y, cfg); };
  Rng rng(414);
  for (const rvec& x : random_points(5, 4, rng, 0.8))
    CHECK(fd_d(dcf, x, cfg).max_abs() < 1e-7);
}

TEST_CASE("Courant bracket basics") {
  const FDConfig cfg;
  const FormField no_h;

  const SectionField c1 = [](const rvec&) {
    Section s;
    s.vec = cvec::Zero(2);
    s.vec(0) = 1.0;
    s.form = Form(2, 1);
    s.form.add_term({1}, 0.7);
    return s;
  };
  const SectionField c2 = [](const rvec&) {
    Section s;
    s.vec = cvec::Zero(2);
    s.vec(1) = -2.0;
    s.form = Form(2, 1);
    s.form.add_term({0}, 0.3);
    return s;
  };
  rvec x(2);
  x << 0.2, -0.5;
  const Section z = courant_bracket_H(c1, c2, no_h, x, cfg);
  CHECK(z.vec.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(z.form.max_abs() < 1e-12);

  // X = d/dx1, beta = x1 dx2: the bracket is L_X beta = dx2.
  const SectionField sx = [](const rvec&) {
    Section s;
    s.vec = cvec::Zero(2);
    s.vec(0) = 1.0;
    s.form = Form(2, 1);
    return s;
  };
  const SectionField sb = [](const rvec& y) {
    Section s;
    s.vec = cvec::Zero(2);
    s.form = Form(2, 1);
    s.form.add_term({1}, y(0));
    return s;
  };
  const Section lie = courant_bracket_H(sx, sb, no_h, x, cfg);
  CHECK(lie.vec.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(lie.form.coef({1}) - 1.0) < 1e-10);
  CHECK(std::abs(lie.form.coef({0})) < 1e-10);
}

TEST_CASE("bracket of a section with itself is half the pairing gradient") {
  const FDConfig cfg;
  const FormField no_h;
  const SectionField s = [](const rvec& y) {
    Section v;
    v.vec = cvec::Zero(2);
    v.vec(0) = std::sin(y(1)) + 2.0;
    v.vec(1) = y(0);
    v.form = Form(2, 1);
    v.form.add_term({0}, std::cos(y(0) * y(1)));
    v.form.add_term({1}, y(1) - 0.3);
    return v;
  };
  const FormField half_pairing = [&s](const rvec& y) {
    const Section v = s(y);
    Form out(2, 0);
    out.raw(0) = v.form.eval({v.vec});
    return out;
  };
  Rng rng(418);
  for (const rvec& x : random_points(4, 2, rng, 1.0)) {
    const Section self = courant_bracket_H(s, s, no_h, x, cfg);
    CHECK(self.vec.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(form_dist(self.form, fd_d(half_pairing, x, cfg)) < 1e-6);
  }

  // Isotropic section: the self-bracket vanishes.
  const SectionField iso = [](const rvec& y) {
    Section v;
    v.vec = cvec::Zero(2);
    v.vec(0) = 1.0;
    v.vec(1) = std::sin(y(0));
    v.form = Form(2, 1);
    v.form.add_term({0}, std::sin(y(0)) * std::exp(y(1)));
    v.form.add_term({1}, -std::exp(y(1)));
    return v;
  };
  for (const rvec& x : random_points(4, 2, rng, 1.0))
    CHECK(section_dist(courant_bracket_H(iso, iso, no_h, x, cfg),
                       Section{cvec::Zero(2), Form(2, 1)}) < 1e-8);
}

TEST_CASE("closed-B gauge symmetry of the bracket") {
  const FDConfig cfg;
  Rng rng(415);
  const Trig1 gamma(rng);
  const FormField bfield = [&gamma](const rvec& x) { return gamma.d(x); };

  auto trig_section = [&rng]() {
    const double a0 = rng.uniform(0.5, 1.5), a1 = rng.uniform(0.5, 1.5);
    rvec w0(4), w1(4);
    for (int i = 0; i < 4; ++i) {
      w0(i) = rng.uniform(-1.0, 1.0);
      w1(i) = rng.uniform(-1.0, 1.0);
    }
    return SectionField([a0, a1, w0, w1](const rvec& x) {
      Section s;
      s.vec = cvec::Zero(4);
      for (int i = 0; i < 4; ++i)
        s.vec(i) = a0 * std::sin(w0.dot(x) + 0.3 * i) + 1.0;
      s.form = Form(4, 1);
      for (int i = 0; i < 4; ++i)
        s.form.add_term({i}, a1 * std::cos(w1.dot(x) + 0.2 * i));
      return s;
    });
  };

  auto gauge = [&bfield](const SectionField& s) {
    return SectionField([s, &bfield](const rvec& x) {
      Section v = s(x);
      v.form += bfield(x).contract(v.vec);
      return v;
    });
  };

  const FormField no_h;
  const SectionField s1 = trig_section();
  const SectionField s2 = trig_section();
  const SectionField g1 = gauge(s1);
  const SectionField g2 = gauge(s2);
  for (const rvec& x : random_points(4, 4, rng, 0.9)) {
    Section lhs = courant_bracket_H(s1, s2, no_h, x, cfg);
    lhs.form += bfield(x).contract(lhs.vec);
    const Section rhs = courant_bracket_H(g1, g2, no_h, x, cfg);
    CHECK(section_dist(lhs, rhs) < 1e-6);
  }
}

TEST_CASE("involutivity: graphs, antiholomorphic frames, rank drops") {
  const FDConfig cfg;
  Rng rng(416);
  const Trig2 btrig(rng);
  const FormField bfield = [&btrig](const rvec& x) { return btrig.eval(x); };
  const FormField h = [&btrig](const rvec& x) { return btrig.d(x); };

  std::vector<SectionField> graph;
  for (int i = 0; i < 4; ++i)
    graph.push_back([i, &bfield](const rvec& x) {
      Section s;
      s.vec = cvec::Zero(4);
      s.vec(i) = 1.0;
      s.form = bfield(x).contract(s.vec);
      return s;
    });
  const auto pts = random_points(5, 4, rng, 1.0);
  CHECK(involutivity_residual(graph, h, pts, cfg) < 1e-6);

  // Without the dB twist the graph of a non-closed B is not involutive.
  const FormField no_h;
  CHECK(involutivity_residual(graph, no_h, pts, cfg) > 1e-3);

  std::vector<SectionField> antihol;
  for (int k = 0; k < 2; ++k)
    antihol.push_back([k](const rvec&) {
      Section s;
      s.vec = cvec::Zero(4);
      s.vec(2 * k) = 1.0;
      s.vec(2 * k + 1) = kI;
      s.form = Form(4, 1);
      return s;
    });
  CHECK(involutivity_residual(antihol, no_h, pts, cfg) < 1e-12);

  std::vector<SectionField> dropping;
  dropping.push_back([](const rvec& x) {
    Section s;
    s.vec = cvec::Zero(4);
    s.vec(0) = x(0);
    s.form = Form(4, 1);
    return s;
  });
  const std::vector<rvec> at_zero{rvec::Zero(4)};
  CHECK_THROWS_AS(involutivity_residual(dropping, no_h, at_zero, cfg),
                  gk_error);
}

TEST_CASE("verify_gk_chart: flat, curved product, broken product") {
  const FDConfig cfg;
  ChartConfig flat;
  flat.dim = 4;
  flat.structure = "flat_kahler";
  flat.samples = grid_samples(rvec::Zero(4), 0.5, 2);
  const BihermitianChart fc = make_chart(flat);
  CHECK(verify_gk_chart(fc.g, fc.iplus, fc.iminus, flat.samples, cfg).max() <
        1e-8);

  ChartConfig prod;
  prod.dim = 4;
  prod.structure = "commuting_product";
  prod.params = {{"a1", 0.3}, {"a2", 0.2}};
  prod.samples = grid_samples(rvec::Zero(4), 0.4, 2);
  const BihermitianChart pc = make_chart(prod);
  const GKChartReport rep =
      verify_gk_chart(pc.g, pc.iplus, pc.iminus, prod.samples, cfg);
  CHECK(rep.max() < 1e-7);

  // Cross-factor conformal dependence breaks the closedness of the torsion:
  // the defect shows up only in the pluriclosed residual.
  CommutingBase bad = flat_commuting_base(2, 2);
  bad.g1 = [](const rvec& x) {
    return rmat(std::exp(0.3 * std::sin(x(2))) * rmat::Identity(2, 2));
  };
  const ScalarField zero = [](const rvec&) { return 0.0; };
  const BihermitianChart bc = deformed_chart(zero, 0.0, bad, cfg);
  const GKChartReport brep =
      verify_gk_chart(bc.g, bc.iplus, bc.iminus, prod.samples, cfg);
  CHECK(brep.dc_sum < 1e-7);
  CHECK(brep.pluriclosed_plus > 1e-3);
}

TEST_CASE("pluriclosed splitting: recovery, full identity, gauge shift") {
  const FDConfig cfg;
  Rng rng(417);

  // Curved Kahler form: per-factor conformal factors, so H vanishes and the
  // splitting data reduces to B = -omega.
  const FormField kahler = [](const rvec& x) {
    const rmat j0 = standard_complex_structure(4);
    rmat g = rmat::Zero(4, 4);
    g.topLeftCorner(2, 2) =
        std::exp(0.4 * std::sin(x(0) + 0.2 * x(1))) * rmat::Identity(2, 2);
    g.bottomRightCorner(2, 2) =
        std::exp(0.3 * std::cos(x(2))) * rmat::Identity(2, 2);
    return form_from_matrix2(rmat(j0.transpose() * g));
  };
  const MatrixField ii = [](const rvec&) {
    return standard_complex_structure(4);
  };
  const FormField zero3 = [](const rvec&) { return Form(4, 3); };
  const FormField bk = [&kahler](const rvec& x) {
    return kahler(x) * cplx(-1.0);
  };
  auto pts = random_points(3, 4, rng, 0.5);
  const SplittingResult kres =
      pluriclosed_from_splitting(zero3, bk, ii, pts, cfg);
  CHECK(kres.residual < 1e-7);
  for (const rvec& x : pts)
    CHECK(form_dist(kres.omega(x), kahler(x)) < 1e-12);

  // Hopf Hermitian form with a (2,0) gauge shift: every term of the real
  // identity is nonzero.
  std::vector<rvec> away;
  for (int s = 0; s < 3; ++s) {
    rvec x(4);
    x << 1.0 + 0.2 * s, 0.3 - 0.1 * s, -0.4, 0.5 + 0.1 * s;
    away.push_back(x);
  }
  const FormField wh = hopf_hermitian;
  const FormField script_b = twozero_gauge;
  const FormField hc = [&, cfg](const rvec& x) {
    const Form dw = fd_d(wh, x, cfg);
    return dc_op(wh, ii, x, cfg) - dw * kI + fd_d(script_b, x, cfg);
  };
  const FormField bsplit = [&](const rvec& x) {
    return wh(x) * cplx(-1.0) + script_b(x).imag_part();
  };
  const SplittingResult hres =
      pluriclosed_from_splitting(hc, bsplit, ii, away, cfg);
  CHECK(hres.residual < 1e-7);
  for (const rvec& x : away) {
    CHECK(form_dist(hres.omega(x), wh(x)) < 1e-9);
    CHECK(hc(x).real_part().max_abs() > 1e-2);
    CHECK(fd_d(bsplit, x, cfg).max_abs() > 1e-2);
  }

  // Pure (2,0)+(0,2) closed B with Hc = 0: omega vanishes.
  const FormField bconst = [](const rvec&) {
    Form b(4, 2);
    b.add_term({0, 2}, 1.0);
    b.add_term({1, 3}, -1.0);
    return b;
  };
  const SplittingResult zres =
      pluriclosed_from_splitting(zero3, bconst, ii, pts, cfg);
  CHECK(zres.residual < 1e-10);
  for (const rvec& x : pts) CHECK(zres.omega(x).max_abs() < 1e-12);

  // dB != Im Hc is rejected.
  const FormField bwrong = [&wh](const rvec& x) { return wh(x) * cplx(-1.0); };
  CHECK_THROWS_AS(pluriclosed_from_splitting(zero3, bwrong, ii, away, cfg),
                  gk_error);
}

TEST_CASE("commuting deformation: identity, Gaussian, degenerations") {
  // The deformed metric is itself a nested finite difference, so the
  // verification step uses a wider stencil to stay above roundoff.
  FDConfig cfg;
  cfg.h = 1e-2;
  const CommutingBase base = flat_commuting_base(2, 2);
  auto pts = grid_samples(rvec::Zero(4), 0.5, 2);
  pts.push_back(rvec::Zero(4));

  const ScalarField zero = [](const rvec&) { return 0.0; };
  const DeformResult id = commuting_deform(zero, 0.37, base, pts, cfg);
  for (const rvec& x : pts)
    CHECK(max_abs(rmat(id.chart.g(x) - rmat::Identity(4, 4))) == 0.0);
  CHECK(id.report.max() < 1e-10);
  CHECK(id.positivity_margin == 1.0);
  CHECK(id.verdict == "GK");

  const double eps = 0.1;
  const ScalarField gauss = [eps](const rvec& x) {
    return eps * std::exp(-x.squaredNorm());
  };
  const DeformResult def = commuting_deform(gauss, 0.05, base, pts, cfg);
  CHECK(def.report.max() < 1e-5);
  CHECK(def.positivity_margin > 0.0);
  CHECK(def.verdict == "GK");

  // The Hermitian forms move by t(D1 - D2) and t(D1 + D2) respectively.
  const DeformResult flat0 = commuting_deform(gauss, 0.0, base, pts, cfg);
  for (const rvec& x : pts) {
    const Form d1 = factor_ddc(gauss, 0, 2, base.i1, x, cfg, 4);
    const Form d2 = factor_ddc(gauss, 2, 2, base.i2, x, cfg, 4);
    const Form dplus = def.omega_plus(x) - flat0.omega_plus(x);
    const Form dminus = def.omega_minus(x) - flat0.omega_minus(x);
    CHECK(form_dist(dplus, (d1 - d2) * cplx(0.05)) < 1e-12);
    CHECK(form_dist(dminus, (d1 + d2) * cplx(0.05)) < 1e-12);

    // FD factor dd^c against the analytic factor Laplacian.
    const double r2 = x.squaredNorm();
    const double lap1 =
        eps * (4.0 * (x(0) * x(0) + x(1) * x(1)) - 4.0) * std::exp(-r2);
    Form d1ref(4, 2);
    d1ref.add_term({0, 1}, lap1);
    CHECK(form_dist(d1, d1ref) < 1e-7);
  }

  // Positivity is eventually lost as t grows: the first factor degenerates
  // at the origin when t g1 reaches 1/(4 eps).
  CHECK(commuting_deform(gauss, 2.0, base, pts, cfg).positivity_margin > 0.0);
  const DeformResult lost = commuting_deform(gauss, 4.0, base, pts, cfg);
  CHECK(lost.positivity_margin < 0.0);
  CHECK(lost.verdict == "positivity lost at t");

  // Factor degenerations: f on M1 only shifts both forms by +t D1 (the
  // Kahler-potential case); f on M2 only shifts them by -+ t D2.
  const ScalarField f1 = [eps](const rvec& x) {
    return eps * std::exp(-x(0) * x(0) - x(1) * x(1));
  };
  const ScalarField f2 = [eps](const rvec& x) {
    return eps * std::exp(-x(2) * x(2) - x(3) * x(3));
  };
  const DeformResult def1 = commuting_deform(f1, 0.05, base, pts, cfg);
  const DeformResult def2 = commuting_deform(f2, 0.05, base, pts, cfg);
  for (const rvec& x : pts) {
    CHECK(factor_ddc(f1, 2, 2, base.i2, x, cfg, 4).max_abs() < 1e-20);
    CHECK(factor_ddc(f2, 0, 2, base.i1, x, cfg, 4).max_abs() < 1e-20);
    const Form d1 = factor_ddc(f1, 0, 2, base.i1, x, cfg, 4) * cplx(0.05);
    const Form d2 = factor_ddc(f2, 2, 2, base.i2, x, cfg, 4) * cplx(0.05);
    CHECK(form_dist(def1.omega_plus(x) - flat0.omega_plus(x), d1) < 1e-12);
    CHECK(form_dist(def1.omega_minus(x) - flat0.omega_minus(x), d1) < 1e-12);
    CHECK(form_dist(def2.omega_plus(x) - flat0.omega_plus(x),
                    d2 * cplx(-1.0)) < 1e-12);
    CHECK(form_dist(def2.omega_minus(x) - flat0.omega_minus(x), d2) < 1e-12);
  }
}

TEST_CASE("chart config files") {
  {
    std::ofstream out("chart_cfg_prod.json");
    out << R"({"dim": 4, "structure": "commuting_product",
               "params": {"a1": 0.25, "a2": 0.15},
               "fd": {"h": 1e-3, "order": 4},
               "samples": {"center": [0.1, -0.2, 0.3, 0.0],
                           "half_width": 0.35, "per_axis": 2}})";
  }
  const ChartConfig cfg = load_chart_config("chart_cfg_prod.json");
  CHECK(cfg.dim == 4);
  CHECK(cfg.samples.size() == 16);
  CHECK(cfg.fd.h == 1e-3);
  const BihermitianChart chart = make_chart(cfg);
  CHECK(verify_gk_chart(chart.g, chart.iplus, chart.iminus, cfg.samples,
                        cfg.fd)
            .max() < 1e-7);

  {
    std::ofstream out("chart_cfg_pts.json");
    out << R"({"dim": 2, "structure": "flat_kahler",
               "samples": {"points": [[0.0, 0.0], [0.3, -0.2]]}})";
  }
  const ChartConfig flat = load_chart_config("chart_cfg_pts.json");
  CHECK(flat.samples.size() == 2);
  const BihermitianChart fc = make_chart(flat);
  CHECK(verify_gk_chart(fc.g, fc.iplus, fc.iminus, flat.samples, flat.fd)
            .max() < 1e-10);

  {
    std::ofstream out("chart_cfg_def.json");
    out << R"({"dim": 4, "structure": "deformed_product",
               "fd": {"h": 1e-2, "order": 4},
               "samples": {"points": [[0.1, 0.0, -0.2, 0.3]]}})";
  }
  const ChartConfig dcfg = load_chart_config("chart_cfg_def.json");
  const BihermitianChart dc = make_chart(dcfg);
  const rvec& p = dcfg.samples[0];
  CHECK(max_abs(rmat(dc.g(p) - rmat::Identity(4, 4))) > 1e-4);
  CHECK(max_abs(rmat(dc.iplus(p) - standard_complex_structure(4))) == 0.0);
  CHECK(verify_gk_chart(dc.g, dc.iplus, dc.iminus, dcfg.samples, dcfg.fd)
            .max() < 1e-5);

  {
    std::ofstream out("chart_cfg_bad.json");
    out << R"({"dim": 4, "structure": "nonsense"})";
  }
  CHECK_THROWS_AS(make_chart(load_chart_config("chart_cfg_bad.json")),
                  gk_error);
  CHECK_THROWS_AS(load_chart_config("no_such_file.json"), gk_error);
}
