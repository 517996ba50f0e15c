#include <gk/hopf.hpp>

#include <cmath>
#include <iomanip>

namespace gk {

namespace {

// log(1 + e^s) without overflow for large s
double log1pexp(double s) {
  return s < 35.0 ? std::log1p(std::exp(s)) : s + std::log1p(std::exp(-s));
}

double generating_residual_at(cplx v1, cplx x1, double h) {
  const rvec a = graph_alpha(v1, x1);
  const auto f = [&](double pr, double pi, double qr, double qi) {
    return potential_f(v1 + cplx(pr, pi), x1 + cplx(qr, qi));
  };
  rvec g(4);
  g(0) = (f(h, 0, 0, 0) - f(-h, 0, 0, 0)) / (2.0 * h);
  g(1) = (f(0, h, 0, 0) - f(0, -h, 0, 0)) / (2.0 * h);
  g(2) = (f(0, 0, h, 0) - f(0, 0, -h, 0)) / (2.0 * h);
  g(3) = (f(0, 0, 0, h) - f(0, 0, 0, -h)) / (2.0 * h);
  return (g - a).cwiseAbs().maxCoeff();
}

}  // namespace

AffElem aff_mult(const AffElem& h1, const AffElem& h2) {
  return {h1.a + h2.a, std::exp(h2.a) * h1.b + h2.b};
}

AffElem aff_inv(const AffElem& h) {
  return {-h.a, -std::exp(-h.a) * h.b};
}

SurfPoint project_minus(const GElem& g) {
  const cplx c = std::exp(-kI * g.z);
  return {c * g.A(0, 0), c * g.A(1, 0)};
}

SurfPoint project_plus(const GElem& g) {
  const cplx c = std::exp(kI * g.z);
  return {c * g.A(0, 0), c * g.A(0, 1)};
}

SurfPoint groupoid_action(const AffElem& h, const SurfPoint& p,
                          GroupoidSide which) {
  switch (which) {
    case GroupoidSide::AMinus:
    case GroupoidSide::APlus:
      return {std::exp(h.a) * p.z1, h.b * p.z1 + p.z2};
    case GroupoidSide::BMinus:
    case GroupoidSide::BPlus:
      return {p.z1 + h.b * p.z2, std::exp(h.a) * p.z2};
  }
  throw gk_error("groupoid_action: bad side");
}

cplx hitchin_sigma(const SurfPoint& p, int sign) {
  if (sign != 1 && sign != -1) throw gk_error("hitchin_sigma: sign is +-1");
  const cplx c = 2.0 * p.z1 * p.z2;
  return sign < 0 ? c : -c;
}

std::pair<cplx, cplx> psi_map(cplx v1, cplx v2) {
  const cplx z1 = std::exp(v1);
  const cplx z2 = std::exp(v2);
  const double r2 = std::norm(z1) + std::norm(z2);
  return {std::log(z1 / r2), std::log(-std::conj(z2) / r2)};
}

LogCoords graph_psi(cplx v1, cplx x1) {
  LogCoords c;
  c.v1 = v1;
  c.x1 = x1;
  c.v2 = std::conj(x1) + std::conj(v1);
  c.x2 = x1 - std::conj(v1) - log1pexp(2.0 * x1.real());
  return c;
}

cplx potential_terms(cplx v1, cplx x1) {
  const double s = 2.0 * x1.real();
  const cplx integral = -dilog(-std::exp(cplx(s, 0.0)));
  return 0.5 * (v1 * std::conj(v1) + std::conj(v1) * x1 +
                std::conj(x1) * v1 -
                0.5 * (x1 * x1 + std::conj(x1) * std::conj(x1)) + integral);
}

double potential_f(cplx v1, cplx x1) {
  return potential_terms(v1, x1).real();
}

rvec graph_alpha(cplx v1, cplx x1) {
  const LogCoords c = graph_psi(v1, x1);
  rvec a(4);
  a(0) = c.v2.real();
  a(1) = -c.v2.imag();
  a(2) = -c.x2.real();
  a(3) = c.x2.imag();
  return a;
}

double generating_check(int grid, double hw, double h) {
  if (grid < 1) throw gk_error("generating_check: grid must be positive");
  const int n = grid > 1 ? grid - 1 : 1;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const cplx v1(-hw + 2.0 * hw * i / n, 0.25 * hw);
      const cplx x1(-hw + 2.0 * hw * j / n, -0.2 * hw);
      worst = std::max(worst, generating_residual_at(v1, x1, h));
    }
  }
  return worst;
}

LogCoords graph_tangent(cplx x1, cplx dv1, cplx dx1) {
  const double s = 2.0 * x1.real();
  const double sig = 1.0 / (1.0 + std::exp(-s));  // d log(1+e^s) / ds
  LogCoords t;
  t.v1 = dv1;
  t.x1 = dx1;
  t.v2 = std::conj(dx1) + std::conj(dv1);
  t.x2 = dx1 - std::conj(dv1) - sig * (dx1 + std::conj(dx1));
  return t;
}

cplx omega_log_eval(const LogCoords& t1, const LogCoords& t2) {
  return (t1.v2 * t2.v1 - t1.v1 * t2.v2) - (t1.x2 * t2.x1 - t1.x1 * t2.x2);
}

double graph_lagrangian_check(int seeds, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const cplx x1(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
    const LogCoords t1 = graph_tangent(x1, rng.cgauss(), rng.cgauss());
    const LogCoords t2 = graph_tangent(x1, rng.cgauss(), rng.cgauss());
    worst = std::max(worst, std::abs(omega_log_eval(t1, t2).real()));
  }
  return worst;
}

void write_potential_grid(std::ostream& os, int grid, double hw, double h) {
  if (grid < 1) throw gk_error("write_potential_grid: grid must be positive");
  os << "v1_re,v1_im,x1_re,x1_im,f,grad_residual\n";
  const auto prev = os.precision(16);
  const int n = grid > 1 ? grid - 1 : 1;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const cplx v1(-hw + 2.0 * hw * i / n, 0.25 * hw);
      const cplx x1(-hw + 2.0 * hw * j / n, -0.2 * hw);
      os << v1.real() << ',' << v1.imag() << ',' << x1.real() << ','
         << x1.imag() << ',' << potential_f(v1, x1) << ','
         << generating_residual_at(v1, x1, h) << '\n';
    }
  }
  os.precision(prev);
}

}  // namespace gk
