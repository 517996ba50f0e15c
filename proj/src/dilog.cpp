#include <gk/hopf.hpp>

#include <cmath>

namespace gk {

namespace {

constexpr double kPi2Over6 = kPi * kPi / 6.0;

// Taylor series sum_{k>=1} w^k / k^2.  The reduction below only calls this
// with |w| <= 0.7, where 300 terms leave a tail under 1e-16.
cplx dilog_series(cplx w) {
  cplx sum = 0.0;
  cplx pw = w;
  for (int k = 1; k <= 300; ++k) {
    const cplx term = pw / static_cast<double>(k * k);
    sum += term;
    if (std::abs(term) < 1e-17) break;
    pw *= w;
  }
  return sum;
}

}  // namespace

cplx dilog(cplx w) {
  if (w == cplx(0.0)) return 0.0;
  if (w == cplx(1.0)) return kPi2Over6;
  if (w == cplx(-1.0)) return -kPi * kPi / 12.0;
  const double r = std::abs(w);
  if (r > 1.0) {
    // inversion: Li2(w) + Li2(1/w) = -pi^2/6 - log(-w)^2 / 2
    const cplx lw = std::log(-w);
    return -dilog(1.0 / w) - kPi2Over6 - 0.5 * lw * lw;
  }
  if (r <= 0.5) return dilog_series(w);
  if (std::abs(1.0 - w) <= 0.5) {
    // reflection: Li2(w) + Li2(1-w) = pi^2/6 - log(w) log(1-w)
    return kPi2Over6 - std::log(w) * std::log(1.0 - w) - dilog(1.0 - w);
  }
  const cplx lnd = w / (w - 1.0);
  if (std::abs(lnd) <= 0.7) {
    // Landen: Li2(w) + Li2(w/(w-1)) = -log(1-w)^2 / 2
    const cplx l1w = std::log(1.0 - w);
    return -dilog_series(lnd) - 0.5 * l1w * l1w;
  }
  // remaining sliver near the unit circle around e^{+-i pi/3}:
  // duplication Li2(w) = Li2(w^2)/2 - Li2(-w); both children land in the
  // branches above.
  return 0.5 * dilog(w * w) - dilog(-w);
}

}  // namespace gk
