#include <gk/chart.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <utility>

namespace gk {

namespace {

void gen_tuples(int dim, int degree, int start, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == degree) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    gen_tuples(dim, degree, i + 1, cur, out);
    cur.pop_back();
  }
}

// Insertion sort tracking the permutation sign; 0 for repeated indices.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

int tuple_pos(const std::vector<std::vector<int>>& tt,
              const std::vector<int>& idx) {
  const auto it = std::lower_bound(tt.begin(), tt.end(), idx);
  if (it == tt.end() || *it != idx) throw gk_error("form index out of range");
  return static_cast<int>(it - tt.begin());
}

void check_finite(const Form& f) {
  for (int p = 0; p < f.terms(); ++p)
    if (!std::isfinite(f.raw(p).real()) || !std::isfinite(f.raw(p).imag()))
      throw gk_error("non-finite sample in finite-difference stencil");
}

double fd_partial_scalar(const ScalarField& f, int j, const rvec& x,
                         const FDConfig& cfg) {
  auto at = [&](double off) {
    rvec y = x;
    y(j) += off;
    return f(y);
  };
  if (cfg.order == 2) return (at(cfg.h) - at(-cfg.h)) / (2.0 * cfg.h);
  return (-at(2.0 * cfg.h) + 8.0 * at(cfg.h) - 8.0 * at(-cfg.h) +
          at(-2.0 * cfg.h)) /
         (12.0 * cfg.h);
}

rmat fd_partial_mat(const MatrixField& f, int j, const rvec& x,
                    const FDConfig& cfg) {
  auto at = [&](double off) {
    rvec y = x;
    y(j) += off;
    return f(y);
  };
  if (cfg.order == 2) return (at(cfg.h) - at(-cfg.h)) / (2.0 * cfg.h);
  return (-at(2.0 * cfg.h) + 8.0 * at(cfg.h) - 8.0 * at(-cfg.h) +
          at(-2.0 * cfg.h)) /
         (12.0 * cfg.h);
}

Section section_partial(const SectionField& s, int j, const rvec& x,
                        const FDConfig& cfg) {
  auto at = [&](double off) {
    rvec y = x;
    y(j) += off;
    return s(y);
  };
  Section out;
  if (cfg.order == 2) {
    const Section p = at(cfg.h), m = at(-cfg.h);
    out.vec = (p.vec - m.vec) / (2.0 * cfg.h);
    out.form = (p.form - m.form) * cplx(1.0 / (2.0 * cfg.h));
  } else {
    const Section p2 = at(2.0 * cfg.h), p1 = at(cfg.h);
    const Section m1 = at(-cfg.h), m2 = at(-2.0 * cfg.h);
    out.vec = (-p2.vec + 8.0 * p1.vec - 8.0 * m1.vec + m2.vec) / (12.0 * cfg.h);
    out.form = (p2.form * cplx(-1.0) + p1.form * cplx(8.0) -
                m1.form * cplx(8.0) + m2.form) *
               cplx(1.0 / (12.0 * cfg.h));
  }
  check_finite(out.form);
  return out;
}

// 2-form (X,Y) -> (b(IX,Y) + b(X,IY)) / 2
Form mixed_pullback2(const Form& b, const cmat& i0) {
  const int dim = b.dim();
  Form out(dim, 2);
  const auto& tt = Form::tuples(dim, 2);
  for (size_t p = 0; p < tt.size(); ++p) {
    cvec ei = cvec::Zero(dim), ej = cvec::Zero(dim);
    ei(tt[p][0]) = 1.0;
    ej(tt[p][1]) = 1.0;
    out.raw(static_cast<int>(p)) =
        0.5 * (b.eval({cvec(i0 * ei), ej}) + b.eval({ei, cvec(i0 * ej)}));
  }
  return out;
}

}  // namespace

Form::Form(int dim, int degree) : dim_(dim), deg_(degree) {
  if (dim < 0 || degree < 0) throw gk_error("bad form shape");
  c_.assign(tuples(dim, degree).size(), cplx(0.0));
}

const std::vector<std::vector<int>>& Form::tuples(int dim, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (degree <= dim) gen_tuples(dim, degree, 0, cur, out);
    it = cache.emplace(key, std::move(out)).first;
  }
  return it->second;
}

cplx Form::coef(const std::vector<int>& idx) const {
  std::vector<int> s = idx;
  const int sign = sort_sign(s);
  if (sign == 0) return 0.0;
  return static_cast<double>(sign) * c_[tuple_pos(tuples(dim_, deg_), s)];
}

void Form::add_term(const std::vector<int>& idx, cplx v) {
  std::vector<int> s = idx;
  const int sign = sort_sign(s);
  if (sign == 0) return;
  c_[tuple_pos(tuples(dim_, deg_), s)] += static_cast<double>(sign) * v;
}

cplx Form::eval(const std::vector<cvec>& args) const {
  if (static_cast<int>(args.size()) != deg_)
    throw gk_error("form arity mismatch");
  if (deg_ == 0) return c_[0];
  const auto& tt = tuples(dim_, deg_);
  cmat m(dim_, deg_);
  for (int j = 0; j < deg_; ++j) m.col(j) = args[j];
  cplx out = 0.0;
  for (size_t p = 0; p < tt.size(); ++p) {
    if (c_[p] == cplx(0.0)) continue;
    cmat sub(deg_, deg_);
    for (int r = 0; r < deg_; ++r) sub.row(r) = m.row(tt[p][r]);
    out += c_[p] * sub.determinant();
  }
  return out;
}

Form Form::pullback(const cmat& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw gk_error("pullback shape mismatch");
  Form out(dim_, deg_);
  const auto& tt = tuples(dim_, deg_);
  for (size_t p = 0; p < tt.size(); ++p) {
    std::vector<cvec> cols;
    cols.reserve(deg_);
    for (int r = 0; r < deg_; ++r) cols.push_back(a.col(tt[p][r]));
    out.raw(static_cast<int>(p)) = eval(cols);
  }
  return out;
}

Form Form::contract(const cvec& v) const {
  if (deg_ == 0) throw gk_error("cannot contract a 0-form");
  Form out(dim_, deg_ - 1);
  const auto& tt = tuples(dim_, deg_ - 1);
  for (size_t p = 0; p < tt.size(); ++p) {
    std::vector<cvec> args;
    args.reserve(deg_);
    args.push_back(v);
    for (int r = 0; r < deg_ - 1; ++r) {
      cvec e = cvec::Zero(dim_);
      e(tt[p][r]) = 1.0;
      args.push_back(e);
    }
    out.raw(static_cast<int>(p)) = eval(args);
  }
  return out;
}

Form Form::real_part() const {
  Form out(dim_, deg_);
  for (size_t p = 0; p < c_.size(); ++p)
    out.raw(static_cast<int>(p)) = c_[p].real();
  return out;
}

Form Form::imag_part() const {
  Form out(dim_, deg_);
  for (size_t p = 0; p < c_.size(); ++p)
    out.raw(static_cast<int>(p)) = c_[p].imag();
  return out;
}

double Form::max_abs() const {
  double m = 0.0;
  for (const cplx& v : c_) m = std::max(m, std::abs(v));
  return m;
}

Form& Form::operator+=(const Form& o) {
  if (dim_ != o.dim_ || deg_ != o.deg_) throw gk_error("form shape mismatch");
  for (size_t p = 0; p < c_.size(); ++p) c_[p] += o.c_[p];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (dim_ != o.dim_ || deg_ != o.deg_) throw gk_error("form shape mismatch");
  for (size_t p = 0; p < c_.size(); ++p) c_[p] -= o.c_[p];
  return *this;
}

Form& Form::operator*=(cplx s) {
  for (cplx& v : c_) v *= s;
  return *this;
}

Form form_from_matrix2(const cmat& w) {
  if (w.rows() != w.cols()) throw gk_error("form matrix not square");
  const double tol = 1e-12 * std::max(1.0, max_abs(w));
  if (max_abs(cmat(w + w.transpose())) > tol)
    throw gk_error("form coefficients not antisymmetric");
  const int dim = static_cast<int>(w.rows());
  Form out(dim, 2);
  const auto& tt = Form::tuples(dim, 2);
  for (size_t p = 0; p < tt.size(); ++p)
    out.raw(static_cast<int>(p)) = w(tt[p][0], tt[p][1]);
  return out;
}

Form form_from_matrix2(const rmat& w) { return form_from_matrix2(cmat(w.cast<cplx>())); }

cmat matrix2_from_form(const Form& f) {
  if (f.degree() != 2) throw gk_error("matrix2_from_form needs a 2-form");
  cmat w = cmat::Zero(f.dim(), f.dim());
  const auto& tt = Form::tuples(f.dim(), 2);
  for (size_t p = 0; p < tt.size(); ++p) {
    w(tt[p][0], tt[p][1]) = f.raw(static_cast<int>(p));
    w(tt[p][1], tt[p][0]) = -f.raw(static_cast<int>(p));
  }
  return w;
}

rmat standard_complex_structure(int dim) {
  if (dim % 2 != 0) throw gk_error("complex structure needs even dimension");
  rmat out = rmat::Zero(dim, dim);
  for (int k = 0; k < dim / 2; ++k) {
    out(2 * k + 1, 2 * k) = 1.0;
    out(2 * k, 2 * k + 1) = -1.0;
  }
  return out;
}

Form fd_partial(const FormField& a, int j, const rvec& x,
                const FDConfig& cfg) {
  auto at = [&](double off) {
    rvec y = x;
    y(j) += off;
    return a(y);
  };
  Form out;
  if (cfg.order == 2) {
    out = (at(cfg.h) - at(-cfg.h)) * cplx(1.0 / (2.0 * cfg.h));
  } else {
    out = (at(2.0 * cfg.h) * cplx(-1.0) + at(cfg.h) * cplx(8.0) -
           at(-cfg.h) * cplx(8.0) + at(-2.0 * cfg.h)) *
          cplx(1.0 / (12.0 * cfg.h));
  }
  check_finite(out);
  return out;
}

Form fd_d(const FormField& a, const rvec& x, const FDConfig& cfg) {
  const Form a0 = a(x);
  const int dim = a0.dim();
  const int k = a0.degree();
  std::vector<Form> parts;
  parts.reserve(dim);
  for (int j = 0; j < dim; ++j) parts.push_back(fd_partial(a, j, x, cfg));
  Form out(dim, k + 1);
  const auto& tt = Form::tuples(dim, k + 1);
  std::vector<int> sub;
  sub.reserve(k);
  for (size_t p = 0; p < tt.size(); ++p) {
    cplx v = 0.0;
    for (int l = 0; l <= k; ++l) {
      sub.clear();
      for (int m = 0; m <= k; ++m)
        if (m != l) sub.push_back(tt[p][m]);
      const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
      v += sgn * parts[tt[p][l]].coef(sub);
    }
    out.raw(static_cast<int>(p)) = v;
  }
  return out;
}

Form dc_op(const FormField& a, const MatrixField& ii, const rvec& x,
           const FDConfig& cfg) {
  const rmat i0 = ii(x);
  if (max_abs(rmat(i0 * i0 + rmat::Identity(i0.rows(), i0.cols()))) > 1e-8)
    throw gk_error("not almost complex at sample point");
  return fd_d(a, x, cfg).pullback(i0.cast<cplx>()) * cplx(-1.0);
}

double dc_calibration(const FDConfig& cfg) {
  const rmat i0 = standard_complex_structure(2);
  const MatrixField ii = [i0](const rvec&) { return i0; };
  const FormField f = [](const rvec& x) {
    Form v(2, 0);
    v.raw(0) = x.squaredNorm();
    return v;
  };
  const FormField dcf = [&](const rvec& y) { return dc_op(f, ii, y, cfg); };
  double c0 = 0.0;
  bool first = true;
  for (const double x0 : {0.0, 0.4, -0.7}) {
    for (const double x1 : {0.0, -0.3, 0.9}) {
      rvec x(2);
      x << x0, x1;
      const double c = fd_d(dcf, x, cfg).coef({0, 1}).real() / 2.0;
      if (first) {
        c0 = c;
        first = false;
      } else if (std::abs(c - c0) > 1e-6 * std::max(1.0, std::abs(c0))) {
        throw gk_error("d^c calibration drift across chart points");
      }
    }
  }
  return c0;
}

Section courant_bracket_H(const SectionField& s1, const SectionField& s2,
                          const FormField& h3, const rvec& x,
                          const FDConfig& cfg) {
  const Section a = s1(x);
  const Section b = s2(x);
  const int dim = static_cast<int>(a.vec.size());
  std::vector<Section> d1(dim), d2(dim);
  for (int j = 0; j < dim; ++j) {
    d1[j] = section_partial(s1, j, x, cfg);
    d2[j] = section_partial(s2, j, x, cfg);
  }

  cvec lie = cvec::Zero(dim);
  for (int j = 0; j < dim; ++j)
    lie += a.vec(j) * d2[j].vec - b.vec(j) * d1[j].vec;

  Form lxb(dim, 1);
  for (int i = 0; i < dim; ++i) {
    cplx v = 0.0;
    for (int j = 0; j < dim; ++j)
      v += a.vec(j) * d2[j].form.coef({i}) + b.form.coef({j}) * d1[i].vec(j);
    lxb.add_term({i}, v);
  }

  const FormField alpha = [&s1](const rvec& y) { return s1(y).form; };
  const Form da = fd_d(alpha, x, cfg);
  Form out = lxb - da.contract(b.vec);
  if (h3) out += h3(x).contract(b.vec).contract(a.vec);
  return {lie, out};
}

double involutivity_residual(const std::vector<SectionField>& frame,
                             const FormField& h3,
                             const std::vector<rvec>& samples,
                             const FDConfig& cfg) {
  if (frame.empty()) return 0.0;
  double worst = 0.0;
  for (size_t si = 0; si < samples.size(); ++si) {
    const rvec& x = samples[si];
    std::vector<Section> vals;
    vals.reserve(frame.size());
    for (const auto& s : frame) vals.push_back(s(x));
    const int dim = static_cast<int>(vals[0].vec.size());
    const int r = static_cast<int>(frame.size());
    cmat f(2 * dim, r);
    for (int l = 0; l < r; ++l) {
      f.col(l).head(dim) = vals[l].vec;
      for (int i = 0; i < dim; ++i) f(dim + i, l) = vals[l].form.coef({i});
    }
    const Subspace sub = span_reduce(f);
    if (sub.rank < r)
      throw gk_error("frame rank drop at sample " + std::to_string(si));
    const cmat on = sub.onb();
    const cmat pr = SplitSpace(dim).pairing();
    for (int i1 = 0; i1 < r; ++i1)
      for (int i2 = 0; i2 < r; ++i2) {
        const Section br = courant_bracket_H(frame[i1], frame[i2], h3, x, cfg);
        cvec v(2 * dim);
        v.head(dim) = br.vec;
        for (int i = 0; i < dim; ++i) v(dim + i) = br.form.coef({i});
        worst = std::max(worst, max_abs(cmat(on.transpose() * pr * v)));
      }
  }
  return worst;
}

double nijenhuis_residual(const MatrixField& ii, const rvec& x,
                          const FDConfig& cfg) {
  const rmat i0 = ii(x);
  const int dim = static_cast<int>(i0.rows());
  std::vector<rmat> di(dim);
  for (int l = 0; l < dim; ++l) di[l] = fd_partial_mat(ii, l, x, cfg);
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      double comp = 0.0;
      for (int k = 0; k < dim; ++k) {
        double v = 0.0;
        for (int l = 0; l < dim; ++l)
          v += i0(l, i) * di[l](k, j) - i0(l, j) * di[l](k, i);
        for (int m = 0; m < dim; ++m)
          v += i0(k, m) * (di[j](m, i) - di[i](m, j));
        comp = std::max(comp, std::abs(v));
      }
      worst = std::max(worst, comp);
    }
  return worst;
}

double GKChartReport::max() const {
  return std::max({dc_sum, pluriclosed_plus, pluriclosed_minus, nijenhuis_plus,
                   nijenhuis_minus});
}

GKChartReport verify_gk_chart(const MatrixField& g, const MatrixField& iplus,
                              const MatrixField& iminus,
                              const std::vector<rvec>& samples,
                              const FDConfig& cfg) {
  const FormField wp = [&](const rvec& y) {
    return form_from_matrix2(rmat(iplus(y).transpose() * g(y)));
  };
  const FormField wm = [&](const rvec& y) {
    return form_from_matrix2(rmat(iminus(y).transpose() * g(y)));
  };
  const FormField dcp = [&](const rvec& y) { return dc_op(wp, iplus, y, cfg); };
  const FormField dcm = [&](const rvec& y) {
    return dc_op(wm, iminus, y, cfg);
  };
  GKChartReport rep;
  for (const rvec& x : samples) {
    rep.dc_sum = std::max(rep.dc_sum, (dcp(x) + dcm(x)).max_abs());
    rep.pluriclosed_plus =
        std::max(rep.pluriclosed_plus, fd_d(dcp, x, cfg).max_abs());
    rep.pluriclosed_minus =
        std::max(rep.pluriclosed_minus, fd_d(dcm, x, cfg).max_abs());
    rep.nijenhuis_plus =
        std::max(rep.nijenhuis_plus, nijenhuis_residual(iplus, x, cfg));
    rep.nijenhuis_minus =
        std::max(rep.nijenhuis_minus, nijenhuis_residual(iminus, x, cfg));
  }
  return rep;
}

SplittingResult pluriclosed_from_splitting(const FormField& hc,
                                           const FormField& b,
                                           const MatrixField& ii,
                                           const std::vector<rvec>& samples,
                                           const FDConfig& cfg, double tol) {
  const FormField omega = [b, ii](const rvec& y) {
    const Form bv = b(y);
    const cmat i0 = ii(y).cast<cplx>();
    return (bv + bv.pullback(i0)) * cplx(-0.5);
  };
  // -2 Im B^(2,0) = (B(I.,.) + B(.,I.)) / 2; the (1,1) part drops out.
  const FormField imtwist = [b, ii](const rvec& y) {
    return mixed_pullback2(b(y), ii(y).cast<cplx>()).real_part();
  };
  double worst = 0.0;
  for (const rvec& x : samples) {
    const Form bv = b(x);
    if (bv.imag_part().max_abs() > 1e-12)
      throw gk_error("splitting 2-form must be real");
    const Form db = fd_d(b, x, cfg);
    if ((db - hc(x).imag_part()).max_abs() > tol)
      throw gk_error("splitting mismatch: dB != Im(H)");
    const Form rhs = fd_d(imtwist, x, cfg) + dc_op(omega, ii, x, cfg);
    worst = std::max(worst, (hc(x).real_part() - rhs).max_abs());
  }
  return {omega, worst};
}

CommutingBase flat_commuting_base(int m1, int m2) {
  CommutingBase base;
  base.m1 = m1;
  base.m2 = m2;
  const rmat j1 = standard_complex_structure(m1);
  const rmat j2 = standard_complex_structure(m2);
  base.g1 = [m1](const rvec&) { return rmat(rmat::Identity(m1, m1)); };
  base.g2 = [m2](const rvec&) { return rmat(rmat::Identity(m2, m2)); };
  base.i1 = [j1](const rvec&) { return j1; };
  base.i2 = [j2](const rvec&) { return j2; };
  return base;
}

Form factor_ddc(const ScalarField& f, int offset, int len,
                const MatrixField& ifac, const rvec& x, const FDConfig& cfg,
                int fulldim) {
  const FormField dicf = [&, offset, len, fulldim](const rvec& y) {
    const rmat ii = ifac(y);
    rvec grad(len);
    for (int k = 0; k < len; ++k)
      grad(k) = fd_partial_scalar(f, offset + k, y, cfg);
    Form out(fulldim, 1);
    for (int j = 0; j < len; ++j) {
      double v = 0.0;
      for (int k = 0; k < len; ++k) v -= ii(k, j) * grad(k);
      out.add_term({offset + j}, v);
    }
    return out;
  };
  Form out(fulldim, 2);
  std::vector<Form> parts(len);
  for (int a = 0; a < len; ++a)
    parts[a] = fd_partial(dicf, offset + a, x, cfg);
  for (int a = 0; a < len; ++a)
    for (int c = a + 1; c < len; ++c)
      out.add_term({offset + a, offset + c},
                   parts[a].coef({offset + c}) - parts[c].coef({offset + a}));
  return out;
}

BihermitianChart deformed_chart(const ScalarField& f, double t,
                                const CommutingBase& base,
                                const FDConfig& cfg) {
  const int m1 = base.m1, m2 = base.m2;
  const int dim = m1 + m2;
  const MatrixField g1 = base.g1, g2 = base.g2;
  const MatrixField i1 = base.i1, i2 = base.i2;
  const ScalarField ff = f;
  BihermitianChart chart;
  chart.dim = dim;
  chart.iplus = [=](const rvec& x) {
    rmat out = rmat::Zero(dim, dim);
    out.topLeftCorner(m1, m1) = i1(x);
    out.bottomRightCorner(m2, m2) = i2(x);
    return out;
  };
  chart.iminus = [=](const rvec& x) {
    rmat out = rmat::Zero(dim, dim);
    out.topLeftCorner(m1, m1) = i1(x);
    out.bottomRightCorner(m2, m2) = -i2(x);
    return out;
  };
  chart.g = [=](const rvec& x) {
    const rmat i1v = i1(x), i2v = i2(x);
    if (t == 0.0) {
      rmat out = rmat::Zero(dim, dim);
      out.topLeftCorner(m1, m1) = g1(x);
      out.bottomRightCorner(m2, m2) = g2(x);
      return out;
    }
    rmat w1 = i1v.transpose() * g1(x);
    rmat w2 = i2v.transpose() * g2(x);
    const Form d1 = factor_ddc(ff, 0, m1, i1, x, cfg, dim);
    const Form d2 = factor_ddc(ff, m1, m2, i2, x, cfg, dim);
    // The relative sign between the factor deformations is forced by
    // closedness of the torsion: equal signs leave d d^c omega nonzero.
    w1 += t * matrix2_from_form(d1).real().topLeftCorner(m1, m1);
    w2 -= t * matrix2_from_form(d2).real().bottomRightCorner(m2, m2);
    rmat out = rmat::Zero(dim, dim);
    out.topLeftCorner(m1, m1) = -i1v.transpose() * w1;
    out.bottomRightCorner(m2, m2) = -i2v.transpose() * w2;
    return out;
  };
  return chart;
}

DeformResult commuting_deform(const ScalarField& f, double t,
                              const CommutingBase& base,
                              const std::vector<rvec>& samples,
                              const FDConfig& cfg) {
  DeformResult res;
  res.chart = deformed_chart(f, t, base, cfg);
  const MatrixField g = res.chart.g;
  const MatrixField ip = res.chart.iplus;
  const MatrixField im = res.chart.iminus;
  res.omega_plus = [g, ip](const rvec& x) {
    return form_from_matrix2(rmat(ip(x).transpose() * g(x)));
  };
  res.omega_minus = [g, im](const rvec& x) {
    return form_from_matrix2(rmat(im(x).transpose() * g(x)));
  };
  res.report = verify_gk_chart(g, ip, im, samples, cfg);
  double margin = std::numeric_limits<double>::infinity();
  for (const rvec& x : samples) {
    const rmat gv = g(x);
    Eigen::SelfAdjointEigenSolver<rmat> es(0.5 * (gv + gv.transpose()));
    margin = std::min(margin, es.eigenvalues().minCoeff());
  }
  res.positivity_margin = margin;
  res.verdict = margin > 0.0 ? "GK" : "positivity lost at t";
  return res;
}

std::vector<rvec> grid_samples(const rvec& center, double half_width,
                               int per_axis) {
  const int dim = static_cast<int>(center.size());
  if (per_axis < 1) throw gk_error("per_axis must be positive");
  std::vector<rvec> out;
  std::vector<int> odo(dim, 0);
  while (true) {
    rvec x = center;
    for (int i = 0; i < dim; ++i) {
      const double s = per_axis == 1
                           ? 0.0
                           : 2.0 * odo[i] / (per_axis - 1.0) - 1.0;
      x(i) += half_width * s;
    }
    out.push_back(x);
    int i = 0;
    for (; i < dim; ++i) {
      if (++odo[i] < per_axis) break;
      odo[i] = 0;
    }
    if (i == dim) break;
  }
  return out;
}

ChartConfig load_chart_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gk_error("cannot open chart config: " + path);
  nlohmann::json j;
  in >> j;
  ChartConfig cfg;
  cfg.dim = j.value("dim", 4);
  cfg.structure = j.value("structure", std::string("flat_kahler"));
  if (j.contains("fd")) {
    cfg.fd.h = j["fd"].value("h", 1e-3);
    cfg.fd.order = j["fd"].value("order", 4);
  }
  if (cfg.fd.h <= 0.0) throw gk_error("fd step must be positive");
  if (j.contains("params"))
    for (const auto& [k, v] : j["params"].items())
      cfg.params[k] = v.get<double>();
  if (j.contains("samples")) {
    const auto& s = j["samples"];
    if (s.contains("points")) {
      for (const auto& p : s["points"]) {
        rvec x(cfg.dim);
        for (int i = 0; i < cfg.dim; ++i) x(i) = p.at(i).get<double>();
        cfg.samples.push_back(x);
      }
    } else {
      rvec c = rvec::Zero(cfg.dim);
      if (s.contains("center"))
        for (int i = 0; i < cfg.dim; ++i) c(i) = s["center"].at(i).get<double>();
      cfg.samples =
          grid_samples(c, s.value("half_width", 0.3), s.value("per_axis", 2));
    }
  }
  if (cfg.samples.empty())
    cfg.samples = grid_samples(rvec::Zero(cfg.dim), 0.3, 2);
  return cfg;
}

BihermitianChart make_chart(const ChartConfig& cfg) {
  const int dim = cfg.dim;
  auto param = [&cfg](const std::string& k, double dflt) {
    const auto it = cfg.params.find(k);
    return it == cfg.params.end() ? dflt : it->second;
  };
  if (cfg.structure == "flat_kahler") {
    const rmat j0 = standard_complex_structure(dim);
    BihermitianChart chart;
    chart.dim = dim;
    chart.g = [dim](const rvec&) { return rmat(rmat::Identity(dim, dim)); };
    chart.iplus = [j0](const rvec&) { return j0; };
    chart.iminus = [j0](const rvec&) { return j0; };
    return chart;
  }
  if (cfg.structure == "commuting_product") {
    if (dim != 4) throw gk_error("commuting_product needs dim 4");
    const double a1 = param("a1", 0.3);
    const double a2 = param("a2", 0.2);
    CommutingBase base = flat_commuting_base(2, 2);
    base.g1 = [a1](const rvec& x) {
      return rmat(std::exp(a1 * std::sin(x(0)) * std::cos(x(1))) *
                  rmat::Identity(2, 2));
    };
    base.g2 = [a2](const rvec& x) {
      return rmat(std::exp(a2 * std::cos(x(2) - 0.5 * x(3))) *
                  rmat::Identity(2, 2));
    };
    const ScalarField zero = [](const rvec&) { return 0.0; };
    return deformed_chart(zero, 0.0, base, cfg.fd);
  }
  if (cfg.structure == "deformed_product") {
    if (dim != 4) throw gk_error("deformed_product needs dim 4");
    const double eps = param("eps", 0.1);
    const double t = param("t", 0.05);
    const ScalarField f = [eps](const rvec& x) {
      return eps * std::exp(-x.squaredNorm());
    };
    return deformed_chart(f, t, flat_commuting_base(2, 2), cfg.fd);
  }
  throw gk_error("unknown chart structure: " + cfg.structure);
}

}  // namespace gk
