#pragma once

#include <gk/common.hpp>
#include <gk/linalg.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gk {

// Alternating form with complex coefficients at a single chart point.
// Coefficients are stored on strictly increasing index tuples; access
// through arbitrary tuples applies the permutation sign and collapses
// repeated indices to zero.
class Form {
 public:
  Form() = default;
  Form(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return deg_; }
  int terms() const { return static_cast<int>(c_.size()); }

  // All strictly increasing tuples of the given length, lexicographic.
  static const std::vector<std::vector<int>>& tuples(int dim, int degree);

  cplx raw(int pos) const { return c_[pos]; }
  cplx& raw(int pos) { return c_[pos]; }

  cplx coef(const std::vector<int>& idx) const;
  void add_term(const std::vector<int>& idx, cplx v);

  // Evaluation on degree() many vectors via k-by-k minors.
  cplx eval(const std::vector<cvec>& args) const;

  // (a^* w)(v1..vk) = w(a v1, .., a vk)
  Form pullback(const cmat& a) const;

  // (i_v w)(..) = w(v, ..)
  Form contract(const cvec& v) const;

  Form real_part() const;
  Form imag_part() const;
  double max_abs() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(cplx s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, cplx s) { return a *= s; }
  friend Form operator*(cplx s, Form a) { return a *= s; }

 private:
  int dim_ = 0;
  int deg_ = 0;
  std::vector<cplx> c_;
};

// Degree-2 form from an antisymmetric coefficient matrix w(i,j) = form(ei,ej);
// antisymmetry is enforced on construction.
Form form_from_matrix2(const cmat& w);
Form form_from_matrix2(const rmat& w);
cmat matrix2_from_form(const Form& f);

// Block-diagonal J with J e_{2k} = e_{2k+1} on each coordinate pair.
rmat standard_complex_structure(int dim);

using ScalarField = std::function<double(const rvec&)>;
using FormField = std::function<Form(const rvec&)>;
using MatrixField = std::function<rmat(const rvec&)>;

// Section X + a of TM + T*M; `form` has degree 1.
struct Section {
  cvec vec;
  Form form;
};
using SectionField = std::function<Section(const rvec&)>;

struct FDConfig {
  double h = 1e-3;
  int order = 4;  // central stencil order: 2 or 4
};

Form fd_partial(const FormField& a, int j, const rvec& x, const FDConfig& cfg);
Form fd_d(const FormField& a, const rvec& x, const FDConfig& cfg);

// d^c a := -(d a) composed with I on every slot.  The induced normalization
// is measured once by dc_calibration: d d^c |z|^2 = 2 c0 dx^dy on C.
Form dc_op(const FormField& a, const MatrixField& ii, const rvec& x,
           const FDConfig& cfg);
double dc_calibration(const FDConfig& cfg);

// [X+a, Y+b] = [X,Y] + L_X b - i_Y da + i_X i_Y H; pass an empty FormField
// for H = 0.
Section courant_bracket_H(const SectionField& s1, const SectionField& s2,
                          const FormField& h3, const rvec& x,
                          const FDConfig& cfg);

// Max pairing of frame-pair brackets against the span of the frame itself;
// for maximal isotropic frames this is the out-of-L component.
double involutivity_residual(const std::vector<SectionField>& frame,
                             const FormField& h3,
                             const std::vector<rvec>& samples,
                             const FDConfig& cfg);

double nijenhuis_residual(const MatrixField& ii, const rvec& x,
                          const FDConfig& cfg);

struct GKChartReport {
  double dc_sum = 0.0;
  double pluriclosed_plus = 0.0;
  double pluriclosed_minus = 0.0;
  double nijenhuis_plus = 0.0;
  double nijenhuis_minus = 0.0;
  double max() const;
};

GKChartReport verify_gk_chart(const MatrixField& g, const MatrixField& iplus,
                              const MatrixField& iminus,
                              const std::vector<rvec>& samples,
                              const FDConfig& cfg);

// Splitting data (B, Hc) with dB = Im Hc induces the Hermitian form
// w = -B^(1,1) and the residual of Re Hc = d(-2 Im B^(2,0)) + d^c w.
struct SplittingResult {
  FormField omega;
  double residual = 0.0;
};
SplittingResult pluriclosed_from_splitting(const FormField& hc,
                                           const FormField& b,
                                           const MatrixField& ii,
                                           const std::vector<rvec>& samples,
                                           const FDConfig& cfg,
                                           double tol = 1e-6);

struct BihermitianChart {
  int dim = 0;
  MatrixField g, iplus, iminus;
};

// Product of two Hermitian factors with I_pm = diag(I1, pm I2).
struct CommutingBase {
  int m1 = 2, m2 = 2;
  MatrixField g1, i1;  // m1-by-m1 blocks, functions of the full chart point
  MatrixField g2, i2;
};
CommutingBase flat_commuting_base(int m1, int m2);

// Factor-restricted d_i d_i^c f: exterior derivative and twist taken only
// along coordinates [offset, offset+len).
Form factor_ddc(const ScalarField& f, int offset, int len,
                const MatrixField& ifac, const rvec& x, const FDConfig& cfg,
                int fulldim);

struct DeformResult {
  BihermitianChart chart;
  FormField omega_plus, omega_minus;
  GKChartReport report;
  double positivity_margin = 0.0;
  std::string verdict;
};

// Hamiltonian deformation of a commuting-type product: the factor forms move
// by F_1 -> F_1 + t d_1 d_1^c f, F_2 -> F_2 - t d_2 d_2^c f while I_pm stay
// fixed, so omega_pm^t = omega_pm + t (d1 d1^c f mp d2 d2^c f).
BihermitianChart deformed_chart(const ScalarField& f, double t,
                                const CommutingBase& base,
                                const FDConfig& cfg);
DeformResult commuting_deform(const ScalarField& f, double t,
                              const CommutingBase& base,
                              const std::vector<rvec>& samples,
                              const FDConfig& cfg);

std::vector<rvec> grid_samples(const rvec& center, double half_width,
                               int per_axis);

// Chart description file: dimension, builtin structure name with numeric
// parameters, sample grid, FD settings.
struct ChartConfig {
  int dim = 4;
  FDConfig fd;
  std::string structure;
  std::map<std::string, double> params;
  std::vector<rvec> samples;
};
ChartConfig load_chart_config(const std::string& path);
BihermitianChart make_chart(const ChartConfig& cfg);

}  // namespace gk
