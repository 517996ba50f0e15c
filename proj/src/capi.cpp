#include <gk_c.h>

#include <gk/hopf.hpp>
#include <gk/suites.hpp>

#include <cstring>
#include <fstream>
#include <string>

struct gk_report {
  gk::SuiteReport report;
  std::string rendered;
};

namespace {

thread_local std::string g_last_error;

gk_status fail(gk_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
gk_status run_into(gk_report** out, F&& body) {
  if (out == nullptr) return fail(GK_ERR_ARG, "null report handle");
  *out = nullptr;
  try {
    *out = new gk_report{body(), {}};
    return GK_OK;
  } catch (const std::exception& e) {
    return fail(GK_ERR_ARG, e.what());
  }
}

}  // namespace

extern "C" const char* gk_last_error(void) { return g_last_error.c_str(); }

extern "C" gk_status gk_run_point_suite(int seeds, int n, double tol,
                                        uint64_t seed, gk_report** out) {
  return run_into(out,
                  [&] { return gk::run_point_suite(seeds, n, tol, seed); });
}

extern "C" gk_status gk_run_group_suite(int samples, double h, uint64_t seed,
                                        gk_report** out) {
  return run_into(out, [&] { return gk::run_group_suite(samples, h, seed); });
}

extern "C" gk_status gk_run_moduli_suite(int seeds, uint64_t seed,
                                         gk_report** out) {
  return run_into(out, [&] { return gk::run_moduli_suite(seeds, seed); });
}

extern "C" gk_status gk_run_hopf_suite(int grid, uint64_t seed,
                                       gk_report** out) {
  return run_into(out, [&] { return gk::run_hopf_suite(grid, seed); });
}

extern "C" gk_status gk_run_deform_suite(double t, double eps, uint64_t seed,
                                         gk_report** out) {
  return run_into(out, [&] { return gk::run_deform_suite(t, eps, seed); });
}

extern "C" void gk_report_free(gk_report* r) { delete r; }

extern "C" int gk_report_pass(const gk_report* r) {
  return r != nullptr && r->report.pass() ? 1 : 0;
}

extern "C" int gk_report_case_count(const gk_report* r) {
  return r == nullptr ? 0 : int(r->report.cases.size());
}

extern "C" gk_status gk_report_case(const gk_report* r, int index,
                                    const char** id, double* residual,
                                    double* tolerance, int* pass) {
  if (r == nullptr) return fail(GK_ERR_ARG, "null report handle");
  if (index < 0 || index >= int(r->report.cases.size()))
    return fail(GK_ERR_ARG, "case index out of range");
  const gk::CaseRecord& c = r->report.cases[index];
  if (id != nullptr) *id = c.id.c_str();
  if (residual != nullptr) *residual = c.residual;
  if (tolerance != nullptr) *tolerance = c.tolerance;
  if (pass != nullptr) *pass = c.pass ? 1 : 0;
  return GK_OK;
}

extern "C" gk_status gk_report_constant(const gk_report* r, const char* name,
                                        double* out) {
  if (r == nullptr || name == nullptr || out == nullptr)
    return fail(GK_ERR_ARG, "null argument");
  if (std::strcmp(name, "c0") == 0)
    *out = r->report.c0;
  else if (std::strcmp(name, "c_cartan") == 0)
    *out = r->report.c_cartan;
  else if (std::strcmp(name, "c_z") == 0)
    *out = r->report.c_z;
  else
    return fail(GK_ERR_ARG, "unknown constant name");
  return GK_OK;
}

extern "C" gk_status gk_report_override_tolerances(gk_report* r, double tol) {
  if (r == nullptr) return fail(GK_ERR_ARG, "null report handle");
  gk::override_tolerances(r->report, tol);
  return GK_OK;
}

extern "C" const char* gk_report_render(gk_report* r, const char* format,
                                        int include_walls) {
  if (r == nullptr || format == nullptr) {
    fail(GK_ERR_ARG, "null argument");
    return nullptr;
  }
  if (std::strcmp(format, "json") == 0)
    r->rendered = gk::report_json(r->report, include_walls != 0);
  else if (std::strcmp(format, "csv") == 0)
    r->rendered = gk::report_csv(r->report, include_walls != 0);
  else {
    fail(GK_ERR_ARG, "format must be json or csv");
    return nullptr;
  }
  return r->rendered.c_str();
}

extern "C" gk_status gk_write_potential_grid(const char* path, int grid) {
  if (path == nullptr) return fail(GK_ERR_ARG, "null path");
  try {
    std::ofstream out(path);
    if (!out) return fail(GK_ERR_IO, "could not open output file");
    gk::write_potential_grid(out, grid);
    out.flush();
    if (!out) return fail(GK_ERR_IO, "write failed");
    return GK_OK;
  } catch (const std::exception& e) {
    return fail(GK_ERR_ARG, e.what());
  }
}
