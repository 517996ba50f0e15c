// Command-line driver for the verification suites.  Talks to the core
// exclusively through the C API so it doubles as a smoke test for gk_c.h.

#include <CLI11.hpp>
#include <gk_c.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "gk: %s\n", msg.c_str());
  return 2;
}

// Renders the report, writes it to `out` (or stdout when empty), lists any
// failing cases on stderr, and frees the handle.  Returns the exit code.
int emit_report(gk_report* rep, const std::string& format,
                const std::string& out) {
  const char* body = gk_report_render(rep, format.c_str(), 0);
  if (body == nullptr) {
    const int rc = usage_error(gk_last_error());
    gk_report_free(rep);
    return rc;
  }
  if (out.empty()) {
    std::fputs(body, stdout);
  } else {
    std::ofstream file(out);
    file << body;
    file.flush();
    if (!file) {
      gk_report_free(rep);
      return usage_error("cannot write " + out);
    }
  }
  const bool pass = gk_report_pass(rep) == 1;
  if (!pass) {
    for (int i = 0; i < gk_report_case_count(rep); ++i) {
      const char* id = nullptr;
      double residual = 0.0, tolerance = 0.0;
      int case_pass = 0;
      gk_report_case(rep, i, &id, &residual, &tolerance, &case_pass);
      if (case_pass == 0)
        std::fprintf(stderr, "FAIL %s residual=%.6e tolerance=%.6e\n", id,
                     residual, tolerance);
    }
  }
  gk_report_free(rep);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic verification suites for generalized Kahler "
               "linear algebra, group charts, annulus moduli, and the Hopf "
               "potential"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
  double tol = 0.0;
  int seeds = 100, n = 2, samples = 20, moduli_seeds = 50, grid = 10;
  double h = 1e-3, t = 0.05, eps = 0.1;

  const auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master RNG seed");
    cmd->add_option("--tol", tol, "override every case tolerance");
    cmd->add_option("--out", out, "report path (default stdout)");
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* point = app.add_subcommand("point", "pointwise GK battery");
  point->add_option("--seeds", seeds, "random points per case");
  point->add_option("--n", n, "complex dimension (1..4)");
  add_shared(point);

  CLI::App* group =
      app.add_subcommand("group", "SU(2)xR chart and dressing checks");
  group->add_option("--samples", samples, "chart sample count");
  group->add_option("--h", h, "finite difference step");
  add_shared(group);

  CLI::App* moduli = app.add_subcommand("moduli", "annulus moduli battery");
  moduli->add_option("--seeds", moduli_seeds, "composable pair draws");
  add_shared(moduli);

  CLI::App* hopf =
      app.add_subcommand("hopf", "Hopf potential checks plus grid CSV");
  hopf->add_option("--grid", grid, "potential grid resolution");
  add_shared(hopf);

  CLI::App* deform =
      app.add_subcommand("deform", "commuting-type deformation check");
  deform->add_option("--t", t, "deformation time");
  deform->add_option("--eps", eps, "Hamiltonian amplitude");
  add_shared(deform);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* active = nullptr;
  for (CLI::App* cmd : {point, group, moduli, hopf, deform})
    if (cmd->parsed()) active = cmd;

  if (active->count("--tol") == 0) {
    if (const char* env = std::getenv("GK_DEFAULT_TOL"); env && *env) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0)
        return usage_error("GK_DEFAULT_TOL is not a positive number");
      tol = v;
    }
  }

  gk_report* rep = nullptr;
  gk_status st = GK_OK;
  if (active == point) {
    st = gk_run_point_suite(seeds, n, tol, seed, &rep);
    tol = 0.0;
  } else if (active == group) {
    st = gk_run_group_suite(samples, h, seed, &rep);
  } else if (active == moduli) {
    st = gk_run_moduli_suite(moduli_seeds, seed, &rep);
  } else if (active == hopf) {
    st = gk_run_hopf_suite(grid, seed, &rep);
  } else {
    st = gk_run_deform_suite(t, eps, seed, &rep);
  }
  if (st != GK_OK) return usage_error(gk_last_error());

  if (active == hopf &&
      gk_write_potential_grid("potential_grid.csv", grid) != GK_OK) {
    gk_report_free(rep);
    return usage_error(gk_last_error());
  }
  if (tol > 0.0) gk_report_override_tolerances(rep, tol);
  return emit_report(rep, format, out);
}
