#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gk_c.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

TEST_CASE("suite runs through the C surface") {
  gk_report* rep = nullptr;
  REQUIRE(gk_run_point_suite(5, 2, 0.0, 11, &rep) == GK_OK);
  REQUIRE(rep != nullptr);
  CHECK(gk_report_pass(rep) == 1);

  const int count = gk_report_case_count(rep);
  REQUIRE(count > 0);
  for (int i = 0; i < count; ++i) {
    const char* id = nullptr;
    double residual = 0.0, tolerance = 0.0;
    int pass = 0;
    REQUIRE(gk_report_case(rep, i, &id, &residual, &tolerance, &pass) ==
            GK_OK);
    CHECK(id != nullptr);
    CHECK(std::strlen(id) > 0);
    CHECK(std::isfinite(residual));
    CHECK(pass == 1);
  }
  CHECK(gk_report_case(rep, count, nullptr, nullptr, nullptr, nullptr) ==
        GK_ERR_ARG);
  CHECK(gk_report_case(rep, -1, nullptr, nullptr, nullptr, nullptr) ==
        GK_ERR_ARG);

  gk_report_free(rep);
}

TEST_CASE("invalid arguments are rejected with a message") {
  gk_report* rep = reinterpret_cast<gk_report*>(1);
  CHECK(gk_run_point_suite(0, 2, 0.0, 1, &rep) == GK_ERR_ARG);
  CHECK(rep == nullptr);
  CHECK(std::strlen(gk_last_error()) > 0);

  CHECK(gk_run_point_suite(5, 0, 0.0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_point_suite(5, 5, 0.0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_group_suite(5, -1.0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_group_suite(5, 0.0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_moduli_suite(0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_hopf_suite(0, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_deform_suite(-0.1, 0.1, 1, &rep) == GK_ERR_ARG);
  CHECK(gk_run_point_suite(5, 2, 0.0, 1, nullptr) == GK_ERR_ARG);
}

TEST_CASE("constants come out of the group calibration") {
  gk_report* rep = nullptr;
  REQUIRE(gk_run_group_suite(4, 1e-3, 13, &rep) == GK_OK);
  CHECK(gk_report_pass(rep) == 1);

  double c0 = 0.0, c = 0.0, cz = 0.0;
  REQUIRE(gk_report_constant(rep, "c0", &c0) == GK_OK);
  REQUIRE(gk_report_constant(rep, "c_cartan", &c) == GK_OK);
  REQUIRE(gk_report_constant(rep, "c_z", &cz) == GK_OK);
  CHECK(std::abs(c0 - 2.0) < 1e-6);
  CHECK(std::abs(c + 1.0) < 1e-6);
  CHECK(std::abs(cz + 1.0) < 1e-4);

  double junk = 0.0;
  CHECK(gk_report_constant(rep, "c_nope", &junk) == GK_ERR_ARG);
  CHECK(gk_report_constant(rep, "c0", nullptr) == GK_ERR_ARG);

  gk_report_free(rep);
}

TEST_CASE("tolerance override flips the verdict") {
  gk_report* rep = nullptr;
  REQUIRE(gk_run_hopf_suite(4, 17, &rep) == GK_OK);
  REQUIRE(gk_report_pass(rep) == 1);

  REQUIRE(gk_report_override_tolerances(rep, 1e-30) == GK_OK);
  CHECK(gk_report_pass(rep) == 0);
  int failing = 0;
  for (int i = 0; i < gk_report_case_count(rep); ++i) {
    int pass = 1;
    REQUIRE(gk_report_case(rep, i, nullptr, nullptr, nullptr, &pass) == GK_OK);
    if (pass == 0) ++failing;
  }
  CHECK(failing > 0);

  REQUIRE(gk_report_override_tolerances(rep, 1e6) == GK_OK);
  CHECK(gk_report_pass(rep) == 1);
  gk_report_free(rep);
}

TEST_CASE("rendered reports are valid and deterministic") {
  gk_report* a = nullptr;
  gk_report* b = nullptr;
  REQUIRE(gk_run_moduli_suite(5, 19, &a) == GK_OK);
  REQUIRE(gk_run_moduli_suite(5, 19, &b) == GK_OK);

  const char* ja = gk_report_render(a, "json", 0);
  REQUIRE(ja != nullptr);
  const std::string json_a = ja;
  const std::string json_b = gk_report_render(b, "json", 0);
  CHECK(json_a == json_b);

  const auto parsed = nlohmann::json::parse(json_a);
  CHECK(parsed["suite"] == "moduli");
  CHECK(parsed["seed"] == 19);
  CHECK(parsed["pass"] == true);
  CHECK(parsed["cases"].is_array());
  CHECK(parsed["cases"].size() ==
        size_t(gk_report_case_count(a)));
  CHECK(parsed["constants"].contains("c_z"));
  for (const auto& c : parsed["cases"]) CHECK_FALSE(c.contains("wall_ms"));

  const std::string with_walls = gk_report_render(a, "json", 1);
  const auto walls = nlohmann::json::parse(with_walls);
  for (const auto& c : walls["cases"]) CHECK(c.contains("wall_ms"));

  const std::string csv_a = gk_report_render(a, "csv", 0);
  const std::string csv_b = gk_report_render(b, "csv", 0);
  CHECK(csv_a == csv_b);
  std::istringstream lines(csv_a);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "suite,seed,config,c0,c_cartan,c_z,case,residual,tolerance,pass");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == gk_report_case_count(a));

  CHECK(gk_report_render(a, "xml", 0) == nullptr);
  CHECK(std::strlen(gk_last_error()) > 0);

  gk_report_free(a);
  gk_report_free(b);
}

TEST_CASE("potential grid CSV lands on disk") {
  const char* path = "capi_grid.csv";
  REQUIRE(gk_write_potential_grid(path, 4) == GK_OK);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "v1_re,v1_im,x1_re,x1_im,f,grad_residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);
  in.close();
  std::remove(path);

  CHECK(gk_write_potential_grid(path, 0) == GK_ERR_ARG);
  CHECK(gk_write_potential_grid("no_such_dir/grid.csv", 4) == GK_ERR_IO);
  CHECK(gk_write_potential_grid(nullptr, 4) == GK_ERR_ARG);
}
