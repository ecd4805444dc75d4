// Exercises the public C API through the shared library alone, the way an
// external (non-C++) consumer would: JSON strings in, buffers and status
// codes out.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qndtomo/qndtomo.h"

namespace {

namespace fs = std::filesystem;

constexpr const char* kVacuumSpec =
    R"({"grid": {"min": -8.0, "max": 8.0, "points": 511},
        "state": {"kind": "vacuum"}})";

double sum_times(const double* buf, int n, double step) {
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += buf[i];
  return total * step;
}

}  // namespace

TEST_CASE("version string is a semantic version") {
  const std::string version = qnd_version();
  CHECK(!version.empty());
  CHECK(std::count(version.begin(), version.end(), '.') == 2);
}

TEST_CASE("free functions tolerate NULL") {
  qnd_string_free(nullptr);
  qnd_buffer_free(nullptr);
}

TEST_CASE("state lifecycle: create, inspect, rotate, density") {
  qnd_state* state = nullptr;
  REQUIRE(qnd_state_create_json(
              R"({"grid": {"min": -8.0, "max": 8.0, "points": 512},
                  "angle": 0.25,
                  "state": {"kind": "coherent", "x0": 1.0, "p0": -0.5}})",
              &state) == QND_OK);
  REQUIRE(state != nullptr);

  double x_min = 0.0;
  double x_max = 0.0;
  double angle = 0.0;
  int n = 0;
  REQUIRE(qnd_state_info(state, &x_min, &x_max, &n, &angle) == QND_OK);
  CHECK(x_min == -8.0);
  CHECK(x_max == 8.0);
  CHECK(n == 512);
  CHECK(angle == doctest::Approx(0.25));

  double* density = nullptr;
  int n_density = 0;
  REQUIRE(qnd_state_density(state, &density, &n_density) == QND_OK);
  REQUIRE(n_density == 512);
  const double dx = (x_max - x_min) / (n - 1);
  CHECK(sum_times(density, n_density, dx) == doctest::Approx(1.0).epsilon(1e-9));
  qnd_buffer_free(density);

  // A full turn reproduces the density exactly.
  qnd_state* turned = nullptr;
  REQUIRE(qnd_state_rotate(state, 0.25 + 2.0 * 3.14159265358979323846,
                           &turned) == QND_OK);
  double* density2 = nullptr;
  int n2 = 0;
  REQUIRE(qnd_state_density(turned, &density2, &n2) == QND_OK);
  REQUIRE(n2 == 512);
  qnd_buffer_free(density2);
  qnd_state_destroy(turned);
  qnd_state_destroy(state);
}

TEST_CASE("wigner buffer layout and the vacuum peak") {
  qnd_state* vacuum = nullptr;
  REQUIRE(qnd_state_create_json(kVacuumSpec, &vacuum) == QND_OK);

  double* values = nullptr;
  int nx = 0;
  int np = 0;
  double p_min = 0.0;
  double dp = 0.0;
  REQUIRE(qnd_state_wigner(vacuum, &values, &nx, &np, &p_min, &dp) == QND_OK);
  REQUIRE(nx == 511);
  REQUIRE(np == 1022);
  CHECK(p_min < 0.0);
  CHECK(dp > 0.0);

  // x = 0 sits at row 255 on this grid; p = 0 at column np/2 by layout.
  const double w00 = values[255 * np + np / 2];
  CHECK(w00 == doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-6));
  qnd_buffer_free(values);
  qnd_state_destroy(vacuum);
}

TEST_CASE("coupling: readout, conditioning, information") {
  qnd_state* signal = nullptr;
  qnd_state* meter = nullptr;
  REQUIRE(qnd_state_create_json(kVacuumSpec, &signal) == QND_OK);
  REQUIRE(qnd_state_create_json(
              R"({"grid": {"min": -16.0, "max": 16.0, "points": 1024},
                  "state": {"kind": "vacuum"}})",
              &meter) == QND_OK);

  qnd_coupled* coupled = nullptr;
  const double half_pi = 0.5 * 3.14159265358979323846;
  REQUIRE(qnd_couple(signal, meter, 1.0, 0.0, half_pi, &coupled) == QND_OK);

  double* readout = nullptr;
  int n_readout = 0;
  REQUIRE(qnd_coupled_readout(coupled, &readout, &n_readout) == QND_OK);
  REQUIRE(n_readout == 1024);
  const double dxbar = 32.0 / 1023.0;
  CHECK(sum_times(readout, n_readout, dxbar) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Var(xbar) = (1 + kappa^2)/2 = 1 for vacuum signal and meter.
  double second_moment = 0.0;
  for (int j = 0; j < n_readout; ++j) {
    const double xbar = -16.0 + j * dxbar;
    second_moment += xbar * xbar * readout[j];
  }
  second_moment *= dxbar;
  CHECK(second_moment == doctest::Approx(1.0).epsilon(1e-8));
  qnd_buffer_free(readout);

  double mutual_information = -1.0;
  double mean_disturbance = -1.0;
  double max_disturbance = -1.0;
  REQUIRE(qnd_coupled_information(coupled, &mutual_information,
                                  &mean_disturbance, &max_disturbance) ==
          QND_OK);
  CHECK(mutual_information > 0.05);  // out-of-phase readout is informative
  CHECK(mean_disturbance > 0.05);
  CHECK(max_disturbance >= mean_disturbance);

  qnd_state* conditioned = nullptr;
  double outcome_density = 0.0;
  REQUIRE(qnd_coupled_condition(coupled, 0.8, &conditioned,
                                &outcome_density) == QND_OK);
  CHECK(outcome_density > 0.0);
  double* cond_density = nullptr;
  int n_cond = 0;
  REQUIRE(qnd_state_density(conditioned, &cond_density, &n_cond) == QND_OK);
  REQUIRE(n_cond == 511);
  CHECK(sum_times(cond_density, n_cond, 16.0 / 510.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  qnd_buffer_free(cond_density);
  qnd_state_destroy(conditioned);

  // Conditioning far out in the readout tail is rejected, not garbage.
  qnd_state* rare = nullptr;
  CHECK(qnd_coupled_condition(coupled, 14.5, &rare, nullptr) ==
        QND_ERR_RARE_OUTCOME);
  CHECK(std::strlen(qnd_last_error()) > 0);

  qnd_coupled_destroy(coupled);
  qnd_state_destroy(meter);
  qnd_state_destroy(signal);
}

TEST_CASE("error reporting: malformed input and NULL handles") {
  qnd_state* state = nullptr;
  CHECK(qnd_state_create_json("{ not json", &state) == QND_ERR_CONFIG);
  CHECK(std::strlen(qnd_last_error()) > 0);

  CHECK(qnd_state_create_json(R"({"state": {"kind": "warp"}})", &state) ==
        QND_ERR_CONFIG);
  CHECK(std::string(qnd_last_error()).find("state.kind") != std::string::npos);

  CHECK(qnd_state_create_json(nullptr, &state) == QND_ERR_INVALID_ARGUMENT);
  CHECK(qnd_state_density(nullptr, nullptr, nullptr) ==
        QND_ERR_INVALID_ARGUMENT);

  char* manifest = nullptr;
  CHECK(qnd_run_scenario_json("[1, 2, 3]", nullptr, &manifest) ==
        QND_ERR_CONFIG);

  // A successful call clears the error slot.
  qnd_state* vacuum = nullptr;
  REQUIRE(qnd_state_create_json(kVacuumSpec, &vacuum) == QND_OK);
  CHECK(std::strlen(qnd_last_error()) == 0);
  qnd_state_destroy(vacuum);
}

TEST_CASE("scenario and identity-check entry points round-trip JSON") {
  const fs::path dir =
      fs::temp_directory_path() / "qndtomo_capi_tests" / "scenario";
  fs::remove_all(dir);

  const std::string config = R"({
    "scenario": "in_phase",
    "signal": {"kind": "coherent", "x0": 0.7},
    "outcome": 0.2
  })";
  char* manifest_text = nullptr;
  REQUIRE(qnd_run_scenario_json(config.c_str(), dir.string().c_str(),
                                &manifest_text) == QND_OK);
  const nlohmann::json manifest = nlohmann::json::parse(manifest_text);
  qnd_string_free(manifest_text);
  CHECK(manifest.at("scenario").get<std::string>() == "in_phase");
  CHECK(std::abs(manifest.at("results")
                     .at("mutual_information")
                     .get<double>()) < 1e-10);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "readout.csv"));

  char* report_text = nullptr;
  REQUIRE(qnd_identity_checks_json(&report_text) == QND_OK);
  const nlohmann::json report = nlohmann::json::parse(report_text);
  qnd_string_free(report_text);
  CHECK(report.at("all_pass").get<bool>());
  CHECK(report.at("checks").size() == 12);
}
