// qndtomo command-line front end. Talks to the library exclusively through
// the public C API so the binary exercises the same surface as an external
// consumer would.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qndtomo/qndtomo.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;

int exit_code_for(qnd_status status) {
  return status == QND_ERR_CONFIG ? kExitBadConfig : kExitFailure;
}

int run_command(const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file '" << config_path << "'\n";
    return kExitFailure;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string config = buf.str();

  char* manifest = nullptr;
  const qnd_status status = qnd_run_scenario_json(
      config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &manifest);
  if (status != QND_OK) {
    std::cerr << "error: " << qnd_last_error() << "\n";
    return exit_code_for(status);
  }
  std::cout << manifest << "\n";
  qnd_string_free(manifest);
  return 0;
}

int check_command() {
  char* report_text = nullptr;
  const qnd_status status = qnd_identity_checks_json(&report_text);
  if (status != QND_OK) {
    std::cerr << "error: " << qnd_last_error() << "\n";
    return exit_code_for(status);
  }
  const nlohmann::json report = nlohmann::json::parse(report_text);
  qnd_string_free(report_text);

  int failures = 0;
  for (const auto& check : report.at("checks")) {
    const bool pass = check.at("pass").get<bool>();
    if (!pass) ++failures;
    std::printf("[%s] %-34s residual %10.3e  (threshold %8.1e)\n",
                pass ? "PASS" : "FAIL",
                check.at("name").get<std::string>().c_str(),
                check.at("residual").get<double>(),
                check.at("threshold").get<double>());
  }
  const auto total = report.at("checks").size();
  std::printf("%zu/%zu identity checks passed\n", total - failures, total);
  return failures == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrature-coupling simulator: QND readout, conditional "
               "states, Wigner functions, homodyne tomography"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  CLI::App* run = app.add_subcommand(
      "run", "Run a scenario from a JSON config and print its manifest");
  run->add_option("config", config_path, "Path to the JSON config file")
      ->required();
  run->add_option("--out-dir", out_dir,
                  "Write artifacts here instead of the config's out_dir");

  CLI::App* check =
      app.add_subcommand("check", "Run the built-in identity-check suite");

  CLI::App* version =
      app.add_subcommand("version", "Print the library version");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_command(config_path, out_dir);
  if (check->parsed()) return check_command();
  if (version->parsed()) {
    std::cout << qnd_version() << "\n";
    return 0;
  }
  return kExitFailure;
}
