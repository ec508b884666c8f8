#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pfc/output.hpp"
#include "pfc/runner.hpp"
#include "pfc/scenario.hpp"

namespace {

nlohmann::json load_scenario_json(const std::string& target) {
  const auto presets = pfc::preset_names();
  if (std::find(presets.begin(), presets.end(), target) != presets.end()) {
    return pfc::scenario_to_json(pfc::builtin_scenario(target));
  }
  std::ifstream in(target);
  if (!in) {
    throw std::runtime_error("'" + target + "' is neither a preset nor a readable file");
  }
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-field simulator for cracks with frictional contact"};
  app.require_subcommand(1);

  std::string target;
  std::string out_dir;
  std::vector<std::string> overrides;
  int threads = 0;
  bool serial = false;

  auto* run = app.add_subcommand("run", "Run a scenario file or a built-in preset");
  run->add_option("scenario", target, "Scenario JSON file or preset name")->required();
  run->add_option("--out", out_dir, "Output directory (default: out/<name>)");
  run->add_option("--override", overrides, "Dotted-path override, e.g. friction.mu=0.19");
  run->add_option("--threads", threads, "OpenMP thread count (default: hardware)");
  run->add_flag("--serial", serial, "Use the serial reference kernels");

  auto* list = app.add_subcommand("list-presets", "List built-in scenario presets");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("file", validate_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : pfc::preset_names()) std::cout << name << "\n";
      return 0;
    }
    if (validate->parsed()) {
      pfc::parse_scenario(validate_path);
      std::cout << "OK: " << validate_path << "\n";
      return 0;
    }

    nlohmann::json j = load_scenario_json(target);
    for (const auto& ov : overrides) pfc::apply_override(j, ov);
    const pfc::Scenario scenario = pfc::scenario_from_json(j);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    const pfc::ExecPolicy policy = serial ? pfc::ExecPolicy::Serial : pfc::ExecPolicy::Parallel;

    std::cout << "scenario: " << scenario.name << " ("
              << (scenario.mode == pfc::RunMode::Stationary ? "stationary" : "propagation")
              << ", " << scenario.steps << " steps)\n";
    const pfc::RunResult result = pfc::run_scenario(scenario, policy);
    std::cout << "mesh: " << result.mesh.n_elements() << " elements, "
              << result.mesh.n_nodes() << " nodes\n";
    for (const auto& s : result.steps) {
      std::cout << "step " << s.step << ": " << (s.converged ? "converged" : "NOT CONVERGED")
                << " in " << s.iterations << " iteration(s), |R| = "
                << s.residual_norms.back() << ", reaction = " << s.reaction << "\n";
    }
    if (out_dir.empty()) out_dir = "out/" + scenario.name;
    const auto bundle = pfc::write_outputs(result, out_dir);
    std::cout << "wrote " << bundle.vtk_files.size() << " VTK file(s) and "
              << bundle.csv_files.size() << " CSV file(s) to " << bundle.directory << "\n";
    return result.all_converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
