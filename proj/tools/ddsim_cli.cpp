#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddsim/io.hpp"
#include "ddsim/scenario.hpp"

namespace {

ddsim::ScenarioConfig load(const std::string& path) { return ddsim::parse_config(ddsim::read_text_file(path)); }

int report(const ddsim::RunReport& r) {
  std::cout << r.message;
  if (r.exit_code != 0) std::cerr << "decoupling mode: " << r.mode << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical decoupling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* simulate = app.add_subcommand("simulate", "Run free and controlled evolution for one config");
  simulate->add_option("--config", config_path, "config.json")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Sweep delta_t and fit the infidelity scaling exponent");
  sweep->add_option("--config", config_path, "config.json")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "output directory")->required();

  std::vector<std::string> interaction;
  int qubits = 1;
  std::size_t max_order = 16;
  auto* design = app.add_subcommand("design", "Find minimal Pauli groups that average out an interaction space");
  design->add_option("--interaction", interaction, "Pauli words or sums such as XI+IX")->required();
  design->add_option("--qubits", qubits, "number of qubits")->required()->check(CLI::Range(1, 3));
  design->add_option("--max-order", max_order, "largest group order to try")->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return report(ddsim::run_scenario(load(config_path), out_dir));
    if (*sweep) return report(ddsim::run_sweep(load(config_path), out_dir));
    if (*design) {
      std::cout << ddsim::design_report(interaction, qubits, max_order);
      return 0;
    }
  } catch (const ddsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
