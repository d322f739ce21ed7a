#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddsim/evolve.hpp"
#include "ddsim/group.hpp"
#include "ddsim/model.hpp"
#include "ddsim/sequence.hpp"

namespace ddsim {

/// Invalid configuration; the message starts with the JSON path of the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { dephasing_echo, collective_register, maximal_averaging, selective_logic, custom };

ScenarioKind parse_scenario_kind(std::string_view name);
std::string to_string(ScenarioKind kind);
std::vector<std::string> preset_names();

struct PauliTerm {
  std::string word;
  double coefficient = 0.0;
};

struct SweepSpec {
  std::string parameter = "delta_t";
  std::vector<double> values;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::custom;
  int qubits = 1;
  BathSpec bath;
  CouplingKind coupling = CouplingKind::dephasing;
  // Named group ("trivial", "flip", "collective", "full") or explicit words.
  std::string group = "flip";
  std::vector<std::string> group_words;
  std::optional<std::vector<std::size_t>> ordering;
  std::vector<PauliTerm> system_hamiltonian;
  // One character per qubit from {0, 1, +, -, r, l}.
  std::string initial_state = "+";
  // "ground" (zero temperature) or "mixed" (maximally mixed bath).
  std::string bath_state = "ground";
  double delta_t = 0.1;
  std::int64_t n_cycles = 100;
  // When set, n_cycles = round(total_time / T_c).
  std::optional<double> total_time;
  std::int64_t sample_every = 1;
  bool symmetric = false;
  std::optional<SweepSpec> sweep;
  std::uint64_t seed = 0;
  std::string output_dir;
};

/// Frozen defaults for a named scenario.
ScenarioConfig preset(ScenarioKind kind);

/// Parses a JSON config document. The preset named by "scenario" supplies
/// defaults; every other key overrides it. Unknown keys, type mismatches and
/// a missing "seed" raise ConfigError.
ScenarioConfig parse_config(std::string_view json_text);

/// Serializes back to the JSON config format (all fields explicit).
std::string config_to_json(const ScenarioConfig& config);

// Pipeline pieces, exposed for tests and bindings.
SystemBathModel scenario_model(const ScenarioConfig& config);
DecouplingGroup scenario_group(const ScenarioConfig& config);
CycleSchedule scenario_schedule(const ScenarioConfig& config, const DecouplingGroup& group);
std::int64_t scenario_cycles(const ScenarioConfig& config, const CycleSchedule& schedule);
Operator product_state(std::string_view spec);
Operator scenario_bath_state(const ScenarioConfig& config, const SystemBathModel& model);

/// JSON-shaped schedule record {group, delta_t, ordering, symmetric}.
std::string schedule_record_json(const CycleSchedule& schedule);

struct ScenarioOutcome {
  DecouplingReport decoupling;
  std::vector<std::string> interaction_labels;
  CycleSchedule schedule;
  std::optional<TrajectoryResult> free;
  std::optional<TrajectoryResult> controlled;
  std::optional<RateEstimate> rates;
};

/// Builds the pipeline and, unless the group leaves the interaction space
/// undecoupled, runs the free and controlled simulations.
ScenarioOutcome simulate_scenario(const ScenarioConfig& config);

struct RunReport {
  int exit_code = 0;
  std::string mode;
  std::string summary_json;
  // Human-readable lines (feasibility, residual table).
  std::string message;
};

/// simulate: writes trajectory.csv, trajectory_free.csv, summary.json, run.log.
/// Exit code 2 when the interaction space is not decoupled.
RunReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// sweep: runs every delta_t value concurrently, writes sweep.csv and
/// summary.json with the fitted scaling exponent of 1 - F_terminal.
RunReport run_sweep(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// design: minimal Pauli groups for the interaction space with pulse programs.
std::string design_report(const std::vector<std::string>& interaction, int n_qubits, std::size_t max_order);

std::string feasibility_line(double omega_c_delta_t);

}  // namespace ddsim
