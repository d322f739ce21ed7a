#include "ddsim/scenario.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ddsim/io.hpp"
#include "ddsim/pauli.hpp"

namespace ddsim {
namespace {

using nlohmann::json;



void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(path + "." + key + ": unknown key");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  return j;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path + ": expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

void apply_bath(BathSpec& bath, const json& j) {
  const std::string path = "$.bath";
  require_object(j, path);
  reject_unknown(j, {"kind", "n_modes", "cutoff", "coupling_scale", "mode_frequencies", "boson_truncation", "commuting"},
                 path);
  if (j.contains("kind")) {
    try {
      bath.kind = parse_bath_kind(as_string(j["kind"], path + ".kind"));
    } catch (const StructuralError& e) {
      throw ConfigError(path + ".kind: " + e.what());
    }
  }
  if (j.contains("n_modes")) bath.n_modes = static_cast<int>(as_integer(j["n_modes"], path + ".n_modes"));
  if (j.contains("cutoff")) bath.cutoff = as_number(j["cutoff"], path + ".cutoff");
  if (j.contains("coupling_scale")) bath.coupling_scale = as_number(j["coupling_scale"], path + ".coupling_scale");
  if (j.contains("mode_frequencies")) {
    bath.mode_frequencies = as_number_list(j["mode_frequencies"], path + ".mode_frequencies");
  }
  if (j.contains("boson_truncation")) {
    bath.boson_truncation = static_cast<int>(as_integer(j["boson_truncation"], path + ".boson_truncation"));
  }
  if (j.contains("commuting")) bath.commuting = as_bool(j["commuting"], path + ".commuting");
}

void validate(const ScenarioConfig& c) {
  if (c.qubits < 1 || c.qubits > 6) throw ConfigError("$.qubits: must lie in [1, 6]");
  try {
    c.bath.validate();
  } catch (const StructuralError& e) {
    throw ConfigError(std::string("$.bath: ") + e.what());
  }
  if (c.initial_state.size() != static_cast<std::size_t>(c.qubits)) {
    throw ConfigError("$.initial_state: needs one character per qubit");
  }
  if (c.initial_state.find_first_not_of("01+-rl") != std::string::npos) {
    throw ConfigError("$.initial_state: characters must come from {0,1,+,-,r,l}");
  }
  for (std::size_t k = 0; k < c.system_hamiltonian.size(); ++k) {
    const auto& w = c.system_hamiltonian[k].word;
    if (w.size() != static_cast<std::size_t>(c.qubits) || w.find_first_not_of("IXYZ") != std::string::npos) {
      throw ConfigError("$.system_hamiltonian[" + std::to_string(k) + "].word: expected a " +
                        std::to_string(c.qubits) + "-letter Pauli word");
    }
  }
  if (c.group_words.empty()) {
    static const std::set<std::string> kNamed{"trivial", "flip", "collective", "full"};
    if (!kNamed.count(c.group)) throw ConfigError("$.group: unknown group '" + c.group + "'");
  } else {
    for (std::size_t k = 0; k < c.group_words.size(); ++k) {
      if (c.group_words[k].size() != static_cast<std::size_t>(c.qubits)) {
        throw ConfigError("$.group[" + std::to_string(k) + "]: word length must equal qubits");
      }
    }
  }
  if (c.bath_state != "ground" && c.bath_state != "mixed") {
    throw ConfigError("$.bath_state: expected \"ground\" or \"mixed\"");
  }
  if (!(c.delta_t > 0.0)) throw ConfigError("$.delta_t: must be > 0");
  if (c.n_cycles < 1) throw ConfigError("$.n_cycles: must be >= 1");
  if (c.total_time && !(*c.total_time > 0.0)) throw ConfigError("$.total_time: must be > 0");
  if (c.sample_every < 1) throw ConfigError("$.sample_every: must be >= 1");
  if (c.sweep) {
    if (c.sweep->parameter != "delta_t") throw ConfigError("$.sweep.parameter: only \"delta_t\" is supported");
    for (std::size_t k = 0; k < c.sweep->values.size(); ++k) {
      if (!(c.sweep->values[k] > 0.0)) throw ConfigError("$.sweep.values[" + std::to_string(k) + "]: must be > 0");
    }
  }
}

std::string named_or_words(const ScenarioConfig& c) {
  if (c.group_words.empty()) return c.group;
  std::string out;
  for (const auto& w : c.group_words) out += (out.empty() ? "" : ",") + w;
  return out;
}

json trajectory_terminal(const TrajectoryResult& t) {
  return json{{"cycle", t.cycles.back()},
              {"time", t.times.back()},
              {"fidelity", t.fidelity.back()},
              {"infidelity", 1.0 - t.fidelity.back()},
              {"coherence", t.coherence.back()},
              {"trace_distance", t.trace_distance_to_initial.back()}};
}

json rates_json(const RateEstimate& r) {
  return json{{"gamma", r.gamma},
              {"gamma_c", r.gamma_c},
              {"ratio", r.ratio},
              {"tau_rel", r.gamma > 0 ? json(1.0 / r.gamma) : json(nullptr)},
              {"fit_window", {r.fit_window.first, r.fit_window.second}},
              {"controlled_window", {r.controlled_window.first, r.controlled_window.second}},
              {"fit_residual", r.fit_residual},
              {"controlled_residual", r.controlled_residual},
              {"controlled_secant", r.controlled_secant},
              {"flagged", r.flagged}};
}

std::string residual_table(const ScenarioOutcome& o) {
  std::ostringstream os;
  os << "interaction operator   ||Pi_C(S)||_F\n";
  for (std::size_t k = 0; k < o.decoupling.residuals.size(); ++k) {
    os << std::left << std::setw(23) << o.interaction_labels[k] << format_double(o.decoupling.residuals[k])
       << (o.decoupling.residuals[k] > tol::kNumerical ? "  (not averaged)" : "") << '\n';
  }
  return os.str();
}

void write_log(const std::filesystem::path& dir, const std::string& command, const ScenarioConfig& config) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << ' ' << command << " scenario=" << to_string(config.scenario)
     << " seed=" << config.seed << '\n';
  write_text_file(dir / "run.log", os.str());
}

}  // namespace

ScenarioKind parse_scenario_kind(std::string_view name) {
  if (name == "dephasing-echo") return ScenarioKind::dephasing_echo;
  if (name == "collective-register") return ScenarioKind::collective_register;
  if (name == "maximal-averaging") return ScenarioKind::maximal_averaging;
  if (name == "selective-logic") return ScenarioKind::selective_logic;
  if (name == "custom") return ScenarioKind::custom;
  throw ConfigError("$.scenario: unknown scenario '" + std::string(name) + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::dephasing_echo: return "dephasing-echo";
    case ScenarioKind::collective_register: return "collective-register";
    case ScenarioKind::maximal_averaging: return "maximal-averaging";
    case ScenarioKind::selective_logic: return "selective-logic";
    case ScenarioKind::custom: return "custom";
  }
  return {};
}

std::vector<std::string> preset_names() {
  return {"dephasing-echo", "collective-register", "maximal-averaging", "selective-logic"};
}

ScenarioConfig preset(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  c.bath.kind = BathKind::spin;
  c.bath.cutoff = 1.0;
  switch (kind) {
    case ScenarioKind::dephasing_echo:
      // Single qubit, sigma_z coupling, {1, X} echo cycle.
      c.qubits = 1;
      c.bath.n_modes = 4;
      c.bath.coupling_scale = 0.3;
      c.coupling = CouplingKind::dephasing;
      c.group = "flip";
      c.initial_state = "+";
      c.delta_t = 0.1;
      c.total_time = 16.0;
      c.seed = 7;
      break;
    case ScenarioKind::maximal_averaging:
      // Arbitrary single-qubit coupling averaged by the full Pauli group.
      c.qubits = 1;
      c.bath.n_modes = 4;
      c.bath.coupling_scale = 0.3;
      c.coupling = CouplingKind::total;
      c.group = "full";
      c.system_hamiltonian = {{"X", 0.25}, {"Z", 0.15}};
      c.initial_state = "+";
      c.delta_t = 0.05;
      c.total_time = 5.0;
      c.seed = 11;
      break;
    case ScenarioKind::collective_register:
      // Collective decoherence on two qubits; ZZ survives as logic, ZI is averaged out.
      c.qubits = 2;
      c.bath.n_modes = 4;
      c.bath.coupling_scale = 0.3;
      c.coupling = CouplingKind::linear_collective;
      c.group = "collective";
      c.system_hamiltonian = {{"ZZ", 0.3}, {"ZI", 0.2}};
      c.initial_state = "++";
      c.delta_t = 0.05;
      c.total_time = 10.0;
      c.seed = 5;
      break;
    case ScenarioKind::selective_logic:
      // Independent dephasing under {II, XX}; ZZ and XI commute with the group.
      c.qubits = 2;
      c.bath.n_modes = 3;
      c.bath.coupling_scale = 0.3;
      c.coupling = CouplingKind::dephasing;
      c.group = "flip";
      c.system_hamiltonian = {{"ZZ", 0.3}, {"XI", 0.2}};
      c.initial_state = "0+";
      c.delta_t = 0.05;
      c.total_time = 10.0;
      c.seed = 3;
      break;
    case ScenarioKind::custom:
      c.qubits = 1;
      c.bath.n_modes = 4;
      c.bath.coupling_scale = 0.1;
      c.coupling = CouplingKind::dephasing;
      c.group = "flip";
      c.initial_state = "+";
      c.delta_t = 0.1;
      c.n_cycles = 100;
      c.seed = 1;
      break;
  }
  c.bath.seed = c.seed;
  return c;
}

ScenarioConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: invalid JSON: ") + e.what());
  }
  require_object(doc, "$");
  reject_unknown(doc,
                 {"scenario", "qubits", "bath", "coupling", "group", "ordering", "system_hamiltonian", "initial_state",
                  "bath_state", "delta_t", "n_cycles", "total_time", "sample_every", "symmetric", "sweep", "seed",
                  "output_dir"},
                 "$");
  if (!doc.contains("seed")) throw ConfigError("$.seed: required (runs are seeded explicitly)");

  const ScenarioKind kind =
      doc.contains("scenario") ? parse_scenario_kind(as_string(doc["scenario"], "$.scenario")) : ScenarioKind::custom;
  ScenarioConfig c = preset(kind);

  if (doc.contains("qubits")) c.qubits = static_cast<int>(as_integer(doc["qubits"], "$.qubits"));
  if (doc.contains("bath")) apply_bath(c.bath, doc["bath"]);
  if (doc.contains("coupling")) {
    try {
      c.coupling = parse_coupling_kind(as_string(doc["coupling"], "$.coupling"));
    } catch (const StructuralError& e) {
      throw ConfigError(std::string("$.coupling: ") + e.what());
    }
  }
  if (doc.contains("group")) {
    const json& g = doc["group"];
    if (g.is_string()) {
      c.group = g.get<std::string>();
      c.group_words.clear();
    } else if (g.is_array()) {
      c.group_words.clear();
      for (std::size_t k = 0; k < g.size(); ++k) c.group_words.push_back(as_string(g[k], "$.group[" + std::to_string(k) + "]"));
      c.group = "explicit";
    } else {
      throw ConfigError("$.group: expected a group name or a list of Pauli words");
    }
  }
  if (doc.contains("ordering")) {
    const json& o = doc["ordering"];
    if (o.is_null()) {
      c.ordering.reset();
    } else {
      if (!o.is_array()) throw ConfigError("$.ordering: expected an array of indices");
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < o.size(); ++k) {
        const auto v = as_integer(o[k], "$.ordering[" + std::to_string(k) + "]");
        if (v < 0) throw ConfigError("$.ordering[" + std::to_string(k) + "]: must be >= 0");
        idx.push_back(static_cast<std::size_t>(v));
      }
      c.ordering = std::move(idx);
    }
  }
  if (doc.contains("system_hamiltonian")) {
    const json& h = doc["system_hamiltonian"];
    if (!h.is_array()) throw ConfigError("$.system_hamiltonian: expected an array of {word, coefficient}");
    c.system_hamiltonian.clear();
    for (std::size_t k = 0; k < h.size(); ++k) {
      const std::string path = "$.system_hamiltonian[" + std::to_string(k) + "]";
      require_object(h[k], path);
      reject_unknown(h[k], {"word", "coefficient"}, path);
      if (!h[k].contains("word") || !h[k].contains("coefficient")) throw ConfigError(path + ": needs word and coefficient");
      c.system_hamiltonian.push_back({as_string(h[k]["word"], path + ".word"), as_number(h[k]["coefficient"], path + ".coefficient")});
    }
  }
  if (doc.contains("initial_state")) c.initial_state = as_string(doc["initial_state"], "$.initial_state");
  if (doc.contains("bath_state")) c.bath_state = as_string(doc["bath_state"], "$.bath_state");
  if (doc.contains("delta_t")) c.delta_t = as_number(doc["delta_t"], "$.delta_t");
  if (doc.contains("n_cycles")) {
    c.n_cycles = as_integer(doc["n_cycles"], "$.n_cycles");
    if (!doc.contains("total_time")) c.total_time.reset();
  }
  if (doc.contains("total_time")) {
    if (doc["total_time"].is_null()) {
      c.total_time.reset();
    } else {
      c.total_time = as_number(doc["total_time"], "$.total_time");
    }
  }
  if (doc.contains("sample_every")) c.sample_every = as_integer(doc["sample_every"], "$.sample_every");
  if (doc.contains("symmetric")) c.symmetric = as_bool(doc["symmetric"], "$.symmetric");
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (s.is_null()) {
      c.sweep.reset();
    } else {
      require_object(s, "$.sweep");
      reject_unknown(s, {"parameter", "values"}, "$.sweep");
      SweepSpec spec;
      if (s.contains("parameter")) spec.parameter = as_string(s["parameter"], "$.sweep.parameter");
      if (!s.contains("values")) throw ConfigError("$.sweep.values: required");
      spec.values = as_number_list(s["values"], "$.sweep.values");
      c.sweep = std::move(spec);
    }
  }
  const std::int64_t seed = as_integer(doc["seed"], "$.seed");
  if (seed < 0) throw ConfigError("$.seed: must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  c.bath.seed = c.seed;
  if (doc.contains("output_dir")) c.output_dir = as_string(doc["output_dir"], "$.output_dir");

  validate(c);
  return c;
}

std::string config_to_json(const ScenarioConfig& c) {
  json bath{{"kind", to_string(c.bath.kind)},
            {"n_modes", c.bath.n_modes},
            {"cutoff", c.bath.cutoff},
            {"coupling_scale", c.bath.coupling_scale},
            {"mode_frequencies", c.bath.mode_frequencies},
            {"boson_truncation", c.bath.boson_truncation},
            {"commuting", c.bath.commuting}};
  json h = json::array();
  for (const auto& t : c.system_hamiltonian) h.push_back({{"word", t.word}, {"coefficient", t.coefficient}});
  json doc{{"scenario", to_string(c.scenario)},
           {"qubits", c.qubits},
           {"bath", bath},
           {"coupling", to_string(c.coupling)},
           {"system_hamiltonian", h},
           {"initial_state", c.initial_state},
           {"bath_state", c.bath_state},
           {"delta_t", c.delta_t},
           {"n_cycles", c.n_cycles},
           {"sample_every", c.sample_every},
           {"symmetric", c.symmetric},
           {"seed", c.seed}};
  doc["group"] = c.group_words.empty() ? json(c.group) : json(c.group_words);
  if (c.ordering) doc["ordering"] = *c.ordering;
  if (c.total_time) doc["total_time"] = *c.total_time;
  if (c.sweep) doc["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
  if (!c.output_dir.empty()) doc["output_dir"] = c.output_dir;
  return doc.dump(2) + "\n";
}

SystemBathModel scenario_model(const ScenarioConfig& config) {
  SystemBathModel model = build_model(config.qubits, config.bath, config.coupling);
  for (const auto& term : config.system_hamiltonian) model.h_s += pauli_word(term.word) * Complex(term.coefficient);
  return model;
}

DecouplingGroup scenario_group(const ScenarioConfig& config) {
  if (!config.group_words.empty()) return group_from_pauli_words(config.group_words);
  if (config.group == "trivial") return trivial_group(Dims(static_cast<std::size_t>(config.qubits), 2));
  return pauli_group(config.qubits, parse_pauli_variant(config.group));
}

CycleSchedule scenario_schedule(const ScenarioConfig& config, const DecouplingGroup& group) {
  CycleSchedule s = schedule_from_group(group, config.delta_t, config.ordering);
  return config.symmetric ? symmetrize(s) : s;
}

std::int64_t scenario_cycles(const ScenarioConfig& config, const CycleSchedule& schedule) {
  if (!config.total_time) return config.n_cycles;
  const double tc = schedule.cycle_time();
  const double ratio = *config.total_time / tc;
  const auto n = static_cast<std::int64_t>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-6 * std::max(1.0, ratio)) {
    throw ConfigError("$.total_time: " + format_double(*config.total_time) +
                      " is not a whole number of cycles of length " + format_double(tc));
  }
  return n;
}

Operator product_state(std::string_view spec) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector psi = Vector::Ones(1);
  for (char c : spec) {
    Vector q(2);
    switch (c) {
      case '0': q << 1, 0; break;
      case '1': q << 0, 1; break;
      case '+': q << h, h; break;
      case '-': q << h, -h; break;
      case 'r': q << h, Complex(0, h); break;
      case 'l': q << h, Complex(0, -h); break;
      default: throw StructuralError(std::string("unknown single-qubit state '") + c + "'");
    }
    Vector next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(2 * i, 2) = psi(i) * q;
    psi = std::move(next);
  }
  return projector(psi, Dims(spec.size(), 2));
}

Operator scenario_bath_state(const ScenarioConfig& config, const SystemBathModel& model) {
  if (config.bath_state == "mixed") {
    return Operator::identity(model.bath_dims) * Complex(1.0 / model.bath_dim());
  }
  return bath_ground_state(model);
}

std::string schedule_record_json(const CycleSchedule& schedule) {
  json group = json::array();
  for (const auto& l : schedule.source_group_labels) group.push_back(l);
  // The palindrome half is implied by the flag.
  std::vector<std::size_t> ordering = schedule.ordering;
  if (schedule.symmetric) ordering.resize(ordering.size() / 2);
  const json rec{{"group", group}, {"delta_t", schedule.delta_t}, {"ordering", ordering}, {"symmetric", schedule.symmetric}};
  return rec.dump();
}

ScenarioOutcome simulate_scenario(const ScenarioConfig& config) {
  validate(config);
  const SystemBathModel model = scenario_model(config);
  const DecouplingGroup group = scenario_group(config);
  const InteractionSpace interaction = interaction_space_of(model);

  ScenarioOutcome out;
  out.decoupling = check_decoupling(group, interaction, model.h_s);
  for (std::size_t k = 0; k < interaction.dimension(); ++k) {
    std::string label = match_pauli_word(interaction.basis[k]);
    out.interaction_labels.push_back(label.empty() ? "S" + std::to_string(k) : label);
  }
  out.schedule = scenario_schedule(config, group);
  const std::int64_t n_cycles = scenario_cycles(config, out.schedule);
  if (out.decoupling.mode == DecouplingMode::none) return out;

  const Operator rho_s0 = product_state(config.initial_state);
  const Operator rho_b0 = scenario_bath_state(config, model);
  const CycleSchedule free_schedule = schedule_from_group(trivial_group(model.system_dims), out.schedule.cycle_time());

  out.controlled = evolve({model, out.schedule, n_cycles, rho_s0, rho_b0, config.sample_every});
  out.free = evolve({model, free_schedule, n_cycles, rho_s0, rho_b0, config.sample_every});
  // Free metadata reports the controlled pulse spacing for comparison.
  out.free->metadata.delta_t = config.delta_t;
  out.free->metadata.omega_c_delta_t = model.cutoff * config.delta_t;
  out.rates = estimate_rates(*out.free, *out.controlled);
  return out;
}

std::string feasibility_line(double omega_c_delta_t) {
  const std::string value = "omega_c*delta_t = " + format_double(omega_c_delta_t);
  if (omega_c_delta_t <= 1.0) return value + " <= 1: pulses faster than the bath memory time (decoupling regime)";
  return value + " > 1: pulses slower than the bath memory time, decoupling not expected";
}

RunReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const ScenarioOutcome o = simulate_scenario(config);

  json summary;
  summary["command"] = "simulate";
  summary["scenario"] = to_string(config.scenario);
  summary["seed"] = config.seed;
  summary["qubits"] = config.qubits;
  summary["coupling"] = to_string(config.coupling);
  summary["group"] = named_or_words(config);
  summary["schedule"] = json::parse(schedule_record_json(o.schedule));
  summary["mode"] = to_string(o.decoupling.mode);
  summary["residuals"] = o.decoupling.residuals;
  summary["interaction"] = o.interaction_labels;
  summary["omega_c_delta_t"] = config.bath.cutoff * config.delta_t;
  summary["feasibility"] = feasibility_line(config.bath.cutoff * config.delta_t);

  RunReport report;
  report.mode = to_string(o.decoupling.mode);
  report.message = summary["feasibility"].get<std::string>() + "\n";

  if (o.decoupling.mode == DecouplingMode::none) {
    report.exit_code = 2;
    report.message += "decoupling mode: none; the group leaves part of the interaction space untouched\n" + residual_table(o);
  } else {
    const TrajectoryResult& c = *o.controlled;
    const TrajectoryResult& f = *o.free;
    summary["n_cycles"] = c.metadata.n_cycles;
    summary["cycle_time"] = c.metadata.cycle_time;
    summary["total_time"] = c.times.back();
    summary["rates"] = rates_json(*o.rates);
    summary["ratio"] = o.rates->ratio;
    summary["terminal"] = trajectory_terminal(c);
    summary["free_terminal"] = trajectory_terminal(f);
    write_text_file(out_dir / "trajectory.csv", write_trajectory_csv(trajectory_rows(c)));
    write_text_file(out_dir / "trajectory_free.csv", write_trajectory_csv(trajectory_rows(f)));
    report.message += "decoupling mode: " + report.mode + "\n";
    report.message += "gamma_c/gamma = " + format_double(o.rates->ratio) + "\n";
  }
  report.summary_json = summary.dump(2) + "\n";
  write_text_file(out_dir / "summary.json", report.summary_json);
  write_log(out_dir, "simulate", config);
  return report;
}

RunReport run_sweep(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
  if (!config.sweep) throw ConfigError("$.sweep: required for the sweep command");
  const std::vector<double>& values = config.sweep->values;
  if (values.size() < 3) throw ConfigError("$.sweep.values: need at least 3 values");
  {
    std::vector<std::pair<double, double>> probe;
    for (double v : values) probe.emplace_back(v, 1.0);
    try {
      fit_scaling_exponent(probe);
    } catch (const StructuralError& e) {
      throw ConfigError(std::string("$.sweep.values: ") + e.what());
    }
  }
  std::filesystem::create_directories(out_dir);

  std::vector<std::future<ScenarioOutcome>> jobs;
  jobs.reserve(values.size());
  for (double v : values) {
    ScenarioConfig c = config;
    c.delta_t = v;
    c.sweep.reset();
    jobs.push_back(std::async(std::launch::async, [c] { return simulate_scenario(c); }));
  }
  std::vector<ScenarioOutcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());

  RunReport report;
  report.mode = to_string(outcomes.front().decoupling.mode);
  json summary;
  summary["command"] = "sweep";
  summary["scenario"] = to_string(config.scenario);
  summary["seed"] = config.seed;
  summary["group"] = named_or_words(config);
  summary["symmetric"] = config.symmetric;
  summary["parameter"] = config.sweep->parameter;
  summary["values"] = values;
  summary["mode"] = report.mode;

  if (outcomes.front().decoupling.mode == DecouplingMode::none) {
    report.exit_code = 2;
    report.message = "decoupling mode: none\n" + residual_table(outcomes.front());
    report.summary_json = summary.dump(2) + "\n";
    write_text_file(out_dir / "summary.json", report.summary_json);
    write_log(out_dir, "sweep", config);
    return report;
  }

  std::vector<SweepRow> rows;
  std::vector<std::pair<double, double>> points;
  json feasibility = json::array();
  for (std::size_t k = 0; k < values.size(); ++k) {
    const TrajectoryResult& c = *outcomes[k].controlled;
    SweepRow row;
    row.delta_t = values[k];
    row.omega_c_delta_t = config.bath.cutoff * values[k];
    row.n_cycles = c.metadata.n_cycles;
    row.infidelity = 1.0 - c.fidelity.back();
    row.trace_distance = c.trace_distance_to_initial.back();
    row.ratio = outcomes[k].rates->ratio;
    rows.push_back(row);
    points.emplace_back(row.delta_t, row.infidelity);
    feasibility.push_back(feasibility_line(row.omega_c_delta_t));
  }
  write_text_file(out_dir / "sweep.csv", write_sweep_csv(rows));

  const ScalingFit fit = fit_scaling_exponent(points);
  summary["slope"] = fit.slope;
  summary["intercept"] = fit.intercept;
  summary["r_squared"] = fit.r_squared;
  summary["feasibility"] = feasibility;
  report.summary_json = summary.dump(2) + "\n";
  write_text_file(out_dir / "summary.json", report.summary_json);
  write_log(out_dir, "sweep", config);
  report.message = "fitted slope of log(1-F) vs log(delta_t): " + format_double(fit.slope) +
                   " (r^2 = " + format_double(fit.r_squared) + ")\n";
  return report;
}

std::string design_report(const std::vector<std::string>& interaction, int n_qubits, std::size_t max_order) {
  std::vector<Operator> ops;
  for (const auto& term : interaction) {
    Operator op = pauli_sum(term);
    if (op.dim() != (1 << n_qubits)) throw StructuralError("interaction term '" + term + "' does not act on " +
                                                           std::to_string(n_qubits) + " qubits");
    ops.push_back(std::move(op));
  }
  const InteractionSpace space = interaction_space_from(ops);
  const auto groups = minimal_group_search(space, n_qubits, max_order);

  std::ostringstream os;
  os << "interaction space dimension: " << space.dimension() << '\n';
  if (groups.empty()) {
    os << "no decoupling Pauli group of order <= " << max_order << '\n';
    return os.str();
  }
  os << "minimal order: " << groups.front().order() << " (" << groups.size() << " candidate groups)\n";
  for (const auto& g : groups) {
    const auto report = check_decoupling(g, space, Operator::zero(g.dims()));
    os << "\ngroup {";
    for (std::size_t k = 0; k < g.labels.size(); ++k) os << (k ? ", " : "") << g.labels[k];
    os << "}  mode: " << to_string(report.mode) << "  generators:";
    for (const auto& w : pauli_generators(g)) os << ' ' << w;
    os << "\n  pulses: " << pulse_program(schedule_from_group(g, 1.0)) << '\n';
  }
  return os.str();
}

}  // namespace ddsim
