#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ddsim/evolve.hpp"
#include "ddsim/group.hpp"
#include "ddsim/pauli.hpp"
#include "ddsim/scenario.hpp"

namespace py = pybind11;

namespace {

using ddsim::Matrix;
using ddsim::Operator;

Operator qubit_operator(const Matrix& m) {
  const auto d = m.rows();
  if (m.cols() != d || d < 1) throw ddsim::StructuralError("expected a square matrix");
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) return Operator(m);
  return Operator(m, ddsim::Dims(static_cast<std::size_t>(n), 2));
}

Operator on_group_space(const Matrix& m, const ddsim::DecouplingGroup& g) { return Operator(m, g.dims()); }

py::dict trajectory_dict(const ddsim::TrajectoryResult& t) {
  py::dict d;
  d["cycle"] = t.cycles;
  d["time"] = t.times;
  d["fidelity"] = t.fidelity;
  d["coherence"] = t.coherence;
  d["trace_distance"] = t.trace_distance_to_initial;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamical decoupling of open quantum systems";

  py::register_exception<ddsim::StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ddsim::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ddsim::DecouplingGroup>(m, "Group")
      .def_property_readonly("order", &ddsim::DecouplingGroup::order)
      .def_readonly("labels", &ddsim::DecouplingGroup::labels)
      .def_property_readonly("elements",
                             [](const ddsim::DecouplingGroup& g) {
                               std::vector<Matrix> out;
                               for (const auto& e : g.elements) out.push_back(e.entries());
                               return out;
                             })
      .def("__len__", &ddsim::DecouplingGroup::order)
      .def("__repr__", [](const ddsim::DecouplingGroup& g) {
        std::string s = "Group([";
        for (std::size_t k = 0; k < g.labels.size(); ++k) s += (k ? ", '" : "'") + g.labels[k] + "'";
        return s + "])";
      });

  m.def("pauli_word", [](const std::string& w) { return ddsim::pauli_word(w).entries(); }, py::arg("word"));
  m.def("pauli_group",
        [](int k, const std::string& variant) { return ddsim::pauli_group(k, ddsim::parse_pauli_variant(variant)); },
        py::arg("qubits"), py::arg("variant"));
  m.def("full_pauli_group", [](int k) { return ddsim::pauli_group(k, ddsim::PauliVariant::full); }, py::arg("qubits"));
  m.def("trivial_group", [](int k) { return ddsim::trivial_group(ddsim::Dims(static_cast<std::size_t>(k), 2)); },
        py::arg("qubits"));
  m.def("group_from_words", &ddsim::group_from_pauli_words, py::arg("words"));

  m.def("project_commutant",
        [](const Matrix& s, const ddsim::DecouplingGroup& g) {
          return ddsim::project_commutant(on_group_space(s, g), g).entries();
        },
        py::arg("operator"), py::arg("group"));
  m.def("commutant_basis",
        [](const ddsim::DecouplingGroup& g) {
          std::vector<Matrix> out;
          for (const auto& b : ddsim::commutant_basis(g).basis) out.push_back(b.entries());
          return out;
        },
        py::arg("group"));
  m.def("check_decoupling",
        [](const ddsim::DecouplingGroup& g, const std::vector<Matrix>& interaction) {
          std::vector<Operator> ops;
          for (const auto& s : interaction) ops.push_back(on_group_space(s, g));
          const auto space = ddsim::interaction_space_from(ops);
          const auto r = ddsim::check_decoupling(g, space, Operator::zero(g.dims()));
          py::dict d;
          d["mode"] = ddsim::to_string(r.mode);
          d["residuals"] = r.residuals;
          return d;
        },
        py::arg("group"), py::arg("interaction"));
  m.def("minimal_group_search",
        [](const std::vector<std::string>& interaction, int qubits, std::size_t max_order) {
          std::vector<Operator> ops;
          for (const auto& w : interaction) ops.push_back(ddsim::pauli_sum(w));
          return ddsim::minimal_group_search(ddsim::interaction_space_from(ops), qubits, max_order);
        },
        py::arg("interaction"), py::arg("qubits"), py::arg("max_order") = 16);

  m.def("expm_hermitian", [](const Matrix& h, double t) { return ddsim::expm_hermitian(Operator(h), t).entries(); },
        py::arg("h"), py::arg("t"), "exp(-i h t) for Hermitian h");
  m.def("partial_trace_bath",
        [](const Matrix& rho, const std::vector<int>& dims, std::size_t n_system) {
          return ddsim::partial_trace_bath(Operator(rho, dims), n_system).entries();
        },
        py::arg("rho"), py::arg("dims"), py::arg("n_system_factors"));
  m.def("fidelity", [](const Matrix& a, const Matrix& b) { return ddsim::fidelity(qubit_operator(a), qubit_operator(b)); },
        py::arg("rho"), py::arg("sigma"));

  m.def("preset_names", &ddsim::preset_names);
  m.def("preset_config",
        [](const std::string& name) { return ddsim::config_to_json(ddsim::preset(ddsim::parse_scenario_kind(name))); },
        py::arg("name"), "Preset as a JSON config document");
  m.def("parse_config", [](const std::string& text) { return ddsim::config_to_json(ddsim::parse_config(text)); },
        py::arg("text"), "Validates a config and returns it with every field explicit");

  m.def("simulate",
        [](const std::string& config_text) {
          const auto config = ddsim::parse_config(config_text);
          ddsim::ScenarioOutcome o;
          {
            py::gil_scoped_release release;
            o = ddsim::simulate_scenario(config);
          }
          py::dict d;
          d["mode"] = ddsim::to_string(o.decoupling.mode);
          d["residuals"] = o.decoupling.residuals;
          d["schedule"] = ddsim::schedule_record_json(o.schedule);
          if (o.controlled) {
            d["controlled"] = trajectory_dict(*o.controlled);
            d["free"] = trajectory_dict(*o.free);
            d["ratio"] = o.rates->ratio;
          }
          return d;
        },
        py::arg("config"), "Runs a config in memory and returns the trajectories");
  m.def("run_scenario",
        [](const std::string& config_text, const std::filesystem::path& out) {
          const auto config = ddsim::parse_config(config_text);
          py::gil_scoped_release release;
          const auto r = ddsim::run_scenario(config, out);
          return std::make_pair(r.exit_code, r.summary_json);
        },
        py::arg("config"), py::arg("out_dir"), "Returns (exit_code, summary_json)");
  m.def("run_sweep",
        [](const std::string& config_text, const std::filesystem::path& out) {
          const auto config = ddsim::parse_config(config_text);
          py::gil_scoped_release release;
          const auto r = ddsim::run_sweep(config, out);
          return std::make_pair(r.exit_code, r.summary_json);
        },
        py::arg("config"), py::arg("out_dir"), "Returns (exit_code, summary_json)");
  m.def("design_report", &ddsim::design_report, py::arg("interaction"), py::arg("qubits"), py::arg("max_order") = 16);
}
