#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddsim/model.hpp"
#include "ddsim/operator.hpp"
#include "ddsim/sequence.hpp"

namespace ddsim {

/// One stroboscopic simulation: N control cycles starting from
/// rho_S(0) (x) rho_B(0). An empty `rho_b0` selects the bath ground state.
struct SimulationRun {
  SystemBathModel model;
  CycleSchedule schedule;
  std::int64_t n_cycles = 1;
  Operator rho_s0;
  std::optional<Operator> rho_b0;
  std::int64_t sample_every = 1;
};

struct TrajectoryMetadata {
  double delta_t = 0.0;
  double cycle_time = 0.0;
  std::int64_t n_cycles = 0;
  double omega_c_delta_t = 0.0;
};

/// Reduced states at sampled multiples of T_c (cycle 0 and cycle N always
/// included) with derived diagnostics.
struct TrajectoryResult {
  std::vector<std::int64_t> cycles;
  std::vector<double> times;
  std::vector<Operator> states;
  // Uhlmann fidelity (squared convention) against the effective reference
  // exp(-i Hbar_S t) rho_S(0) exp(+i Hbar_S t), Hbar_S = frame average of H_S.
  std::vector<double> fidelity;
  // Sum of |off-diagonal| entries of rho_S in the computational basis.
  std::vector<double> coherence;
  std::vector<double> trace_distance_to_initial;
  // Tr rho_tot^2 at every sample.
  std::vector<double> total_purity;
  TrajectoryMetadata metadata;

  std::size_t size() const { return cycles.size(); }
};

struct RateEstimate {
  double gamma = 0.0;    // uncontrolled decay rate
  double gamma_c = 0.0;  // controlled decay rate
  double ratio = 1.0;    // gamma_c / gamma
  std::pair<double, double> fit_window{0.0, 0.0};             // time window of the free fit
  std::pair<double, double> controlled_window{0.0, 0.0};
  double fit_residual = 0.0;                                   // RMS residual of the free fit
  double controlled_residual = 0.0;
  bool controlled_secant = false;  // controlled rate from the endpoint secant
  bool flagged = false;            // free trajectory shows no usable decay window
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// U(T_c) = prod_{j=n-1..0} exp(-i H~_j dt_j), later segments leftmost.
Operator cycle_propagator(const SystemBathModel& model, const CycleSchedule& schedule);

/// U^k. Power-of-two k uses repeated squaring; other k multiply sequentially
/// with a polar re-unitarization every 64 products.
Operator propagator_power(const Operator& u, std::int64_t k);

TrajectoryResult evolve(const SimulationRun& run);

/// |Tr(A rho_S(nT_c)) - Tr(A rho_S(0))| per sample. A must commute with every
/// schedule frame (1e-8); otherwise StructuralError names the failing frame.
std::vector<double> observable_drift(const SimulationRun& run, const Operator& a);

RateEstimate estimate_rates(const TrajectoryResult& free, const TrajectoryResult& controlled);

/// Least-squares line through (log delta_t, log error).
ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points);

double fidelity(const Operator& rho, const Operator& sigma);
double coherence(const Operator& rho);

/// Validates a unit-trace positive semidefinite Hermitian operator.
void check_density(const Operator& rho, const std::string& what);

}  // namespace ddsim
