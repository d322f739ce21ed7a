#pragma once

#include "ddsim/group.hpp"
#include "ddsim/model.hpp"
#include "ddsim/sequence.hpp"

namespace ddsim {

// Lowest two average-Hamiltonian terms of one control cycle.
struct AverageHamiltonianSeries {
  Operator h0;
  Operator h1;
  double cycle_time = 0.0;
};

/// Toggling-frame Hamiltonian of segment j: (g_j (x) 1)^dagger H_0 (g_j (x) 1).
Operator toggled_hamiltonian(const SystemBathModel& model, const CycleSchedule& schedule, std::size_t j);

/// Zeroth order: time average of the toggled Hamiltonians.
Operator average_h0(const SystemBathModel& model, const CycleSchedule& schedule);

/// First order: (-i / 2T_c) sum_{j>l} dt_j dt_l [H~_j, H~_l], the closed form of
/// the second Magnus term for piecewise-constant frames.
Operator average_h1(const SystemBathModel& model, const CycleSchedule& schedule);

AverageHamiltonianSeries average_series(const SystemBathModel& model, const CycleSchedule& schedule);

/// Pi_C(H_S) (x) 1 + 1 (x) H_B + sum_alpha Pi_C(S_alpha) (x) B_alpha.
Operator factorwise_projection(const SystemBathModel& model, const DecouplingGroup& group);

/// ||U(T_c) - exp(-i (H0 [+ H1]) T_c)||_F with U the exact cycle propagator.
/// `order` must be 0 or 1.
double truncation_error(const SystemBathModel& model, const CycleSchedule& schedule, int order);

}  // namespace ddsim
