#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddsim/group.hpp"
#include "ddsim/operator.hpp"

namespace ddsim {

// One piecewise-constant interval during which the control frame equals
// `frame`. Durations are `multiplier` units of the schedule's delta_t.
struct Segment {
  Operator frame;
  std::int64_t multiplier = 1;
  std::string label;
};

/// Piecewise-constant bang-bang control cycle U_1(t) = g_j on segment j.
struct CycleSchedule {
  std::vector<Segment> segments;
  double delta_t = 0.0;
  bool symmetric = false;
  std::vector<std::string> source_group_labels;
  // Group element index of every segment, in segment order.
  std::vector<std::size_t> ordering;

  std::int64_t total_units() const;
  double cycle_time() const { return delta_t * static_cast<double>(total_units()); }
  double duration(std::size_t j) const { return delta_t * static_cast<double>(segments.at(j).multiplier); }
  const Dims& system_dims() const { return segments.front().frame.dims(); }
};

/// Segments g_{pi(0)}, ..., g_{pi(n-1)}, each lasting delta_t. The default
/// ordering is the group's element order. Throws on non-bijective orderings
/// or delta_t <= 0.
CycleSchedule schedule_from_group(const DecouplingGroup& group, double delta_t,
                                  const std::optional<std::vector<std::size_t>>& ordering = std::nullopt);

/// Palindrome [g_0..g_{n-1}, g_{n-1}..g_0] with unchanged delta_t; the
/// cycle time doubles. No adjacent segments are merged.
CycleSchedule symmetrize(const CycleSchedule& schedule);

/// P_j = g_{j+1} g_j^dagger for j = 0..n-1 with g_n = g_0 (closing pulse).
std::vector<Operator> boundary_pulses(const CycleSchedule& schedule);

/// Human-readable pulse program, e.g. "dt - XX - dt - ZZ - dt - XX - dt - ZZ".
/// Pulses are named by Pauli word up to phase; "I" marks no pulse.
std::string pulse_program(const CycleSchedule& schedule);

/// Time-weighted frame average (1/T_c) sum_j dt_j g_j^dagger S g_j. For a
/// group schedule this equals project_commutant.
Operator frame_average(const Operator& s, const CycleSchedule& schedule);

}  // namespace ddsim
