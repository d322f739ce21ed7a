#include "ddsim/sequence.hpp"

#include <algorithm>
#include <numeric>

#include "ddsim/pauli.hpp"

namespace ddsim {

std::int64_t CycleSchedule::total_units() const {
  std::int64_t n = 0;
  for (const auto& s : segments) n += s.multiplier;
  return n;
}

CycleSchedule schedule_from_group(const DecouplingGroup& group, double delta_t,
                                  const std::optional<std::vector<std::size_t>>& ordering) {
  if (!(delta_t > 0.0)) throw StructuralError("delta_t must be > 0");
  const std::size_t n = group.order();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  if (ordering) {
    std::vector<std::size_t> sorted = *ordering;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != perm) throw StructuralError("ordering is not a permutation of the group elements");
    perm = *ordering;
  }
  CycleSchedule s;
  s.delta_t = delta_t;
  s.source_group_labels = group.labels;
  s.ordering = perm;
  for (std::size_t j : perm) s.segments.push_back({group.elements[j], 1, group.labels[j]});
  return s;
}

CycleSchedule symmetrize(const CycleSchedule& schedule) {
  CycleSchedule out = schedule;
  out.segments.insert(out.segments.end(), schedule.segments.rbegin(), schedule.segments.rend());
  out.ordering.insert(out.ordering.end(), schedule.ordering.rbegin(), schedule.ordering.rend());
  out.symmetric = true;
  return out;
}

std::vector<Operator> boundary_pulses(const CycleSchedule& schedule) {
  const std::size_t n = schedule.segments.size();
  std::vector<Operator> pulses;
  pulses.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Operator& next = schedule.segments[(j + 1) % n].frame;
    pulses.push_back(next * schedule.segments[j].frame.adjoint());
  }
  return pulses;
}

std::string pulse_program(const CycleSchedule& schedule) {
  const auto pulses = boundary_pulses(schedule);
  std::string out;
  for (std::size_t j = 0; j < pulses.size(); ++j) {
    if (j) out += " - ";
    const auto units = schedule.segments[j].multiplier;
    out += units == 1 ? "dt" : std::to_string(units) + "dt";
    std::string word = match_pauli_word(pulses[j]);
    if (word.empty()) word = "U";
    if (word.find_first_not_of('I') == std::string::npos) word = "I";
    out += " - " + word;
  }
  return out;
}

Operator frame_average(const Operator& s, const CycleSchedule& schedule) {
  if (schedule.segments.empty()) throw StructuralError("empty schedule");
  if (s.dim() != schedule.segments.front().frame.dim()) {
    throw StructuralError("frame_average: operator and schedule dimensions differ");
  }
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  for (const auto& seg : schedule.segments) {
    acc.noalias() += static_cast<double>(seg.multiplier) * (seg.frame.entries().adjoint() * s.entries() * seg.frame.entries());
  }
  return Operator(acc / static_cast<double>(schedule.total_units()), s.dims());
}

}  // namespace ddsim
