#include "ddsim/magnus.hpp"

#include "ddsim/evolve.hpp"

namespace ddsim {
namespace {

Operator conjugate_by(const Operator& s, const Operator& g) { return g.adjoint() * s * g; }

void check_model_schedule(const SystemBathModel& model, const CycleSchedule& schedule) {
  if (schedule.segments.empty()) throw StructuralError("empty schedule");
  if (schedule.segments.front().frame.dim() != model.system_dim()) {
    throw StructuralError("schedule frames do not act on the model's system space");
  }
}

}  // namespace

Operator toggled_hamiltonian(const SystemBathModel& model, const CycleSchedule& schedule, std::size_t j) {
  check_model_schedule(model, schedule);
  if (j >= schedule.segments.size()) {
    throw StructuralError("segment index " + std::to_string(j) + " out of range (" +
                          std::to_string(schedule.segments.size()) + " segments)");
  }
  const Operator& g = schedule.segments[j].frame;
  const Operator id_s = Operator::identity(model.system_dims);
  const Operator id_b = Operator::identity(model.bath_dims);
  Operator h = tensor(conjugate_by(model.h_s, g), id_b) + tensor(id_s, model.h_b);
  for (const auto& c : model.couplings) h += tensor(conjugate_by(c.system, g), c.bath);
  return h;
}

Operator average_h0(const SystemBathModel& model, const CycleSchedule& schedule) {
  check_model_schedule(model, schedule);
  Operator acc = Operator::zero(model.dims());
  for (std::size_t j = 0; j < schedule.segments.size(); ++j) {
    acc += toggled_hamiltonian(model, schedule, j) * Complex(static_cast<double>(schedule.segments[j].multiplier));
  }
  return acc * Complex(1.0 / static_cast<double>(schedule.total_units()));
}

Operator average_h1(const SystemBathModel& model, const CycleSchedule& schedule) {
  check_model_schedule(model, schedule);
  // sum_{j>l} dt_j dt_l [H_j, H_l] = sum_j dt_j [H_j, sum_{l<j} dt_l H_l].
  const Dims dims = model.dims();
  Matrix earlier = Matrix::Zero(product(dims), product(dims));
  Matrix acc = Matrix::Zero(product(dims), product(dims));
  for (std::size_t j = 0; j < schedule.segments.size(); ++j) {
    const Matrix h = toggled_hamiltonian(model, schedule, j).entries();
    const double dt = schedule.duration(j);
    if (j > 0) acc.noalias() += dt * (h * earlier - earlier * h);
    earlier += dt * h;
  }
  const Complex factor = -kI / (2.0 * schedule.cycle_time());
  Matrix out = factor * acc;
  // The commutator sum is anti-Hermitian; drop rounding asymmetry.
  out = 0.5 * (out + out.adjoint()).eval();
  return Operator(std::move(out), dims);
}

AverageHamiltonianSeries average_series(const SystemBathModel& model, const CycleSchedule& schedule) {
  return {average_h0(model, schedule), average_h1(model, schedule), schedule.cycle_time()};
}

Operator factorwise_projection(const SystemBathModel& model, const DecouplingGroup& group) {
  const Operator id_s = Operator::identity(model.system_dims);
  const Operator id_b = Operator::identity(model.bath_dims);
  Operator h = tensor(project_commutant(model.h_s, group), id_b) + tensor(id_s, model.h_b);
  for (const auto& c : model.couplings) h += tensor(project_commutant(c.system, group), c.bath);
  return h;
}

double truncation_error(const SystemBathModel& model, const CycleSchedule& schedule, int order) {
  if (order != 0 && order != 1) throw StructuralError("truncation_error supports order 0 or 1");
  const Operator exact = cycle_propagator(model, schedule);
  Operator generator = average_h0(model, schedule);
  if (order == 1) generator += average_h1(model, schedule);
  return distance(exact, expm_hermitian(generator, schedule.cycle_time()), Metric::frobenius);
}

}  // namespace ddsim
