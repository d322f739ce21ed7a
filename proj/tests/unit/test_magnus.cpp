#include <doctest.h>

#include "ddsim/magnus.hpp"
#include "ddsim/pauli.hpp"
#include "oracles.hpp"

using namespace ddsim;

namespace {

SystemBathModel spin_model(int k, int m, CouplingKind kind, std::uint64_t seed) {
  BathSpec spec;
  spec.n_modes = m;
  spec.coupling_scale = 0.3;
  spec.seed = seed;
  return build_spin_bath_model(k, spec, kind);
}

Matrix assembled_h0(const SystemBathModel& model) {
  const Matrix id_s = Matrix::Identity(model.system_dim(), model.system_dim());
  const Matrix id_b = Matrix::Identity(model.bath_dim(), model.bath_dim());
  Matrix h = oracle::kron(model.h_s.entries(), id_b) + oracle::kron(id_s, model.h_b.entries());
  for (const auto& c : model.couplings) h += oracle::kron(c.system.entries(), c.bath.entries());
  return h;
}

}  // namespace

TEST_SUITE("magnus") {
  TEST_CASE("identity frame gives the bare Hamiltonian") {
    const auto model = spin_model(1, 3, CouplingKind::total, 4);
    const auto s = schedule_from_group(pauli_group(1, PauliVariant::full), 0.1);
    CHECK((toggled_hamiltonian(model, s, 0).entries() - assembled_h0(model)).norm() < 1e-12);
    CHECK_THROWS_AS(toggled_hamiltonian(model, s, 4), StructuralError);
  }

  TEST_CASE("toggled Hamiltonian matches direct conjugation") {
    std::mt19937_64 rng(8);
    auto model = spin_model(2, 3, CouplingKind::linear_independent, 9);
    model.h_s = Operator(oracle::random_hermitian(4, rng), {2, 2});
    const auto s = schedule_from_group(pauli_group(2, PauliVariant::full), 0.1);
    const Matrix h0 = assembled_h0(model);
    const Matrix id_b = Matrix::Identity(model.bath_dim(), model.bath_dim());
    for (std::size_t j = 0; j < s.segments.size(); ++j) {
      const Matrix g = oracle::kron(s.segments[j].frame.entries(), id_b);
      const Operator h = toggled_hamiltonian(model, s, j);
      CHECK(h.is_hermitian());
      CHECK((h.entries() - g.adjoint() * h0 * g).norm() < 1e-11);
    }
  }

  TEST_CASE("flip frame flips the dephasing term") {
    const auto model = spin_model(1, 2, CouplingKind::dephasing, 3);
    const auto s = schedule_from_group(pauli_group(1, PauliVariant::flip), 0.1);
    const Operator id_s = Operator::identity({2});
    const Operator expected = tensor(pauli('Z') * Complex(-1), model.couplings[0].bath) + tensor(id_s, model.h_b);
    CHECK((toggled_hamiltonian(model, s, 1).entries() - expected.entries()).norm() < 1e-12);
  }

  TEST_CASE("zeroth order equals the factor-wise projection") {
    const auto model = spin_model(1, 3, CouplingKind::dephasing, 1);
    const auto flip = pauli_group(1, PauliVariant::flip);
    const Operator h0 = average_h0(model, schedule_from_group(flip, 0.1));
    const Operator expected = tensor(Operator::identity({2}), model.h_b);
    CHECK((h0.entries() - expected.entries()).norm() < 1e-12);
    CHECK((h0.entries() - factorwise_projection(model, flip).entries()).norm() < 1e-12);

    const auto trivial = schedule_from_group(trivial_group({2}), 0.1);
    CHECK((average_h0(model, trivial).entries() - assembled_h0(model)).norm() < 1e-12);
  }

  TEST_CASE("full group collapses to c-numbers") {
    std::mt19937_64 rng(2);
    auto model = spin_model(1, 3, CouplingKind::total, 6);
    model.h_s = Operator(oracle::random_hermitian(2, rng), {2});
    const auto s = schedule_from_group(pauli_group(1, PauliVariant::full), 0.1);
    Operator bath = model.h_b;
    for (const auto& c : model.couplings) bath += c.bath * (c.system.trace() / 2.0);
    const Operator expected = tensor(Operator::identity({2}) * (model.h_s.trace() / 2.0), Operator::identity(model.bath_dims)) +
                              tensor(Operator::identity({2}), bath);
    CHECK((average_h0(model, s).entries() - expected.entries()).norm() < 1e-12);
  }

  TEST_CASE("first order vanishes for constant frames") {
    const auto model = spin_model(1, 3, CouplingKind::total, 6);
    const auto s = schedule_from_group(trivial_group({2}), 0.1);
    CHECK(average_h1(model, s).max_abs() < 1e-14);
  }

  TEST_CASE("first order against double-integral quadrature") {
    auto model = spin_model(1, 3, CouplingKind::dephasing, 12);
    model.h_s = pauli('Z') * Complex(0.35);
    model.couplings.push_back({pauli('X'), model.couplings[0].bath * Complex(0.5)});
    const auto s = schedule_from_group(pauli_group(1, PauliVariant::flip), 0.2);
    const double tc = s.cycle_time();
    std::vector<Matrix> h;
    for (std::size_t j = 0; j < s.segments.size(); ++j) h.push_back(toggled_hamiltonian(model, s, j).entries());
    const int n = 200;
    const double dt = tc / n;
    auto at = [&](int i) { return h[static_cast<std::size_t>(((i + 0.5) * dt) / s.delta_t)]; };
    Matrix acc = Matrix::Zero(h[0].rows(), h[0].cols());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < i; ++k) acc += at(i) * at(k) - at(k) * at(i);
    const Matrix quad = Complex(0.0, -1.0 / (2.0 * tc)) * dt * dt * acc;
    const Operator h1 = average_h1(model, s);
    CHECK(h1.is_hermitian());
    CHECK(h1.max_abs() > 1e-4);
    CHECK((h1.entries() - quad).norm() < 1e-6);
  }

  TEST_CASE("symmetric cycles cancel the first order") {
    auto model = spin_model(2, 3, CouplingKind::linear_collective, 5);
    model.h_s = pauli_word("ZZ") * Complex(0.3) + pauli_word("XI") * Complex(0.2);
    const auto s = symmetrize(schedule_from_group(pauli_group(2, PauliVariant::collective), 0.1));
    CHECK(average_h1(model, s).max_abs() < 1e-12);
    const auto series = average_series(model, s);
    CHECK(series.cycle_time == doctest::Approx(0.8));
    CHECK(series.h0.is_hermitian());
  }

  TEST_CASE("truncation error shrinks with delta_t") {
    const auto model = spin_model(1, 3, CouplingKind::dephasing, 7);
    const auto g = pauli_group(1, PauliVariant::flip);
    const double e0 = truncation_error(model, schedule_from_group(g, 0.1), 0);
    const double e0_half = truncation_error(model, schedule_from_group(g, 0.05), 0);
    const double e1_half = truncation_error(model, schedule_from_group(g, 0.05), 1);
    CHECK(e0_half < e0);
    CHECK(e1_half < e0_half);
    CHECK_THROWS_AS(truncation_error(model, schedule_from_group(g, 0.1), 2), StructuralError);
  }
}
