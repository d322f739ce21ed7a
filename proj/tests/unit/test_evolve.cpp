#include <doctest.h>

#include "ddsim/evolve.hpp"
#include "ddsim/magnus.hpp"
#include "ddsim/pauli.hpp"
#include "oracles.hpp"

using namespace ddsim;

namespace {

SystemBathModel spin_model(int k, int m, CouplingKind kind, std::uint64_t seed, double g = 0.3) {
  BathSpec spec;
  spec.n_modes = m;
  spec.coupling_scale = g;
  spec.seed = seed;
  return build_spin_bath_model(k, spec, kind);
}

Operator plus_state() { return projector((Vector(2) << 1, 1).finished(), {2}); }

}  // namespace

TEST_SUITE("evolve") {
  TEST_CASE("cycle propagator equals the pulse-interleaved product") {
    std::mt19937_64 rng(4);
    auto model = spin_model(2, 3, CouplingKind::linear_independent, 3);
    model.h_s = Operator(oracle::random_hermitian(4, rng), {2, 2});
    for (const auto& g : {pauli_group(2, PauliVariant::collective), pauli_group(2, PauliVariant::full)}) {
      for (bool sym : {false, true}) {
        auto s = schedule_from_group(g, 0.07);
        if (sym) s = symmetrize(s);
        const Matrix free_step = oracle::taylor_expm(total_hamiltonian(model).entries(), s.delta_t);
        const Matrix id_b = Matrix::Identity(model.bath_dim(), model.bath_dim());
        const auto pulses = boundary_pulses(s);
        Matrix lab = oracle::kron(s.segments.front().frame.entries(), id_b);
        for (const auto& p : pulses) lab = (oracle::kron(p.entries(), id_b) * free_step * lab).eval();
        const Matrix toggling = oracle::kron(s.segments.front().frame.entries(), id_b).adjoint() * lab;
        CHECK((cycle_propagator(model, s).entries() - toggling).norm() < 1e-9);
      }
    }
  }

  TEST_CASE("propagator powers") {
    std::mt19937_64 rng(6);
    const Operator u = expm_hermitian(Operator(oracle::random_hermitian(4, rng)), 0.9);
    Matrix direct = Matrix::Identity(4, 4);
    for (int k = 1; k <= 70; ++k) {
      direct = (u.entries() * direct).eval();
      if (k == 8 || k == 13 || k == 70) CHECK((propagator_power(u, k).entries() - direct).norm() < 1e-10);
    }
    CHECK((propagator_power(u, 0).entries() - Matrix::Identity(4, 4)).norm() == 0.0);
    CHECK_THROWS_AS(propagator_power(u, -1), StructuralError);
  }

  TEST_CASE("fidelity and coherence") {
    std::mt19937_64 rng(13);
    const Operator rho = plus_state();
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0));
    CHECK(coherence(rho) == doctest::Approx(1.0));
    const Operator mixed = Operator::identity({2}) * Complex(0.5);
    CHECK(coherence(mixed) == 0.0);
    CHECK(fidelity(rho, mixed) == doctest::Approx(0.5));
    // Mixed-mixed case against a direct square-root evaluation.
    const Matrix a = oracle::random_density(3, rng);
    const Matrix b = oracle::random_density(3, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> ea(a);
    const Matrix sa = ea.operatorSqrt();
    Eigen::SelfAdjointEigenSolver<Matrix> inner(sa * b * sa);
    const double root = inner.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    CHECK(fidelity(Operator(a), Operator(b)) == doctest::Approx(root * root).epsilon(1e-10));
    CHECK(fidelity(Operator(b), Operator(a)) == doctest::Approx(root * root).epsilon(1e-10));
  }

  TEST_CASE("trajectory invariants") {
    auto model = spin_model(1, 3, CouplingKind::total, 2);
    model.h_s = pauli('X') * Complex(0.2);
    const auto s = schedule_from_group(pauli_group(1, PauliVariant::full), 0.1);
    const auto t = evolve({model, s, 37, plus_state(), std::nullopt, 4});
    REQUIRE(t.size() == 11);
    CHECK(t.cycles.front() == 0);
    CHECK(t.cycles.back() == 37);
    CHECK(t.times.back() == doctest::Approx(37 * 0.4));
    CHECK(t.fidelity.front() == doctest::Approx(1.0));
    CHECK(t.trace_distance_to_initial.front() < 1e-12);
    for (std::size_t k = 0; k < t.size(); ++k) {
      CHECK(std::abs(t.states[k].trace() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(t.states[k].entries());
      CHECK(eig.eigenvalues().minCoeff() > -1e-9);
      CHECK(std::abs(t.total_purity[k] - t.total_purity.front()) < 1e-9);
    }
    CHECK(t.metadata.n_cycles == 37);
    CHECK(t.metadata.omega_c_delta_t == doctest::Approx(0.1));
  }

  TEST_CASE("mixed bath purity is conserved") {
    const auto model = spin_model(1, 2, CouplingKind::total, 8);
    const auto s = schedule_from_group(trivial_group({2}), 0.2);
    const Operator bath = Operator::identity(model.bath_dims) * Complex(0.25);
    const auto t = evolve({model, s, 20, plus_state(), bath, 1});
    CHECK(t.total_purity.front() == doctest::Approx(0.25));
    for (double p : t.total_purity) CHECK(std::abs(p - 0.25) < 1e-9);
  }

  TEST_CASE("input validation") {
    const auto model = spin_model(1, 2, CouplingKind::dephasing, 1);
    const auto s = schedule_from_group(trivial_group({2}), 0.1);
    CHECK_THROWS_AS(evolve({model, s, 0, plus_state(), std::nullopt, 1}), StructuralError);
    CHECK_THROWS_AS(evolve({model, s, 5, Operator::identity({2}), std::nullopt, 1}), StructuralError);
    CHECK_THROWS_AS(evolve({model, s, 5, Operator::identity({4}) * Complex(0.25), std::nullopt, 1}), StructuralError);
    CHECK_THROWS_AS(evolve({model, s, 5, plus_state(), std::nullopt, 0}), StructuralError);
  }

  TEST_CASE("echo is exact when toggled Hamiltonians commute") {
    BathSpec spec;
    spec.n_modes = 3;
    spec.coupling_scale = 0.4;
    spec.commuting = true;
    const auto model = build_spin_bath_model(1, spec, CouplingKind::dephasing);
    const Operator bath = Operator::identity(model.bath_dims) * Complex(1.0 / 8.0);
    for (double dt : {0.05, 0.3, 1.5}) {
      const auto s = schedule_from_group(pauli_group(1, PauliVariant::flip), dt);
      const auto t = evolve({model, s, 10, plus_state(), bath, 1});
      for (double f : t.fidelity) CHECK(f >= 1.0 - 1e-9);
    }
  }

  TEST_CASE("observable drift in the commutant") {
    auto model = spin_model(2, 3, CouplingKind::linear_collective, 5);
    model.h_s = pauli_word("ZZ") * Complex(0.3);
    const auto s = schedule_from_group(pauli_group(2, PauliVariant::collective), 0.02);
    const SimulationRun run{model, s, 20, projector((Vector(4) << 1, 1, 1, 1).finished(), {2, 2}), std::nullopt, 5};
    const auto drift = observable_drift(run, pauli_word("ZZ"));
    CHECK(drift.front() < 1e-14);
    for (double d : drift) CHECK(d < 1e-2);
    CHECK_THROWS_WITH_AS(observable_drift(run, pauli_word("ZI")), doctest::Contains("not in the commutant"),
                         StructuralError);
  }

  TEST_CASE("rate estimates") {
    const auto model = spin_model(1, 4, CouplingKind::dephasing, 7);
    const auto flip = schedule_from_group(pauli_group(1, PauliVariant::flip), 0.1);
    const auto free = schedule_from_group(trivial_group({2}), 0.2);
    const auto c = evolve({model, flip, 80, plus_state(), std::nullopt, 1});
    const auto f = evolve({model, free, 80, plus_state(), std::nullopt, 1});
    const auto r = estimate_rates(f, c);
    CHECK(r.gamma > 0.0);
    CHECK_FALSE(r.flagged);
    CHECK(r.ratio < 0.05);
    CHECK(r.fit_window.first < r.fit_window.second);
    const auto same = estimate_rates(c, c);
    CHECK(same.ratio == doctest::Approx(1.0));
  }

  TEST_CASE("scaling fit") {
    std::vector<std::pair<double, double>> pts;
    for (double dt : {0.01, 0.02, 0.04, 0.08}) pts.emplace_back(dt, 3.0 * dt * dt);
    const auto fit = fit_scaling_exponent(pts);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK_THROWS_AS(fit_scaling_exponent({{0.1, 1.0}, {0.1, 2.0}, {0.1, 3.0}}), StructuralError);
    CHECK_THROWS_AS(fit_scaling_exponent({{0.1, 1.0}, {0.2, 2.0}}), StructuralError);
    CHECK_THROWS_AS(fit_scaling_exponent({{0.1, 1.0}, {0.2, 0.0}, {0.3, 1.0}}), StructuralError);
  }
}
