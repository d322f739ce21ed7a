#include <doctest.h>

#include "ddsim/model.hpp"
#include "ddsim/pauli.hpp"

using namespace ddsim;

namespace {

BathSpec spin_bath(int m, std::uint64_t seed) {
  BathSpec spec;
  spec.n_modes = m;
  spec.coupling_scale = 0.2;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("names round-trip") {
    for (auto k : {CouplingKind::total, CouplingKind::linear_independent, CouplingKind::linear_collective,
                   CouplingKind::dephasing}) {
      CHECK(parse_coupling_kind(to_string(k)) == k);
    }
    CHECK(parse_bath_kind("spin-bath") == BathKind::spin);
    CHECK(parse_bath_kind("boson-mode") == BathKind::boson);
    CHECK_THROWS_AS(parse_coupling_kind("ohmic"), StructuralError);
  }

  TEST_CASE("mode frequencies lie below the cutoff and are reproducible") {
    BathSpec spec = spin_bath(5, 42);
    spec.cutoff = 2.0;
    const auto w = mode_frequencies(spec);
    REQUIRE(w.size() == 5);
    for (double x : w) CHECK((x > 0.0 && x <= 2.0));
    CHECK(w == mode_frequencies(spec));
    spec.mode_frequencies = {0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK(mode_frequencies(spec) == spec.mode_frequencies);
    spec.mode_frequencies = {0.1};
    CHECK_THROWS_AS(spec.validate(), StructuralError);
  }

  TEST_CASE("spin bath model structure") {
    const SystemBathModel m = build_spin_bath_model(2, spin_bath(3, 7), CouplingKind::linear_independent);
    CHECK(m.system_dims == Dims{2, 2});
    CHECK(m.bath_dims == Dims{2, 2, 2});
    CHECK(m.couplings.size() == 6);
    CHECK(m.h_b.is_hermitian());
    for (const auto& c : m.couplings) {
      CHECK(c.system.is_hermitian());
      CHECK(c.bath.is_hermitian());
      CHECK(frobenius_norm(c.bath) == doctest::Approx(0.2 * std::sqrt(8.0)));
    }
    const Operator h = total_hamiltonian(m);
    CHECK(h.dim() == 32);
    CHECK(h.is_hermitian());
  }

  TEST_CASE("coupling draws are seeded") {
    const auto a = build_spin_bath_model(1, spin_bath(3, 5), CouplingKind::total);
    const auto b = build_spin_bath_model(1, spin_bath(3, 5), CouplingKind::total);
    const auto c = build_spin_bath_model(1, spin_bath(3, 6), CouplingKind::total);
    CHECK((a.couplings[0].bath.entries() - b.couplings[0].bath.entries()).norm() == 0.0);
    CHECK((a.couplings[0].bath.entries() - c.couplings[0].bath.entries()).norm() > 1e-3);
  }

  TEST_CASE("too few bath operators is an error") {
    CHECK_THROWS_AS(build_spin_bath_model(2, spin_bath(2, 1), CouplingKind::total), StructuralError);
    CHECK_THROWS_AS(build_spin_bath_model(4, spin_bath(10, 1), CouplingKind::dephasing), StructuralError);
  }

  TEST_CASE("commuting bath operators commute with the bath Hamiltonian") {
    BathSpec spec = spin_bath(3, 2);
    spec.commuting = true;
    const auto m = build_spin_bath_model(1, spec, CouplingKind::dephasing);
    CHECK(frobenius_norm(commutator(m.couplings[0].bath, m.h_b)) < 1e-12);
    CHECK_THROWS_AS(build_spin_bath_model(1, spec, CouplingKind::total), StructuralError);
  }

  TEST_CASE("boson bath") {
    BathSpec spec;
    spec.kind = BathKind::boson;
    spec.n_modes = 2;
    spec.boson_truncation = 3;
    const auto m = build_model(1, spec, CouplingKind::dephasing);
    CHECK(m.bath_dims == Dims{3, 3});
    CHECK(m.h_b.is_hermitian());
    CHECK(m.couplings.front().bath.is_hermitian());
    CHECK_THROWS_AS(build_model(1, spec, CouplingKind::total), StructuralError);
    spec.n_modes = 8;
    spec.boson_truncation = 4;
    CHECK_THROWS_AS(build_model(1, spec, CouplingKind::dephasing), StructuralError);
  }

  TEST_CASE("interaction space spans the system couplings") {
    const auto coll = build_spin_bath_model(2, spin_bath(3, 3), CouplingKind::linear_collective);
    const InteractionSpace s = interaction_space_of(coll);
    CHECK(s.dimension() == 3);
    CHECK(s.is_self_adjoint());
    const InteractionSpace dup = interaction_space_from({pauli_word("ZI"), pauli_word("ZI") * Complex(2.0)});
    CHECK(dup.dimension() == 1);
  }

  TEST_CASE("bath ground state") {
    const auto m = build_spin_bath_model(1, spin_bath(2, 1), CouplingKind::dephasing);
    const Operator g = bath_ground_state(m);
    CHECK(std::abs(g.trace() - 1.0) < 1e-14);
    const Matrix hb = m.h_b.entries();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(hb);
    CHECK(std::abs((g * m.h_b).trace().real() - eig.eigenvalues()(0)) < 1e-12);
  }

  TEST_CASE("gram rank") {
    CHECK(gram_rank({pauli('X'), pauli('Y'), pauli('X') + pauli('Y')}) == 2);
    CHECK(gram_rank({pauli('X') * Complex(1e-30)}) == 1);
    CHECK(gram_rank({}) == 0);
  }
}
