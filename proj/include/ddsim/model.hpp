#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddsim/operator.hpp"

namespace ddsim {

enum class BathKind { spin, boson };

enum class CouplingKind { total, linear_independent, linear_collective, dephasing };

CouplingKind parse_coupling_kind(std::string_view name);
std::string to_string(CouplingKind kind);
BathKind parse_bath_kind(std::string_view name);
std::string to_string(BathKind kind);

/// Finite bath discretization. Mode frequencies all lie in (0, cutoff].
struct BathSpec {
  BathKind kind = BathKind::spin;
  int n_modes = 4;
  double cutoff = 1.0;          // omega_c
  double coupling_scale = 0.1;  // g
  // Left empty to request the seeded spaced-then-jittered layout.
  std::vector<double> mode_frequencies;
  int boson_truncation = 4;
  std::uint64_t seed = 1;
  // Dephasing only: build bath coupling operators from sigma_z so that
  // [B_alpha, H_B] = 0.
  bool commuting = false;

  void validate() const;
};

/// Seeded layout: omega_i = (i+1) * cutoff / m jittered by up to 10% of the
/// spacing, clamped to (0, cutoff]. Returns `spec.mode_frequencies` unchanged
/// when already populated (after validation).
std::vector<double> mode_frequencies(const BathSpec& spec);

struct CouplingTerm {
  Operator system;
  Operator bath;
};

/// H_0 = H_S (x) 1 + 1 (x) H_B + sum_alpha S_alpha (x) B_alpha.
struct SystemBathModel {
  Operator h_s;
  Operator h_b;
  std::vector<CouplingTerm> couplings;
  Dims system_dims;
  Dims bath_dims;
  double cutoff = 1.0;

  int system_dim() const { return product(system_dims); }
  int bath_dim() const { return product(bath_dims); }
  Dims dims() const;
};

/// Span of the system coupling operators, kept as the linearly independent
/// subset of the inputs in their original order.
struct InteractionSpace {
  std::vector<Operator> basis;

  std::size_t dimension() const { return basis.size(); }
  // Adjoint of every element lies in the span (residual <= 1e-10).
  bool is_self_adjoint() const;
};

SystemBathModel build_spin_bath_model(int n_qubits, const BathSpec& spec, CouplingKind coupling);

// Truncated Fock-ladder bath; only pure dephasing coupling is supported.
SystemBathModel build_boson_bath_model(int n_qubits, const BathSpec& spec);

// Dispatches on spec.kind.
SystemBathModel build_model(int n_qubits, const BathSpec& spec, CouplingKind coupling);

InteractionSpace interaction_space_of(const SystemBathModel& model);
InteractionSpace interaction_space_from(const std::vector<Operator>& operators);

Operator total_hamiltonian(const SystemBathModel& model);

/// Zero-temperature bath state: projector on the lowest eigenvector of H_B.
Operator bath_ground_state(const SystemBathModel& model);

/// Rank of the Hilbert-Schmidt Gram matrix; eigenvalues below
/// `tolerance` times the largest one count as zero.
std::size_t gram_rank(const std::vector<Operator>& operators, double tolerance = tol::kStructural);

}  // namespace ddsim
