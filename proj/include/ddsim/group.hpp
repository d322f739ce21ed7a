#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddsim/model.hpp"
#include "ddsim/operator.hpp"

namespace ddsim {

/// Finite group of system unitaries, stored projectively.
///
/// Each element is phase-canonicalized (first nonzero entry real positive), and
/// element 0 is the identity. Closure holds up to a unit phase, which is all
/// that conjugation-averaging needs.
struct DecouplingGroup {
  std::vector<Operator> elements;
  std::vector<std::string> labels;

  std::size_t order() const { return elements.size(); }
  const Dims& dims() const { return elements.front().dims(); }
};

enum class PauliVariant { full, collective, flip };

PauliVariant parse_pauli_variant(std::string_view name);

/// Multiplies `u` by the unit phase that makes its first nonzero entry real
/// and positive.
Operator canonicalize_phase(const Operator& u);

/// Validates unitarity and projective closure, canonicalizes phases and moves
/// the identity to the front. Throws StructuralError on violations.
DecouplingGroup make_group(std::vector<Operator> elements, std::vector<std::string> labels);

DecouplingGroup trivial_group(const Dims& system_dims);

/// full: all 4^K tensor words. collective: {1, X^K, Y^K, Z^K} in that order,
/// so consecutive frames differ by collective pi pulses about x and z.
/// flip: {1, X^K}.
DecouplingGroup pauli_group(int n_qubits, PauliVariant variant);

/// Group from explicit Pauli words; closure is checked symbolically.
DecouplingGroup group_from_pauli_words(const std::vector<std::string>& words);

/// (1/|G|) sum_j g_j^dagger S g_j.
Operator project_commutant(const Operator& s, const DecouplingGroup& group);

struct CommutantBasis {
  std::vector<Operator> basis;  // Hilbert-Schmidt orthonormal
  std::size_t dimension() const { return basis.size(); }
};

CommutantBasis commutant_basis(const DecouplingGroup& group);

enum class DecouplingMode { maximal, selective, none };

std::string to_string(DecouplingMode mode);

struct DecouplingReport {
  DecouplingMode mode = DecouplingMode::none;
  // ||Pi_C(S - Tr S / d)||_F per interaction-space basis element.
  std::vector<double> residuals;
  // Largest traceless remainder of Pi_C over a full operator basis; zero iff
  // the commutant is trivial.
  double maximal_residual = 0.0;
  Operator effective_h_s;
};

DecouplingReport check_decoupling(const DecouplingGroup& group, const InteractionSpace& interaction,
                                  const Operator& h_s);

/// Traceless-part residuals of Pi_C on each interaction-space element.
std::vector<double> averaging_residuals(const DecouplingGroup& group, const InteractionSpace& interaction);

/// Enumerates subgroups of the projective K-qubit Pauli group breadth-first by
/// order and returns every subgroup of the smallest order that decouples the
/// interaction space (mode != none). Results are sorted by their
/// lexicographically smallest generating word list. Requires K <= 3 and
/// max_order <= 64.
std::vector<DecouplingGroup> minimal_group_search(const InteractionSpace& interaction, int n_qubits,
                                                  std::size_t max_order);

/// Lexicographically smallest Pauli-word generator list of a Pauli subgroup.
std::vector<std::string> pauli_generators(const DecouplingGroup& group);

}  // namespace ddsim
