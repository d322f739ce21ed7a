#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ddsim/operator.hpp"

namespace ddsim {

// Single-qubit Pauli matrix for one of 'I', 'X', 'Y', 'Z'.
Operator pauli(char axis);

/// Tensor product of single-qubit Paulis, e.g. "XZI" -> sigma_x (x) sigma_z (x) 1.
/// Throws StructuralError on characters outside {I, X, Y, Z}.
Operator pauli_word(std::string_view word);

/// Sum of Pauli words joined with '+', e.g. "XI+IX".
Operator pauli_sum(std::string_view expression);

// sigma_axis acting on qubit `site` of an `n_qubits` register.
Operator pauli_on(char axis, int site, int n_qubits);

/// All 4^n words over {I,X,Y,Z}, lexicographic order.
std::vector<std::string> all_pauli_words(int n_qubits);

/// Identifies `op` as a Pauli word up to a unit phase; returns an empty string
/// when it is not one.
std::string match_pauli_word(const Operator& op, double tolerance = tol::kNumerical);

}  // namespace ddsim
