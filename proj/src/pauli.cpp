#include "ddsim/pauli.hpp"

#include <cmath>

namespace ddsim {

Operator pauli(char axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -kI, kI, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw StructuralError(std::string("unknown Pauli axis '") + axis + "'");
  }
  return Operator(std::move(m), {2});
}

Operator pauli_word(std::string_view word) {
  if (word.empty()) throw StructuralError("empty Pauli word");
  std::vector<Operator> factors;
  factors.reserve(word.size());
  for (char c : word) factors.push_back(pauli(c));
  return tensor(factors);
}

Operator pauli_sum(std::string_view expression) {
  std::vector<std::string_view> terms;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = expression.find('+', start);
    terms.push_back(expression.substr(start, plus - start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  Operator out = pauli_word(terms.front());
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (terms[k].size() != terms.front().size()) {
      throw StructuralError("Pauli sum '" + std::string(expression) + "' mixes word lengths");
    }
    out += pauli_word(terms[k]);
  }
  return out;
}

Operator pauli_on(char axis, int site, int n_qubits) {
  if (site < 0 || site >= n_qubits) throw StructuralError("qubit index out of range");
  std::string word(static_cast<std::size_t>(n_qubits), 'I');
  word[static_cast<std::size_t>(site)] = axis;
  return pauli_word(word);
}

std::vector<std::string> all_pauli_words(int n_qubits) {
  static constexpr char kAxes[] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> words{""};
  for (int q = 0; q < n_qubits; ++q) {
    std::vector<std::string> next;
    next.reserve(words.size() * 4);
    for (const auto& w : words) {
      for (char a : kAxes) next.push_back(w + a);
    }
    words = std::move(next);
  }
  return words;
}

std::string match_pauli_word(const Operator& op, double tolerance) {
  const int d = op.dim();
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) return {};
  for (const auto& word : all_pauli_words(n)) {
    const Operator p = pauli_word(word);
    const Complex overlap = hs_inner(p, op) / static_cast<double>(d);
    if (std::abs(std::abs(overlap) - 1.0) > tolerance) continue;
    if ((op.entries() - overlap * p.entries()).cwiseAbs().maxCoeff() <= tolerance) return word;
  }
  return {};
}

}  // namespace ddsim
