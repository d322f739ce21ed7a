#include "ddsim/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

#include "ddsim/pauli.hpp"

namespace ddsim {
namespace {

// Pauli letter <-> symplectic (x, z) bits: I=00, X=10, Y=11, Z=01.
int letter_bits(char c) {
  switch (c) {
    case 'I': return 0b00;
    case 'X': return 0b10;
    case 'Y': return 0b11;
    case 'Z': return 0b01;
    default: throw StructuralError(std::string("unknown Pauli letter '") + c + "'");
  }
}

char bits_letter(int bits) {
  static constexpr std::array<char, 4> kLetters{'I', 'Z', 'X', 'Y'};
  return kLetters[static_cast<std::size_t>(bits)];
}

std::string multiply_words(const std::string& a, const std::string& b) {
  std::string out(a.size(), 'I');
  for (std::size_t q = 0; q < a.size(); ++q) out[q] = bits_letter(letter_bits(a[q]) ^ letter_bits(b[q]));
  return out;
}

bool proportional(const Operator& a, const Operator& b, double tolerance) {
  const Matrix& x = a.entries();
  const Matrix& y = b.entries();
  const Complex overlap = (y.conjugate().cwiseProduct(x)).sum() / static_cast<double>(a.dim());
  if (std::abs(std::abs(overlap) - 1.0) > std::sqrt(tolerance)) return false;
  const Complex phase = overlap / std::abs(overlap);
  return (x - phase * y).cwiseAbs().maxCoeff() <= tolerance;
}

// Pi_C of the matrix unit |i><j|: (1/|G|) sum_g (g^dagger e_i)(g^dagger e_j)^dagger.
Matrix project_unit(const std::vector<Matrix>& adjoints, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index d = adjoints.front().rows();
  Matrix out = Matrix::Zero(d, d);
  for (const auto& ga : adjoints) out.noalias() += ga.col(i) * ga.col(j).adjoint();
  return out / static_cast<double>(adjoints.size());
}

std::vector<Matrix> element_adjoints(const DecouplingGroup& group) {
  std::vector<Matrix> adj;
  adj.reserve(group.order());
  for (const auto& g : group.elements) adj.push_back(g.entries().adjoint());
  return adj;
}

void check_system_dim(const DecouplingGroup& group, const Operator& op, const char* what) {
  if (op.dim() != group.elements.front().dim()) {
    throw StructuralError(std::string(what) + ": operator dimension " + std::to_string(op.dim()) +
                          " does not match group dimension " + std::to_string(group.elements.front().dim()));
  }
}

Operator traceless_part(const Operator& s) {
  const Complex t = s.trace() / static_cast<double>(s.dim());
  return s - Operator::identity(s.dims()) * t;
}

// ---- projective Pauli subgroups as bitmasks over word indices (K <= 3) ----

struct PauliTable {
  int n_qubits;
  std::vector<std::string> words;
  std::vector<std::vector<int>> product;  // product[a][b] = index of word a*b
  std::vector<Operator> ops;

  explicit PauliTable(int k) : n_qubits(k), words(all_pauli_words(k)) {
    std::map<std::string, int> index;
    for (std::size_t w = 0; w < words.size(); ++w) index[words[w]] = static_cast<int>(w);
    product.assign(words.size(), std::vector<int>(words.size()));
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = 0; b < words.size(); ++b) product[a][b] = index[multiply_words(words[a], words[b])];
    }
    for (const auto& w : words) ops.push_back(canonicalize_phase(pauli_word(w)));
  }

  std::uint64_t extend(std::uint64_t subgroup, int w) const {
    std::uint64_t out = subgroup;
    for (std::size_t s = 0; s < words.size(); ++s) {
      if (subgroup >> s & 1U) out |= std::uint64_t{1} << product[s][static_cast<std::size_t>(w)];
    }
    return out;
  }

  std::vector<int> generators(std::uint64_t subgroup) const {
    std::vector<int> gens;
    std::uint64_t span = 1;
    for (std::size_t w = 1; w < words.size(); ++w) {
      if ((subgroup >> w & 1U) && !(span >> w & 1U)) {
        gens.push_back(static_cast<int>(w));
        span = extend(span, static_cast<int>(w));
      }
    }
    return gens;
  }

  DecouplingGroup group(std::uint64_t subgroup) const {
    DecouplingGroup g;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (subgroup >> w & 1U) {
        g.elements.push_back(ops[w]);
        g.labels.push_back(words[w]);
      }
    }
    return g;
  }
};

}  // namespace

PauliVariant parse_pauli_variant(std::string_view name) {
  if (name == "full") return PauliVariant::full;
  if (name == "collective") return PauliVariant::collective;
  if (name == "flip") return PauliVariant::flip;
  throw StructuralError("unknown Pauli group variant '" + std::string(name) + "'");
}

Operator canonicalize_phase(const Operator& u) {
  const Matrix& m = u.entries();
  const double threshold = 1e-12 * std::max(1.0, u.max_abs());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex x = m(i, j);
      if (std::abs(x) > threshold) return u * (std::conj(x) / std::abs(x));
    }
  }
  return u;
}

DecouplingGroup make_group(std::vector<Operator> elements, std::vector<std::string> labels) {
  if (elements.empty()) throw StructuralError("a group needs at least one element");
  if (labels.empty()) {
    for (std::size_t j = 0; j < elements.size(); ++j) labels.push_back("g" + std::to_string(j));
  }
  if (labels.size() != elements.size()) throw StructuralError("one label per group element required");
  const int d = elements.front().dim();
  for (auto& g : elements) {
    if (g.dim() != d) throw StructuralError("group elements must share one dimension");
    if (!g.is_unitary()) throw StructuralError("group element is not unitary");
    g = canonicalize_phase(g);
  }
  const Operator id = Operator::identity(elements.front().dims());
  auto id_pos = std::find_if(elements.begin(), elements.end(),
                             [&](const Operator& g) { return proportional(g, id, tol::kStructural); });
  if (id_pos == elements.end()) throw StructuralError("group does not contain the identity");
  const auto id_index = static_cast<std::size_t>(id_pos - elements.begin());
  std::rotate(elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(id_index),
              elements.begin() + static_cast<std::ptrdiff_t>(id_index) + 1);
  std::rotate(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(id_index),
              labels.begin() + static_cast<std::ptrdiff_t>(id_index) + 1);

  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      if (proportional(elements[a], elements[b], tol::kStructural)) {
        throw StructuralError("group elements " + labels[a] + " and " + labels[b] + " coincide up to phase");
      }
    }
  }
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = 0; b < elements.size(); ++b) {
      const Operator p = elements[a] * elements[b];
      const bool closed = std::any_of(elements.begin(), elements.end(),
                                      [&](const Operator& g) { return proportional(p, g, tol::kStructural); });
      if (!closed) {
        throw StructuralError("group is not closed: " + labels[a] + "*" + labels[b] + " is not an element");
      }
    }
  }
  return DecouplingGroup{std::move(elements), std::move(labels)};
}

DecouplingGroup trivial_group(const Dims& system_dims) {
  return DecouplingGroup{{Operator::identity(system_dims)}, {"identity"}};
}

DecouplingGroup pauli_group(int n_qubits, PauliVariant variant) {
  if (n_qubits < 1) throw StructuralError("qubit count must be >= 1");
  std::vector<std::string> words;
  switch (variant) {
    case PauliVariant::full:
      if (n_qubits > 6) throw StructuralError("full Pauli group order 4^K exceeds cap 4096");
      words = all_pauli_words(n_qubits);
      break;
    case PauliVariant::collective:
      for (char a : {'I', 'X', 'Y', 'Z'}) words.emplace_back(static_cast<std::size_t>(n_qubits), a);
      break;
    case PauliVariant::flip:
      for (char a : {'I', 'X'}) words.emplace_back(static_cast<std::size_t>(n_qubits), a);
      break;
  }
  DecouplingGroup g;
  for (const auto& w : words) {
    g.elements.push_back(canonicalize_phase(pauli_word(w)));
    g.labels.push_back(w);
  }
  return g;
}

DecouplingGroup group_from_pauli_words(const std::vector<std::string>& words) {
  if (words.empty()) throw StructuralError("empty Pauli word list");
  const std::size_t k = words.front().size();
  std::set<std::string> members;
  for (const auto& w : words) {
    if (w.size() != k) throw StructuralError("Pauli words must share one length");
    for (char c : w) letter_bits(c);
    if (!members.insert(w).second) throw StructuralError("duplicate Pauli word '" + w + "'");
  }
  const std::string identity(k, 'I');
  if (!members.count(identity)) throw StructuralError("Pauli group must contain " + identity);
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (!members.count(multiply_words(a, b))) {
        throw StructuralError("Pauli words not closed: " + a + "*" + b + " = " + multiply_words(a, b) +
                              " missing");
      }
    }
  }
  DecouplingGroup g;
  g.elements.push_back(pauli_word(identity));
  g.labels.push_back(identity);
  for (const auto& w : words) {
    if (w == identity) continue;
    g.elements.push_back(canonicalize_phase(pauli_word(w)));
    g.labels.push_back(w);
  }
  return g;
}

Operator project_commutant(const Operator& s, const DecouplingGroup& group) {
  check_system_dim(group, s, "project_commutant");
  Matrix acc = Matrix::Zero(s.dim(), s.dim());
  for (const auto& g : group.elements) acc.noalias() += g.entries().adjoint() * s.entries() * g.entries();
  return Operator(acc / static_cast<double>(group.order()), s.dims());
}

CommutantBasis commutant_basis(const DecouplingGroup& group) {
  const std::vector<Matrix> adj = element_adjoints(group);
  const Eigen::Index d = adj.front().rows();
  std::vector<Matrix> q;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix r = project_unit(adj, i, j);
      // Two Gram-Schmidt passes keep the basis orthonormal to machine precision.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : q) r -= e * (e.conjugate().cwiseProduct(r)).sum();
      }
      const double n = r.norm();
      if (n > tol::kNumerical) q.push_back(r / n);
    }
  }
  CommutantBasis out;
  out.basis.reserve(q.size());
  for (auto& m : q) out.basis.emplace_back(std::move(m), group.dims());
  return out;
}

std::string to_string(DecouplingMode mode) {
  switch (mode) {
    case DecouplingMode::maximal: return "maximal";
    case DecouplingMode::selective: return "selective";
    case DecouplingMode::none: return "none";
  }
  return {};
}

std::vector<double> averaging_residuals(const DecouplingGroup& group, const InteractionSpace& interaction) {
  std::vector<double> out;
  out.reserve(interaction.dimension());
  for (const auto& s : interaction.basis) {
    check_system_dim(group, s, "averaging_residuals");
    out.push_back(frobenius_norm(project_commutant(traceless_part(s), group)));
  }
  return out;
}

DecouplingReport check_decoupling(const DecouplingGroup& group, const InteractionSpace& interaction,
                                  const Operator& h_s) {
  check_system_dim(group, h_s, "check_decoupling");
  DecouplingReport report;
  report.residuals = averaging_residuals(group, interaction);
  report.effective_h_s = project_commutant(h_s, group);

  const std::vector<Matrix> adj = element_adjoints(group);
  const Eigen::Index d = adj.front().rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix p = project_unit(adj, i, j);
      if (i == j) p.diagonal().array() -= 1.0 / static_cast<double>(d);
      report.maximal_residual = std::max(report.maximal_residual, p.norm());
    }
  }

  const bool all_averaged = std::all_of(report.residuals.begin(), report.residuals.end(),
                                        [](double r) { return r <= tol::kNumerical; });
  if (report.maximal_residual <= tol::kNumerical) {
    report.mode = DecouplingMode::maximal;
  } else if (all_averaged) {
    report.mode = DecouplingMode::selective;
  } else {
    report.mode = DecouplingMode::none;
  }
  return report;
}

std::vector<DecouplingGroup> minimal_group_search(const InteractionSpace& interaction, int n_qubits,
                                                  std::size_t max_order) {
  if (n_qubits < 1 || n_qubits > 3) throw StructuralError("minimal_group_search supports 1 <= K <= 3");
  if (max_order < 1 || max_order > 64) throw StructuralError("minimal_group_search needs 1 <= max_order <= 64");
  const int d = 1 << n_qubits;
  for (const auto& s : interaction.basis) {
    if (s.dim() != d) throw StructuralError("interaction space dimension does not match K qubits");
  }

  const PauliTable table(n_qubits);
  std::set<std::uint64_t> level{1};
  for (std::size_t order = 1; order <= max_order; order *= 2) {
    std::vector<std::pair<std::vector<int>, std::uint64_t>> ranked;
    for (std::uint64_t s : level) ranked.emplace_back(table.generators(s), s);
    std::sort(ranked.begin(), ranked.end());

    std::vector<DecouplingGroup> found;
    for (const auto& [gens, mask] : ranked) {
      DecouplingGroup g = table.group(mask);
      const auto res = averaging_residuals(g, interaction);
      if (std::all_of(res.begin(), res.end(), [](double r) { return r <= tol::kNumerical; })) {
        found.push_back(std::move(g));
      }
    }
    if (!found.empty()) return found;

    std::set<std::uint64_t> next;
    for (std::uint64_t s : level) {
      for (std::size_t w = 1; w < table.words.size(); ++w) {
        if (!(s >> w & 1U)) next.insert(table.extend(s, static_cast<int>(w)));
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return {};
}

std::vector<std::string> pauli_generators(const DecouplingGroup& group) {
  std::vector<std::string> members;
  for (const auto& g : group.elements) {
    std::string w = match_pauli_word(g);
    if (w.empty()) throw StructuralError("group element is not a Pauli word");
    members.push_back(std::move(w));
  }
  std::sort(members.begin(), members.end());
  std::set<std::string> span{std::string(members.front().size(), 'I')};
  std::vector<std::string> gens;
  for (const auto& w : members) {
    if (span.count(w)) continue;
    gens.push_back(w);
    std::set<std::string> grown = span;
    for (const auto& s : span) grown.insert(multiply_words(s, w));
    span = std::move(grown);
  }
  return gens;
}

}  // namespace ddsim
