#include "ddsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ddsim/pauli.hpp"

namespace ddsim {
namespace {

// Keeps the coupling draws on a stream separate from the frequency jitter.
constexpr std::uint64_t kCouplingStream = 0x9e3779b97f4a7c15ULL;

Operator embed(const Operator& local, int site, int n_sites, int local_dim) {
  std::vector<Operator> factors;
  factors.reserve(static_cast<std::size_t>(n_sites));
  for (int s = 0; s < n_sites; ++s) {
    factors.push_back(s == site ? local : Operator::identity({local_dim}));
  }
  return tensor(factors);
}

std::vector<Operator> system_couplings(int n_qubits, CouplingKind kind) {
  std::vector<Operator> ops;
  switch (kind) {
    case CouplingKind::dephasing:
      for (int i = 0; i < n_qubits; ++i) ops.push_back(pauli_on('Z', i, n_qubits));
      break;
    case CouplingKind::linear_independent:
      for (int i = 0; i < n_qubits; ++i) {
        for (char axis : {'X', 'Y', 'Z'}) ops.push_back(pauli_on(axis, i, n_qubits));
      }
      break;
    case CouplingKind::linear_collective:
      for (char axis : {'X', 'Y', 'Z'}) {
        Operator sum = pauli_on(axis, 0, n_qubits);
        for (int i = 1; i < n_qubits; ++i) sum += pauli_on(axis, i, n_qubits);
        ops.push_back(std::move(sum));
      }
      break;
    case CouplingKind::total: {
      const auto words = all_pauli_words(n_qubits);
      for (std::size_t w = 1; w < words.size(); ++w) ops.push_back(pauli_word(words[w]));
      break;
    }
  }
  return ops;
}

// Random unit-norm real combinations of the pool, scaled by g.
std::vector<Operator> random_bath_operators(const std::vector<Operator>& pool, std::size_t count,
                                            double scale, std::uint64_t seed) {
  if (count > pool.size()) {
    throw StructuralError("bath too small: " + std::to_string(count) +
                          " linearly independent coupling operators requested from a pool of " +
                          std::to_string(pool.size()));
  }
  std::mt19937_64 rng(seed ^ kCouplingStream);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Operator> out;
  out.reserve(count);
  for (std::size_t a = 0; a < count; ++a) {
    std::vector<double> c(pool.size());
    double norm2 = 0.0;
    for (double& x : c) {
      x = coeff(rng);
      norm2 += x * x;
    }
    const double inv = scale / std::sqrt(norm2);
    Operator b = Operator::zero(pool.front().dims());
    for (std::size_t k = 0; k < pool.size(); ++k) b += pool[k] * Complex(c[k] * inv);
    out.push_back(std::move(b));
  }
  if (gram_rank(out) != count) {
    throw StructuralError("bath coupling operators are linearly dependent; change the seed");
  }
  return out;
}

void check_qubits(int n_qubits) {
  if (n_qubits < 1) throw StructuralError("qubit count must be >= 1");
}

}  // namespace

CouplingKind parse_coupling_kind(std::string_view name) {
  if (name == "total") return CouplingKind::total;
  if (name == "linear-independent") return CouplingKind::linear_independent;
  if (name == "linear-collective") return CouplingKind::linear_collective;
  if (name == "dephasing") return CouplingKind::dephasing;
  throw StructuralError("unknown coupling kind '" + std::string(name) + "'");
}

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::total: return "total";
    case CouplingKind::linear_independent: return "linear-independent";
    case CouplingKind::linear_collective: return "linear-collective";
    case CouplingKind::dephasing: return "dephasing";
  }
  return {};
}

BathKind parse_bath_kind(std::string_view name) {
  if (name == "spin-bath") return BathKind::spin;
  if (name == "boson-mode") return BathKind::boson;
  throw StructuralError("unknown bath kind '" + std::string(name) + "'");
}

std::string to_string(BathKind kind) { return kind == BathKind::spin ? "spin-bath" : "boson-mode"; }

void BathSpec::validate() const {
  if (n_modes < 1) throw StructuralError("bath.n_modes must be >= 1");
  if (!(cutoff > 0.0)) throw StructuralError("bath.cutoff must be > 0");
  if (!(coupling_scale > 0.0)) throw StructuralError("bath.coupling_scale must be > 0");
  if (kind == BathKind::boson && boson_truncation < 2) {
    throw StructuralError("bath.boson_truncation must be >= 2");
  }
  if (!mode_frequencies.empty()) {
    if (mode_frequencies.size() != static_cast<std::size_t>(n_modes)) {
      throw StructuralError("bath.mode_frequencies must list n_modes values");
    }
    for (double w : mode_frequencies) {
      if (!(w > 0.0 && w <= cutoff)) throw StructuralError("mode frequency outside (0, cutoff]");
    }
  }
}

std::vector<double> mode_frequencies(const BathSpec& spec) {
  spec.validate();
  if (!spec.mode_frequencies.empty()) return spec.mode_frequencies;
  const double spacing = spec.cutoff / spec.n_modes;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.n_modes));
  for (int i = 0; i < spec.n_modes; ++i) {
    const double w = (i + 1) * spacing + jitter(rng) * spacing;
    out.push_back(std::clamp(w, 1e-3 * spacing, spec.cutoff));
  }
  return out;
}

Dims SystemBathModel::dims() const {
  Dims d = system_dims;
  d.insert(d.end(), bath_dims.begin(), bath_dims.end());
  return d;
}

bool InteractionSpace::is_self_adjoint() const {
  // Orthonormalize the span, then project each adjoint onto it.
  std::vector<Operator> q;
  for (const auto& b : basis) {
    Operator r = b;
    for (const auto& e : q) r -= e * hs_inner(e, r);
    const double n = frobenius_norm(r);
    if (n > tol::kNumerical) q.push_back(r * Complex(1.0 / n));
  }
  for (const auto& b : basis) {
    Operator r = b.adjoint();
    for (const auto& e : q) r -= e * hs_inner(e, r);
    if (frobenius_norm(r) > tol::kStructural * std::max(1.0, frobenius_norm(b))) return false;
  }
  return true;
}

SystemBathModel build_spin_bath_model(int n_qubits, const BathSpec& spec, CouplingKind coupling) {
  check_qubits(n_qubits);
  if (spec.kind != BathKind::spin) throw StructuralError("build_spin_bath_model needs a spin bath");
  const std::vector<double> omega = mode_frequencies(spec);
  const int m = spec.n_modes;
  if (n_qubits + m > 12) {
    throw StructuralError("2^(K+m) = 2^" + std::to_string(n_qubits + m) + " exceeds dimension cap " +
                          std::to_string(kMaxDimension));
  }
  if (spec.commuting && coupling != CouplingKind::dephasing) {
    throw StructuralError("commuting bath operators are only defined for dephasing coupling");
  }

  SystemBathModel model;
  model.system_dims = Dims(static_cast<std::size_t>(n_qubits), 2);
  model.bath_dims = Dims(static_cast<std::size_t>(m), 2);
  model.cutoff = spec.cutoff;
  model.h_s = Operator::zero(model.system_dims);

  model.h_b = Operator::zero(model.bath_dims);
  for (int i = 0; i < m; ++i) {
    model.h_b += pauli_on('Z', i, m) * Complex(omega[static_cast<std::size_t>(i)] / 2.0);
  }

  std::vector<Operator> pool;
  for (int j = 0; j < m; ++j) {
    if (spec.commuting) {
      pool.push_back(pauli_on('Z', j, m));
    } else {
      pool.push_back(pauli_on('X', j, m));
      pool.push_back(pauli_on('Y', j, m));
    }
  }
  std::vector<Operator> s_ops = system_couplings(n_qubits, coupling);
  std::vector<Operator> b_ops = random_bath_operators(pool, s_ops.size(), spec.coupling_scale, spec.seed);
  for (std::size_t a = 0; a < s_ops.size(); ++a) {
    model.couplings.push_back({std::move(s_ops[a]), std::move(b_ops[a])});
  }
  return model;
}

SystemBathModel build_boson_bath_model(int n_qubits, const BathSpec& spec) {
  check_qubits(n_qubits);
  if (spec.kind != BathKind::boson) throw StructuralError("build_boson_bath_model needs a boson bath");
  if (spec.commuting) throw StructuralError("commuting option is only available for spin baths");
  const std::vector<double> omega = mode_frequencies(spec);
  const int m = spec.n_modes;
  const int nf = spec.boson_truncation;
  double total = std::pow(2.0, n_qubits) * std::pow(static_cast<double>(nf), m);
  if (total > kMaxDimension) {
    throw StructuralError("boson model dimension " + std::to_string(static_cast<long long>(total)) +
                          " exceeds cap " + std::to_string(kMaxDimension));
  }

  Matrix lower = Matrix::Zero(nf, nf);
  for (int n = 1; n < nf; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Operator a(lower, {nf});
  const Operator number = a.adjoint() * a;
  const Operator quadrature = a + a.adjoint();

  SystemBathModel model;
  model.system_dims = Dims(static_cast<std::size_t>(n_qubits), 2);
  model.bath_dims = Dims(static_cast<std::size_t>(m), nf);
  model.cutoff = spec.cutoff;
  model.h_s = Operator::zero(model.system_dims);
  model.h_b = Operator::zero(model.bath_dims);
  std::vector<Operator> pool;
  for (int i = 0; i < m; ++i) {
    model.h_b += embed(number, i, m, nf) * Complex(omega[static_cast<std::size_t>(i)]);
    pool.push_back(embed(quadrature, i, m, nf));
  }
  std::vector<Operator> b_ops =
      random_bath_operators(pool, static_cast<std::size_t>(n_qubits), spec.coupling_scale, spec.seed);
  for (int i = 0; i < n_qubits; ++i) {
    model.couplings.push_back({pauli_on('Z', i, n_qubits), std::move(b_ops[static_cast<std::size_t>(i)])});
  }
  return model;
}

SystemBathModel build_model(int n_qubits, const BathSpec& spec, CouplingKind coupling) {
  if (spec.kind == BathKind::boson) {
    if (coupling != CouplingKind::dephasing) {
      throw StructuralError("boson-mode baths support only dephasing coupling");
    }
    return build_boson_bath_model(n_qubits, spec);
  }
  return build_spin_bath_model(n_qubits, spec, coupling);
}

InteractionSpace interaction_space_from(const std::vector<Operator>& operators) {
  InteractionSpace space;
  std::vector<Operator> q;
  for (const auto& op : operators) {
    Operator r = op;
    for (const auto& e : q) r -= e * hs_inner(e, r);
    const double n = frobenius_norm(r);
    if (n > tol::kNumerical * std::max(1.0, frobenius_norm(op))) {
      q.push_back(r * Complex(1.0 / n));
      space.basis.push_back(op);
    }
  }
  return space;
}

InteractionSpace interaction_space_of(const SystemBathModel& model) {
  std::vector<Operator> ops;
  ops.reserve(model.couplings.size());
  for (const auto& c : model.couplings) ops.push_back(c.system);
  return interaction_space_from(ops);
}

Operator total_hamiltonian(const SystemBathModel& model) {
  const Operator id_s = Operator::identity(model.system_dims);
  const Operator id_b = Operator::identity(model.bath_dims);
  Operator h = tensor(model.h_s, id_b) + tensor(id_s, model.h_b);
  for (const auto& c : model.couplings) h += tensor(c.system, c.bath);
  return h;
}

Operator bath_ground_state(const SystemBathModel& model) {
  const Matrix& hb = model.h_b.entries();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (hb + hb.adjoint()));
  return projector(eig.eigenvectors().col(0), model.bath_dims);
}

std::size_t gram_rank(const std::vector<Operator>& operators, double tolerance) {
  const auto n = static_cast<Eigen::Index>(operators.size());
  if (n == 0) return 0;
  Matrix gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gram(i, j) = hs_inner(operators[i], operators[j]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (gram + gram.adjoint()));
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (top > 0.0 && eig.eigenvalues()(k) > tolerance * top) ++rank;
  }
  return rank;
}

}  // namespace ddsim
