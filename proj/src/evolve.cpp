#include "ddsim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ddsim/magnus.hpp"

namespace ddsim {
namespace {

constexpr double kWindowLow = 0.2;
constexpr double kWindowHigh = 0.95;
constexpr std::int64_t kUnitarizeEvery = 64;
// Purity at which a state is treated as pure for fidelity evaluation.
constexpr double kPureThreshold = 1.0 - 1e-12;

bool is_power_of_two(std::int64_t k) { return k > 0 && (k & (k - 1)) == 0; }

struct Spectral {
  Eigen::VectorXd values;
  Matrix vectors;
};

Spectral hermitian_eig(const Operator& a) {
  const Matrix& m = a.entries();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()));
  return {eig.eigenvalues(), eig.eigenvectors()};
}

struct DecayFit {
  double rate = 0.0;
  double residual = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  bool secant = false;
};

DecayFit fit_decay(const TrajectoryResult& t) {
  if (t.size() < 2) throw StructuralError("rate estimate needs at least two samples");
  const double c0 = t.coherence.front();
  if (!(c0 > 1e-14)) throw StructuralError("rate estimate needs nonzero initial coherence");

  // First contiguous run of samples whose normalized coherence lies in the window.
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double r = t.coherence[k] / c0;
    const bool inside = r >= kWindowLow && r <= kWindowHigh;
    if (inside) {
      idx.push_back(k);
    } else if (!idx.empty()) {
      break;
    }
  }

  DecayFit fit;
  if (idx.size() >= 2) {
    const double n = static_cast<double>(idx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k : idx) {
      const double x = t.times[k];
      const double y = -std::log(t.coherence[k] / c0);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss = 0;
    for (std::size_t k : idx) {
      const double y = -std::log(t.coherence[k] / c0);
      const double e = y - (slope * t.times[k] + intercept);
      ss += e * e;
    }
    fit.rate = std::max(0.0, slope);
    fit.residual = std::sqrt(ss / n);
    fit.window = {t.times[idx.front()], t.times[idx.back()]};
    return fit;
  }

  fit.secant = true;
  const double r_end = std::max(t.coherence.back() / c0, 1e-300);
  fit.rate = std::max(0.0, -std::log(r_end) / t.times.back());
  fit.window = {t.times.front(), t.times.back()};
  return fit;
}

}  // namespace

void check_density(const Operator& rho, const std::string& what) {
  if (!rho.is_hermitian()) throw StructuralError(what + " is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::kStructural) throw StructuralError(what + " does not have unit trace");
  const Spectral s = hermitian_eig(rho);
  if (s.values.minCoeff() < -tol::kStructural) throw StructuralError(what + " is not positive semidefinite");
}

Operator cycle_propagator(const SystemBathModel& model, const CycleSchedule& schedule) {
  if (schedule.segments.empty()) throw StructuralError("empty schedule");
  const bool cacheable = schedule.ordering.size() == schedule.segments.size();
  std::map<std::pair<std::size_t, std::int64_t>, Operator> cache;
  Operator u = Operator::identity(model.dims());
  for (std::size_t j = 0; j < schedule.segments.size(); ++j) {
    const auto key = std::make_pair(cacheable ? schedule.ordering[j] : j, schedule.segments[j].multiplier);
    auto it = cache.find(key);
    if (!cacheable || it == cache.end()) {
      Operator step = expm_hermitian(toggled_hamiltonian(model, schedule, j), schedule.duration(j));
      it = cache.insert_or_assign(key, std::move(step)).first;
    }
    u = it->second * u;
  }
  return u;
}

Operator propagator_power(const Operator& u, std::int64_t k) {
  if (k < 0) throw StructuralError("negative propagator power");
  if (k == 0) return Operator::identity(u.dims());
  if (is_power_of_two(k)) {
    Operator out = u;
    for (std::int64_t p = 1; p < k; p *= 2) out = out * out;
    return out;
  }
  Operator out = u;
  for (std::int64_t i = 1; i < k; ++i) {
    out = u * out;
    if (i % kUnitarizeEvery == 0) out = polar_unitarize(out);
  }
  return out;
}

double coherence(const Operator& rho) {
  const Matrix& m = rho.entries();
  return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double fidelity(const Operator& rho, const Operator& sigma) {
  if (rho.dim() != sigma.dim()) throw StructuralError("fidelity: dimension mismatch");
  const Spectral s = hermitian_eig(sigma);
  const Spectral r = hermitian_eig(rho);
  const auto d = s.values.size();
  // Pure argument: F = <psi|other|psi>.
  if (s.values(d - 1) >= kPureThreshold) {
    const Vector psi = s.vectors.col(d - 1);
    return (psi.adjoint() * rho.entries() * psi)(0, 0).real();
  }
  if (r.values(d - 1) >= kPureThreshold) {
    const Vector psi = r.vectors.col(d - 1);
    return (psi.adjoint() * sigma.entries() * psi)(0, 0).real();
  }
  const Eigen::VectorXd root = r.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = r.vectors * root.cast<Complex>().asDiagonal() * r.vectors.adjoint();
  const Matrix inner = sqrt_rho * sigma.entries() * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (inner + inner.adjoint()));
  const double tr = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

TrajectoryResult evolve(const SimulationRun& run) {
  const SystemBathModel& model = run.model;
  const CycleSchedule& schedule = run.schedule;
  if (run.n_cycles < 1) throw StructuralError("n_cycles must be >= 1");
  if (run.sample_every < 1) throw StructuralError("sample_every must be >= 1");
  if (schedule.segments.empty()) throw StructuralError("empty schedule");
  if (run.rho_s0.dim() != model.system_dim()) {
    throw StructuralError("initial system state dimension does not match the model");
  }
  if (schedule.segments.front().frame.dim() != model.system_dim()) {
    throw StructuralError("schedule frames do not act on the model's system space");
  }
  check_density(run.rho_s0, "initial system state");
  const Operator rho_b = run.rho_b0 ? *run.rho_b0 : bath_ground_state(model);
  if (rho_b.dim() != model.bath_dim()) throw StructuralError("initial bath state dimension does not match the model");
  check_density(rho_b, "initial bath state");

  // rho_tot(0) as a weighted set of orthonormal pure states.
  const Spectral es = hermitian_eig(run.rho_s0);
  const Spectral eb = hermitian_eig(rho_b);
  const Eigen::Index ds = model.system_dim();
  const Eigen::Index db = model.bath_dim();
  std::vector<double> weights;
  std::vector<Vector> columns;
  for (Eigen::Index a = 0; a < es.values.size(); ++a) {
    for (Eigen::Index b = 0; b < eb.values.size(); ++b) {
      const double p = es.values(a) * eb.values(b);
      if (p <= 1e-15) continue;
      Vector v(ds * db);
      for (Eigen::Index i = 0; i < ds; ++i) v.segment(i * db, db) = es.vectors(i, a) * eb.vectors.col(b);
      weights.push_back(p);
      columns.push_back(std::move(v));
    }
  }
  Matrix psi(ds * db, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) psi.col(static_cast<Eigen::Index>(k)) = columns[k];
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= weight_sum;

  const Operator u = cycle_propagator(model, schedule);
  const Operator stride_u = propagator_power(u, run.sample_every);
  const Operator h_eff = frame_average(model.h_s, schedule);
  const double tc = schedule.cycle_time();

  TrajectoryResult out;
  out.metadata = {schedule.delta_t, tc, run.n_cycles, model.cutoff * schedule.delta_t};

  auto sample = [&](std::int64_t cycle) {
    Matrix rho_s = Matrix::Zero(ds, ds);
    for (Eigen::Index k = 0; k < psi.cols(); ++k) {
      const Eigen::Map<const Matrix> block(psi.col(k).data(), db, ds);
      rho_s.noalias() += weights[static_cast<std::size_t>(k)] * (block.transpose() * block.conjugate());
    }
    rho_s = (0.5 * (rho_s + rho_s.adjoint())).eval();
    Operator state(std::move(rho_s), model.system_dims);

    const Matrix overlaps = psi.adjoint() * psi;
    double purity = 0.0;
    for (Eigen::Index k = 0; k < psi.cols(); ++k) {
      for (Eigen::Index l = 0; l < psi.cols(); ++l) {
        purity += weights[static_cast<std::size_t>(k)] * weights[static_cast<std::size_t>(l)] * std::norm(overlaps(k, l));
      }
    }

    const double t = static_cast<double>(cycle) * tc;
    const Operator ref_u = expm_hermitian(h_eff, t);
    const Operator reference = ref_u * run.rho_s0 * ref_u.adjoint();

    out.cycles.push_back(cycle);
    out.times.push_back(t);
    out.fidelity.push_back(fidelity(state, reference));
    out.coherence.push_back(coherence(state));
    out.trace_distance_to_initial.push_back(distance(state, run.rho_s0, Metric::trace));
    out.total_purity.push_back(purity);
    out.states.push_back(std::move(state));
  };

  sample(0);
  std::int64_t cycle = 0;
  while (cycle < run.n_cycles) {
    const std::int64_t step = std::min(run.sample_every, run.n_cycles - cycle);
    if (step == run.sample_every) {
      psi = stride_u.entries() * psi;
    } else {
      psi = propagator_power(u, step).entries() * psi;
    }
    cycle += step;
    sample(cycle);
  }
  return out;
}

std::vector<double> observable_drift(const SimulationRun& run, const Operator& a) {
  if (a.dim() != run.model.system_dim()) throw StructuralError("observable dimension does not match the system");
  for (const auto& seg : run.schedule.segments) {
    const double c = frobenius_norm(commutator(a, seg.frame));
    if (c > tol::kNumerical) {
      throw StructuralError("observable is not in the commutant: ||[A, " + seg.label + "]|| = " + std::to_string(c));
    }
  }
  const TrajectoryResult traj = evolve(run);
  const Complex initial = (a * run.rho_s0).trace();
  std::vector<double> drift;
  drift.reserve(traj.size());
  for (const auto& rho : traj.states) drift.push_back(std::abs((a * rho).trace() - initial));
  return drift;
}

RateEstimate estimate_rates(const TrajectoryResult& free, const TrajectoryResult& controlled) {
  const DecayFit f = fit_decay(free);
  const DecayFit c = fit_decay(controlled);
  RateEstimate est;
  est.gamma = f.rate;
  est.gamma_c = c.rate;
  est.fit_window = f.window;
  est.controlled_window = c.window;
  est.fit_residual = f.residual;
  est.controlled_residual = c.residual;
  est.controlled_secant = c.secant;
  est.flagged = f.secant || !(f.rate > 0.0);
  est.ratio = f.rate > 0.0 ? c.rate / f.rate : 1.0;
  return est;
}

ScalingFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw StructuralError("scaling fit needs at least 3 points");
  std::vector<double> xs, ys;
  for (const auto& [dt, err] : points) {
    if (!(dt > 0.0) || !(err > 0.0)) throw StructuralError("scaling fit needs positive delta_t and error values");
    xs.push_back(std::log(dt));
    ys.push_back(std::log(err));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx <= 1e-24 * std::max(1.0, mx * mx)) {
    throw StructuralError("scaling fit rejected: degenerate abscissa (all delta_t equal)");
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (fit.intercept + fit.slope * xs[k]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace ddsim
