#include "stoqlab/anneal.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace stoq {

InterpolationPath maxcut_path(const MaxCutInstance& instance, const std::vector<double>& alphas) {
  if (alphas.size() != instance.edges.size())
    throw Error("one catalyst coefficient per edge required");
  int n = instance.n;
  PauliHamiltonian driver(n), catalyst(n), problem(n);
  for (int q = 0; q < n; ++q) {
    std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
    f[static_cast<std::size_t>(q)] = Pauli::X;
    driver.add(PauliString(std::move(f)), -1.0);
  }
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    auto [u, v] = instance.edges[e];
    std::vector<Pauli> fx(static_cast<std::size_t>(n), Pauli::I);
    fx[static_cast<std::size_t>(u)] = Pauli::X;
    fx[static_cast<std::size_t>(v)] = Pauli::X;
    catalyst.add(PauliString(std::move(fx)), alphas[e]);
    std::vector<Pauli> fz(static_cast<std::size_t>(n), Pauli::I);
    fz[static_cast<std::size_t>(u)] = Pauli::Z;
    fz[static_cast<std::size_t>(v)] = Pauli::Z;
    problem.add(PauliString(std::move(fz)), instance.coupling());
  }
  return make_path(std::move(driver), std::move(catalyst), std::move(problem));
}

namespace {

// One exp(-i dt H(s_mid)) application.  Small dimensions use an exact dense
// eigendecomposition; larger ones a Lanczos polynomial approximation whose
// Krylov depth grows until the expansion tail is negligible.
class Propagator {
 public:
  Propagator(PathOperator& op) : op_(op), dense_(op.dim() <= 64) {}

  void step(double s_mid, double dt, Eigen::VectorXcd& psi) {
    if (dense_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op_.dense(s_mid));
      const auto& U = es.eigenvectors();
      Eigen::VectorXcd phases(es.eigenvalues().size());
      for (Index i = 0; i < phases.size(); ++i)
        phases[i] = std::exp(Complex(0.0, -dt * es.eigenvalues()[i]));
      psi = U.cast<Complex>() * (phases.asDiagonal() * (U.transpose().cast<Complex>() * psi));
      return;
    }
    op_.set_s(s_mid);
    lanczos_expm(dt, psi);
  }

 private:
  void lanczos_expm(double dt, Eigen::VectorXcd& psi) {
    const Index dim = op_.dim();
    double hn = std::max(op_.norm_upper_bound(op_.current_s()), 1e-12);
    // superlinear Krylov expm convergence once the depth passes |dt|*||H||
    const int m_target = static_cast<int>(std::ceil(1.3 * std::abs(dt) * hn) + 16);
    const int m_max = static_cast<int>(std::min<Index>(dim, std::min(m_target, 64)));
    double beta0 = psi.norm();
    if (beta0 == 0.0) return;

    Eigen::MatrixXcd V(dim, m_max);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    V.col(0) = psi / beta0;
    Eigen::VectorXcd w(dim);
    int m = 0;
    for (int j = 0; j < m_max; ++j) {
      op_.apply(V.col(j), w);
      // real symmetric operator on a complex vector keeps the recursion real
      double a = V.col(j).dot(w).real();
      alpha[j] = a;
      w -= a * V.col(j);
      if (j > 0) w -= beta[j - 1] * V.col(j - 1);
      // full reorthogonalization for stability at long Krylov depths
      for (int i = 0; i <= j; ++i) w -= V.col(i).dot(w) * V.col(i);
      double b = w.norm();
      m = j + 1;
      if (b < 1e-14 * beta0) {
        beta[j] = 0.0;
        break;
      }
      beta[j] = b;
      if (j + 1 < m_max) V.col(j + 1) = w / b;
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < m) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    Eigen::VectorXcd phases(m);
    for (int i = 0; i < m; ++i) phases[i] = std::exp(Complex(0.0, -dt * es.eigenvalues()[i]));
    Eigen::VectorXcd small = es.eigenvectors().cast<Complex>() *
                             (phases.asDiagonal() *
                              (es.eigenvectors().row(0).transpose().cast<Complex>() * beta0));
    psi = V.leftCols(m) * small;
  }

  PathOperator& op_;
  bool dense_;
};

struct RunOutcome {
  Eigen::VectorXcd psi;
  long steps = 0;
};

RunOutcome run_once(PathOperator& op, Propagator& prop, const Eigen::VectorXcd& psi0,
                    double t_f, double local_tol, long max_steps) {
  RunOutcome out;
  out.psi = psi0;
  if (t_f == 0.0) return out;
  double scale = out.psi.norm();
  double t = 0.0;
  double hnorm = std::max({op.norm_upper_bound(0.0), op.norm_upper_bound(0.5),
                           op.norm_upper_bound(1.0), 1e-12});
  double dt = std::min(t_f, 0.1 / hnorm);
  const double dt_max = std::min(t_f, 16.0 / hnorm);  // keeps Krylov expm depth bounded
  Eigen::VectorXcd full, half;
  while (t < t_f) {
    dt = std::min(dt, t_f - t);
    full = out.psi;
    prop.step((t + 0.5 * dt) / t_f, dt, full);
    half = out.psi;
    prop.step((t + 0.25 * dt) / t_f, 0.5 * dt, half);
    prop.step((t + 0.75 * dt) / t_f, 0.5 * dt, half);
    double err = (full - half).norm() / scale;
    if (err <= local_tol || dt <= 1e-12 * t_f) {
      out.psi.swap(half);
      t += dt;
      ++out.steps;
      if (out.steps > max_steps)
        throw StepLimitExceeded("time evolution exceeded " + std::to_string(max_steps) +
                                " steps");
    }
    double ratio = err > 0.0 ? std::cbrt(local_tol / err) : 4.0;
    dt = std::min(dt * std::clamp(0.9 * ratio, 0.25, 4.0), dt_max);
  }
  return out;
}

}  // namespace

EvolutionResult evolve(const InterpolationPath& path, double t_f, const ParitySector& sector,
                       const EvolveOptions& opts) {
  if (t_f < 0.0) throw Error("anneal time must be nonnegative");
  PathOperator op(path, sector);
  Index dim = op.dim();

  Index sol_row;
  if (opts.solution_row) {
    sol_row = *opts.solution_row;
  } else {
    Eigen::VectorXd diag = sector_diagonal(path.problem, sector);
    Index best = 0;
    diag.minCoeff(&best);
    long ties = 0;
    for (Index i = 0; i < dim; ++i)
      if (diag[i] <= diag[best] + 1e-12) ++ties;
    if (ties != 1)
      throw Error("problem Hamiltonian has no unique classical solution pair");
    sol_row = best;
  }

  // Initial state: uniform superposition, the sector all-ones vector.  Stored
  // unnormalized so its squared norm is exactly 2^{n-1} and the t_f = 0
  // readout is exactly 2^{1-n}.
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Ones(dim);
  double norm0_sq = static_cast<double>(dim);

  Propagator prop(op);
  double tol = opts.local_tol;
  EvolutionResult result;
  result.t_f = t_f;
  std::optional<double> prev_p;
  for (int round = 0; round <= opts.max_tol_halvings; ++round) {
    RunOutcome out = run_once(op, prop, psi0, t_f, tol, opts.max_steps);
    double nsq = out.psi.squaredNorm();
    double p = std::norm(out.psi[sol_row]) / nsq;
    result.p_gs = p;
    result.norm_drift = std::abs(std::sqrt(nsq / norm0_sq) - 1.0);
    result.steps_used = out.steps;
    result.tolerance_used = tol;
    if (t_f == 0.0) break;
    if (prev_p && std::abs(p - *prev_p) < opts.p_stability) break;
    if (round == opts.max_tol_halvings)
      throw StepLimitExceeded("p_gs did not stabilize within the tolerance budget");
    prev_p = p;
    tol *= 0.5;
  }
  if (result.norm_drift > opts.max_norm_drift)
    throw NormDriftExceeded("norm drift " + std::to_string(result.norm_drift) +
                            " exceeds contract");
  return result;
}

TtsResult tts_optimize(const InterpolationPath& path, const ParitySector& sector,
                       const std::vector<double>& t_grid, const EvolveOptions& opts) {
  if (t_grid.empty()) throw Error("tts needs a nonempty time grid");
  for (double t : t_grid)
    if (t <= 0.0) throw Error("tts grid times must be positive");
  constexpr double kFloor = 1e-12;
  TtsResult result;
  result.tts = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    EvolutionResult er = evolve(path, t, sector, opts);
    double p = er.p_gs;
    if (p < kFloor) {
      p = kFloor;
      ++result.floor_hits;
    }
    result.p_gs.push_back(er.p_gs);
    double cost = t / p;
    if (cost < result.tts) {
      result.tts = cost;
      result.t_best = t;
    }
  }
  return result;
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 28; ++k) grid.push_back(std::pow(2.0, 0.5 * k));
  return grid;
}

}  // namespace stoq
