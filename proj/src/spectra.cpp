#include "stoqlab/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "stoqlab/lanczos.hpp"

namespace stoq {

namespace {

template <typename M>
SpectrumResult dense_lowest(const M& d, int k) {
  Eigen::SelfAdjointEigenSolver<M> es(d);
  if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed", -1.0);
  SpectrumResult out;
  out.method = EigMethod::Dense;
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  out.residual_norms.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    auto v = es.eigenvectors().col(i);
    out.residual_norms.push_back((d * v - es.eigenvalues()[i] * v).norm());
  }
  return out;
}

template <typename Scalar>
SpectrumResult krylov_lowest(const HermitianMatrix& m, int k, const EigsOptions& opts) {
  LanczosOptions lopts;
  lopts.k = k;
  lopts.tol_rel = opts.tol_rel;
  lopts.max_restarts = opts.max_restarts;
  MatVecFn<Scalar> apply = [&m](const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                                Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) { m.apply(x, y); };
  auto res = lanczos_lowest<Scalar>(m.dim(), apply, lopts);
  if (!res.converged) {
    double best = res.residuals.empty() ? -1.0
                                        : *std::max_element(res.residuals.begin(), res.residuals.end());
    throw NonConvergence("Krylov eigensolver did not converge; best residual " +
                             std::to_string(best),
                         best);
  }
  SpectrumResult out;
  out.method = EigMethod::Krylov;
  out.eigenvalues.assign(res.values.data(), res.values.data() + k);
  out.residual_norms = res.residuals;
  return out;
}

}  // namespace

SpectrumResult eigs_lowest(const HermitianMatrix& m, int k, const EigsOptions& opts) {
  if (k < 1 || k > m.dim()) throw Error("eigs_lowest: need 1 <= k <= dim");
  EigMethod method = opts.method;
  if (method == EigMethod::Auto)
    method = m.dim() <= opts.dense_threshold ? EigMethod::Dense : EigMethod::Krylov;
  if (method == EigMethod::Dense) {
    if (m.is_real()) return dense_lowest(m.to_dense_real(), k);
    return dense_lowest(m.to_dense_complex(), k);
  }
  if (m.is_real()) return krylov_lowest<double>(m, k, opts);
  return krylov_lowest<Complex>(m, k, opts);
}

double gap(const HermitianMatrix& m, const EigsOptions& opts) {
  if (m.dim() < 2) throw Error("gap needs dim >= 2");
  auto r = eigs_lowest(m, 2, opts);
  return r.eigenvalues[1] - r.eigenvalues[0];
}

namespace {

// Two lowest eigenvalues of a PathOperator at s, dense or warm-started Krylov.
class SweepEvaluator {
 public:
  SweepEvaluator(PathOperator& op, const SweepOptions& opts)
      : op_(op), opts_(opts), dense_(op.dim() <= opts.dense_threshold) {}

  std::pair<double, double> lowest_two(double s) {
    if (dense_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op_.dense(s),
                                                        Eigen::EigenvaluesOnly);
      return {es.eigenvalues()[0], es.eigenvalues()[1]};
    }
    op_.set_s(s);
    LanczosOptions lopts;
    lopts.k = 2;
    lopts.block = 3;
    lopts.max_subspace = 36;
    lopts.tol_rel = opts_.tol_rel;
    MatVecFn<double> apply = [this](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      op_.apply(x, y);
    };
    auto res = lanczos_lowest<double>(op_.dim(), apply, lopts, warm_);
    if (!res.converged)
      throw NonConvergence("sweep eigensolver did not converge at s=" + std::to_string(s),
                           res.residuals.empty() ? -1.0 : res.residuals.back());
    warm_ = res.vectors;  // continuity of eigenstates along the sweep
    return {res.values[0], res.values[1]};
  }

  double gap_at(double s) {
    auto [e0, e1] = lowest_two(s);
    last_e0_ = e0;
    return e1 - e0;
  }

  double last_e0() const { return last_e0_; }

 private:
  PathOperator& op_;
  SweepOptions opts_;
  bool dense_;
  Eigen::MatrixXd warm_;
  double last_e0_ = 0.0;
};

// Golden-section minimization on [a, b]; ties keep the left subinterval so a
// flat gap reports the left edge.  Returns the best (s, value) seen.
template <typename F>
std::pair<double, double> golden_refine(F&& f, double a, double b, double fa, double fb,
                                        double resolution) {
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_s = a, best_v = fa;
  auto consider = [&](double s, double v) {
    if (v < best_v || (v == best_v && s < best_s)) {
      best_v = v;
      best_s = s;
    }
  };
  consider(b, fb);
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > resolution) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return {best_s, best_v};
}

}  // namespace

MinGapResult min_gap_sweep(const InterpolationPath& path, std::optional<ParitySector> sector,
                           const SweepOptions& opts) {
  if (opts.grid_points < 3) throw Error("sweep needs at least 3 grid points");
  PathOperator op(path, sector);
  SweepEvaluator eval(op, opts);

  const int G = opts.grid_points;
  std::vector<double> s(static_cast<std::size_t>(G)), g(static_cast<std::size_t>(G));
  for (int i = 0; i < G; ++i) {
    s[static_cast<std::size_t>(i)] = static_cast<double>(i) / (G - 1);
    g[static_cast<std::size_t>(i)] = eval.gap_at(s[static_cast<std::size_t>(i)]);
  }

  // grid-local minima (boundaries count)
  std::vector<int> minima;
  for (int i = 0; i < G; ++i) {
    bool left_ok = (i == 0) || g[static_cast<std::size_t>(i)] <= g[static_cast<std::size_t>(i - 1)];
    bool right_ok = (i == G - 1) || g[static_cast<std::size_t>(i)] <= g[static_cast<std::size_t>(i + 1)];
    if (left_ok && right_ok) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](int a, int b) { return g[static_cast<std::size_t>(a)] < g[static_cast<std::size_t>(b)]; });

  MinGapResult result;
  double best_of_grid = g[static_cast<std::size_t>(minima.front())];
  std::vector<int> to_refine{minima.front()};
  for (std::size_t i = 1; i < minima.size(); ++i) {
    int idx = minima[i];
    if (g[static_cast<std::size_t>(idx)] <= best_of_grid * (1.0 + opts.near_tie_rel) + 1e-14) {
      result.multiple_minima_warning = true;
      to_refine.push_back(idx);
    }
  }

  double best_s = s[static_cast<std::size_t>(minima.front())];
  double best_v = best_of_grid;
  for (int idx : to_refine) {
    int lo = std::max(0, idx - 1), hi = std::min(G - 1, idx + 1);
    auto f = [&](double x) { return eval.gap_at(x); };
    auto [rs, rv] = golden_refine(f, s[static_cast<std::size_t>(lo)], s[static_cast<std::size_t>(hi)],
                                  g[static_cast<std::size_t>(lo)], g[static_cast<std::size_t>(hi)],
                                  opts.s_resolution);
    if (rv < best_v || (rv == best_v && rs < best_s)) {
      best_v = rv;
      best_s = rs;
    }
  }

  result.s_star = best_s;
  result.gap_min = best_v;

  if (sector) {
    auto [eps0, eps1] = eval.lowest_two(best_s);
    result.sector_gap = eps1 - eps0;
    result.eps0_sector = eps0;
    // ground energy of the complementary sector at s*
    ParitySector other{sector->n, -sector->parity};
    PathOperator op_other(path, other);
    SweepEvaluator eval_other(op_other, opts);
    auto [o0, o1] = eval_other.lowest_two(best_s);
    double e0_full = std::min(eps0, o0);
    result.e0_full = e0_full;
    double tol = 1e-10 * std::max(1.0, op.norm_upper_bound(best_s));
    result.global_flag = e0_full < eps0 - tol;
  }
  return result;
}

double first_order_gap_derivative(const HermitianMatrix& h0, const HermitianMatrix& v) {
  if (h0.dim() != v.dim()) throw Error("dimension mismatch");
  Index dim = h0.dim();
  if (dim < 2) throw Error("need dim >= 2");
  const double degeneracy_tol = 1e-8;

  Eigen::MatrixXcd d = h0.to_dense_complex();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
  const auto& ev = es.eigenvalues();
  if (ev[1] - ev[0] <= degeneracy_tol)
    throw DegeneracyError("ground state is degenerate");
  if (dim >= 3 && ev[2] - ev[1] <= degeneracy_tol)
    throw DegeneracyError("first excited state is degenerate");

  Eigen::VectorXcd psi0 = es.eigenvectors().col(0);
  Eigen::VectorXcd psi1 = es.eigenvectors().col(1);
  Eigen::VectorXcd v0(dim), v1(dim);
  v.apply(psi0, v0);
  v.apply(psi1, v1);
  return (psi1.dot(v1) - psi0.dot(v0)).real();
}

}  // namespace stoq
