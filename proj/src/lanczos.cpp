#include "stoqlab/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stoq {

namespace {

template <typename Scalar>
Scalar random_entry(std::mt19937_64& eng) {
  auto u = [&] { return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0; };
  if constexpr (std::is_same_v<Scalar, double>)
    return u();
  else
    return Scalar(u(), u());
}

// Orthogonalize w against the first m columns of V (two MGS passes); returns
// the surviving norm relative to the input norm.
template <typename Mat, typename Vec>
double orthogonalize(const Mat& V, Eigen::Index m, Vec& w) {
  double before = w.norm();
  if (before == 0.0) return 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < m; ++j) {
      auto coef = V.col(j).dot(w);
      w -= V.col(j) * coef;
    }
  }
  return w.norm() / before;
}

}  // namespace

template <typename Scalar>
LanczosResult<Scalar> lanczos_lowest(
    Eigen::Index dim, const MatVecFn<Scalar>& apply, const LanczosOptions& opts,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& warm_start) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Real = double;

  const int k = opts.k;
  if (k < 1 || k > dim) throw std::invalid_argument("lanczos: need 1 <= k <= dim");
  const Eigen::Index block = std::min<Eigen::Index>(dim, opts.block > 0 ? opts.block : k + 1);
  const Eigen::Index m_max = std::min<Eigen::Index>(
      dim, opts.max_subspace > 0 ? opts.max_subspace
                                 : std::max<Eigen::Index>(10 * block, 60));
  const Eigen::Index keep = std::min<Eigen::Index>(m_max, 2 * k + 4);

  std::mt19937_64 eng(opts.seed);
  Mat V(dim, m_max), AV(dim, m_max);
  Mat T = Mat::Zero(m_max, m_max);
  Eigen::Index m = 0;  // current subspace size

  LanczosResult<Scalar> result;

  auto append_column = [&](Vec w) -> bool {
    double survived = orthogonalize(V, m, w);
    int tries = 0;
    while (survived < 1e-8 && tries < 5) {
      for (Eigen::Index i = 0; i < dim; ++i) w[i] = random_entry<Scalar>(eng);
      survived = orthogonalize(V, m, w);
      ++tries;
    }
    if (survived < 1e-8) return false;  // subspace exhausted (tiny dim)
    w.normalize();
    V.col(m) = w;
    Vec aw(dim);
    apply(w, aw);
    ++result.matvecs;
    AV.col(m) = aw;
    for (Eigen::Index j = 0; j <= m; ++j) {
      Scalar t = V.col(j).dot(aw);
      T(j, m) = t;
      if constexpr (std::is_same_v<Scalar, double>)
        T(m, j) = t;
      else
        T(m, j) = std::conj(t);
    }
    ++m;
    return true;
  };

  // initial block: warm-start columns then random fill
  for (Eigen::Index j = 0; j < warm_start.cols() && m < block; ++j)
    append_column(warm_start.col(j));
  while (m < block) {
    Vec w(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w[i] = random_entry<Scalar>(eng);
    if (!append_column(std::move(w))) break;
  }

  double best_worst_residual = std::numeric_limits<double>::infinity();
  Eigen::Index expand_cursor = 0;
  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    // grow the block Krylov chain: append A times earlier columns, lowest
    // Ritz directions first after a restart
    while (m < m_max) {
      Eigen::Index src = expand_cursor;
      if (src >= m) break;
      ++expand_cursor;
      if (!append_column(AV.col(src))) break;
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(T.topLeftCorner(m, m));
    const auto& theta = es.eigenvalues();
    result.norm_estimate = std::max({result.norm_estimate, std::abs(theta[0]),
                                     std::abs(theta[m - 1])});
    Eigen::Index r = std::min(keep, m);
    Mat Y = es.eigenvectors().leftCols(r);
    Mat X = V.leftCols(m) * Y;
    Mat AX = AV.leftCols(m) * Y;

    const int kk = static_cast<int>(std::min<Eigen::Index>(k, m));
    std::vector<Real> residuals(static_cast<std::size_t>(kk));
    Real worst = 0.0;
    for (int i = 0; i < kk; ++i) {
      residuals[static_cast<std::size_t>(i)] = (AX.col(i) - theta[i] * X.col(i)).norm();
      worst = std::max(worst, residuals[static_cast<std::size_t>(i)]);
    }
    best_worst_residual = std::min(best_worst_residual, worst);

    double tol = opts.tol_rel * std::max(result.norm_estimate, 1e-300);
    bool full_space = (m >= dim);
    if ((kk == k && worst <= tol) || full_space) {
      result.values = theta.head(k).eval();
      result.vectors = X.leftCols(k);
      result.residuals = residuals;
      result.converged = true;
      return result;
    }

    // thick restart: keep the r lowest Ritz vectors (orthonormal since Y is)
    V.leftCols(r) = X;
    AV.leftCols(r) = AX;
    T.topLeftCorner(r, r) = theta.head(r).asDiagonal();
    m = r;
    expand_cursor = 0;

    if (restart == opts.max_restarts - 1) {
      result.values = theta.head(std::min<Eigen::Index>(k, theta.size())).eval();
      result.vectors = X.leftCols(std::min<Eigen::Index>(k, X.cols()));
      result.residuals = residuals;
      result.converged = false;
    }
  }
  return result;
}

template LanczosResult<double> lanczos_lowest<double>(
    Eigen::Index, const MatVecFn<double>&, const LanczosOptions&,
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&);
template LanczosResult<std::complex<double>> lanczos_lowest<std::complex<double>>(
    Eigen::Index, const MatVecFn<std::complex<double>>&, const LanczosOptions&,
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&);

}  // namespace stoq
