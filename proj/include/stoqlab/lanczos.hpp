#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace stoq {

struct LanczosOptions {
  int k = 1;
  double tol_rel = 1e-9;  // per-pair residual <= tol_rel * norm estimate
  int block = 0;          // 0 -> k + 1
  int max_subspace = 0;   // 0 -> auto
  int max_restarts = 500;
  std::uint64_t seed = 0x1c5a37;
};

template <typename Scalar>
struct LanczosResult {
  Eigen::VectorXd values;  // k lowest, ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  std::vector<double> residuals;
  double norm_estimate = 0.0;
  int matvecs = 0;
  bool converged = false;
};

template <typename Scalar>
using MatVecFn = std::function<void(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>&,
                                    Eigen::Matrix<Scalar, Eigen::Dynamic, 1>&)>;

// Lowest-k eigenpairs of a Hermitian operator given only matrix-vector
// products: block Krylov expansion with full reorthogonalization and thick
// Rayleigh-Ritz restarts.  Residuals are computed explicitly from cached
// A*V columns, so every reported pair carries an honest certificate.
template <typename Scalar>
LanczosResult<Scalar> lanczos_lowest(
    Eigen::Index dim, const MatVecFn<Scalar>& apply, const LanczosOptions& opts,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& warm_start =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>());

extern template LanczosResult<double> lanczos_lowest<double>(
    Eigen::Index, const MatVecFn<double>&, const LanczosOptions&,
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&);
extern template LanczosResult<std::complex<double>> lanczos_lowest<std::complex<double>>(
    Eigen::Index, const MatVecFn<std::complex<double>>&, const LanczosOptions&,
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&);

}  // namespace stoq
