#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>

#include "stoqlab/hermitian_matrix.hpp"
#include "stoqlab/pauli.hpp"

namespace stoq {

// Three-term interpolating Hamiltonian
//   H(s) = (1-s) H_D + s(1-s) H_C + s H_I ,
// so H(0) = H_D and H(1) = H_I with the catalyst vanishing at both ends.
struct InterpolationPath {
  PauliHamiltonian driver;
  PauliHamiltonian catalyst;
  PauliHamiltonian problem;

  int qubit_count() const { return driver.qubit_count(); }
  bool commutes_with_global_flip() const {
    return driver.commutes_with_global_flip() && catalyst.commutes_with_global_flip() &&
           problem.commutes_with_global_flip();
  }
};

InterpolationPath make_path(PauliHamiltonian driver, PauliHamiltonian catalyst,
                            PauliHamiltonian problem);

inline double schedule_driver(double s) { return 1.0 - s; }
inline double schedule_catalyst(double s) { return s * (1.0 - s); }
inline double schedule_problem(double s) { return s; }

HermitianMatrix hamiltonian_at(const InterpolationPath& path, double s,
                               const BuildOptions& opts = {});
HermitianMatrix hamiltonian_at(const InterpolationPath& path, double s,
                               const ParitySector& sector, const BuildOptions& opts = {});

// Fast evaluator for sweeps and time evolution: the three component matrices
// (optionally parity-projected) share one compressed column pattern, and the
// per-s values are combined into a scratch array.  Real symmetric paths only.
class PathOperator {
 public:
  PathOperator(const InterpolationPath& path, std::optional<ParitySector> sector);

  Index dim() const { return dim_; }

  void set_s(double s);
  double current_s() const { return s_; }

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;

  Eigen::MatrixXd dense(double s) const;
  double norm_upper_bound(double s) const;

 private:
  void combine_into(double s, Eigen::VectorXd& out) const;

  Index dim_ = 0;
  double s_ = -1.0;
  std::vector<Index> outer_;   // size dim+1
  std::vector<Index> inner_;   // row indices per column
  Eigen::VectorXd vd_, vc_, vp_;  // driver / catalyst / problem values
  Eigen::VectorXd vals_;          // combined values at current s
  double nd_ = 0.0, nc_ = 0.0, np_ = 0.0;  // per-component norm bounds
};

}  // namespace stoq
