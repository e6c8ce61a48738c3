#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stoqlab/errors.hpp"
#include "stoqlab/pauli.hpp"

namespace stoq {

using Index = Eigen::Index;
using Complex = std::complex<double>;

// Dense/sparse, real/complex Hermitian operator in a labeled basis.  The
// constructor verifies H = H^dagger to within 1e-12 entrywise; sparse storage
// is pruned of explicit zeros.
class HermitianMatrix {
 public:
  using DenseR = Eigen::MatrixXd;
  using DenseC = Eigen::MatrixXcd;
  using SparseR = Eigen::SparseMatrix<double>;
  using SparseC = Eigen::SparseMatrix<Complex>;
  using Storage = std::variant<DenseR, DenseC, SparseR, SparseC>;

  static constexpr double kHermiticityTol = 1e-12;

  static HermitianMatrix dense(DenseR m);
  static HermitianMatrix dense(DenseC m);
  static HermitianMatrix sparse(Index dim, const std::vector<Eigen::Triplet<double>>& entries);
  static HermitianMatrix sparse(Index dim, const std::vector<Eigen::Triplet<Complex>>& entries);
  static HermitianMatrix diagonal(const Eigen::VectorXd& d);

  Index dim() const;
  bool is_dense() const;
  bool is_real() const;

  Complex entry(Index i, Index j) const;
  double trace() const;  // real for Hermitian input
  double max_abs_offdiag() const;
  double max_abs_entry() const;
  // Cheap upper bound on the operator norm (maximum absolute row sum).
  double norm_upper_bound() const;
  Index offdiag_nonzeros() const;

  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;  // real storage only

  DenseC to_dense_complex() const;
  DenseR to_dense_real() const;  // throws ComplexEntries if any entry has imag != 0

  const Storage& storage() const { return storage_; }

  // Visits every stored off-diagonal entry once as f(i, j, Complex value).
  // Dense storage visits all i != j positions.
  template <typename F>
  void for_each_offdiag(F&& f) const;

  const std::vector<std::string>& basis_labels() const { return basis_labels_; }
  void set_basis_labels(std::vector<std::string> labels);

 private:
  explicit HermitianMatrix(Storage s);
  void check_hermitian() const;

  Storage storage_;
  std::vector<std::string> basis_labels_;
};

template <typename F>
void HermitianMatrix::for_each_offdiag(F&& f) const {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, DenseC>) {
          for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i)
              if (i != j) f(i, j, Complex(m(i, j)));
        } else {
          for (Index j = 0; j < m.outerSize(); ++j)
            for (typename T::InnerIterator it(m, j); it; ++it)
              if (it.row() != it.col()) f(it.row(), it.col(), Complex(it.value()));
        }
      },
      storage_);
}

// Global bit-flip parity sector of an n-qubit space.  Representatives are the
// bitstrings z with z < complement(z) numerically, i.e. z in [0, 2^{n-1});
// row r of the sector corresponds to (|r> + parity |r-bar>)/sqrt(2).
struct ParitySector {
  int n;
  int parity;  // +1 or -1

  ParitySector(int n_, int parity_);

  Index dim() const { return Index(1) << (n - 1); }
  std::uint64_t complement(std::uint64_t z) const {
    return z ^ ((std::uint64_t(1) << n) - 1);
  }
  bool is_representative(std::uint64_t z) const { return z < (std::uint64_t(1) << (n - 1)); }
  Index row_of(std::uint64_t z) const {
    return static_cast<Index>(is_representative(z) ? z : complement(z));
  }
  std::uint64_t representative(Index row) const { return static_cast<std::uint64_t>(row); }
};

struct BuildOptions {
  int max_qubits = 24;
  // Dense realization below this dimension, sparse at or above it.
  Index dense_threshold = Index(1) << 12;
};

// Matrix of the Pauli sum in the computational Z basis (qubit 0 = most
// significant bit).
HermitianMatrix build_matrix(const PauliHamiltonian& h, const BuildOptions& opts = {});

// True iff every off-diagonal entry has real part <= tol and |imag| <= tol.
bool is_stoquastic(const HermitianMatrix& m, double tol);

// Restriction of h to the given parity sector; throws SymmetryViolation if
// some term does not commute with P = prod_i X_i.
HermitianMatrix parity_project(const PauliHamiltonian& h, const ParitySector& sector,
                               const BuildOptions& opts = {});

// Diagonal of h restricted to sector representatives (h must commute with P
// and have a diagonal matrix realization for the values to be meaningful as
// classical energies; used for solution lookup in annealing).
Eigen::VectorXd sector_diagonal(const PauliHamiltonian& h, const ParitySector& sector);

}  // namespace stoq
