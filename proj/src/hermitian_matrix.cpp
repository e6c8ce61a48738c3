#include "stoqlab/hermitian_matrix.hpp"

#include <cmath>

namespace stoq {

HermitianMatrix::HermitianMatrix(Storage s) : storage_(std::move(s)) { check_hermitian(); }

HermitianMatrix HermitianMatrix::dense(DenseR m) {
  if (m.rows() != m.cols()) throw Error("matrix must be square");
  return HermitianMatrix(Storage(std::move(m)));
}

HermitianMatrix HermitianMatrix::dense(DenseC m) {
  if (m.rows() != m.cols()) throw Error("matrix must be square");
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) return HermitianMatrix(Storage(DenseR(m.real())));
  return HermitianMatrix(Storage(std::move(m)));
}

namespace {

template <typename Scalar>
Eigen::SparseMatrix<Scalar> sparse_from_triplets(Index dim,
                                                 const std::vector<Eigen::Triplet<Scalar>>& entries) {
  Eigen::SparseMatrix<Scalar> m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  m.prune([](Index, Index, const Scalar& v) { return v != Scalar(0); });
  m.makeCompressed();
  return m;
}

}  // namespace

HermitianMatrix HermitianMatrix::sparse(Index dim, const std::vector<Eigen::Triplet<double>>& entries) {
  return HermitianMatrix(Storage(sparse_from_triplets(dim, entries)));
}

HermitianMatrix HermitianMatrix::sparse(Index dim, const std::vector<Eigen::Triplet<Complex>>& entries) {
  auto m = sparse_from_triplets(dim, entries);
  bool real = true;
  for (Index j = 0; j < m.outerSize() && real; ++j)
    for (SparseC::InnerIterator it(m, j); it; ++it)
      if (it.value().imag() != 0.0) {
        real = false;
        break;
      }
  if (!real) return HermitianMatrix(Storage(std::move(m)));
  SparseR r(dim, dim);
  std::vector<Eigen::Triplet<double>> tr;
  tr.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseC::InnerIterator it(m, j); it; ++it)
      tr.emplace_back(it.row(), it.col(), it.value().real());
  return sparse(dim, tr);
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& d) {
  std::vector<Eigen::Triplet<double>> tr;
  tr.reserve(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i)
    if (d[i] != 0.0) tr.emplace_back(i, i, d[i]);
  return sparse(d.size(), tr);
}

void HermitianMatrix::check_hermitian() const {
  double defect = std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR>) {
          return (m - m.transpose()).cwiseAbs().maxCoeff();
        } else if constexpr (std::is_same_v<T, DenseC>) {
          return (m - m.adjoint()).cwiseAbs().maxCoeff();
        } else {
          using Scalar = typename T::Scalar;
          double worst = 0.0;
          for (Index j = 0; j < m.outerSize(); ++j)
            for (typename T::InnerIterator it(m, j); it; ++it) {
              Scalar other = m.coeff(it.col(), it.row());
              double d;
              if constexpr (std::is_same_v<Scalar, double>)
                d = std::abs(it.value() - other);
              else
                d = std::abs(it.value() - std::conj(other));
              worst = std::max(worst, d);
            }
          return worst;
        }
      },
      storage_);
  if (defect > kHermiticityTol)
    throw Error("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

Index HermitianMatrix::dim() const {
  return std::visit([](const auto& m) { return m.rows(); }, storage_);
}

bool HermitianMatrix::is_dense() const {
  return std::holds_alternative<DenseR>(storage_) || std::holds_alternative<DenseC>(storage_);
}

bool HermitianMatrix::is_real() const {
  return std::holds_alternative<DenseR>(storage_) || std::holds_alternative<SparseR>(storage_);
}

Complex HermitianMatrix::entry(Index i, Index j) const {
  return std::visit(
      [&](const auto& m) -> Complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, DenseC>)
          return Complex(m(i, j));
        else
          return Complex(m.coeff(i, j));
      },
      storage_);
}

double HermitianMatrix::trace() const {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR>)
          return m.trace();
        else if constexpr (std::is_same_v<T, DenseC>)
          return m.trace().real();
        else if constexpr (std::is_same_v<T, SparseR>) {
          double t = 0;
          for (Index i = 0; i < m.rows(); ++i) t += m.coeff(i, i);
          return t;
        } else {
          double t = 0;
          for (Index i = 0; i < m.rows(); ++i) t += m.coeff(i, i).real();
          return t;
        }
      },
      storage_);
}

double HermitianMatrix::max_abs_offdiag() const {
  double worst = 0.0;
  for_each_offdiag([&](Index, Index, Complex v) { worst = std::max(worst, std::abs(v)); });
  return worst;
}

double HermitianMatrix::max_abs_entry() const {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, DenseC>) {
          return m.cwiseAbs().maxCoeff();
        } else {
          double worst = 0.0;
          for (Index j = 0; j < m.outerSize(); ++j)
            for (typename T::InnerIterator it(m, j); it; ++it)
              worst = std::max(worst, std::abs(it.value()));
          return worst;
        }
      },
      storage_);
}

double HermitianMatrix::norm_upper_bound() const {
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(dim());
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, DenseC>) {
          for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i) rowsum[i] += std::abs(m(i, j));
        } else {
          for (Index j = 0; j < m.outerSize(); ++j)
            for (typename T::InnerIterator it(m, j); it; ++it)
              rowsum[it.row()] += std::abs(it.value());
        }
      },
      storage_);
  return rowsum.size() ? rowsum.maxCoeff() : 0.0;
}

Index HermitianMatrix::offdiag_nonzeros() const {
  Index count = 0;
  for_each_offdiag([&](Index, Index, Complex v) {
    if (v != Complex(0)) ++count;
  });
  return count;
}

void HermitianMatrix::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, SparseR>) {
          y.resize(x.size());
          y.real() = m * x.real().eval();
          y.imag() = m * x.imag().eval();
        } else {
          y = m * x;
        }
      },
      storage_);
}

void HermitianMatrix::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR> || std::is_same_v<T, SparseR>)
          y = m * x;
        else
          throw ComplexEntries("real apply on complex matrix");
      },
      storage_);
}

HermitianMatrix::DenseC HermitianMatrix::to_dense_complex() const {
  return std::visit(
      [](const auto& m) -> DenseC {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DenseR>)
          return m.template cast<Complex>();
        else if constexpr (std::is_same_v<T, DenseC>)
          return m;
        else if constexpr (std::is_same_v<T, SparseR>)
          return DenseR(m).cast<Complex>();
        else
          return DenseC(m);
      },
      storage_);
}

HermitianMatrix::DenseR HermitianMatrix::to_dense_real() const {
  if (!is_real()) throw ComplexEntries("matrix has complex entries");
  if (std::holds_alternative<DenseR>(storage_)) return std::get<DenseR>(storage_);
  return DenseR(std::get<SparseR>(storage_));
}

void HermitianMatrix::set_basis_labels(std::vector<std::string> labels) {
  if (!labels.empty() && static_cast<Index>(labels.size()) != dim())
    throw Error("basis label count does not match dimension");
  basis_labels_ = std::move(labels);
}

ParitySector::ParitySector(int n_, int parity_) : n(n_), parity(parity_) {
  if (n < 1 || n > 63) throw Error("sector qubit count out of range");
  if (parity != 1 && parity != -1) throw Error("parity must be +1 or -1");
}

HermitianMatrix build_matrix(const PauliHamiltonian& h, const BuildOptions& opts) {
  int n = h.qubit_count();
  if (n > opts.max_qubits)
    throw DimensionOverflow("qubit count " + std::to_string(n) + " exceeds configured maximum " +
                            std::to_string(opts.max_qubits));
  Index dim = Index(1) << n;
  bool complex_entries = false;
  for (const auto& [p, c] : h.terms())
    if (p.y_count() & 1) complex_entries = true;

  bool use_dense = dim < opts.dense_threshold;
  if (use_dense) {
    if (!complex_entries) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
      for (const auto& [p, c] : h.terms()) {
        std::uint64_t mask = p.flip_mask();
        for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z)
          m(static_cast<Index>(z ^ mask), static_cast<Index>(z)) += c * p.amplitude(z).real();
      }
      return HermitianMatrix::dense(std::move(m));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, c] : h.terms()) {
      std::uint64_t mask = p.flip_mask();
      for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z)
        m(static_cast<Index>(z ^ mask), static_cast<Index>(z)) += c * p.amplitude(z);
    }
    return HermitianMatrix::dense(std::move(m));
  }

  if (!complex_entries) {
    std::vector<Eigen::Triplet<double>> tr;
    tr.reserve(h.term_count() * static_cast<std::size_t>(dim));
    for (const auto& [p, c] : h.terms()) {
      std::uint64_t mask = p.flip_mask();
      for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z)
        tr.emplace_back(static_cast<Index>(z ^ mask), static_cast<Index>(z),
                        c * p.amplitude(z).real());
    }
    return HermitianMatrix::sparse(dim, tr);
  }
  std::vector<Eigen::Triplet<Complex>> tr;
  tr.reserve(h.term_count() * static_cast<std::size_t>(dim));
  for (const auto& [p, c] : h.terms()) {
    std::uint64_t mask = p.flip_mask();
    for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z)
      tr.emplace_back(static_cast<Index>(z ^ mask), static_cast<Index>(z), c * p.amplitude(z));
  }
  return HermitianMatrix::sparse(dim, tr);
}

bool is_stoquastic(const HermitianMatrix& m, double tol) {
  bool ok = true;
  m.for_each_offdiag([&](Index, Index, Complex v) {
    if (v.real() > tol || std::abs(v.imag()) > tol) ok = false;
  });
  return ok;
}

HermitianMatrix parity_project(const PauliHamiltonian& h, const ParitySector& sector,
                               const BuildOptions& opts) {
  int n = h.qubit_count();
  if (n != sector.n) throw Error("sector qubit count mismatch");
  if (n > opts.max_qubits)
    throw DimensionOverflow("qubit count exceeds configured maximum");
  // Symbolic commutation check: distinct Pauli strings are linearly
  // independent, so [h, P] = 0 exactly when every term commutes with P.
  for (const auto& [p, c] : h.terms())
    if (!p.commutes_with_global_flip())
      throw SymmetryViolation("term " + p.str() + " anticommutes with the global bit-flip");

  Index dim = sector.dim();
  std::uint64_t full = (std::uint64_t(1) << n) - 1;
  double par = sector.parity;
  bool complex_entries = false;
  for (const auto& [p, c] : h.terms())
    if (p.y_count() & 1) complex_entries = true;

  // Sector entry (u, w) for representatives u, w: A(u, w) + parity * A(u, w-bar),
  // realized one write per (term, column).
  auto emit = [&](auto&& sink) {
    for (const auto& [p, c] : h.terms()) {
      std::uint64_t mask = p.flip_mask();
      for (std::uint64_t w = 0; w < static_cast<std::uint64_t>(dim); ++w) {
        std::uint64_t u = w ^ mask;
        if (u < static_cast<std::uint64_t>(dim)) {
          sink(static_cast<Index>(u), static_cast<Index>(w), c * p.amplitude(w));
        } else {
          sink(static_cast<Index>(u ^ full), static_cast<Index>(w),
               par * c * p.amplitude(w ^ full));
        }
      }
    }
  };

  bool use_dense = dim < opts.dense_threshold;
  if (use_dense && !complex_entries) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    emit([&](Index i, Index j, Complex v) { m(i, j) += v.real(); });
    return HermitianMatrix::dense(std::move(m));
  }
  if (use_dense) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    emit([&](Index i, Index j, Complex v) { m(i, j) += v; });
    return HermitianMatrix::dense(std::move(m));
  }
  if (!complex_entries) {
    std::vector<Eigen::Triplet<double>> tr;
    tr.reserve(h.term_count() * static_cast<std::size_t>(dim));
    emit([&](Index i, Index j, Complex v) { tr.emplace_back(i, j, v.real()); });
    return HermitianMatrix::sparse(dim, tr);
  }
  std::vector<Eigen::Triplet<Complex>> tr;
  tr.reserve(h.term_count() * static_cast<std::size_t>(dim));
  emit([&](Index i, Index j, Complex v) { tr.emplace_back(i, j, v); });
  return HermitianMatrix::sparse(dim, tr);
}

Eigen::VectorXd sector_diagonal(const PauliHamiltonian& h, const ParitySector& sector) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(sector.dim());
  for (const auto& [p, c] : h.terms()) {
    if (p.flip_mask() != 0) continue;  // off-diagonal term, no diagonal weight
    for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(sector.dim()); ++z)
      d[static_cast<Index>(z)] += c * p.amplitude(z).real();
  }
  return d;
}

}  // namespace stoq
