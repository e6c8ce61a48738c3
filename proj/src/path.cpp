#include "stoqlab/path.hpp"

#include <cmath>
#include <map>

namespace stoq {

InterpolationPath make_path(PauliHamiltonian driver, PauliHamiltonian catalyst,
                            PauliHamiltonian problem) {
  int n = driver.qubit_count();
  if (catalyst.qubit_count() != n || problem.qubit_count() != n)
    throw Error("path components must share the qubit count");
  return InterpolationPath{std::move(driver), std::move(catalyst), std::move(problem)};
}

namespace {

PauliHamiltonian combine_terms(const InterpolationPath& path, double s) {
  PauliHamiltonian h = path.driver.scaled(schedule_driver(s));
  h += path.catalyst.scaled(schedule_catalyst(s));
  h += path.problem.scaled(schedule_problem(s));
  return h;
}

}  // namespace

HermitianMatrix hamiltonian_at(const InterpolationPath& path, double s, const BuildOptions& opts) {
  return build_matrix(combine_terms(path, s), opts);
}

HermitianMatrix hamiltonian_at(const InterpolationPath& path, double s, const ParitySector& sector,
                               const BuildOptions& opts) {
  return parity_project(combine_terms(path, s), sector, opts);
}

PathOperator::PathOperator(const InterpolationPath& path, std::optional<ParitySector> sector) {
  BuildOptions opts;
  opts.dense_threshold = 0;  // always sparse internally
  auto realize = [&](const PauliHamiltonian& h) -> HermitianMatrix {
    if (h.term_count() == 0) {
      return HermitianMatrix::sparse(
          sector ? sector->dim() : (Index(1) << path.qubit_count()),
          std::vector<Eigen::Triplet<double>>{});
    }
    return sector ? parity_project(h, *sector, opts) : build_matrix(h, opts);
  };
  HermitianMatrix d = realize(path.driver);
  HermitianMatrix c = realize(path.catalyst);
  HermitianMatrix p = realize(path.problem);
  if (!d.is_real() || !c.is_real() || !p.is_real())
    throw ComplexEntries("path operators must be real symmetric");
  dim_ = d.dim();
  nd_ = d.norm_upper_bound();
  nc_ = c.norm_upper_bound();
  np_ = p.norm_upper_bound();

  // union pattern, column-major; per-column maps keep rows sorted
  std::vector<std::map<Index, std::array<double, 3>>> cols(static_cast<std::size_t>(dim_));
  auto scatter = [&](const HermitianMatrix& h, int slot) {
    const auto& sp = std::get<HermitianMatrix::SparseR>(h.storage());
    for (Index j = 0; j < sp.outerSize(); ++j)
      for (HermitianMatrix::SparseR::InnerIterator it(sp, j); it; ++it)
        cols[static_cast<std::size_t>(it.col())][it.row()][static_cast<std::size_t>(slot)] +=
            it.value();
  };
  scatter(d, 0);
  scatter(c, 1);
  scatter(p, 2);

  Index nnz = 0;
  for (const auto& col : cols) nnz += static_cast<Index>(col.size());
  outer_.resize(static_cast<std::size_t>(dim_) + 1);
  inner_.resize(static_cast<std::size_t>(nnz));
  vd_.resize(nnz);
  vc_.resize(nnz);
  vp_.resize(nnz);
  vals_.resize(nnz);
  Index idx = 0;
  for (Index j = 0; j < dim_; ++j) {
    outer_[static_cast<std::size_t>(j)] = idx;
    for (const auto& [row, v] : cols[static_cast<std::size_t>(j)]) {
      inner_[static_cast<std::size_t>(idx)] = row;
      vd_[idx] = v[0];
      vc_[idx] = v[1];
      vp_[idx] = v[2];
      ++idx;
    }
  }
  outer_[static_cast<std::size_t>(dim_)] = idx;
}

void PathOperator::combine_into(double s, Eigen::VectorXd& out) const {
  out = schedule_driver(s) * vd_ + schedule_catalyst(s) * vc_ + schedule_problem(s) * vp_;
}

void PathOperator::set_s(double s) {
  if (s == s_) return;
  combine_into(s, vals_);
  s_ = s;
}

void PathOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  y.setZero(dim_);
  for (Index j = 0; j < dim_; ++j) {
    double xj = x[j];
    if (xj == 0.0) continue;
    for (Index idx = outer_[static_cast<std::size_t>(j)];
         idx < outer_[static_cast<std::size_t>(j) + 1]; ++idx)
      y[inner_[static_cast<std::size_t>(idx)]] += vals_[idx] * xj;
  }
}

void PathOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  y.setZero(dim_);
  for (Index j = 0; j < dim_; ++j) {
    Complex xj = x[j];
    for (Index idx = outer_[static_cast<std::size_t>(j)];
         idx < outer_[static_cast<std::size_t>(j) + 1]; ++idx)
      y[inner_[static_cast<std::size_t>(idx)]] += vals_[idx] * xj;
  }
}

Eigen::MatrixXd PathOperator::dense(double s) const {
  Eigen::VectorXd vals;
  combine_into(s, vals);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (Index j = 0; j < dim_; ++j)
    for (Index idx = outer_[static_cast<std::size_t>(j)];
         idx < outer_[static_cast<std::size_t>(j) + 1]; ++idx)
      out(inner_[static_cast<std::size_t>(idx)], j) = vals[idx];
  return out;
}

double PathOperator::norm_upper_bound(double s) const {
  return std::abs(schedule_driver(s)) * nd_ + std::abs(schedule_catalyst(s)) * nc_ +
         std::abs(schedule_problem(s)) * np_;
}

}  // namespace stoq
