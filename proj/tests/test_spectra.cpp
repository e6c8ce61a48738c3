#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "stoqlab/anneal.hpp"
#include "stoqlab/experiments.hpp"
#include "stoqlab/spectra.hpp"
#include "stoqlab/stoquastize.hpp"

using namespace stoq;

namespace {

HermitianMatrix random_sparse_symmetric(Index dim, int per_row, RngStream& rng) {
  std::vector<Eigen::Triplet<double>> tr;
  for (Index i = 0; i < dim; ++i) {
    tr.emplace_back(i, i, rng.uniform_sym());
    for (int t = 0; t < per_row; ++t) {
      Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(dim)));
      if (j == i) continue;
      double v = rng.uniform_sym();
      tr.emplace_back(i, j, v);
      tr.emplace_back(j, i, v);
    }
  }
  return HermitianMatrix::sparse(dim, tr);
}

}  // namespace

TEST_CASE("eigs_lowest dense examples") {
  Eigen::MatrixXd x(2, 2);
  x << 0, -1, -1, 0;
  auto r = eigs_lowest(HermitianMatrix::dense(x), 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(r.method == EigMethod::Dense);
  CHECK(r.residual_norms[0] <= 1e-12);

  Eigen::MatrixXd d = Eigen::Vector3d(3.0, 1.0, 2.0).asDiagonal();
  auto rd = eigs_lowest(HermitianMatrix::dense(d), 2);
  CHECK(rd.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(rd.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("eigs_lowest: three-vertex path Laplacian") {
  // characteristic polynomial gives {0, 1, 3}
  Eigen::MatrixXd l(3, 3);
  l << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  auto r = eigs_lowest(HermitianMatrix::dense(l), 3);
  CHECK(r.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(r.eigenvalues[2] == doctest::Approx(3.0));
}

TEST_CASE("gap examples") {
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(gap(HermitianMatrix::dense(x)) == doctest::Approx(2.0));
  Eigen::MatrixXd d = Eigen::Vector3d(5.0, 5.0, 7.0).asDiagonal();
  CHECK(gap(HermitianMatrix::dense(d)) == doctest::Approx(0.0).epsilon(1e-12));

  RngStream rng(3, 0);
  HermitianMatrix h8 = sample_wigner(8, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h8.to_dense_real(), Eigen::EigenvaluesOnly);
  CHECK(std::abs(gap(h8) - (es.eigenvalues()[1] - es.eigenvalues()[0])) <= 1e-10);
}

TEST_CASE("krylov and dense routes agree on random sparse matrices") {
  RngStream rng(101, 0);
  EigsOptions dense_opts;
  dense_opts.method = EigMethod::Dense;
  EigsOptions krylov_opts;
  krylov_opts.method = EigMethod::Krylov;
  for (int t = 0; t < 60; ++t) {
    Index dim = 40 + static_cast<Index>(rng.below(360));
    HermitianMatrix m = random_sparse_symmetric(dim, 4, rng);
    auto rd = eigs_lowest(m, 2, dense_opts);
    auto rk = eigs_lowest(m, 2, krylov_opts);
    double scale = std::max(1.0, std::abs(rd.eigenvalues[0]));
    CHECK(std::abs(rd.eigenvalues[0] - rk.eigenvalues[0]) <= 1e-8 * scale);
    CHECK(std::abs(rd.eigenvalues[1] - rk.eigenvalues[1]) <= 1e-8 * scale);
    CHECK(rk.residual_norms[0] <= 1e-8 * std::max(1.0, m.norm_upper_bound()));
  }
}

TEST_CASE("krylov resolves degenerate ground spaces") {
  // diagonal with a triple ground state; block start must find copies
  Index dim = 200;
  std::vector<Eigen::Triplet<double>> tr;
  for (Index i = 0; i < dim; ++i) tr.emplace_back(i, i, i < 3 ? -5.0 : -4.0 + 0.01 * i);
  HermitianMatrix m = HermitianMatrix::sparse(dim, tr);
  EigsOptions opts;
  opts.method = EigMethod::Krylov;
  auto r = eigs_lowest(m, 2, opts);
  CHECK(r.eigenvalues[0] == doctest::Approx(-5.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(-5.0));
}

TEST_CASE("min gap of the single-qubit crossing path") {
  // (1-s)(-X) + sZ has gap 2 sqrt(s^2 + (1-s)^2), minimized at s = 1/2
  PauliHamiltonian driver(1), catalyst(1), problem(1);
  driver.add("X", -1.0);
  problem.add("Z", 1.0);
  auto path = make_path(driver, catalyst, problem);
  auto r = min_gap_sweep(path, std::nullopt);
  CHECK(r.s_star == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.gap_min == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK_FALSE(r.sector_gap.has_value());
}

TEST_CASE("constant-gap path reports the grid start") {
  PauliHamiltonian driver(2), catalyst(2), problem(2);
  driver.add("XI", -1.0);
  driver.add("IX", -1.0);
  auto path = make_path(driver, catalyst, problem);
  auto r = min_gap_sweep(path, std::nullopt);
  CHECK(r.s_star <= 1e-5);
  CHECK(r.gap_min == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("sweep matches a brute-force fine scan on a small Max-Cut path") {
  RngStream rng(7, 0);
  MaxCutInstance inst = sample_maxcut(6, rng);
  std::vector<double> alphas = sample_catalyst(inst.edges, CatalystMode::Pm1, rng);
  auto path = maxcut_path(inst, alphas);
  ParitySector sector(6, +1);
  auto r = min_gap_sweep(path, sector);

  // independent oracle: dense scan at ds = 1e-3 with local quadratic refine
  PathOperator op(path, sector);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    double s = i / 1000.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense(s), Eigen::EigenvaluesOnly);
    best = std::min(best, es.eigenvalues()[1] - es.eigenvalues()[0]);
  }
  CHECK(r.gap_min <= best + 1e-12);  // sweep refines below the coarse scan
  CHECK(r.gap_min >= best - 1e-3);
  CHECK(r.sector_gap.has_value());
  CHECK(r.global_flag.has_value());
}

TEST_CASE("sector minimum matches the global ground energy") {
  RngStream rng(11, 0);
  for (int t = 0; t < 10; ++t) {
    MaxCutInstance inst = sample_maxcut(6, rng);
    std::vector<double> alphas = sample_catalyst(inst.edges, CatalystMode::Uniform, rng);
    auto path = maxcut_path(inst, alphas);
    double s = rng.uniform01();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(
        hamiltonian_at(path, s).to_dense_real(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> plus(
        hamiltonian_at(path, s, ParitySector(6, +1)).to_dense_real(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> minus(
        hamiltonian_at(path, s, ParitySector(6, -1)).to_dense_real(), Eigen::EigenvaluesOnly);
    double e0 = full.eigenvalues()[0];
    CHECK(std::min(plus.eigenvalues()[0], minus.eigenvalues()[0]) ==
          doctest::Approx(e0).epsilon(1e-10));
  }
}

TEST_CASE("krylov sweep path agrees with the dense sweep") {
  RngStream rng(13, 0);
  MaxCutInstance inst = sample_maxcut(8, rng);
  std::vector<double> alphas = sample_catalyst(inst.edges, CatalystMode::Pm1, rng);
  auto path = maxcut_path(inst, alphas);
  ParitySector sector(8, +1);
  SweepOptions dense_opts;
  dense_opts.dense_threshold = 1 << 12;
  SweepOptions krylov_opts;
  krylov_opts.dense_threshold = 1;  // force the warm-started Krylov route
  auto rd = min_gap_sweep(path, sector, dense_opts);
  auto rk = min_gap_sweep(path, sector, krylov_opts);
  CHECK(std::abs(rd.gap_min - rk.gap_min) <= 1e-7);
  CHECK(std::abs(rd.s_star - rk.s_star) <= 1e-3);
}

TEST_CASE("first-order gap derivative examples") {
  PauliHamiltonian hx(1);
  hx.add("X", -1.0);
  HermitianMatrix h0 = build_matrix(hx);
  PauliHamiltonian vx(1);
  vx.add("X", 1.0);
  CHECK(first_order_gap_derivative(h0, build_matrix(vx)) == doctest::Approx(-2.0));

  PauliHamiltonian vi(1);
  vi.add("I", 1.0);
  CHECK(first_order_gap_derivative(h0, build_matrix(vi)) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("first-order derivative matches central finite differences") {
  RngStream rng(17, 0);
  int done = 0;
  while (done < 25) {
    int N = 8 + static_cast<int>(rng.below(25));
    HermitianMatrix h0 = design_matrix(sample_wigner(N, rng));  // stoquastic base
    Eigen::MatrixXd v(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) v(i, j) = rng.uniform01();
    Eigen::MatrixXd vsym = 0.5 * (v + v.transpose());
    HermitianMatrix vm = HermitianMatrix::dense(vsym);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0.to_dense_real(),
                                                      Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[1] - es.eigenvalues()[0] < 5e-2) continue;
    if (es.eigenvalues()[2] - es.eigenvalues()[1] < 5e-2) continue;

    double analytic = first_order_gap_derivative(h0, vm);
    double eps = 1e-4;
    Eigen::MatrixXd hplus = h0.to_dense_real() + eps * vsym;
    Eigen::MatrixXd hminus = h0.to_dense_real() - eps * vsym;
    double fd = (gap(HermitianMatrix::dense(hplus)) - gap(HermitianMatrix::dense(hminus))) /
                (2.0 * eps);
    CHECK(std::abs(analytic - fd) <= 1e-4 * std::max(1.0, std::abs(analytic)));
    ++done;
  }
}

TEST_CASE("degenerate inputs are rejected") {
  Eigen::MatrixXd d = Eigen::Vector3d(0.0, 0.0, 1.0).asDiagonal();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(first_order_gap_derivative(HermitianMatrix::dense(d),
                                             HermitianMatrix::dense(v)),
                  DegeneracyError);
}

TEST_CASE("de-signing never lowers the gap of X-diagonal Hamiltonians") {
  RngStream rng(19, 0);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng.below(7));
    PauliHamiltonian h = sample_xdiag(n, rng);
    Eigen::VectorXd spec = xdiag_spectrum(h);
    Eigen::VectorXd spec_d = xdiag_spectrum(design_pauli(h, n));
    CHECK(spec_d[1] - spec_d[0] >= spec[1] - spec[0] - 1e-10);
  }
}

TEST_CASE("Walsh-Hadamard spectrum matches dense diagonalization") {
  RngStream rng(23, 0);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + static_cast<int>(rng.below(4));
    PauliHamiltonian h = sample_xdiag(n, rng);
    Eigen::VectorXd fast = xdiag_spectrum(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_matrix(h).to_dense_real(),
                                                      Eigen::EigenvaluesOnly);
    for (Index i = 0; i < fast.size(); ++i)
      CHECK(fast[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-10));
  }
}
