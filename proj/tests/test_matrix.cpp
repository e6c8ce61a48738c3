#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "stoqlab/hermitian_matrix.hpp"
#include "stoqlab/rng.hpp"

using namespace stoq;

namespace {

// random Pauli Hamiltonian; when `parity_symmetric`, every term has an even
// number of Y and Z factors
PauliHamiltonian random_hamiltonian(int n, int terms, RngStream& rng, bool parity_symmetric) {
  PauliHamiltonian h(n);
  int added = 0;
  while (added < terms) {
    std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
    for (int q = 0; q < n; ++q)
      f[static_cast<std::size_t>(q)] = static_cast<Pauli>(rng.below(4));
    PauliString p(std::move(f));
    if (parity_symmetric && !p.commutes_with_global_flip()) continue;
    h.add(p, rng.uniform_sym());
    ++added;
  }
  return h;
}

std::vector<double> dense_spectrum(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.to_dense_complex(),
                                                     Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace

TEST_CASE("build_matrix: single-qubit definitions") {
  PauliHamiltonian hx(1);
  hx.add("X", 1.0);
  Eigen::MatrixXd mx = build_matrix(hx).to_dense_real();
  CHECK(mx(0, 0) == 0.0);
  CHECK(mx(0, 1) == 1.0);
  CHECK(mx(1, 0) == 1.0);
  CHECK(mx(1, 1) == 0.0);

  PauliHamiltonian hz(1);
  hz.add("Z", 1.0);
  Eigen::MatrixXd mz = build_matrix(hz).to_dense_real();
  CHECK(mz(0, 0) == 1.0);
  CHECK(mz(1, 1) == -1.0);
  CHECK(mz(0, 1) == 0.0);
}

TEST_CASE("build_matrix: ZZ tensor product") {
  PauliHamiltonian h(2);
  h.add("ZZ", 1.0);
  Eigen::MatrixXd m = build_matrix(h).to_dense_real();
  Eigen::VectorXd diag = m.diagonal();
  CHECK(diag[0] == 1.0);
  CHECK(diag[1] == -1.0);
  CHECK(diag[2] == -1.0);
  CHECK(diag[3] == 1.0);
  CHECK(m.cwiseAbs().sum() == 4.0);  // purely diagonal
}

TEST_CASE("build_matrix: qubit 0 occupies the most significant bit") {
  PauliHamiltonian h(2);
  h.add("XI", 1.0);
  Eigen::MatrixXd m = build_matrix(h).to_dense_real();
  CHECK(m(0, 2) == 1.0);  // |00> <-> |10> in (q0 q1) order
  CHECK(m(1, 3) == 1.0);
  CHECK(m(0, 1) == 0.0);
}

TEST_CASE("build_matrix guards") {
  PauliHamiltonian h(5);
  h.add("XXXXX", 1.0);
  BuildOptions opts;
  opts.max_qubits = 4;
  CHECK_THROWS_AS(build_matrix(h, opts), DimensionOverflow);
}

TEST_CASE("hermiticity is verified at construction") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 0.5, 0.0;
  CHECK_THROWS_AS(HermitianMatrix::dense(bad), Error);
}

TEST_CASE("is_stoquastic examples") {
  Eigen::MatrixXd a(2, 2);
  a << 0, -1, -1, 0;
  CHECK(is_stoquastic(HermitianMatrix::dense(a), 0.0));
  Eigen::MatrixXd b(2, 2);
  b << 0, 1, 1, 0;
  CHECK_FALSE(is_stoquastic(HermitianMatrix::dense(b), 0.0));
  Eigen::MatrixXd c = Eigen::Vector2d(3.0, -2.0).asDiagonal();
  CHECK(is_stoquastic(HermitianMatrix::dense(c), 0.0));
}

TEST_CASE("parity projection: single-qubit driver") {
  PauliHamiltonian h(1);
  h.add("X", -1.0);
  Eigen::MatrixXd plus = parity_project(h, ParitySector(1, +1)).to_dense_real();
  REQUIRE(plus.rows() == 1);
  CHECK(plus(0, 0) == doctest::Approx(-1.0));
  Eigen::MatrixXd minus = parity_project(h, ParitySector(1, -1)).to_dense_real();
  CHECK(minus(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("parity projection rejects asymmetric terms") {
  PauliHamiltonian h(2);
  h.add("ZI", 1.0);
  CHECK_THROWS_AS(parity_project(h, ParitySector(2, +1)), SymmetryViolation);
}

TEST_CASE("sector spectra union equals the full spectrum") {
  // spec example n=2 first
  PauliHamiltonian ex(2);
  ex.add("ZZ", 1.0);
  ex.add("XI", -1.0);
  ex.add("IX", -1.0);
  auto full = dense_spectrum(build_matrix(ex));
  auto plus = dense_spectrum(parity_project(ex, ParitySector(2, +1)));
  auto minus = dense_spectrum(parity_project(ex, ParitySector(2, -1)));
  std::vector<double> merged = plus;
  merged.insert(merged.end(), minus.begin(), minus.end());
  std::sort(merged.begin(), merged.end());
  REQUIRE(merged.size() == full.size());
  for (std::size_t i = 0; i < merged.size(); ++i)
    CHECK(std::abs(merged[i] - full[i]) <= 1e-10);

  RngStream rng(5, 1);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));
    PauliHamiltonian h = random_hamiltonian(n, 2 + static_cast<int>(rng.below(8)), rng, true);
    auto f = dense_spectrum(build_matrix(h));
    auto p = dense_spectrum(parity_project(h, ParitySector(n, +1)));
    auto m = dense_spectrum(parity_project(h, ParitySector(n, -1)));
    std::vector<double> u = p;
    u.insert(u.end(), m.begin(), m.end());
    std::sort(u.begin(), u.end());
    REQUIRE(u.size() == f.size());
    double scale = std::max(1.0, std::abs(f.front()) + std::abs(f.back()));
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(u[i] - f[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("symbolic commutation check matches the numerical commutator") {
  RngStream rng(17, 3);
  PauliHamiltonian single_x(2);
  single_x.add("XI", 1.0);
  CHECK_NOTHROW(parity_project(single_x, ParitySector(2, +1)));
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    PauliHamiltonian h = random_hamiltonian(n, 3, rng, false);
    Eigen::MatrixXcd hm = build_matrix(h).to_dense_complex();
    // P = prod_i X_i maps |z> to |z-bar>
    Index dim = hm.rows();
    Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) pm(dim - 1 - i, i) = 1.0;
    double comm = (hm * pm - pm * hm).cwiseAbs().maxCoeff();
    bool symbolic = h.commutes_with_global_flip();
    CHECK(symbolic == (comm < 1e-12));
    if (!symbolic) CHECK_THROWS_AS(parity_project(h, ParitySector(n, +1)), SymmetryViolation);
  }
}

TEST_CASE("driver plus diagonal problem is stoquastic") {
  RngStream rng(23, 9);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));
    PauliHamiltonian h(n);
    for (int q = 0; q < n; ++q) {
      std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
      f[static_cast<std::size_t>(q)] = Pauli::X;
      h.add(PauliString(std::move(f)), -1.0);
    }
    for (int t = 0; t < 4; ++t) {
      std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
      for (int q = 0; q < n; ++q)
        if (rng.below(2)) f[static_cast<std::size_t>(q)] = Pauli::Z;
      h.add(PauliString(std::move(f)), rng.uniform_sym());
    }
    CHECK(is_stoquastic(build_matrix(h), 0.0));
  }
}

TEST_CASE("random builds are Hermitian to 1e-12 and complex only with odd Y counts") {
  RngStream rng(29, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    PauliHamiltonian h = random_hamiltonian(n, 1 + static_cast<int>(rng.below(6)), rng, false);
    HermitianMatrix m = build_matrix(h);
    bool odd_y = false;
    for (const auto& [p, c] : h.terms())
      if (p.y_count() % 2) odd_y = true;
    CHECK(m.is_real() == !odd_y);
    Eigen::MatrixXcd d = m.to_dense_complex();
    CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("sparse storage above the dense threshold keeps no explicit zeros") {
  PauliHamiltonian h(3);
  h.add("XII", 1.0);
  h.add("ZZI", 0.5);
  BuildOptions opts;
  opts.dense_threshold = 4;  // force sparse at dim 8
  HermitianMatrix m = build_matrix(h, opts);
  CHECK_FALSE(m.is_dense());
  const auto& sp = std::get<HermitianMatrix::SparseR>(m.storage());
  for (int j = 0; j < sp.outerSize(); ++j)
    for (HermitianMatrix::SparseR::InnerIterator it(sp, j); it; ++it)
      CHECK(it.value() != 0.0);
  CHECK(m.entry(0, 4) == Complex(1.0));
}

TEST_CASE("sector diagonal matches the projected matrix diagonal") {
  RngStream rng(31, 4);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));
    PauliHamiltonian h(n);
    for (int t = 0; t < 3; ++t) {
      std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
      int q1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int q2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (q1 == q2) continue;
      f[static_cast<std::size_t>(q1)] = Pauli::Z;
      f[static_cast<std::size_t>(q2)] = Pauli::Z;
      h.add(PauliString(std::move(f)), rng.uniform_sym());
    }
    if (h.term_count() == 0) continue;
    ParitySector sector(n, +1);
    Eigen::VectorXd d = sector_diagonal(h, sector);
    Eigen::MatrixXd m = parity_project(h, sector).to_dense_real();
    CHECK((d - m.diagonal()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}
