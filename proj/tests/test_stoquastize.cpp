#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "stoqlab/ensembles.hpp"
#include "stoqlab/stoquastize.hpp"

using namespace stoq;

namespace {

double lambda_min(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.to_dense_complex(),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double lambda_max(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.to_dense_complex(),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues()[es.eigenvalues().size() - 1];
}

// exhaustive oracle: does any +/-1 signature cure m?
bool curable_by_enumeration(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    bool good = true;
    for (int i = 0; i < n && good; ++i)
      for (int j = 0; j < n && good; ++j) {
        if (i == j || m(i, j) == 0.0) continue;
        double si = (bits >> i) & 1u ? -1.0 : 1.0;
        double sj = (bits >> j) & 1u ? -1.0 : 1.0;
        if (si * sj * m(i, j) > 0.0) good = false;
      }
    if (good) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("design_matrix entrywise definition") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 3;
  Eigen::MatrixXd d = design_matrix(HermitianMatrix::dense(a)).to_dense_real();
  CHECK(d(0, 0) == 1.0);
  CHECK(d(0, 1) == -2.0);
  CHECK(d(1, 0) == -2.0);
  CHECK(d(1, 1) == 3.0);
}

TEST_CASE("design_matrix takes the complex modulus") {
  Eigen::MatrixXcd a(2, 2);
  a << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  HermitianMatrix d = design_matrix(HermitianMatrix::dense(a));
  CHECK(d.is_real());
  Eigen::MatrixXd dr = d.to_dense_real();
  CHECK(dr(0, 1) == -1.0);
  CHECK(dr(1, 0) == -1.0);
}

TEST_CASE("design_matrix fixes stoquastic inputs and is idempotent") {
  Eigen::MatrixXd a(3, 3);
  a << 1, -2, 0, -2, 0, -0.5, 0, -0.5, -1;
  HermitianMatrix m = HermitianMatrix::dense(a);
  CHECK((design_matrix(m).to_dense_real() - a).cwiseAbs().maxCoeff() == 0.0);
  RngStream rng(7, 0);
  for (int t = 0; t < 20; ++t) {
    HermitianMatrix h = sample_wigner(6, rng);
    Eigen::MatrixXd once = design_matrix(h).to_dense_real();
    Eigen::MatrixXd twice = design_matrix(design_matrix(h)).to_dense_real();
    CHECK((once - twice).cwiseAbs().maxCoeff() == 0.0);
    CHECK(is_stoquastic(design_matrix(h), 0.0));
  }
}

TEST_CASE("design preserves the sparsity pattern") {
  std::vector<Eigen::Triplet<double>> tr{{0, 1, 2.0}, {1, 0, 2.0}, {2, 2, -3.0},
                                         {1, 3, -0.5}, {3, 1, -0.5}};
  HermitianMatrix m = HermitianMatrix::sparse(4, tr);
  HermitianMatrix d = design_matrix(m);
  CHECK_FALSE(d.is_dense());
  CHECK(d.offdiag_nonzeros() == m.offdiag_nonzeros());
  CHECK(d.entry(0, 1) == Complex(-2.0));
  CHECK(d.entry(1, 3) == Complex(-0.5));
  CHECK(d.entry(0, 3) == Complex(0.0));
}

TEST_CASE("shift_matrix examples") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  Eigen::MatrixXd s1 = shift_matrix(HermitianMatrix::dense(a), 1.0).to_dense_real();
  CHECK(s1.cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd b(2, 2);
  b << 0, -1, -1, 0;
  Eigen::MatrixXd s2 = shift_matrix(HermitianMatrix::dense(b), 1.0).to_dense_real();
  CHECK(s2(0, 1) == -1.0);

  Eigen::MatrixXd c(2, 2);
  c << 0, 0.4, 0.4, 0;
  Eigen::MatrixXd s3 = shift_matrix(HermitianMatrix::dense(c)).to_dense_real();
  CHECK(s3.cwiseAbs().maxCoeff() == 0.0);  // default shift is the max |offdiag|
}

TEST_CASE("shift_matrix touches only nonzero off-diagonal positions") {
  Eigen::MatrixXd a(3, 3);
  a << 2, 1, 0, 1, 0, -0.5, 0, -0.5, -2;
  Eigen::MatrixXd s = shift_matrix(HermitianMatrix::dense(a), 1.0).to_dense_real();
  CHECK(s(0, 0) == 1.0);    // diagonal halves
  CHECK(s(0, 2) == 0.0);    // zero position untouched
  CHECK(s(0, 1) == 0.0);    // (1 - 1)/2
  CHECK(s(1, 2) == -0.75);  // (-0.5 - 1)/2
}

TEST_CASE("shift_matrix errors") {
  Eigen::MatrixXcd c(2, 2);
  c << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  CHECK_THROWS_AS(shift_matrix(HermitianMatrix::dense(c), 1.0), ComplexEntries);
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  CHECK_THROWS_AS(shift_matrix(HermitianMatrix::dense(a), -0.5), NegativeShift);
}

TEST_CASE("shift_dense examples") {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
  Eigen::MatrixXd s = shift_dense(HermitianMatrix::dense(z), 1.0).to_dense_real();
  CHECK((s.array() + 0.5).abs().maxCoeff() == 0.0);

  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd h = shift_dense(HermitianMatrix::dense(id), 0.0).to_dense_real();
  CHECK(h(0, 0) == 0.5);
  CHECK(h(0, 1) == 0.0);
}

TEST_CASE("negated shift_dense of a Wigner draw has uniform [0,1] marginals") {
  // -shift_dense(W, 1) = (ones - W)/2 entrywise; over many draws the entry
  // mean is 1/2 within 3 sigma and the range stays inside [0, 1]
  RngStream rng(99, 0);
  double sum = 0.0;
  long count = 0;
  for (int t = 0; t < 10; ++t) {
    HermitianMatrix w = sample_wigner(100, rng);
    Eigen::MatrixXd s = -shift_dense(w, 1.0).to_dense_real();
    CHECK(s.minCoeff() >= 0.0);
    CHECK(s.maxCoeff() <= 1.0);
    sum += s.sum();
    count += s.size();
  }
  double mean = sum / static_cast<double>(count);
  // off-diagonals are averages of two uniforms (variance 1/24 after mapping);
  // 3 sigma with the conservative uniform variance 1/12
  double sigma = std::sqrt(1.0 / 12.0 / static_cast<double>(count));
  CHECK(std::abs(mean - 0.5) <= 3.0 * sigma);
}

TEST_CASE("design_pauli single and disjoint terms") {
  PauliHamiltonian h1(2);
  h1.add("XX", 0.8);
  PauliHamiltonian d1 = design_pauli(h1, 2);
  CHECK(d1.coefficient(PauliString("XX")) == doctest::Approx(-0.8));
  CHECK(d1.term_count() == 1);

  PauliHamiltonian h3(3);
  h3.add("XXI", 1.0);
  h3.add("IXX", -1.0);
  PauliHamiltonian d3 = design_pauli(h3, 2);
  CHECK(d3.coefficient(PauliString("XXI")) == doctest::Approx(-1.0));
  CHECK(d3.coefficient(PauliString("IXX")) == doctest::Approx(-1.0));
}

TEST_CASE("design_pauli matches design_matrix on a mixed XX+YY block") {
  PauliHamiltonian h(2);
  h.add("XX", 0.6);
  h.add("YY", 0.6);
  PauliHamiltonian d = design_pauli(h, 2);
  Eigen::MatrixXcd lhs = build_matrix(d).to_dense_complex();
  Eigen::MatrixXcd rhs = design_matrix(build_matrix(h)).to_dense_complex();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("design_pauli errors") {
  PauliHamiltonian mix(2);
  mix.add("ZX", 1.0);
  CHECK_THROWS_AS(design_pauli(mix, 2), LocalityViolation);

  PauliHamiltonian heavy(3);
  heavy.add("XXX", 1.0);
  CHECK_THROWS_AS(design_pauli(heavy, 2), LocalityViolation);

  PauliHamiltonian overlap(3);
  overlap.add("XII", 1.0);  // weight 1 < k = 2 while n > k
  CHECK_THROWS_AS(design_pauli(overlap, 2), OverlapAmbiguity);
  CHECK_NOTHROW(design_pauli(overlap, 1));
}

TEST_CASE("design_pauli agrees with matrix de-signing on random admissible instances") {
  RngStream rng(41, 0);
  int done = 0;
  while (done < 100) {
    int k = 1 + static_cast<int>(rng.below(3));
    int n = std::max(k, 2 + static_cast<int>(rng.below(5)));
    PauliHamiltonian h(n);
    int terms = 1 + static_cast<int>(rng.below(6));
    for (int t = 0; t < terms; ++t) {
      // X/Y string of weight exactly k (unique k-subset per support)
      std::vector<int> qubits;
      while (static_cast<int>(qubits.size()) < k) {
        int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) qubits.push_back(q);
      }
      std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
      for (int q : qubits) f[static_cast<std::size_t>(q)] = rng.below(2) ? Pauli::X : Pauli::Y;
      h.add(PauliString(std::move(f)), rng.uniform_sym());
    }
    // diagonal part rides along untouched
    std::vector<Pauli> fz(static_cast<std::size_t>(n), Pauli::I);
    fz[0] = Pauli::Z;
    h.add(PauliString(std::move(fz)), rng.uniform_sym());
    if (h.term_count() < 2) continue;

    PauliHamiltonian d = design_pauli(h, k);
    Eigen::MatrixXcd lhs = build_matrix(d).to_dense_complex();
    Eigen::MatrixXcd rhs = design_matrix(build_matrix(h)).to_dense_complex();
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    ++done;
  }
}

TEST_CASE("stoquastize_catalyst examples") {
  std::vector<double> alphas{0.7, -0.3};
  auto designed = stoquastize_catalyst(alphas, StoquastizationKind::designed());
  CHECK(designed[0] == -0.7);
  CHECK(designed[1] == -0.3);

  std::vector<double> pm{1.0, -1.0};
  auto shifted = stoquastize_catalyst(pm, StoquastizationKind::shifted_uniform(1.0));
  CHECK(shifted[0] == 0.0);
  CHECK(shifted[1] == -1.0);

  std::vector<double> neg{-0.5};
  CHECK(stoquastize_catalyst(neg, StoquastizationKind::designed())[0] == -0.5);
  CHECK_THROWS_AS(StoquastizationKind::shifted_uniform(-1.0), NegativeShift);
}

TEST_CASE("curability: 2x2 matrices always cure") {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  auto sig = curability_check(HermitianMatrix::dense(a));
  REQUIRE(sig.has_value());
  CHECK(sig->signs[0] * sig->signs[1] == -1);
  Eigen::MatrixXd cured = sig->conjugate(HermitianMatrix::dense(a)).to_dense_real();
  CHECK(cured(0, 1) == -1.0);
}

TEST_CASE("curability: frustrated triangle has no signature") {
  // one positive off-diagonal pair, two negative: cycle product positive
  // after de-sign comparison fails; verified against exhaustive enumeration
  Eigen::MatrixXd t(3, 3);
  t << 0, 1, -1, 1, 0, -1, -1, -1, 0;
  CHECK_FALSE(curability_check(HermitianMatrix::dense(t)).has_value());
  CHECK_FALSE(curable_by_enumeration(t));
}

TEST_CASE("curability: stoquastic input yields the identity signature") {
  Eigen::MatrixXd a(3, 3);
  a << 1, -1, 0, -1, 0, -2, 0, -2, -1;
  auto sig = curability_check(HermitianMatrix::dense(a));
  REQUIRE(sig.has_value());
  CHECK(sig->is_identity());
}

TEST_CASE("curability agrees with exhaustive enumeration on random sign patterns") {
  RngStream rng(43, 1);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng.below(4));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform01() < 0.35) continue;  // leave some zeros
        double v = rng.pm1() * (0.2 + rng.uniform01());
        m(i, j) = m(j, i) = v;
      }
    auto sig = curability_check(HermitianMatrix::dense(m));
    CHECK(sig.has_value() == curable_by_enumeration(m));
    if (sig) {
      Eigen::MatrixXd cured = sig->conjugate(HermitianMatrix::dense(m)).to_dense_real();
      Eigen::MatrixXd designed = design_matrix(HermitianMatrix::dense(m)).to_dense_real();
      CHECK((cured - designed).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("curability returns absent for complex off-diagonals") {
  Eigen::MatrixXcd c(2, 2);
  c << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  CHECK_FALSE(curability_check(HermitianMatrix::dense(c)).has_value());
}

TEST_CASE("ground-energy inequality and trace preservation") {
  RngStream rng(47, 2);
  for (int t = 0; t < 150; ++t) {
    int N = 2 + static_cast<int>(rng.below(31));
    HermitianMatrix h = (t % 2 == 0) ? sample_wigner(N, rng) : sample_complex_hermitian(N, rng);
    HermitianMatrix d = design_matrix(h);
    CHECK(lambda_min(d) <= lambda_min(h) + 1e-10);
    CHECK(std::abs(d.trace() - h.trace()) <= 1e-12);

    // top-eigenvalue form: G = ||H|| I - H, G+ = entrywise modulus
    double norm = std::max(std::abs(lambda_min(h)), std::abs(lambda_max(h)));
    double g_norm = norm - lambda_min(h);
    double gplus_norm = norm - lambda_min(d);
    CHECK(gplus_norm >= g_norm - 1e-10);
  }
}

TEST_CASE("ground-energy equality holds exactly for curable matrices") {
  RngStream rng(53, 3);
  for (int t = 0; t < 60; ++t) {
    int N = 3 + static_cast<int>(rng.below(14));
    // curable by construction: conjugate a stoquastic matrix by random signs
    HermitianMatrix w = sample_wigner(N, rng);
    HermitianMatrix stoq_base = design_matrix(w);
    SignatureMatrix s;
    for (int i = 0; i < N; ++i) s.signs.push_back(rng.pm1() > 0 ? 1 : -1);
    HermitianMatrix cured_input = s.conjugate(stoq_base);
    auto sig = curability_check(cured_input);
    REQUIRE(sig.has_value());
    CHECK(std::abs(lambda_min(design_matrix(cured_input)) - lambda_min(cured_input)) <= 1e-9);
  }
  // and random dense matrices that are not curable sit strictly below
  for (int t = 0; t < 60; ++t) {
    int N = 4 + static_cast<int>(rng.below(13));
    HermitianMatrix h = sample_wigner(N, rng);
    if (curability_check(h).has_value()) continue;  // vanishingly rare
    CHECK(lambda_min(design_matrix(h)) < lambda_min(h) - 1e-9);
  }
}
