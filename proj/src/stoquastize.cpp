#include "stoqlab/stoquastize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace stoq {

StoquastizationKind StoquastizationKind::shifted_uniform(double shift) {
  if (shift < 0.0) throw NegativeShift("shift must be nonnegative");
  return {Variant::ShiftedUniform, shift};
}

StoquastizationKind StoquastizationKind::shifted_dense_rank1(double shift) {
  if (shift < 0.0) throw NegativeShift("shift must be nonnegative");
  return {Variant::ShiftedDenseRank1, shift};
}

HermitianMatrix SignatureMatrix::conjugate(const HermitianMatrix& m) const {
  if (dim() != m.dim()) throw Error("signature dimension mismatch");
  if (!m.is_real()) throw ComplexEntries("signature conjugation expects a real matrix");
  if (m.is_dense()) {
    Eigen::MatrixXd d = m.to_dense_real();
    for (Index j = 0; j < d.cols(); ++j)
      for (Index i = 0; i < d.rows(); ++i) d(i, j) *= signs[i] * signs[j];
    return HermitianMatrix::dense(std::move(d));
  }
  std::vector<Eigen::Triplet<double>> tr;
  const auto& sp = std::get<HermitianMatrix::SparseR>(m.storage());
  for (Index j = 0; j < sp.outerSize(); ++j)
    for (HermitianMatrix::SparseR::InnerIterator it(sp, j); it; ++it)
      tr.emplace_back(it.row(), it.col(), it.value() * signs[it.row()] * signs[it.col()]);
  return HermitianMatrix::sparse(m.dim(), tr);
}

bool SignatureMatrix::is_identity() const {
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1; });
}

HermitianMatrix design_matrix(const HermitianMatrix& m) {
  if (m.is_dense()) {
    Eigen::MatrixXcd src = m.to_dense_complex();
    Eigen::MatrixXd out(src.rows(), src.cols());
    for (Index j = 0; j < src.cols(); ++j)
      for (Index i = 0; i < src.rows(); ++i)
        out(i, j) = (i == j) ? src(i, j).real() : -std::abs(src(i, j));
    return HermitianMatrix::dense(std::move(out));
  }
  std::vector<Eigen::Triplet<double>> tr;
  auto visit_sparse = [&](const auto& sp) {
    for (Index j = 0; j < sp.outerSize(); ++j)
      for (typename std::decay_t<decltype(sp)>::InnerIterator it(sp, j); it; ++it) {
        Complex v(it.value());
        tr.emplace_back(it.row(), it.col(),
                        it.row() == it.col() ? v.real() : -std::abs(v));
      }
  };
  if (m.is_real())
    visit_sparse(std::get<HermitianMatrix::SparseR>(m.storage()));
  else
    visit_sparse(std::get<HermitianMatrix::SparseC>(m.storage()));
  return HermitianMatrix::sparse(m.dim(), tr);
}

HermitianMatrix shift_matrix(const HermitianMatrix& m, std::optional<double> shift) {
  if (!m.is_real()) throw ComplexEntries("shift_matrix expects a real symmetric matrix");
  if (shift && *shift < 0.0) throw NegativeShift("shift must be nonnegative");
  double c = shift ? *shift : m.max_abs_offdiag();
  if (m.is_dense()) {
    Eigen::MatrixXd d = m.to_dense_real();
    Eigen::MatrixXd out(d.rows(), d.cols());
    for (Index j = 0; j < d.cols(); ++j)
      for (Index i = 0; i < d.rows(); ++i) {
        if (i == j)
          out(i, j) = 0.5 * d(i, j);
        else
          out(i, j) = d(i, j) != 0.0 ? 0.5 * (d(i, j) - c) : 0.0;
      }
    return HermitianMatrix::dense(std::move(out));
  }
  const auto& sp = std::get<HermitianMatrix::SparseR>(m.storage());
  std::vector<Eigen::Triplet<double>> tr;
  for (Index j = 0; j < sp.outerSize(); ++j)
    for (HermitianMatrix::SparseR::InnerIterator it(sp, j); it; ++it)
      tr.emplace_back(it.row(), it.col(),
                      it.row() == it.col() ? 0.5 * it.value() : 0.5 * (it.value() - c));
  return HermitianMatrix::sparse(m.dim(), tr);
}

HermitianMatrix shift_dense(const HermitianMatrix& m, double shift) {
  if (!m.is_real()) throw ComplexEntries("shift_dense expects a real symmetric matrix");
  if (!m.is_dense()) throw Error("shift_dense expects dense storage");
  Eigen::MatrixXd d = m.to_dense_real();
  Eigen::MatrixXd out = 0.5 * (d.array() - shift).matrix();
  return HermitianMatrix::dense(std::move(out));
}

namespace {

std::complex<double> block_amplitude(const std::vector<Pauli>& factors, std::uint64_t x) {
  // <x ^ ones | T | x> for an all-X/Y string on block bits; bit j of x is the
  // j-th support qubit.
  std::complex<double> amp(1.0, 0.0);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j] == Pauli::X) continue;
    bool bit = (x >> j) & 1u;
    amp *= bit ? std::complex<double>(0.0, -1.0) : std::complex<double>(0.0, 1.0);
  }
  return amp;
}

}  // namespace

PauliHamiltonian design_pauli(const PauliHamiltonian& h, int k) {
  int n = h.qubit_count();
  if (k < 1 || k > n) throw Error("locality bound out of range");

  PauliHamiltonian out(n);
  // terms grouped by exact X/Y support (as sorted qubit index lists)
  std::map<std::vector<int>, std::vector<std::pair<const PauliString*, double>>> groups;

  for (const auto& [p, c] : h.terms()) {
    bool has_xy = false, has_z = false;
    std::vector<int> support;
    for (int q = 0; q < n; ++q) {
      Pauli f = p.factor(q);
      if (f == Pauli::X || f == Pauli::Y) {
        has_xy = true;
        support.push_back(q);
      } else if (f == Pauli::Z) {
        has_z = true;
      }
    }
    if (!has_xy) {
      out.add(p, c);  // H_Z part is untouched by de-signing
      continue;
    }
    if (has_z)
      throw LocalityViolation("term " + p.str() + " mixes Z with X/Y factors");
    if (static_cast<int>(support.size()) > k)
      throw LocalityViolation("term " + p.str() + " exceeds the locality bound");
    groups[std::move(support)].emplace_back(&p, c);
  }

  for (const auto& [support, terms] : groups) {
    int m = static_cast<int>(support.size());
    // A support smaller than k sits inside C(n-m, k-m) > 1 distinct k-subsets
    // whenever n > k; the per-subset block sum of Appendix A would then count
    // this block several times and disagree with the full-matrix de-sign.
    if (m < k && n > k)
      throw OverlapAmbiguity("support of size " + std::to_string(m) +
                             " lies in several k-subsets (k=" + std::to_string(k) + ")");

    std::uint64_t block = std::uint64_t(1) << m;
    // anti-diagonal block entries e(x) = <x^ones|H_O^(S)|x>
    std::vector<std::complex<double>> e(block, {0.0, 0.0});
    for (const auto& [ps, c] : terms) {
      std::vector<Pauli> block_factors(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) block_factors[static_cast<std::size_t>(j)] = ps->factor(support[static_cast<std::size_t>(j)]);
      for (std::uint64_t x = 0; x < block; ++x)
        e[x] += c * block_amplitude(block_factors, x);
    }
    std::vector<double> d(block);
    double dmax = 0.0;
    for (std::uint64_t x = 0; x < block; ++x) {
      d[x] = -std::abs(e[x]);
      dmax = std::max(dmax, std::abs(d[x]));
    }

    // Re-expansion: coeff(T) = 2^{-m} sum_x d(x) <x|T|x^ones>; only strings
    // with an even number of Y factors survive on a real symmetric block.
    for (std::uint64_t code = 0; code < block; ++code) {
      std::vector<Pauli> bf(static_cast<std::size_t>(m));
      int ycount = 0;
      for (int j = 0; j < m; ++j) {
        bool y = (code >> j) & 1u;
        bf[static_cast<std::size_t>(j)] = y ? Pauli::Y : Pauli::X;
        ycount += y;
      }
      if (ycount & 1) continue;
      std::complex<double> acc(0.0, 0.0);
      std::uint64_t ones = block - 1;
      for (std::uint64_t x = 0; x < block; ++x)
        acc += d[x] * block_amplitude(bf, x ^ ones);
      double coeff = acc.real() / static_cast<double>(block);
      if (std::abs(coeff) <= 1e-14 * dmax) continue;
      std::vector<Pauli> full(static_cast<std::size_t>(n), Pauli::I);
      for (int j = 0; j < m; ++j) full[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])] = bf[static_cast<std::size_t>(j)];
      out.add(PauliString(std::move(full)), coeff);
    }
  }
  return out;
}

std::vector<double> stoquastize_catalyst(const std::vector<double>& alphas,
                                         const StoquastizationKind& kind) {
  std::vector<double> out(alphas.size());
  switch (kind.variant) {
    case StoquastizationKind::Variant::DeSigned:
      for (std::size_t i = 0; i < alphas.size(); ++i) out[i] = -std::abs(alphas[i]);
      break;
    case StoquastizationKind::Variant::ShiftedUniform:
      for (std::size_t i = 0; i < alphas.size(); ++i) out[i] = 0.5 * (alphas[i] - kind.shift);
      break;
    case StoquastizationKind::Variant::ShiftedDenseRank1:
      throw Error("dense rank-1 shifting does not apply to catalyst coefficients");
  }
  return out;
}

std::optional<SignatureMatrix> curability_check(const HermitianMatrix& m) {
  Index n = m.dim();
  // adjacency over the off-diagonal sparsity graph; complex phases cannot be
  // cured by a +/-1 signature
  bool complex_offdiag = false;
  std::vector<std::vector<std::pair<Index, double>>> adj(static_cast<std::size_t>(n));
  m.for_each_offdiag([&](Index i, Index j, Complex v) {
    if (v == Complex(0)) return;
    if (v.imag() != 0.0) complex_offdiag = true;
    if (i < j) {
      adj[static_cast<std::size_t>(i)].emplace_back(j, v.real());
      adj[static_cast<std::size_t>(j)].emplace_back(i, v.real());
    }
  });
  if (complex_offdiag) return std::nullopt;

  std::vector<int> signs(static_cast<std::size_t>(n), 0);
  for (Index root = 0; root < n; ++root) {
    if (signs[static_cast<std::size_t>(root)] != 0) continue;
    signs[static_cast<std::size_t>(root)] = 1;
    std::deque<Index> queue{root};
    while (!queue.empty()) {
      Index u = queue.front();
      queue.pop_front();
      for (auto [v, w] : adj[static_cast<std::size_t>(u)]) {
        // need s_u s_v w = -|w|: equal signs for negative entries, opposite
        // for positive ones
        int need = w > 0.0 ? -signs[static_cast<std::size_t>(u)] : signs[static_cast<std::size_t>(u)];
        if (signs[static_cast<std::size_t>(v)] == 0) {
          signs[static_cast<std::size_t>(v)] = need;
          queue.push_back(v);
        } else if (signs[static_cast<std::size_t>(v)] != need) {
          return std::nullopt;
        }
      }
    }
  }
  return SignatureMatrix{std::move(signs)};
}

}  // namespace stoq
