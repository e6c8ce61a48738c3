#include "stoqlab/ensembles.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace stoq {

HermitianMatrix sample_wigner(int N, RngStream& rng) {
  if (N < 2) throw Error("wigner sample needs N >= 2");
  Eigen::MatrixXd m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = rng.uniform_sym();
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  return HermitianMatrix::dense(std::move(sym));
}

HermitianMatrix sample_complex_hermitian(int N, RngStream& rng) {
  if (N < 2) throw Error("complex hermitian sample needs N >= 2");
  Eigen::MatrixXd re(N, N), im(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) re(i, j) = rng.uniform_sym();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) im(i, j) = rng.uniform_sym();
  Eigen::MatrixXcd a = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  for (int i = 0; i < N; ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return HermitianMatrix::dense(std::move(h));
}

std::pair<HermitianMatrix, HermitianMatrix> sample_wigner_shifted_pair(int N, RngStream& rng) {
  HermitianMatrix w = sample_wigner(N, rng);
  Eigen::MatrixXd wp = Eigen::MatrixXd::Ones(N, N) + 0.5 * w.to_dense_real();
  return {std::move(w), HermitianMatrix::dense(std::move(wp))};
}

double MaxCutInstance::problem_energy(std::uint64_t z) const {
  double e = 0.0;
  for (auto [u, v] : edges) {
    bool bu = (z >> (n - 1 - u)) & 1u;
    bool bv = (z >> (n - 1 - v)) & 1u;
    e += (bu == bv) ? 1.0 : -1.0;
  }
  return e;
}

std::string MaxCutInstance::solution_bits() const {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((solution >> (n - 1 - q)) & 1u) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

std::string MaxCutInstance::to_text() const {
  std::ostringstream out;
  out << "maxcut n=" << n << " seed=" << master_seed << " stream=" << stream_id << "\n";
  out << "solution " << solution_bits() << "\n";
  out << "edges " << edges.size() << "\n";
  for (auto [u, v] : edges) out << u << " " << v << "\n";
  return out.str();
}

MaxCutInstance MaxCutInstance::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  MaxCutInstance inst;
  std::string tok;
  in >> tok;
  if (tok != "maxcut") throw Error("bad maxcut header");
  auto read_kv = [&](const std::string& key) -> std::uint64_t {
    std::string kv;
    in >> kv;
    auto pos = kv.find('=');
    if (pos == std::string::npos || kv.substr(0, pos) != key)
      throw Error("expected " + key + "= in maxcut header");
    return std::stoull(kv.substr(pos + 1));
  };
  inst.n = static_cast<int>(read_kv("n"));
  inst.master_seed = read_kv("seed");
  inst.stream_id = read_kv("stream");
  std::string bits;
  in >> tok >> bits;
  if (tok != "solution" || static_cast<int>(bits.size()) != inst.n)
    throw Error("bad maxcut solution line");
  inst.solution = 0;
  for (int q = 0; q < inst.n; ++q)
    if (bits[static_cast<std::size_t>(q)] == '1')
      inst.solution |= std::uint64_t(1) << (inst.n - 1 - q);
  std::size_t ecount;
  in >> tok >> ecount;
  if (tok != "edges") throw Error("bad maxcut edges line");
  for (std::size_t i = 0; i < ecount; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw Error("truncated maxcut edge list");
    inst.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return inst;
}

namespace {

// One pairing-model draw; empty when the matching has loops or multi-edges.
std::vector<std::pair<int, int>> pairing_model_3regular(int n, RngStream& rng) {
  std::vector<int> stubs(static_cast<std::size_t>(3 * n));
  for (int i = 0; i < 3 * n; ++i) stubs[static_cast<std::size_t>(i)] = i / 3;
  // Fisher-Yates
  for (int i = 3 * n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(stubs[static_cast<std::size_t>(i)], stubs[static_cast<std::size_t>(j)]);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(3 * n / 2));
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < 3 * n; i += 2) {
    int u = stubs[static_cast<std::size_t>(i)], v = stubs[static_cast<std::size_t>(i + 1)];
    if (u == v) return {};
    int a = std::min(u, v), b = std::max(u, v);
    if (seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return {};
    seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

MaxCutInstance sample_maxcut(int n, RngStream& rng, int max_retries) {
  // n = 4 is admitted although every draw is K4 and gets rejected; the
  // retry-exhaustion path is part of the contract.
  if (n < 4 || n > 24 || (n % 2) != 0)
    throw Error("maxcut size must be even and within [4, 24]");
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    auto edges = pairing_model_3regular(n, rng);
    if (edges.empty()) continue;

    // exhaustive ground-state count over the half-space z < 2^{n-1}; global
    // bit-flip symmetry pairs each minimizer with its complement
    std::vector<std::uint64_t> masks;
    masks.reserve(edges.size());
    for (auto [u, v] : edges)
      masks.push_back((std::uint64_t(1) << (n - 1 - u)) | (std::uint64_t(1) << (n - 1 - v)));
    std::uint64_t half = std::uint64_t(1) << (n - 1);
    long best = static_cast<long>(edges.size()) + 1;
    std::uint64_t argmin = 0;
    long count = 0;
    for (std::uint64_t z = 0; z < half; ++z) {
      long cut = 0;
      for (std::uint64_t m : masks) cut += std::popcount(z & m) & 1;
      long energy = static_cast<long>(edges.size()) - 2 * cut;
      if (energy < best) {
        best = energy;
        argmin = z;
        count = 1;
      } else if (energy == best) {
        ++count;
      }
    }
    if (count != 1) continue;

    MaxCutInstance inst;
    inst.n = n;
    inst.edges = std::move(edges);
    inst.solution = argmin;
    inst.master_seed = rng.master_seed();
    inst.stream_id = rng.stream_id();
    return inst;
  }
  throw RetriesExhausted("no unique-solution 3-regular instance after " +
                         std::to_string(max_retries) + " attempts (n=" + std::to_string(n) + ")");
}

std::vector<double> sample_catalyst(const std::vector<std::pair<int, int>>& edges,
                                    CatalystMode mode, RngStream& rng) {
  if (edges.empty()) throw Error("catalyst needs a nonempty edge list");
  std::vector<double> out(edges.size());
  for (auto& a : out) a = (mode == CatalystMode::Uniform) ? rng.uniform_sym() : rng.pm1();
  return out;
}

}  // namespace stoq
