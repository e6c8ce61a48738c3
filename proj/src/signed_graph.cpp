#include "stoqlab/signed_graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

namespace stoq {

SignedGraph::SignedGraph(int vertices) : nv_(vertices) {
  if (vertices < 1 || vertices > 31) throw Error("vertex count must be in [1, 31]");
  degrees_.assign(static_cast<std::size_t>(vertices), 0.0);
}

void SignedGraph::add_edge(int u, int v, double weight, int sign) {
  if (u < 0 || v < 0 || u >= nv_ || v >= nv_) throw Error("edge endpoint out of range");
  if (u == v) throw Error("self loops are not allowed");
  if (weight < 0.0) throw Error("edge weights must be nonnegative");
  if (sign != 1 && sign != -1) throw Error("edge sign must be +1 or -1");
  for (const auto& e : edges_)
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u))
      throw Error("duplicate edge");
  edges_.push_back(Edge{std::min(u, v), std::max(u, v), weight, sign});
  degrees_[static_cast<std::size_t>(u)] += weight;
  degrees_[static_cast<std::size_t>(v)] += weight;
}

double SignedGraph::d_max() const {
  return degrees_.empty() ? 0.0 : *std::max_element(degrees_.begin(), degrees_.end());
}

double SignedGraph::volume(std::uint32_t subset) const {
  double v = 0.0;
  for (int i = 0; i < nv_; ++i)
    if ((subset >> i) & 1u) v += degrees_[static_cast<std::size_t>(i)];
  return v;
}

std::string SignedGraph::to_text() const {
  std::ostringstream out;
  out << "vertices " << nv_ << "\n";
  for (const auto& e : edges_) out << e.u << " " << e.v << " " << e.weight << " " << e.sign << "\n";
  return out.str();
}

SignedGraph SignedGraph::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  int nv = 0;
  in >> header >> nv;
  if (header != "vertices") throw Error("expected 'vertices N' header");
  SignedGraph g(nv);
  int u, v, sign;
  double w;
  while (in >> u >> v >> w >> sign) g.add_edge(u, v, w, sign);
  return g;
}

HermitianMatrix laplacian(const SignedGraph& g, bool signed_laplacian, bool normalized) {
  int n = g.vertex_count();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) L(i, i) = g.degrees()[static_cast<std::size_t>(i)];
  for (const auto& e : g.edges()) {
    double a = (signed_laplacian ? e.sign : 1) * e.weight;
    L(e.u, e.v) -= a;
    L(e.v, e.u) -= a;
  }
  if (normalized) {
    for (int i = 0; i < n; ++i)
      if (g.degrees()[static_cast<std::size_t>(i)] == 0.0)
        throw IsolatedVertex("vertex " + std::to_string(i) + " has zero degree");
    Eigen::VectorXd dinv(n);
    for (int i = 0; i < n; ++i) dinv[i] = 1.0 / std::sqrt(g.degrees()[static_cast<std::size_t>(i)]);
    L = dinv.asDiagonal() * L * dinv.asDiagonal();
    L = 0.5 * (L + L.transpose().eval());  // keep exact symmetry after scaling
  }
  return HermitianMatrix::dense(std::move(L));
}

std::optional<std::vector<int>> is_balanced(const SignedGraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (e.weight == 0.0) continue;  // absent from the Laplacian structure
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.sign);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.sign);
  }
  std::vector<int> theta(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (theta[static_cast<std::size_t>(root)] != 0) continue;
    theta[static_cast<std::size_t>(root)] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (auto [v, sign] : adj[static_cast<std::size_t>(u)]) {
        int need = theta[static_cast<std::size_t>(u)] * sign;
        if (theta[static_cast<std::size_t>(v)] == 0) {
          theta[static_cast<std::size_t>(v)] = need;
          queue.push_back(v);
        } else if (theta[static_cast<std::size_t>(v)] != need) {
          return std::nullopt;
        }
      }
    }
  }
  return theta;
}

FrustrationResult frustration_index(const SignedGraph& g, std::uint32_t subset) {
  if (subset == 0) throw EmptySubset("frustration index of the empty set");
  int size = std::popcount(subset);
  if (size > 26) throw SubsetTooLarge("subset too large for exhaustive bipartitions");
  double vol = g.volume(subset);
  if (vol <= 0.0) throw EmptySubset("subset has zero volume");

  std::vector<const SignedGraph::Edge*> internal;
  for (const auto& e : g.edges())
    if (((subset >> e.u) & 1u) && ((subset >> e.v) & 1u)) internal.push_back(&e);

  // fix the lowest vertex on side1; bipartitions are symmetric under swap
  std::vector<int> rest;
  int lowest = std::countr_zero(subset);
  for (int i = 0; i < g.vertex_count(); ++i)
    if (i != lowest && ((subset >> i) & 1u)) rest.push_back(i);

  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_side1 = 0;
  std::uint64_t combos = std::uint64_t(1) << rest.size();
  for (std::uint64_t c = 0; c < combos; ++c) {
    std::uint32_t side1 = 1u << lowest;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if ((c >> i) & 1u) side1 |= 1u << rest[i];
    double residual = 0.0;
    for (const auto* e : internal) {
      bool u1 = (side1 >> e->u) & 1u;
      bool v1 = (side1 >> e->v) & 1u;
      bool frustrated = (e->sign > 0) ? (u1 != v1) : (u1 == v1);
      if (frustrated) residual += 2.0 * e->weight;  // both edge orientations count
      if (residual >= best) break;
    }
    if (residual < best) {
      best = residual;
      best_side1 = side1;
      if (best == 0.0) break;
    }
  }
  return FrustrationResult{best / vol, best_side1, subset & ~best_side1};
}

double expansion(const SignedGraph& g, std::uint32_t subset) {
  if (subset == 0) throw EmptySubset("expansion of the empty set");
  double vol = g.volume(subset);
  if (vol <= 0.0) throw EmptySubset("subset has zero volume");
  double cut = 0.0;
  for (const auto& e : g.edges()) {
    bool u_in = (subset >> e.u) & 1u;
    bool v_in = (subset >> e.v) & 1u;
    if (u_in != v_in) cut += e.weight;
  }
  return cut / vol;
}

namespace {

struct SubsetTables {
  std::vector<double> vol;       // per mask
  std::vector<double> cut;       // boundary weight per mask
  std::vector<double> value;     // expansion (+ frustration when signed); NaN inadmissible
};

SubsetTables subset_tables(const SignedGraph& g, bool with_frustration) {
  int n = g.vertex_count();
  std::uint32_t full = g.full_set();
  SubsetTables t;
  t.vol.assign(full + 1u, 0.0);
  t.cut.assign(full + 1u, 0.0);
  t.value.assign(full + 1u, std::numeric_limits<double>::quiet_NaN());
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t low = s & (~s + 1u);
    t.vol[s] = t.vol[s ^ low] + g.degrees()[static_cast<std::size_t>(std::countr_zero(low))];
  }
  for (const auto& e : g.edges()) {
    std::uint32_t bu = 1u << e.u, bv = 1u << e.v;
    for (std::uint32_t s = 1; s <= full; ++s) {
      bool u_in = s & bu, v_in = s & bv;
      if (u_in != v_in) t.cut[s] += e.weight;
    }
  }
  (void)n;
  for (std::uint32_t s = 1; s <= full; ++s) {
    if (t.vol[s] <= 0.0) continue;  // inadmissible (isolated vertices only)
    double v = t.cut[s] / t.vol[s];
    if (with_frustration) v += frustration_index(g, s).value;
    t.value[s] = v;
  }
  return t;
}

}  // namespace

double cheeger_constant(const SignedGraph& g, int k, bool signed_constant, CheegerWitness* witness) {
  int n = g.vertex_count();
  if (n > 14) throw GraphTooLarge("exhaustive Cheeger search limited to 14 vertices");
  if (k < 1) throw Error("Cheeger order must be >= 1");
  if (std::pow(static_cast<double>(k + 1), n) > 4e8)
    throw GraphTooLarge("k-way enumeration too large");

  SubsetTables tables = subset_tables(g, signed_constant);
  std::uint32_t full = g.full_set();

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> current, best_sets;

  // disjoint k-tuples in increasing mask order (unordered collections)
  std::function<void(std::uint32_t, std::uint32_t, double, int)> rec =
      [&](std::uint32_t used, std::uint32_t min_mask, double cur_max, int depth) {
        if (depth == static_cast<int>(k)) {
          if (cur_max < best) {
            best = cur_max;
            best_sets = current;
          }
          return;
        }
        std::uint32_t avail = full & ~used;
        // iterate nonempty submasks of avail
        for (std::uint32_t sub = avail; sub != 0; sub = (sub - 1) & avail) {
          if (sub <= min_mask) continue;
          double v = tables.value[sub];
          if (std::isnan(v)) continue;
          double m = std::max(cur_max, v);
          if (m >= best) continue;
          current.push_back(sub);
          rec(used | sub, sub, m, depth + 1);
          current.pop_back();
        }
      };
  rec(0, 0, 0.0, 0);

  if (!std::isfinite(best)) throw Error("no admissible subset family");
  if (witness) {
    witness->subsets = best_sets;
    witness->bipartitions.clear();
    if (signed_constant)
      for (std::uint32_t s : best_sets) {
        auto f = frustration_index(g, s);
        witness->bipartitions.emplace_back(f.side1, f.side2);
      }
  }
  return best;
}

namespace {

Eigen::VectorXd spectrum_of(const SignedGraph& g, bool signed_laplacian, bool normalized) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      laplacian(g, signed_laplacian, normalized).to_dense_real(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

CheegerReport cheeger_report(const SignedGraph& g, int k) {
  CheegerReport r;
  r.k = k;
  r.h_signed = cheeger_constant(g, k, true, &r.witness_signed);
  r.h_unsigned = cheeger_constant(g, k, false, &r.witness_unsigned);
  r.lambda_signed = spectrum_of(g, true, false);
  r.lambda_unsigned = spectrum_of(g, false, false);
  r.lambda_signed_norm = spectrum_of(g, true, true);
  r.lambda_unsigned_norm = spectrum_of(g, false, true);
  const double eps = 1e-9;
  r.sandwich_lower_signed = r.lambda_signed_norm[k - 1] / 2.0 <= r.h_signed + eps;
  r.sandwich_lower_unsigned = r.lambda_unsigned_norm[k - 1] / 2.0 <= r.h_unsigned + eps;
  return r;
}

bool AuditReport::hard_pass() const {
  for (const auto& c : checks)
    if (c.hard && c.applicable && !c.pass) return false;
  return true;
}

AuditReport audit_inequalities(const SignedGraph& g, int k_max) {
  int n = g.vertex_count();
  if (n > 14) throw GraphTooLarge("audit limited to 14 vertices");
  if (k_max < 1 || k_max >= n) throw Error("k_max must be in [1, |V|)");

  AuditReport report;
  const double eps = 1e-9;
  double dmax = g.d_max();

  Eigen::VectorXd ls = spectrum_of(g, true, false);
  Eigen::VectorXd lu = spectrum_of(g, false, false);
  Eigen::VectorXd lsn = spectrum_of(g, true, true);
  Eigen::VectorXd lun = spectrum_of(g, false, true);

  std::vector<double> h_signed(static_cast<std::size_t>(k_max) + 1),
      h_unsigned(static_cast<std::size_t>(k_max) + 1);
  std::vector<CheegerWitness> wit_unsigned(static_cast<std::size_t>(k_max) + 1);
  for (int k = 1; k <= k_max; ++k) {
    h_signed[static_cast<std::size_t>(k)] = cheeger_constant(g, k, true, nullptr);
    h_unsigned[static_cast<std::size_t>(k)] =
        cheeger_constant(g, k, false, &wit_unsigned[static_cast<std::size_t>(k)]);
  }

  auto add = [&](std::string name, int k, double lhs, double rhs, bool hard,
                 bool applicable = true, std::string note = "") {
    report.checks.push_back(
        AuditCheck{std::move(name), k, lhs, rhs, hard, applicable, lhs <= rhs + eps,
                   std::move(note)});
  };

  for (int k = 1; k <= k_max; ++k) {
    double hs = h_signed[static_cast<std::size_t>(k)];
    double hu = h_unsigned[static_cast<std::size_t>(k)];
    // normalized sandwich, lower side (hard)
    add("sandwich_lower_signed", k, lsn[k - 1] / 2.0, hs, true);
    add("sandwich_lower_unsigned", k, lun[k - 1] / 2.0, hu, true);
    // upper side: hard at k = 1 in the sqrt(2 lambda) normalized form
    if (k == 1) {
      add("sandwich_upper_signed", k, hs, sqrt_clamped(2.0 * lsn[0]), true);
      add("sandwich_upper_unsigned", k, hu, sqrt_clamped(2.0 * lun[0]), true);
    }
    // literal D_max-weighted upper forms: the constant C is unspecified, so
    // these are reported as ratios, never asserted
    double k3 = static_cast<double>(k) * k * k;
    add("upper_dmax_signed", k, hs, k3 * sqrt_clamped(2.0 * dmax * lsn[k - 1]), false, true,
        "reported constant only");
    add("upper_dmax_unsigned", k, hu, k3 * sqrt_clamped(2.0 * dmax * lun[k - 1]), false, true,
        "reported constant only");
  }

  // ground-state support of the signed Laplacian (amplitude threshold)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g, true, false).to_dense_real());
  Eigen::VectorXd ground = es.eigenvectors().col(0);
  double cap = ground.cwiseAbs().maxCoeff();
  std::uint32_t omega = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(ground[i]) > 1e-8 * cap) omega |= 1u << i;
  report.omega = omega;
  double vol_omega = g.volume(omega);

  if (n >= 2 && k_max >= 2) {
    // Theorem 2: S from the unsigned h_2 witness pair (both members satisfy
    // the premise); pick the one with larger overlap volume with Omega
    const auto& pair_sets = wit_unsigned[2].subsets;
    std::uint32_t s_pick = 0;
    double best_overlap = -1.0;
    for (std::uint32_t s : pair_sets) {
      double ov = g.volume(s & omega);
      if (ov > best_overlap) {
        best_overlap = ov;
        s_pick = s;
      }
    }
    double vol_s = g.volume(s_pick);
    double vol_int = g.volume(s_pick & omega);
    if ((s_pick & omega) == 0u || vol_int <= 0.0) {
      report.degenerate_witness = true;
      add("theorem2", 2, lsn[1], std::numeric_limits<double>::infinity(), true, false,
          "witness misses the ground support (S cap Omega empty)");
    } else {
      double rhs = 2.0 * std::sqrt(2.0 * dmax) *
                   (vol_omega / vol_int * sqrt_clamped(lsn[0]) +
                    2.0 * vol_s / vol_int * sqrt_clamped(lun[1]));
      add("theorem2", 2, lsn[1], rhs, true);
    }

    // Theorem 3: the literal uniform readings fail on frustrated triangles;
    // the provable pairing puts the normalized unsigned eigenvalue against
    // the unnormalized signed one under the D_max weight (hard), with both
    // literal readings logged as diagnostics.
    add("theorem3", 2, lun[1], sqrt_clamped(2.0 * dmax * ls[1]), true);
    add("theorem3_literal_normalized", 2, lun[1], sqrt_clamped(2.0 * dmax * lsn[1]), false, true,
        "diagnostic");
    add("theorem3_literal_unnormalized", 2, lu[1], sqrt_clamped(2.0 * dmax * ls[1]), false,
        true, "diagnostic");
    add("theorem3_chain", 2, lun[1], 2.0 * h_signed[2], false, true,
        "proof-chain form lambda_2^+ <= 2 h_2^sigma");

    // Theorem 1 (subgraph version): soft report on the induced graph of Omega
    int osize = std::popcount(omega);
    if (osize >= 2) {
      std::vector<int> map_full_to_sub(static_cast<std::size_t>(n), -1);
      int idx = 0;
      for (int i = 0; i < n; ++i)
        if ((omega >> i) & 1u) map_full_to_sub[static_cast<std::size_t>(i)] = idx++;
      SignedGraph sub(osize);
      for (const auto& e : g.edges())
        if (((omega >> e.u) & 1u) && ((omega >> e.v) & 1u))
          sub.add_edge(map_full_to_sub[static_cast<std::size_t>(e.u)],
                       map_full_to_sub[static_cast<std::size_t>(e.v)], e.weight, e.sign);
      bool sub_ok = true;
      for (double d : sub.degrees())
        if (d <= 0.0) sub_ok = false;
      if (sub_ok) {
        Eigen::VectorXd sub_lun = spectrum_of(sub, false, true);
        CheegerWitness sub_wit;
        cheeger_constant(sub, std::min(2, sub.vertex_count() - 1), false, &sub_wit);
        // witness subset back in full-graph labels
        std::uint32_t s_full = 0;
        double best_vol = -1.0;
        std::vector<int> sub_to_full;
        for (int i = 0; i < n; ++i)
          if ((omega >> i) & 1u) sub_to_full.push_back(i);
        for (std::uint32_t s : sub_wit.subsets) {
          std::uint32_t sf = 0;
          for (int b = 0; b < osize; ++b)
            if ((s >> b) & 1u) sf |= 1u << sub_to_full[static_cast<std::size_t>(b)];
          double v = g.volume(sf);
          if (v > best_vol) {
            best_vol = v;
            s_full = sf;
          }
        }
        if (best_vol > 0.0 && sub_lun.size() >= 2) {
          double rhs = 2.0 * std::sqrt(2.0 * dmax) *
                       (vol_omega / g.volume(s_full) * sqrt_clamped(lsn[0]) +
                        sqrt_clamped(sub_lun[1]));
          add("theorem1_subgraph", 2, lsn[1], rhs, false, true, "subgraph form, diagnostic");
        }
      }
    }
  }
  return report;
}

}  // namespace stoq
