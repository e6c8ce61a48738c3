#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stoqlab/hermitian_matrix.hpp"

namespace stoq {

// Simple undirected graph with nonnegative edge weights and +/-1 edge
// signatures.  Degrees are signature-blind.
class SignedGraph {
 public:
  struct Edge {
    int u, v;
    double weight;
    int sign;  // +1 or -1
  };

  explicit SignedGraph(int vertices);

  void add_edge(int u, int v, double weight, int sign);

  int vertex_count() const { return nv_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& degrees() const { return degrees_; }
  double d_max() const;
  double volume(std::uint32_t subset) const;
  std::uint32_t full_set() const { return (nv_ >= 32) ? ~0u : ((1u << nv_) - 1u); }

  std::string to_text() const;  // "vertices N" header, then "u v weight sign" lines
  static SignedGraph from_text(std::string_view text);

 private:
  int nv_;
  std::vector<Edge> edges_;
  std::vector<double> degrees_;
};

// L^sigma = D - A^sigma (unsigned variant forces sigma = +1); the normalized
// form is D^{-1/2} L D^{-1/2} and rejects isolated vertices.
HermitianMatrix laplacian(const SignedGraph& g, bool signed_laplacian, bool normalized);

// Switching assignment theta with theta_u theta_v sigma_uv = +1 on every edge
// when the graph is balanced (sign propagation over a spanning forest with
// edge consistency checks); absent otherwise.
std::optional<std::vector<int>> is_balanced(const SignedGraph& g);

struct FrustrationResult {
  double value = 0.0;       // minimized residual / vol(S)
  std::uint32_t side1 = 0;  // witness bipartition, side1 | side2 == subset
  std::uint32_t side2 = 0;
};

// Intensive frustration index of the induced subgraph on `subset`: exhaustive
// minimum over bipartitions S1 u S2 = S of twice the frustrated edge weight
// (positive-cross plus negative-internal), divided by vol(S).
FrustrationResult frustration_index(const SignedGraph& g, std::uint32_t subset);

// |E(S, S-bar)| / vol(S), signature-blind.
double expansion(const SignedGraph& g, std::uint32_t subset);

struct CheegerWitness {
  std::vector<std::uint32_t> subsets;  // k disjoint nonempty subsets
  // most-balanced bipartition per subset (signed constants only)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bipartitions;
};

// k-way Cheeger constant by exhaustive enumeration over disjoint nonempty
// subsets: max expansion (unsigned) or max of frustration + expansion
// (signed).  The enumeration is the oracle of record; |V| <= 14.
double cheeger_constant(const SignedGraph& g, int k, bool signed_constant,
                        CheegerWitness* witness = nullptr);

struct CheegerReport {
  int k = 1;
  double h_signed = 0.0;
  double h_unsigned = 0.0;
  CheegerWitness witness_signed, witness_unsigned;
  // eigenvalue ladders, ascending
  Eigen::VectorXd lambda_signed, lambda_unsigned;            // unnormalized
  Eigen::VectorXd lambda_signed_norm, lambda_unsigned_norm;  // normalized
  bool sandwich_lower_signed = false;    // lambda_k/2 <= h_k (normalized)
  bool sandwich_lower_unsigned = false;
};

CheegerReport cheeger_report(const SignedGraph& g, int k);

struct AuditCheck {
  std::string name;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool hard = false;        // audit fails when a hard check fails
  bool applicable = true;   // false when premises fail (e.g. empty witness overlap)
  bool pass = true;
  std::string note;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool degenerate_witness = false;  // Theorem 2 witness missed the ground support
  std::uint32_t omega = 0;          // numerically supported ground-state set

  bool hard_pass() const;
};

// Numerical audit of the Cheeger sandwich and the signed/unsigned comparison
// theorems for k <= k_max.  Hard assertions use normalized eigenvalues; the
// D_max-weighted literal forms are reported as diagnostics with their ratios.
AuditReport audit_inequalities(const SignedGraph& g, int k_max);

}  // namespace stoq
