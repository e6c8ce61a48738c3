#pragma once

#include <optional>
#include <vector>

#include "stoqlab/hermitian_matrix.hpp"
#include "stoqlab/pauli.hpp"

namespace stoq {

// One of the two stoquastization families: de-signing keeps the diagonal and
// replaces each off-diagonal entry by minus its modulus; shifting subtracts a
// uniform constant from the nonzero off-diagonal positions (or, in the dense
// rank-1 form, from every position) and halves.
struct StoquastizationKind {
  enum class Variant { DeSigned, ShiftedUniform, ShiftedDenseRank1 };

  Variant variant = Variant::DeSigned;
  double shift = 0.0;

  static StoquastizationKind designed() { return {Variant::DeSigned, 0.0}; }
  static StoquastizationKind shifted_uniform(double shift);
  static StoquastizationKind shifted_dense_rank1(double shift);
};

// Diagonal +/-1 unitary S; conjugation maps H to S H S entrywise s_i s_j H_ij.
struct SignatureMatrix {
  std::vector<int> signs;  // entries in {+1, -1}

  Index dim() const { return static_cast<Index>(signs.size()); }
  HermitianMatrix conjugate(const HermitianMatrix& m) const;
  bool is_identity() const;
};

// Diagonal unchanged, off-diagonal entries replaced by -|H_ij|; the result is
// stoquastic with tol 0 and has the sparsity pattern of the input.
HermitianMatrix design_matrix(const HermitianMatrix& m);

// (H - c * sum_{i != j, H_ij != 0} |i><j|) / 2 with c = shift if given, else
// the maximum absolute off-diagonal entry.  Real symmetric input only.
HermitianMatrix shift_matrix(const HermitianMatrix& m, std::optional<double> shift = {});

// (H - shift * |s><s|) / 2 with |s><s| the all-ones matrix including the
// diagonal; dense real input only.
HermitianMatrix shift_dense(const HermitianMatrix& m, double shift);

// Pauli-level de-signing of h = H_Z + H_O where H_O holds only X/Y strings of
// weight <= k: each off-diagonal support block is de-signed at matrix level
// and re-expanded in the Pauli basis (Hilbert-Schmidt inner product).
PauliHamiltonian design_pauli(const PauliHamiltonian& h, int k);

// Catalyst coefficient transform: DeSigned maps a -> -|a|; ShiftedUniform(c)
// maps a -> (a - c)/2.  Coefficients are aligned with the caller's edge list.
std::vector<double> stoquastize_catalyst(const std::vector<double>& alphas,
                                         const StoquastizationKind& kind);

// Signature S with S m S = design_matrix(m) when one exists (breadth-first
// sign propagation over the sparsity graph, every edge consistency-checked);
// absent when the matrix cannot be cured by signs, including any input with
// genuinely complex off-diagonal entries.
std::optional<SignatureMatrix> curability_check(const HermitianMatrix& m);

}  // namespace stoq
