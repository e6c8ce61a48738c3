#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stoqlab/hermitian_matrix.hpp"
#include "stoqlab/rng.hpp"

namespace stoq {

// Real symmetric matrix with i.i.d. entries uniform in [-1,1], symmetrized by
// averaging with its transpose.
HermitianMatrix sample_wigner(int N, RngStream& rng);

// Real and imaginary parts each i.i.d. uniform in [-1,1], averaged with the
// conjugate transpose; the diagonal ends up real.
HermitianMatrix sample_complex_hermitian(int N, RngStream& rng);

// Matched pair (W, W_plus) with W_plus = ones + W/2: the shifted ensemble is
// the Wigner ensemble plus the rank-1 all-ones matrix, generated from a
// single draw.
std::pair<HermitianMatrix, HermitianMatrix> sample_wigner_shifted_pair(int N, RngStream& rng);

// Antiferromagnetic Max-Cut instance on a simple 3-regular graph with exactly
// two classical ground states of H_I = sum Z_i Z_j (a bit-complement pair).
// All couplings are +1.  `solution` is the representative minimizer with
// qubit 0 equal to 0 (the numerically smaller of the pair).
struct MaxCutInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, each vertex in 3 edges
  std::uint64_t solution = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  double coupling() const { return 1.0; }

  // classical energy of H_I at bitstring z (qubit 0 = most significant bit)
  double problem_energy(std::uint64_t z) const;

  std::string solution_bits() const;  // qubit 0 first

  std::string to_text() const;
  static MaxCutInstance from_text(std::string_view text);
};

// Pairing-model generation with rejection of loops/multi-edges, then
// exhaustive verification that exactly two minimizers exist; failed instances
// are resampled up to max_retries before RetriesExhausted.  The accepted
// distribution is uniform over simple 3-regular graphs conditioned on the
// unique-solution property; no reweighting is attempted.
MaxCutInstance sample_maxcut(int n, RngStream& rng, int max_retries = 1000);

enum class CatalystMode { Uniform, Pm1 };

// One coefficient per edge: Uniform draws from [-1,1], Pm1 from {-1,+1}.
std::vector<double> sample_catalyst(const std::vector<std::pair<int, int>>& edges,
                                    CatalystMode mode, RngStream& rng);

}  // namespace stoq
