#pragma once

#include <optional>
#include <vector>

#include "stoqlab/hermitian_matrix.hpp"
#include "stoqlab/path.hpp"

namespace stoq {

enum class EigMethod { Auto, Dense, Krylov };

struct EigsOptions {
  EigMethod method = EigMethod::Auto;
  double tol_rel = 1e-9;          // residual <= tol_rel * ||H||
  Index dense_threshold = 4096;   // Auto picks dense at or below this
  int max_restarts = 500;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;     // k smallest, ascending
  std::vector<double> residual_norms;  // per eigenpair
  EigMethod method = EigMethod::Dense;
};

// k smallest eigenvalues; dense full diagonalization at small dimension,
// restarted Krylov otherwise.  Throws NonConvergence (with the best residual)
// when the iteration budget runs out.
SpectrumResult eigs_lowest(const HermitianMatrix& m, int k, const EigsOptions& opts = {});

// Spectral gap lambda_1 - lambda_0; degenerate ground spaces simply report
// their near-zero difference.
double gap(const HermitianMatrix& m, const EigsOptions& opts = {});

struct MinGapResult {
  double s_star = 0.0;
  double gap_min = 0.0;
  std::optional<double> sector_gap;  // epsilon_1 - epsilon_0 inside the sector
  std::optional<bool> global_flag;   // E_0(s*) < epsilon_0(s*)
  std::optional<double> e0_full;     // global ground energy at s*
  std::optional<double> eps0_sector; // sector ground energy at s*
  bool multiple_minima_warning = false;
};

struct SweepOptions {
  int grid_points = 101;
  double s_resolution = 1e-5;
  double near_tie_rel = 0.01;     // two grid minima this close are both refined
  Index dense_threshold = 512;    // below: dense eigensolve per point
  double tol_rel = 1e-9;
};

// Coarse grid scan of the (sector) gap of H(s) followed by golden-section
// refinement around the smallest grid minimum.  With a sector, the swept gap
// is the sector-internal one and global_flag compares the sector ground
// energy against the full-space ground energy at s*.
MinGapResult min_gap_sweep(const InterpolationPath& path, std::optional<ParitySector> sector,
                           const SweepOptions& opts = {});

// d(Delta)/ds at s = 0 for H_s = h0 + s v:
// <psi_1|v|psi_1> - <psi_0|v|psi_0>.  Throws DegeneracyError when the ground
// or first excited state of h0 is degenerate (tolerance 1e-8).
double first_order_gap_derivative(const HermitianMatrix& h0, const HermitianMatrix& v);

}  // namespace stoq
