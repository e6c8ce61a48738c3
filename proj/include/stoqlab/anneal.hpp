#pragma once

#include <optional>
#include <vector>

#include "stoqlab/ensembles.hpp"
#include "stoqlab/path.hpp"

namespace stoq {

// Eq.-7-style path for a Max-Cut instance: driver -sum_i X_i, catalyst
// sum_<ij> alpha_ij X_i X_j on the instance edges, problem sum_<ij> Z_i Z_j.
InterpolationPath maxcut_path(const MaxCutInstance& instance, const std::vector<double>& alphas);

struct EvolutionResult {
  double t_f = 0.0;
  double p_gs = 0.0;
  double norm_drift = 0.0;
  long steps_used = 0;
  double tolerance_used = 0.0;  // local tolerance the accepted run used
};

struct EvolveOptions {
  double local_tol = 1e-8;      // initial local error tolerance per step
  double p_stability = 1e-6;    // accept once halving the tolerance moves p_gs less
  int max_tol_halvings = 6;
  long max_steps = 20'000'000;
  double max_norm_drift = 1e-8;
  // Sector basis row of the solution pair; defaults to the unique minimizer
  // of the problem diagonal.
  std::optional<Index> solution_row;
};

// Integrates i dpsi/dt = H(t/t_f) psi in the parity +1 sector from the
// uniform superposition.  p_gs is the squared overlap with the sector basis
// state of the solution pair.  Steps are exponential-midpoint (Magnus-2) with
// step-doubling error control; the run is re-done at halved tolerance until
// p_gs is stable to p_stability.
EvolutionResult evolve(const InterpolationPath& path, double t_f, const ParitySector& sector,
                       const EvolveOptions& opts = {});

struct TtsResult {
  double t_best = 0.0;
  double tts = 0.0;
  std::vector<double> p_gs;  // per grid point
  int floor_hits = 0;        // times p_gs was floored at 1e-12
};

// Evaluates t_f / p_gs(t_f) on the grid and returns the minimizer; p_gs is
// floored at 1e-12 so empty overlaps cannot blow up the ratio.
TtsResult tts_optimize(const InterpolationPath& path, const ParitySector& sector,
                       const std::vector<double>& t_grid, const EvolveOptions& opts = {});

// Default log-spaced anneal-time grid: 2^0 .. 2^14, two points per octave.
std::vector<double> default_t_grid();

}  // namespace stoq
