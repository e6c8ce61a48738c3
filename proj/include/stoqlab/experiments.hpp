#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stoqlab/ensembles.hpp"
#include "stoqlab/signed_graph.hpp"

namespace stoq {

enum class Family { DenseWins, MaxcutMingap, MaxcutTts, CheegerAudit, XdiagGaps };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct ExperimentConfig {
  Family family = Family::DenseWins;
  std::vector<int> sizes;
  int instances_per_size = 20;
  long samples_per_size = 100000;      // dense_wins
  int realizations_per_instance = 10;  // catalyst draws per Max-Cut instance
  CatalystMode catalyst_mode = CatalystMode::Pm1;
  bool run_designed = true;
  bool run_shifted = true;
  bool real_ensemble = true;     // dense_wins
  bool complex_ensemble = true;  // dense_wins
  std::uint64_t master_seed = 1;
  std::string out_path;  // prefix for .jsonl/.csv; empty writes nothing
  int workers = 1;
  long max_records_per_size = 1000;  // JSONL cap for the high-volume families
  // cheeger_audit
  double edge_probability = 0.5;
  double balanced_fraction = 0.1;
  int k_max = 2;
  // maxcut_tts
  std::vector<double> t_grid;  // empty -> default_t_grid()
  int max_retries = 2000;
  int bootstrap_resamples = 1000;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static ExperimentConfig load(const std::string& path);
};

enum class Outcome { Win, Loss, Tie };

// Strict-win classification with the tie band 1e-10 * max(1, |a|, |b|);
// ties are excluded from wins and reported separately.
Outcome classify_win(double nonstoq, double stoq);

struct FractionStat {
  long total = 0;
  long wins = 0;
  long ties = 0;
  double fraction = 0.0;     // wins / total
  double se2 = 0.0;          // twice the binomial standard error
  double boot2sigma = 0.0;   // twice the bootstrap std over resampled fractions
};

FractionStat fraction_stat(const std::vector<Outcome>& outcomes, int resamples, RngStream& rng);

struct Summary {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  long hard_failures = 0;

  std::string to_csv() const;
};

Summary run_dense_wins(const ExperimentConfig& cfg);
Summary run_maxcut_mingap(const ExperimentConfig& cfg);
Summary run_maxcut_tts(const ExperimentConfig& cfg);
Summary run_cheeger_audit(const ExperimentConfig& cfg);
Summary run_xdiag_gaps(const ExperimentConfig& cfg);
Summary run_family(const ExperimentConfig& cfg);

// Deterministic stream labels: one stream per (size, instance, realization,
// purpose) so instances replay identically under any scheduling.
std::uint64_t experiment_stream(int size, long instance, int realization, int purpose);

// Random Hamiltonian of the X-diagonal form: a random subset of non-identity
// X-strings with coefficients uniform in [-1,1] (plus an optional identity
// offset).
PauliHamiltonian sample_xdiag(int n, RngStream& rng);

// Exact spectrum of an X/I-string Hamiltonian via the Walsh-Hadamard
// transform of its coefficient table; ascending.
Eigen::VectorXd xdiag_spectrum(const PauliHamiltonian& h);

// Random connected Erdos-Renyi signed graph with unit weights; when
// `balanced` the signature is a switching image of the all-positive one.
SignedGraph sample_signed_graph(int vertices, double edge_probability, bool balanced,
                                RngStream& rng);

void parallel_for(long count, int workers, const std::function<void(long)>& fn);

}  // namespace stoq
