#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "stoqlab/experiments.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::vector<int> sizes;
  std::optional<std::uint64_t> seed;
  std::optional<int> instances;
  std::optional<long> samples;
  std::optional<int> realizations;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::string> catalyst_mode;
};

void add_common_flags(CLI::App* sub, CliOverrides& ov) {
  sub->add_option("--config", ov.config_path, "JSON config file mirroring ExperimentConfig");
  sub->add_option("--seed", ov.seed, "master seed");
  sub->add_option("--sizes", ov.sizes, "problem sizes")->delimiter(',');
  sub->add_option("--instances", ov.instances, "instances per size");
  sub->add_option("--samples", ov.samples, "samples per size (dense-wins)");
  sub->add_option("--realizations", ov.realizations, "catalyst draws per instance");
  sub->add_option("--out", ov.out, "output prefix for .jsonl and .csv files");
  sub->add_option("--workers", ov.workers, "worker thread count");
  sub->add_option("--catalyst-mode", ov.catalyst_mode, "uniform or pm1");
}

int run(stoq::Family family, const CliOverrides& ov) {
  stoq::ExperimentConfig cfg;
  if (!ov.config_path.empty()) cfg = stoq::ExperimentConfig::load(ov.config_path);
  cfg.family = family;
  if (!ov.sizes.empty()) cfg.sizes = ov.sizes;
  if (ov.seed) cfg.master_seed = *ov.seed;
  if (ov.instances) cfg.instances_per_size = *ov.instances;
  if (ov.samples) cfg.samples_per_size = *ov.samples;
  if (ov.realizations) cfg.realizations_per_instance = *ov.realizations;
  if (ov.out) cfg.out_path = *ov.out;
  if (ov.workers) cfg.workers = *ov.workers;
  if (ov.catalyst_mode) {
    if (*ov.catalyst_mode == "uniform")
      cfg.catalyst_mode = stoq::CatalystMode::Uniform;
    else if (*ov.catalyst_mode == "pm1")
      cfg.catalyst_mode = stoq::CatalystMode::Pm1;
    else {
      std::cerr << "catalyst mode must be 'uniform' or 'pm1'\n";
      return 2;
    }
  }

  stoq::Summary summary = stoq::run_family(cfg);
  std::cout << summary.to_csv();
  if (summary.hard_failures > 0) {
    std::cerr << summary.hard_failures << " hard assertion failure(s)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stoqlab: stoquastization experiments on Hamiltonians and signed graphs"};
  app.require_subcommand(1);

  CliOverrides ov;
  auto* dense = app.add_subcommand("dense-wins", "gap win fractions for dense random matrices");
  auto* mingap = app.add_subcommand("maxcut-mingap", "sector minimum-gap win fractions for Max-Cut paths");
  auto* tts = app.add_subcommand("maxcut-tts", "time-to-solution win fractions for Max-Cut paths");
  auto* cheeger = app.add_subcommand("cheeger-audit", "signed-graph Cheeger inequality audit");
  auto* xdiag = app.add_subcommand("xdiag-gaps", "de-signing gaps of X-diagonal Hamiltonians");
  for (auto* sub : {dense, mingap, tts, cheeger, xdiag}) add_common_flags(sub, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dense->parsed()) return run(stoq::Family::DenseWins, ov);
    if (mingap->parsed()) return run(stoq::Family::MaxcutMingap, ov);
    if (tts->parsed()) return run(stoq::Family::MaxcutTts, ov);
    if (cheeger->parsed()) return run(stoq::Family::CheegerAudit, ov);
    if (xdiag->parsed()) return run(stoq::Family::XdiagGaps, ov);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
