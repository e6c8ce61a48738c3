#include "stoqlab/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "stoqlab/anneal.hpp"
#include "stoqlab/spectra.hpp"
#include "stoqlab/stoquastize.hpp"

namespace stoq {

using nlohmann::json;

std::string family_name(Family f) {
  switch (f) {
    case Family::DenseWins: return "dense_wins";
    case Family::MaxcutMingap: return "maxcut_mingap";
    case Family::MaxcutTts: return "maxcut_tts";
    case Family::CheegerAudit: return "cheeger_audit";
    case Family::XdiagGaps: return "xdiag_gaps";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "dense_wins") return Family::DenseWins;
  if (name == "maxcut_mingap") return Family::MaxcutMingap;
  if (name == "maxcut_tts") return Family::MaxcutTts;
  if (name == "cheeger_audit") return Family::CheegerAudit;
  if (name == "xdiag_gaps") return Family::XdiagGaps;
  throw Error("unknown family: " + name);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("family")) c.family = family_from_name(j.at("family").get<std::string>());
  c.sizes = j.value("sizes", c.sizes);
  c.instances_per_size = j.value("instances_per_size", c.instances_per_size);
  c.samples_per_size = j.value("samples_per_size", c.samples_per_size);
  c.realizations_per_instance = j.value("realizations_per_instance", c.realizations_per_instance);
  if (j.contains("catalyst_mode")) {
    std::string m = j.at("catalyst_mode").get<std::string>();
    if (m == "uniform")
      c.catalyst_mode = CatalystMode::Uniform;
    else if (m == "pm1")
      c.catalyst_mode = CatalystMode::Pm1;
    else
      throw Error("catalyst_mode must be 'uniform' or 'pm1'");
  }
  c.run_designed = j.value("run_designed", c.run_designed);
  c.run_shifted = j.value("run_shifted", c.run_shifted);
  c.real_ensemble = j.value("real_ensemble", c.real_ensemble);
  c.complex_ensemble = j.value("complex_ensemble", c.complex_ensemble);
  c.master_seed = j.value("master_seed", c.master_seed);
  c.out_path = j.value("out_path", c.out_path);
  c.workers = j.value("workers", c.workers);
  c.max_records_per_size = j.value("max_records_per_size", c.max_records_per_size);
  c.edge_probability = j.value("edge_probability", c.edge_probability);
  c.balanced_fraction = j.value("balanced_fraction", c.balanced_fraction);
  c.k_max = j.value("k_max", c.k_max);
  c.t_grid = j.value("t_grid", c.t_grid);
  c.max_retries = j.value("max_retries", c.max_retries);
  c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  if (c.instances_per_size <= 0 || c.samples_per_size <= 0)
    throw Error("instance and sample counts must be positive");
  for (int s : c.sizes)
    if (s <= 0) throw Error("sizes must be positive");
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["family"] = family_name(family);
  j["sizes"] = sizes;
  j["instances_per_size"] = instances_per_size;
  j["samples_per_size"] = samples_per_size;
  j["realizations_per_instance"] = realizations_per_instance;
  j["catalyst_mode"] = catalyst_mode == CatalystMode::Uniform ? "uniform" : "pm1";
  j["run_designed"] = run_designed;
  j["run_shifted"] = run_shifted;
  j["real_ensemble"] = real_ensemble;
  j["complex_ensemble"] = complex_ensemble;
  j["master_seed"] = master_seed;
  j["out_path"] = out_path;
  j["workers"] = workers;
  j["max_records_per_size"] = max_records_per_size;
  j["edge_probability"] = edge_probability;
  j["balanced_fraction"] = balanced_fraction;
  j["k_max"] = k_max;
  j["t_grid"] = t_grid;
  j["max_retries"] = max_retries;
  j["bootstrap_resamples"] = bootstrap_resamples;
  return j;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  json j;
  in >> j;
  return from_json(j);
}

Outcome classify_win(double nonstoq, double stoq) {
  double tol = 1e-10 * std::max({1.0, std::abs(nonstoq), std::abs(stoq)});
  if (std::abs(nonstoq - stoq) <= tol) return Outcome::Tie;
  return nonstoq > stoq ? Outcome::Win : Outcome::Loss;
}

FractionStat fraction_stat(const std::vector<Outcome>& outcomes, int resamples, RngStream& rng) {
  FractionStat s;
  s.total = static_cast<long>(outcomes.size());
  for (Outcome o : outcomes) {
    if (o == Outcome::Win) ++s.wins;
    if (o == Outcome::Tie) ++s.ties;
  }
  if (s.total == 0) return s;
  double p = static_cast<double>(s.wins) / static_cast<double>(s.total);
  s.fraction = p;
  s.se2 = 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(s.total));
  double mean = 0.0, m2 = 0.0;
  for (int r = 0; r < resamples; ++r) {
    long w = 0;
    for (long i = 0; i < s.total; ++i)
      if (outcomes[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(s.total)))] ==
          Outcome::Win)
        ++w;
    double f = static_cast<double>(w) / static_cast<double>(s.total);
    double delta = f - mean;
    mean += delta / (r + 1);
    m2 += delta * (f - mean);
  }
  if (resamples > 1) s.boot2sigma = 2.0 * std::sqrt(m2 / (resamples - 1));
  return s;
}

std::string Summary::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

std::uint64_t experiment_stream(int size, long instance, int realization, int purpose) {
  return (static_cast<std::uint64_t>(size) << 48) |
         ((static_cast<std::uint64_t>(instance) & 0xFFFFFFFULL) << 20) |
         ((static_cast<std::uint64_t>(realization) & 0xFFFFULL) << 4) |
         (static_cast<std::uint64_t>(purpose) & 0xFULL);
}

void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  int nthreads = static_cast<int>(std::min<long>(workers, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

PauliHamiltonian sample_xdiag(int n, RngStream& rng) {
  PauliHamiltonian h(n);
  std::uint64_t pool = (std::uint64_t(1) << n) - 1;  // non-identity masks
  std::uint64_t want = 1 + rng.below(std::min<std::uint64_t>(pool, static_cast<std::uint64_t>(3 * n)));
  std::vector<std::uint64_t> chosen;
  while (chosen.size() < want) {
    std::uint64_t mask = 1 + rng.below(pool);
    if (std::find(chosen.begin(), chosen.end(), mask) != chosen.end()) continue;
    chosen.push_back(mask);
    std::vector<Pauli> f(static_cast<std::size_t>(n), Pauli::I);
    for (int q = 0; q < n; ++q)
      if ((mask >> q) & 1u) f[static_cast<std::size_t>(q)] = Pauli::X;
    h.add(PauliString(std::move(f)), rng.uniform_sym());
  }
  if (rng.uniform01() < 0.5) h.add(PauliString::identity(n), rng.uniform_sym());
  return h;
}

Eigen::VectorXd xdiag_spectrum(const PauliHamiltonian& h) {
  int n = h.qubit_count();
  std::size_t dim = std::size_t(1) << n;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Index>(dim));
  for (const auto& [p, coeff] : h.terms()) {
    std::uint64_t mask = 0;
    for (int q = 0; q < n; ++q) {
      Pauli f = p.factor(q);
      if (f == Pauli::X)
        mask |= std::uint64_t(1) << q;
      else if (f != Pauli::I)
        throw Error("xdiag_spectrum expects an X/I-string Hamiltonian");
    }
    c[static_cast<Index>(mask)] += coeff;
  }
  // in-place Walsh-Hadamard butterfly
  for (std::size_t len = 1; len < dim; len <<= 1)
    for (std::size_t i = 0; i < dim; i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        double a = c[static_cast<Index>(j)], b = c[static_cast<Index>(j + len)];
        c[static_cast<Index>(j)] = a + b;
        c[static_cast<Index>(j + len)] = a - b;
      }
  std::sort(c.data(), c.data() + dim);
  return c;
}

SignedGraph sample_signed_graph(int vertices, double edge_probability, bool balanced,
                                RngStream& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < vertices; ++u)
      for (int v = u + 1; v < vertices; ++v)
        if (rng.uniform01() < edge_probability) edges.emplace_back(u, v);
    // connectivity check
    std::vector<int> comp(static_cast<std::size_t>(vertices), -1);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertices));
    for (auto [u, v] : edges) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> stack{0};
    comp[0] = 0;
    int seen = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[static_cast<std::size_t>(u)])
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = 0;
          ++seen;
          stack.push_back(v);
        }
    }
    if (seen != vertices) continue;

    SignedGraph g(vertices);
    if (balanced) {
      std::vector<int> theta(static_cast<std::size_t>(vertices));
      for (auto& t : theta) t = rng.pm1() > 0 ? 1 : -1;
      for (auto [u, v] : edges)
        g.add_edge(u, v, 1.0,
                   theta[static_cast<std::size_t>(u)] * theta[static_cast<std::size_t>(v)]);
    } else {
      for (auto [u, v] : edges) g.add_edge(u, v, 1.0, rng.pm1() > 0 ? 1 : -1);
    }
    return g;
  }
  throw RetriesExhausted("could not sample a connected graph");
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

class RecordWriter {
 public:
  explicit RecordWriter(const std::string& prefix) {
    if (!prefix.empty()) {
      jsonl_.open(prefix + ".jsonl");
      if (!jsonl_) throw Error("cannot open " + prefix + ".jsonl for writing");
      path_ = prefix;
    }
  }
  void record(const json& j) {
    if (jsonl_.is_open()) jsonl_ << j.dump() << "\n";
  }
  void finish(const Summary& summary) {
    if (path_.empty()) return;
    std::ofstream csv(path_ + ".csv");
    if (!csv) throw Error("cannot open " + path_ + ".csv for writing");
    csv << summary.to_csv();
  }

 private:
  std::ofstream jsonl_;
  std::string path_;
};

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Win: return "win";
    case Outcome::Loss: return "loss";
    case Outcome::Tie: return "tie";
  }
  return "?";
}

void append_fraction_row(Summary& summary, const std::string& family, int size,
                         const std::string& ensemble, const std::string& variant,
                         const std::string& group, const FractionStat& st) {
  summary.rows.push_back({family, std::to_string(size), ensemble, variant, group,
                          std::to_string(st.total), std::to_string(st.wins),
                          std::to_string(st.ties), fmt(st.fraction), fmt(st.se2),
                          fmt(st.boot2sigma)});
}

}  // namespace

Summary run_dense_wins(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{3, 4, 5, 6, 7, 8, 9, 10}
                                             : cfg.sizes;
  Summary summary;
  summary.columns = {"family", "size",  "ensemble", "variant", "group", "total",
                     "wins",   "ties",  "fraction", "se2",     "boot2sigma"};
  RecordWriter writer(cfg.out_path);

  struct Item {
    double gap = 0.0, gap_designed = 0.0, gap_shifted = 0.0;
    Outcome designed = Outcome::Tie, shifted = Outcome::Tie;
    bool has_shifted = false;
  };

  EigsOptions eig;
  eig.method = EigMethod::Dense;

  for (int N : sizes) {
    for (int ens = 0; ens < 2; ++ens) {
      bool complex_ens = ens == 1;
      if (complex_ens && !cfg.complex_ensemble) continue;
      if (!complex_ens && !cfg.real_ensemble) continue;
      std::vector<Item> items(static_cast<std::size_t>(cfg.samples_per_size));
      parallel_for(cfg.samples_per_size, cfg.workers, [&](long i) {
        RngStream rng(cfg.master_seed, experiment_stream(N, i, 0, ens));
        HermitianMatrix h = complex_ens ? sample_complex_hermitian(N, rng)
                                        : sample_wigner(N, rng);
        Item& it = items[static_cast<std::size_t>(i)];
        it.gap = gap(h, eig);
        it.gap_designed = gap(design_matrix(h), eig);
        it.designed = classify_win(it.gap, it.gap_designed);
        if (!complex_ens && cfg.run_shifted) {
          it.gap_shifted = gap(shift_matrix(h), eig);
          it.shifted = classify_win(it.gap, it.gap_shifted);
          it.has_shifted = true;
        }
      });

      const char* ens_name = complex_ens ? "complex" : "real";
      long cap = std::min<long>(cfg.max_records_per_size, cfg.samples_per_size);
      for (long i = 0; i < cap; ++i) {
        const Item& it = items[static_cast<std::size_t>(i)];
        json j{{"family", "dense_wins"},
               {"size", N},
               {"ensemble", ens_name},
               {"master_seed", cfg.master_seed},
               {"stream", experiment_stream(N, i, 0, ens)},
               {"gap", it.gap},
               {"gap_designed", it.gap_designed},
               {"outcome_designed", outcome_name(it.designed)}};
        if (it.has_shifted) {
          j["gap_shifted"] = it.gap_shifted;
          j["outcome_shifted"] = outcome_name(it.shifted);
        }
        writer.record(j);
      }

      std::vector<Outcome> designed, shifted;
      for (const auto& it : items) {
        designed.push_back(it.designed);
        if (it.has_shifted) shifted.push_back(it.shifted);
      }
      RngStream boot(cfg.master_seed, experiment_stream(N, 0, ens, 6));
      if (cfg.run_designed)
        append_fraction_row(summary, "dense_wins", N, ens_name, "designed", "all",
                            fraction_stat(designed, cfg.bootstrap_resamples, boot));
      if (!shifted.empty())
        append_fraction_row(summary, "dense_wins", N, ens_name, "shifted", "all",
                            fraction_stat(shifted, cfg.bootstrap_resamples, boot));
    }
  }
  writer.finish(summary);
  return summary;
}

Summary run_maxcut_mingap(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{6, 8, 10} : cfg.sizes;
  Summary summary;
  summary.columns = {"family", "size",  "ensemble", "variant", "group", "total",
                     "wins",   "ties",  "fraction", "se2",     "boot2sigma"};
  RecordWriter writer(cfg.out_path);
  const char* mode_name = cfg.catalyst_mode == CatalystMode::Uniform ? "uniform" : "pm1";

  SweepOptions sweep;
  sweep.dense_threshold = 128;

  struct Item {
    double gap_ns = 0.0, s_star = 0.0;
    bool global_flag = false;
    double gap_designed = 0.0, gap_shifted = 0.0;
    Outcome designed = Outcome::Tie, shifted = Outcome::Tie;
    bool warning = false;
    double wall_ms = 0.0;
  };

  for (int n : sizes) {
    // instances are sampled up front; catalyst draws per (instance, realization)
    std::vector<MaxCutInstance> instances(static_cast<std::size_t>(cfg.instances_per_size));
    for (int i = 0; i < cfg.instances_per_size; ++i) {
      RngStream rng(cfg.master_seed, experiment_stream(n, i, 0, 0));
      instances[static_cast<std::size_t>(i)] = sample_maxcut(n, rng, cfg.max_retries);
    }
    long count = static_cast<long>(cfg.instances_per_size) * cfg.realizations_per_instance;
    std::vector<Item> items(static_cast<std::size_t>(count));
    ParitySector sector(n, +1);
    parallel_for(count, cfg.workers, [&](long idx) {
      auto start = std::chrono::steady_clock::now();
      int inst = static_cast<int>(idx / cfg.realizations_per_instance);
      int real = static_cast<int>(idx % cfg.realizations_per_instance);
      const MaxCutInstance& mc = instances[static_cast<std::size_t>(inst)];
      RngStream rng(cfg.master_seed, experiment_stream(n, inst, real, 1));
      std::vector<double> alphas = sample_catalyst(mc.edges, cfg.catalyst_mode, rng);
      Item& it = items[static_cast<std::size_t>(idx)];

      auto res = min_gap_sweep(maxcut_path(mc, alphas), sector, sweep);
      it.gap_ns = res.gap_min;
      it.s_star = res.s_star;
      it.global_flag = res.global_flag.value_or(false);
      it.warning = res.multiple_minima_warning;
      if (cfg.run_designed) {
        auto alt = stoquastize_catalyst(alphas, StoquastizationKind::designed());
        auto rd = min_gap_sweep(maxcut_path(mc, alt), sector, sweep);
        it.gap_designed = rd.gap_min;
        it.designed = classify_win(it.gap_ns, rd.gap_min);
      }
      if (cfg.run_shifted) {
        auto alt = stoquastize_catalyst(alphas, StoquastizationKind::shifted_uniform(1.0));
        auto rs = min_gap_sweep(maxcut_path(mc, alt), sector, sweep);
        it.gap_shifted = rs.gap_min;
        it.shifted = classify_win(it.gap_ns, rs.gap_min);
      }
      it.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    });

    long cap = std::min<long>(cfg.max_records_per_size, count);
    for (long idx = 0; idx < cap; ++idx) {
      const Item& it = items[static_cast<std::size_t>(idx)];
      int inst = static_cast<int>(idx / cfg.realizations_per_instance);
      int real = static_cast<int>(idx % cfg.realizations_per_instance);
      json j{{"family", "maxcut_mingap"},
             {"size", n},
             {"catalyst_mode", mode_name},
             {"master_seed", cfg.master_seed},
             {"instance_stream", experiment_stream(n, inst, 0, 0)},
             {"catalyst_stream", experiment_stream(n, inst, real, 1)},
             {"gap_nonstoq", it.gap_ns},
             {"s_star", it.s_star},
             {"global_flag", it.global_flag},
             {"multiple_minima_warning", it.warning},
             {"wall_ms", it.wall_ms}};
      if (cfg.run_designed) {
        j["gap_designed"] = it.gap_designed;
        j["outcome_designed"] = outcome_name(it.designed);
      }
      if (cfg.run_shifted) {
        j["gap_shifted"] = it.gap_shifted;
        j["outcome_shifted"] = outcome_name(it.shifted);
      }
      writer.record(j);
    }

    auto summarize_variant = [&](const std::string& variant, auto get) {
      std::vector<Outcome> all, flag_true, flag_false;
      for (const auto& it : items) {
        Outcome o = get(it);
        all.push_back(o);
        (it.global_flag ? flag_true : flag_false).push_back(o);
      }
      RngStream boot(cfg.master_seed, experiment_stream(n, 0, 0, 6));
      append_fraction_row(summary, "maxcut_mingap", n, mode_name, variant, "all",
                          fraction_stat(all, cfg.bootstrap_resamples, boot));
      append_fraction_row(summary, "maxcut_mingap", n, mode_name, variant, "flag_true",
                          fraction_stat(flag_true, cfg.bootstrap_resamples, boot));
      append_fraction_row(summary, "maxcut_mingap", n, mode_name, variant, "flag_false",
                          fraction_stat(flag_false, cfg.bootstrap_resamples, boot));
    };
    if (cfg.run_designed)
      summarize_variant("designed", [](const Item& it) { return it.designed; });
    if (cfg.run_shifted)
      summarize_variant("shifted", [](const Item& it) { return it.shifted; });

    // global-flag fraction (counted as wins for the stat machinery)
    std::vector<Outcome> flags;
    for (const auto& it : items)
      flags.push_back(it.global_flag ? Outcome::Win : Outcome::Loss);
    RngStream boot(cfg.master_seed, experiment_stream(n, 0, 0, 7));
    append_fraction_row(summary, "maxcut_mingap", n, mode_name, "global_flag", "all",
                        fraction_stat(flags, cfg.bootstrap_resamples, boot));
  }
  writer.finish(summary);
  return summary;
}

Summary run_maxcut_tts(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{6} : cfg.sizes;
  for (int n : sizes)
    if (n > 16) throw Error("maxcut_tts limited to n <= 16 by default");
  std::vector<double> grid = cfg.t_grid.empty() ? default_t_grid() : cfg.t_grid;

  Summary summary;
  summary.columns = {"family", "size",  "ensemble", "variant",    "group",     "total",
                     "wins",   "ties",  "fraction",  "se2",        "boot2sigma"};
  RecordWriter writer(cfg.out_path);
  const char* mode_name = cfg.catalyst_mode == CatalystMode::Uniform ? "uniform" : "pm1";

  struct Item {
    double tts_ns = 0.0, t_best_ns = 0.0;
    double tts_designed = 0.0, tts_shifted = 0.0;
    Outcome designed = Outcome::Tie, shifted = Outcome::Tie;
    int floor_hits = 0;
    double wall_ms = 0.0;
  };

  for (int n : sizes) {
    std::vector<MaxCutInstance> instances(static_cast<std::size_t>(cfg.instances_per_size));
    for (int i = 0; i < cfg.instances_per_size; ++i) {
      RngStream rng(cfg.master_seed, experiment_stream(n, i, 0, 0));
      instances[static_cast<std::size_t>(i)] = sample_maxcut(n, rng, cfg.max_retries);
    }
    long count = static_cast<long>(cfg.instances_per_size) * cfg.realizations_per_instance;
    std::vector<Item> items(static_cast<std::size_t>(count));
    ParitySector sector(n, +1);
    parallel_for(count, cfg.workers, [&](long idx) {
      auto start = std::chrono::steady_clock::now();
      int inst = static_cast<int>(idx / cfg.realizations_per_instance);
      int real = static_cast<int>(idx % cfg.realizations_per_instance);
      const MaxCutInstance& mc = instances[static_cast<std::size_t>(inst)];
      RngStream rng(cfg.master_seed, experiment_stream(n, inst, real, 1));
      std::vector<double> alphas = sample_catalyst(mc.edges, cfg.catalyst_mode, rng);
      Item& it = items[static_cast<std::size_t>(idx)];

      auto r_ns = tts_optimize(maxcut_path(mc, alphas), sector, grid);
      it.tts_ns = r_ns.tts;
      it.t_best_ns = r_ns.t_best;
      it.floor_hits = r_ns.floor_hits;
      if (cfg.run_designed) {
        auto alt = stoquastize_catalyst(alphas, StoquastizationKind::designed());
        it.tts_designed = tts_optimize(maxcut_path(mc, alt), sector, grid).tts;
        // non-stoquastic win = strictly smaller time to solution
        it.designed = classify_win(it.tts_designed, it.tts_ns);
      }
      if (cfg.run_shifted) {
        auto alt = stoquastize_catalyst(alphas, StoquastizationKind::shifted_uniform(1.0));
        it.tts_shifted = tts_optimize(maxcut_path(mc, alt), sector, grid).tts;
        it.shifted = classify_win(it.tts_shifted, it.tts_ns);
      }
      it.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    });

    long cap = std::min<long>(cfg.max_records_per_size, count);
    for (long idx = 0; idx < cap; ++idx) {
      const Item& it = items[static_cast<std::size_t>(idx)];
      int inst = static_cast<int>(idx / cfg.realizations_per_instance);
      int real = static_cast<int>(idx % cfg.realizations_per_instance);
      json j{{"family", "maxcut_tts"},
             {"size", n},
             {"catalyst_mode", mode_name},
             {"master_seed", cfg.master_seed},
             {"instance_stream", experiment_stream(n, inst, 0, 0)},
             {"catalyst_stream", experiment_stream(n, inst, real, 1)},
             {"tts_nonstoq", it.tts_ns},
             {"t_best_nonstoq", it.t_best_ns},
             {"floor_hits", it.floor_hits},
             {"wall_ms", it.wall_ms}};
      if (cfg.run_designed) {
        j["tts_designed"] = it.tts_designed;
        j["outcome_designed"] = outcome_name(it.designed);
      }
      if (cfg.run_shifted) {
        j["tts_shifted"] = it.tts_shifted;
        j["outcome_shifted"] = outcome_name(it.shifted);
      }
      writer.record(j);
    }

    auto median = [](std::vector<double> v) {
      if (v.empty()) return 0.0;
      std::sort(v.begin(), v.end());
      std::size_t h = v.size() / 2;
      return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    };
    std::vector<double> med_ns, med_d, med_s;
    std::vector<Outcome> designed, shifted;
    for (const auto& it : items) {
      med_ns.push_back(it.tts_ns);
      if (cfg.run_designed) {
        med_d.push_back(it.tts_designed);
        designed.push_back(it.designed);
      }
      if (cfg.run_shifted) {
        med_s.push_back(it.tts_shifted);
        shifted.push_back(it.shifted);
      }
    }
    RngStream boot(cfg.master_seed, experiment_stream(n, 0, 0, 6));
    if (cfg.run_designed)
      append_fraction_row(summary, "maxcut_tts", n, mode_name, "designed", "all",
                          fraction_stat(designed, cfg.bootstrap_resamples, boot));
    if (cfg.run_shifted)
      append_fraction_row(summary, "maxcut_tts", n, mode_name, "shifted", "all",
                          fraction_stat(shifted, cfg.bootstrap_resamples, boot));
    // medians ride along in the fraction columns: total/wins/ties are unused
    summary.rows.push_back({"maxcut_tts", std::to_string(n), mode_name, "median_tts", "all",
                            std::to_string(items.size()), "0", "0", fmt(median(med_ns)),
                            cfg.run_designed ? fmt(median(med_d)) : "",
                            cfg.run_shifted ? fmt(median(med_s)) : ""});
  }
  writer.finish(summary);
  return summary;
}

Summary run_cheeger_audit(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{4, 6, 8, 10, 12} : cfg.sizes;
  for (int s : sizes)
    if (s > 14) throw Error("cheeger_audit limited to 14 vertices");

  Summary summary;
  summary.columns = {"family",        "size",       "graphs",     "hard_failures",
                     "balanced",      "thm2_ratio_max", "thm3_ratio_max", "upper_ratio_max",
                     "degenerate_witness"};
  RecordWriter writer(cfg.out_path);

  for (int nv : sizes) {
    long hard_failures = 0, balanced_count = 0, degenerate = 0;
    double thm2_ratio = 0.0, thm3_ratio = 0.0, upper_ratio = 0.0;
    struct Item {
      json record;
      bool hard_ok = true, balanced = false, degenerate = false;
      double r2 = 0.0, r3 = 0.0, ru = 0.0;
    };
    std::vector<Item> items(static_cast<std::size_t>(cfg.instances_per_size));
    parallel_for(cfg.instances_per_size, cfg.workers, [&](long i) {
      RngStream rng(cfg.master_seed, experiment_stream(nv, i, 0, 0));
      bool balanced = rng.uniform01() < cfg.balanced_fraction;
      SignedGraph g = sample_signed_graph(nv, cfg.edge_probability, balanced, rng);
      AuditReport audit = audit_inequalities(g, cfg.k_max);
      Item& it = items[static_cast<std::size_t>(i)];
      it.balanced = balanced;
      it.hard_ok = audit.hard_pass();
      it.degenerate = audit.degenerate_witness;
      json checks = json::array();
      for (const auto& c : audit.checks) {
        checks.push_back({{"name", c.name},
                          {"k", c.k},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"hard", c.hard},
                          {"applicable", c.applicable},
                          {"pass", c.pass}});
        double ratio = (c.applicable && c.rhs > 0.0) ? c.lhs / c.rhs : 0.0;
        if (c.name == "theorem2") it.r2 = ratio;
        if (c.name == "theorem3") it.r3 = ratio;
        if (c.name == "upper_dmax_signed" || c.name == "upper_dmax_unsigned")
          it.ru = std::max(it.ru, ratio);
      }
      it.record = json{{"family", "cheeger_audit"},
                       {"size", nv},
                       {"master_seed", cfg.master_seed},
                       {"stream", experiment_stream(nv, i, 0, 0)},
                       {"balanced", balanced},
                       {"graph", g.to_text()},
                       {"hard_pass", it.hard_ok},
                       {"checks", checks}};
    });
    for (auto& it : items) {
      writer.record(it.record);
      hard_failures += it.hard_ok ? 0 : 1;
      balanced_count += it.balanced ? 1 : 0;
      degenerate += it.degenerate ? 1 : 0;
      thm2_ratio = std::max(thm2_ratio, it.r2);
      thm3_ratio = std::max(thm3_ratio, it.r3);
      upper_ratio = std::max(upper_ratio, it.ru);
    }
    summary.hard_failures += hard_failures;
    summary.rows.push_back({"cheeger_audit", std::to_string(nv),
                            std::to_string(cfg.instances_per_size),
                            std::to_string(hard_failures), std::to_string(balanced_count),
                            fmt(thm2_ratio), fmt(thm3_ratio), fmt(upper_ratio),
                            std::to_string(degenerate)});
  }
  writer.finish(summary);
  return summary;
}

Summary run_xdiag_gaps(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes.empty() ? std::vector<int>{4, 6, 8, 10} : cfg.sizes;
  Summary summary;
  summary.columns = {"family", "size",  "ensemble", "variant", "group", "total",
                     "wins",   "ties",  "fraction", "se2",     "boot2sigma"};
  RecordWriter writer(cfg.out_path);

  for (int n : sizes) {
    std::vector<Outcome> outcomes(static_cast<std::size_t>(cfg.instances_per_size));
    std::atomic<long> violations{0};
    std::vector<json> records(static_cast<std::size_t>(cfg.instances_per_size));
    parallel_for(cfg.instances_per_size, cfg.workers, [&](long i) {
      RngStream rng(cfg.master_seed, experiment_stream(n, i, 0, 0));
      PauliHamiltonian h = sample_xdiag(n, rng);
      Eigen::VectorXd spec = xdiag_spectrum(h);
      PauliHamiltonian designed = design_pauli(h, n);
      Eigen::VectorXd spec_d = xdiag_spectrum(designed);
      double g = spec[1] - spec[0];
      double gd = spec_d[1] - spec_d[0];
      if (gd < g - 1e-10) violations.fetch_add(1);
      outcomes[static_cast<std::size_t>(i)] = classify_win(g, gd);
      records[static_cast<std::size_t>(i)] =
          json{{"family", "xdiag_gaps"},
               {"size", n},
               {"master_seed", cfg.master_seed},
               {"stream", experiment_stream(n, i, 0, 0)},
               {"gap", g},
               {"gap_designed", gd},
               {"outcome", outcome_name(classify_win(g, gd))}};
    });
    for (const auto& r : records) writer.record(r);
    summary.hard_failures += violations.load();
    RngStream boot(cfg.master_seed, experiment_stream(n, 0, 0, 6));
    append_fraction_row(summary, "xdiag_gaps", n, "xdiag", "designed", "all",
                        fraction_stat(outcomes, cfg.bootstrap_resamples, boot));
  }
  writer.finish(summary);
  return summary;
}

Summary run_family(const ExperimentConfig& cfg) {
  switch (cfg.family) {
    case Family::DenseWins: return run_dense_wins(cfg);
    case Family::MaxcutMingap: return run_maxcut_mingap(cfg);
    case Family::MaxcutTts: return run_maxcut_tts(cfg);
    case Family::CheegerAudit: return run_cheeger_audit(cfg);
    case Family::XdiagGaps: return run_xdiag_gaps(cfg);
  }
  throw Error("unhandled family");
}

}  // namespace stoq
