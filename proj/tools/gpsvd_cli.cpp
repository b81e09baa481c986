/*
Copyright 2026 The gpsvd Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Command-line front end: run, sweep, validate and predict-cost.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gpsvd/errors.hpp"
#include "gpsvd/experiment.hpp"
#include "gpsvd/power_distributed.hpp"
#include "gpsvd/rng.hpp"
#include "gpsvd/topology.hpp"

namespace fs = std::filesystem;
using namespace gpsvd;

namespace {

/// Options shared by run, sweep and validate.
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> settings;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  std::string task;
  std::string algorithm;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Config file of key = value lines")->check(CLI::ExistingFile);
  cmd->add_option("--set", o.settings, "Override a config key, e.g. --set power.iters=50");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--task", o.task, "evd or svd");
  cmd->add_option("--algorithm", o.algorithm, "centralized, sequential or parallel");
}

ExperimentConfig build_config(const CommonOptions& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw IoError("cannot open config file " + o.config_path);
    cfg = parse_config(in, cfg);
  }
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParameterError("--set expects key=value, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (!o.task.empty()) cfg.task = parse_task(o.task);
  if (!o.algorithm.empty()) cfg.algorithm = parse_algorithm(o.algorithm);
  cfg.validate();
  return cfg;
}

/// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw ParameterError("empty integer list");
  return out;
}

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  std::vector<Algorithm> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_algorithm(item));
  if (out.empty()) throw ParameterError("empty algorithm list");
  return out;
}

void dump_trial_inputs(const ExperimentConfig& cfg, int trial, const fs::path& dir) {
  fs::create_directories(dir);
  const TrialSeeds seeds = trial_seeds(cfg.base_seed, trial);
  SignalModelConfig signal = cfg.signal;
  signal.seed = seeds.signal;
  const SampleSet samples = generate_passive_radar(signal);
  const std::string stem = "trial" + std::to_string(trial);
  auto write_binary = [&](const std::string& name, const ComplexMatrix& m) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw IoError("cannot write " + (dir / name).string());
    write_sample_matrix(os, m);
  };
  write_binary(stem + "_s.bin", samples.s);
  write_binary(stem + "_r.bin", samples.r);
  auto write_graph = [&](const std::string& name, const Topology& t) {
    std::ofstream os(dir / name);
    if (!os) throw IoError("cannot write " + (dir / name).string());
    write_edge_list(os, t);
  };
  write_graph(stem + "_graph_s.txt",
              generate_small_world(cfg.signal.s_nodes, cfg.graph_s.degree, cfg.graph_s.rewire, seeds.graph_s));
  write_graph(stem + "_graph_r.txt",
              generate_small_world(cfg.signal.r_nodes, cfg.graph_r.degree, cfg.graph_r.rewire, seeds.graph_r));
}

int cmd_run(const CommonOptions& o, const std::string& json_path, const std::string& dump_dir) {
  const ExperimentConfig cfg = build_config(o);
  std::ostringstream table;
  table.precision(17);
  table << "trial,seed,task,algorithm,nmse,gossip_rounds,predicted_rounds,scalars_transmitted,"
           "cross_set_exchanges,sigma_guard_activations,norm_guard_activations\n";
  std::ostringstream json;
  double total = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    const TrialResult r = run_trial(cfg, t);
    total += r.nmse;
    table << r.trial_index << ',' << r.seed << ',' << to_string(r.task) << ',' << to_string(r.algorithm) << ','
          << r.nmse << ',' << r.ledger.gossip_rounds << ',' << r.predicted_rounds << ','
          << r.ledger.scalars_transmitted << ',' << r.ledger.cross_set_exchanges << ','
          << r.diagnostics.sigma_guard_activations << ',' << r.diagnostics.norm_guard_activations << '\n';
    json << trial_to_json(r) << '\n';
    if (!dump_dir.empty()) dump_trial_inputs(cfg, t, dump_dir);
  }
  emit(o.out, table.str());
  if (!json_path.empty()) emit(json_path, json.str());
  std::cerr << "mean_nmse " << total / cfg.trials << " over " << cfg.trials << " trial(s)\n";
  return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& axis, const std::string& values,
              const std::string& algorithms, int jobs) {
  const ExperimentConfig cfg = build_config(o);
  const SweepResult result =
      run_sweep(cfg, parse_axis(axis), parse_int_list(values), parse_algorithm_list(algorithms), jobs);
  emit(o.out, emit_csv(result));
  return 0;
}

/// Invariant suite on the configured problem size; one line per check.
int cmd_validate(const CommonOptions& o) {
  ExperimentConfig cfg = build_config(o);
  std::ostringstream report;
  bool all = true;
  auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    all = all && ok;
    report << (ok ? "PASS " : "FAIL ") << name << detail << '\n';
  };

  for (int t = 0; t < cfg.trials; ++t) {
    const TrialSeeds seeds = trial_seeds(cfg.base_seed, t);
    const std::string tag = " [trial " + std::to_string(t) + "]";
    const Topology ts =
        generate_small_world(cfg.signal.s_nodes, cfg.graph_s.degree, cfg.graph_s.rewire, seeds.graph_s);
    const Topology tr =
        generate_small_world(cfg.signal.r_nodes, cfg.graph_r.degree, cfg.graph_r.rewire, seeds.graph_r);

    check("weights-doubly-stochastic-and-mixing" + tag, [&] {
      for (const Topology* t2 : {&ts, &tr}) {
        const ConsensusWeights w = best_constant_weights(*t2);
        const RealVector ones = RealVector::Ones(t2->node_count());
        if ((w.matrix() * ones - ones).cwiseAbs().maxCoeff() > 1e-12 || !mixes(w)) return false;
      }
      return true;
    });

    check("consensus-average-conserved" + tag, [&] {
      Engine rng(seeds.init);
      const ComplexMatrix init = complex_gaussian_matrix(ts.node_count(), 4, rng);
      CommLedger ledger;
      const ComplexMatrix out = run_consensus(init_session(best_constant_weights(ts), init), 100, ledger);
      const ComplexMatrix d = out.colwise().mean() - init.colwise().mean();
      return d.cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, init.cwiseAbs().maxCoeff()) &&
             ledger.gossip_rounds == 100;
    });

    for (Task task : {Task::kEvd, Task::kSvd}) {
      ExperimentConfig c = cfg;
      c.task = task;
      if (c.power.num_components > std::min(c.signal.s_nodes, c.signal.r_nodes))
        c.power.num_components = std::min(c.signal.s_nodes, c.signal.r_nodes);
      const std::string tname = to_string(task);

      check("exact-sequential-equals-centralized-" + tname + tag, [&] {
        c.exact = true;
        c.algorithm = Algorithm::kCentralized;
        const double central = run_trial(c, t).nmse;
        c.algorithm = Algorithm::kSequential;
        const double seq = run_trial(c, t).nmse;
        c.exact = cfg.exact;
        return std::abs(seq - central) <= 1e-9 * std::max(central, 1e-300) ||
               std::abs(seq - central) <= 1e-15;
      });

      check("ledger-matches-handshake-formula-" + tname + tag, [&] {
        c.exact = false;
        for (Algorithm a : {Algorithm::kSequential, Algorithm::kParallel}) {
          c.algorithm = a;
          const TrialResult r = run_trial(c, t);
          if (r.ledger.gossip_rounds != r.predicted_rounds) return false;
          if (!std::isfinite(r.nmse)) return false;
        }
        return true;
      });
    }
  }

  check("nmse-evd-reference-value", [] {
    RealVector t(2), e(2);
    t << 2.0, 1.0;
    e << 2.0, 0.0;
    return nmse_evd(t, e) == 0.2;
  });

  emit(o.out, report.str());
  return all ? 0 : 1;
}

int cmd_predict(const std::string& task, const std::string& algorithm, int components, int rounds,
                std::optional<int> rounds_r, int iters, const std::string& out) {
  const std::uint64_t n = predicted_handshakes(parse_task(task), parse_algorithm(algorithm), components, rounds,
                                               rounds_r.value_or(rounds), iters);
  emit(out, std::to_string(n) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed power-method EVD/SVD over gossip networks"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string json_path;
  std::string dump_dir;
  CLI::App* run = app.add_subcommand("run", "Run trials of one configuration; prints a per-trial CSV table");
  add_common(run, run_opts);
  run->add_option("--json", json_path, "Write one JSON object per trial (JSON lines)");
  run->add_option("--dump-dir", dump_dir, "Write each trial's samples (.bin) and graphs (edge lists) here");

  CommonOptions sweep_opts;
  std::string axis = "K";
  std::string values = "10,40,100,200";
  std::string algorithms = "sequential,parallel";
  int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one axis and emit the aggregate CSV");
  add_common(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "K, H or iters")->capture_default_str();
  sweep->add_option("--values", values, "Comma-separated axis values")->capture_default_str();
  sweep->add_option("--algorithms", algorithms, "Comma-separated algorithms")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  CommonOptions validate_opts;
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite; exit 1 on any failure");
  add_common(validate, validate_opts);

  std::string p_task = "evd";
  std::string p_alg = "parallel";
  int p_h = 3;
  int p_k = 40;
  std::optional<int> p_k2;
  int p_iters = 20;
  std::string p_out;
  CLI::App* predict = app.add_subcommand("predict-cost", "Print the closed-form gossip round count");
  predict->add_option("--task", p_task, "evd or svd")->capture_default_str();
  predict->add_option("--algorithm", p_alg, "sequential or parallel")->capture_default_str();
  predict->add_option("-H,--components", p_h, "Number of components")->capture_default_str();
  predict->add_option("-K,--rounds", p_k, "Rounds per session (set S for SVD)")->capture_default_str();
  predict->add_option("--rounds-r", p_k2, "Rounds per session on set R (SVD; default: same as -K)");
  predict->add_option("--iters", p_iters, "Power iterations")->capture_default_str();
  predict->add_option("--out", p_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::kParameter);
  }

  try {
    if (*run) return cmd_run(run_opts, json_path, dump_dir);
    if (*sweep) return cmd_sweep(sweep_opts, axis, values, algorithms, jobs);
    if (*validate) return cmd_validate(validate_opts);
    if (*predict) return cmd_predict(p_task, p_alg, p_h, p_k, p_k2, p_iters, p_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::kIo);
  }
  return 0;
}
