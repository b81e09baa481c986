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

#include "gpsvd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gpsvd/errors.hpp"
#include "gpsvd/linalg.hpp"
#include "gpsvd/power_centralized.hpp"
#include "gpsvd/rng.hpp"
#include "gpsvd/topology.hpp"
#include "json.hpp"

namespace gpsvd {

void ExperimentConfig::validate() const {
  signal.validate();
  power.validate();
  if (trials < 1) throw ParameterError("experiment: trials must be >= 1");
  if (!exact && (rounds_s < 1 || rounds_r < 1))
    throw ParameterError("experiment: gossip rounds must be >= 1");
  const int limit = task == Task::kEvd ? signal.s_nodes : std::min(signal.s_nodes, signal.r_nodes);
  if (power.num_components > limit)
    throw ParameterError("experiment: H exceeds the number of nodes available");
}

AveragingMode ExperimentConfig::averaging() const {
  return exact ? AveragingMode::exact() : AveragingMode::gossip(rounds_s, rounds_r);
}

TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index) {
  const std::uint64_t trial = base_seed ^ static_cast<std::uint64_t>(trial_index);
  return {trial, derive_seed(trial, 11), derive_seed(trial, 12), derive_seed(trial, 13),
          derive_seed(trial, 14)};
}

namespace {

RealVector real_row(const ComplexMatrix& m, Eigen::Index row) {
  return m.row(row).real().transpose();
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& cfg, int trial_index) {
  cfg.validate();
  const TrialSeeds seeds = trial_seeds(cfg.base_seed, trial_index);
  SignalModelConfig signal = cfg.signal;
  signal.seed = seeds.signal;
  const SampleSet samples = generate_passive_radar(signal);
  const int comps = cfg.power.num_components;

  TrialResult out;
  out.trial_index = trial_index;
  out.seed = seeds.trial;
  out.task = cfg.task;
  out.algorithm = cfg.algorithm;

  PowerEstimate est;
  Diagnostics diag;
  if (cfg.algorithm == Algorithm::kCentralized) {
    est = cfg.task == Task::kEvd ? centralized_power_evd(samples.s, cfg.power, seeds.init)
                                 : centralized_power_svd(samples, cfg.power, seeds.init);
  } else {
    const Topology topo_s =
        generate_small_world(cfg.signal.s_nodes, cfg.graph_s.degree, cfg.graph_s.rewire, seeds.graph_s);
    const AveragingMode mode = cfg.averaging();
    const bool seq = cfg.algorithm == Algorithm::kSequential;
    DistributedEstimate d;
    if (cfg.task == Task::kEvd) {
      d = seq ? sequential_power_evd(samples.s, topo_s, cfg.power, mode, seeds.init, out.ledger)
              : parallel_power_evd(samples.s, topo_s, cfg.power, mode, seeds.init, out.ledger);
    } else {
      const Topology topo_r = generate_small_world(cfg.signal.r_nodes, cfg.graph_r.degree,
                                                   cfg.graph_r.rewire, seeds.graph_r);
      const BridgeMap bridge = BridgeMap::round_robin(cfg.signal.s_nodes, cfg.signal.r_nodes);
      d = seq ? sequential_power_svd(samples, topo_s, topo_r, bridge, cfg.power, mode, seeds.init, out.ledger)
              : parallel_power_svd(samples, topo_s, topo_r, bridge, cfg.power, mode, seeds.init, out.ledger);
    }
    diag = d.diagnostics;
    est = std::move(d);
    if (!cfg.exact)
      out.predicted_rounds = predicted_handshakes(cfg.task, cfg.algorithm, comps, cfg.rounds_s,
                                                  cfg.rounds_r, cfg.power.power_iters);
  }
  out.diagnostics = diag;
  out.sigma_s = est.sigma_u;
  out.sigma_r = est.sigma_v;

  if (cfg.task == Task::kEvd) {
    const auto truth = hermitian_evd_oracle(sample_covariance(samples.s));
    out.true_values = truth.values.head(comps);
    double total = 0.0;
    for (Eigen::Index i = 0; i < est.sigma_u.rows(); ++i) {
      const double node = nmse_evd(out.true_values, real_row(est.sigma_u, i));
      out.per_node_nmse.push_back(node);
      total += node;
    }
    out.nmse = total / static_cast<double>(est.sigma_u.rows());
  } else {
    const auto truth = svd_oracle(sample_cross_correlation(samples.s, samples.r));
    out.true_values = truth.values.head(comps);
    const ComplexMatrix tu = truth.u.leftCols(comps);
    const ComplexMatrix tv = truth.v.leftCols(comps);
    out.nmse = nmse_svd(tu, tv, est.u, est.v);
    const ComplexMatrix au = align_phases(est.u, tu);
    const ComplexMatrix av = align_phases(est.v, tv);
    const RealVector un = tu.colwise().squaredNorm().transpose();
    const RealVector vn = tv.colwise().squaredNorm().transpose();
    for (Eigen::Index i = 0; i < au.rows(); ++i)
      out.per_node_nmse.push_back(
          0.5 * ((au.row(i) - tu.row(i)).cwiseAbs2().transpose().cwiseQuotient(un)).sum());
    for (Eigen::Index j = 0; j < av.rows(); ++j)
      out.per_node_nmse.push_back(
          0.5 * ((av.row(j) - tv.row(j)).cwiseAbs2().transpose().cwiseQuotient(vn)).sum());
  }
  return out;
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kRounds:
      return "K";
    case SweepAxis::kComponents:
      return "H";
    case SweepAxis::kPowerIters:
      return "iters";
  }
  return "unknown";
}

SweepAxis parse_axis(const std::string& text) {
  if (text == "K" || text == "k" || text == "rounds") return SweepAxis::kRounds;
  if (text == "H" || text == "h" || text == "components") return SweepAxis::kComponents;
  if (text == "iters" || text == "l" || text == "power_iters") return SweepAxis::kPowerIters;
  throw ParameterError("unknown sweep axis '" + text + "' (expected K, H or iters)");
}

ExperimentConfig with_axis_value(ExperimentConfig cfg, SweepAxis axis, int value) {
  switch (axis) {
    case SweepAxis::kRounds:
      cfg.rounds_s = value;
      cfg.rounds_r = value;
      break;
    case SweepAxis::kComponents:
      cfg.power.num_components = value;
      break;
    case SweepAxis::kPowerIters:
      cfg.power.power_iters = value;
      break;
  }
  return cfg;
}

SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const std::vector<int>& values,
                      const std::vector<Algorithm>& algorithms, int jobs) {
  if (values.empty()) throw ParameterError("run_sweep: no axis values");
  if (algorithms.empty()) throw ParameterError("run_sweep: no algorithms");
  SweepResult result;
  result.axis = axis;
  for (const int value : values) {
    for (const Algorithm algorithm : algorithms) {
      ExperimentConfig cell = with_axis_value(cfg, axis, value);
      cell.algorithm = algorithm;
      cell.validate();
      std::vector<TrialResult> trials(static_cast<std::size_t>(cell.trials));
      std::atomic<int> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto worker = [&] {
        for (int i = next++; i < cell.trials; i = next++) {
          try {
            trials[static_cast<std::size_t>(i)] = run_trial(cell, i);
          } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      };
      const int workers = std::clamp(jobs, 1, cell.trials);
      std::vector<std::thread> pool;
      for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);

      double nmse = 0.0;
      double rounds = 0.0;
      for (const auto& t : trials) {
        nmse += t.nmse;
        rounds += static_cast<double>(t.ledger.gossip_rounds);
      }
      result.points.push_back({value, algorithm, nmse / cell.trials, cell.trials, rounds / cell.trials});
    }
  }
  return result;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParameterError("cannot parse number '" + s + "'");
  return x;
}

long long parse_integer(const std::string& s) {
  long long x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParameterError("cannot parse integer '" + s + "'");
  return x;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParameterError("cannot parse boolean '" + s + "'");
}

constexpr const char* kCsvHeader = "axis_value,algorithm,mean_nmse,trials,mean_gossip_rounds";

}  // namespace

std::string emit_csv(const SweepResult& result) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& p : result.points) {
    os << p.axis_value << ',' << to_string(p.algorithm) << ',' << format_double(p.mean_nmse) << ','
       << p.trials << ',' << format_double(p.mean_gossip_rounds) << '\n';
  }
  return os.str();
}

SweepResult parse_csv(const std::string& text, SweepAxis axis) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || trim(line) != kCsvHeader)
    throw ParameterError("parse_csv: missing or unexpected header");
  SweepResult result;
  result.axis = axis;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 5) throw ParameterError("parse_csv: expected 5 fields");
    SweepPoint p;
    p.axis_value = static_cast<int>(parse_integer(fields[0]));
    p.algorithm = parse_algorithm(fields[1]);
    p.mean_nmse = parse_double(fields[2]);
    p.trials = static_cast<int>(parse_integer(fields[3]));
    p.mean_gossip_rounds = parse_double(fields[4]);
    result.points.push_back(p);
  }
  return result;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  auto as_int = [&] { return static_cast<int>(parse_integer(value)); };
  if (key == "signal.s_nodes") cfg.signal.s_nodes = as_int();
  else if (key == "signal.r_nodes") cfg.signal.r_nodes = as_int();
  else if (key == "signal.s_sources") cfg.signal.s_sources = as_int();
  else if (key == "signal.r_sources") cfg.signal.r_sources = as_int();
  else if (key == "signal.source_power_s") cfg.signal.source_power_s = parse_double(value);
  else if (key == "signal.source_power_r") cfg.signal.source_power_r = parse_double(value);
  else if (key == "signal.snapshots") cfg.signal.snapshots = as_int();
  else if (key == "signal.shared_sources") cfg.signal.shared_sources = parse_bool(value);
  else if (key == "signal.noise_scale") cfg.signal.noise_scale = parse_double(value);
  else if (key == "power.shift") cfg.power.shift = parse_double(value);
  else if (key == "power.iters") cfg.power.power_iters = as_int();
  else if (key == "power.components") cfg.power.num_components = as_int();
  else if (key == "graph.s.degree") cfg.graph_s.degree = as_int();
  else if (key == "graph.s.rewire") cfg.graph_s.rewire = parse_double(value);
  else if (key == "graph.r.degree") cfg.graph_r.degree = as_int();
  else if (key == "graph.r.rewire") cfg.graph_r.rewire = parse_double(value);
  else if (key == "gossip.rounds") cfg.rounds_s = cfg.rounds_r = as_int();
  else if (key == "gossip.rounds_s") cfg.rounds_s = as_int();
  else if (key == "gossip.rounds_r") cfg.rounds_r = as_int();
  else if (key == "gossip.exact") cfg.exact = parse_bool(value);
  else if (key == "experiment.task") cfg.task = parse_task(value);
  else if (key == "experiment.algorithm") cfg.algorithm = parse_algorithm(value);
  else if (key == "experiment.trials") cfg.trials = as_int();
  else if (key == "experiment.seed") cfg.base_seed = static_cast<std::uint64_t>(parse_integer(value));
  else throw ParameterError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& is, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "signal.s_nodes = " << cfg.signal.s_nodes << '\n'
     << "signal.r_nodes = " << cfg.signal.r_nodes << '\n'
     << "signal.s_sources = " << cfg.signal.s_sources << '\n'
     << "signal.r_sources = " << cfg.signal.r_sources << '\n'
     << "signal.source_power_s = " << format_double(cfg.signal.source_power_s) << '\n'
     << "signal.source_power_r = " << format_double(cfg.signal.source_power_r) << '\n'
     << "signal.snapshots = " << cfg.signal.snapshots << '\n'
     << "signal.shared_sources = " << (cfg.signal.shared_sources ? "true" : "false") << '\n'
     << "signal.noise_scale = " << format_double(cfg.signal.noise_scale) << '\n'
     << "power.shift = " << format_double(cfg.power.shift) << '\n'
     << "power.iters = " << cfg.power.power_iters << '\n'
     << "power.components = " << cfg.power.num_components << '\n'
     << "graph.s.degree = " << cfg.graph_s.degree << '\n'
     << "graph.s.rewire = " << format_double(cfg.graph_s.rewire) << '\n'
     << "graph.r.degree = " << cfg.graph_r.degree << '\n'
     << "graph.r.rewire = " << format_double(cfg.graph_r.rewire) << '\n'
     << "gossip.rounds_s = " << cfg.rounds_s << '\n'
     << "gossip.rounds_r = " << cfg.rounds_r << '\n'
     << "gossip.exact = " << (cfg.exact ? "true" : "false") << '\n'
     << "experiment.task = " << to_string(cfg.task) << '\n'
     << "experiment.algorithm = " << to_string(cfg.algorithm) << '\n'
     << "experiment.trials = " << cfg.trials << '\n'
     << "experiment.seed = " << cfg.base_seed << '\n';
  return os.str();
}

namespace {

nlohmann::json complex_matrix_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string trial_to_json(const TrialResult& r) {
  nlohmann::json j;
  j["trial_index"] = r.trial_index;
  j["seed"] = r.seed;
  j["task"] = to_string(r.task);
  j["algorithm"] = to_string(r.algorithm);
  j["nmse"] = r.nmse;
  j["per_node_nmse"] = r.per_node_nmse;
  j["true_values"] = std::vector<double>(r.true_values.data(), r.true_values.data() + r.true_values.size());
  j["sigma_s"] = complex_matrix_json(r.sigma_s);
  if (r.sigma_r.size() > 0) j["sigma_r"] = complex_matrix_json(r.sigma_r);
  j["ledger"] = {{"gossip_rounds", r.ledger.gossip_rounds},
                 {"scalars_transmitted", r.ledger.scalars_transmitted},
                 {"cross_set_exchanges", r.ledger.cross_set_exchanges}};
  j["predicted_rounds"] = r.predicted_rounds;
  j["diagnostics"] = {{"sigma_guard_activations", r.diagnostics.sigma_guard_activations},
                      {"norm_guard_activations", r.diagnostics.norm_guard_activations},
                      {"max_sigma_imag", r.diagnostics.max_sigma_imag}};
  return j.dump();
}

}  // namespace gpsvd
