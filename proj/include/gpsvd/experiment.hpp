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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpsvd/consensus.hpp"
#include "gpsvd/metrics.hpp"
#include "gpsvd/power_distributed.hpp"
#include "gpsvd/signal_model.hpp"

namespace gpsvd {

struct GraphParams {
  int degree = 4;
  double rewire = 0.2;
};

/// Everything one trial needs. Defaults reproduce the small-world EVD setup:
/// |S| = 10 (k = 4), |R| = 12 (k = 6), p = 0.2, T = 500, H = 3, l* = 20.
struct ExperimentConfig {
  SignalModelConfig signal;  ///< signal.seed is ignored; trials derive their own
  PowerConfig power;
  GraphParams graph_s{4, 0.2};
  GraphParams graph_r{6, 0.2};
  int rounds_s = 40;  ///< K (EVD) or K1 (SVD)
  int rounds_r = 40;  ///< K2
  bool exact = false;
  Task task = Task::kEvd;
  Algorithm algorithm = Algorithm::kParallel;
  int trials = 1;
  std::uint64_t base_seed = 1;

  void validate() const;
  AveragingMode averaging() const;
};

/// Seeds used by trial `trial_index`; the trial seed is base_seed XOR index.
struct TrialSeeds {
  std::uint64_t trial;
  std::uint64_t signal;
  std::uint64_t graph_s;
  std::uint64_t graph_r;
  std::uint64_t init;
};
TrialSeeds trial_seeds(std::uint64_t base_seed, int trial_index);

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;
  Task task = Task::kEvd;
  Algorithm algorithm = Algorithm::kParallel;
  /// EVD: mean over S-nodes of each node's eigenvalue NMSE.
  /// SVD: eigenvector NMSE of the assembled per-node entries.
  double nmse = 0.0;
  /// EVD: one value per S-node. SVD: each node's additive share of nmse,
  /// S-nodes first, then R-nodes.
  std::vector<double> per_node_nmse;
  RealVector true_values;  ///< oracle eigenvalues / singular values, top H
  ComplexMatrix sigma_s;   ///< per-node estimates, S-nodes x H
  ComplexMatrix sigma_r;   ///< SVD only
  CommLedger ledger;
  std::uint64_t predicted_rounds = 0;  ///< closed-form count; 0 unless gossip mode
  Diagnostics diagnostics;
};

TrialResult run_trial(const ExperimentConfig& cfg, int trial_index);

enum class SweepAxis { kRounds, kComponents, kPowerIters };
std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& text);

/// Returns a copy of cfg with the swept parameter set (K sets both K1 and K2).
ExperimentConfig with_axis_value(ExperimentConfig cfg, SweepAxis axis, int value);

struct SweepPoint {
  int axis_value = 0;
  Algorithm algorithm = Algorithm::kParallel;
  double mean_nmse = 0.0;
  int trials = 0;
  double mean_gossip_rounds = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kRounds;
  std::vector<SweepPoint> points;
};

/// Trials 0..cfg.trials-1 at every (value, algorithm) cell. `jobs` worker
/// threads share the trials; means are summed in trial order.
SweepResult run_sweep(const ExperimentConfig& cfg, SweepAxis axis, const std::vector<int>& values,
                      const std::vector<Algorithm>& algorithms, int jobs = 1);

/// Header: axis_value,algorithm,mean_nmse,trials,mean_gossip_rounds.
std::string emit_csv(const SweepResult& result);
SweepResult parse_csv(const std::string& text, SweepAxis axis = SweepAxis::kRounds);

/// Flat "section.key = value" text; '#' starts a comment.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config(std::istream& is, ExperimentConfig base = {});
std::string config_to_text(const ExperimentConfig& cfg);

/// Full per-trial diagnostics as a JSON document.
std::string trial_to_json(const TrialResult& result);

}  // namespace gpsvd
