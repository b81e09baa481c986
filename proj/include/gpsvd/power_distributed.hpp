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
#include <vector>

#include "gpsvd/consensus.hpp"
#include "gpsvd/power_centralized.hpp"
#include "gpsvd/signal_model.hpp"
#include "gpsvd/topology.hpp"

namespace gpsvd {

/// Gateway pairs between the two node sets: s_to_r[i] is the R-node that
/// forwards R-side consensus results to S-node i, and r_to_s the reverse.
class BridgeMap {
 public:
  BridgeMap(int s_nodes, int r_nodes, std::vector<int> s_to_r, std::vector<int> r_to_s);

  /// S-node i <-> R-node i mod |R|, R-node j <-> S-node j mod |S|.
  static BridgeMap round_robin(int s_nodes, int r_nodes);

  int s_nodes() const { return static_cast<int>(s_to_r_.size()); }
  int r_nodes() const { return static_cast<int>(r_to_s_.size()); }
  const std::vector<int>& s_to_r() const { return s_to_r_; }
  const std::vector<int>& r_to_s() const { return r_to_s_; }

 private:
  std::vector<int> s_to_r_;
  std::vector<int> r_to_s_;
};

enum class RelayDirection { kRToS, kSToR };

/// Each destination node takes its gateway's row. One exchange per call.
ComplexMatrix cross_set_relay(const ComplexMatrix& values_at_source, const BridgeMap& bridge,
                              RelayDirection direction, CommLedger& ledger);

/// Entry magnitudes below this (relative to the unit-normalized vector) make
/// the per-node singular value estimate unusable.
inline constexpr double kDivisionGuard = 1e-8;

struct Diagnostics {
  std::uint64_t sigma_guard_activations = 0;
  std::uint64_t norm_guard_activations = 0;
  /// Largest |imag| among the final per-node sigma estimates.
  double max_sigma_imag = 0.0;
};

struct DistributedEstimate : PowerEstimate {
  Diagnostics diagnostics;
};

/// One node's view of a finished run.
struct NodeState {
  int node_id = 0;
  NodeSet set = NodeSet::kS;
  ComplexVector local_samples;
  ComplexVector vec_entries;
  ComplexVector sigma;
};

std::vector<NodeState> node_states(const DistributedEstimate& est, const SampleSet& samples, NodeSet set);

/// Components one at a time: l* power iterations, then one normalization
/// session, per component. Earlier components deflate with their final
/// normalized vectors and per-node estimates.
DistributedEstimate sequential_power_svd(const SampleSet& samples, const Topology& topo_s,
                                         const Topology& topo_r, const BridgeMap& bridge,
                                         const PowerConfig& cfg, const AveragingMode& mode,
                                         std::uint64_t seed, CommLedger& ledger);

/// All components inside every power iteration, deflating with the current
/// (inexact) iterates; one normalization session at the end.
DistributedEstimate parallel_power_svd(const SampleSet& samples, const Topology& topo_s,
                                       const Topology& topo_r, const BridgeMap& bridge,
                                       const PowerConfig& cfg, const AveragingMode& mode,
                                       std::uint64_t seed, CommLedger& ledger);

DistributedEstimate sequential_power_evd(const ComplexMatrix& samples, const Topology& topo,
                                         const PowerConfig& cfg, const AveragingMode& mode,
                                         std::uint64_t seed, CommLedger& ledger);

DistributedEstimate parallel_power_evd(const ComplexMatrix& samples, const Topology& topo,
                                       const PowerConfig& cfg, const AveragingMode& mode,
                                       std::uint64_t seed, CommLedger& ledger);

}  // namespace gpsvd
