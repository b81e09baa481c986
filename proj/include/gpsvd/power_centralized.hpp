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

#include "gpsvd/signal_model.hpp"
#include "gpsvd/types.hpp"

namespace gpsvd {

struct PowerConfig {
  double shift = 0.1;   ///< alpha in (0, 1)
  int power_iters = 20; ///< l*
  int num_components = 3;

  void validate() const;
};

enum class NodeSet { kS, kR };

/// Per-node random starting entries: row i is node i's H entries, drawn from
/// a stream owned by that node so every algorithm sees the same start.
ComplexMatrix initial_iterates(int node_count, int components, std::uint64_t seed, NodeSet set);

/// Component estimates with unit-norm columns. sigma_* hold the per-node
/// estimator [R v]_i / u_i (eigenvalue for EVD, singular value for SVD).
struct PowerEstimate {
  ComplexMatrix u;
  ComplexMatrix v;  ///< empty for EVD
  ComplexMatrix sigma_u;
  ComplexMatrix sigma_v;

  /// Node-averaged real part of sigma_u, one value per component.
  RealVector values() const;
};

/// Normalized iterates per component, one entry per power iteration.
struct PowerTrace {
  std::vector<std::vector<ComplexVector>> iterates;
};

/// Deflated power SVD with exact inner products. The (u, v) pair is rescaled by
/// a common factor every iteration; the update is homogeneous, so directions
/// are unchanged and long runs cannot overflow.
PowerEstimate centralized_power_svd(const SampleSet& samples, const PowerConfig& cfg,
                                    std::uint64_t seed, PowerTrace* trace = nullptr);

/// EVD special case on one set's samples.
PowerEstimate centralized_power_evd(const ComplexMatrix& samples, const PowerConfig& cfg,
                                    std::uint64_t seed, PowerTrace* trace = nullptr);

}  // namespace gpsvd
