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

#include "gpsvd/topology.hpp"
#include "gpsvd/types.hpp"

namespace gpsvd {

/// Communication cost counters. A gossip round is one synchronous neighbour
/// exchange ("shaking-hand"), whatever the payload width.
struct CommLedger {
  std::uint64_t gossip_rounds = 0;
  std::uint64_t scalars_transmitted = 0;
  std::uint64_t cross_set_exchanges = 0;

  CommLedger& operator+=(const CommLedger& other) {
    gossip_rounds += other.gossip_rounds;
    scalars_transmitted += other.scalars_transmitted;
    cross_set_exchanges += other.cross_set_exchanges;
    return *this;
  }
  friend bool operator==(const CommLedger&, const CommLedger&) = default;
};

/// P independent consensus tasks advanced together. Row i of state is node i.
class GossipSession {
 public:
  GossipSession(ConsensusWeights weights, ComplexMatrix state, std::uint64_t round = 0)
      : weights_(std::move(weights)), state_(std::move(state)), round_(round) {}

  const ConsensusWeights& weights() const { return weights_; }
  const ComplexMatrix& state() const { return state_; }
  std::uint64_t round() const { return round_; }
  Eigen::Index payload_width() const { return state_.cols(); }

 private:
  ConsensusWeights weights_;
  ComplexMatrix state_;
  std::uint64_t round_;
};

GossipSession init_session(const ConsensusWeights& w, const ComplexMatrix& initial_values);

/// Z <- W Z, one shaking-hand.
GossipSession step_round(const GossipSession& s, CommLedger& ledger);

/// State after exactly `rounds` step_round calls.
ComplexMatrix run_consensus(const GossipSession& s, int rounds, CommLedger& ledger);

/// n * consensus value: each node's estimate of the full inner product.
ComplexMatrix ac_estimate(const ComplexMatrix& values, Eigen::Index n);

/// Every row replaced by the exact column mean.
ComplexMatrix exact_average(const ComplexMatrix& initial_values);

/// How a distributed algorithm averages: K gossip rounds per session (one K per
/// node set), or the exact mean (the K -> infinity limit, costs nothing).
struct AveragingMode {
  enum class Kind { kGossip, kExact };
  Kind kind = Kind::kExact;
  int rounds_s = 0;
  int rounds_r = 0;

  static AveragingMode exact() { return {}; }
  static AveragingMode gossip(int rounds) { return gossip(rounds, rounds); }
  static AveragingMode gossip(int rounds_s, int rounds_r);

  bool is_exact() const { return kind == Kind::kExact; }
};

/**
 * A node set's averaging primitive as used by the power methods.
 *
 * In gossip mode the K-round propagator W^K is built once by K successive
 * multiplications; each session then applies it in one product and charges
 * the ledger exactly as K step_round calls would.
 */
class ConsensusChannel {
 public:
  static ConsensusChannel gossip(const ConsensusWeights& w, int rounds);
  static ConsensusChannel exact(int node_count);

  int node_count() const { return node_count_; }
  int rounds() const { return rounds_; }
  bool is_exact() const { return exact_; }

  /// Consensus values after one session over the given initial payload.
  ComplexMatrix average(const ComplexMatrix& initial_values, CommLedger& ledger) const;
  /// ac_estimate(average(...)).
  ComplexMatrix inner_products(const ComplexMatrix& initial_values, CommLedger& ledger) const;

 private:
  ConsensusChannel() = default;

  int node_count_ = 0;
  int rounds_ = 0;
  bool exact_ = true;
  std::size_t links_ = 0;
  RealMatrix propagator_;
};

}  // namespace gpsvd
