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

#include "gpsvd/consensus.hpp"

#include "gpsvd/errors.hpp"

namespace gpsvd {

namespace {

void charge_rounds(CommLedger& ledger, std::uint64_t rounds, std::size_t links, Eigen::Index width) {
  ledger.gossip_rounds += rounds;
  ledger.scalars_transmitted += rounds * 2 * links * static_cast<std::uint64_t>(width);
}

}  // namespace

GossipSession init_session(const ConsensusWeights& w, const ComplexMatrix& initial_values) {
  if (initial_values.rows() != w.node_count())
    throw ParameterError("init_session: payload rows must equal node count");
  if (initial_values.cols() < 1) throw ParameterError("init_session: payload width must be positive");
  return GossipSession(w, initial_values);
}

GossipSession step_round(const GossipSession& s, CommLedger& ledger) {
  ComplexMatrix next = s.weights().matrix().cast<Complex>() * s.state();
  charge_rounds(ledger, 1, s.weights().link_count(), s.payload_width());
  return GossipSession(s.weights(), std::move(next), s.round() + 1);
}

ComplexMatrix run_consensus(const GossipSession& s, int rounds, CommLedger& ledger) {
  if (rounds < 0) throw ParameterError("run_consensus: rounds must be nonnegative");
  GossipSession cur = s;
  for (int k = 0; k < rounds; ++k) cur = step_round(cur, ledger);
  return cur.state();
}

ComplexMatrix ac_estimate(const ComplexMatrix& values, Eigen::Index n) {
  return static_cast<double>(n) * values;
}

ComplexMatrix exact_average(const ComplexMatrix& initial_values) {
  const ComplexVector mean = initial_values.colwise().mean().transpose();
  return mean.transpose().replicate(initial_values.rows(), 1);
}

AveragingMode AveragingMode::gossip(int rounds_s, int rounds_r) {
  if (rounds_s < 1 || rounds_r < 1) throw ParameterError("AveragingMode: gossip rounds must be >= 1");
  AveragingMode m;
  m.kind = Kind::kGossip;
  m.rounds_s = rounds_s;
  m.rounds_r = rounds_r;
  return m;
}

ConsensusChannel ConsensusChannel::gossip(const ConsensusWeights& w, int rounds) {
  if (rounds < 0) throw ParameterError("ConsensusChannel: rounds must be nonnegative");
  ConsensusChannel c;
  c.node_count_ = w.node_count();
  c.rounds_ = rounds;
  c.exact_ = false;
  c.links_ = w.link_count();
  c.propagator_ = RealMatrix::Identity(w.node_count(), w.node_count());
  for (int k = 0; k < rounds; ++k) c.propagator_ = w.matrix() * c.propagator_;
  return c;
}

ConsensusChannel ConsensusChannel::exact(int node_count) {
  if (node_count < 1) throw ParameterError("ConsensusChannel: node_count must be positive");
  ConsensusChannel c;
  c.node_count_ = node_count;
  return c;
}

ComplexMatrix ConsensusChannel::average(const ComplexMatrix& initial_values, CommLedger& ledger) const {
  if (initial_values.rows() != node_count_)
    throw ParameterError("ConsensusChannel: payload rows must equal node count");
  if (exact_) return exact_average(initial_values);
  charge_rounds(ledger, static_cast<std::uint64_t>(rounds_), links_, initial_values.cols());
  return propagator_.cast<Complex>() * initial_values;
}

ComplexMatrix ConsensusChannel::inner_products(const ComplexMatrix& initial_values,
                                               CommLedger& ledger) const {
  return ac_estimate(average(initial_values, ledger), node_count_);
}

}  // namespace gpsvd
