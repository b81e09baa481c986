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

#include "gpsvd/power_distributed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpsvd/errors.hpp"

namespace gpsvd {

BridgeMap::BridgeMap(int s_nodes, int r_nodes, std::vector<int> s_to_r, std::vector<int> r_to_s)
    : s_to_r_(std::move(s_to_r)), r_to_s_(std::move(r_to_s)) {
  if (s_nodes < 1 || r_nodes < 1) throw ParameterError("BridgeMap: node counts must be positive");
  if (static_cast<int>(s_to_r_.size()) != s_nodes || static_cast<int>(r_to_s_.size()) != r_nodes)
    throw ParameterError("BridgeMap: every node needs exactly one gateway");
  for (const int g : s_to_r_)
    if (g < 0 || g >= r_nodes) throw ParameterError("BridgeMap: S gateway out of range");
  for (const int g : r_to_s_)
    if (g < 0 || g >= s_nodes) throw ParameterError("BridgeMap: R gateway out of range");
}

BridgeMap BridgeMap::round_robin(int s_nodes, int r_nodes) {
  std::vector<int> s_to_r(static_cast<std::size_t>(std::max(s_nodes, 0)));
  std::vector<int> r_to_s(static_cast<std::size_t>(std::max(r_nodes, 0)));
  for (int i = 0; i < s_nodes; ++i) s_to_r[static_cast<std::size_t>(i)] = i % r_nodes;
  for (int j = 0; j < r_nodes; ++j) r_to_s[static_cast<std::size_t>(j)] = j % s_nodes;
  return BridgeMap(s_nodes, r_nodes, std::move(s_to_r), std::move(r_to_s));
}

ComplexMatrix cross_set_relay(const ComplexMatrix& values_at_source, const BridgeMap& bridge,
                              RelayDirection direction, CommLedger& ledger) {
  const bool to_s = direction == RelayDirection::kRToS;
  const auto& gateway = to_s ? bridge.s_to_r() : bridge.r_to_s();
  const int source_nodes = to_s ? bridge.r_nodes() : bridge.s_nodes();
  if (values_at_source.rows() != source_nodes)
    throw ParameterError("cross_set_relay: source rows do not match the bridge");
  ComplexMatrix out(static_cast<Eigen::Index>(gateway.size()), values_at_source.cols());
  for (std::size_t d = 0; d < gateway.size(); ++d)
    out.row(static_cast<Eigen::Index>(d)) = values_at_source.row(gateway[d]);
  ledger.cross_set_exchanges += 1;
  return out;
}

std::vector<NodeState> node_states(const DistributedEstimate& est, const SampleSet& samples, NodeSet set) {
  const bool is_s = set == NodeSet::kS;
  const ComplexMatrix& vecs = is_s ? est.u : est.v;
  const ComplexMatrix& sig = is_s ? est.sigma_u : est.sigma_v;
  const ComplexMatrix& data = is_s ? samples.s : samples.r;
  std::vector<NodeState> out;
  for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
    NodeState st;
    st.node_id = static_cast<int>(i);
    st.set = set;
    st.local_samples = data.row(i).transpose();
    st.vec_entries = vecs.row(i).transpose();
    st.sigma = sig.row(i).transpose();
    out.push_back(std::move(st));
  }
  return out;
}

namespace {

/// One node set's local state. Rows are nodes; nothing here is read across
/// rows except through a consensus session or a relay.
struct Side {
  NodeSet tag;
  const ComplexMatrix* samples;
  const Topology* topo;
  ConsensusChannel channel;
  ComplexMatrix iter;   // current (unnormalized) iterates, node x H
  ComplexMatrix hat;    // normalized vectors
  ComplexMatrix sigma;  // per-node singular value / eigenvalue estimates
};

ConsensusChannel make_channel(const Topology& t, const AveragingMode& mode, NodeSet tag) {
  if (mode.is_exact()) return ConsensusChannel::exact(t.node_count());
  const int rounds = tag == NodeSet::kS ? mode.rounds_s : mode.rounds_r;
  return ConsensusChannel::gossip(best_constant_weights(t), rounds);
}

/// conj(x_i(t)) * w_i: node i's contribution to x(t)^H w, for every snapshot.
ComplexMatrix data_block(const ComplexMatrix& samples, const ComplexVector& w) {
  return (samples.conjugate().array().colwise() * w.array()).matrix();
}

/// (1/T) sum_t y_i(t) AC_i(t), evaluated by each node on its own row.
template <typename Block>
ComplexVector local_projection(const ComplexMatrix& samples, const Block& ac) {
  return samples.cwiseProduct(ac).rowwise().sum() / static_cast<double>(samples.cols());
}

struct Received {
  ComplexMatrix own;      // this set's session results
  ComplexMatrix partner;  // the other set's results, relayed (EVD: same as own)
};

class DistributedRun {
 public:
  DistributedRun(std::vector<Side> sides, const BridgeMap* bridge, const PowerConfig& cfg,
                 CommLedger& ledger)
      : sides_(std::move(sides)), bridge_(bridge), cfg_(cfg), ledger_(ledger),
        snapshots_(sides_.front().samples->cols()) {}

  DistributedEstimate run_sequential() {
    const int comps = cfg_.num_components;
    for (int h = 0; h < comps; ++h) {
      for (int it = 0; it < cfg_.power_iters; ++it) sequential_iteration(h);
      normalize({h});
    }
    return finish();
  }

  DistributedEstimate run_parallel() {
    for (int it = 0; it < cfg_.power_iters; ++it) parallel_iteration();
    std::vector<int> all(static_cast<std::size_t>(cfg_.num_components));
    for (int h = 0; h < cfg_.num_components; ++h) all[static_cast<std::size_t>(h)] = h;
    normalize(all);
    return finish();
  }

 private:
  std::size_t partner_of(std::size_t k) const { return sides_.size() == 1 ? 0 : 1 - k; }

  /// One session per node set over its payload, then one relay each way.
  std::vector<Received> exchange(const std::vector<ComplexMatrix>& payloads) {
    std::vector<ComplexMatrix> ac;
    for (std::size_t k = 0; k < sides_.size(); ++k)
      ac.push_back(sides_[k].channel.inner_products(payloads[k], ledger_));
    std::vector<Received> out(sides_.size());
    if (sides_.size() == 1) {
      out[0] = {ac[0], ac[0]};
      return out;
    }
    out[0] = {ac[0], cross_set_relay(ac[1], *bridge_, RelayDirection::kRToS, ledger_)};
    out[1] = {ac[1], cross_set_relay(ac[0], *bridge_, RelayDirection::kSToR, ledger_)};
    return out;
  }

  /// Consensus estimate of a squared norm; must be positive to divide by.
  RealVector usable_norm(const ComplexVector& ac) {
    RealVector out(ac.size());
    for (Eigen::Index i = 0; i < ac.size(); ++i) {
      double value = ac(i).real();
      if (!(value > 0.0) || !std::isfinite(value)) {
        ++diag_.norm_guard_activations;
        value = std::abs(ac(i));
        if (!(value > 0.0) || !std::isfinite(value))
          throw NumericError("distributed power: norm consensus produced no usable value");
      }
      out(i) = value;
    }
    return out;
  }

  /// Replace estimates at nodes whose normalized entry is below the guard by
  /// the estimate of the neighbour holding the largest-magnitude entry.
  void guard_sigma(ComplexVector& est, const RealVector& magnitude, const Topology& topo) {
    for (Eigen::Index i = 0; i < est.size(); ++i) {
      if (magnitude(i) >= kDivisionGuard) continue;
      ++diag_.sigma_guard_activations;
      int best = -1;
      for (const int j : topo.neighbors(static_cast<int>(i)))
        if (best < 0 || magnitude(j) > magnitude(best)) best = j;
      if (best < 0 || magnitude(best) < kDivisionGuard)
        throw NumericError("distributed power: division guard found no usable neighbour");
      est(i) = est(best);
    }
  }

  static ComplexVector safe_quotient(const ComplexVector& num, const ComplexVector& den,
                                     const RealVector& magnitude) {
    ComplexVector out(num.size());
    for (Eigen::Index i = 0; i < num.size(); ++i)
      out(i) = magnitude(i) >= kDivisionGuard ? num(i) / den(i) : Complex(0.0);
    return out;
  }

  void check_finite(const std::vector<ComplexMatrix>& next) const {
    for (const auto& m : next)
      if (!m.allFinite()) throw NumericError("distributed power: non-finite iterate");
  }

  void sequential_iteration(int h) {
    const Eigen::Index t = snapshots_;
    std::vector<ComplexMatrix> payloads;
    for (const Side& side : sides_) {
      ComplexMatrix p(side.iter.rows(), t + h);
      p.leftCols(t) = data_block(*side.samples, side.iter.col(h));
      for (int m = 0; m < h; ++m)
        p.col(t + m) = side.hat.col(m).conjugate().cwiseProduct(side.iter.col(h));
      payloads.push_back(std::move(p));
    }
    const auto rx = exchange(payloads);
    std::vector<ComplexMatrix> next;
    for (std::size_t k = 0; k < sides_.size(); ++k) {
      const Side& side = sides_[k];
      const ComplexMatrix& recv = rx[k].partner;
      ComplexVector y = local_projection(*side.samples, recv.leftCols(t)) + cfg_.shift * side.iter.col(h);
      for (int m = 0; m < h; ++m) {
        y -= side.sigma.col(m).real().cast<Complex>().cwiseProduct(side.hat.col(m)).cwiseProduct(
            recv.col(t + m));
      }
      next.push_back(y);
    }
    check_finite(next);
    for (std::size_t k = 0; k < sides_.size(); ++k) sides_[k].iter.col(h) = next[k];
  }

  void parallel_iteration() {
    const Eigen::Index t = snapshots_;
    const int comps = cfg_.num_components;
    const Eigen::Index cross0 = comps * t;
    const Eigen::Index pairs = comps * (comps - 1) / 2;
    const Eigen::Index norm0 = cross0 + pairs;
    auto cross_col = [&](int m, int h) { return cross0 + h * (h - 1) / 2 + m; };

    std::vector<ComplexMatrix> payloads;
    for (const Side& side : sides_) {
      ComplexMatrix p(side.iter.rows(), norm0 + comps);
      for (int h = 0; h < comps; ++h) {
        p.middleCols(h * t, t) = data_block(*side.samples, side.iter.col(h));
        for (int m = 0; m < h; ++m)
          p.col(cross_col(m, h)) = side.iter.col(m).conjugate().cwiseProduct(side.iter.col(h));
        p.col(norm0 + h) = side.iter.col(h).cwiseAbs2().cast<Complex>();
      }
      payloads.push_back(std::move(p));
    }
    const auto rx = exchange(payloads);

    std::vector<ComplexMatrix> next;
    for (std::size_t k = 0; k < sides_.size(); ++k) {
      Side& side = sides_[k];
      const ComplexMatrix& recv = rx[k].partner;
      const ComplexMatrix& own = rx[k].own;
      const Eigen::Index n = side.iter.rows();

      std::vector<RealVector> own_norm;
      std::vector<RealVector> partner_norm;
      std::vector<ComplexVector> proj;
      for (int m = 0; m < comps; ++m) {
        own_norm.push_back(usable_norm(own.col(norm0 + m)));
        partner_norm.push_back(k == partner_of(k) ? own_norm.back() : usable_norm(recv.col(norm0 + m)));
        proj.push_back(local_projection(*side.samples, recv.middleCols(m * t, t)));
      }
      // Singular value estimates from the current iterates; only the
      // components that deflate something are needed.
      for (int m = 0; m + 1 < comps; ++m) {
        const RealVector ratio = (partner_norm[m].array() / own_norm[m].array()).sqrt().matrix();
        const RealVector magnitude =
            (side.iter.col(m).cwiseAbs().array() / own_norm[m].array().sqrt()).matrix();
        ComplexVector est = safe_quotient(
            proj[m], side.iter.col(m).cwiseProduct(ratio.cast<Complex>()), magnitude);
        guard_sigma(est, magnitude, *side.topo);
        side.sigma.col(m) = est;
      }
      ComplexMatrix y(n, comps);
      for (int h = 0; h < comps; ++h) {
        ComplexVector col = proj[h] + cfg_.shift * side.iter.col(h);
        for (int m = 0; m < h; ++m) {
          const RealVector scale =
              (own_norm[m].array() * partner_norm[m].array()).sqrt().inverse().matrix();
          col -= side.sigma.col(m)
                     .real()
                     .cwiseProduct(scale)
                     .cast<Complex>()
                     .cwiseProduct(side.iter.col(m))
                     .cwiseProduct(recv.col(cross_col(m, h)));
        }
        y.col(h) = col;
      }
      next.push_back(std::move(y));
    }
    check_finite(next);
    for (std::size_t k = 0; k < sides_.size(); ++k) sides_[k].iter = next[k];
  }

  /// Normalization session: each set averages |x_h|^2 and the data products of
  /// its final iterates, then every node normalizes its entries and forms its
  /// estimate of the singular value (eigenvalue) of each listed component.
  void normalize(const std::vector<int>& components) {
    const Eigen::Index t = snapshots_;
    const auto count = static_cast<Eigen::Index>(components.size());
    std::vector<ComplexMatrix> payloads;
    for (const Side& side : sides_) {
      ComplexMatrix p(side.iter.rows(), count * t + count);
      for (Eigen::Index q = 0; q < count; ++q) {
        const int h = components[static_cast<std::size_t>(q)];
        p.middleCols(q * t, t) = data_block(*side.samples, side.iter.col(h));
        p.col(count * t + q) = side.iter.col(h).cwiseAbs2().cast<Complex>();
      }
      payloads.push_back(std::move(p));
    }
    const auto rx = exchange(payloads);

    // norms[k][q]: set k's own estimate of |x_h|^2 for listed component q.
    std::vector<std::vector<RealVector>> norms(sides_.size());
    for (std::size_t k = 0; k < sides_.size(); ++k) {
      Side& side = sides_[k];
      for (Eigen::Index q = 0; q < count; ++q) {
        const int h = components[static_cast<std::size_t>(q)];
        norms[k].push_back(usable_norm(rx[k].own.col(count * t + q)));
        side.hat.col(h) = side.iter.col(h).cwiseQuotient(norms[k].back().cwiseSqrt().cast<Complex>());
      }
    }
    for (std::size_t k = 0; k < sides_.size(); ++k) {
      Side& side = sides_[k];
      const ComplexMatrix& recv = rx[k].partner;
      for (Eigen::Index q = 0; q < count; ++q) {
        const int h = components[static_cast<std::size_t>(q)];
        const RealVector partner_norm = k == partner_of(k)
                                            ? norms[k][static_cast<std::size_t>(q)]
                                            : usable_norm(recv.col(count * t + q));
        const ComplexVector proj =
            local_projection(*side.samples, recv.middleCols(q * t, t))
                .cwiseQuotient(partner_norm.cwiseSqrt().cast<Complex>());
        const RealVector magnitude = side.hat.col(h).cwiseAbs();
        ComplexVector est = safe_quotient(proj, side.hat.col(h), magnitude);
        guard_sigma(est, magnitude, *side.topo);
        side.sigma.col(h) = est;
      }
      if (!side.hat.allFinite() || !side.sigma.allFinite())
        throw NumericError("distributed power: non-finite normalized output");
    }
  }

  DistributedEstimate finish() {
    DistributedEstimate est;
    est.u = sides_[0].hat;
    est.sigma_u = sides_[0].sigma;
    if (sides_.size() == 2) {
      est.v = sides_[1].hat;
      est.sigma_v = sides_[1].sigma;
    }
    diag_.max_sigma_imag = est.sigma_u.imag().cwiseAbs().maxCoeff();
    if (est.sigma_v.size() > 0)
      diag_.max_sigma_imag = std::max(diag_.max_sigma_imag, est.sigma_v.imag().cwiseAbs().maxCoeff());
    est.diagnostics = diag_;
    return est;
  }

  std::vector<Side> sides_;
  const BridgeMap* bridge_;
  PowerConfig cfg_;
  CommLedger& ledger_;
  Eigen::Index snapshots_;
  Diagnostics diag_;
};

Side make_side(NodeSet tag, const ComplexMatrix& samples, const Topology& topo,
               const AveragingMode& mode, const PowerConfig& cfg, std::uint64_t seed) {
  const int n = topo.node_count();
  if (samples.rows() != n)
    throw ParameterError("distributed power: sample rows do not match topology node count");
  Side side{tag, &samples, &topo, make_channel(topo, mode, tag), {}, {}, {}};
  side.iter = initial_iterates(n, cfg.num_components, seed, tag);
  side.hat = ComplexMatrix::Zero(n, cfg.num_components);
  side.sigma = ComplexMatrix::Zero(n, cfg.num_components);
  return side;
}

DistributedRun make_svd_run(const SampleSet& samples, const Topology& topo_s, const Topology& topo_r,
                            const BridgeMap& bridge, const PowerConfig& cfg,
                            const AveragingMode& mode, std::uint64_t seed, CommLedger& ledger) {
  cfg.validate();
  if (samples.s.cols() != samples.r.cols())
    throw ParameterError("distributed power: S and R snapshot counts differ");
  if (samples.s.cols() < 1) throw ParameterError("distributed power: need at least one snapshot");
  if (bridge.s_nodes() != topo_s.node_count() || bridge.r_nodes() != topo_r.node_count())
    throw ParameterError("distributed power: bridge does not match the topologies");
  if (cfg.num_components > std::min(topo_s.node_count(), topo_r.node_count()))
    throw ParameterError("distributed power: H exceeds min(|S|,|R|)");
  std::vector<Side> sides;
  sides.push_back(make_side(NodeSet::kS, samples.s, topo_s, mode, cfg, seed));
  sides.push_back(make_side(NodeSet::kR, samples.r, topo_r, mode, cfg, seed));
  return DistributedRun(std::move(sides), &bridge, cfg, ledger);
}

DistributedRun make_evd_run(const ComplexMatrix& samples, const Topology& topo, const PowerConfig& cfg,
                            const AveragingMode& mode, std::uint64_t seed, CommLedger& ledger) {
  cfg.validate();
  if (samples.cols() < 1) throw ParameterError("distributed power: need at least one snapshot");
  if (cfg.num_components > topo.node_count())
    throw ParameterError("distributed power: H exceeds node count");
  std::vector<Side> sides;
  sides.push_back(make_side(NodeSet::kS, samples, topo, mode, cfg, seed));
  return DistributedRun(std::move(sides), nullptr, cfg, ledger);
}

}  // namespace

DistributedEstimate sequential_power_svd(const SampleSet& samples, const Topology& topo_s,
                                         const Topology& topo_r, const BridgeMap& bridge,
                                         const PowerConfig& cfg, const AveragingMode& mode,
                                         std::uint64_t seed, CommLedger& ledger) {
  return make_svd_run(samples, topo_s, topo_r, bridge, cfg, mode, seed, ledger).run_sequential();
}

DistributedEstimate parallel_power_svd(const SampleSet& samples, const Topology& topo_s,
                                       const Topology& topo_r, const BridgeMap& bridge,
                                       const PowerConfig& cfg, const AveragingMode& mode,
                                       std::uint64_t seed, CommLedger& ledger) {
  return make_svd_run(samples, topo_s, topo_r, bridge, cfg, mode, seed, ledger).run_parallel();
}

DistributedEstimate sequential_power_evd(const ComplexMatrix& samples, const Topology& topo,
                                         const PowerConfig& cfg, const AveragingMode& mode,
                                         std::uint64_t seed, CommLedger& ledger) {
  return make_evd_run(samples, topo, cfg, mode, seed, ledger).run_sequential();
}

DistributedEstimate parallel_power_evd(const ComplexMatrix& samples, const Topology& topo,
                                       const PowerConfig& cfg, const AveragingMode& mode,
                                       std::uint64_t seed, CommLedger& ledger) {
  return make_evd_run(samples, topo, cfg, mode, seed, ledger).run_parallel();
}

}  // namespace gpsvd
