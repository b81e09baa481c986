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

#include "gpsvd/topology.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "gpsvd/errors.hpp"
#include "gpsvd/linalg.hpp"
#include "gpsvd/rng.hpp"

namespace gpsvd {

namespace {

std::vector<std::vector<int>> build_adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

}  // namespace

bool is_connected(int node_count, const std::vector<Edge>& edges) {
  if (node_count <= 0) return false;
  const auto adj = build_adjacency(node_count, edges);
  std::vector<bool> seen(static_cast<std::size_t>(node_count), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (const int w : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == node_count;
}

Topology::Topology(int node_count, std::vector<Edge> edges) : node_count_(node_count) {
  if (node_count < 1) throw ParameterError("Topology: node_count must be positive");
  for (auto& e : edges) {
    if (e.first == e.second) throw ParameterError("Topology: self-loop");
    if (e.first < 0 || e.second < 0 || e.first >= node_count || e.second >= node_count)
      throw ParameterError("Topology: node index out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ParameterError("Topology: duplicate edge");
  if (!is_connected(node_count, edges)) throw ParameterError("Topology: graph is disconnected");
  edges_ = std::move(edges);
  adjacency_ = build_adjacency(node_count, edges_);
}

bool Topology::has_edge(int a, int b) const {
  const auto& nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

Topology Topology::path(int node_count) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < node_count; ++i) edges.emplace_back(i, i + 1);
  return Topology(node_count, std::move(edges));
}

Topology Topology::ring(int node_count) {
  if (node_count < 3) throw ParameterError("Topology::ring: need at least 3 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i < node_count; ++i) edges.emplace_back(i, (i + 1) % node_count);
  return Topology(node_count, std::move(edges));
}

Topology Topology::complete(int node_count) {
  std::vector<Edge> edges;
  for (int i = 0; i < node_count; ++i)
    for (int j = i + 1; j < node_count; ++j) edges.emplace_back(i, j);
  return Topology(node_count, std::move(edges));
}

Topology generate_small_world(int n, int k, double p, std::uint64_t seed) {
  if (n < 3) throw ParameterError("generate_small_world: n must be at least 3");
  if (k <= 0 || k % 2 != 0) throw ParameterError("generate_small_world: k must be positive and even");
  if (k >= n) throw ParameterError("generate_small_world: k must be less than n");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("generate_small_world: p must lie in [0,1]");

  const auto un = static_cast<std::size_t>(n);
  for (int attempt = 0; attempt < kSmallWorldRetries; ++attempt) {
    Engine engine(seed + static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<bool>> adj(un, std::vector<bool>(un, false));
    auto link = [&](int a, int b, bool on) {
      adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = on;
      adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = on;
    };
    for (int j = 1; j <= k / 2; ++j)
      for (int i = 0; i < n; ++i) link(i, (i + j) % n, true);

    for (int j = 1; j <= k / 2; ++j) {
      for (int i = 0; i < n; ++i) {
        if (coin(engine) >= p) continue;
        std::vector<int> candidates;
        for (int w = 0; w < n; ++w)
          if (w != i && !adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)])
            candidates.push_back(w);
        if (candidates.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        const int w = candidates[pick(engine)];
        link(i, (i + j) % n, false);
        link(i, w, true);
      }
    }

    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) edges.emplace_back(a, b);
    if (is_connected(n, edges)) return Topology(n, std::move(edges));
  }
  throw GenerationError("generate_small_world: no connected graph within retry budget");
}

RealMatrix laplacian(const Topology& t) {
  const int n = t.node_count();
  RealMatrix l = RealMatrix::Zero(n, n);
  for (const auto& [a, b] : t.edges()) {
    l(a, b) -= 1.0;
    l(b, a) -= 1.0;
    l(a, a) += 1.0;
    l(b, b) += 1.0;
  }
  return l;
}

ConsensusWeights::ConsensusWeights(RealMatrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols() || w_.rows() == 0)
    throw ParameterError("ConsensusWeights: matrix must be square and nonempty");
  if ((w_ - w_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ParameterError("ConsensusWeights: matrix is not symmetric");
  const RealVector ones = RealVector::Ones(w_.rows());
  if (((w_ * ones) - ones).cwiseAbs().maxCoeff() > 1e-12 ||
      ((w_.transpose() * ones) - ones).cwiseAbs().maxCoeff() > 1e-12)
    throw ParameterError("ConsensusWeights: matrix is not doubly stochastic");
  for (Eigen::Index i = 0; i < w_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < w_.cols(); ++j)
      if (w_(i, j) != 0.0) ++links_;
}

ConsensusWeights::ConsensusWeights(RealMatrix w, const Topology& t) : ConsensusWeights(std::move(w)) {
  if (w_.rows() != t.node_count()) throw ParameterError("ConsensusWeights: size differs from topology");
  for (int i = 0; i < t.node_count(); ++i)
    for (int j = 0; j < t.node_count(); ++j)
      if (i != j && w_(i, j) != 0.0 && !t.has_edge(i, j))
        throw ParameterError("ConsensusWeights: weight on a non-edge");
}

ConsensusWeights best_constant_weights(const Topology& t) {
  const RealMatrix l = laplacian(t);
  const int n = t.node_count();
  if (n == 1) return ConsensusWeights(RealMatrix::Identity(1, 1), t);
  const RealVector eig = hermitian_evd_oracle(l).values;
  const double largest = eig.maxCoeff();
  // Connected graph: exactly one zero eigenvalue; take the smallest above it.
  const double floor = 1e-9 * std::max(1.0, largest);
  double second_smallest = largest;
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    if (eig(i) > floor) second_smallest = std::min(second_smallest, eig(i));
  const double denom = largest + second_smallest;
  if (!(denom > 0.0)) throw NumericError("best_constant_weights: degenerate Laplacian spectrum");
  const double c = 2.0 / denom;
  RealMatrix w = RealMatrix::Identity(n, n) - c * l;
  return ConsensusWeights(std::move(w), t);
}

double spectral_gap(const ConsensusWeights& w) {
  const auto n = w.matrix().rows();
  const RealMatrix centered =
      w.matrix() - RealMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
  return hermitian_evd_oracle(centered).values.cwiseAbs().maxCoeff();
}

void write_edge_list(std::ostream& os, const Topology& t) {
  for (const auto& [a, b] : t.edges()) os << a << ' ' << b << '\n';
}

Topology read_edge_list(std::istream& is, int node_count) {
  std::vector<Edge> edges;
  std::string line;
  int largest = -1;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    if (!(fields >> a >> b))
      throw ParameterError("read_edge_list: malformed line " + std::to_string(lineno));
    edges.emplace_back(a, b);
    largest = std::max({largest, a, b});
  }
  return Topology(node_count > 0 ? node_count : largest + 1, std::move(edges));
}

}  // namespace gpsvd
