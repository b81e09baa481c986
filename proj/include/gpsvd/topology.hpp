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
#include <utility>
#include <vector>

#include "gpsvd/types.hpp"

namespace gpsvd {

/// Undirected edge with first < second.
using Edge = std::pair<int, int>;

/// Connected, undirected simple graph over nodes 0..node_count-1.
class Topology {
 public:
  /// Throws ParameterError on self-loops, duplicates, out-of-range indices or
  /// a disconnected edge set.
  Topology(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<int>& neighbors(int node) const { return adjacency_.at(static_cast<std::size_t>(node)); }
  int degree(int node) const { return static_cast<int>(neighbors(node).size()); }
  bool has_edge(int a, int b) const;

  static Topology path(int node_count);
  static Topology ring(int node_count);
  static Topology complete(int node_count);

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

bool is_connected(int node_count, const std::vector<Edge>& edges);

/// Watts-Strogatz small-world graph: ring lattice with k/2 neighbours per side,
/// each lattice edge rewired with probability p. Disconnected outcomes are
/// regenerated from seed + attempt, up to kSmallWorldRetries attempts.
Topology generate_small_world(int n, int k, double p, std::uint64_t seed);
inline constexpr int kSmallWorldRetries = 32;

/// L = D - A.
RealMatrix laplacian(const Topology& t);

/// Symmetric, doubly-stochastic averaging matrix.
class ConsensusWeights {
 public:
  /// Checks symmetry and row/column sums (1e-12). Mixing (spectral_gap < 1)
  /// is a separate check, see mixes().
  explicit ConsensusWeights(RealMatrix w);
  /// Additionally checks that off-diagonal support lies on topology edges.
  ConsensusWeights(RealMatrix w, const Topology& t);

  const RealMatrix& matrix() const { return w_; }
  int node_count() const { return static_cast<int>(w_.rows()); }
  /// Number of node pairs {i,j}, i != j, with a nonzero weight.
  std::size_t link_count() const { return links_; }

 private:
  RealMatrix w_;
  std::size_t links_ = 0;
};

/// W = I - c L with c = 2 / (lambda_max(L) + smallest nonzero lambda(L)).
ConsensusWeights best_constant_weights(const Topology& t);

/// Largest |eigenvalue| of W on the subspace orthogonal to the all-ones vector.
double spectral_gap(const ConsensusWeights& w);

inline bool mixes(const ConsensusWeights& w) { return spectral_gap(w) < 1.0; }

/// One "i j" pair per line, 0-indexed.
void write_edge_list(std::ostream& os, const Topology& t);
/// node_count <= 0 infers it from the largest index.
Topology read_edge_list(std::istream& is, int node_count = 0);

}  // namespace gpsvd
