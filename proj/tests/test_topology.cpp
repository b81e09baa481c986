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

#include <Eigen/Eigenvalues>
#include <sstream>

#include "doctest.h"
#include "gpsvd/errors.hpp"
#include "gpsvd/topology.hpp"

using namespace gpsvd;

TEST_CASE("Topology rejects self-loops, duplicates and disconnected edge sets") {
  CHECK_THROWS_AS(Topology(3, {{0, 0}, {0, 1}, {1, 2}}), ParameterError);
  CHECK_THROWS_AS(Topology(3, {{0, 1}, {1, 0}, {1, 2}}), ParameterError);
  CHECK_THROWS_AS(Topology(4, {{0, 1}, {2, 3}}), ParameterError);
  CHECK_THROWS_AS(Topology(3, {{0, 1}, {1, 3}}), ParameterError);
  CHECK_NOTHROW(Topology(3, {{1, 0}, {2, 1}}));
}

TEST_CASE("generate_small_world: p = 0 gives the ring lattice for any seed") {
  for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
    const Topology t = generate_small_world(4, 2, 0.0, seed);
    CHECK(t.edge_count() == 4);
    for (int i = 0; i < 4; ++i) CHECK(t.degree(i) == 2);
    CHECK(t.edges() == Topology::ring(4).edges());
  }
  CHECK(generate_small_world(12, 6, 0.0, 1).edges() == generate_small_world(12, 6, 0.0, 99).edges());
}

TEST_CASE("generate_small_world: rewired graphs keep nk/2 edges and stay connected") {
  const Topology t = generate_small_world(10, 4, 0.2, 1);
  CHECK(t.edge_count() == 20);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Topology g = generate_small_world(10, 4, 0.2, seed);
    REQUIRE(g.edge_count() == 20);
    const Topology h = generate_small_world(12, 6, 1.0, seed);
    REQUIRE(h.edge_count() == 36);
    for (const auto& [a, b] : h.edges()) {
      REQUIRE(a != b);
      REQUIRE(h.has_edge(b, a));
    }
  }
}

TEST_CASE("generate_small_world: parameter validation") {
  CHECK_THROWS_AS(generate_small_world(4, 3, 0.1, 0), ParameterError);
  CHECK_THROWS_AS(generate_small_world(4, 4, 0.1, 0), ParameterError);
  CHECK_THROWS_AS(generate_small_world(10, 4, 1.5, 0), ParameterError);
  CHECK_THROWS_AS(generate_small_world(10, 4, -0.1, 0), ParameterError);
  CHECK_THROWS_AS(generate_small_world(2, 0, 0.1, 0), ParameterError);
}

TEST_CASE("generate_small_world: same seed, same graph") {
  CHECK(generate_small_world(12, 6, 0.2, 77).edges() == generate_small_world(12, 6, 0.2, 77).edges());
}

TEST_CASE("laplacian: definition of D - A") {
  RealMatrix path(3, 3);
  path << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(laplacian(Topology::path(3)) == path);
  RealMatrix k3(3, 3);
  k3 << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK(laplacian(Topology::complete(3)) == k3);
  const RealMatrix l = laplacian(generate_small_world(10, 4, 0.2, 3));
  CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("best_constant_weights: path graph") {
  // Eigenvalues of the 3-node path Laplacian from an independent solver.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(laplacian(Topology::path(3)));
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(2) == doctest::Approx(3.0).epsilon(1e-12));
  const double c = 2.0 / (3.0 + 1.0);
  CHECK(c == 0.5);

  const ConsensusWeights w = best_constant_weights(Topology::path(3));
  RealMatrix expected(3, 3);
  expected << 0.5, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0, 0.5, 0.5;
  CHECK((w.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(spectral_gap(w) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("best_constant_weights: complete graph gives J/n") {
  for (int n : {2, 3, 5, 8}) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(laplacian(Topology::complete(n)));
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(n).epsilon(1e-12));
    const ConsensusWeights w = best_constant_weights(Topology::complete(n));
    CHECK((w.matrix() - RealMatrix::Constant(n, n, 1.0 / n)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(spectral_gap(w) <= 1e-12);
  }
}

TEST_CASE("best_constant_weights: invariants on generated graphs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Topology t = generate_small_world(12, 6, 0.2, seed);
    const ConsensusWeights w = best_constant_weights(t);
    const RealMatrix& m = w.matrix();
    const RealVector ones = RealVector::Ones(12);
    REQUIRE((m * ones - ones).cwiseAbs().maxCoeff() <= 1e-12);
    REQUIRE((m.transpose() * ones - ones).cwiseAbs().maxCoeff() <= 1e-12);
    REQUIRE((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j)
        if (i != j && !t.has_edge(i, j)) REQUIRE(m(i, j) == 0.0);
    REQUIRE(spectral_gap(w) < 1.0);
  }
}

TEST_CASE("spectral_gap: identity weights do not mix") {
  const ConsensusWeights w(RealMatrix::Identity(4, 4));
  CHECK(spectral_gap(w) >= 1.0);
  CHECK_FALSE(mixes(w));
}

TEST_CASE("ConsensusWeights validates stochasticity, symmetry and support") {
  RealMatrix bad(2, 2);
  bad << 0.6, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(ConsensusWeights{bad}, ParameterError);
  RealMatrix asym(2, 2);
  asym << 0.5, 0.5, 0.4, 0.6;
  CHECK_THROWS_AS(ConsensusWeights{asym}, ParameterError);
  const RealMatrix dense = RealMatrix::Constant(3, 3, 1.0 / 3.0);
  CHECK_THROWS_AS(ConsensusWeights(dense, Topology::path(3)), ParameterError);
}

TEST_CASE("edge list text round trip") {
  const Topology t = generate_small_world(10, 4, 0.2, 8);
  std::stringstream ss;
  write_edge_list(ss, t);
  CHECK(ss.str().substr(0, ss.str().find('\n')).find(' ') != std::string::npos);
  const Topology back = read_edge_list(ss);
  CHECK(back.node_count() == 10);
  CHECK(back.edges() == t.edges());
  std::istringstream commented("# path\n0 1\n\n1 2  # tail\n");
  CHECK(read_edge_list(commented).edges() == Topology::path(3).edges());
  std::istringstream bad("0 1\nzero one\n");
  CHECK_THROWS_AS(read_edge_list(bad), ParameterError);
}
