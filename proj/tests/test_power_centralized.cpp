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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "gpsvd/errors.hpp"
#include "gpsvd/metrics.hpp"
#include "gpsvd/power_centralized.hpp"

using namespace gpsvd;
using gpsvd::testing::samples_with_singular_values;
using gpsvd::testing::samples_with_spectrum;
using gpsvd::testing::subspace_angle;

TEST_CASE("PowerConfig validation") {
  PowerConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.shift = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.shift = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.power_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.num_components = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("initial_iterates are per node and reproducible") {
  const ComplexMatrix a = initial_iterates(10, 3, 7, NodeSet::kS);
  CHECK(a == initial_iterates(10, 3, 7, NodeSet::kS));
  CHECK(a != initial_iterates(10, 3, 7, NodeSet::kR));
  CHECK(a != initial_iterates(10, 3, 8, NodeSet::kS));
  // A node's draw does not depend on how many nodes exist.
  CHECK(initial_iterates(12, 3, 7, NodeSet::kS).topRows(10) == a);
}

TEST_CASE("centralized_power_evd matches the eigensolver on a separated spectrum") {
  Engine rng(21);
  PowerConfig cfg;
  cfg.power_iters = 200;
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix x = samples_with_spectrum(10, 60, {8.0, 4.0, 2.0, 1.0, 0.5}, rng);
    const auto oracle = hermitian_evd_oracle(sample_covariance(x));
    const PowerEstimate est = centralized_power_evd(x, cfg, static_cast<std::uint64_t>(trial));
    const RealVector values = est.values();
    for (int h = 0; h < 3; ++h) REQUIRE(std::abs(values(h) - oracle.values(h)) <= 1e-6 * oracle.values(h));
    REQUIRE(subspace_angle(oracle.vectors.leftCols(3), est.u) <= 1e-6);
    REQUIRE(est.v.size() == 0);
  }
}

TEST_CASE("centralized_power_evd: rank-1 noiseless data") {
  SignalModelConfig sig;
  sig.s_sources = 1;
  sig.noise_scale = 0.0;
  sig.snapshots = 50;
  sig.seed = 4;
  const SampleSet x = generate_passive_radar(sig);
  PowerConfig cfg;
  cfg.num_components = 1;
  cfg.power_iters = 200;
  const PowerEstimate est = centralized_power_evd(x.s, cfg, 1);
  const auto oracle = hermitian_evd_oracle(sample_covariance(x.s));
  CHECK(std::abs(est.values()(0) - oracle.values(0)) <= 1e-8 * oracle.values(0));
  // Every node's local estimate agrees on rank-1 data.
  CHECK((est.sigma_u.col(0).array() - oracle.values(0)).abs().maxCoeff() <= 1e-8 * oracle.values(0));
}

TEST_CASE("centralized_power_evd: the shift moves eigenvalues, not eigenvectors") {
  Engine rng(22);
  const ComplexMatrix x = samples_with_spectrum(8, 40, {3.0, 1.5, 0.7, 0.2}, rng);
  PowerConfig a;
  a.power_iters = 200;
  PowerConfig b = a;
  b.shift = 0.5;
  const PowerEstimate ea = centralized_power_evd(x, a, 3);
  const PowerEstimate eb = centralized_power_evd(x, b, 3);
  const ComplexMatrix aligned = align_phases(eb.u, ea.u);
  CHECK((aligned - ea.u).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((ea.values() - eb.values()).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("centralized_power_evd: deflated components are orthogonal") {
  Engine rng(23);
  const ComplexMatrix x = samples_with_spectrum(10, 80, {5.0, 2.5, 1.2, 0.6, 0.3}, rng);
  PowerConfig cfg;
  cfg.power_iters = 200;
  cfg.num_components = 4;
  const PowerEstimate est = centralized_power_evd(x, cfg, 5);
  const ComplexMatrix gram = est.u.adjoint() * est.u;
  CHECK((gram - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("centralized_power_evd: residual to the top eigenvector shrinks every iteration") {
  Engine rng(24);
  const ComplexMatrix x = samples_with_spectrum(10, 40, {4.0, 2.0, 1.0}, rng);
  const auto oracle = hermitian_evd_oracle(sample_covariance(x));
  PowerConfig cfg;
  cfg.power_iters = 60;
  cfg.num_components = 1;
  PowerTrace trace;
  centralized_power_evd(x, cfg, 9, &trace);
  REQUIRE(trace.iterates.size() == 1);
  REQUIRE(trace.iterates[0].size() == 60);
  const ComplexVector top = oracle.vectors.col(0);
  double previous = 2.0;
  for (const ComplexVector& u : trace.iterates[0]) {
    const double residual = (u - top * top.dot(u)).norm();
    CHECK(residual <= previous * (1.0 + 1e-12) + 1e-14);
    previous = residual;
  }
  CHECK(previous <= 1e-10);
}

TEST_CASE("centralized_power_evd rejects too many components") {
  PowerConfig cfg;
  cfg.num_components = 11;
  Engine rng(1);
  CHECK_THROWS_AS(centralized_power_evd(complex_gaussian_matrix(10, 20, rng), cfg, 1), ParameterError);
}

TEST_CASE("centralized_power_svd matches the SVD oracle") {
  Engine rng(25);
  PowerConfig cfg;
  cfg.power_iters = 200;
  for (int trial = 0; trial < 10; ++trial) {
    const SampleSet x = samples_with_singular_values(10, 12, 60, {1.0, 0.6, 0.35, 0.2}, rng);
    const auto oracle = svd_oracle(sample_cross_correlation(x.s, x.r));
    const PowerEstimate est = centralized_power_svd(x, cfg, static_cast<std::uint64_t>(trial));
    const RealVector values = est.values();
    for (int h = 0; h < 3; ++h) REQUIRE(std::abs(values(h) - oracle.values(h)) <= 1e-6 * oracle.values(h));
    REQUIRE(subspace_angle(oracle.u.leftCols(3), est.u) <= 1e-6);
    REQUIRE(subspace_angle(oracle.v.leftCols(3), est.v) <= 1e-6);
    REQUIRE((est.sigma_v.real().colwise().mean().transpose() - values).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("centralized_power_svd: rank-1 shared source aligns with the channel") {
  SignalModelConfig sig;
  sig.s_sources = 1;
  sig.r_sources = 1;
  sig.shared_sources = true;
  sig.noise_scale = 0.0;
  sig.snapshots = 100;
  sig.seed = 17;
  const SampleSet x = generate_passive_radar(sig);
  // Noiseless rank-1 data: the sample column space is the channel direction.
  const ComplexVector h_s = svd_oracle(x.s).u.col(0);
  PowerConfig cfg;
  cfg.num_components = 1;
  cfg.power_iters = 200;
  const PowerEstimate est = centralized_power_svd(x, cfg, 2);
  CHECK(std::abs(est.u.col(0).dot(h_s)) >= 1.0 - 1e-8);
}

TEST_CASE("centralized_power_svd rejects H above min(|S|,|R|)") {
  SignalModelConfig sig;
  sig.snapshots = 20;
  const SampleSet x = generate_passive_radar(sig);
  PowerConfig cfg;
  cfg.num_components = 11;
  CHECK_THROWS_AS(centralized_power_svd(x, cfg, 1), ParameterError);
}
