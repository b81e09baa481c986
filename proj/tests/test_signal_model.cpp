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
#include <sstream>

#include "doctest.h"
#include "gpsvd/errors.hpp"
#include "gpsvd/linalg.hpp"
#include "gpsvd/rng.hpp"
#include "gpsvd/signal_model.hpp"

using namespace gpsvd;

TEST_CASE("generate_passive_radar: shapes and byte-identical reruns") {
  SignalModelConfig cfg;
  cfg.seed = 42;
  const SampleSet a = generate_passive_radar(cfg);
  const SampleSet b = generate_passive_radar(cfg);
  CHECK(a.s.rows() == 10);
  CHECK(a.r.rows() == 12);
  CHECK(a.snapshots() == 500);
  CHECK(a.r.cols() == 500);
  CHECK(a.s == b.s);
  CHECK(a.r == b.r);
  cfg.seed = 43;
  CHECK(generate_passive_radar(cfg).s != a.s);
}

TEST_CASE("generate_passive_radar: zero source power leaves unit complex noise") {
  SignalModelConfig cfg;
  cfg.source_power_s = 0.0;
  cfg.snapshots = 20000;
  cfg.seed = 5;
  const SampleSet x = generate_passive_radar(cfg);
  const ComplexMatrix cov = sample_covariance(x.s);
  const double dev = (cov - ComplexMatrix::Identity(10, 10)).cwiseAbs().maxCoeff();
  CHECK(dev < 5.0 / std::sqrt(20000.0));
}

TEST_CASE("generate_passive_radar: noiseless data has the source rank") {
  SignalModelConfig cfg;
  cfg.s_sources = 2;
  cfg.r_sources = 3;
  cfg.noise_scale = 0.0;
  cfg.seed = 9;
  const SampleSet x = generate_passive_radar(cfg);
  const auto ds = svd_oracle(x.s);
  CHECK(ds.values(1) > 1e-3);
  CHECK(ds.values(2) < 1e-10 * ds.values(0));
  const auto dr = svd_oracle(x.r);
  CHECK(dr.values(2) > 1e-3);
  CHECK(dr.values(3) < 1e-10 * dr.values(0));
}

TEST_CASE("generate_passive_radar: shared sources correlate the two sets") {
  SignalModelConfig cfg;
  cfg.s_sources = 2;
  cfg.r_sources = 2;
  cfg.shared_sources = true;
  cfg.noise_scale = 0.0;
  cfg.seed = 3;
  const SampleSet x = generate_passive_radar(cfg);
  const auto d = svd_oracle(sample_cross_correlation(x.s, x.r));
  CHECK(d.values(1) > 1e-3);
  CHECK(d.values(2) < 1e-10 * d.values(0));
}

TEST_CASE("SignalModelConfig validation") {
  SignalModelConfig cfg;
  cfg.snapshots = 0;
  CHECK_THROWS_AS(generate_passive_radar(cfg), ParameterError);
  cfg = {};
  cfg.source_power_s = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.s_nodes = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.s_sources = 20;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("sample_covariance: examples and PSD property") {
  ComplexMatrix e(2, 1);
  e << 1.0, 0.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(sample_covariance(e) == expected);

  Engine rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix x = complex_gaussian_matrix(8, 3 + trial, rng);
    const ComplexMatrix c = sample_covariance(x);
    REQUIRE((c - c.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    const auto evd = hermitian_evd_oracle(c);
    REQUIRE(evd.values.minCoeff() >= -1e-12);
  }
}

TEST_CASE("sample_cross_correlation: special case, decorrelation and errors") {
  Engine rng(12);
  const ComplexMatrix s = complex_gaussian_matrix(5, 40, rng);
  CHECK((sample_cross_correlation(s, s) - sample_covariance(s)).cwiseAbs().maxCoeff() <= 1e-15);

  const int t = 20000;
  const ComplexMatrix a = complex_gaussian_matrix(4, t, rng);
  const ComplexMatrix b = complex_gaussian_matrix(6, t, rng);
  const ComplexMatrix r = sample_cross_correlation(a, b);
  CHECK(r.rows() == 4);
  CHECK(r.cols() == 6);
  CHECK(r.cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(static_cast<double>(t)));
  CHECK((sample_cross_correlation(b, a) - r.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK_THROWS_AS(sample_cross_correlation(a, complex_gaussian_matrix(6, t - 1, rng)),
                  ParameterError);
}

TEST_CASE("sample dump binary round trip") {
  Engine rng(13);
  const ComplexMatrix m = complex_gaussian_matrix(7, 9, rng);
  std::stringstream ss;
  write_sample_matrix(ss, m);
  CHECK(ss.str().size() == 16 + 7 * 9 * 16);
  CHECK(read_sample_matrix(ss) == m);
  std::istringstream truncated(ss.str().substr(0, 40));
  CHECK_THROWS_AS(read_sample_matrix(truncated), IoError);
}
