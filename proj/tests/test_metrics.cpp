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
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "gpsvd/errors.hpp"
#include "gpsvd/metrics.hpp"

using namespace gpsvd;

TEST_CASE("nmse_evd examples") {
  RealVector t(2);
  t << 2.0, 1.0;
  RealVector e(2);
  e << 2.0, 0.0;
  CHECK(nmse_evd(t, t) == 0.0);
  CHECK(nmse_evd(t, e) == 0.2);
  CHECK(nmse_evd(t, RealVector::Zero(2)) == 1.0);
  CHECK_THROWS_AS(nmse_evd(RealVector::Zero(2), e), ParameterError);
  CHECK_THROWS_AS(nmse_evd(t, RealVector::Zero(3)), ParameterError);
}

TEST_CASE("nmse_svd: identity, global phase and sign") {
  Engine rng(41);
  const ComplexMatrix u = gpsvd::testing::random_orthonormal(10, 3, rng);
  const ComplexMatrix v = gpsvd::testing::random_orthonormal(12, 3, rng);
  CHECK(nmse_svd(u, v, u, v) == 0.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix ru = u;
    ComplexMatrix rv = v;
    for (Eigen::Index k = 0; k < 3; ++k) {
      ru.col(k) *= std::polar(1.0, angle(rng));
      rv.col(k) *= std::polar(1.0, angle(rng));
    }
    REQUIRE(nmse_svd(u, v, ru, rv) <= 1e-12);
  }
  // A bare sign flip costs 2 per component without alignment.
  const ComplexMatrix flipped = -u.col(0);
  CHECK((flipped - u.col(0)).squaredNorm() == doctest::Approx(4.0));
  CHECK(nmse_svd(u.col(0), v.col(0), flipped, -v.col(0)) <= 1e-24);
  CHECK_THROWS_AS(nmse_svd(u, v, u.leftCols(2), v), ParameterError);
}

TEST_CASE("nmse_svd: an orthogonal estimate scores 2 per component") {
  const ComplexMatrix e0 = ComplexMatrix::Identity(3, 3).col(0);
  const ComplexMatrix e1 = ComplexMatrix::Identity(3, 3).col(1);
  CHECK(nmse_svd(e0, e0, e1, e1) == doctest::Approx(2.0));
}

TEST_CASE("align_phases leaves zero-overlap columns unchanged") {
  ComplexMatrix a(2, 1);
  a << Complex(0, 1), 0.0;
  ComplexMatrix b(2, 1);
  b << 0.0, 1.0;
  CHECK(align_phases(a, b) == a);
  CHECK(std::abs(align_phases(a, a * Complex(0, -1))(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("predicted_handshakes examples") {
  CHECK(predicted_handshakes(Task::kEvd, Algorithm::kSequential, 3, 40, 40, 20) == 2520);
  CHECK(predicted_handshakes(Task::kEvd, Algorithm::kParallel, 3, 40, 40, 20) == 840);
  CHECK(predicted_handshakes(Task::kSvd, Algorithm::kParallel, 2, 40, 50, 10) == 990);
  CHECK(predicted_handshakes(Task::kSvd, Algorithm::kSequential, 2, 40, 50, 10) == 1980);
  CHECK(predicted_handshakes(Task::kEvd, Algorithm::kCentralized, 3, 40, 40, 20) == 0);
  CHECK_THROWS_AS(predicted_handshakes(Task::kEvd, Algorithm::kParallel, 0, 40, 40, 20), ParameterError);
}

TEST_CASE("task and algorithm names round trip") {
  for (Task t : {Task::kEvd, Task::kSvd}) CHECK(parse_task(to_string(t)) == t);
  for (Algorithm a : {Algorithm::kCentralized, Algorithm::kSequential, Algorithm::kParallel})
    CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS_AS(parse_task("pca"), ParameterError);
  CHECK_THROWS_AS(parse_algorithm("fast"), ParameterError);
}
