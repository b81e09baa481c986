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

#include <cmath>
#include <vector>

#include "gpsvd/linalg.hpp"
#include "gpsvd/rng.hpp"
#include "gpsvd/signal_model.hpp"

namespace gpsvd::testing {

/// Random n x k matrix with orthonormal columns.
inline ComplexMatrix random_orthonormal(Eigen::Index n, Eigen::Index k, Engine& rng) {
  return svd_oracle(complex_gaussian_matrix(n, k, rng)).u.leftCols(k);
}

/// Samples x (n x T) whose covariance x x^H / T has eigenvalues `spectrum` followed by zeros.
inline ComplexMatrix samples_with_spectrum(Eigen::Index n, Eigen::Index t, const std::vector<double>& spectrum,
                                           Engine& rng) {
  const auto k = static_cast<Eigen::Index>(spectrum.size());
  const ComplexMatrix u = random_orthonormal(n, k, rng);
  const ComplexMatrix q = random_orthonormal(t, k, rng);
  ComplexMatrix x = ComplexMatrix::Zero(n, t);
  for (Eigen::Index j = 0; j < k; ++j)
    x += std::sqrt(spectrum[static_cast<std::size_t>(j)] * static_cast<double>(t)) * u.col(j) * q.col(j).adjoint();
  return x;
}

/// Sample pair whose cross-correlation s r^H / T has singular values `spectrum` followed by zeros.
inline SampleSet samples_with_singular_values(Eigen::Index ns, Eigen::Index nr, Eigen::Index t,
                                              const std::vector<double>& spectrum, Engine& rng) {
  const auto k = static_cast<Eigen::Index>(spectrum.size());
  const ComplexMatrix us = random_orthonormal(ns, k, rng);
  const ComplexMatrix ur = random_orthonormal(nr, k, rng);
  const ComplexMatrix q = random_orthonormal(t, k, rng);
  SampleSet out{ComplexMatrix::Zero(ns, t), ComplexMatrix::Zero(nr, t)};
  for (Eigen::Index j = 0; j < k; ++j) {
    const double amp = std::sqrt(spectrum[static_cast<std::size_t>(j)] * static_cast<double>(t));
    out.s += amp * us.col(j) * q.col(j).adjoint();
    out.r += amp * ur.col(j) * q.col(j).adjoint();
  }
  return out;
}

/// Sine of the largest principal angle between the column spans of a and b (both orthonormal).
inline double subspace_angle(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix residual = b - a * (a.adjoint() * b);
  return std::min(1.0, svd_oracle(residual).values(0));
}

inline double max_relative(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

}  // namespace gpsvd::testing
