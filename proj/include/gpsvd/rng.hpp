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
#include <cstdint>
#include <random>

#include "gpsvd/types.hpp"

namespace gpsvd {

using Engine = std::mt19937_64;

// splitmix64 finalizer; decorrelates sub-streams derived from one base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Circular complex Gaussian with E|z|^2 = variance.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double variance = 1.0)
      : scale_(std::sqrt(variance / 2.0)) {}

  Complex operator()(Engine& engine) {
    const double re = normal_(engine);
    const double im = normal_(engine);
    return {scale_ * re, scale_ * im};
  }

 private:
  double scale_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                             Engine& engine, double variance = 1.0) {
  ComplexGaussian draw(variance);
  ComplexMatrix m(rows, cols);
  // Row-major fill keeps draws node-ordered.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = draw(engine);
  return m;
}

}  // namespace gpsvd
