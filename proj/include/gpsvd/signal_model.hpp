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

#include "gpsvd/types.hpp"

namespace gpsvd {

/// Passive-radar style data: s(t) = H_s theta_s(t) + w_s(t), same for r(t).
struct SignalModelConfig {
  int s_nodes = 10;
  int r_nodes = 12;
  int s_sources = 10;
  int r_sources = 10;
  double source_power_s = 1.0;
  double source_power_r = 1.0;
  int snapshots = 500;
  std::uint64_t seed = 0;
  /// theta_r(t) = theta_s(t); requires s_sources == r_sources. Without it the
  /// two sets are independent and R_sr vanishes as T grows.
  bool shared_sources = false;
  /// Noise standard deviation multiplier; 0 gives noiseless data.
  double noise_scale = 1.0;

  void validate() const;
};

/// Row i holds node i's series over T snapshots.
struct SampleSet {
  ComplexMatrix s;
  ComplexMatrix r;

  Eigen::Index snapshots() const { return s.cols(); }
};

SampleSet generate_passive_radar(const SignalModelConfig& cfg);

/// (1/T) sum_t x(t) x(t)^H.
ComplexMatrix sample_covariance(const ComplexMatrix& x);

/// (1/T) sum_t s(t) r(t)^H.
ComplexMatrix sample_cross_correlation(const ComplexMatrix& s, const ComplexMatrix& r);

/// Little-endian dump: int64 rows, int64 cols, then row-major interleaved
/// (re, im) float64 pairs.
void write_sample_matrix(std::ostream& os, const ComplexMatrix& m);
ComplexMatrix read_sample_matrix(std::istream& is);

}  // namespace gpsvd
