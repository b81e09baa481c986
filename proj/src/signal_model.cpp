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

#include "gpsvd/signal_model.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "gpsvd/errors.hpp"
#include "gpsvd/rng.hpp"

namespace gpsvd {

void SignalModelConfig::validate() const {
  if (s_nodes < 1 || r_nodes < 1) throw ParameterError("signal: node counts must be positive");
  if (s_sources < 1 || r_sources < 1) throw ParameterError("signal: source counts must be positive");
  if (snapshots < 1) throw ParameterError("signal: snapshots must be positive");
  if (!(source_power_s >= 0.0) || !(source_power_r >= 0.0))
    throw ParameterError("signal: source powers must be nonnegative");
  if (!(noise_scale >= 0.0)) throw ParameterError("signal: noise_scale must be nonnegative");
  if (shared_sources && s_sources != r_sources)
    throw ParameterError("signal: shared_sources requires s_sources == r_sources");
}

SampleSet generate_passive_radar(const SignalModelConfig& cfg) {
  cfg.validate();
  Engine channel_rng(derive_seed(cfg.seed, 0));
  Engine source_rng(derive_seed(cfg.seed, 1));
  Engine noise_rng(derive_seed(cfg.seed, 2));

  const ComplexMatrix hs = complex_gaussian_matrix(cfg.s_nodes, cfg.s_sources, channel_rng);
  const ComplexMatrix hr = complex_gaussian_matrix(cfg.r_nodes, cfg.r_sources, channel_rng);

  // Unit-power sources, scaled per set so sharing keeps both powers honest.
  const ComplexMatrix theta_s = complex_gaussian_matrix(cfg.s_sources, cfg.snapshots, source_rng);
  const ComplexMatrix theta_r = cfg.shared_sources
                                    ? theta_s
                                    : complex_gaussian_matrix(cfg.r_sources, cfg.snapshots, source_rng);

  const ComplexMatrix ws = complex_gaussian_matrix(cfg.s_nodes, cfg.snapshots, noise_rng);
  const ComplexMatrix wr = complex_gaussian_matrix(cfg.r_nodes, cfg.snapshots, noise_rng);

  SampleSet out;
  out.s = std::sqrt(cfg.source_power_s) * (hs * theta_s) + cfg.noise_scale * ws;
  out.r = std::sqrt(cfg.source_power_r) * (hr * theta_r) + cfg.noise_scale * wr;
  return out;
}

ComplexMatrix sample_covariance(const ComplexMatrix& x) {
  if (x.cols() < 1) throw ParameterError("sample_covariance: need at least one snapshot");
  ComplexMatrix c = (x * x.adjoint()) / static_cast<double>(x.cols());
  // Force exact Hermitian symmetry.
  return (c + c.adjoint()) / 2.0;
}

ComplexMatrix sample_cross_correlation(const ComplexMatrix& s, const ComplexMatrix& r) {
  if (s.cols() != r.cols()) throw ParameterError("sample_cross_correlation: snapshot counts differ");
  if (s.cols() < 1) throw ParameterError("sample_cross_correlation: need at least one snapshot");
  return (s * r.adjoint()) / static_cast<double>(s.cols());
}

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  os.write(buf, 8);
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw IoError("read_sample_matrix: truncated input");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_sample_matrix(std::ostream& os, const ComplexMatrix& m) {
  put_le<std::int64_t>(os, static_cast<std::int64_t>(m.rows()));
  put_le<std::int64_t>(os, static_cast<std::int64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put_le<double>(os, m(i, j).real());
      put_le<double>(os, m(i, j).imag());
    }
  }
  if (!os) throw IoError("write_sample_matrix: write failed");
}

ComplexMatrix read_sample_matrix(std::istream& is) {
  const auto rows = get_le<std::int64_t>(is);
  const auto cols = get_le<std::int64_t>(is);
  if (rows < 0 || cols < 0) throw IoError("read_sample_matrix: negative dimensions");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = get_le<double>(is);
      const double im = get_le<double>(is);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace gpsvd
