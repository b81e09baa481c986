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

#include "gpsvd/metrics.hpp"

#include <cmath>

#include "gpsvd/errors.hpp"

namespace gpsvd {

std::string to_string(Task task) { return task == Task::kEvd ? "evd" : "svd"; }

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCentralized:
      return "centralized";
    case Algorithm::kSequential:
      return "sequential";
    case Algorithm::kParallel:
      return "parallel";
  }
  return "unknown";
}

Task parse_task(const std::string& text) {
  if (text == "evd") return Task::kEvd;
  if (text == "svd") return Task::kSvd;
  throw ParameterError("unknown task '" + text + "' (expected evd or svd)");
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "centralized") return Algorithm::kCentralized;
  if (text == "sequential") return Algorithm::kSequential;
  if (text == "parallel") return Algorithm::kParallel;
  throw ParameterError("unknown algorithm '" + text + "' (expected centralized, sequential or parallel)");
}

double nmse_evd(const RealVector& true_eigs, const RealVector& est_eigs) {
  if (true_eigs.size() != est_eigs.size() || true_eigs.size() < 1)
    throw ParameterError("nmse_evd: eigenvalue lists must be nonempty and of equal length");
  const double denom = true_eigs.squaredNorm();
  if (!(denom > 0.0)) throw ParameterError("nmse_evd: true spectrum has zero norm");
  return (true_eigs - est_eigs).squaredNorm() / denom;
}

ComplexMatrix align_phases(const ComplexMatrix& estimate, const ComplexMatrix& reference) {
  ComplexMatrix out = estimate;
  for (Eigen::Index k = 0; k < out.cols(); ++k) {
    const Complex overlap = estimate.col(k).dot(reference.col(k));
    const double mag = std::abs(overlap);
    if (mag > 0.0) out.col(k) *= overlap / mag;
  }
  return out;
}

double nmse_svd(const ComplexMatrix& true_u, const ComplexMatrix& true_v,
                const ComplexMatrix& est_u, const ComplexMatrix& est_v) {
  if (true_u.rows() != est_u.rows() || true_u.cols() != est_u.cols() ||
      true_v.rows() != est_v.rows() || true_v.cols() != est_v.cols() ||
      true_u.cols() != true_v.cols())
    throw ParameterError("nmse_svd: dimension mismatch");
  const ComplexMatrix au = align_phases(est_u, true_u);
  const ComplexMatrix av = align_phases(est_v, true_v);
  double total = 0.0;
  for (Eigen::Index k = 0; k < true_u.cols(); ++k) {
    total += (au.col(k) - true_u.col(k)).squaredNorm() / true_u.col(k).squaredNorm();
    total += (av.col(k) - true_v.col(k)).squaredNorm() / true_v.col(k).squaredNorm();
  }
  return 0.5 * total;
}

std::uint64_t predicted_handshakes(Task task, Algorithm algorithm, int components, int rounds_s,
                                   int rounds_r, int power_iters) {
  if (components < 1 || rounds_s < 0 || rounds_r < 0 || power_iters < 0)
    throw ParameterError("predicted_handshakes: arguments must be positive");
  if (algorithm == Algorithm::kCentralized) return 0;
  const std::uint64_t per_iter = task == Task::kEvd
                                     ? static_cast<std::uint64_t>(rounds_s)
                                     : static_cast<std::uint64_t>(rounds_s) + static_cast<std::uint64_t>(rounds_r);
  const std::uint64_t sessions = static_cast<std::uint64_t>(power_iters) + 1;
  const std::uint64_t h = algorithm == Algorithm::kSequential ? static_cast<std::uint64_t>(components) : 1;
  return h * per_iter * sessions;
}

}  // namespace gpsvd
