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
#include <string>

#include "gpsvd/types.hpp"

namespace gpsvd {

enum class Task { kEvd, kSvd };
enum class Algorithm { kCentralized, kSequential, kParallel };

std::string to_string(Task task);
std::string to_string(Algorithm algorithm);
Task parse_task(const std::string& text);
Algorithm parse_algorithm(const std::string& text);

/// sum |true - est|^2 / sum true^2.
double nmse_evd(const RealVector& true_eigs, const RealVector& est_eigs);

/// Each estimated column multiplied by the unit phase of <est, true>.
ComplexMatrix align_phases(const ComplexMatrix& estimate, const ComplexMatrix& reference);

/// (1/2) sum_i ||u_est - u_true||^2/||u_true||^2 + ||v_est - v_true||^2/||v_true||^2,
/// after per-column phase alignment.
double nmse_svd(const ComplexMatrix& true_u, const ComplexMatrix& true_v,
                const ComplexMatrix& est_u, const ComplexMatrix& est_v);

/// Gossip rounds each distributed algorithm needs:
///   sequential EVD  H K (l*+1)        parallel EVD  K (l*+1)
///   sequential SVD  H (K1+K2)(l*+1)   parallel SVD  (K1+K2)(l*+1)
/// EVD uses rounds_s as K. Centralized runs cost nothing.
std::uint64_t predicted_handshakes(Task task, Algorithm algorithm, int components, int rounds_s,
                                   int rounds_r, int power_iters);

}  // namespace gpsvd
