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

#include "gpsvd/power_centralized.hpp"

#include <algorithm>
#include <cmath>

#include "gpsvd/errors.hpp"
#include "gpsvd/rng.hpp"

namespace gpsvd {

void PowerConfig::validate() const {
  if (!(shift > 0.0 && shift < 1.0)) throw ParameterError("power: shift must lie in (0,1)");
  if (power_iters < 1) throw ParameterError("power: power_iters must be >= 1");
  if (num_components < 1) throw ParameterError("power: num_components must be >= 1");
}

ComplexMatrix initial_iterates(int node_count, int components, std::uint64_t seed, NodeSet set) {
  const std::uint64_t set_seed = derive_seed(seed, set == NodeSet::kS ? 0x5 : 0x7);
  ComplexMatrix out(node_count, components);
  ComplexGaussian draw;
  for (int i = 0; i < node_count; ++i) {
    Engine node_rng(derive_seed(set_seed, static_cast<std::uint64_t>(i)));
    for (int h = 0; h < components; ++h) out(i, h) = draw(node_rng);
  }
  return out;
}

RealVector PowerEstimate::values() const {
  return sigma_u.real().colwise().mean().transpose();
}

PowerEstimate centralized_power_svd(const SampleSet& samples, const PowerConfig& cfg,
                                    std::uint64_t seed, PowerTrace* trace) {
  cfg.validate();
  const auto ns = samples.s.rows();
  const auto nr = samples.r.rows();
  const int comps = cfg.num_components;
  if (comps > std::min(ns, nr)) throw ParameterError("centralized_power_svd: H exceeds min(|S|,|R|)");
  const ComplexMatrix corr = (samples.s * samples.r.adjoint()) / static_cast<double>(samples.snapshots());
  const ComplexMatrix u0 = initial_iterates(static_cast<int>(ns), comps, seed, NodeSet::kS);
  const ComplexMatrix v0 = initial_iterates(static_cast<int>(nr), comps, seed, NodeSet::kR);

  PowerEstimate est;
  est.u = ComplexMatrix::Zero(ns, comps);
  est.v = ComplexMatrix::Zero(nr, comps);
  est.sigma_u = ComplexMatrix::Zero(ns, comps);
  est.sigma_v = ComplexMatrix::Zero(nr, comps);
  if (trace) trace->iterates.assign(static_cast<std::size_t>(comps), {});

  for (int h = 0; h < comps; ++h) {
    ComplexVector u = u0.col(h);
    ComplexVector v = v0.col(h);
    for (int it = 0; it < cfg.power_iters; ++it) {
      ComplexVector un = corr * v + cfg.shift * u;
      ComplexVector vn = corr.adjoint() * u + cfg.shift * v;
      for (int m = 0; m < h; ++m) {
        un -= (est.sigma_u.col(m).real().cast<Complex>().cwiseProduct(est.u.col(m))) *
              est.v.col(m).dot(v);
        vn -= (est.sigma_v.col(m).real().cast<Complex>().cwiseProduct(est.v.col(m))) *
              est.u.col(m).dot(u);
      }
      const double scale = std::max(un.norm(), vn.norm());
      if (!(scale > 0.0) || !std::isfinite(scale))
        throw NumericError("centralized_power_svd: iterate vanished or overflowed");
      u = un / scale;
      v = vn / scale;
      if (trace) trace->iterates[static_cast<std::size_t>(h)].push_back(u.normalized());
    }
    est.u.col(h) = u.normalized();
    est.v.col(h) = v.normalized();
    est.sigma_u.col(h) = (corr * est.v.col(h)).cwiseQuotient(est.u.col(h));
    est.sigma_v.col(h) = (corr.adjoint() * est.u.col(h)).cwiseQuotient(est.v.col(h));
  }
  return est;
}

PowerEstimate centralized_power_evd(const ComplexMatrix& samples, const PowerConfig& cfg,
                                    std::uint64_t seed, PowerTrace* trace) {
  cfg.validate();
  const auto n = samples.rows();
  const int comps = cfg.num_components;
  if (comps > n) throw ParameterError("centralized_power_evd: H exceeds node count");
  const ComplexMatrix cov = (samples * samples.adjoint()) / static_cast<double>(samples.cols());
  const ComplexMatrix u0 = initial_iterates(static_cast<int>(n), comps, seed, NodeSet::kS);

  PowerEstimate est;
  est.u = ComplexMatrix::Zero(n, comps);
  est.sigma_u = ComplexMatrix::Zero(n, comps);
  if (trace) trace->iterates.assign(static_cast<std::size_t>(comps), {});

  for (int h = 0; h < comps; ++h) {
    ComplexVector u = u0.col(h);
    for (int it = 0; it < cfg.power_iters; ++it) {
      ComplexVector un = cov * u + cfg.shift * u;
      for (int m = 0; m < h; ++m) {
        un -= (est.sigma_u.col(m).real().cast<Complex>().cwiseProduct(est.u.col(m))) *
              est.u.col(m).dot(u);
      }
      const double scale = un.norm();
      if (!(scale > 0.0) || !std::isfinite(scale))
        throw NumericError("centralized_power_evd: iterate vanished or overflowed");
      u = un / scale;
      if (trace) trace->iterates[static_cast<std::size_t>(h)].push_back(u);
    }
    est.u.col(h) = u.normalized();
    est.sigma_u.col(h) = (cov * est.u.col(h)).cwiseQuotient(est.u.col(h));
  }
  return est;
}

}  // namespace gpsvd
