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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gpsvd/errors.hpp"
#include "gpsvd/types.hpp"

/**
 * Dense decomposition oracles used as ground truth by the rest of the library.
 *
 * Both factorizations are cyclic Jacobi methods written against Eigen dense
 * types and templated on the scalar (real or complex). Matrices here are small
 * (a few dozen rows at most), so every sweep is a plain O(n^3) pass.
 */
namespace gpsvd {

template <typename Scalar>
struct HermitianEigen {
  RealVector values;             ///< descending
  DenseMatrix<Scalar> vectors;   ///< unitary, column k pairs with values(k)
};

template <typename Scalar>
struct SingularValueDecomposition {
  DenseMatrix<Scalar> u;  ///< rows x min(rows, cols), orthonormal columns
  RealVector values;      ///< descending, nonnegative
  DenseMatrix<Scalar> v;  ///< cols x min(rows, cols), orthonormal columns
};

namespace detail {

/// Unitary 2x2 rotation acting on coordinates (p, q):
///   [ c        s     ]
///   [ -s*d     c*d   ]
/// chosen so that G^H [[a_pp, a_pq], [conj(a_pq), a_qq]] G is diagonal.
template <typename Scalar>
struct PlaneRotation {
  double c = 1.0;
  double s = 0.0;
  Scalar d = Scalar(1);
};

template <typename Scalar>
PlaneRotation<Scalar> hermitian_rotation(double app, double aqq, const Scalar& apq) {
  const double mag = std::abs(apq);
  PlaneRotation<Scalar> g;
  g.d = Eigen::numext::conj(apq / mag);
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  g.c = 1.0 / std::sqrt(t * t + 1.0);
  g.s = t * g.c;
  return g;
}

/// M <- M * G on columns p, q.
template <typename Derived, typename Scalar>
void rotate_columns(Eigen::MatrixBase<Derived>& m, Eigen::Index p, Eigen::Index q,
                    const PlaneRotation<Scalar>& g) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const Scalar mp = m(r, p);
    const Scalar mq = m(r, q);
    m(r, p) = g.c * mp - g.s * g.d * mq;
    m(r, q) = g.s * mp + g.c * g.d * mq;
  }
}

/// M <- G^H * M on rows p, q.
template <typename Derived, typename Scalar>
void rotate_rows(Eigen::MatrixBase<Derived>& m, Eigen::Index p, Eigen::Index q,
                 const PlaneRotation<Scalar>& g) {
  const Scalar dc = Eigen::numext::conj(g.d);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    const Scalar mp = m(p, col);
    const Scalar mq = m(q, col);
    m(p, col) = g.c * mp - g.s * dc * mq;
    m(q, col) = g.s * mp + g.c * dc * mq;
  }
}

/// Rotate column k so its largest-magnitude entry is real positive.
/// Returns the unit phase that was applied.
template <typename Derived>
typename Derived::Scalar canonical_phase(Eigen::MatrixBase<Derived>& m, Eigen::Index k) {
  using Scalar = typename Derived::Scalar;
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mag = std::abs(m(r, k));
    if (mag > best) {
      best = mag;
      arg = r;
    }
  }
  if (best <= 0.0) return Scalar(1);
  const Scalar phase = Eigen::numext::conj(m(arg, k)) / best;
  m.col(k) *= phase;
  return phase;
}

inline std::vector<Eigen::Index> descending_order(const RealVector& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  return order;
}

constexpr int kMaxSweeps = 100;

}  // namespace detail

/// Eigen-decomposition of a Hermitian (real symmetric) matrix by cyclic Jacobi.
/// Eigenvalues descending; each eigenvector column has its largest-magnitude
/// entry rotated onto the positive real axis.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> hermitian_evd_oracle(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Eigen::numext::real;
  if (m.rows() != m.cols()) throw ParameterError("hermitian_evd_oracle: matrix is not square");
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale)
    throw ParameterError("hermitian_evd_oracle: matrix is not Hermitian");

  DenseMatrix<Scalar> a = (m + m.adjoint()) / 2.0;
  DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();

  for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const double mag = std::abs(apq);
        const double app = real(a(p, p));
        const double aqq = real(a(q, q));
        if (mag <= tiny || mag <= eps * std::sqrt(std::abs(app) * std::abs(aqq))) {
          a(p, q) = Scalar(0);
          a(q, p) = Scalar(0);
          continue;
        }
        const auto g = detail::hermitian_rotation(app, aqq, apq);
        detail::rotate_columns(a, p, q, g);
        detail::rotate_rows(a, p, q, g);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(real(a(p, p)));
        a(q, q) = Scalar(real(a(q, q)));
        detail::rotate_columns(v, p, q, g);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  RealVector diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag(i) = real(a(i, i));
  const auto order = detail::descending_order(diag);
  HermitianEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = diag(order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    detail::canonical_phase(out.vectors, k);
  }
  return out;
}

/// Thin SVD by one-sided (Hestenes) Jacobi. Columns of V follow the same
/// phase convention as hermitian_evd_oracle; U columns carry the matching phase.
template <typename Derived>
SingularValueDecomposition<typename Derived::Scalar> svd_oracle(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const bool wide = m.rows() < m.cols();
  DenseMatrix<Scalar> a = wide ? DenseMatrix<Scalar>(m.adjoint()) : DenseMatrix<Scalar>(m);
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  DenseMatrix<Scalar> w = DenseMatrix<Scalar>::Identity(cols, cols);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();

  for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < cols; ++p) {
      for (Eigen::Index q = p + 1; q < cols; ++q) {
        const double alpha = a.col(p).squaredNorm();
        const double beta = a.col(q).squaredNorm();
        const Scalar gamma = a.col(p).dot(a.col(q));
        const double mag = std::abs(gamma);
        if (mag <= tiny || mag <= eps * std::sqrt(alpha * beta)) continue;
        const auto g = detail::hermitian_rotation(alpha, beta, gamma);
        detail::rotate_columns(a, p, q, g);
        detail::rotate_columns(w, p, q, g);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  RealVector norms(cols);
  for (Eigen::Index k = 0; k < cols; ++k) norms(k) = a.col(k).norm();
  const auto order = detail::descending_order(norms);
  const double top = cols > 0 ? norms(order.front()) : 0.0;
  const double cutoff = std::max(tiny, static_cast<double>(rows) * eps * top);

  DenseMatrix<Scalar> left(rows, cols);
  DenseMatrix<Scalar> right(cols, cols);
  RealVector values(cols);
  std::vector<Eigen::Index> deficient;
  for (Eigen::Index k = 0; k < cols; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    values(k) = norms(src);
    right.col(k) = w.col(src);
    if (values(k) > cutoff) {
      left.col(k) = a.col(src) / values(k);
    } else {
      deficient.push_back(k);
    }
  }
  // Rank-deficient columns: complete U with Gram-Schmidt over the unit basis.
  Eigen::Index basis = 0;
  for (const Eigen::Index k : deficient) {
    for (; basis < rows; ++basis) {
      DenseVector<Scalar> cand = DenseVector<Scalar>::Unit(rows, basis);
      for (int pass = 0; pass < 2; ++pass) {
        // Deficient indices are ascending, so every j < k is already filled.
        for (Eigen::Index j = 0; j < cols; ++j) {
          const bool pending =
              j >= k && std::find(deficient.begin(), deficient.end(), j) != deficient.end();
          if (!pending) cand -= left.col(j).dot(cand) * left.col(j);
        }
      }
      const double nrm = cand.norm();
      if (nrm > 0.5) {
        left.col(k) = cand / nrm;
        ++basis;
        break;
      }
    }
  }

  SingularValueDecomposition<Scalar> out;
  out.values = values;
  if (wide) {
    out.u = std::move(right);
    out.v = std::move(left);
  } else {
    out.u = std::move(left);
    out.v = std::move(right);
  }
  for (Eigen::Index k = 0; k < out.values.size(); ++k) {
    const Scalar phase = detail::canonical_phase(out.v, k);
    out.u.col(k) *= phase;
  }
  return out;
}

/// a^H b.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& a,
                                const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw ParameterError("inner: length mismatch");
  return a.dot(b);
}

}  // namespace gpsvd
