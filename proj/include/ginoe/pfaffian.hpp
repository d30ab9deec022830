// Copyright 2026 The ginoe-clt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pfaffians of complex skew-symmetric matrices and the k-point correlation
// functions of the real Ginibre complex eigenvalues built from them.

#ifndef GINOE_PFAFFIAN_HPP
#define GINOE_PFAFFIAN_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ginoe/errors.hpp"
#include "ginoe/kernel.hpp"

namespace ginoe {

using CMatrix = Eigen::MatrixXcd;

class SkewMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit SkewMatrix(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("skew matrix must be square");
    if (m_.rows() == 0 || m_.rows() % 2 != 0) {
      throw DimensionError("Pfaffian needs an even positive dimension, got " + std::to_string(m_.rows()));
    }
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      for (Eigen::Index j = i; j < m_.cols(); ++j) {
        if (std::abs(m_(i, j) + m_(j, i)) > kTolerance) {
          throw ValidationError("matrix is not skew-symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
        }
      }
    }
  }

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  CMatrix m_;
};

namespace detail {

inline cplx matchings_sum(const CMatrix& m, std::vector<Eigen::Index>& idx) {
  if (idx.empty()) return {1.0, 0.0};
  const Eigen::Index first = idx.front();
  cplx total(0.0, 0.0);
  // Pair `first` with each remaining index; the sign is the parity of the
  // partner's position in the remaining list.
  for (std::size_t p = 1; p < idx.size(); ++p) {
    const cplx a = m(first, idx[p]);
    if (a == cplx(0.0, 0.0)) continue;
    std::vector<Eigen::Index> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t q = 1; q < idx.size(); ++q) {
      if (q != p) rest.push_back(idx[q]);
    }
    const double sign = (p % 2 == 1) ? 1.0 : -1.0;
    total += sign * a * matchings_sum(m, rest);
  }
  return total;
}

}  // namespace detail

// Signed sum over the (2n-1)!! perfect matchings.
inline cplx pfaffian_matchings(const SkewMatrix& m) {
  if (m.dim() > 16) throw RangeError("combinatorial Pfaffian limited to dimension 16");
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(m.dim()));
  for (Eigen::Index i = 0; i < m.dim(); ++i) idx[static_cast<std::size_t>(i)] = i;
  return detail::matchings_sum(m.matrix(), idx);
}

// Parlett-Reid style skew-symmetric elimination with row/column pivoting.
inline cplx pfaffian_elimination(const SkewMatrix& m, double pivot_threshold = 1e-13) {
  CMatrix a = m.matrix();
  const Eigen::Index n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return {0.0, 0.0};
  cplx pf(1.0, 0.0);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (std::abs(a(k + 1, k)) <= pivot_threshold * scale) return {0.0, 0.0};
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXcd tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const Eigen::VectorXcd col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

inline cplx pfaffian(const SkewMatrix& m) { return pfaffian_elimination(m); }

// Pf(M) = det(M~) for M with M_ij = 0 whenever i and j share parity, where
// M~_ij = M_{2i, 2j+1} (0-based).
inline cplx pfaffian_checkerboard(const SkewMatrix& m) {
  const Eigen::Index n = m.dim() / 2;
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    for (Eigen::Index j = 0; j < m.dim(); ++j) {
      if ((i - j) % 2 == 0 && std::abs(m(i, j)) > SkewMatrix::kTolerance) {
        throw StructureError("checkerboard pattern violated at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
    }
  }
  CMatrix reduced(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) reduced(i, j) = m(2 * i, 2 * j + 1);
  }
  return reduced.partialPivLu().determinant();
}

// ---------------------------------------------------------------------------
// Correlation functions

namespace detail {

inline void check_points(std::span<const cplx> points) {
  if (points.empty() || points.size() > 6) {
    throw RangeError("rho_k supports 1 <= k <= 6, got k = " + std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].imag() == 0.0) throw DomainError("rho_k: point on the real axis");
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw DegenerateInput("rho_k: coincident points");
    }
  }
}

}  // namespace detail

// 2k x 2k block matrix (K(z_i, z_j)) with blocks [[D, S(z_i,z_j)], [-S(z_j,z_i), I]].
inline SkewMatrix correlation_matrix(std::span<const cplx> points, long n, bool scaled) {
  const auto k = static_cast<Eigen::Index>(points.size());
  CMatrix m = CMatrix::Zero(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const cplx zi = points[static_cast<std::size_t>(i)], zj = points[static_cast<std::size_t>(j)];
      const KernelBlock b = scaled ? kernel_block_scaled(zi, zj, n) : kernel_block(zi, zj, n);
      m(2 * i, 2 * j) = b.d;
      m(2 * i, 2 * j + 1) = b.s_fwd;
      m(2 * i + 1, 2 * j) = -b.s_rev;
      m(2 * i + 1, 2 * j + 1) = b.i;
    }
  }
  // Enforce exact antisymmetry of the assembled matrix (the diagonal blocks
  // already are; off-diagonal pairs agree up to rounding in s_N).
  for (Eigen::Index i = 0; i < 2 * k; ++i) {
    m(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) m(i, j) = -m(j, i);
  }
  return SkewMatrix(std::move(m));
}

// rho_k(z_1..z_k) = Pf K; with scaled = true returns N^k rho_k(sqrt N z_1, ...),
// the correlation function of the eigenvalues of G / sqrt(N).
inline double rho_k(std::span<const cplx> points, long n, bool scaled) {
  detail::check_points(points);
  const cplx pf = pfaffian(correlation_matrix(points, n, scaled));
  if (std::abs(pf.imag()) > 1e-8 * std::abs(pf) + 1e-300) {
    throw AccuracyError("rho_k: Pfaffian has a non-negligible imaginary part");
  }
  const double factor = scaled ? std::pow(static_cast<double>(n), static_cast<double>(points.size())) : 1.0;
  return factor * pf.real();
}

// N^k det (S_N(sqrt N z_i, sqrt N z_j)): the D/I-free approximation of rho_k.
inline cplx rho_k_determinantal(std::span<const cplx> points, long n) {
  detail::check_points(points);
  const auto k = static_cast<Eigen::Index>(points.size());
  CMatrix q(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      q(i, j) = s_kernel_scaled(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)], n);
    }
  }
  return std::pow(static_cast<double>(n), static_cast<double>(k)) * q.partialPivLu().determinant();
}

}  // namespace ginoe

#endif  // GINOE_PFAFFIAN_HPP
