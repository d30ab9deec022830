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

// Factorial moments, moments and cumulants; pseudo-cumulants built from the
// cyclic kernel integrals R_m; the limiting CLT variance.

#ifndef GINOE_CUMULANTS_HPP
#define GINOE_CUMULANTS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ginoe/errors.hpp"
#include "ginoe/geometry.hpp"
#include "ginoe/quadrature.hpp"
#include "ginoe/rng.hpp"
#include "ginoe/specfun.hpp"

namespace ginoe {

inline constexpr int kMaxCumulantOrder = 8;

namespace detail {

inline void check_order(std::size_t n, const char* what) {
  if (n == 0 || n > static_cast<std::size_t>(kMaxCumulantOrder)) {
    throw RangeError(std::string(what) + ": order " + std::to_string(n) + " outside 1..8");
  }
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

// Raw moments m_n = sum_k S(n, k) J_k from factorial moments J_k.
inline std::vector<double> factorial_to_raw_moments(std::span<const double> j) {
  detail::check_order(j.size(), "factorial_to_raw_moments");
  std::vector<double> m(j.size(), 0.0);
  for (std::size_t n = 1; n <= j.size(); ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      m[n - 1] += stirling2_double(static_cast<int>(n), static_cast<int>(k)) * j[k - 1];
    }
  }
  return m;
}

// kappa_n = m_n - sum_{k<n} C(n-1, k-1) kappa_k m_{n-k}.
inline std::vector<double> moments_to_cumulants(std::span<const double> m) {
  detail::check_order(m.size(), "moments_to_cumulants");
  std::vector<double> kappa(m.size(), 0.0);
  for (std::size_t n = 1; n <= m.size(); ++n) {
    double v = m[n - 1];
    for (std::size_t k = 1; k < n; ++k) {
      v -= detail::binomial(static_cast<int>(n) - 1, static_cast<int>(k) - 1) * kappa[k - 1] * m[n - k - 1];
    }
    kappa[n - 1] = v;
  }
  return kappa;
}

// Inverse of moments_to_cumulants.
inline std::vector<double> cumulants_to_moments(std::span<const double> kappa) {
  detail::check_order(kappa.size(), "cumulants_to_moments");
  std::vector<double> m(kappa.size(), 0.0);
  for (std::size_t n = 1; n <= kappa.size(); ++n) {
    double v = kappa[n - 1];
    for (std::size_t k = 1; k < n; ++k) {
      v += detail::binomial(static_cast<int>(n) - 1, static_cast<int>(k) - 1) * kappa[k - 1] * m[n - k - 1];
    }
    m[n - 1] = v;
  }
  return m;
}

// kappa_n = H_n(J_1, ..., J_n).
inline std::vector<double> factorial_moments_to_cumulants(std::span<const double> j) {
  const std::vector<double> m = factorial_to_raw_moments(j);
  return moments_to_cumulants(m);
}

// kappa~_n = sum_m (-1)^{m-1} (m-1)! S(n, m) R_m.
inline std::vector<double> pseudo_cumulants_from_R(std::span<const double> r) {
  detail::check_order(r.size(), "pseudo_cumulants_from_R");
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t n = 1; n <= r.size(); ++n) {
    double s = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const double sign = (m % 2 == 1) ? 1.0 : -1.0;
      s += sign * detail::factorial(static_cast<int>(m) - 1) *
           stirling2_double(static_cast<int>(n), static_cast<int>(m)) * r[m - 1];
    }
    out[n - 1] = s;
  }
  return out;
}

// Same quantity from the literal sum over compositions n = n_1 + ... + n_m,
//   kappa~_n = sum_m ((-1)^{m-1} / m) sum n! / (n_1! ... n_m!) R_m.
inline std::vector<double> pseudo_cumulants_by_compositions(std::span<const double> r) {
  detail::check_order(r.size(), "pseudo_cumulants_by_compositions");
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t n = 1; n <= r.size(); ++n) {
    // Compositions of n correspond to subsets of the n-1 gaps.
    std::vector<double> multinomial_by_parts(n + 1, 0.0);
    const std::uint32_t subsets = 1u << (n - 1);
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      double denom = 1.0;
      int part = 1, parts = 1;
      for (std::size_t g = 0; g + 1 < n; ++g) {
        if (mask & (1u << g)) {
          denom *= detail::factorial(part);
          part = 1;
          ++parts;
        } else {
          ++part;
        }
      }
      denom *= detail::factorial(part);
      multinomial_by_parts[static_cast<std::size_t>(parts)] += detail::factorial(static_cast<int>(n)) / denom;
    }
    double s = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const double sign = (m % 2 == 1) ? 1.0 : -1.0;
      s += sign / static_cast<double>(m) * multinomial_by_parts[m] * r[m - 1];
    }
    out[n - 1] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Recursion kappa~_n = (-1)^n (n-1)! (R_1 - R_n) + sum_{j=2}^{n-1} alpha_{nj} kappa~_j

struct RecursionFit {
  int n = 0;
  std::vector<double> alpha;  // alpha_{n,2} .. alpha_{n,n-1}
  double residual = 0.0;      // max |lhs - rhs| on fresh inputs
};

namespace detail {

inline double recursion_target(std::span<const double> r, std::size_t n) {
  const std::vector<double> k = pseudo_cumulants_from_R(r.first(n));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return k[n - 1] - sign * factorial(static_cast<int>(n) - 1) * (r[0] - r[n - 1]);
}

}  // namespace detail

// Fits alpha_{nj} by least squares on n(n-1)/2 random R vectors (at least
// n - 2 + 1 of them) and measures the residual on `fresh` new vectors.
inline RecursionFit recursion_residual(int n, std::uint64_t seed = 7, int fresh = 100) {
  if (n < 2 || n > 6) throw RangeError("recursion_residual supports 2 <= n <= 6");
  const rng::CounterStream s(seed);
  auto draw = [&](std::uint64_t row) {
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = 2.0 * s.uniforms(row, static_cast<std::uint64_t>(i))[0] - 1.0;
    return r;
  };
  const int unknowns = n - 2;
  RecursionFit fit{n, {}, 0.0};
  if (unknowns > 0) {
    const int rows = std::max(n * (n - 1) / 2, unknowns + 1);
    Eigen::MatrixXd a(rows, unknowns);
    Eigen::VectorXd b(rows);
    for (int row = 0; row < rows; ++row) {
      const auto r = draw(static_cast<std::uint64_t>(row));
      const auto k = pseudo_cumulants_from_R(r);
      for (int j = 2; j < n; ++j) a(row, j - 2) = k[static_cast<std::size_t>(j - 1)];
      b(row) = detail::recursion_target(r, static_cast<std::size_t>(n));
    }
    const auto qr = a.colPivHouseholderQr();
    if (qr.rank() < unknowns) throw ConditioningError("recursion_residual: singular least-squares system");
    const Eigen::VectorXd x = qr.solve(b);
    fit.alpha.assign(x.data(), x.data() + x.size());
  }
  for (int t = 0; t < fresh; ++t) {
    const auto r = draw((std::uint64_t{1} << 32) + static_cast<std::uint64_t>(t));
    const auto k = pseudo_cumulants_from_R(r);
    double rhs = 0.0;
    for (int j = 2; j < n; ++j) rhs += fit.alpha[static_cast<std::size_t>(j - 2)] * k[static_cast<std::size_t>(j - 1)];
    fit.residual = std::max(fit.residual, std::abs(detail::recursion_target(r, static_cast<std::size_t>(n)) - rhs));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// CLT prediction and pseudo-cumulants from kernel integrals

// Limiting Var[X_A] / sqrt(N): perimeter / (2 pi^{3/2}).
inline double clt_prediction(const PolygonDomain& dom, double delta_min = kDefaultDeltaMin) {
  require_admissible(dom, delta_min);
  return perimeter(dom) / (2.0 * std::pow(std::numbers::pi, 1.5));
}

// T_k = N^k \int_{A^k} det Q^{(k)}. Expanding the determinant over cycles of
// permutations gives polynomials in R_1..R_k:
//   T_1 = R_1, T_2 = R_1^2 - R_2, T_3 = R_1^3 - 3 R_1 R_2 + 2 R_3.
// Errors are propagated to first order from the independent R_m estimates.
inline Estimate pseudo_cumulant_T(const PolygonDomain& dom, int k, long n, const QuadratureSpec& spec = {}) {
  if (k < 1 || k > 3) throw RangeError("pseudo_cumulant_T supports 1 <= k <= 3");
  std::vector<ComplexEstimate> r;
  for (int m = 1; m <= k; ++m) r.push_back(r_m_integral(dom, m, n, spec));
  const double r1 = r[0].value.real(), e1 = r[0].std_error_re;
  if (k == 1) return {r1, e1};
  const double r2 = r[1].value.real(), e2 = r[1].std_error_re;
  if (k == 2) return {r1 * r1 - r2, std::hypot(2.0 * r1 * e1, e2)};
  const double r3 = r[2].value.real(), e3 = r[2].std_error_re;
  const double v = r1 * r1 * r1 - 3.0 * r1 * r2 + 2.0 * r3;
  const double d1 = 3.0 * r1 * r1 - 3.0 * r2, d2 = -3.0 * r1, d3 = 2.0;
  return {v, std::sqrt(d1 * d1 * e1 * e1 + d2 * d2 * e2 * e2 + d3 * d3 * e3 * e3)};
}

// Plain Monte Carlo of T_k with all k points uniform on A; only practical
// for small N, where it checks the cycle expansion above.
inline Estimate pseudo_cumulant_T_direct(const PolygonDomain& dom, int k, long n, const QuadratureSpec& spec = {}) {
  require_admissible(dom, spec.delta_min);
  if (k < 1 || k > 3) throw RangeError("pseudo_cumulant_T supports 1 <= k <= 3");
  const double scale = std::pow(static_cast<double>(n) * area(dom), k);
  const KernelOptions ko = kernel_options(spec, n);
  const ComplexEstimate e =
      detail::monte_carlo(spec, 0x7000u + static_cast<std::uint64_t>(k), [&](const rng::CounterStream& s, std::uint64_t i) {
        std::vector<cplx> z(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
          z[static_cast<std::size_t>(j)] = detail::uniform_in(dom, s, i * 8 + static_cast<std::uint64_t>(j));
        }
        Eigen::MatrixXcd q(k, k);
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) {
            q(a, b) = s_kernel_scaled(z[static_cast<std::size_t>(a)], z[static_cast<std::size_t>(b)], n, ko);
          }
        }
        return cplx(scale * q.determinant());
      });
  return {e.value.real(), e.std_error_re};
}

// ---------------------------------------------------------------------------
// Reports

enum class CumulantSource { empirical, kernel_quadrature, prediction };

inline const char* to_string(CumulantSource s) {
  switch (s) {
    case CumulantSource::empirical:
      return "empirical";
    case CumulantSource::kernel_quadrature:
      return "kernel-quadrature";
    case CumulantSource::prediction:
    default:
      return "prediction";
  }
}

struct CumulantReport {
  int n_max = 0;
  std::vector<double> factorial_moments;  // J_k or T_k
  std::vector<double> cumulants;          // kappa_n or kappa~_n of the raw count
  std::vector<double> cumulant_errors;    // one standard error each (0 if unknown)
  CumulantSource source = CumulantSource::prediction;
  long n = 0;
  std::string domain_hash;

  // kappa_n(X_A / N^{1/4}) = kappa_n(X_A) / N^{n/4}; the first entry is left
  // as the uncentred mean.
  std::vector<double> standardized() const {
    std::vector<double> out(cumulants.size());
    for (std::size_t i = 0; i < cumulants.size(); ++i) {
      out[i] = i == 0 ? cumulants[i] : cumulants[i] / std::pow(static_cast<double>(n), static_cast<double>(i + 1) / 4.0);
    }
    return out;
  }
};

// kappa~_1..kappa~_{n_max} from R_1..R_{n_max} (n_max <= 3), with first-order
// error propagation; factorial_moments holds T_1..T_{n_max}.
inline CumulantReport quadrature_cumulant_report(const PolygonDomain& dom, int n_max, long n,
                                                 const QuadratureSpec& spec = {}) {
  if (n_max < 1 || n_max > 3) throw RangeError("kernel-quadrature report supports n_max <= 3");
  std::vector<double> r, e;
  for (int m = 1; m <= n_max; ++m) {
    const ComplexEstimate c = r_m_integral(dom, m, n, spec);
    r.push_back(c.value.real());
    e.push_back(c.std_error_re);
  }
  CumulantReport rep;
  rep.n_max = n_max;
  rep.source = CumulantSource::kernel_quadrature;
  rep.n = n;
  rep.domain_hash = domain_hash(dom);
  rep.cumulants = pseudo_cumulants_from_R(r);
  for (int k = 1; k <= n_max; ++k) {
    double var = 0.0;
    for (int m = 1; m <= k; ++m) {
      const double c = ((m % 2 == 1) ? 1.0 : -1.0) * detail::factorial(m - 1) * stirling2_double(k, m);
      var += c * c * e[static_cast<std::size_t>(m - 1)] * e[static_cast<std::size_t>(m - 1)];
    }
    rep.cumulant_errors.push_back(std::sqrt(var));
  }
  // T_k from the cycle expansion.
  rep.factorial_moments.push_back(r[0]);
  if (n_max >= 2) rep.factorial_moments.push_back(r[0] * r[0] - r[1]);
  if (n_max >= 3) rep.factorial_moments.push_back(r[0] * r[0] * r[0] - 3.0 * r[0] * r[1] + 2.0 * r[2]);
  return rep;
}

// Leading-order prediction: mean (N/pi) area, variance perimeter sqrt(N) / (2 pi^{3/2}),
// higher cumulants zero.
inline CumulantReport prediction_report(const PolygonDomain& dom, int n_max, long n) {
  detail::check_order(static_cast<std::size_t>(n_max), "prediction_report");
  CumulantReport rep;
  rep.n_max = n_max;
  rep.source = CumulantSource::prediction;
  rep.n = n;
  rep.domain_hash = domain_hash(dom);
  const double nn = static_cast<double>(n);
  rep.cumulants.assign(static_cast<std::size_t>(n_max), 0.0);
  rep.cumulants[0] = nn / std::numbers::pi * area(dom);
  if (n_max >= 2) rep.cumulants[1] = clt_prediction(dom) * std::sqrt(nn);
  rep.cumulant_errors.assign(static_cast<std::size_t>(n_max), 0.0);
  return rep;
}

}  // namespace ginoe

#endif  // GINOE_CUMULANTS_HPP
