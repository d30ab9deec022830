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

// Special functions behind the real Ginibre kernel: erfc and its scaled and
// logarithmic forms, log-factorials, the truncated exponential
//
//   s_N(z) = e^{-z} sum_{j<N} z^j / j!
//
// with exact and large-N evaluations, and Stirling numbers of the second kind.

#ifndef GINOE_SPECFUN_HPP
#define GINOE_SPECFUN_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "ginoe/errors.hpp"

namespace ginoe {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Error function family

inline double erfc(double x) noexcept { return std::erfc(x); }

// exp(x^2) erfc(x). Continued fraction for x >= 4, where erfc itself would
// underflow long before the product does.
inline double erfcx(double x) noexcept {
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  // erfcx(x) = 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
  // evaluated bottom-up with enough depth for full precision at x >= 4.
  double f = x;
  for (int k = 60; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

inline double log_erfc(double x) noexcept {
  if (x < 1.0) return std::log(std::erfc(x));
  return std::log(erfcx(x)) - x * x;
}

// ---------------------------------------------------------------------------
// Factorials

inline double log_factorial(long n) noexcept { return std::lgamma(static_cast<double>(n) + 1.0); }

// ---------------------------------------------------------------------------
// Stirling numbers of the second kind, exact up to n = 30.

using uint128 = unsigned __int128;

inline uint128 stirling2(int n, int m) {
  if (n < 0 || m < 0) throw RangeError("stirling2: arguments must be nonnegative");
  if (n > 30) throw RangeError("stirling2: n = " + std::to_string(n) + " exceeds 30");
  if (m > n) return 0;
  // Row-by-row triangle S(i, k) = k S(i-1, k) + S(i-1, k-1).
  uint128 row[31] = {};
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int k = i; k >= 1; --k) row[k] = static_cast<uint128>(k) * row[k] + row[k - 1];
    row[0] = 0;
  }
  return row[m];
}

inline double stirling2_double(int n, int m) { return static_cast<double>(stirling2(n, m)); }

// ---------------------------------------------------------------------------
// Truncated exponential

// mantissa * exp(log_scale); keeps s_N and the kernel prefactors apart until
// they can be combined without overflow.
struct ScaledComplex {
  cplx mantissa{1.0, 0.0};
  double log_scale = 0.0;

  cplx value() const { return log_scale == 0.0 ? mantissa : mantissa * std::exp(log_scale); }
};

enum class SNMethod { exact_sum, asymptotic };

struct SNEvaluation {
  cplx value;
  SNMethod method;
  double est_error;  // absolute
};

struct SNScaled {
  ScaledComplex value;
  double est_error;  // absolute, in units of exp(value.log_scale)
  long peak_term;    // index of the largest summand, reported on overflow
};

struct SNAsymptoticOptions {
  double c_hat = 10.0;     // constant in the |R| <= C/N remainder bound
  double delta_min = 0.05; // required separation |1 - z|
};

namespace detail {

// 1 - exp(log_tail) in scaled form.
inline ScaledComplex one_minus_exp(cplx log_tail) {
  if (log_tail.real() > 0.0) {
    const double s = log_tail.real();
    return {cplx(std::exp(-s), 0.0) - std::polar(1.0, log_tail.imag()), s};
  }
  return {cplx(1.0, 0.0) - std::exp(log_tail), 0.0};
}

// Kahan accumulator for complex sums.
struct KahanComplex {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

  void add(cplx v) {
    const double yr = v.real() - cre;
    const double tr = re + yr;
    cre = (tr - re) - yr;
    re = tr;
    const double yi = v.imag() - cim;
    const double ti = im + yi;
    cim = (ti - im) - yi;
    im = ti;
  }

  cplx sum() const { return {re, im}; }
};

}  // namespace detail

// s_N(zeta) for an arbitrary complex zeta. Inside |zeta| < N the value is
// formed as 1 - P with P the convergent upper tail e^{-zeta} sum_{j>=N}
// zeta^j/j!, whose terms shrink geometrically; outside, the defining sum
// is accumulated directly. Both routes work in log space, term by term,
// with compensated summation.
inline SNScaled s_N_exact_scaled(cplx zeta, long n) {
  if (n < 1) throw RangeError("s_N: N must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (zeta == cplx(0.0, 0.0)) return {{cplx(1.0, 0.0), 0.0}, 0.0, 0};
  const cplx log_zeta = std::log(zeta);
  const double az = std::abs(zeta);

  if (az < static_cast<double>(n)) {
    const cplx log_lead = static_cast<double>(n) * log_zeta - log_factorial(n) - zeta;
    detail::KahanComplex acc;
    cplx term(1.0, 0.0);
    double mag = 0.0;
    for (long k = 1; k < 1000000; ++k) {
      acc.add(term);
      mag += std::abs(term);
      term *= zeta / static_cast<double>(n + k);
      if (std::abs(term) < 1e-18 * std::abs(acc.sum())) break;
    }
    const cplx series = acc.sum();
    const cplx log_tail = log_lead + std::log(series);
    SNScaled out{detail::one_minus_exp(log_tail), 0.0, n};
    const double tail_mag = std::exp(log_lead.real());
    out.est_error = 4.0 * eps * (1.0 + tail_mag * mag * std::exp(-out.value.log_scale));
    if (!std::isfinite(out.est_error)) out.est_error = 4.0 * eps * std::abs(out.value.mantissa);
    return out;
  }

  // Direct sum over j < N.
  double peak = -std::numeric_limits<double>::infinity();
  long peak_j = 0;
  for (long j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * std::log(az) - log_factorial(j) - zeta.real();
    if (t > peak) {
      peak = t;
      peak_j = j;
    }
  }
  detail::KahanComplex acc;
  double mag = 0.0;
  for (long j = 0; j < n; ++j) {
    const cplx lt = static_cast<double>(j) * log_zeta - log_factorial(j) - zeta;
    const cplx v = std::exp(lt - peak);
    acc.add(v);
    mag += std::abs(v);
  }
  return {{acc.sum(), peak}, 4.0 * eps * mag, peak_j};
}

inline SNEvaluation s_N_exact(cplx zeta, long n) {
  const SNScaled s = s_N_exact_scaled(zeta, n);
  constexpr double kSafe = 700.0;
  const double mag = s.value.log_scale + std::log(std::abs(s.value.mantissa));
  if (mag > kSafe) {
    throw EvaluationError("s_N overflow: term j = " + std::to_string(s.peak_term) +
                          " has exponent beyond the safe threshold");
  }
  return {s.value.value(), SNMethod::exact_sum, s.est_error * std::exp(s.value.log_scale)};
}

// log of the large-N correction (2 pi N)^{-1/2} (z e^{1-z})^N / (1 - z).
inline cplx sn_correction_log(cplx z, long n) {
  const double nn = static_cast<double>(n);
  return nn * (std::log(z) + 1.0 - z) - 0.5 * std::log(2.0 * std::numbers::pi * nn) - std::log(1.0 - z);
}

// Two-term approximation of s_N(N z): 1 - (2 pi N)^{-1/2} (z e^{1-z})^N / (1-z).
inline SNScaled s_N_asymptotic_scaled(cplx z, long n, const SNAsymptoticOptions& opt = {}) {
  if (n < 1) throw RangeError("s_N: N must be positive");
  if (std::abs(1.0 - z) < opt.delta_min) {
    throw DomainError("s_N asymptotic: |1 - z| below the separation floor");
  }
  if (z == cplx(0.0, 0.0)) return {{cplx(1.0, 0.0), 0.0}, 0.0, 0};
  const cplx lc = sn_correction_log(z, n);
  SNScaled out{detail::one_minus_exp(lc), 0.0, n};
  out.est_error = opt.c_hat / static_cast<double>(n) * std::exp(lc.real() - out.value.log_scale);
  return out;
}

inline SNEvaluation s_N_asymptotic(cplx z, long n, const SNAsymptoticOptions& opt = {}) {
  const SNScaled s = s_N_asymptotic_scaled(z, n, opt);
  if (s.value.log_scale > 700.0) throw EvaluationError("s_N asymptotic overflow");
  const double scale = std::exp(s.value.log_scale);
  return {s.value.mantissa * scale, SNMethod::asymptotic, s.est_error * scale};
}

// Remainder R(z; N) in s_N(N z) = 1 - correction * (1 + R), obtained from
// the exact upper tail so no cancellation against 1 occurs.
inline cplx sn_asymptotic_remainder(cplx z, long n) {
  if (!(std::abs(z) < 1.0)) throw DomainError("remainder is only defined for |z| < 1");
  const double nn = static_cast<double>(n);
  const cplx zeta = nn * z;
  const cplx log_lead = nn * std::log(zeta) - log_factorial(n) - zeta;
  detail::KahanComplex acc;
  cplx term(1.0, 0.0);
  for (long k = 1; k < 1000000; ++k) {
    acc.add(term);
    term *= zeta / static_cast<double>(n + k);
    if (std::abs(term) < 1e-18 * std::abs(acc.sum())) break;
  }
  const cplx log_tail = log_lead + std::log(acc.sum());
  return std::exp(log_tail - sn_correction_log(z, n)) - 1.0;
}

}  // namespace ginoe

#endif  // GINOE_SPECFUN_HPP
