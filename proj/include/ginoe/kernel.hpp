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

// The 2x2 block kernel of the complex-complex correlations of the real
// Ginibre ensemble:
//
//   S_N(z,w) = i e^{-(z - conj w)^2 / 2} / sqrt(2 pi) (conj w - z) G(z,w) s_N(z conj w)
//   D_N(z,w) =   e^{-(z - w)^2 / 2}      / sqrt(2 pi) (w - z)      G(z,w) s_N(z w)
//   I_N(z,w) =   e^{-(conj z - conj w)^2/2}/ sqrt(2 pi) (conj z - conj w) G(z,w) s_N(conj z conj w)
//   G(z,w)   = sqrt(erfc(sqrt2 Im z) erfc(sqrt2 Im w))
//
// The *_scaled entry points evaluate at (sqrt(N) z, sqrt(N) w) for z, w on
// the unit-disk scale. They never form sqrt(N) z: the s_N argument is built
// as N * z * conj(w), and all exponential factors are summed in one log
// before exponentiating.

#ifndef GINOE_KERNEL_HPP
#define GINOE_KERNEL_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ginoe/errors.hpp"
#include "ginoe/specfun.hpp"

namespace ginoe {

enum class Backend { exact, asymptotic };

inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "asymptotic"; }

struct KernelOptions {
  Backend backend = Backend::exact;
  SNAsymptoticOptions asymptotic{};
};

struct KernelBlock {
  cplx d;      // D_N(z, w)
  cplx s_fwd;  // S_N(z, w)
  cplx s_rev;  // S_N(w, z)
  cplx i;      // I_N(z, w)
  cplx z, w;
};

inline double g_factor(cplx z, cplx w) {
  return std::sqrt(erfc(std::numbers::sqrt2 * z.imag()) * erfc(std::numbers::sqrt2 * w.imag()));
}

namespace detail {

// log erfc(x) from the leading tail term e^{-x^2}/(sqrt(pi) x); relative
// error 1/(2x^2), i.e. O(1/N) at x = sqrt(2N) Im z.
inline double log_erfc_leading(double x) {
  if (x < 2.0) return log_erfc(x);
  return -x * x - std::log(std::sqrt(std::numbers::pi) * x);
}

enum class Entry { s, d, i };

// Evaluates one kernel entry at arguments (sqrt(t) z, sqrt(t) w) with the
// s_N truncation fixed at n terms. t = 1 gives the unscaled kernel.
inline cplx kernel_entry(Entry kind, cplx z, cplx w, long n, double t, bool scaled,
                         const KernelOptions& opt) {
  if (n < 1) throw RangeError("kernel: N must be positive");
  cplx a, b, lin, product;
  switch (kind) {
    case Entry::s:
      a = z;
      b = std::conj(w);
      lin = cplx(0.0, 1.0) * (b - a);
      product = z * std::conj(w);
      break;
    case Entry::d:
      a = z;
      b = w;
      lin = w - z;
      product = z * w;
      break;
    case Entry::i:
    default:
      a = std::conj(z);
      b = std::conj(w);
      lin = a - b;
      product = std::conj(z) * std::conj(w);
      break;
  }
  if (lin == cplx(0.0, 0.0)) return {0.0, 0.0};
  lin *= std::sqrt(t) / std::sqrt(2.0 * std::numbers::pi);

  const cplx expo = -0.5 * t * (a - b) * (a - b);
  const double rt = std::sqrt(2.0 * t);
  const bool asym = opt.backend == Backend::asymptotic && kind == Entry::s;
  const double log_g = asym ? 0.5 * (log_erfc_leading(rt * z.imag()) + log_erfc_leading(rt * w.imag()))
                            : 0.5 * (log_erfc(rt * z.imag()) + log_erfc(rt * w.imag()));

  SNScaled sn;
  if (asym) {
    // s_N(N u) with u = product / N; in scaled mode u is the unit-scale product.
    const cplx u = scaled ? product : product / static_cast<double>(n);
    sn = s_N_asymptotic_scaled(u, n, opt.asymptotic);
  } else {
    sn = s_N_exact_scaled(t * product, n);
  }

  const double log_mag = expo.real() + log_g + sn.value.log_scale;
  if (log_mag > 700.0) {
    throw EvaluationError("kernel overflow: exponent " + std::to_string(log_mag) + " at s_N term " +
                          std::to_string(sn.peak_term));
  }
  return std::exp(cplx(log_mag, expo.imag())) * lin * sn.value.mantissa;
}

}  // namespace detail

// Unscaled kernel entries S_N(z, w), D_N(z, w), I_N(z, w).
inline cplx s_kernel(cplx z, cplx w, long n, const KernelOptions& opt = {}) {
  return detail::kernel_entry(detail::Entry::s, z, w, n, 1.0, false, opt);
}
inline cplx d_kernel(cplx z, cplx w, long n) {
  return detail::kernel_entry(detail::Entry::d, z, w, n, 1.0, false, {});
}
inline cplx i_kernel(cplx z, cplx w, long n) {
  return detail::kernel_entry(detail::Entry::i, z, w, n, 1.0, false, {});
}

// S_N(sqrt(N) z, sqrt(N) w) and friends.
inline cplx s_kernel_scaled(cplx z, cplx w, long n, const KernelOptions& opt = {}) {
  return detail::kernel_entry(detail::Entry::s, z, w, n, static_cast<double>(n), true, opt);
}
inline cplx d_kernel_scaled(cplx z, cplx w, long n) {
  return detail::kernel_entry(detail::Entry::d, z, w, n, static_cast<double>(n), true, {});
}
inline cplx i_kernel_scaled(cplx z, cplx w, long n) {
  return detail::kernel_entry(detail::Entry::i, z, w, n, static_cast<double>(n), true, {});
}

inline KernelBlock kernel_block(cplx z, cplx w, long n) {
  return {d_kernel(z, w, n), s_kernel(z, w, n), s_kernel(w, z, n), i_kernel(z, w, n), z, w};
}

inline KernelBlock kernel_block_scaled(cplx z, cplx w, long n) {
  return {d_kernel_scaled(z, w, n), s_kernel_scaled(z, w, n), s_kernel_scaled(w, z, n),
          i_kernel_scaled(z, w, n), z, w};
}

// First intensity of the scaled complex eigenvalues, N S_N(sqrt N z, sqrt N z).
// On the diagonal the kernel collapses to the real expression
//   sqrt(2N/pi) y e^{2N y^2} erfc(sqrt(2N) y) s_N(N |z|^2),   y = Im z,
// evaluated here in log space.
inline double scaled_intensity(cplx z, long n, const KernelOptions& opt = {}) {
  const double nn = static_cast<double>(n);
  const double y = z.imag();
  if (y == 0.0) return 0.0;
  const double x = std::sqrt(2.0 * nn) * y;
  const SNScaled sn = opt.backend == Backend::asymptotic
                          ? s_N_asymptotic_scaled(cplx(std::norm(z), 0.0), n, opt.asymptotic)
                          : s_N_exact_scaled(cplx(nn * std::norm(z), 0.0), n);
  const bool asym = opt.backend == Backend::asymptotic && x >= 2.0;
  const double log_mag = (asym ? -std::log(std::sqrt(std::numbers::pi) * x) : std::log(erfcx(x))) + sn.value.log_scale;
  return nn * std::sqrt(2.0 * nn / std::numbers::pi) * y * std::exp(log_mag) * sn.value.mantissa.real();
}

}  // namespace ginoe

#endif  // GINOE_KERNEL_HPP
