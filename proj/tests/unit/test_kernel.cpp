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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ginoe/kernel.hpp"

using ginoe::cplx;

namespace {

std::vector<cplx> square_grid(int per_side) {
  std::vector<cplx> g;
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      g.push_back({0.1 + 0.4 * (i + 0.5) / per_side, 0.3 + 0.4 * (j + 0.5) / per_side});
    }
  }
  return g;
}

// Literal composition of the defining formula at unscaled arguments.
cplx s_literal(cplx z, cplx w, long n) {
  const cplx i(0.0, 1.0);
  return i * std::exp(-0.5 * (z - std::conj(w)) * (z - std::conj(w))) / std::sqrt(2.0 * std::numbers::pi) *
         (std::conj(w) - z) * ginoe::g_factor(z, w) * ginoe::s_N_exact(z * std::conj(w), n).value;
}

}  // namespace

TEST(Kernel, GFactor) {
  EXPECT_DOUBLE_EQ(ginoe::g_factor({0.7, 0.0}, {-2.0, 0.0}), 1.0);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const cplx z(u(gen), u(gen)), w(u(gen), u(gen));
    EXPECT_EQ(ginoe::g_factor(z, w), ginoe::g_factor(w, z));
    EXPECT_GE(ginoe::g_factor(z, w), 0.0);
  }
  // G(sqrt N z, sqrt N z) = erfc(sqrt(2N) Im z) against its two-term tail, N = 100.
  const double n = 100.0, y = 0.5, x = std::sqrt(2.0 * n) * y;
  const double two_term = std::exp(-x * x) / (std::sqrt(std::numbers::pi) * x) * (1.0 - 0.5 / (x * x));
  const cplx zs = std::sqrt(n) * cplx(0.3, y);
  EXPECT_NEAR(ginoe::g_factor(zs, zs) / two_term, 1.0, 0.01);
}

TEST(Kernel, UnscaledMatchesLiteralFormula) {
  const long n = 30;
  for (const auto& [z, w] : std::vector<std::pair<cplx, cplx>>{{{1.0, 2.0}, {1.5, 1.0}}, {{-2.0, 0.5}, {3.0, 2.5}}}) {
    const cplx a = ginoe::s_kernel(z, w, n), b = s_literal(z, w, n);
    EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(b));
  }
}

TEST(Kernel, ScaledMatchesUnscaledAtScaledPoints) {
  const long n = 64;
  const cplx z(0.3, 0.5), w(0.35, 0.42);
  const double r = std::sqrt(static_cast<double>(n));
  const cplx a = ginoe::s_kernel_scaled(z, w, n), b = ginoe::s_kernel(r * z, r * w, n);
  EXPECT_LT(std::abs(a - b), 1e-11 * std::abs(b));
  const cplx d1 = ginoe::d_kernel_scaled(z, w, n), d2 = ginoe::d_kernel(r * z, r * w, n);
  EXPECT_LT(std::abs(d1 - d2), 1e-10 * std::abs(d2));
}

TEST(Kernel, DiagonalZerosAndReality) {
  for (const cplx z : square_grid(6)) {
    for (long n : {20L, 100L, 400L}) {
      const auto b = ginoe::kernel_block_scaled(z, z, n);
      EXPECT_EQ(b.d, cplx(0.0, 0.0));
      EXPECT_EQ(b.i, cplx(0.0, 0.0));
      EXPECT_EQ(b.s_fwd, b.s_rev);
      EXPECT_LT(std::abs(b.s_fwd.imag()), 1e-12 * std::abs(b.s_fwd));
      EXPECT_GT(b.s_fwd.real(), 0.0);
      EXPECT_NEAR(static_cast<double>(n) * b.s_fwd.real(), ginoe::scaled_intensity(z, n), 1e-10 * n);
    }
  }
}

TEST(Kernel, ModulusSymmetry) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ux(0.1, 0.5), uy(0.3, 0.7);
  for (int t = 0; t < 200; ++t) {
    const cplx z(ux(gen), uy(gen)), w(ux(gen), uy(gen));
    for (long n : {25L, 100L, 300L}) {
      const double a = std::abs(ginoe::s_kernel_scaled(z, w, n)), b = std::abs(ginoe::s_kernel_scaled(w, z, n));
      ASSERT_NEAR(a / b, 1.0, 1e-10);
    }
  }
}

TEST(Kernel, BlockAntisymmetry) {
  const cplx z(0.2, 0.4), w(0.45, 0.6);
  for (long n : {10L, 50L}) {
    const auto a = ginoe::kernel_block(z, w, n), b = ginoe::kernel_block(w, z, n);
    EXPECT_LT(std::abs(a.d + b.d), 1e-12 * std::max(1e-300, std::abs(a.d)));
    EXPECT_LT(std::abs(a.i + b.i), 1e-12 * std::max(1e-300, std::abs(a.i)));
    EXPECT_EQ(a.s_fwd, b.s_rev);
  }
}

TEST(Kernel, BackendsAgreeToOrderOneOverN) {
  const auto grid = square_grid(5);
  auto worst_rel = [&](long n) {
    double worst = 0.0;
    ginoe::KernelOptions asym{ginoe::Backend::asymptotic, {}};
    for (const cplx z : grid) {
      for (const cplx w : grid) {
        const cplx e = ginoe::s_kernel_scaled(z, w, n), a = ginoe::s_kernel_scaled(z, w, n, asym);
        worst = std::max(worst, std::abs(a - e) / std::abs(e));
      }
    }
    return worst;
  };
  EXPECT_LE(worst_rel(200), 5.0 / 200.0);
  const double r1 = worst_rel(100), r2 = worst_rel(800);
  const double slope = std::log(r2 / r1) / std::log(8.0);
  EXPECT_NEAR(slope, -1.0, 0.15);
}

TEST(Kernel, DecayOfDAndIAndBoundedS) {
  const auto grid = square_grid(20);
  std::vector<double> ns, logd, logi;
  for (long n : {25L, 50L, 100L, 200L}) {
    double md = 0.0, mi = 0.0, ms = 0.0;
    for (const cplx z : grid) {
      for (std::size_t k = 0; k < grid.size(); k += 7) {
        const cplx w = grid[k];
        md = std::max(md, std::abs(ginoe::d_kernel_scaled(z, w, n)));
        mi = std::max(mi, std::abs(ginoe::i_kernel_scaled(z, w, n)));
        ms = std::max(ms, std::abs(ginoe::s_kernel_scaled(z, w, n)));
      }
    }
    EXPECT_LE(ms, 10.0);
    ns.push_back(static_cast<double>(n));
    logd.push_back(std::log(md));
    logi.push_back(std::log(mi));
  }
  auto slope = [&](const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < y.size(); ++i) mx += ns[i] / y.size(), my += y[i] / y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < y.size(); ++i) sxy += (ns[i] - mx) * (y[i] - my), sxx += (ns[i] - mx) * (ns[i] - mx);
    return sxy / sxx;
  };
  EXPECT_LT(slope(logd), -0.05);
  EXPECT_LT(slope(logi), -0.05);
}

TEST(Kernel, ScaledBlockMagnitudes) {
  const auto b = ginoe::kernel_block_scaled({0.3, 0.5}, {0.32, 0.47}, 100);
  EXPECT_LT(std::abs(b.d), 1e-8);
  EXPECT_LT(std::abs(b.i), 1e-8);
  EXPECT_GT(std::abs(b.s_fwd), 1e-3);
  EXPECT_LT(std::abs(b.s_fwd), 10.0);
}

TEST(Kernel, IntensityPositiveAndNearFlat) {
  for (const cplx z : square_grid(8)) {
    const double v = ginoe::scaled_intensity(z, 400);
    EXPECT_GT(v, 0.0);
    // N/pi minus the 1/(4 pi y^2) correction, to O(1/N).
    EXPECT_NEAR(v, 400.0 / std::numbers::pi - 1.0 / (4.0 * std::numbers::pi * z.imag() * z.imag()), 0.05);
  }
}

TEST(Kernel, OverflowIsReported) {
  // s_10(-1800) ~ e^{1800} outweighs the Gaussian and erfc factors.
  EXPECT_THROW(ginoe::s_kernel({0.0, 30.0}, {0.0, -60.0}, 10), ginoe::EvaluationError);
  EXPECT_NO_THROW(ginoe::s_kernel({0.0, 30.0}, {0.0, 29.0}, 10));
}
