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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ginoe/ensemble.hpp"

using ginoe::cplx;
using ginoe::PolygonDomain;

namespace {

PolygonDomain square04() { return PolygonDomain::rectangle(0.1, 0.3, 0.5, 0.7); }

bool cplx_less(cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); }

}  // namespace

TEST(Sample, GoldenFourByFour) {
  std::ifstream in(std::string(GINOE_SOURCE_DIR) + "/tests/golden/sample_n4_seed7.txt");
  ASSERT_TRUE(in) << "missing fixture";
  std::string line;
  std::getline(in, line);  // comment
  const auto g = ginoe::sample_ginoe(4, 7);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = 0.0;
      in >> v;
      EXPECT_EQ(g(i, j), v) << i << "," << j;
    }
  }
}

TEST(Sample, EntryIsStandardNormal) {
  const int m = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < m; ++k) {
    // Entry (1,1) only: the sampler keys on (seed, i, j), so a 2 x 2 draw suffices.
    const double x = ginoe::sample_ginoe(2, ginoe::rng::derive_seed(123, static_cast<std::uint64_t>(k)))(1, 1);
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1 / m, 0.0, 3.0 / std::sqrt(m));
  EXPECT_NEAR(s2 / m, 1.0, 5.0 * std::sqrt(2.0 / m));
  // Entries depend only on (seed, i, j): the leading block of a bigger draw is identical.
  const auto a = ginoe::sample_ginoe(3, 9), b = ginoe::sample_ginoe(6, 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a(i, j), b(i, j));
  }
  EXPECT_THROW(ginoe::sample_ginoe(0, 1), ginoe::RangeError);
}

TEST(Spectrum, SmallExamples) {
  ginoe::RealMatrix d{3, std::vector<double>(9, 0.0)};
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  auto e = ginoe::spectrum(d);
  std::sort(e.begin(), e.end(), cplx_less);
  EXPECT_EQ(e, (std::vector<cplx>{1.0, 2.0, 3.0}));

  ginoe::RealMatrix r{2, {0.0, 1.0, -1.0, 0.0}};  // column-major [[0, -1], [1, 0]]
  auto f = ginoe::spectrum(r);
  std::sort(f.begin(), f.end(), cplx_less);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_NEAR(std::abs(f[0] - cplx(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f[1] - cplx(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_EQ(f[0], std::conj(f[1]));
  EXPECT_THROW(ginoe::spectrum(ginoe::RealMatrix{2, {1.0}}), ginoe::DimensionError);
}

TEST(Spectrum, ConjugatePairsAndResiduals) {
  const auto g = ginoe::sample_ginoe(50, 2024);
  ginoe::SpectrumOptions opt;
  opt.residual_tol = 1e-10;
  const auto e = ginoe::spectrum(g, opt);
  ASSERT_EQ(e.size(), 50u);
  std::vector<cplx> a = e, b;
  for (const cplx l : e) b.push_back(std::conj(l));
  std::sort(a.begin(), a.end(), cplx_less);
  std::sort(b.begin(), b.end(), cplx_less);
  EXPECT_EQ(a, b);
  // Trace and determinant as independent checks on the multiset.
  cplx sum(0.0, 0.0);
  for (const cplx l : e) sum += l;
  double trace = 0.0;
  for (int i = 0; i < 50; ++i) trace += g(i, i);
  EXPECT_NEAR(sum.real(), trace, 1e-9);
  EXPECT_NEAR(sum.imag(), 0.0, 1e-12);
}

TEST(Ensemble, DeterministicAcrossThreadCounts) {
  ginoe::EnsembleConfig cfg;
  cfg.n = 64;
  cfg.m_samples = 40;
  cfg.master_seed = 77;
  cfg.domains = {square04()};
  cfg.threads = 1;
  const auto a = ginoe::count_statistics(cfg);
  cfg.threads = 4;
  const auto b = ginoe::count_statistics(cfg);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].counts, b.records[i].counts);
    EXPECT_EQ(a.records[i].n_real_eigs, b.records[i].n_real_eigs);
  }
  EXPECT_EQ(a.summary.domains[0].variance, b.summary.domains[0].variance);
  EXPECT_EQ(a.summary.failures, 0u);
}

TEST(Ensemble, ReflectionAndBounds) {
  const auto a = square04();
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto w = ginoe::sample_ginoe(80, s);
    for (double& v : w.data) v /= std::sqrt(80.0);
    const auto e = ginoe::spectrum(w);
    std::vector<cplx> conj;
    for (const cplx l : e) conj.push_back(std::conj(l));
    const int c = ginoe::count_in(a, e);
    EXPECT_EQ(c, ginoe::count_in(a.conjugated(), conj));
    EXPECT_GE(c, 0);
    EXPECT_LE(c, 40);
  }
}

TEST(Ensemble, ConfigValidation) {
  ginoe::EnsembleConfig cfg;
  cfg.n = 16;
  cfg.m_samples = 2;
  EXPECT_THROW(ginoe::count_statistics(cfg), ginoe::ValidationError);
  cfg.domains = {PolygonDomain::rectangle(0.9, 0.01, 0.99, 0.1)};
  EXPECT_THROW(ginoe::count_statistics(cfg), ginoe::InvalidDomain);
  cfg.domains = {square04()};
  cfg.m_samples = 0;
  EXPECT_THROW(ginoe::count_statistics(cfg), ginoe::RangeError);
}

TEST(Ensemble, SmallRunMatchesMeanIntensity) {
  ginoe::EnsembleConfig cfg;
  cfg.n = 128;
  cfg.m_samples = 400;
  cfg.master_seed = 3;
  cfg.domains = {square04()};
  const auto r = ginoe::count_statistics(cfg);
  const auto& s = r.summary.domains[0];
  // Exact finite-n mean is close to (n/pi) area; allow 4 standard errors.
  EXPECT_NEAR(s.mean, 128.0 / std::numbers::pi * 0.16 - 0.06, 4.0 * s.stats.kappa_se[0] + 0.05);
  EXPECT_GT(r.summary.mean_real_eigs, 0.0);
  EXPECT_LT(r.summary.mean_real_eigs, 128.0);
}

TEST(KStatistics, GaussianData) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> g(3.0, std::sqrt(2.0));
  std::vector<double> x(20000);
  for (auto& v : x) v = g(gen);
  const auto rep = ginoe::empirical_cumulant_report(x, 4, 0, "synthetic");
  const std::vector<double> expect{3.0, 2.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(rep.cumulants[i], expect[i], 3.0 * rep.cumulant_errors[i]) << i;
    EXPECT_GT(rep.cumulant_errors[i], 0.0);
  }
}

TEST(KStatistics, PoissonData) {
  std::mt19937_64 gen(9);
  std::poisson_distribution<int> p(4.0);
  std::vector<double> x(20000);
  for (auto& v : x) v = p(gen);
  const auto rep = ginoe::empirical_cumulant_report(x, 3, 0, "synthetic");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(rep.cumulants[i], 4.0, 3.0 * rep.cumulant_errors[i]) << i;
  // Factorial moments of Poisson(4) are 4^k.
  EXPECT_NEAR(rep.factorial_moments[1] / 16.0, 1.0, 0.03);
}

TEST(KStatistics, UnbiasedOnTinySample) {
  // k2 is the unbiased variance; k3 the unbiased third cumulant n/((n-1)(n-2)) sum d^3.
  const std::vector<double> x{1.0, 2.0, 4.0, 7.0, 11.0};
  const auto k = ginoe::k_statistics(x);
  double mean = 5.0, s2 = 0.0, s3 = 0.0;
  for (const double v : x) {
    s2 += (v - mean) * (v - mean);
    s3 += (v - mean) * (v - mean) * (v - mean);
  }
  EXPECT_NEAR(k.kappa[0], mean, 1e-12);
  EXPECT_NEAR(k.kappa[1], s2 / 4.0, 1e-12);
  EXPECT_NEAR(k.kappa[2], 5.0 * s3 / (4.0 * 3.0), 1e-12);
}

TEST(KStatistics, InsufficientSamples) {
  const std::vector<double> x(399, 1.0);
  EXPECT_THROW(ginoe::empirical_cumulant_report(x, 4, 0, "x"), ginoe::InsufficientSamples);
  EXPECT_THROW(ginoe::empirical_cumulant_report(x, 5, 0, "x"), ginoe::RangeError);
}

TEST(Normality, KsOnGaussianAndSkewedCounts) {
  std::mt19937_64 gen(10);
  std::normal_distribution<double> g(20.0, 3.0);
  std::vector<double> x(5000);
  for (auto& v : x) v = std::round(g(gen));
  const auto t = ginoe::normality_ks(x);
  EXPECT_TRUE(t.passed) << t.statistic;
  EXPECT_NEAR(t.critical_1pct, 1.031 / std::sqrt(5000.0), 1e-12);
  std::exponential_distribution<double> e(0.2);
  for (auto& v : x) v = std::round(e(gen));
  EXPECT_FALSE(ginoe::normality_ks(x).passed);
}
