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

// Real Ginibre sampling, spectra and eigenvalue counting statistics.
//
// Requires LAPACKE (dgeev) and a BLAS; link with -llapacke -lopenblas.

#ifndef GINOE_ENSEMBLE_HPP
#define GINOE_ENSEMBLE_HPP

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ginoe/cumulants.hpp"
#include "ginoe/errors.hpp"
#include "ginoe/geometry.hpp"
#include "ginoe/parallel.hpp"
#include "ginoe/rng.hpp"

namespace ginoe {

// Column-major real matrix.
struct RealMatrix {
  int n = 0;
  std::vector<double> data;

  double& operator()(int i, int j) { return data[static_cast<std::size_t>(j) * n + i]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(j) * n + i]; }
};

// n x n standard normal entries; entry (i, j) depends only on (seed, i, j).
inline RealMatrix sample_ginoe(int n, std::uint64_t seed) {
  if (n < 1) throw RangeError("sample_ginoe: n must be positive");
  const rng::CounterStream s(seed);
  RealMatrix g{n, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = s.normal(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  }
  return g;
}

struct SpectrumOptions {
  double residual_tol = 1e-9;  // relative to the Frobenius norm of W
  bool check_residuals = true;
  std::uint64_t seed = 0;      // carried into SolverError for reproduction
};

// All eigenvalues of w. Complex eigenvalues come back as exact conjugate
// pairs; with check_residuals each eigenpair must satisfy
// |W v - lambda v| <= tol |W| |v|.
inline std::vector<cplx> spectrum(const RealMatrix& w, const SpectrumOptions& opt = {}) {
  const int n = w.n;
  if (n < 1 || w.data.size() != static_cast<std::size_t>(n) * n) throw DimensionError("spectrum: matrix must be square");
  static const bool single_threaded_blas = [] {
    openblas_set_num_threads(1);
    return true;
  }();
  (void)single_threaded_blas;
  std::vector<double> a = w.data, wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  std::vector<double> vr;
  if (opt.check_residuals) vr.resize(static_cast<std::size_t>(n) * n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', opt.check_residuals ? 'V' : 'N', n, a.data(), n, wr.data(), wi.data(),
                    nullptr, 1, opt.check_residuals ? vr.data() : nullptr, n);
  if (info != 0) {
    throw SolverError("dgeev failed with info = " + std::to_string(info), opt.seed);
  }
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (wi[static_cast<std::size_t>(k)] != 0.0 && k + 1 < n) {
      // dgeev stores a pair as (re, +im), (re, -im).
      out[static_cast<std::size_t>(k)] = {wr[static_cast<std::size_t>(k)], wi[static_cast<std::size_t>(k)]};
      out[static_cast<std::size_t>(k) + 1] = std::conj(out[static_cast<std::size_t>(k)]);
      ++k;
    } else {
      out[static_cast<std::size_t>(k)] = {wr[static_cast<std::size_t>(k)], 0.0};
    }
  }
  if (opt.check_residuals) {
    double norm = 0.0;
    for (double x : w.data) norm += x * x;
    norm = std::sqrt(norm);
    // W V in one product; for a pair the columns (x, y) hold v = x + i y.
    std::vector<double> wv(static_cast<std::size_t>(n) * n);
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, w.data.data(), n, vr.data(), n, 0.0,
                wv.data(), n);
    auto col = [n](std::vector<double>& m, int k) { return m.data() + static_cast<std::size_t>(k) * n; };
    for (int k = 0; k < n; ++k) {
      const double a = wr[static_cast<std::size_t>(k)], b = wi[static_cast<std::size_t>(k)];
      double res = 0.0, vnorm = 0.0;
      if (b == 0.0) {
        const double* x = col(vr, k);
        const double* wx = col(wv, k);
        for (int i = 0; i < n; ++i) {
          res += (wx[i] - a * x[i]) * (wx[i] - a * x[i]);
          vnorm += x[i] * x[i];
        }
      } else {
        const double* x = col(vr, k);
        const double* y = col(vr, k + 1);
        const double* wx = col(wv, k);
        const double* wy = col(wv, k + 1);
        for (int i = 0; i < n; ++i) {
          const double rr = wx[i] - (a * x[i] - b * y[i]);
          const double ri = wy[i] - (a * y[i] + b * x[i]);
          res += rr * rr + ri * ri;
          vnorm += x[i] * x[i] + y[i] * y[i];
        }
      }
      if (std::sqrt(res) > opt.residual_tol * norm * std::sqrt(vnorm)) {
        throw SolverError("eigenpair residual above tolerance at index " + std::to_string(k), opt.seed);
      }
      if (b != 0.0) ++k;  // the conjugate has the same residual
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ensembles

struct EnsembleConfig {
  int n = 256;
  std::size_t m_samples = 1000;
  std::uint64_t master_seed = 1;
  std::vector<PolygonDomain> domains;
  double eig_residual_tol = 1e-9;
  // Residuals are checked on samples whose index is a multiple of this.
  std::size_t residual_stride = 1;
  unsigned threads = 0;
  double delta_min = kDefaultDeltaMin;
};

struct EnsembleRecord {
  std::size_t sample_index = 0;
  std::uint64_t seed = 0;
  std::vector<int> counts;  // per domain
  int n_real_eigs = 0;
  bool failed = false;
  std::string error;
};

struct KStatistics {
  std::array<double, 4> kappa{};     // unbiased k-statistics k_1..k_4
  std::array<double, 4> kappa_se{};  // jackknife standard errors
  double skewness = 0.0, skewness_se = 0.0;
  double excess_kurtosis = 0.0, excess_kurtosis_se = 0.0;
  std::size_t m = 0;
};

struct DomainSummary {
  std::string domain_id;
  double mean = 0.0;
  double variance = 0.0;
  KStatistics stats;
  std::vector<double> factorial_moments;  // J_1..J_4 estimates
};

struct EnsembleSummary {
  std::vector<DomainSummary> domains;
  std::size_t failures = 0;
  double mean_real_eigs = 0.0;
};

struct EnsembleResult {
  std::vector<EnsembleRecord> records;
  EnsembleSummary summary;
};

namespace detail {

// k-statistics from power sums of centred data.
inline std::array<double, 4> k_stats(double n, double s1, double s2, double s3, double s4) {
  std::array<double, 4> k{};
  k[0] = s1 / n;
  k[1] = (n * s2 - s1 * s1) / (n * (n - 1));
  k[2] = (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2));
  k[3] = (-6 * s1 * s1 * s1 * s1 + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 - 4 * n * (n + 1) * s1 * s3 +
          n * n * (n + 1) * s4) /
         (n * (n - 1) * (n - 2) * (n - 3));
  return k;
}

}  // namespace detail

// Unbiased k-statistics k_1..k_4 with delete-one jackknife errors.
inline KStatistics k_statistics(std::span<const double> x) {
  const std::size_t m = x.size();
  if (m < 5) throw InsufficientSamples("k_statistics needs at least 5 samples");
  double center = 0.0;
  for (double v : x) center += v;
  center /= static_cast<double>(m);
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (double v : x) {
    const double d = v - center;
    s1 += d;
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const double mm = static_cast<double>(m);
  KStatistics out;
  out.m = m;
  out.kappa = detail::k_stats(mm, s1, s2, s3, s4);
  out.kappa[0] += center;
  out.skewness = out.kappa[2] / std::pow(out.kappa[1], 1.5);
  out.excess_kurtosis = out.kappa[3] / (out.kappa[1] * out.kappa[1]);

  // Leave-one-out replicates.
  std::array<double, 6> mean_rep{}, sq_rep{};
  std::vector<std::array<double, 6>> reps(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = x[i] - center;
    auto k = detail::k_stats(mm - 1, s1 - d, s2 - d * d, s3 - d * d * d, s4 - d * d * d * d);
    reps[i] = {k[0], k[1], k[2], k[3], k[2] / std::pow(k[1], 1.5), k[3] / (k[1] * k[1])};
    for (std::size_t q = 0; q < 6; ++q) mean_rep[q] += reps[i][q] / mm;
  }
  for (const auto& r : reps) {
    for (std::size_t q = 0; q < 6; ++q) sq_rep[q] += (r[q] - mean_rep[q]) * (r[q] - mean_rep[q]);
  }
  const double f = (mm - 1) / mm;
  for (std::size_t q = 0; q < 4; ++q) out.kappa_se[q] = std::sqrt(f * sq_rep[q]);
  out.skewness_se = std::sqrt(f * sq_rep[4]);
  out.excess_kurtosis_se = std::sqrt(f * sq_rep[5]);
  return out;
}

// Mean of the falling factorials x (x-1) ... (x-k+1), k = 1..k_max.
inline std::vector<double> empirical_factorial_moments(std::span<const double> x, int k_max) {
  std::vector<double> j(static_cast<std::size_t>(k_max), 0.0);
  for (double v : x) {
    double f = 1.0;
    for (int k = 1; k <= k_max; ++k) {
      f *= v - (k - 1);
      j[static_cast<std::size_t>(k - 1)] += f;
    }
  }
  for (double& v : j) v /= static_cast<double>(x.size());
  return j;
}

inline int count_in(const PolygonDomain& d, std::span<const cplx> eig) {
  int c = 0;
  for (const cplx& l : eig) {
    if (l.imag() != 0.0 && contains(d, l)) ++c;
  }
  return c;
}

// One sample: G(seed) / sqrt(n), its spectrum and the counts.
inline EnsembleRecord run_sample(const EnsembleConfig& cfg, std::size_t index) {
  EnsembleRecord rec;
  rec.sample_index = index;
  rec.seed = rng::derive_seed(cfg.master_seed, index);
  RealMatrix w = sample_ginoe(cfg.n, rec.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n));
  for (double& v : w.data) v *= scale;
  try {
    SpectrumOptions so{cfg.eig_residual_tol, cfg.residual_stride > 0 && index % cfg.residual_stride == 0, rec.seed};
    const std::vector<cplx> eig = spectrum(w, so);
    for (const cplx& l : eig) rec.n_real_eigs += l.imag() == 0.0 ? 1 : 0;
    for (const auto& d : cfg.domains) rec.counts.push_back(count_in(d, eig));
  } catch (const SolverError& e) {
    rec.failed = true;
    rec.error = e.what();
    rec.counts.assign(cfg.domains.size(), 0);
  }
  return rec;
}

inline EnsembleResult count_statistics(const EnsembleConfig& cfg) {
  if (cfg.n < 1) throw RangeError("ensemble: n must be positive");
  if (cfg.m_samples < 1) throw RangeError("ensemble: m_samples must be positive");
  if (cfg.domains.empty()) throw ValidationError("ensemble: no domains given");
  for (const auto& d : cfg.domains) require_admissible(d, cfg.delta_min);

  EnsembleResult res;
  res.records.resize(cfg.m_samples);
  parallel_for(cfg.m_samples, cfg.threads, [&](std::size_t i) { res.records[i] = run_sample(cfg, i); });

  std::size_t failures = 0;
  for (const auto& r : res.records) failures += r.failed ? 1 : 0;
  res.summary.failures = failures;
  if (static_cast<double>(failures) > 1e-3 * static_cast<double>(cfg.m_samples)) {
    std::uint64_t first = 0;
    for (const auto& r : res.records) {
      if (r.failed) {
        first = r.seed;
        break;
      }
    }
    throw SolverError("ensemble: " + std::to_string(failures) + " solver failures exceed the 0.1% cap", first);
  }

  double reals = 0.0;
  std::size_t ok = 0;
  for (const auto& r : res.records) {
    if (r.failed) continue;
    reals += r.n_real_eigs;
    ++ok;
  }
  res.summary.mean_real_eigs = ok ? reals / static_cast<double>(ok) : 0.0;
  for (std::size_t d = 0; d < cfg.domains.size(); ++d) {
    std::vector<double> x;
    x.reserve(ok);
    for (const auto& r : res.records) {
      if (!r.failed) x.push_back(r.counts[d]);
    }
    DomainSummary s;
    s.domain_id = domain_hash(cfg.domains[d]);
    if (x.size() >= 5) {
      s.stats = k_statistics(x);
      s.mean = s.stats.kappa[0];
      s.variance = s.stats.kappa[1];
    }
    s.factorial_moments = empirical_factorial_moments(x, 4);
    res.summary.domains.push_back(std::move(s));
  }
  return res;
}

// kappa_1..kappa_{n_max} (n_max <= 4) of the counts as k-statistics.
inline CumulantReport empirical_cumulant_report(std::span<const double> counts, int n_max, long n,
                                                const std::string& domain_id) {
  if (n_max < 1 || n_max > 4) throw RangeError("empirical_cumulant_report supports n_max <= 4");
  if (counts.size() < 100 * static_cast<std::size_t>(n_max)) {
    throw InsufficientSamples("empirical_cumulant_report needs at least " + std::to_string(100 * n_max) +
                              " samples, got " + std::to_string(counts.size()));
  }
  const KStatistics k = k_statistics(counts);
  CumulantReport rep;
  rep.n_max = n_max;
  rep.source = CumulantSource::empirical;
  rep.n = n;
  rep.domain_hash = domain_id;
  rep.factorial_moments = empirical_factorial_moments(counts, n_max);
  for (int i = 0; i < n_max; ++i) {
    rep.cumulants.push_back(k.kappa[static_cast<std::size_t>(i)]);
    rep.cumulant_errors.push_back(k.kappa_se[static_cast<std::size_t>(i)]);
  }
  return rep;
}

inline CumulantReport empirical_cumulant_report(const EnsembleResult& res, std::size_t domain, int n_max, long n) {
  std::vector<double> x;
  for (const auto& r : res.records) {
    if (!r.failed) x.push_back(r.counts.at(domain));
  }
  return empirical_cumulant_report(x, n_max, n, res.summary.domains.at(domain).domain_id);
}

// ---------------------------------------------------------------------------
// Normality of integer-valued data

struct NormalityTest {
  double statistic = 0.0;       // sup |F_emp(k) - Phi((k + 1/2 - mu) / sigma)| over integers k
  double critical_1pct = 0.0;   // 1% critical value with estimated mean and variance
  bool passed = false;
};

// Kolmogorov-Smirnov distance between the empirical CDF of integer data and
// the continuity-corrected normal with the sample mean and variance. The
// critical value is the large-sample 1% point for estimated parameters,
// 1.031 / sqrt(m).
inline NormalityTest normality_ks(std::span<const double> x) {
  if (x.size() < 5) throw InsufficientSamples("normality_ks needs at least 5 samples");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double m = static_cast<double>(s.size());
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= m;
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / (m - 1));
  NormalityTest t;
  if (!(sd > 0.0)) {
    t.statistic = 1.0;
    t.critical_1pct = 1.031 / std::sqrt(m);
    return t;
  }
  const auto lo = static_cast<long>(std::floor(s.front())) - 1, hi = static_cast<long>(std::ceil(s.back())) + 1;
  std::size_t idx = 0;
  for (long k = lo; k <= hi; ++k) {
    while (idx < s.size() && s[idx] <= static_cast<double>(k)) ++idx;
    const double emp = static_cast<double>(idx) / m;
    const double model = 0.5 * std::erfc(-(static_cast<double>(k) + 0.5 - mean) / (sd * std::numbers::sqrt2));
    t.statistic = std::max(t.statistic, std::abs(emp - model));
  }
  t.critical_1pct = 1.031 / std::sqrt(m);
  t.passed = t.statistic < t.critical_1pct;
  return t;
}

}  // namespace ginoe

#endif  // GINOE_ENSEMBLE_HPP
