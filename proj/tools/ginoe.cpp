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

// Command line front end. Exit codes: 0 ok, 2 invalid input or usage,
// 3 numerical tolerance failure, 1 anything else.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ginoe/ginoe.hpp"

namespace fs = std::filesystem;
using ginoe::io::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

struct Common {
  long n = 256;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> domains;
  std::string out;
  unsigned threads = 0;
  double delta_min = ginoe::kDefaultDeltaMin;
};

struct QuadOpts {
  double resolution = 0.0;
  double error_target = 0.0;
  std::size_t mc_samples = 200000;
  int order = 6;
  std::string backend = "auto";
  long asymptotic_above = 512;
};

ginoe::PolygonDomain reference_square() { return ginoe::PolygonDomain::rectangle(0.1, 0.3, 0.5, 0.7); }

std::vector<ginoe::PolygonDomain> load_domains(const Common& c) {
  std::vector<ginoe::PolygonDomain> out;
  for (const auto& p : c.domains) out.push_back(ginoe::io::load_domain(p));
  if (out.empty()) out.push_back(reference_square());
  return out;
}

ginoe::QuadratureSpec make_spec(const Common& c, const QuadOpts& q) {
  ginoe::QuadratureSpec s;
  s.resolution = q.resolution;
  s.error_target = q.error_target;
  s.samples = q.mc_samples;
  s.order = q.order;
  s.seed = c.seed;
  s.threads = ginoe::resolve_threads(c.threads);
  s.delta_min = c.delta_min;
  s.asymptotic_above = q.asymptotic_above;
  if (q.backend == "asymptotic") {
    s.backend = ginoe::Backend::asymptotic;
  } else if (q.backend == "exact") {
    s.backend = ginoe::Backend::exact;
  } else if (q.backend != "auto") {
    throw ginoe::ValidationError("unknown backend '" + q.backend + "'");
  }
  return s;
}

json complex_json(ginoe::cplx z) { return json::array({z.real(), z.imag()}); }

ginoe::cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ginoe::ValidationError("cannot parse complex number '" + s + "' (expected re,im)");
  }
}

// Writes `files` under c.out together with manifest.json; prints `main` to stdout.
void emit(const std::string& command, const Common& c, const json& config, const json& main,
          const std::map<std::string, std::function<void(const fs::path&)>>& files) {
  std::cout << main.dump(2) << '\n';
  if (c.out.empty()) return;
  const fs::path dir(c.out);
  fs::create_directories(dir);
  ginoe::io::RunManifest m;
  m.command = command;
  m.config_hash = ginoe::io::config_hash(config);
  for (const auto& [name, writer] : files) {
    writer(dir / name);
    m.outputs.push_back((dir / name).string());
  }
  m.outputs.push_back((dir / "manifest.json").string());
  ginoe::io::write_json(dir / "manifest.json", ginoe::io::to_json(m));
}

json base_config(const std::string& command, const Common& c, const std::vector<ginoe::PolygonDomain>& doms) {
  json d = json::array();
  for (const auto& x : doms) d.push_back(ginoe::io::domain_to_json(x));
  return {{"command", command}, {"n", c.n}, {"seed", c.seed}, {"domains", d}, {"delta_min", c.delta_min}};
}

// ---------------------------------------------------------------------------
// sample / clt

struct EnsembleOpts {
  double eig_tol = 1e-9;
  std::size_t residual_stride = 1;
};

ginoe::EnsembleResult run_ensemble(const Common& c, const EnsembleOpts& e,
                                   const std::vector<ginoe::PolygonDomain>& doms) {
  ginoe::EnsembleConfig cfg;
  cfg.n = static_cast<int>(c.n);
  cfg.m_samples = c.samples;
  cfg.master_seed = c.seed;
  cfg.domains = doms;
  cfg.eig_residual_tol = e.eig_tol;
  cfg.residual_stride = e.residual_stride;
  cfg.threads = ginoe::resolve_threads(c.threads);
  cfg.delta_min = c.delta_min;
  return ginoe::count_statistics(cfg);
}

int cmd_sample(const Common& c, const EnsembleOpts& e) {
  const auto doms = load_domains(c);
  const auto res = run_ensemble(c, e, doms);
  json cfg = base_config("sample", c, doms);
  cfg["samples"] = c.samples;
  const json summary = ginoe::io::to_json(res.summary);
  emit("sample", c, cfg, summary,
       {{"counts.csv", [&](const fs::path& p) { ginoe::io::write_counts_csv(p, res, static_cast<int>(c.n)); }},
        {"summary.json", [&](const fs::path& p) { ginoe::io::write_json(p, summary); }}});
  return 0;
}

json clt_json(const Common& c, const ginoe::EnsembleResult& res, const std::vector<ginoe::PolygonDomain>& doms) {
  json out = json::array();
  const double rn = std::sqrt(static_cast<double>(c.n));
  for (std::size_t d = 0; d < doms.size(); ++d) {
    const auto& s = res.summary.domains[d];
    std::vector<double> x;
    for (const auto& r : res.records) {
      if (!r.failed) x.push_back(r.counts[d]);
    }
    const auto ks = ginoe::normality_ks(x);
    const double pred = ginoe::clt_prediction(doms[d]);
    out.push_back({{"domain_hash", s.domain_id},
                   {"N", c.n},
                   {"samples", x.size()},
                   {"seed", c.seed},
                   {"mean", s.mean},
                   {"mean_leading", static_cast<double>(c.n) / std::numbers::pi * ginoe::area(doms[d])},
                   {"variance", s.variance},
                   {"variance_se", s.stats.kappa_se[1]},
                   {"variance_over_sqrtN", s.variance / rn},
                   {"variance_over_sqrtN_se", s.stats.kappa_se[1] / rn},
                   {"prediction_constant", pred},
                   {"prediction_variance", pred * rn},
                   {"relative_deviation", s.variance / rn / pred - 1.0},
                   {"skewness", s.stats.skewness},
                   {"skewness_se", s.stats.skewness_se},
                   {"excess_kurtosis", s.stats.excess_kurtosis},
                   {"excess_kurtosis_se", s.stats.excess_kurtosis_se},
                   {"ks_statistic", ks.statistic},
                   {"ks_critical_1pct", ks.critical_1pct}});
  }
  return {{"domains", out}, {"failures", res.summary.failures}, {"mean_real_eigs", res.summary.mean_real_eigs}};
}

int cmd_clt(const Common& c, const EnsembleOpts& e) {
  const auto doms = load_domains(c);
  const auto res = run_ensemble(c, e, doms);
  json cfg = base_config("clt", c, doms);
  cfg["samples"] = c.samples;
  const json summary = clt_json(c, res, doms);
  emit("clt", c, cfg, summary,
       {{"counts.csv", [&](const fs::path& p) { ginoe::io::write_counts_csv(p, res, static_cast<int>(c.n)); }},
        {"clt.json", [&](const fs::path& p) { ginoe::io::write_json(p, summary); }}});
  return 0;
}

// ---------------------------------------------------------------------------
// quadrature commands

json scalar_report(const Common& c, const ginoe::PolygonDomain& d, double value, double se) {
  return {{"value", value}, {"std_error", se}, {"N", c.n}, {"domain_hash", ginoe::domain_hash(d)}, {"seed", c.seed}};
}

int cmd_variance(const Common& c, const QuadOpts& q) {
  const auto d = load_domains(c).front();
  const auto spec = make_spec(c, q);
  const auto v = ginoe::variance_integral(d, c.n, spec);
  const double rn = std::sqrt(static_cast<double>(c.n));
  json out = scalar_report(c, d, v.value, v.error);
  out["quadrature"] = v.value;
  out["quadrature_over_sqrtN"] = v.value / rn;
  out["prediction"] = ginoe::clt_prediction(d) * rn;
  out["prediction_constant"] = ginoe::clt_prediction(d);
  out["boundary_integral"] = v.boundary_integral;
  emit("variance", c, base_config("variance", c, {d}), out,
       {{"variance.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}});
  return 0;
}

int cmd_intensity(const Common& c, const QuadOpts& q) {
  const auto d = load_domains(c).front();
  const auto r = ginoe::intensity_integral(d, c.n, make_spec(c, q));
  json out = scalar_report(c, d, r.value, r.error);
  out["leading"] = static_cast<double>(c.n) / std::numbers::pi * ginoe::area(d);
  out["defect"] = r.defect;
  out["backend"] = ginoe::to_string(ginoe::kernel_options(make_spec(c, q), c.n).backend);
  emit("intensity", c, base_config("intensity", c, {d}), out,
       {{"intensity.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}});
  return 0;
}

int cmd_rk(const Common& c, const QuadOpts& q, int m, bool i0) {
  const auto d = load_domains(c).front();
  const auto spec = make_spec(c, q);
  const auto r = i0 ? ginoe::i0_check(d, m, c.n, spec) : ginoe::r_m_integral(d, m, c.n, spec);
  json out = scalar_report(c, d, r.value.real(), r.std_error_re);
  out["imag"] = r.value.imag();
  out["imag_std_error"] = r.std_error_im;
  out["k"] = m;
  out["quantity"] = i0 ? "I0_ratio" : "R_k";
  if (!i0) out["leading"] = static_cast<double>(c.n) / std::numbers::pi * ginoe::area(d);
  emit("rk", c, base_config("rk", c, {d}), out, {{"rk.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}});
  return 0;
}

int cmd_lin_limit(const Common& c, const QuadOpts& q, const std::string& profile) {
  const auto d = load_domains(c).front();
  ginoe::RadialProfile prof = profile == "gaussian"    ? ginoe::RadialProfile::gaussian()
                              : profile == "indicator" ? ginoe::RadialProfile::indicator()
                                                       : throw ginoe::ProfileError("unknown profile '" + profile + "'");
  const auto r = ginoe::lin_limit(d, prof, c.n, make_spec(c, q));
  json out = scalar_report(c, d, r.value, r.std_error);
  out["profile"] = profile;
  out["normalization"] = prof.scale();
  out["perimeter"] = ginoe::perimeter(d);
  emit("lin-limit", c, base_config("lin-limit", c, {d}), out,
       {{"lin_limit.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}});
  return 0;
}

int cmd_kernel(const Common& c, const std::string& zs, const std::string& ws, bool scaled, const std::string& backend) {
  const ginoe::cplx z = parse_complex(zs), w = parse_complex(ws);
  ginoe::KernelOptions ko;
  if (backend == "asymptotic") ko.backend = ginoe::Backend::asymptotic;
  else if (backend != "exact") throw ginoe::ValidationError("unknown backend '" + backend + "'");
  const ginoe::cplx s = scaled ? ginoe::s_kernel_scaled(z, w, c.n, ko) : ginoe::s_kernel(z, w, c.n, ko);
  const auto blk = scaled ? ginoe::kernel_block_scaled(z, w, c.n) : ginoe::kernel_block(z, w, c.n);
  json out = {{"N", c.n},          {"z", complex_json(z)},      {"w", complex_json(w)},
              {"scaled", scaled},  {"backend", backend},        {"S", complex_json(s)},
              {"S_exact", complex_json(blk.s_fwd)}, {"S_rev", complex_json(blk.s_rev)},
              {"D", complex_json(blk.d)},           {"I", complex_json(blk.i)}};
  const std::vector<ginoe::cplx> pts{z, w};
  if (z != w && z.imag() != 0.0 && w.imag() != 0.0) {
    out["rho2"] = ginoe::rho_k(pts, c.n, scaled);
    if (scaled) out["rho2_determinantal"] = complex_json(ginoe::rho_k_determinantal(pts, c.n));
  }
  if (scaled) out["intensity_z"] = ginoe::scaled_intensity(z, c.n);
  emit("kernel", c, json{{"command", "kernel"}, {"n", c.n}, {"z", zs}, {"w", ws}, {"scaled", scaled}}, out,
       {{"kernel.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}});
  return 0;
}

// ---------------------------------------------------------------------------
// report

std::vector<double> read_counts(const std::string& path, const std::string& domain_id) {
  std::ifstream in(path);
  if (!in) throw ginoe::ValidationError("cannot open counts file " + path);
  std::string line;
  std::getline(in, line);
  if (line != "sample_index,seed,n,domain_id,count") throw ginoe::ValidationError("unexpected counts CSV header");
  std::vector<double> x;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    if (f.size() != 5) throw ginoe::ValidationError("malformed counts CSV row: " + line);
    if (f[3] == domain_id) x.push_back(std::stod(f[4]));
  }
  return x;
}

int cmd_report(const Common& c, const QuadOpts& q, const std::string& counts, int n_max) {
  const auto d = load_domains(c).front();
  const auto spec = make_spec(c, q);
  const int quad_max = std::min(n_max, 3);
  std::vector<ginoe::CumulantReport> reps;
  if (!counts.empty()) {
    const auto x = read_counts(counts, ginoe::domain_hash(d));
    reps.push_back(ginoe::empirical_cumulant_report(x, n_max, c.n, ginoe::domain_hash(d)));
  }
  reps.push_back(ginoe::quadrature_cumulant_report(d, quad_max, c.n, spec));
  reps.push_back(ginoe::prediction_report(d, n_max, c.n));
  json out = {{"N", c.n}, {"domain_hash", ginoe::domain_hash(d)}, {"seed", c.seed}, {"reports", json::array()}};
  for (const auto& r : reps) out["reports"].push_back(ginoe::io::to_json(r));
  auto write_csv = [&](const fs::path& p) {
    std::ofstream o(p, std::ios::binary);
    o.imbue(std::locale::classic());
    o << "order";
    for (const auto& r : reps) o << ',' << ginoe::to_string(r.source) << ',' << ginoe::to_string(r.source) << "_se";
    o << '\n';
    o.precision(17);
    for (int k = 0; k < n_max; ++k) {
      o << k + 1;
      for (const auto& r : reps) {
        if (k < static_cast<int>(r.cumulants.size())) {
          o << ',' << r.cumulants[static_cast<std::size_t>(k)] << ',' << r.cumulant_errors[static_cast<std::size_t>(k)];
        } else {
          o << ",,";
        }
      }
      o << '\n';
    }
  };
  json cfg = base_config("report", c, {d});
  cfg["counts"] = counts;
  cfg["n_max"] = n_max;
  emit("report", c, cfg, out,
       {{"report.json", [&](const fs::path& p) { ginoe::io::write_json(p, out); }}, {"report.csv", write_csv}});
  return 0;
}

// ---------------------------------------------------------------------------
// selftest

int cmd_selftest(const Common& c) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    if (!ok) ++failures;
  };
  const auto sq = reference_square();
  const unsigned threads = ginoe::resolve_threads(c.threads);

  {  // Pf^2 = det on random skew matrices
    const ginoe::rng::CounterStream s(c.seed);
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
      const int dim = 2 * (1 + t % 6);
      ginoe::CMatrix m = ginoe::CMatrix::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
          m(i, j) = s.complex_normal(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i * 64 + j), 1.0);
          m(j, i) = -m(i, j);
        }
      }
      const ginoe::cplx pf = ginoe::pfaffian(ginoe::SkewMatrix(m));
      const ginoe::cplx det = m.determinant();
      worst = std::max(worst, std::abs(pf * pf - det) / std::abs(det));
    }
    check("pfaffian_squared_equals_det", worst < 1e-8, "max rel " + std::to_string(worst));
  }
  {  // Poisson factorial moments
    std::vector<double> j;
    for (int k = 1; k <= 6; ++k) j.push_back(std::pow(2.5, k));
    double worst = 0.0;
    for (double k : ginoe::factorial_moments_to_cumulants(j)) worst = std::max(worst, std::abs(k - 2.5));
    check("poisson_cumulants", worst < 1e-9, "max abs " + std::to_string(worst));
  }
  {
    const std::vector<double> r(6, 1.7);
    const auto k = ginoe::pseudo_cumulants_from_R(r);
    double worst = 0.0;
    for (std::size_t i = 1; i < k.size(); ++i) worst = std::max(worst, std::abs(k[i]));
    check("constant_R_pseudo_cumulants_vanish", worst < 1e-10, "max abs " + std::to_string(worst));
  }
  {
    const double e = std::abs(ginoe::erfc(1.0) - 0.15729920705028513066);
    check("erfc_at_one", e < 1e-15, "abs " + std::to_string(e));
  }
  {  // s_{N+1} - s_N = e^{-z} z^N / N!
    const ginoe::cplx z(30.0, 20.0);
    const long n = 40;
    const ginoe::cplx lhs = ginoe::s_N_exact(z, n + 1).value - ginoe::s_N_exact(z, n).value;
    const ginoe::cplx rhs = std::exp(static_cast<double>(n) * std::log(z) - ginoe::log_factorial(n) - z);
    const double e = std::abs(lhs - rhs) / std::abs(rhs);
    check("s_N_recurrence", e < 1e-10, "rel " + std::to_string(e));
  }
  {
    ginoe::QuadratureSpec spec;
    spec.threads = threads;
    const auto r = ginoe::intensity_integral(sq, 400, spec);
    const double target = -0.4 * (1.0 / 0.3 - 1.0 / 0.7) / (4.0 * std::numbers::pi);
    check("intensity_defect", std::abs(r.defect / target - 1.0) < 0.05,
          "defect " + std::to_string(r.defect) + " target " + std::to_string(target));
  }
  {  // variance quadrature against the closed rectangle formula
    ginoe::QuadratureSpec spec;
    spec.threads = threads;
    const long n = 256;
    const double nn = n, l = 0.4;
    const double f = l * std::sqrt(std::numbers::pi / nn) * std::erf(l * std::sqrt(nn)) - (1 - std::exp(-nn * l * l)) / nn;
    const double exact = nn * nn / (std::numbers::pi * std::numbers::pi) * (l * l * std::numbers::pi / nn - f * f);
    const double v = ginoe::variance_integral(sq, n, spec).value;
    check("variance_rectangle_closed_form", std::abs(v / exact - 1.0) < 1e-4,
          "quadrature " + std::to_string(v) + " exact " + std::to_string(exact));
  }
  {
    const ginoe::rng::CounterStream s(c.seed + 1);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto u = s.uniforms(static_cast<std::uint64_t>(t), 0), v = s.uniforms(static_cast<std::uint64_t>(t), 1);
      const std::vector<ginoe::cplx> pts{{0.1 + 0.4 * u[0], 0.3 + 0.4 * u[1]}, {0.1 + 0.4 * v[0], 0.3 + 0.4 * v[1]}};
      const double pf = ginoe::rho_k(pts, 100, true);
      const double det = ginoe::rho_k_determinantal(pts, 100).real();
      worst = std::max(worst, std::abs(pf - det) / std::abs(pf));
    }
    check("rho2_pfaffian_vs_determinant", worst < 1e-6, "max rel " + std::to_string(worst));
  }
  {
    ginoe::QuadratureSpec spec;
    spec.threads = threads;
    spec.samples = 40000;
    spec.seed = c.seed;
    const auto r = ginoe::i0_check(sq, 2, 256, spec);
    check("i0_ratio_k2", std::abs(r.value.real() - 1.0) < 3.0 * r.std_error_re + 1e-12,
          "ratio " + std::to_string(r.value.real()) + " se " + std::to_string(r.std_error_re));
  }
  {
    auto g = ginoe::sample_ginoe(50, c.seed);
    for (double& v : g.data) v /= std::sqrt(50.0);
    const auto eig = ginoe::spectrum(g, {1e-10, true, c.seed});
    std::vector<ginoe::cplx> conj;
    for (const auto& l : eig) conj.push_back(std::conj(l));
    auto key = [](const ginoe::cplx& a, const ginoe::cplx& b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    };
    auto a = eig;
    std::sort(a.begin(), a.end(), key);
    std::sort(conj.begin(), conj.end(), key);
    check("spectrum_conjugation_closed", a == conj, std::to_string(eig.size()) + " eigenvalues");
  }
  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED: " + std::to_string(failures) + " checks")
            << '\n';
  return failures == 0 ? 0 : kExitTolerance;
}

void add_common(CLI::App* sub, Common& c, bool ensemble) {
  sub->add_option("--n", c.n, "matrix dimension / N")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--domain", c.domains, "polygon JSON file (default: reference square)");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--threads", c.threads, "worker threads (default GINOE_THREADS or hardware)");
  sub->add_option("--delta-min", c.delta_min, "admissibility margin");
  if (ensemble) sub->add_option("--samples", c.samples, "number of matrices")->check(CLI::PositiveNumber);
}

void add_quad(CLI::App* sub, QuadOpts& q) {
  sub->add_option("--resolution", q.resolution, "grid cells per unit length (0 = automatic)");
  sub->add_option("--error-target", q.error_target, "maximum accepted refinement difference (0 = off)");
  sub->add_option("--mc-samples", q.mc_samples, "Monte Carlo samples");
  sub->add_option("--order", q.order, "Gauss-Legendre points per direction")->check(CLI::Range(1, 32));
  sub->add_option("--backend", q.backend, "kernel backend: auto, exact or asymptotic");
  sub->add_option("--asymptotic-above", q.asymptotic_above, "auto backend switches to asymptotic above this N");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real Ginibre eigenvalue counting statistics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file with option defaults");

  Common c;
  QuadOpts q;
  EnsembleOpts e;
  int m = 2;
  bool i0 = false;
  int n_max = 4;
  std::string profile = "gaussian", zs = "0.3,0.5", ws = "0.35,0.45", backend = "exact", counts;
  bool scaled = true;

  auto* sample = app.add_subcommand("sample", "sample matrices and write per-sample counts");
  add_common(sample, c, true);
  auto* clt = app.add_subcommand("clt", "ensemble run compared with the limiting variance");
  add_common(clt, c, true);
  for (auto* s : {sample, clt}) {
    s->add_option("--eig-tol", e.eig_tol, "eigenpair residual tolerance relative to |W|");
    s->add_option("--residual-stride", e.residual_stride, "check residuals on every k-th sample");
  }
  auto* variance = app.add_subcommand("variance", "boundary-layer variance integral");
  add_common(variance, c, false);
  add_quad(variance, q);
  auto* intensity = app.add_subcommand("intensity", "first-intensity integral over the domain");
  add_common(intensity, c, false);
  add_quad(intensity, q);
  auto* rk = app.add_subcommand("rk", "cyclic kernel integral R_k (or the I0 ratio)");
  add_common(rk, c, false);
  add_quad(rk, q);
  rk->add_option("--k", m, "chain length")->check(CLI::Range(1, 4));
  rk->add_flag("--i0", i0, "run the I0 ratio check instead");
  auto* lin = app.add_subcommand("lin-limit", "boundary-layer limit for a radial profile");
  add_common(lin, c, false);
  add_quad(lin, q);
  lin->add_option("--profile", profile, "gaussian or indicator");
  auto* kernel = app.add_subcommand("kernel", "evaluate kernel blocks at a pair of points");
  add_common(kernel, c, false);
  kernel->add_option("--z", zs, "first point re,im");
  kernel->add_option("--w", ws, "second point re,im");
  kernel->add_option("--scaled", scaled, "points on the unit-disk scale (true/false)");
  kernel->add_option("--backend", backend, "exact or asymptotic");
  auto* report = app.add_subcommand("report", "compare empirical, quadrature and predicted cumulants");
  add_common(report, c, false);
  add_quad(report, q);
  report->add_option("--counts", counts, "counts CSV from sample/clt");
  report->add_option("--nmax", n_max, "highest cumulant order")->check(CLI::Range(1, 4));
  auto* selftest = app.add_subcommand("selftest", "quick invariant suite");
  selftest->add_option("--seed", c.seed, "seed");
  selftest->add_option("--threads", c.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitValidation;
  }

  try {
    if (*sample) return cmd_sample(c, e);
    if (*clt) return cmd_clt(c, e);
    if (*variance) return cmd_variance(c, q);
    if (*intensity) return cmd_intensity(c, q);
    if (*rk) return cmd_rk(c, q, m, i0);
    if (*lin) return cmd_lin_limit(c, q, profile);
    if (*kernel) return cmd_kernel(c, zs, ws, scaled, backend);
    if (*report) return cmd_report(c, q, counts, n_max);
    if (*selftest) return cmd_selftest(c);
  } catch (const ginoe::ValidationError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitValidation;
  } catch (const ginoe::AccuracyError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitTolerance;
  } catch (const ginoe::SolverError& ex) {
    std::cerr << "error: " << ex.what() << " (seed " << ex.seed() << ")\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
