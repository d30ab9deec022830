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

// JSON and CSV serialization: domain files, reports, run manifests.

#ifndef GINOE_IO_HPP
#define GINOE_IO_HPP

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "ginoe/cumulants.hpp"
#include "ginoe/ensemble.hpp"
#include "ginoe/errors.hpp"
#include "ginoe/geometry.hpp"
#include "json.hpp"

#ifndef GINOE_BUILD_ID
#define GINOE_BUILD_ID "unknown"
#endif

namespace ginoe::io {

using json = nlohmann::json;

// {"vertices": [[x0, y0], [x1, y1], ...]}
inline PolygonDomain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw InvalidDomain("domain JSON needs a \"vertices\" array");
  }
  std::vector<Point> v;
  for (const auto& p : j["vertices"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InvalidDomain("each vertex must be a [re, im] pair of numbers");
    }
    v.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return PolygonDomain::from_vertices(std::move(v));
}

inline json domain_to_json(const PolygonDomain& d) {
  json v = json::array();
  for (const Point& p : d.vertices()) v.push_back({p.real(), p.imag()});
  return {{"vertices", v}};
}

inline PolygonDomain load_domain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open domain file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidDomain("domain file " + path.string() + " is not valid JSON: " + e.what());
  }
  return domain_from_json(j);
}

// FNV-1a of the compact dump; object keys are kept sorted by json itself,
// so the hash does not depend on insertion order.
inline std::string config_hash(const json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string build_id = GINOE_BUILD_ID;
  std::string timestamp = utc_timestamp();
  std::vector<std::string> outputs;
};

inline json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"config_hash", m.config_hash},
          {"git_or_build_id", m.build_id},
          {"timestamp", m.timestamp},
          {"outputs", m.outputs}};
}

inline json to_json(const CumulantReport& r) {
  return {{"n_max", r.n_max},
          {"source", to_string(r.source)},
          {"N", r.n},
          {"domain_hash", r.domain_hash},
          {"factorial_moments", r.factorial_moments},
          {"cumulants", r.cumulants},
          {"cumulant_errors", r.cumulant_errors},
          {"standardized_cumulants", r.standardized()}};
}

inline json to_json(const KStatistics& k) {
  return {{"kappa", k.kappa},
          {"kappa_se", k.kappa_se},
          {"skewness", k.skewness},
          {"skewness_se", k.skewness_se},
          {"excess_kurtosis", k.excess_kurtosis},
          {"excess_kurtosis_se", k.excess_kurtosis_se},
          {"m", k.m}};
}

inline json to_json(const EnsembleSummary& s) {
  json doms = json::array();
  for (const auto& d : s.domains) {
    doms.push_back({{"domain_id", d.domain_id},
                    {"mean", d.mean},
                    {"variance", d.variance},
                    {"k_statistics", to_json(d.stats)},
                    {"factorial_moments", d.factorial_moments}});
  }
  return {{"domains", doms}, {"failures", s.failures}, {"mean_real_eigs", s.mean_real_eigs}};
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// sample_index,seed,n,domain_id,count; one row per sample and domain, failed
// samples omitted.
inline void write_counts_csv(const std::filesystem::path& path, const EnsembleResult& res, int n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.imbue(std::locale::classic());
  out << "sample_index,seed,n,domain_id,count\n";
  for (const auto& r : res.records) {
    if (r.failed) continue;
    for (std::size_t d = 0; d < r.counts.size(); ++d) {
      out << r.sample_index << ',' << r.seed << ',' << n << ',' << res.summary.domains[d].domain_id << ','
          << r.counts[d] << '\n';
    }
  }
}

}  // namespace ginoe::io

#endif  // GINOE_IO_HPP
