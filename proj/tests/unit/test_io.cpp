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
#include <rapidjson/document.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ginoe/ginoe.hpp"

namespace fs = std::filesystem;
using ginoe::io::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Empty string when `doc` validates against schemas/<schema>.
std::string validate(const std::string& schema, const std::string& doc) {
  rapidjson::Document sd;
  sd.Parse(slurp(fs::path(GINOE_SOURCE_DIR) / "schemas" / schema).c_str());
  if (sd.HasParseError()) return "schema " + schema + " does not parse";
  const rapidjson::SchemaDocument sdoc(sd);
  rapidjson::Document d;
  d.Parse(doc.c_str());
  if (d.HasParseError()) return "document does not parse";
  rapidjson::SchemaValidator v(sdoc);
  if (d.Accept(v)) return "";
  rapidjson::StringBuffer sb, kb;
  v.GetInvalidSchemaPointer().StringifyUriFragment(sb);
  v.GetInvalidDocumentPointer().StringifyUriFragment(kb);
  return std::string("keyword ") + v.GetInvalidSchemaKeyword() + " at schema " + sb.GetString() + ", document " +
         kb.GetString();
}

// Runs the CLI with `args`; returns the exit status.
int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(GINOE_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ginoe_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Io, DomainRoundTripAndErrors) {
  const auto d = ginoe::io::load_domain(fs::path(GINOE_SOURCE_DIR) / "data/domains/square.json");
  EXPECT_EQ(ginoe::domain_hash(d), ginoe::domain_hash(ginoe::PolygonDomain::rectangle(0.1, 0.3, 0.5, 0.7)));
  EXPECT_EQ(validate("domain.schema.json", ginoe::io::domain_to_json(d).dump()), "");
  const auto back = ginoe::io::domain_from_json(ginoe::io::domain_to_json(d));
  EXPECT_EQ(ginoe::domain_hash(back), ginoe::domain_hash(d));
  EXPECT_THROW(ginoe::io::domain_from_json(json::parse(R"({"verts": []})")), ginoe::InvalidDomain);
  EXPECT_THROW(ginoe::io::domain_from_json(json::parse(R"({"vertices": [[0, 0], [1]]})")), ginoe::InvalidDomain);
  EXPECT_THROW(ginoe::io::domain_from_json(json::parse(R"({"vertices": [[0, 0], [1, 0], [2, 0]]})")),
               ginoe::InvalidDomain);
  EXPECT_THROW(ginoe::io::load_domain("/nonexistent/domain.json"), ginoe::ValidationError);
}

TEST(Io, ConfigHashIgnoresKeyOrder) {
  const json a = json::parse(R"({"n": 256, "seed": 7, "domains": [{"vertices": [[0.1, 0.3]]}]})");
  const json b = json::parse(R"({"seed": 7, "domains": [{"vertices": [[0.1, 0.3]]}], "n": 256})");
  EXPECT_EQ(ginoe::io::config_hash(a), ginoe::io::config_hash(b));
  const json c = json::parse(R"({"seed": 8, "domains": [{"vertices": [[0.1, 0.3]]}], "n": 256})");
  EXPECT_NE(ginoe::io::config_hash(a), ginoe::io::config_hash(c));
  EXPECT_EQ(ginoe::io::config_hash(a).size(), 16u);
}

TEST(Io, LibraryJsonMatchesSchemas) {
  ginoe::io::RunManifest m;
  m.command = "variance";
  m.config_hash = ginoe::io::config_hash(json::object());
  m.outputs = {"a.json"};
  EXPECT_EQ(validate("manifest.schema.json", ginoe::io::to_json(m).dump()), "");
  m.command = "bogus";
  EXPECT_NE(validate("manifest.schema.json", ginoe::io::to_json(m).dump()), "");

  const auto sq = ginoe::PolygonDomain::rectangle(0.1, 0.3, 0.5, 0.7);
  json rep = {{"N", 64}, {"domain_hash", ginoe::domain_hash(sq)}, {"seed", 1}, {"reports", json::array()}};
  rep["reports"].push_back(ginoe::io::to_json(ginoe::prediction_report(sq, 4, 64)));
  EXPECT_EQ(validate("cumulant_report.schema.json", rep.dump()), "");
}

TEST(Io, CountsCsvFormat) {
  ginoe::EnsembleConfig cfg;
  cfg.n = 32;
  cfg.m_samples = 3;
  cfg.master_seed = 5;
  cfg.domains = {ginoe::PolygonDomain::rectangle(0.1, 0.3, 0.5, 0.7)};
  const auto res = ginoe::count_statistics(cfg);
  const fs::path dir = scratch("csv");
  ginoe::io::write_counts_csv(dir / "counts.csv", res, 32);
  const std::string text = slurp(dir / "counts.csv");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "sample_index,seed,n,domain_id,count");
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string f[5];
    for (auto& x : f) std::getline(ls, x, ',');
    EXPECT_EQ(std::stoul(f[0]), static_cast<unsigned long>(rows));
    EXPECT_EQ(std::stoull(f[1]), ginoe::rng::derive_seed(5, static_cast<std::uint64_t>(rows)));
    EXPECT_EQ(f[2], "32");
    EXPECT_EQ(f[3], res.summary.domains[0].domain_id);
    EXPECT_EQ(std::stoi(f[4]), res.records[static_cast<std::size_t>(rows)].counts[0]);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  fs::remove_all(dir);
}

TEST(Cli, EveryReportValidates) {
  const fs::path dir = scratch("cli");
  const std::string dom = " --domain " + (fs::path(GINOE_SOURCE_DIR) / "data/domains/square.json").string();
  struct Case {
    std::string name, args, file, schema;
  };
  const Case cases[] = {
      {"sample", "sample --n 48 --samples 20 --seed 3", "summary.json", "ensemble_summary.schema.json"},
      {"clt", "clt --n 48 --samples 20 --seed 3", "clt.json", "clt.schema.json"},
      {"variance", "variance --n 256", "variance.json", "scalar_report.schema.json"},
      {"intensity", "intensity --n 100", "intensity.json", "scalar_report.schema.json"},
      {"rk", "rk --n 100 --k 2 --mc-samples 5000", "rk.json", "scalar_report.schema.json"},
      {"i0", "rk --n 100 --k 3 --i0 --mc-samples 5000", "rk.json", "scalar_report.schema.json"},
      {"lin", "lin-limit --n 400 --profile indicator", "lin_limit.json", "scalar_report.schema.json"},
      {"kernel", "kernel --n 50 --z 0.3,0.5 --w 0.32,0.47", "kernel.json", "kernel.schema.json"},
  };
  for (const auto& c : cases) {
    const fs::path out = dir / c.name;
    const std::string extra = c.name == "kernel" ? "" : dom;
    ASSERT_EQ(run_cli(c.args + extra + " --out " + out.string(), dir / (c.name + ".log")), 0)
        << c.args << "\n" << slurp(dir / (c.name + ".log"));
    EXPECT_EQ(validate(c.schema, slurp(out / c.file)), "") << c.name;
    const std::string manifest = slurp(out / "manifest.json");
    EXPECT_EQ(validate("manifest.schema.json", manifest), "") << c.name;
    // Every output is listed and exists.
    for (const auto& p : json::parse(manifest)["outputs"]) EXPECT_TRUE(fs::exists(p.get<std::string>())) << p;
  }
  // report consumes the clt counts.
  const fs::path rep = dir / "report";
  ASSERT_EQ(run_cli("report --n 48 --nmax 2 --mc-samples 5000 --counts " + (dir / "clt" / "counts.csv").string() +
                        " --out " + rep.string(),
                    dir / "report.log"),
            2)
      << "20 samples are below the 200 needed for n_max = 2";
  ASSERT_EQ(run_cli("sample --n 48 --samples 200 --seed 3 --out " + (dir / "s200").string(), dir / "s200.log"), 0);
  ASSERT_EQ(run_cli("report --n 48 --nmax 2 --mc-samples 5000 --counts " + (dir / "s200" / "counts.csv").string() +
                        " --out " + rep.string(),
                    dir / "report.log"),
            0)
      << slurp(dir / "report.log");
  EXPECT_EQ(validate("cumulant_report.schema.json", slurp(rep / "report.json")), "");
  EXPECT_EQ(slurp(rep / "report.csv").substr(0, 6), "order,");
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit");
  EXPECT_EQ(run_cli("variance --bogus", dir / "a.log"), 2);
  EXPECT_EQ(run_cli("nosuchcommand", dir / "b.log"), 2);
  EXPECT_EQ(run_cli("variance --domain /nonexistent.json", dir / "c.log"), 2);
  std::ofstream(dir / "bad.json") << R"({"vertices": [[0.9, 0.01], [0.99, 0.01], [0.99, 0.1], [0.9, 0.1]]})";
  EXPECT_EQ(run_cli("variance --domain " + (dir / "bad.json").string(), dir / "d.log"), 2);
  EXPECT_NE(slurp(dir / "d.log").find("admissib"), std::string::npos) << slurp(dir / "d.log");
  EXPECT_EQ(run_cli("intensity --n 400 --resolution 2 --error-target 1e-14", dir / "e.log"), 3);
  // Options can come from a TOML file.
  std::ofstream(dir / "cfg.toml") << "[intensity]\nn = 100\n";
  EXPECT_EQ(run_cli("--config " + (dir / "cfg.toml").string() + " intensity --out " + (dir / "t").string(),
                    dir / "f.log"),
            0)
      << slurp(dir / "f.log");
  EXPECT_EQ(json::parse(slurp(dir / "t" / "intensity.json"))["N"], 100);
  fs::remove_all(dir);
}
