// Copyright 2026 The causal-rules Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "report.hpp"

namespace causal_rules::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Removes the wall-time fields so artifacts can be compared byte for byte.
std::string without_wall_time(const std::string& text) {
  static const std::regex field(R"re(("wall_seconds":\s*)[-+0-9.eE]+)re");
  return std::regex_replace(text, field, "$010");
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("causal_rules_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                  ->current_test_info()
                                                  ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  /// Scenario III, n = 5000, seed 7, written to dir_/sim.
  void simulate() {
    const auto r = invoke({"simulate", "--scenario", "3", "--n", "5000", "--seed", "7",
                           "--emit-csv", (dir_ / "sim").string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  std::string data() const { return (dir_ / "sim" / "data.csv").string(); }
  std::string roles() const { return (dir_ / "sim" / "roles.json").string(); }

  fs::path dir_;
};

TEST_F(CliTest, SimulateEmitsCsvRolesAndManifest) {
  simulate();
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "data.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sim" / "roles.json"));
  const json manifest = json::parse(slurp(dir_ / "sim" / "manifest.json"));
  EXPECT_EQ(manifest["subcommand"], "simulate");
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_TRUE(manifest["dataset_fingerprint"].is_string());
  EXPECT_TRUE(manifest.contains("version"));
  EXPECT_EQ(manifest["config"]["n"], "5000");

  const auto load = invoke({"load", "--data", data(), "--roles", roles()});
  ASSERT_EQ(load.code, 0) << load.err;
  const json summary = json::parse(load.out);
  EXPECT_EQ(summary["rows"], 5000);
  EXPECT_EQ(summary["columns"], 3);
  EXPECT_EQ(summary["manifest"]["dataset_fingerprint"], manifest["dataset_fingerprint"]);
}

TEST_F(CliTest, SimulateRequiresSeed) {
  const auto r = invoke({"simulate", "--scenario", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
}

TEST_F(CliTest, InvalidMinSupportNamesTheFlag) {
  simulate();
  const auto r = invoke({"mine", "--data", data(), "--roles", roles(), "--min-support", "1.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--min-support"), std::string::npos) << r.err;
  const auto tiny =
      invoke({"mine", "--data", data(), "--roles", roles(), "--min-support", "0.00001"});
  EXPECT_EQ(tiny.code, 1);
  EXPECT_NE(tiny.err.find("--min-support"), std::string::npos) << tiny.err;
}

TEST_F(CliTest, UserErrors) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"load", "--data", "/nonexistent.csv", "--roles", "/nonexistent.json"}).code,
            1);
  simulate();
  const auto bad_item =
      invoke({"estimate", "--data", data(), "--roles", roles(), "--intervention", "Q"});
  EXPECT_EQ(bad_item.code, 1);
  EXPECT_NE(bad_item.err.find("--intervention"), std::string::npos);
  const auto psm = invoke({"estimate", "--data", data(), "--roles", roles(), "--method", "psm"});
  EXPECT_EQ(psm.code, 1);
  EXPECT_NE(psm.err.find("--seed"), std::string::npos);

  // A non-binary cell.
  std::ofstream(dir_ / "bad.csv") << "Z,X,Y\n0,1,0\n1,2,0\n";
  const auto cell = invoke({"load", "--data", (dir_ / "bad.csv").string(), "--roles", roles()});
  EXPECT_EQ(cell.code, 1);
  EXPECT_NE(cell.err.find("row 2"), std::string::npos) << cell.err;
}

TEST_F(CliTest, HelpAndVersionSucceed) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(v.out.empty());
}

TEST_F(CliTest, ClassifyReport) {
  simulate();
  const auto r = invoke({"classify", "--data", data(), "--roles", roles(), "--alpha", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["items"]["Z"]["category"], "Z_confounder");
  EXPECT_TRUE(j["items"]["Z"].contains("p_assoc_x"));
  EXPECT_TRUE(j["items"]["Z"].contains("p_assoc_y_given_x"));
  EXPECT_EQ(j["intervention"], "X");
}

TEST_F(CliTest, EstimateAllMethodsAndBootstrap) {
  simulate();
  const auto r = invoke({"estimate", "--data", data(), "--roles", roles(), "--method", "all",
                         "--seed", "3", "--bootstrap", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["estimates"].size(), 6U);
  for (const auto& e : j["estimates"]) {
    for (const char* key : {"method", "att", "n_treated", "n_untreated", "estimable",
                            "diagnostics", "bootstrap"}) {
      EXPECT_TRUE(e.contains(key)) << key;
    }
    EXPECT_EQ(e["bootstrap"]["replicates"], 20);
  }
}

TEST_F(CliTest, NumbersHaveSixSignificantDigits) {
  simulate();
  const auto r = invoke({"estimate", "--data", data(), "--roles", roles(), "--method", "cc"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double att = json::parse(r.out)["att"].get<double>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", att);
  EXPECT_EQ(att, std::strtod(buf, nullptr));
}

TEST_F(CliTest, PrintedFloatsStayShort) {
  simulate();
  const auto r = invoke({"estimate", "--data", data(), "--roles", roles(), "--method", "cm",
                         "--seed", "3", "--bootstrap", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  static const std::regex literal(R"re([-+]?\d+\.\d+)re");
  std::size_t seen = 0;
  for (auto it = std::sregex_iterator(r.out.begin(), r.out.end(), literal);
       it != std::sregex_iterator(); ++it) {
    std::string digits;
    for (char c : it->str()) {
      if (std::isdigit(static_cast<unsigned char>(c)) && !(digits.empty() && c == '0')) {
        digits += c;
      }
    }
    EXPECT_LE(digits.size(), 6U) << it->str();
    ++seen;
  }
  EXPECT_GT(seen, 200U);
}

TEST(JsonText, MatchesDumpLayout) {
  const json doc = {{"b", {1, 2, json::array()}},
                    {"a", {{"x", "text"}, {"y", nullptr}, {"z", json::object()}}},
                    {"c", true},
                    {"d", 0.5},
                    {"e", 62.0}};
  EXPECT_EQ(causal_rules::cli::to_text(doc), doc.dump());
  EXPECT_EQ(causal_rules::cli::to_text(doc, 2), doc.dump(2));
  EXPECT_EQ(causal_rules::cli::to_text(json(-0.219763)), "-0.219763");
  EXPECT_EQ(causal_rules::cli::to_text(json(1e-7)), "1e-07");
}

TEST_F(CliTest, MineWritesRulesStatsAndCsv) {
  simulate();
  const auto out = (dir_ / "rules.jsonl").string();
  const auto csv = (dir_ / "rules.csv").string();
  const auto r = invoke({"mine", "--data", data(), "--roles", roles(), "--min-support", "0.01",
                         "--estimator", "cm", "--out", out, "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(slurp(out));
  std::vector<json> records;
  for (std::string line; std::getline(lines, line);) records.push_back(json::parse(line));
  ASSERT_EQ(records.size(), 2U);
  EXPECT_EQ(records[0]["type"], "rule");
  EXPECT_EQ(records[0]["interventions"], json::array({"X"}));
  EXPECT_EQ(records[1]["type"], "stats");
  EXPECT_EQ(records[1]["stats"]["rules_emitted"], 1);
  EXPECT_EQ(records[1]["manifest"]["config"]["pruning"], "posp+ecrp");
  EXPECT_NE(slurp(csv).find("subpopulation,interventions,support,min_abs_att,closed"),
            std::string::npos);
  EXPECT_TRUE(fs::exists(csv + ".manifest.json"));
}

TEST_F(CliTest, SameArgumentsSameArtifacts) {
  simulate();
  std::vector<std::string> first, second;
  for (auto* bucket : {&first, &second}) {
    const auto out = (dir_ / "rules.jsonl").string();
    const auto r = invoke({"mine", "--data", data(), "--roles", roles(), "--min-support", "0.01",
                           "--estimator", "psm", "--seed", "5", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    bucket->push_back(without_wall_time(slurp(out)));
    const auto e = invoke({"estimate", "--data", data(), "--roles", roles(), "--method", "psm",
                           "--seed", "5"});
    bucket->push_back(without_wall_time(e.out));
  }
  EXPECT_EQ(first, second);
}

TEST_F(CliTest, ConfigFileSitsBetweenFlagsAndDefaults) {
  simulate();
  std::ofstream(dir_ / "cfg.json")
      << R"({"estimate": {"method": "cm", "min-cell": 7}, "threads": 2})";
  const auto from_config = invoke({"--config", (dir_ / "cfg.json").string(), "estimate",
                                   "--data", data(), "--roles", roles()});
  ASSERT_EQ(from_config.code, 0) << from_config.err;
  const json a = json::parse(from_config.out);
  EXPECT_EQ(a["method"], "cm");
  EXPECT_EQ(a["manifest"]["config"]["min-cell"], "7");
  EXPECT_EQ(a["manifest"]["config"]["threads"], 2);

  const auto flag_wins = invoke({"--config", (dir_ / "cfg.json").string(), "estimate", "--data",
                                 data(), "--roles", roles(), "--method", "cc"});
  ASSERT_EQ(flag_wins.code, 0) << flag_wins.err;
  EXPECT_EQ(json::parse(flag_wins.out)["method"], "cc");

  const auto defaults = invoke({"estimate", "--data", data(), "--roles", roles()});
  EXPECT_EQ(json::parse(defaults.out)["method"], "sn");
}

TEST_F(CliTest, ThreadsFallBackToEnvironment) {
  simulate();
  ::setenv("CAUSAL_RULES_THREADS", "3", 1);
  const auto r = invoke({"load", "--data", data(), "--roles", roles()});
  ::unsetenv("CAUSAL_RULES_THREADS");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["manifest"]["config"]["threads"], 3);
}

TEST_F(CliTest, Table4WritesTextAndCsv) {
  const auto csv = (dir_ / "t4.csv").string();
  const auto r = invoke({"table4", "--n", "2000", "--seeds", "1", "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("psm"), std::string::npos);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("scenario,true_att,conf,cc,da,cm,psm,sn", 0), 0U);
  EXPECT_NE(text.find("\nIII,-0.15,"), std::string::npos);
  EXPECT_TRUE(fs::exists(csv + ".manifest.json"));
}

}  // namespace
}  // namespace causal_rules::cli
