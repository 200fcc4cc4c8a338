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

#include "report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#include "causal_rules/version.hpp"

namespace causal_rules::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

nlohmann::json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(format_number(value).c_str(), nullptr);
}

namespace {

void write_text(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  if (j.is_object() && !j.empty()) {
    out += '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      out += nlohmann::json(key).dump();
      out += pretty ? ": " : ":";
      write_text(value, indent, depth + 1, out);
    }
    newline(depth);
    out += '}';
  } else if (j.is_array() && !j.empty()) {
    out += '[';
    bool first = true;
    for (const auto& value : j) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      write_text(value, indent, depth + 1, out);
    }
    newline(depth);
    out += ']';
  } else if (j.is_number_float()) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    std::string text(buf, ec == std::errc() ? end : buf);
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    out += text;
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string to_text(const nlohmann::json& j, int indent) {
  std::string out;
  write_text(j, indent, 0, out);
  return out;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config"] = config;
  if (dataset_fingerprint) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(*dataset_fingerprint));
    j["dataset_fingerprint"] = buf;
  } else {
    j["dataset_fingerprint"] = nullptr;
  }
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["version"] = kVersion;
  j["wall_seconds"] = number(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
  return j;
}

nlohmann::json names(const Dataset& ds, const ItemSet& items) {
  nlohmann::json j = nlohmann::json::array();
  for (auto item : items) j.push_back(ds.name(item));
  return j;
}

nlohmann::json to_json(const AttEstimate& e) {
  nlohmann::json j;
  j["method"] = std::string(to_string(e.method));
  j["att"] = number(e.att);
  j["n_treated"] = e.n_treated;
  j["n_untreated"] = e.n_untreated;
  j["estimable"] = e.estimable;
  j["diagnostics"] = nlohmann::json::object();
  for (const auto& [key, value] : e.diagnostics) j["diagnostics"][key] = number(value);
  return j;
}

nlohmann::json to_json(const BootstrapResult& r) {
  nlohmann::json j;
  j["replicates"] = r.replicates;
  j["inestimable"] = r.inestimable;
  j["point"] = number(r.point);
  j["ci_low"] = number(r.ci_low);
  j["ci_high"] = number(r.ci_high);
  j["significant"] = r.significant;
  j["estimates"] = nlohmann::json::array();
  for (double a : r.estimates) j["estimates"].push_back(number(a));
  return j;
}

nlohmann::json to_json(const Dataset& ds, const CausalRule& rule) {
  nlohmann::json j;
  j["type"] = "rule";
  j["subpopulation"] = names(ds, rule.subpopulation);
  j["interventions"] = names(ds, rule.interventions);
  j["outcome"] = ds.name(rule.outcome);
  j["support"] = number(rule.support);
  j["body_support"] = number(rule.body_support);
  j["closed"] = rule.closed;
  j["min_abs_att"] = number(rule.min_abs_att());
  j["members"] = nlohmann::json::object();
  for (const auto& m : rule.members) j["members"][ds.name(m.item)] = to_json(m.estimate);
  return j;
}

nlohmann::json to_json(const MiningStats& s) {
  nlohmann::json j;
  j["subpopulations"] = s.subpopulations;
  j["candidates_generated"] = s.candidates_generated;
  j["pruned_subset"] = s.pruned_subset;
  j["pruned_support"] = s.pruned_support;
  j["pruned_posp"] = s.pruned_posp;
  j["pruned_ecrp"] = s.pruned_ecrp;
  j["evaluated"] = s.evaluated;
  j["not_estimable"] = s.not_estimable;
  j["not_closed"] = s.not_closed;
  j["infrequent"] = s.infrequent;
  j["rules_emitted"] = s.rules_emitted;
  j["wall_seconds"] = number(s.wall_seconds);
  return j;
}

void write_table4_csv(const Table4Report& report, std::ostream& out) {
  out << "scenario,true_att";
  for (auto m : kAllMethods) out << ',' << to_string(m);
  for (auto m : kAllMethods) out << ",dev_" << to_string(m);
  out << '\n';
  for (auto s : kAllScenarios) {
    out << to_string(s) << ',' << format_number(analytic_att(s));
    for (auto m : kAllMethods) out << ',' << format_number(report.cell(s, m).mean);
    for (auto m : kAllMethods) out << ',' << format_number(report.cell(s, m).deviation);
    out << '\n';
  }
}

void write_table4_text(const Table4Report& report, std::ostream& out) {
  constexpr int kWidth = 13;  // widest %.6g value is 12 characters
  out << "ATT by method, n=" << report.config.n << ", seeds=" << report.config.seeds << '\n';
  out << std::left << std::setw(6) << "exp" << std::right << std::setw(kWidth) << "truth";
  for (auto m : kAllMethods) out << std::setw(kWidth) << to_string(m);
  out << '\n';
  for (auto s : kAllScenarios) {
    out << std::left << std::setw(6) << to_string(s) << std::right << std::setw(kWidth)
        << format_number(analytic_att(s));
    for (auto m : kAllMethods) out << std::setw(kWidth) << format_number(report.cell(s, m).mean);
    out << '\n';
  }
  out << "\ndeviation from truth\n";
  for (auto s : kAllScenarios) {
    out << std::left << std::setw(6) << to_string(s) << std::right << std::setw(kWidth) << "";
    for (auto m : kAllMethods) {
      out << std::setw(kWidth) << format_number(report.cell(s, m).deviation);
    }
    out << '\n';
  }
}

}  // namespace causal_rules::cli
