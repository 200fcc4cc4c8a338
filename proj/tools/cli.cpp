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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>

#include "causal_rules/bootstrap.hpp"
#include "causal_rules/classifier.hpp"
#include "causal_rules/dataset.hpp"
#include "causal_rules/estimators.hpp"
#include "causal_rules/miner.hpp"
#include "causal_rules/simulation.hpp"
#include "causal_rules/table4.hpp"
#include "causal_rules/version.hpp"
#include "json_config.hpp"
#include "report.hpp"

namespace causal_rules::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Bad input discovered after parsing; reported with exit code 1.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const CLI::Validator kUnitInterval(
    [](std::string& s) -> std::string {
      const double v = std::strtod(s.c_str(), nullptr);
      return v > 0.0 && v <= 1.0 ? "" : "must lie in (0, 1], got " + s;
    },
    "(0,1]");

const CLI::Validator kOpenUnitInterval(
    [](std::string& s) -> std::string {
      const double v = std::strtod(s.c_str(), nullptr);
      return v > 0.0 && v < 1.0 ? "" : "must lie in (0, 1), got " + s;
    },
    "(0,1)");

std::vector<std::string> method_names(bool with_all) {
  std::vector<std::string> out;
  for (auto m : kAllMethods) out.emplace_back(to_string(m));
  if (with_all) out.emplace_back("all");
  return out;
}

struct DataOptions {
  std::string data;
  std::string roles;

  void add(CLI::App* sub) {
    sub->add_option("--data", data, "Binary CSV with a header row of item names")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--roles", roles, "JSON object mapping item names to roles")
        ->required()
        ->check(CLI::ExistingFile);
  }

  [[nodiscard]] Dataset load() const { return load_csv(data, roles); }
};

struct TargetOptions {
  std::string intervention;
  std::vector<std::string> subpop;
  std::vector<std::string> conditioning;

  void add(CLI::App* sub, bool with_conditioning) {
    sub->add_option("--intervention", intervention,
                    "Treatment item (default: the only intervention item)");
    sub->add_option("--subpop", subpop, "Comma-separated items defining the subpopulation")
        ->delimiter(',');
    if (with_conditioning) {
      sub->add_option("--conditioning", conditioning,
                      "Comma-separated intervention items held true")
          ->delimiter(',');
    }
  }
};

ItemId resolve(const Dataset& ds, const std::string& name, const char* flag) {
  const auto id = ds.find(name);
  if (!id) throw UserError(std::string(flag) + ": no item named '" + name + "'");
  return *id;
}

ItemSet resolve(const Dataset& ds, const std::vector<std::string>& list, const char* flag) {
  ItemSet out;
  for (const auto& name : list) out.insert(resolve(ds, name, flag));
  return out;
}

ItemId resolve_intervention(const Dataset& ds, const std::string& name) {
  if (!name.empty()) return resolve(ds, name, "--intervention");
  const ItemSet candidates = ds.items_with_role(ItemRole::Intervention);
  if (candidates.size() != 1) {
    throw UserError("--intervention: required when the roles file has " +
                    std::to_string(candidates.size()) + " intervention items");
  }
  return candidates[0];
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& why) {
  if (!seed) throw UserError("--seed: required for " + why);
  return *seed;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UserError("cannot write '" + path.string() + "'");
  return out;
}

void write_json_file(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << to_text(j, 2) << '\n';
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << to_text(j, 2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

/// Every option of `sub` (given or defaulted) as strings, plus --threads.
json resolved_config(const CLI::App* sub, unsigned threads) {
  json j = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    const std::string& name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else {
      const std::string d = opt->get_default_str();
      if (d.empty()) {
        j[name] = nullptr;
      } else if (d == "{}") {
        j[name] = json::array();
      } else {
        j[name] = d;
      }
    }
  }
  j["threads"] = threads;
  return j;
}

struct Cli {
  CLI::App app{"Mine causal rules from binary observational data.", "causal-rules"};
  unsigned threads = 1;

  // load
  CLI::App* load = nullptr;
  DataOptions load_data;
  std::string load_out;

  // classify
  CLI::App* classify = nullptr;
  DataOptions classify_data;
  TargetOptions classify_target;
  double classify_alpha = kDefaultAlpha;
  std::string classify_out;

  // estimate
  CLI::App* estimate = nullptr;
  DataOptions estimate_data;
  TargetOptions estimate_target;
  std::string method = "sn";
  double caliper = 0.1;
  std::optional<std::uint64_t> estimate_seed;
  double estimate_alpha = kDefaultAlpha;
  std::size_t estimate_min_cell = 5;
  std::size_t replicates = 0;
  std::string estimate_out;

  // mine
  CLI::App* mine = nullptr;
  DataOptions mine_data;
  MiningConfig mining;
  std::string estimator = "sn";
  std::string pruning = "posp+ecrp";
  std::optional<std::uint64_t> mine_seed;
  std::string mine_out;
  std::string mine_csv;

  // simulate
  CLI::App* simulate = nullptr;
  std::string scenario;
  std::size_t sim_n = 5000;
  std::optional<std::uint64_t> sim_seed;
  std::string emit_dir;

  // table4
  CLI::App* table4 = nullptr;
  Table4Config t4;
  std::string t4_csv;

  Cli() {
    app.option_defaults()->always_capture_default();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; flags override its values");
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--threads", threads, "Worker threads for mine, bootstrap and table4")
        ->envname("CAUSAL_RULES_THREADS")
        ->check(CLI::Range(1U, 4096U));
    app.fallthrough();
    app.require_subcommand(1);

    load = app.add_subcommand("load", "Validate a dataset and print its summary");
    load_data.add(load);
    load->add_option("--out", load_out, "Write the JSON report here instead of stdout");

    classify = app.add_subcommand("classify", "Classify covariates as U, Z, V or O");
    classify_data.add(classify);
    classify_target.add(classify, false);
    classify->add_option("--alpha", classify_alpha, "Significance level")
        ->check(kOpenUnitInterval);
    classify->add_option("--out", classify_out, "Write the JSON report here instead of stdout");

    estimate = app.add_subcommand("estimate", "Estimate the ATT of one intervention");
    estimate_data.add(estimate);
    estimate_target.add(estimate, true);
    estimate->add_option("--method", method, "Estimator")
        ->check(CLI::IsMember(method_names(true)));
    estimate->add_option("--caliper", caliper, "PSM caliper, in SDs of the propensity logit")
        ->check(CLI::NonNegativeNumber);
    estimate->add_option("--seed", estimate_seed, "Seed for PSM and bootstrap");
    estimate->add_option("--alpha", estimate_alpha, "Classifier significance level")
        ->check(kOpenUnitInterval);
    estimate->add_option("--min-cell", estimate_min_cell,
                         "SN: minimum treated and untreated rows per stratum");
    estimate->add_option("--bootstrap", replicates, "Bootstrap replicates (0: none)");
    estimate->add_option("--out", estimate_out, "Write the JSON report here instead of stdout");

    mine = app.add_subcommand("mine", "Mine closed, frequent causal rules");
    mine_data.add(mine);
    mine->add_option("--min-support", mining.min_support, "Support threshold theta")
        ->check(kUnitInterval);
    mine->add_option("--min-effect", mining.min_effect, "Effect threshold eta")
        ->check(CLI::NonNegativeNumber);
    mine->add_option("--estimator", estimator, "Estimator for member effects")
        ->check(CLI::IsMember(method_names(false)));
    mine->add_option("--pruning", pruning, "Intervention pruning")
        ->check(CLI::IsMember({"apriori", "posp", "posp+ecrp"}));
    mine->add_option("--max-s", mining.max_subpop_size, "Largest subpopulation itemset");
    mine->add_option("--max-x", mining.max_intervention_size, "Largest intervention itemset")
        ->check(CLI::PositiveNumber);
    mine->add_option("--seed", mine_seed, "Seed (required with --estimator psm)");
    mine->add_option("--alpha", mining.alpha, "Classifier significance level")
        ->check(kOpenUnitInterval);
    mine->add_option("--caliper", mining.caliper, "PSM caliper")->check(CLI::NonNegativeNumber);
    mine->add_option("--min-cell", mining.min_cell, "SN stratum floor");
    mine->add_option("--out", mine_out, "Write JSON lines here instead of stdout");
    mine->add_option("--csv", mine_csv, "Also write a CSV summary of the rules");

    simulate = app.add_subcommand("simulate", "Draw a synthetic scenario");
    simulate->add_option("--scenario", scenario, "Scenario 1-5 (or I-V)")
        ->required()
        ->check(CLI::IsMember({"1", "2", "3", "4", "5", "I", "II", "III", "IV", "V"}));
    simulate->add_option("--n", sim_n, "Rows")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "Generator seed")->required();
    simulate->add_option("--emit-csv", emit_dir,
                         "Directory for data.csv, roles.json and manifest.json");

    table4 = app.add_subcommand("table4", "All estimators on all scenarios");
    table4->add_option("--n", t4.n, "Rows per dataset")->check(CLI::PositiveNumber);
    table4->add_option("--seeds", t4.seeds, "Datasets per scenario")->check(CLI::PositiveNumber);
    table4->add_option("--first-seed", t4.first_seed, "Seed of the first dataset");
    table4->add_option("--alpha", t4.alpha, "Classifier significance level")
        ->check(kOpenUnitInterval);
    table4->add_option("--caliper", t4.caliper, "PSM caliper")->check(CLI::NonNegativeNumber);
    table4->add_option("--min-cell", t4.min_cell, "SN stratum floor");
    table4->add_option("--csv", t4_csv, "Also write the table as CSV");
  }

  int dispatch(std::ostream& out) {
    if (load->parsed()) return run_load(out);
    if (classify->parsed()) return run_classify(out);
    if (estimate->parsed()) return run_estimate(out);
    if (mine->parsed()) return run_mine(out);
    if (simulate->parsed()) return run_simulate(out);
    return run_table4(out);
  }

  RunManifest manifest(const CLI::App* sub) const {
    RunManifest m;
    m.subcommand = sub->get_name();
    m.config = resolved_config(sub, threads);
    return m;
  }

  int run_load(std::ostream& out) {
    auto m = manifest(load);
    const Dataset ds = load_data.load();
    m.dataset_fingerprint = fingerprint(ds);
    const auto summary = summarize(ds);
    json j;
    j["rows"] = summary.rows;
    j["columns"] = summary.columns;
    j["roles"] = json::object();
    for (const auto& [role, count] : summary.role_counts) {
      j["roles"][std::string(to_string(role))] = count;
    }
    j["items"] = json::array();
    for (auto item : ds.all_items()) {
      j["items"].push_back({{"name", ds.name(item)},
                            {"role", std::string(to_string(ds.role(item)))},
                            {"support", number(support(ds, ItemSet{item}))}});
    }
    j["manifest"] = m.to_json();
    emit(j, load_out, out);
    return kExitOk;
  }

  int run_classify(std::ostream& out) {
    auto m = manifest(classify);
    const Dataset ds = classify_data.load();
    m.dataset_fingerprint = fingerprint(ds);
    const ItemId x = resolve_intervention(ds, classify_target.intervention);
    const ItemSet s = resolve(ds, classify_target.subpop, "--subpop");
    const auto c = causal_rules::classify(ds, x, ds.outcome(), s, classify_alpha);
    json j;
    j["alpha"] = number(c.alpha);
    j["intervention"] = ds.name(x);
    j["outcome"] = ds.name(ds.outcome());
    j["subpopulation"] = names(ds, s);
    j["items"] = json::object();
    for (const auto& a : c.assessments) {
      j["items"][ds.name(a.item)] = {{"category", std::string(to_string(a.category))},
                                     {"p_assoc_x", number(a.p_assoc_x)},
                                     {"p_assoc_y_given_x", number(a.p_assoc_y_given_x)},
                                     {"degenerate", a.degenerate}};
    }
    j["manifest"] = m.to_json();
    emit(j, classify_out, out);
    return kExitOk;
  }

  int run_estimate(std::ostream& out) {
    auto m = manifest(estimate);
    std::vector<Method> methods;
    if (method == "all") {
      methods.assign(kAllMethods.begin(), kAllMethods.end());
    } else {
      methods.push_back(*parse_method(method));
    }
    const bool needs_seed =
        replicates > 0 || std::find(methods.begin(), methods.end(), Method::PSM) != methods.end();
    std::uint64_t seed = 0;
    if (needs_seed) seed = require_seed(estimate_seed, "psm and --bootstrap");
    m.seed = seed;

    const Dataset ds = estimate_data.load();
    m.dataset_fingerprint = fingerprint(ds);
    const ItemId x = resolve_intervention(ds, estimate_target.intervention);
    const ItemSet s = resolve(ds, estimate_target.subpop, "--subpop");
    const ItemSet c = resolve(ds, estimate_target.conditioning, "--conditioning");
    const auto ctx = make_context(ds, s, x, c, estimate_alpha);

    EstimatorOptions opts;
    opts.caliper = caliper;
    opts.seed = seed;
    opts.min_cell = estimate_min_cell;

    json estimates = json::array();
    for (auto method_tag : methods) {
      json e = to_json(causal_rules::estimate(method_tag, ctx, opts));
      if (replicates > 0) {
        BootstrapOptions b;
        b.replicates = replicates;
        b.seed = seed;
        b.threads = threads;
        e["bootstrap"] = to_json(bootstrap(ctx, method_tag, opts, b));
      }
      estimates.push_back(std::move(e));
    }
    json j = methods.size() == 1 ? estimates.front() : json{{"estimates", estimates}};
    j["manifest"] = m.to_json();
    emit(j, estimate_out, out);
    return kExitOk;
  }

  int run_mine(std::ostream& out) {
    auto m = manifest(mine);
    mining.estimator = *parse_method(estimator);
    mining.pruning = *parse_pruning(pruning);
    mining.threads = threads;
    mining.seed = mining.estimator == Method::PSM
                      ? require_seed(mine_seed, "--estimator psm")
                      : mine_seed.value_or(0);
    m.seed = mining.seed;

    const Dataset ds = mine_data.load();
    m.dataset_fingerprint = fingerprint(ds);
    if (mining.min_support * static_cast<double>(ds.n()) < 1.0) {
      throw UserError("--min-support: min-support * n must be at least 1 (n = " +
                      std::to_string(ds.n()) + ")");
    }
    const auto result = causal_rules::mine(ds, mining);

    std::ofstream file;
    if (!mine_out.empty()) file = open_output(mine_out);
    std::ostream& sink = mine_out.empty() ? out : file;
    for (const auto& rule : result.rules) sink << to_text(to_json(ds, rule)) << '\n';
    json footer;
    footer["type"] = "stats";
    footer["stats"] = to_json(result.stats);
    footer["manifest"] = m.to_json();
    sink << to_text(footer) << '\n';

    if (!mine_csv.empty()) {
      auto csv = open_output(mine_csv);
      csv << "subpopulation,interventions,support,min_abs_att,closed\n";
      auto joined = [&](const ItemSet& items) {
        std::string s;
        for (auto item : items) s += (s.empty() ? "" : ";") + ds.name(item);
        return s;
      };
      for (const auto& rule : result.rules) {
        csv << joined(rule.subpopulation) << ',' << joined(rule.interventions) << ','
            << format_number(rule.support) << ',' << format_number(rule.min_abs_att()) << ','
            << (rule.closed ? "true" : "false") << '\n';
      }
      write_json_file(mine_csv + ".manifest.json", m.to_json());
    }
    return kExitOk;
  }

  int run_simulate(std::ostream& out) {
    auto m = manifest(simulate);
    const ScenarioSpec spec{*parse_scenario(scenario), sim_n, *sim_seed};
    m.seed = spec.seed;
    const Dataset ds = generate(spec);
    m.dataset_fingerprint = fingerprint(ds);

    json j;
    j["scenario"] = std::string(to_string(spec.id));
    j["n"] = spec.n;
    j["seed"] = spec.seed;
    j["true_att"] = number(spec.true_att());
    j["items"] = json::object();
    for (auto item : ds.all_items()) {
      j["items"][ds.name(item)] = number(support(ds, ItemSet{item}));
    }
    if (!emit_dir.empty()) {
      const fs::path dir(emit_dir);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw UserError("--emit-csv: cannot create '" + dir.string() + "'");
      {
        auto csv = open_output(dir / "data.csv");
        write_csv(ds, csv);
        auto roles = open_output(dir / "roles.json");
        write_roles(ds, roles);
      }
      write_json_file(dir / "manifest.json", m.to_json());
      j["files"] = {(dir / "data.csv").string(), (dir / "roles.json").string(),
                    (dir / "manifest.json").string()};
    }
    j["manifest"] = m.to_json();
    out << to_text(j, 2) << '\n';
    return kExitOk;
  }

  int run_table4(std::ostream& out) {
    auto m = manifest(table4);
    t4.threads = threads;
    m.seed = t4.first_seed;
    const auto report = table4_run(t4);
    write_table4_text(report, out);
    if (!t4_csv.empty()) {
      auto csv = open_output(t4_csv);
      write_table4_csv(report, csv);
      write_json_file(t4_csv + ".manifest.json", m.to_json());
    }
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      cli.app.exit(e, out, err);
      return kExitOk;
    }
    err << "causal-rules: " << e.what() << '\n';
    return kExitUserError;
  }

  try {
    return cli.dispatch(out);
  } catch (const UserError& e) {
    err << "causal-rules: " << e.what() << '\n';
    return kExitUserError;
  } catch (const DataError& e) {
    err << "causal-rules: " << e.what() << '\n';
    return kExitUserError;
  } catch (const OverlappingSets& e) {
    err << "causal-rules: " << e.what() << '\n';
    return kExitUserError;
  } catch (const AllReplicatesInestimable& e) {
    err << "causal-rules: " << e.what() << '\n';
    return kExitUserError;
  } catch (const std::exception& e) {
    err << "causal-rules: internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace causal_rules::cli
