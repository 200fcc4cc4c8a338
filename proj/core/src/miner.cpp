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

#include "causal_rules/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "causal_rules/random.hpp"

namespace causal_rules {

std::string_view to_string(Pruning pruning) noexcept {
  switch (pruning) {
    case Pruning::AprioriOnly:
      return "apriori";
    case Pruning::Posp:
      return "posp";
    case Pruning::PospEcrp:
      return "posp+ecrp";
  }
  return "posp+ecrp";
}

std::optional<Pruning> parse_pruning(std::string_view text) noexcept {
  for (auto p : {Pruning::AprioriOnly, Pruning::Posp, Pruning::PospEcrp}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

void MiningConfig::validate(std::size_t n) const {
  if (!(min_support > 0 && min_support <= 1)) {
    throw std::invalid_argument("min_support must lie in (0, 1]");
  }
  if (min_support * static_cast<double>(n) < 1) {
    throw std::invalid_argument("min_support * n must be at least 1");
  }
  if (!(min_effect >= 0)) throw std::invalid_argument("min_effect must be non-negative");
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(caliper >= 0)) throw std::invalid_argument("caliper must be non-negative");
  if (max_intervention_size == 0) {
    throw std::invalid_argument("max_intervention_size must be at least 1");
  }
}

double CausalRule::min_abs_att() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& member : members) m = std::min(m, std::abs(member.estimate.att));
  return m;
}

MiningStats& MiningStats::operator+=(const MiningStats& o) {
  subpopulations += o.subpopulations;
  candidates_generated += o.candidates_generated;
  pruned_subset += o.pruned_subset;
  pruned_support += o.pruned_support;
  pruned_posp += o.pruned_posp;
  pruned_ecrp += o.pruned_ecrp;
  evaluated += o.evaluated;
  not_estimable += o.not_estimable;
  not_closed += o.not_closed;
  infrequent += o.infrequent;
  rules_emitted += o.rules_emitted;
  return *this;
}

bool posp_check(const Dataset& ds, const ItemSet& subpopulation, const ItemSet& interventions,
                double min_support) {
  if (!subpopulation.is_disjoint(interventions)) throw OverlappingSets();
  const auto n = static_cast<double>(ds.n());
  const ItemSet body = subpopulation | interventions;
  if (static_cast<double>(count_where(ds, body, {})) / n <= min_support) return false;
  for (auto item : interventions) {
    const double contrast =
        static_cast<double>(count_where(ds, body.without(item), ItemSet{item})) / n;
    if (contrast <= min_support) return false;
  }
  return true;
}

bool is_closed(const std::vector<MemberEffect>& members, double min_effect) {
  if (members.empty()) return false;
  return std::all_of(members.begin(), members.end(), [min_effect](const MemberEffect& m) {
    return m.estimate.estimable && std::abs(m.estimate.att) > min_effect;
  });
}

bool ecrp_extend(const CausalRule& parent, ItemId /*candidate*/, double min_effect) {
  return is_closed(parent.members, min_effect);
}

CausalRule evaluate_rule(const Dataset& ds, const ItemSet& subpopulation,
                         const ItemSet& interventions, const MiningConfig& cfg) {
  CausalRule rule;
  rule.subpopulation = subpopulation;
  rule.interventions = interventions;
  rule.outcome = ds.outcome();
  const ItemSet body = subpopulation | interventions;
  const auto n = static_cast<double>(ds.n());
  rule.body_support = static_cast<double>(count_where(ds, body, {})) / n;
  rule.support = static_cast<double>(count_where(ds, body.with(rule.outcome), {})) / n;

  EstimatorOptions options;
  options.caliper = cfg.caliper;
  options.min_cell = cfg.min_cell;
  const std::hash<ItemSet> hasher;
  for (auto x : interventions) {
    const ItemSet conditioning = interventions.without(x);
    options.seed =
        derive_seed(cfg.seed, {hasher(subpopulation), hasher(conditioning), x.index});
    const auto ctx = make_context(ds, subpopulation, x, conditioning, cfg.alpha);
    rule.members.push_back({x, estimate(cfg.estimator, ctx, options)});
  }
  rule.closed = is_closed(rule.members, cfg.min_effect);
  return rule;
}

namespace {

/// Level-wise join: pairs sharing all but the last item.
std::vector<ItemSet> join_level(const std::vector<ItemSet>& level) {
  std::vector<ItemSet> out;
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      const auto a = level[i].members();
      const auto b = level[j].members();
      if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
      out.push_back(level[i].with(b.back()));
    }
  }
  return out;
}

bool all_subsets_in(const ItemSet& candidate, const std::set<ItemSet>& previous) {
  for (auto item : candidate) {
    if (!previous.contains(candidate.without(item))) return false;
  }
  return true;
}

/// Frequent subpopulations in level-wise order, starting with the empty set.
std::vector<ItemSet> frequent_subpopulations(const Dataset& ds, const MiningConfig& cfg,
                                             const ItemSet& items) {
  std::vector<ItemSet> out;
  const auto n = static_cast<double>(ds.n());
  auto frequent = [&](const ItemSet& s) {
    return static_cast<double>(count_where(ds, s, {})) / n > cfg.min_support;
  };
  if (!frequent(ItemSet{})) return out;
  out.emplace_back();

  std::vector<ItemSet> level;
  for (auto item : items) {
    if (frequent(ItemSet{item})) level.push_back(ItemSet{item});
  }
  for (std::size_t k = 1; k <= cfg.max_subpop_size && !level.empty(); ++k) {
    out.insert(out.end(), level.begin(), level.end());
    if (k == cfg.max_subpop_size) break;
    const std::set<ItemSet> previous(level.begin(), level.end());
    std::vector<ItemSet> next;
    for (auto& candidate : join_level(level)) {
      if (all_subsets_in(candidate, previous) && frequent(candidate)) {
        next.push_back(std::move(candidate));
      }
    }
    level = std::move(next);
  }
  return out;
}

struct BranchResult {
  std::vector<CausalRule> rules;
  MiningStats stats;
  std::vector<std::pair<ItemSet, ItemSet>> survivors;
};

BranchResult mine_branch(const Dataset& ds, const MiningConfig& cfg, const ItemSet& subpop,
                         const ItemSet& intervention_items) {
  BranchResult out;
  out.stats.subpopulations = 1;
  const auto n = static_cast<double>(ds.n());
  const bool posp = cfg.pruning != Pruning::AprioriOnly;
  const bool ecrp = cfg.pruning == Pruning::PospEcrp;
  const ItemId outcome = ds.outcome();

  std::vector<ItemSet> candidates;
  for (auto item : intervention_items) {
    if (!subpop.contains(item) && item != outcome) candidates.push_back(ItemSet{item});
  }

  std::set<ItemSet> previous;
  std::set<ItemSet> previous_closed;
  for (std::size_t k = 1; k <= cfg.max_intervention_size && !candidates.empty(); ++k) {
    std::vector<ItemSet> survivors;
    std::set<ItemSet> closed_here;
    for (const auto& x : candidates) {
      ++out.stats.candidates_generated;
      if (k > 1 && !all_subsets_in(x, previous)) {
        ++out.stats.pruned_subset;
        continue;
      }
      if (ecrp && k > 1 && !all_subsets_in(x, previous_closed)) {
        ++out.stats.pruned_ecrp;
        continue;
      }
      const ItemSet body = subpop | x;
      if (static_cast<double>(count_where(ds, body, {})) / n <= cfg.min_support) {
        ++out.stats.pruned_support;
        continue;
      }
      if (posp && !posp_check(ds, subpop, x, cfg.min_support)) {
        ++out.stats.pruned_posp;
        continue;
      }
      survivors.push_back(x);
      if (cfg.record_survivors) out.survivors.emplace_back(subpop, x);

      CausalRule rule = evaluate_rule(ds, subpop, x, cfg);
      ++out.stats.evaluated;
      const bool estimable =
          std::all_of(rule.members.begin(), rule.members.end(),
                      [](const MemberEffect& m) { return m.estimate.estimable; });
      if (!estimable) ++out.stats.not_estimable;
      if (!rule.closed) {
        ++out.stats.not_closed;
        continue;
      }
      closed_here.insert(x);
      if (rule.support <= cfg.min_support) {
        ++out.stats.infrequent;
        continue;
      }
      ++out.stats.rules_emitted;
      out.rules.push_back(std::move(rule));
    }
    previous = std::set<ItemSet>(survivors.begin(), survivors.end());
    previous_closed = std::move(closed_here);
    candidates = join_level(survivors);
  }
  return out;
}

}  // namespace

MiningResult mine(const Dataset& ds, const MiningConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  MiningResult result;
  const auto subpops =
      frequent_subpopulations(ds, cfg, ds.items_with_role(ItemRole::Subpopulation));
  const ItemSet interventions = ds.items_with_role(ItemRole::Intervention);

  std::vector<BranchResult> branches(subpops.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < subpops.size(); i = next++) {
      branches[i] = mine_branch(ds, cfg, subpops[i], interventions);
    }
  };
  const unsigned threads =
      std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(subpops.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& b : branches) {
    result.stats += b.stats;
    for (auto& r : b.rules) result.rules.push_back(std::move(r));
    for (auto& s : b.survivors) result.survivors.push_back(std::move(s));
  }
  std::stable_sort(result.rules.begin(), result.rules.end(),
                   [](const CausalRule& a, const CausalRule& b) {
                     if (a.subpopulation != b.subpopulation) {
                       return a.subpopulation < b.subpopulation;
                     }
                     return a.interventions < b.interventions;
                   });
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace causal_rules
