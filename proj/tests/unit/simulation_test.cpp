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

#include <cmath>

#include "causal_rules/bootstrap.hpp"
#include "causal_rules/simulation.hpp"
#include "causal_rules/table4.hpp"
#include "test_data.hpp"

namespace causal_rules {
namespace {

ItemId item(const Dataset& ds, const char* name) { return *ds.find(name); }

/// P(target | given) by row counting.
double rate(const Dataset& ds, const ItemSet& target, const ItemSet& given_true,
            const ItemSet& given_false = {}) {
  const double base = static_cast<double>(count_where(ds, given_true, given_false));
  return static_cast<double>(count_where(ds, given_true | target, given_false)) / base;
}

/// Exact P(Y | X=1) - P(Y | X=0), enumerating every covariate cell of the
/// generator laws written out independently of the generator.
double exact_cc(Scenario s) {
  double t = 0, ty = 0, u = 0, uy = 0;
  for (int z = 0; z < 2; ++z) {
    for (int uu = 0; uu < 2; ++uu) {
      for (int v = 0; v < 2; ++v) {
        const bool has_z = s == Scenario::III || s == Scenario::IV || s == Scenario::V;
        const bool has_u = s == Scenario::II || s == Scenario::IV || s == Scenario::V;
        const bool has_v = s == Scenario::I || s == Scenario::V;
        if ((!has_z && z) || (!has_u && uu) || (!has_v && v)) continue;
        double p = 1.0;
        if (has_z) p *= z ? 0.2 : 0.8;
        if (has_u) p *= uu ? 0.2 : 0.8;
        if (has_v) p *= v ? 0.2 : 0.8;
        double px = 0.0;
        switch (s) {
          case Scenario::I:
            px = 0.3;
            break;
          case Scenario::II:
            px = uu ? 0.95 : 0.30;
            break;
          case Scenario::III:
            px = z ? 0.95 : 0.0;
            break;
          default:
            px = (z || uu) ? 0.95 : 0.0;
        }
        for (int x = 0; x < 2; ++x) {
          const double pxx = p * (x ? px : 1.0 - px);
          double py = 0.0;
          if (s == Scenario::I || s == Scenario::II) {
            py = x ? 0.10 : 0.25;
          } else {
            py = z ? (x ? 0.10 : 0.25) : 0.05;
          }
          if (v) py += 0.05;
          if (x) {
            t += pxx;
            ty += pxx * py;
          } else {
            u += pxx;
            uy += pxx * py;
          }
        }
      }
    }
  }
  return ty / t - uy / u;
}

TEST(Simulation, AnalyticTruth) {
  EXPECT_DOUBLE_EQ(analytic_att(Scenario::I), -0.15);
  EXPECT_DOUBLE_EQ(analytic_att(Scenario::II), -0.15);
  EXPECT_DOUBLE_EQ(analytic_att(Scenario::III), -0.15);
  EXPECT_NEAR(analytic_att(Scenario::IV), -0.15 * 0.2 / 0.36, 1e-15);
  EXPECT_NEAR(analytic_att(Scenario::V), -0.0833333333, 1e-9);
  EXPECT_DOUBLE_EQ((ScenarioSpec{Scenario::V, 10, 1}.true_att()), analytic_att(Scenario::V));
}

TEST(Simulation, ExactCrudeContrastOfScenarioIII) {
  // 0.10 - (0.01 * 0.25 + 0.8 * 0.05) / 0.81
  EXPECT_NEAR(exact_cc(Scenario::III), 0.0475309, 1e-7);
  EXPECT_NEAR(exact_cc(Scenario::I), -0.15, 1e-12);
  EXPECT_NEAR(exact_cc(Scenario::II), -0.15, 1e-12);
}

TEST(Simulation, CatalogAndRoles) {
  const Dataset ds = generate({Scenario::V, 10, 0});
  ASSERT_EQ(ds.width(), 5U);
  EXPECT_EQ(ds.name(ItemId{0}), "Z");
  EXPECT_EQ(ds.role(item(ds, "X")), ItemRole::Intervention);
  EXPECT_EQ(ds.outcome(), item(ds, "Y"));
  EXPECT_EQ(ds.role(item(ds, "U")), ItemRole::Covariate);
  EXPECT_EQ(generate({Scenario::I, 10, 0}).width(), 3U);
  EXPECT_EQ(parse_scenario("3"), Scenario::III);
  EXPECT_EQ(parse_scenario("IV"), Scenario::IV);
  EXPECT_FALSE(parse_scenario("6").has_value());
}

TEST(Simulation, Deterministic) {
  EXPECT_EQ(generate({Scenario::IV, 3000, 5}), generate({Scenario::IV, 3000, 5}));
  EXPECT_NE(generate({Scenario::IV, 3000, 5}), generate({Scenario::IV, 3000, 6}));
}

TEST(Simulation, ScenarioIIIMarginals) {
  const Dataset ds = generate({Scenario::III, 200000, 12});
  const ItemId z = item(ds, "Z"), x = item(ds, "X"), y = item(ds, "Y");
  EXPECT_NEAR(support(ds, ItemSet{z}), 0.20, 0.005);
  EXPECT_NEAR(rate(ds, ItemSet{x}, ItemSet{z}), 0.95, 0.005);
  EXPECT_EQ(count_where(ds, ItemSet{x}, ItemSet{z}), 0U);
  EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{z}, ItemSet{x}), 0.25, 0.01);
  EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{z, x}), 0.10, 0.01);
  EXPECT_NEAR(rate(ds, ItemSet{y}, {}, ItemSet{z}), 0.05, 0.01);
}

TEST(Simulation, ScenarioIAndIILaws) {
  {
    const Dataset ds = generate({Scenario::I, 200000, 13});
    const ItemId v = item(ds, "V"), x = item(ds, "X"), y = item(ds, "Y");
    EXPECT_NEAR(support(ds, ItemSet{x}), 0.30, 0.01);
    EXPECT_NEAR(support(ds, ItemSet{v}), 0.20, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, {}, ItemSet{x, v}), 0.25, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{x}, ItemSet{v}), 0.10, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{v}, ItemSet{x}), 0.30, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{x, v}), 0.15, 0.01);
  }
  {
    const Dataset ds = generate({Scenario::II, 200000, 14});
    const ItemId u = item(ds, "U"), x = item(ds, "X"), y = item(ds, "Y");
    EXPECT_NEAR(support(ds, ItemSet{u}), 0.20, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{x}, ItemSet{u}), 0.95, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{x}, {}, ItemSet{u}), 0.30, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{x}), 0.10, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{y}, {}, ItemSet{x}), 0.25, 0.01);
  }
}

TEST(Simulation, ScenarioIVAndVLaws) {
  for (auto s : {Scenario::IV, Scenario::V}) {
    const Dataset ds = generate({s, 200000, 15});
    const ItemId z = item(ds, "Z"), u = item(ds, "U"), x = item(ds, "X"), y = item(ds, "Y");
    EXPECT_NEAR(support(ds, ItemSet{z}), 0.20, 0.01);
    EXPECT_NEAR(support(ds, ItemSet{u}), 0.20, 0.01);
    EXPECT_NEAR(support(ds, ItemSet{z, u}), 0.04, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{x}, ItemSet{z}), 0.95, 0.01);
    EXPECT_NEAR(rate(ds, ItemSet{x}, ItemSet{u}, ItemSet{z}), 0.95, 0.01);
    EXPECT_EQ(count_where(ds, ItemSet{x}, ItemSet{z, u}), 0U);
    EXPECT_NEAR(rate(ds, ItemSet{z}, ItemSet{x}), 0.2 / 0.36, 0.01);
    if (s == Scenario::IV) {
      EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{z}, ItemSet{x}), 0.25, 0.01);
      EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{u}, ItemSet{z}), 0.05, 0.01);
    } else {
      const ItemId v = item(ds, "V");
      EXPECT_NEAR(support(ds, ItemSet{v}), 0.20, 0.01);
      // Only about 400 rows have Z and V without X.
      EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{z, v}, ItemSet{x}), 0.30, 0.07);
      EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{z, x}, ItemSet{v}), 0.10, 0.01);
      EXPECT_NEAR(rate(ds, ItemSet{y}, {}, ItemSet{z, v}), 0.05, 0.01);
      EXPECT_NEAR(rate(ds, ItemSet{y}, ItemSet{v}, ItemSet{z}), 0.10, 0.01);
    }
  }
}

TEST(Simulation, CrudeContrastConvergesToExactOracle) {
  for (auto s : kAllScenarios) {
    const Dataset ds = generate({s, 400000, 16});
    const auto ctx = make_context(ds, {}, item(ds, "X"), {}, CovariateClassification::fixed({}));
    EXPECT_NEAR(att_cc(ctx).att, exact_cc(s), 0.006) << to_string(s);
  }
}

TEST(Bootstrap, Quantile) {
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile({7}, 0.975), 7.0);
}

TEST(Bootstrap, SingleReplicateIsDegenerate) {
  const Dataset ds = generate({Scenario::III, 2000, 3});
  const auto ctx = make_context(ds, {}, item(ds, "X"));
  BootstrapOptions b;
  b.replicates = 1;
  b.seed = 4;
  const auto r = bootstrap(ctx, Method::CC, {}, b);
  ASSERT_EQ(r.estimates.size(), 1U);
  EXPECT_EQ(r.ci_low, r.estimates[0]);
  EXPECT_EQ(r.ci_high, r.estimates[0]);
  EXPECT_EQ(r.point, r.estimates[0]);
}

TEST(Bootstrap, ConstantOutcomeGivesZero) {
  const Dataset ds = testing::rows_dataset(
      {"z", "x", "y"}, {ItemRole::Covariate, ItemRole::Intervention, ItemRole::Outcome},
      {"010", "110", "000", "100", "010", "100", "000", "110", "010", "000"});
  const auto ctx = make_context(ds, {}, ItemId{1});
  BootstrapOptions b;
  b.replicates = 50;
  b.seed = 1;
  const auto r = bootstrap(ctx, Method::CC, {}, b);
  for (double a : r.estimates) EXPECT_EQ(a, 0.0);
  EXPECT_EQ(r.ci_low, 0.0);
  EXPECT_EQ(r.ci_high, 0.0);
  EXPECT_FALSE(r.significant);
}

TEST(Bootstrap, AllInestimableThrows) {
  const Dataset ds = testing::rows_dataset({"x", "y"}, {ItemRole::Intervention, ItemRole::Outcome},
                                           {"11", "10", "11"});
  const auto ctx = make_context(ds, {}, ItemId{0});
  BootstrapOptions b;
  b.replicates = 10;
  EXPECT_THROW((void)bootstrap(ctx, Method::CC, {}, b), AllReplicatesInestimable);
}

TEST(Bootstrap, ReclassificationIsOptional) {
  // Z left unclassified: CM has no predictors and reduces to CC.
  const Dataset ds = generate({Scenario::III, 20000, 1});
  const auto ctx = make_context(
      ds, {}, item(ds, "X"), {},
      CovariateClassification::fixed({{item(ds, "Z"), CovariateCategory::Ignorable}}));
  BootstrapOptions b;
  b.replicates = 30;
  b.seed = 2;
  b.reclassify = false;
  const auto fixed = bootstrap(ctx, Method::CM, {}, b);
  const auto crude = bootstrap(ctx, Method::CC, {}, b);
  ASSERT_EQ(fixed.estimates.size(), crude.estimates.size());
  for (std::size_t i = 0; i < fixed.estimates.size(); ++i) {
    EXPECT_NEAR(fixed.estimates[i], crude.estimates[i], 1e-9);
  }
  b.reclassify = true;
  const auto refit = bootstrap(ctx, Method::CM, {}, b);
  EXPECT_LT(refit.point, fixed.point - 0.05);
}

TEST(Bootstrap, IndependentOfThreadCountAndOrdered) {
  const Dataset ds = generate({Scenario::III, 3000, 8});
  const auto ctx = make_context(ds, {}, item(ds, "X"));
  BootstrapOptions b;
  b.replicates = 40;
  b.seed = 77;
  EstimatorOptions e;
  e.seed = 3;
  const auto one = bootstrap(ctx, Method::PSM, e, b);
  b.threads = 4;
  const auto four = bootstrap(ctx, Method::PSM, e, b);
  EXPECT_EQ(one.estimates, four.estimates);
  EXPECT_LE(one.ci_low, one.point);
  EXPECT_LE(one.point, one.ci_high);
  EXPECT_EQ(one.estimates.size() + one.inestimable, one.replicates);
}

TEST(Bootstrap, IntervalShrinksWithSampleSize) {
  auto width = [](std::size_t n) {
    const Dataset ds = generate({Scenario::III, n, 31});
    const auto ctx = make_context(ds, {}, *ds.find("X"));
    BootstrapOptions b;
    b.replicates = 200;
    b.seed = 31;
    const auto r = bootstrap(ctx, Method::CM, {}, b);
    return r.ci_high - r.ci_low;
  };
  const double w5 = width(5000);
  const double w20 = width(20000);
  EXPECT_LT(w20, w5);
  // Roughly 1 / sqrt(n): a factor of two, with slack.
  EXPECT_NEAR(w5 / w20, 2.0, 0.6);
}

TEST(Table4, SmallRunHasEveryCell) {
  Table4Config cfg;
  cfg.n = 3000;
  cfg.seeds = 2;
  cfg.threads = 2;
  const auto report = table4_run(cfg);
  EXPECT_EQ(report.cells.size(), 30U);
  for (const auto& c : report.cells) {
    EXPECT_EQ(c.truth, analytic_att(c.scenario));
    if (c.estimable_runs > 0) EXPECT_NEAR(c.deviation, c.mean - c.truth, 1e-15);
  }
  EXPECT_EQ(report.cell(Scenario::III, Method::PSM).estimable_runs, 2U);
  EXPECT_THROW((void)Table4Report{}.cell(Scenario::I, Method::CC), std::out_of_range);
}

}  // namespace
}  // namespace causal_rules
