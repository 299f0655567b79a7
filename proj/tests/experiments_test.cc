// Copyright 2026 The dprank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprank/experiments.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <gtest/gtest.h>

#include "dprank/errors.h"

namespace dprank {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

ScenarioSpec Tiny(Scenario s) {
  auto spec = ScenarioSpec::Defaults(s);
  spec.replicates = 2;
  if (s != Scenario::kV) {
    spec.users = {40};
    spec.items = {6};
  }
  return spec;
}

TEST(ExperimentsTest, ScenarioNumbers) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(ScenarioNumber(ScenarioFromNumber(n)), n);
  EXPECT_THROW(ScenarioFromNumber(0), ValidationError);
  EXPECT_THROW(ScenarioFromNumber(6), ValidationError);
}

TEST(ExperimentsTest, DefaultsMatchStandardGrids) {
  auto one = ScenarioSpec::Defaults(Scenario::kI);
  EXPECT_EQ(one.users, (std::vector<int>{100, 200, 300, 400}));
  EXPECT_EQ(one.items, (std::vector<int>{10, 20, 30}));
  EXPECT_EQ(ExpandGrid(one).size(), 12u);
  auto two = ScenarioSpec::Defaults(Scenario::kII);
  EXPECT_EQ(two.p, 1.0);
  EXPECT_EQ(two.eps.kind, EpsilonLaw::Kind::kShifted);
  EXPECT_EQ(ExpandGrid(ScenarioSpec::Defaults(Scenario::kIII)).size(), 36u);
  EXPECT_EQ(ExpandGrid(ScenarioSpec::Defaults(Scenario::kIV)).size(), 27u);
  auto five = ScenarioSpec::Defaults(Scenario::kV);
  EXPECT_EQ(ExpandGrid(five).size(), 1u);
  for (auto s : {Scenario::kI, Scenario::kII, Scenario::kIII, Scenario::kIV, Scenario::kV}) {
    EXPECT_NO_THROW(ScenarioSpec::Defaults(s).Validate());
  }
}

TEST(ExperimentsTest, GridOrderAndTopK) {
  auto spec = ScenarioSpec::Defaults(Scenario::kIV);
  spec.models = {"btl", "tm"};
  auto grid = ExpandGrid(spec);
  ASSERT_EQ(grid.size(), 54u);
  EXPECT_EQ(grid[0].model, "btl");
  EXPECT_EQ(grid[27].model, "tm");
  EXPECT_EQ(grid[1].delta, spec.deltas[1]);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    EXPECT_EQ(grid[c].index, static_cast<int>(c));
    EXPECT_EQ(grid[c].k, grid[c].items / 2);
  }
}

TEST(ExperimentsTest, SchemeAnchor) {
  for (int s = 1; s <= 3; ++s) EXPECT_NEAR(SchemeEpsilon(s, 10, 100), 1.0, 1e-14);
  EXPECT_NEAR(SchemeEpsilon(2, 10, 400), 0.5, 1e-14);
  EXPECT_LT(SchemeEpsilon(3, 30, 800), SchemeEpsilon(2, 30, 800));
  EXPECT_LT(SchemeEpsilon(2, 30, 800), SchemeEpsilon(1, 30, 800));
  EXPECT_THROW(SchemeEpsilon(4, 10, 100), ValidationError);
}

TEST(ExperimentsTest, EpsilonLaws) {
  Rng rng(1);
  EpsilonLaw shifted{EpsilonLaw::Kind::kShifted, 0.5, 2.5, 0.5, 1};
  auto p = shifted.Draw(50, 10, rng);
  double lo = 1e9, hi = -1e9;
  for (double e : p.epsilons()) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  EXPECT_GE(lo, 0.5);
  EXPECT_LE(hi, 3.0);
  EXPECT_LE(hi - lo, 0.5);
  EpsilonLaw scheme{EpsilonLaw::Kind::kScheme, 0, 0, 0, 2};
  for (double e : scheme.Draw(400, 10, rng).epsilons()) EXPECT_NEAR(e, 0.5, 1e-14);
}

TEST(ExperimentsTest, ApplyAndValidate) {
  std::istringstream in("models=tm\nusers=50,60\np=0.8\neps_law=shifted\neps_lo=1\n"
                        "replicates=3\nseed=9\n");
  auto config = Config::Parse(in, "test");
  auto spec = ScenarioSpec::Defaults(Scenario::kI);
  spec.Apply(config);
  config.Finish();
  EXPECT_EQ(spec.models, (std::vector<std::string>{"tm"}));
  EXPECT_EQ(spec.users, (std::vector<int>{50, 60}));
  EXPECT_EQ(spec.p, 0.8);
  EXPECT_EQ(spec.eps.kind, EpsilonLaw::Kind::kShifted);
  EXPECT_EQ(spec.replicates, 3);
  EXPECT_EQ(spec.base_seed, 9u);

  auto bad = spec;
  bad.p = 0;
  EXPECT_THROW(bad.Validate(), ValidationError);
  bad = spec;
  bad.users = {};
  EXPECT_THROW(bad.Validate(), ValidationError);
  bad = spec;
  bad.models = {"probit"};
  EXPECT_THROW(bad.Validate(), ValidationError);
  bad = spec;
  bad.replicates = 0;
  EXPECT_THROW(bad.Validate(), ValidationError);
}

TEST(ExperimentsTest, ScenarioRunIsDeterministic) {
  auto spec = Tiny(Scenario::kI);
  auto a = run_scenario(spec);
  auto b = run_scenario(spec);
  ASSERT_EQ(a.replicates.size(), 2u);
  for (std::size_t r = 0; r < a.replicates.size(); ++r) {
    ASSERT_EQ(a.replicates[r].metrics.size(), b.replicates[r].metrics.size());
    for (std::size_t k = 0; k < a.replicates[r].metrics.size(); ++k) {
      EXPECT_EQ(a.replicates[r].metrics[k].value, b.replicates[r].metrics[k].value);
    }
  }
  spec.base_seed = 43;
  auto c = run_scenario(spec);
  EXPECT_NE(a.Mean(0, "adrr", "l2"), c.Mean(0, "adrr", "l2"));
}

TEST(ExperimentsTest, ReportMetricsAndSummary) {
  auto report = run_scenario(Tiny(Scenario::kI));
  for (const char* metric : {"l2", "linf", "kendall", "spearman", "topk"}) {
    const double mean = report.Mean(0, "adrr", metric);
    EXPECT_TRUE(std::isfinite(mean)) << metric;
    EXPECT_GE(mean, 0.0);
  }
  // Baselines run only in scenario V.
  EXPECT_TRUE(std::isnan(report.Mean(0, "count", "kendall")));
  EXPECT_TRUE(std::isnan(report.Mean(0, "laplace", "l2")));
  EXPECT_EQ(report.Values(0, "adrr", "l2").size(), 2u);
  for (const auto& s : report.summary) {
    EXPECT_EQ(s.n, 2);
    EXPECT_EQ(s.failures, 0);
    EXPECT_FALSE(s.flagged);
  }
}

TEST(ExperimentsTest, ScenarioFiveComparesAllMethods) {
  auto spec = Tiny(Scenario::kV);
  auto report = run_scenario(spec);
  for (const auto& r : report.replicates) {
    EXPECT_GE(r.users, spec.users[0]);
    EXPECT_LE(r.users, spec.users_max);
    EXPECT_GE(r.items, spec.items[0]);
    EXPECT_LE(r.items, spec.items_max);
  }
  for (const char* method : {"adrr", "rr", "laplace"}) {
    EXPECT_TRUE(std::isfinite(report.Mean(0, method, "linf"))) << method;
  }
  EXPECT_TRUE(std::isfinite(report.Mean(0, "count", "kendall")));
}

TEST(ExperimentsTest, WriteProducesFiles) {
  auto spec = Tiny(Scenario::kII);
  auto report = run_scenario(spec);
  ASSERT_EQ(report.scaling.size(), 2u);
  const auto dir = fs::temp_directory_path() / "dprank_experiments_write";
  fs::remove_all(dir);
  auto paths = report.Write(dir, "scenario2");
  EXPECT_EQ(paths.size(), 4u);
  for (const auto& p : paths) EXPECT_TRUE(fs::exists(p)) << p;
  const auto tidy = Slurp(dir / "scenario2_tidy.csv");
  EXPECT_EQ(tidy.substr(0, tidy.find('\n')),
            "scenario,cell,model,users,items,p,delta,k,scheme,replicate,drawn_users,"
            "drawn_items,B,method,metric,value");
  EXPECT_NE(Slurp(dir / "scenario2_meta.txt").find("replicates=2"), std::string::npos);
  fs::remove_all(dir);
}

// A synthetic preference file with a clear order: 1 > 2 > ... > 6.
fs::path WritePreferenceFile() {
  const auto path = fs::temp_directory_path() / "dprank_prefs.csv";
  std::ofstream out(path);
  out << "user_id,item_i,item_j,choice\n";
  Rng rng(77);
  std::bernoulli_distribution noise(0.1);
  for (int l = 1; l <= 60; ++l)
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) out << l << ',' << i << ',' << j << ',' << (noise(rng) ? 0 : 1) << '\n';
  return path;
}

TEST(ExperimentsTest, RealDataPipelineOnSyntheticFile) {
  RealDataConfig config;
  config.dataset = WritePreferenceFile();
  config.replicates = 4;
  auto report = real_data_pipeline(config);
  EXPECT_EQ(report.users, 60);
  EXPECT_EQ(report.items, 6);
  EXPECT_TRUE(report.truths_agree);
  EXPECT_EQ(report.truth_btl, (RankPermutation{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(report.methods.size(), 5u);
  for (const auto& m : report.methods) EXPECT_EQ(report.Errors(m).size(), 4u);
  EXPECT_EQ(report.tests.size(), 3u);
  fs::remove(config.dataset);
  config.dataset = fs::temp_directory_path() / "dprank_missing_prefs.csv";
  EXPECT_THROW(real_data_pipeline(config), MissingDataError);
}

}  // namespace
}  // namespace dprank
