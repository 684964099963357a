// Copyright 2026 The frugal Authors
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

#include "frugal/errors.hpp"
#include "frugal/harness.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace frugal;
using namespace frugal::harness;

namespace {

VersionSplit split_of(const std::string& name, std::uint64_t seed, std::size_t train = 90, std::size_t test = 40) {
  return VersionSplit{name, frugal::testing::planted(train, 3, seed), frugal::testing::planted(test, 3, seed + 100)};
}

ExperimentSpec base_spec(std::vector<learners::LearnerKind> kinds) {
  ExperimentSpec spec;
  for (auto k : kinds) spec.learners.push_back({k, {}});
  spec.seed = 42;
  return spec;
}

tuner::DEConfig quick_de() {
  tuner::DEConfig cfg;
  cfg.life = 2;
  cfg.max_generations = 4;
  return cfg;
}

std::map<std::string, std::string> parse_tunings(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    const auto eq = item.find('=');
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

}  // namespace

TEST(Aggregation, MedianAndMeanMatchOracles) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(1 + rng.below(31));
    for (auto& x : v) x = rng.uniform();
    auto s = v;
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const double oracle = n % 2 ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2;
    EXPECT_EQ(median(v), oracle);
    double sum = 0;
    for (double x : v) sum += x;
    EXPECT_NEAR(mean(v), sum / static_cast<double>(n), 1e-15);
  }
  EXPECT_EQ(median({0.7}), 0.7);
  EXPECT_THROW(median({}), ArgumentError);
}

TEST(RepeatSeeds, DistinctAndReproducible) {
  EXPECT_EQ(repeat_seed(42, 3), repeat_seed(42, 3));
  EXPECT_NE(repeat_seed(42, 3), repeat_seed(42, 4));
  EXPECT_NE(repeat_seed(42, 3), repeat_seed(43, 3));
}

TEST(Untuned, OneRowPerLearnerAndSingleTestAccess) {
  using K = learners::LearnerKind;
  auto spec = base_spec({K::fft, K::logistic, K::naive_bayes, K::knn, K::linear_svm, K::cart});
  const std::vector<VersionSplit> splits{split_of("ant", 1)};
  const auto r = run_untuned(spec, splits);
  EXPECT_EQ(r.runs.size(), 6u);
  EXPECT_EQ(r.summaries.size(), 6u);
  EXPECT_EQ(r.test_accesses, 6u);
  for (const auto& run : r.runs) EXPECT_EQ(run.test_size, 40u);
  EXPECT_EQ(runs_csv(r), runs_csv(run_untuned(spec, splits)));
}

TEST(Untuned, PlantedSignalVersusShuffledControl) {
  auto spec = base_spec({learners::LearnerKind::fft});
  const auto split = split_of("planted", 5, 200, 200);
  const auto good = run_untuned(spec, std::vector<VersionSplit>{split});
  EXPECT_LT(good.summaries[0].value, 0.30);

  std::vector<Label> labels(split.train.labels().begin(), split.train.labels().end());
  Rng rng(9);
  rng.shuffle(labels);
  const VersionSplit control{"control", split.train.with_labels(labels), split.test};
  const auto noise = run_untuned(spec, std::vector<VersionSplit>{control});
  EXPECT_GT(noise.summaries[0].value, 0.3);
}

TEST(Untuned, RejectsTuningSection) {
  auto spec = base_spec({learners::LearnerKind::cart});
  spec.tuning = tuner::DEConfig{};
  EXPECT_THROW(run_untuned(spec, {split_of("a", 1)}), ConfigError);
}

TEST(Tuned, RepeatsMedianBudgetAndSeedingInvariant) {
  auto spec = base_spec({learners::LearnerKind::cart, learners::LearnerKind::knn});
  spec.tuning = quick_de();
  spec.repeats = 3;
  const auto r = run_tuned(spec, {split_of("ant", 2)});
  EXPECT_EQ(r.runs.size(), 6u);
  EXPECT_EQ(r.test_accesses, 6u);
  std::size_t evaluations = 0;
  for (const auto& run : r.runs) {
    ASSERT_TRUE(run.tune_score && run.default_tune_score);
    EXPECT_LE(*run.tune_score, *run.default_tune_score);  // d2h is minimised
    EXPECT_EQ(run.evaluations % spec.tuning->np, 0u);
    EXPECT_GE(run.evaluations, spec.tuning->np * 2);
    evaluations += run.evaluations;
  }
  EXPECT_EQ(r.evaluations, evaluations);
  for (const auto& s : r.summaries) {
    std::vector<double> v;
    for (const auto& run : r.runs) {
      if (run.learner == s.learner) v.push_back(run.score);
    }
    ASSERT_EQ(v.size(), 3u);
    std::sort(v.begin(), v.end());
    EXPECT_EQ(s.value, v[1]);
  }
}

TEST(Tuned, SingleRepeatMedianIsTheValue) {
  auto spec = base_spec({learners::LearnerKind::cart});
  spec.tuning = quick_de();
  const auto r = run_tuned(spec, {split_of("ant", 3)});
  ASSERT_EQ(r.runs.size(), 1u);
  EXPECT_EQ(r.summaries[0].value, r.runs[0].score);
  EXPECT_THROW(run_tuned(base_spec({learners::LearnerKind::cart}), {split_of("a", 1)}), ConfigError);
  auto untunable = base_spec({learners::LearnerKind::naive_bayes});
  untunable.tuning = quick_de();
  EXPECT_THROW(run_tuned(untunable, {split_of("a", 1)}), ConfigError);
}

TEST(KFold, MeanOfFolds) {
  auto spec = base_spec({learners::LearnerKind::knn});
  spec.tuning = quick_de();
  spec.split.kind = SplitKind::kfold;
  spec.split.k = 2;
  const auto r = run_kfold_tuned(spec, {split_of("ant", 4)});
  ASSERT_EQ(r.runs.size(), 2u);
  EXPECT_EQ(r.test_accesses, 2u);
  EXPECT_NEAR(r.summaries[0].value, (r.runs[0].score + r.runs[1].score) / 2.0, 1e-12);
  EXPECT_EQ(r.runs[0].train_size, 45u);
}

TEST(Smotuned, TuningsInRangeAndTestUntouched) {
  auto spec = base_spec({learners::LearnerKind::cart});
  spec.tuning = quick_de();
  spec.preprocess = Preprocess::smotuned;
  spec.repeats = 2;
  const auto split = split_of("ant", 6, 120, 50);
  const auto r = run_smotuned(spec, {split});
  ASSERT_EQ(r.runs.size(), 2u);
  for (const auto& run : r.runs) {
    EXPECT_EQ(run.test_size, split.test.size());
    const auto t = parse_tunings(run.tunings);
    const int k = std::stoi(t.at("k"));
    const double rr = std::stod(t.at("r"));
    EXPECT_GE(k, 1);
    EXPECT_LE(k, 20);
    EXPECT_TRUE(t.at("m") == "50" || t.at("m") == "100" || t.at("m") == "200" || t.at("m") == "400");
    EXPECT_GE(rr, 0.1);
    EXPECT_LE(rr, 5.0);
  }
  EXPECT_EQ(split.test.size(), 50u);
}

TEST(Smotuned, MinorityFreeTuningSplitNamesDataset) {
  auto spec = base_spec({learners::LearnerKind::cart});
  spec.tuning = quick_de();
  spec.preprocess = Preprocess::smotuned;
  // five defectives among 100 rows: the 20-row tuning split will miss some of them in most repeats
  auto train = frugal::testing::planted(100, 2, 7, 0.01);
  const std::vector<VersionSplit> splits{{"jedit", train, frugal::testing::planted(30, 2, 8)}};
  try {
    run_smotuned(spec, splits);
    FAIL() << "expected a degenerate-data error";
  } catch (const DegenerateDataError& e) {
    EXPECT_NE(std::string(e.what()).find("jedit"), std::string::npos) << e.what();
  }
}

TEST(Report, GridShapeBestMarkerAndCsvRoundTrip) {
  auto spec = base_spec({learners::LearnerKind::cart, learners::LearnerKind::naive_bayes});
  const auto r = run_untuned(spec, {split_of("ant", 1), split_of("camel", 2), split_of("ivy", 3)});
  const auto table = report(r, ReportFormat::table);
  EXPECT_NE(table.find("ant"), std::string::npos);
  EXPECT_NE(table.find('*'), std::string::npos);
  EXPECT_EQ(table.find("runtime"), std::string::npos);

  const auto csv = report(r, ReportFormat::csv);
  const auto grid = parse_report_csv(csv);
  ASSERT_EQ(grid.methods.size(), 2u);
  ASSERT_EQ(grid.rows.size(), 3u);
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& row = grid.rows[d];
    ASSERT_EQ(row.values.size(), 2u);
    double best = 1e9;
    for (std::size_t m = 0; m < 2; ++m) {
      for (const auto& s : r.summaries) {
        if (s.dataset == row.dataset && s.learner == grid.methods[m]) {
          EXPECT_NEAR(row.values[m], 100.0 * s.value, 0.05 + 1e-9);
        }
      }
      best = std::min(best, row.values[m]);
    }
    const auto winner = std::find(row.values.begin(), row.values.end(), best) - row.values.begin();
    EXPECT_NE(row.best.find(grid.methods[static_cast<std::size_t>(winner)]), std::string::npos);
  }
  EXPECT_EQ(report(result_from_json(to_json(r)), ReportFormat::csv), csv);
}

TEST(Report, RuntimeColumnFollowsMode) {
  auto spec = base_spec({learners::LearnerKind::cart});
  const auto untuned = run_untuned(spec, {split_of("ant", 1)});
  EXPECT_EQ(report(untuned, ReportFormat::csv).find("_seconds"), std::string::npos);
  ReportOptions on;
  on.runtime = true;
  EXPECT_NE(report(untuned, ReportFormat::csv, on).find("cart_seconds"), std::string::npos);
  EXPECT_EQ(parse_report_csv(report(untuned, ReportFormat::csv, on)).rows[0].seconds.size(), 1u);

  spec.tuning = quick_de();
  const auto tuned = run_tuned(spec, {split_of("ant", 1)});
  EXPECT_NE(report(tuned, ReportFormat::csv).find("cart_seconds"), std::string::npos);
  EXPECT_NE(report(tuned, ReportFormat::table).find("runtime"), std::string::npos);
  EXPECT_THROW(report(ExperimentResult{}, ReportFormat::table), ArgumentError);
}

TEST(Report, ScoresAreScaledToOneDecimal) {
  ExperimentResult r;
  r.summaries.push_back({"poi", "fft", 0.2345, 1, 0.0});
  r.summaries.push_back({"poi", "cart", 0.53, 1, 0.0});
  const auto csv = report(r, ReportFormat::csv);
  EXPECT_EQ(csv, "dataset,fft,cart,best\npoi,23.4,53.0,fft\n");
}

TEST(Config, ParseExperimentJson) {
  const auto spec = parse_experiment(R"({
    "manifest": "data/manifest.json", "datasets": ["poi"],
    "learners": ["rf", {"kind": "cart", "params": {"threshold": 0.4, "max_leaf_nodes": 12}}],
    "goal": "popt", "tuning": {"np": 12, "life": 3}, "repeats": 30, "seed": 7,
    "split": {"kind": "kfold", "k": 5}})",
                                     "/base");
  EXPECT_EQ(spec.manifest, std::filesystem::path("/base/data/manifest.json"));
  ASSERT_EQ(spec.learners.size(), 2u);
  EXPECT_EQ(spec.learners[1].get("max_leaf_nodes"), ParamValue(std::int64_t{12}));
  EXPECT_EQ(spec.goal.kind, GoalKind::p_opt);
  EXPECT_EQ(spec.tuning->np, 12u);
  EXPECT_EQ(spec.tuning->life, 3u);
  EXPECT_EQ(spec.repeats, 30u);
  EXPECT_EQ(spec.split.kind, SplitKind::kfold);
  EXPECT_EQ(spec.split.k, 5u);

  EXPECT_THROW(parse_experiment("{", "."), ConfigError);
  EXPECT_THROW(parse_experiment(R"({"learners": ["em"]})", "."), ConfigError);
  const auto wide = parse_experiment(R"({"learners": [{"kind": "rf", "params": {"n_estimators": 999}}]})", ".");
  EXPECT_THROW(wide.validate(), ConfigError);
  auto zero = base_spec({learners::LearnerKind::cart});
  zero.repeats = 0;
  EXPECT_THROW(zero.validate(), ConfigError);
}

TEST(Manifest, MissingDatasetIsConfigError) {
  const auto dir = std::filesystem::temp_directory_path() / "frugal_harness_manifest";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "m.json") << R"({"projects": [{"name": "a", "versions": []}]})";
  auto spec = base_spec({learners::LearnerKind::cart});
  spec.manifest = dir / "m.json";
  spec.datasets = {"b"};
  EXPECT_THROW(load_splits(spec), ConfigError);
  spec.datasets = {"a"};
  EXPECT_THROW(load_splits(spec), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Report, CellsEqualAtDisplayPrecisionShareTheMarker) {
  ExperimentResult r;
  r.summaries.push_back({"poi", "cart", 0.21601, 1, 0.0});
  r.summaries.push_back({"poi", "rf", 0.21598, 1, 0.0});
  EXPECT_EQ(report(r, ReportFormat::csv), "dataset,cart,rf,best\npoi,21.6,21.6,cart|rf\n");
}
