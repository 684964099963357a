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
#include "frugal/fft.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

using namespace frugal;
using frugal::testing::make_dataset;

namespace {

const GoalSpec kD2h{GoalKind::dist2heaven};

// x0 separates (defective iff x0 > 3), x1 is constant, last column is loc.
Dataset separator6() {
  return make_dataset({{1, 7, 10}, {2, 7, 20}, {3, 7, 30}, {4, 7, 15}, {5, 7, 25}, {6, 7, 35}}, {0, 0, 0, 1, 1, 1});
}

/// Reads a rule list line by line and answers for one feature vector, without
/// going through the library's parser.
Label interpret(const std::string& rules, const std::vector<std::string>& names, const Eigen::VectorXd& x) {
  std::istringstream in(rules);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string w;
    std::vector<std::string> t;
    while (words >> w) t.push_back(w);
    if (t.empty()) continue;
    if (t.size() == 2) return t[1] == "true" ? Label::defective : Label::clean;
    const std::size_t at = t[0] == "else" ? 2 : 1;
    const auto col = std::find(names.begin(), names.end(), t[at]) - names.begin();
    const double v = x(col);
    const double thr = std::stod(t[at + 2]);
    const bool hit = t[at + 1] == "<=" ? v <= thr : v > thr;
    if (hit) return t[at + 4] == "true" ? Label::defective : Label::clean;
  }
  ADD_FAILURE() << "rule list fell through";
  return Label::clean;
}

Dataset random_dataset(std::size_t n, std::size_t cols, Rng& rng) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(cols));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < cols; ++j) rows[i][j] = static_cast<double>(rng.below(6));
    rows[i][cols - 1] = static_cast<double>(1 + rng.below(100));
    labels[i] = rng.coin();
  }
  labels[0] = 1;
  labels[1] = 0;
  return make_dataset(rows, labels);
}

}  // namespace

TEST(Median, LowerMedianConvention) {
  const std::vector<double> odd{3, 1, 2};
  const std::vector<double> even{4, 1, 3, 2};
  const std::vector<double> flat{5, 5, 5, 5};
  EXPECT_EQ(fft::median(odd), 2.0);
  EXPECT_EQ(fft::median(even), 2.0);
  EXPECT_EQ(fft::median(flat), 5.0);
  EXPECT_THROW(fft::median(std::vector<double>{}), ArgumentError);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(1 + rng.below(20));
    for (auto& x : v) x = rng.uniform();
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(fft::median(v), sorted[(sorted.size() - 1) / 2]);
  }
}

TEST(MedianSplit, ColumnMedian) {
  const auto d = separator6();
  EXPECT_EQ(fft::median_split(d, 0), 3.0);
  EXPECT_EQ(fft::median_split(d, 1), 7.0);
  EXPECT_THROW(fft::median_split(Dataset(d.schema(), FeatureMatrix(0, 3), {}), 0), ArgumentError);
}

TEST(ScoreRanges, PerfectSeparatorWins) {
  const auto d = separator6();
  const auto ranges = fft::score_ranges(d, kD2h);
  ASSERT_FALSE(ranges.empty());
  const auto& top = ranges.front();
  EXPECT_EQ(top.attribute, 0u);
  EXPECT_EQ(top.score, 0.0);
  EXPECT_TRUE(std::is_sorted(ranges.begin(), ranges.end(),
                             [](const fft::Range& a, const fft::Range& b) { return a.score < b.score; }));
  const auto bad = fft::extreme_range(d, kD2h, Label::defective);
  EXPECT_EQ(bad.attribute, 0u);
  EXPECT_EQ(bad.relation, fft::Relation::gt);
  EXPECT_EQ(bad.threshold, 3.0);
  const auto good = fft::extreme_range(d, kD2h, Label::clean);
  EXPECT_EQ(good.relation, fft::Relation::le);
  for (const auto& r : ranges) {
    if (r.attribute == 1) EXPECT_GT(r.score, 0.0);
  }
}

TEST(ScoreRanges, PlantedSignalBeatsNoise) {
  const auto d = frugal::testing::planted(200, 4, 5);
  const auto ranges = fft::score_ranges(d, kD2h);
  EXPECT_EQ(ranges.front().attribute, 0u);
  for (const auto& r : ranges) {
    if (r.attribute != 0) EXPECT_GT(r.score, ranges.front().score + 0.2);
  }
}

TEST(ScoreRanges, RangeScoreIsDirectMetric) {
  const auto d = separator6();
  const fft::Range r{1, fft::Relation::le, 7.0, Label::defective, 0.0};
  // everything captured and called defective: recall 1, false alarm 1
  EXPECT_NEAR(fft::score_range(d, kD2h, r), dist2heaven(1.0, 1.0), 1e-15);
}

TEST(ScoreRanges, SingleClassIsDegenerate) {
  const auto d = make_dataset({{1, 10}, {2, 20}}, {1, 1});
  EXPECT_THROW(fft::score_ranges(d, kD2h), DegenerateDataError);
  EXPECT_THROW(fft::fit(d, kD2h, 2), DegenerateDataError);
}

TEST(BuildTree, DepthOneOnSeparator) {
  const auto tree = fft::build_tree(separator6(), kD2h, 0b1, 1);
  ASSERT_EQ(tree.levels.size(), 1u);
  EXPECT_EQ(tree.levels[0].attribute, 0u);
  EXPECT_EQ(tree.levels[0].relation, fft::Relation::gt);
  EXPECT_EQ(tree.levels[0].predicted, Label::defective);
  EXPECT_EQ(tree.else_class, Label::clean);
  const auto d = separator6();
  EXPECT_EQ(fft::predict(tree, d), (std::vector<Label>(d.labels().begin(), d.labels().end())));
}

TEST(BuildTree, StructureBitsFollowLevels) {
  // false, true, true, true
  EXPECT_EQ(fft::exit_class(14, 0), Label::clean);
  for (std::size_t l = 1; l < 4; ++l) EXPECT_EQ(fft::exit_class(14, l), Label::defective);
  const auto d = frugal::testing::planted(80, 3, 2, 0.5);
  const auto tree = fft::build_tree(d, kD2h, 14, 4);
  for (std::size_t l = 0; l < tree.levels.size(); ++l) EXPECT_EQ(tree.levels[l].predicted, fft::exit_class(14, l));
  EXPECT_THROW(fft::build_tree(d, kD2h, 16, 4), ArgumentError);
}

TEST(BuildTree, DepthZeroIsMajorityLeaf) {
  const auto d = make_dataset({{1, 10}, {2, 20}, {3, 30}}, {1, 0, 1});
  const auto tree = fft::build_tree(d, kD2h, 0, 0);
  EXPECT_TRUE(tree.levels.empty());
  EXPECT_EQ(tree.else_class, Label::defective);
}

TEST(BuildTree, TruncatesWhenDataRunsOut) {
  const auto tree = fft::build_tree(separator6(), kD2h, 0b11, 2);
  // the first level captures every defective row, leaving only clean rows
  EXPECT_TRUE(tree.truncated());
  EXPECT_EQ(tree.levels.size(), 1u);
  EXPECT_EQ(tree.else_class, Label::clean);
}

TEST(Fit, EnumeratesAllTrees) {
  const auto d = frugal::testing::planted(60, 3, 7);
  for (std::size_t depth = 1; depth <= 5; ++depth) {
    const auto e = fft::fit(d, kD2h, depth);
    EXPECT_EQ(e.trees.size(), std::size_t{1} << depth);
    EXPECT_EQ(e.scores.size(), e.trees.size());
    for (std::size_t i = 0; i < e.trees.size(); ++i) {
      EXPECT_EQ(e.trees[i].structure_id, i);
      EXPECT_LE(e.scores[e.best], e.scores[i]);
    }
  }
  EXPECT_THROW(fft::fit(d, kD2h, 0), ArgumentError);
}

TEST(Fit, BestIsArgbestUnderEachGoal) {
  Rng rng(4);
  const auto d = random_dataset(40, 4, rng);
  for (auto kind : {GoalKind::p_opt, GoalKind::f1, GoalKind::accuracy}) {
    const auto e = fft::fit(d, GoalSpec{kind}, 3);
    for (double s : e.scores) EXPECT_GE(e.scores[e.best], s);
  }
}

TEST(Fit, PlantedSeparatorReachesHeaven) {
  // balanced classes put the lower median exactly on the class boundary
  const auto d = frugal::testing::planted(120, 5, 3, 0.5);
  const auto e = fft::fit(d, kD2h, 4);
  EXPECT_EQ(e.scores[e.best], 0.0);
}

TEST(Fit, BestScoreInvariantUnderRowPermutation) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const auto d = random_dataset(20, 4, rng);
    auto order = permutation(d.size(), rng);
    const auto shuffled = d.subset(order);
    EXPECT_EQ(fft::fit(d, kD2h, 3).scores.at(fft::fit(d, kD2h, 3).best),
              fft::fit(shuffled, kD2h, 3).scores.at(fft::fit(shuffled, kD2h, 3).best));
  }
}

TEST(Predict, HandWrittenRuleList) {
  const std::vector<std::string> names{"cob", "rfc", "dam", "amc", "loc"};
  const auto tree = fft::parse_rules(
      "1. if cob <= 4 then false\n"
      "2. else if rfc > 32 then true\n"
      "3. else if dam > 0 then true\n"
      "4. else if amc <= 32.25 then true\n"
      "5. else false\n",
      names);
  EXPECT_EQ(tree.structure_id, 14u);
  EXPECT_EQ(tree.depth, 4u);
  auto inst = [](double cob, double rfc, double dam, double amc) {
    Instance i;
    i.features = Eigen::VectorXd(5);
    i.features << cob, rfc, dam, amc, 100;
    return i;
  };
  EXPECT_EQ(fft::predict(tree, inst(3, 50, 1, 1)), Label::clean);
  EXPECT_EQ(fft::predict(tree, inst(5, 40, 0, 99)), Label::defective);
  EXPECT_EQ(fft::predict(tree, inst(5, 10, 0, 40)), Label::clean);
  Instance wrong;
  wrong.features = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(fft::predict(tree, wrong), ArgumentError);
}

TEST(Predict, RejectsForeignSchema) {
  const auto e = fft::fit(separator6(), kD2h, 2);
  const auto other = make_dataset({{1, 2, 3, 4}}, {1});
  EXPECT_THROW(fft::predict(e.best_tree(), other), ArgumentError);
}

TEST(Predict, MatchesLiteralRuleInterpreter) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto d = random_dataset(20, 4, rng);
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      const auto e = fft::fit(d, kD2h, depth);
      for (const auto& tree : e.trees) {
        const auto rules = fft::to_rules(tree);
        const auto names = tree.attribute_names;
        const auto labels = fft::predict(tree, d);
        for (std::size_t i = 0; i < d.size(); ++i) {
          ASSERT_EQ(labels[i], interpret(rules, names, d.instance(i).features)) << rules;
        }
      }
    }
  }
}

TEST(Serialization, RulesAndJsonRoundTrip) {
  const auto d = frugal::testing::planted(50, 3, 9);
  const auto e = fft::fit(d, kD2h, 3);
  for (const auto& tree : e.trees) {
    const auto back = fft::parse_rules(fft::to_rules(tree), tree.attribute_names);
    EXPECT_EQ(fft::predict(back, d), fft::predict(tree, d));
    EXPECT_EQ(back.levels.size(), tree.levels.size());
    const auto j = fft::tree_from_json(fft::to_json(tree));
    EXPECT_TRUE(j.same_rules(tree));
    EXPECT_EQ(j.depth, tree.depth);
  }
}

TEST(Serialization, ParseErrors) {
  const std::vector<std::string> names{"a", "loc"};
  EXPECT_THROW(fft::parse_rules("if a <= 1 then true\n", names), ParseError);
  EXPECT_THROW(fft::parse_rules("if b <= 1 then true\nelse false\n", names), ParseError);
  EXPECT_THROW(fft::parse_rules("if a >= 1 then true\nelse false\n", names), ParseError);
  EXPECT_THROW(fft::parse_rules("if a <= x then true\nelse false\n", names), ParseError);
  EXPECT_THROW(fft::tree_from_json("[]"), ParseError);
}
