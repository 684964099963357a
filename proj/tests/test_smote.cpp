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
#include "frugal/smote.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace frugal;
using frugal::testing::make_dataset;

namespace {

smote::SmoteConfig config(int k, int m, double r = 2.0, std::uint64_t seed = 1) {
  smote::SmoteConfig c;
  c.k = k;
  c.m = m;
  c.r = r;
  c.seed = seed;
  return c;
}

/// True when p = x + u (y - x) for some minority pair (x, y) and one u in [0, 1].
bool on_some_segment(const Dataset& src, Label minority, const Eigen::RowVectorXd& p) {
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src.label(i) != minority) continue;
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (j == i || src.label(j) != minority) continue;
      const Eigen::RowVectorXd x = src.row(i);
      const Eigen::RowVectorXd d = src.row(j) - x;
      std::optional<double> u;
      bool ok = true;
      for (Eigen::Index c = 0; c < d.size() && ok; ++c) {
        if (std::abs(d(c)) < 1e-12) {
          ok = std::abs(p(c) - x(c)) < 1e-9;
        } else {
          const double uc = (p(c) - x(c)) / d(c);
          if (uc < -1e-9 || uc > 1 + 1e-9) ok = false;
          if (u && std::abs(*u - uc) > 1e-9) ok = false;
          u = uc;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Minkowski, Examples) {
  Eigen::Vector2d a(0, 0), b(3, 4);
  EXPECT_DOUBLE_EQ(smote::minkowski(a, b, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(smote::minkowski(a, b, 1.0), 7.0);
  EXPECT_NEAR(smote::minkowski(a, b, 3.0), std::cbrt(27.0 + 64.0), 1e-12);
  for (double r : {0.1, 0.5, 1.0, 2.0, 5.0}) EXPECT_EQ(smote::minkowski(b, b, r), 0.0);
  EXPECT_THROW(smote::minkowski(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3), 2.0), ArgumentError);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(config(5, 50).validate());
  EXPECT_THROW(config(0, 50).validate(), ValidationError);
  EXPECT_THROW(config(21, 50).validate(), ValidationError);
  EXPECT_THROW(config(5, 75).validate(), ValidationError);
  EXPECT_THROW(config(5, 50, 0.05).validate(), ValidationError);
  EXPECT_THROW(config(5, 50, 5.5).validate(), ValidationError);
}

TEST(Targets, RatioSemantics) {
  for (int m : {50, 100, 200, 400}) {
    const auto t = smote::targets(30, 170, m);
    EXPECT_LE(t.minority + t.majority, 200u);
    EXPECT_EQ(t.minority * 50, t.majority * static_cast<std::size_t>(m));
  }
  const auto half = smote::targets(30, 170, 50);
  EXPECT_EQ(half.minority, 100u);
  EXPECT_EQ(half.majority, 100u);
}

TEST(Apply, FiftyBalancesExactly) {
  const auto d = frugal::testing::planted(101, 3, 5, 0.2);
  const auto out = smote::apply(d, config(5, 50));
  EXPECT_EQ(out.defectives() * 2, out.size());
  EXPECT_LE(out.size(), d.size());
}

TEST(Apply, KeptRowsAreValueIdenticalAndInputUntouched) {
  const auto d = frugal::testing::planted(60, 2, 6, 0.25);
  const auto copy = d;
  const auto out = smote::apply(d, config(3, 100));
  EXPECT_EQ(d, copy);
  // every non-synthetic output row is some input row
  std::size_t matched = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (out.row(i) == d.row(j) && out.label(i) == d.label(j)) {
        ++matched;
        break;
      }
    }
  }
  EXPECT_GE(matched, d.defectives() + smote::targets(d.defectives(), d.size() - d.defectives(), 100).majority);
}

TEST(Apply, TwoIdenticalMinorityPoints) {
  const auto d = make_dataset({{2, 3, 10}, {2, 3, 10}, {0, 0, 1}, {1, 0, 2}, {0, 1, 3}, {1, 1, 4}, {5, 5, 5}, {6, 6, 6}},
                              {1, 1, 0, 0, 0, 0, 0, 0});
  const auto out = smote::apply(d, config(1, 200));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.label(i) == Label::defective) EXPECT_EQ(out.row(i), d.row(0));
  }
  EXPECT_GT(out.defectives(), 2u);
}

TEST(Apply, SegmentBetweenTwoPoints) {
  const auto d = make_dataset({{0, 0}, {1, 1}, {3, 9}, {4, 9}, {5, 9}, {6, 9}, {7, 9}, {8, 9}}, {1, 1, 0, 0, 0, 0, 0, 0});
  const auto out = smote::apply(d, config(1, 400));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.label(i) != Label::defective) continue;
    EXPECT_DOUBLE_EQ(out.row(i)(0), out.row(i)(1));
    EXPECT_GE(out.row(i)(0), 0.0);
    EXPECT_LE(out.row(i)(0), 1.0);
  }
}

TEST(Apply, SyntheticPointsAreConvexCombinations) {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto d = frugal::testing::planted(40 + rng.below(40), 2, rng.next(), 0.2);
    const int m = std::array<int, 4>{50, 100, 200, 400}[rng.below(4)];
    const auto out = smote::apply(d, config(1 + static_cast<int>(rng.below(5)), m, rng.uniform(0.1, 5.0), rng.next()));
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out.label(i) == Label::defective) ASSERT_TRUE(on_some_segment(d, Label::defective, out.row(i)));
    }
  }
}

TEST(Apply, MinorityMayBeCleanClass) {
  const auto d = frugal::testing::planted(50, 2, 8, 0.8);
  const auto out = smote::apply(d, config(5, 50));
  EXPECT_EQ(out.defectives() * 2, out.size());
}

TEST(Apply, ClampsKWithWarning) {
  const auto d = make_dataset({{0, 1}, {1, 2}, {2, 3}, {5, 4}, {6, 5}, {7, 6}, {8, 7}, {9, 8}}, {1, 1, 1, 0, 0, 0, 0, 0});
  std::vector<std::string> warnings;
  EXPECT_NO_THROW(smote::apply(d, config(10, 50), &warnings));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("clamped to 2"), std::string::npos);
}

TEST(Apply, DegenerateInputs) {
  const auto one_minority = make_dataset({{0, 1}, {1, 2}, {2, 3}}, {1, 0, 0});
  EXPECT_THROW(smote::apply(one_minority, config(1, 50)), DegenerateDataError);
  const auto single = make_dataset({{0, 1}, {1, 2}}, {0, 0});
  EXPECT_THROW(smote::apply(single, config(1, 50)), DegenerateDataError);
}

TEST(Apply, Deterministic) {
  const auto d = frugal::testing::planted(80, 3, 2, 0.2);
  EXPECT_EQ(smote::apply(d, config(5, 200, 1.5, 9)), smote::apply(d, config(5, 200, 1.5, 9)));
  EXPECT_FALSE(smote::apply(d, config(5, 200, 1.5, 9)) == smote::apply(d, config(5, 200, 1.5, 10)));
}

TEST(ConfigFrom, ReadsCandidate) {
  const auto space = smote::param_space();
  auto c = space.defaults();
  const auto cfg = smote::config_from(c, 3);
  EXPECT_EQ(cfg.k, 5);
  EXPECT_EQ(cfg.m, 50);
  EXPECT_EQ(cfg.r, 2.0);
  EXPECT_EQ(cfg.seed, 3u);
  c.tunings[1] = std::string("75");
  EXPECT_THROW(smote::config_from(c, 1), ValidationError);
}
