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

#include "frugal/smote.hpp"

#include "frugal/random.hpp"

#include <algorithm>
#include <numeric>

namespace frugal::smote {

void SmoteConfig::validate() const {
  if (k < 1 || k > 20) throw ValidationError("smote k must lie in [1, 20], got " + std::to_string(k));
  if (m != 50 && m != 100 && m != 200 && m != 400) {
    throw ValidationError("smote m must be one of 50, 100, 200, 400, got " + std::to_string(m));
  }
  if (!(r >= 0.1 && r <= 5.0)) throw ValidationError("smote r must lie in [0.1, 5]");
}

ParamSpace param_space() {
  return ParamSpace({
      ParamSpec::integer("k", 1, 20, std::int64_t{5}, "Number of neighbors"),
      ParamSpec::categorical("m", {"50", "100", "200", "400"}, std::string("50"),
                             "Minority share of the final training data, in percent"),
      ParamSpec::continuous("r", 0.1, 5.0, 2.0, "Power parameter for the Minkowski distance metric"),
  });
}

SmoteConfig config_from(const Candidate& c, std::uint64_t seed) {
  const auto space = param_space();
  if (!space.contains(c)) throw ValidationError("candidate is not a SMOTE configuration");
  SmoteConfig cfg;
  cfg.k = static_cast<int>(std::get<std::int64_t>(c.tunings[0]));
  cfg.m = std::stoi(std::get<std::string>(c.tunings[1]));
  cfg.r = std::get<double>(c.tunings[2]);
  cfg.seed = seed;
  return cfg;
}

Targets targets(std::size_t minority, std::size_t majority, int m) {
  const std::size_t n = minority + majority;
  const auto share = static_cast<std::size_t>(m);
  Targets t;
  t.majority = n * 50 / (share + 50);
  t.minority = t.majority * share / 50;
  return t;
}

Dataset apply(const Dataset& data, const SmoteConfig& cfg, std::vector<std::string>* warnings) {
  cfg.validate();
  const std::size_t n_bad = data.defectives();
  const std::size_t n_good = data.size() - n_bad;
  if (n_bad == 0 || n_good == 0) throw DegenerateDataError("smote needs both classes present");
  const Label minority_label = n_bad <= n_good ? Label::defective : Label::clean;

  std::vector<std::size_t> minority;
  std::vector<std::size_t> majority;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (data.label(i) == minority_label ? minority : majority).push_back(i);
  }
  if (minority.size() < 2) throw DegenerateDataError("smote needs at least 2 minority instances");

  auto k = static_cast<std::size_t>(cfg.k);
  if (k >= minority.size()) {
    k = minority.size() - 1;
    if (warnings) {
      warnings->push_back("smote: k=" + std::to_string(cfg.k) + " clamped to " + std::to_string(k) +
                          " (minority has " + std::to_string(minority.size()) + " instances)");
    }
  }

  const auto goal = targets(minority.size(), majority.size(), cfg.m);
  Rng rng(cfg.seed);

  std::vector<std::size_t> kept = minority;
  for (auto pos : sample_without_replacement(majority.size(), goal.majority, rng)) kept.push_back(majority[pos]);
  std::sort(kept.begin(), kept.end());

  // k nearest minority neighbours of every minority row; ties by row order.
  const std::size_t s = minority.size();
  std::vector<std::vector<std::size_t>> neighbours(s);
  {
    std::vector<double> dist(s);
    std::vector<std::size_t> order(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) dist[j] = minkowski(data.row(minority[i]), data.row(minority[j]), cfg.r);
      order.resize(s);
      std::iota(order.begin(), order.end(), std::size_t{0});
      order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
      neighbours[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    }
  }

  const std::size_t synthetic = goal.minority > s ? goal.minority - s : 0;
  FeatureMatrix out(static_cast<Eigen::Index>(kept.size() + synthetic), static_cast<Eigen::Index>(data.feature_count()));
  std::vector<Label> labels;
  labels.reserve(kept.size() + synthetic);
  Eigen::Index row = 0;
  for (auto i : kept) {
    out.row(row++) = data.row(i);
    labels.push_back(data.label(i));
  }
  for (std::size_t j = 0; j < synthetic; ++j) {
    const std::size_t x = rng.below(s);
    const std::size_t nn = neighbours[x][rng.below(k)];
    const double u = rng.uniform();
    const auto base = data.row(minority[x]);
    out.row(row++) = base + u * (data.row(minority[nn]) - base);
    labels.push_back(minority_label);
  }
  return Dataset(data.schema(), std::move(out), std::move(labels), data.provenance());
}

}  // namespace frugal::smote
