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

#pragma once

#include "frugal/dataset.hpp"
#include "frugal/random.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace frugal::testing {

/// Schema with features x0..x{n-2}, loc, bug (label last, loc second to last).
inline AttributeSchema numbered_schema(std::size_t features) {
  AttributeSchema s;
  for (std::size_t i = 0; i + 1 < features; ++i) s.names.push_back("x" + std::to_string(i));
  s.names.push_back("loc");
  s.names.push_back("bug");
  s.loc_index = features - 1;
  s.label_index = features;
  return s;
}

inline Dataset make_dataset(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels) {
  const std::size_t cols = rows.empty() ? 1 : rows.front().size();
  FeatureMatrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  std::vector<Label> y;
  for (int l : labels) y.push_back(l ? Label::defective : Label::clean);
  return Dataset(numbered_schema(cols), std::move(x), std::move(y));
}

/// `n` rows, round(n * defect_share) of them defective, in shuffled order.
/// Column 0 separates the classes perfectly (defective iff x0 > 0.5), the
/// next `noise` columns are uniform noise, and the last column is loc.
inline Dataset planted(std::size_t n, std::size_t noise, std::uint64_t seed, double defect_share = 0.4) {
  Rng rng(seed);
  const std::size_t cols = noise + 2;
  FeatureMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  std::vector<Label> y(n, Label::clean);
  std::fill_n(y.begin(), static_cast<std::size_t>(static_cast<double>(n) * defect_share + 0.5), Label::defective);
  rng.shuffle(y);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const bool bad = y[i] == Label::defective;
    x(r, 0) = bad ? rng.uniform(0.6, 1.0) : rng.uniform(0.0, 0.4);
    for (std::size_t j = 1; j <= noise; ++j) x(r, static_cast<Eigen::Index>(j)) = rng.uniform();
    x(r, static_cast<Eigen::Index>(cols - 1)) = static_cast<double>(rng.between(10, 1000));
  }
  return Dataset(numbered_schema(cols), std::move(x), std::move(y));
}

}  // namespace frugal::testing
