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
#include "frugal/errors.hpp"
#include "frugal/param_space.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace frugal::smote {

/// (sum_i |a_i - b_i|^r)^(1/r).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar minkowski(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                    typename DerivedA::Scalar r) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) throw ArgumentError("minkowski: vectors differ in length");
  if (!(r > Scalar(0))) throw ArgumentError("minkowski: power must be positive");
  if (r == Scalar(2)) return (a - b).norm();
  if (r == Scalar(1)) return (a - b).template lpNorm<1>();
  using std::pow;
  return pow((a - b).array().abs().pow(r).sum(), Scalar(1) / r);
}

struct SmoteConfig {
  int k = 5;
  /// Minority share setting in percent: one of 50, 100, 200, 400.
  int m = 50;
  double r = 2.0;
  std::uint64_t seed = 0;

  /// Throws ValidationError unless k in [1,20], m in {50,100,200,400}, r in [0.1,5].
  void validate() const;
};

/// k, m, r as a tuning space (defaults 5, 50, 2).
ParamSpace param_space();
SmoteConfig config_from(const Candidate& c, std::uint64_t seed);

/// Final class sizes for `minority` and `majority` originals:
/// majority_final = floor(n * 50 / (m + 50)), minority_final = majority_final * m / 50,
/// so the classes stand in ratio m : 50 and the total never exceeds n.
struct Targets {
  std::size_t minority = 0;
  std::size_t majority = 0;
};
Targets targets(std::size_t minority, std::size_t majority, int m);

/// Rebalances training data: undersamples the majority class at random and
/// synthesises minority rows x + u (nn - x), nn one of the k nearest minority
/// neighbours of x under the Minkowski-r distance, u ~ U[0, 1]. Kept rows
/// appear first in their original order, synthetic rows follow.
///
/// When k >= minority size, k is clamped to minority - 1 and a message is
/// appended to `warnings` (if given).
Dataset apply(const Dataset& data, const SmoteConfig& cfg, std::vector<std::string>* warnings = nullptr);

}  // namespace frugal::smote
