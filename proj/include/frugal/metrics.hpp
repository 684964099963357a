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

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frugal {

enum class Direction { minimize, maximize };

/// True when `candidate` beats `incumbent` by more than `tolerance` in `dir`.
constexpr bool improves(Direction dir, double candidate, double incumbent, double tolerance = 0.0) noexcept {
  return dir == Direction::maximize ? candidate > incumbent + tolerance : candidate < incumbent - tolerance;
}

// ---------------------------------------------------------------------------
// Confusion matrix

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// counts(i, j) = instances of actual class i predicted as class j.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t n_classes);
  explicit ConfusionMatrix(CountMatrix counts);

  std::size_t n_classes() const { return static_cast<std::size_t>(counts_.rows()); }
  std::int64_t operator()(std::size_t actual, std::size_t predicted) const {
    return counts_(static_cast<Eigen::Index>(actual), static_cast<Eigen::Index>(predicted));
  }
  const CountMatrix& counts() const { return counts_; }
  std::int64_t total() const { return counts_.sum(); }

  void add(std::size_t actual, std::size_t predicted);

  bool operator==(const ConfusionMatrix& other) const { return counts_ == other.counts_; }

 private:
  CountMatrix counts_;
};

ConfusionMatrix confusion(std::span<const int> actual, std::span<const int> predicted, int n_classes);
/// Binary matrix; class 1 is defective.
ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// precision_j = c_jj / sum_i c_ij, recall_j = c_jj / sum_i c_ji,
/// f1_j = 2 p r / (p + r). Any 0/0 is reported as 0.
ClassMetrics class_metrics(const ConfusionMatrix& m, std::size_t j);
double accuracy(const ConfusionMatrix& m);
/// fp / (fp + tn) of a binary matrix; 0 when there are no clean instances.
double false_alarm(const ConfusionMatrix& m);

/// Distance from (recall, false alarm) to the ideal point (1, 0), scaled to [0, 1].
template <typename Scalar>
Scalar dist2heaven(Scalar recall, Scalar false_alarm) {
  if (!(recall >= Scalar(0) && recall <= Scalar(1)) || !(false_alarm >= Scalar(0) && false_alarm <= Scalar(1))) {
    throw ArgumentError("dist2heaven arguments must lie in [0, 1]");
  }
  using std::sqrt;
  const Scalar miss = Scalar(1) - recall;
  return sqrt(miss * miss + false_alarm * false_alarm) / sqrt(Scalar(2));
}

// ---------------------------------------------------------------------------
// Effort-aware lift curves

/// Cumulative (effort, recall) polyline. Starts at (0, 0), ends at (1, 1).
struct LiftCurve {
  Eigen::VectorXd effort;
  Eigen::VectorXd recall;

  std::size_t size() const { return static_cast<std::size_t>(effort.size()); }
  double area() const;
};

/// Trapezoid-rule area under the polyline (x_i, y_i).
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar trapezoid_area(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = x.size();
  if (n < 2) return Scalar(0);
  const auto dx = x.tail(n - 1) - x.head(n - 1);
  const auto mid = (y.tail(n - 1) + y.head(n - 1)) / Scalar(2);
  return dx.dot(mid);
}

/// Traverses instances in `order`, accumulating the loc fraction (x) and the
/// defect fraction found (y). Throws DegenerateDataError when total loc or
/// total defects is zero.
LiftCurve lift_curve(std::span<const double> locs, std::span<const Label> actual, std::span<const std::size_t> order);

/// Predicted-defective modules first, then predicted-clean; each group by
/// ascending loc. Scores >= 0.5 count as predicted defective. Stable.
std::vector<std::size_t> model_order(std::span<const double> locs, std::span<const double> scores);
/// Descending actual defect density (defective before clean, smaller
/// defective modules first). Stable.
std::vector<std::size_t> optimal_order(std::span<const double> locs, std::span<const Label> actual);
/// Ascending actual defect density. Stable.
std::vector<std::size_t> worst_order(std::span<const double> locs, std::span<const Label> actual);

struct PoptBreakdown {
  double s_model = 0.0;
  double s_optimal = 0.0;
  double s_worst = 0.0;
  double value = 0.0;
};

/// 1 - (S(optimal) - S(m)) / (S(optimal) - S(worst)), S(m) taken along `order`.
PoptBreakdown p_opt_for_order(std::span<const double> locs, std::span<const Label> actual,
                              std::span<const std::size_t> order);
/// Same with the model order derived from `scores` (see model_order).
PoptBreakdown p_opt_breakdown(std::span<const double> locs, std::span<const Label> actual,
                              std::span<const double> scores);
double p_opt(std::span<const double> locs, std::span<const Label> actual, std::span<const double> scores);
double p_opt(std::span<const double> locs, std::span<const Label> actual, std::span<const Label> predicted);

// ---------------------------------------------------------------------------
// Goals

enum class GoalKind { dist2heaven, p_opt, f1, accuracy, precision, recall };

struct GoalSpec {
  GoalKind kind = GoalKind::dist2heaven;

  Direction direction() const {
    return kind == GoalKind::dist2heaven ? Direction::minimize : Direction::maximize;
  }
  /// True when score `a` is strictly preferred to `b`.
  bool better(double a, double b) const { return improves(direction(), a, b); }
  /// Value no real score can lose to; seeds argbest loops.
  double worst_value() const;
  std::string name() const;

  bool operator==(const GoalSpec&) const = default;
};

/// Accepts d2h|dist2heaven, popt|p_opt, f1, acc|accuracy, precision, recall.
GoalSpec parse_goal(std::string_view text);

/// Scores binary predictions. Precision, recall and f1 refer to the defective
/// class; dist2heaven uses that recall and fp / (fp + tn).
double evaluate(const GoalSpec& goal, std::span<const Label> actual, std::span<const Label> predicted,
                std::span<const double> locs);

}  // namespace frugal
