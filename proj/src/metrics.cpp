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

#include "frugal/metrics.hpp"

#include "frugal/detail/text.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace frugal {

ConfusionMatrix::ConfusionMatrix(std::size_t n_classes)
    : counts_(CountMatrix::Zero(static_cast<Eigen::Index>(n_classes), static_cast<Eigen::Index>(n_classes))) {
  if (n_classes == 0) throw ArgumentError("confusion matrix needs at least one class");
}

ConfusionMatrix::ConfusionMatrix(CountMatrix counts) : counts_(std::move(counts)) {
  if (counts_.rows() == 0 || counts_.rows() != counts_.cols()) throw ArgumentError("confusion matrix must be square");
  if ((counts_.array() < 0).any()) throw ArgumentError("confusion counts must be non-negative");
}

void ConfusionMatrix::add(std::size_t actual, std::size_t predicted) {
  if (actual >= n_classes() || predicted >= n_classes()) throw ArgumentError("class label out of range");
  ++counts_(static_cast<Eigen::Index>(actual), static_cast<Eigen::Index>(predicted));
}

ConfusionMatrix confusion(std::span<const int> actual, std::span<const int> predicted, int n_classes) {
  if (actual.size() != predicted.size()) throw ArgumentError("actual and predicted lengths differ");
  if (n_classes <= 0) throw ArgumentError("n_classes must be positive");
  ConfusionMatrix m(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] < 0 || predicted[i] < 0) throw ArgumentError("class label out of range");
    m.add(static_cast<std::size_t>(actual[i]), static_cast<std::size_t>(predicted[i]));
  }
  return m;
}

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted) {
  if (actual.size() != predicted.size()) throw ArgumentError("actual and predicted lengths differ");
  ConfusionMatrix m(2);
  for (std::size_t i = 0; i < actual.size(); ++i) {
    m.add(static_cast<std::size_t>(to_int(actual[i])), static_cast<std::size_t>(to_int(predicted[i])));
  }
  return m;
}

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void require_nonempty(const ConfusionMatrix& m) {
  if (m.total() <= 0) throw ArgumentError("ratio metrics need a non-empty confusion matrix");
}

}  // namespace

ClassMetrics class_metrics(const ConfusionMatrix& m, std::size_t j) {
  require_nonempty(m);
  if (j >= m.n_classes()) throw ArgumentError("class index out of range");
  const auto idx = static_cast<Eigen::Index>(j);
  const std::int64_t hit = m.counts()(idx, idx);
  ClassMetrics out;
  out.precision = ratio(hit, m.counts().col(idx).sum());
  out.recall = ratio(hit, m.counts().row(idx).sum());
  const double denom = out.precision + out.recall;
  out.f1 = denom == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / denom;
  return out;
}

double accuracy(const ConfusionMatrix& m) {
  require_nonempty(m);
  return ratio(m.counts().diagonal().sum(), m.total());
}

double false_alarm(const ConfusionMatrix& m) {
  if (m.n_classes() != 2) throw ArgumentError("false alarm is defined for binary matrices");
  return ratio(m(0, 1), m(0, 0) + m(0, 1));
}

// ---------------------------------------------------------------------------

double LiftCurve::area() const { return trapezoid_area(effort, recall); }

LiftCurve lift_curve(std::span<const double> locs, std::span<const Label> actual, std::span<const std::size_t> order) {
  const std::size_t n = locs.size();
  if (actual.size() != n || order.size() != n) throw ArgumentError("lift curve inputs differ in length");
  std::vector<bool> seen(n, false);
  for (auto i : order) {
    if (i >= n || seen[i]) throw ArgumentError("order is not a permutation of the instances");
    seen[i] = true;
  }

  Eigen::VectorXd cum_loc(static_cast<Eigen::Index>(n) + 1);
  Eigen::VectorXd cum_bug(static_cast<Eigen::Index>(n) + 1);
  cum_loc(0) = 0.0;
  cum_bug(0) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto at = static_cast<Eigen::Index>(k);
    cum_loc(at + 1) = cum_loc(at) + locs[order[k]];
    cum_bug(at + 1) = cum_bug(at) + (actual[order[k]] == Label::defective ? 1.0 : 0.0);
  }
  const double total_loc = cum_loc(static_cast<Eigen::Index>(n));
  const double total_bug = cum_bug(static_cast<Eigen::Index>(n));
  if (!(total_loc > 0.0)) throw DegenerateDataError("lift curve needs a positive total loc");
  if (!(total_bug > 0.0)) throw DegenerateDataError("lift curve needs at least one defective instance");
  return LiftCurve{cum_loc / total_loc, cum_bug / total_bug};
}

namespace {

std::vector<std::size_t> iota_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

// Defect density a = label_a / loc_a compared without dividing, so loc = 0
// defective rows rank as infinitely dense.
bool denser(std::span<const double> locs, std::span<const Label> actual, std::size_t a, std::size_t b) {
  const double la = actual[a] == Label::defective ? 1.0 : 0.0;
  const double lb = actual[b] == Label::defective ? 1.0 : 0.0;
  if (la == 0.0 && lb == 0.0) return false;
  return la * locs[b] > lb * locs[a];
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw ArgumentError("p_opt inputs differ in length");
}

// Trapezoid area of the lift curve along `order`, as
// sum loc_k (2 B_{k-1} + d_k) / (2 L D) with B the defects found so far.
// Accumulating unnormalised terms in long double keeps the area exact for
// integral loc, so orderings that differ only by ties score identically.
double lift_area(std::span<const double> locs, std::span<const Label> actual, std::span<const std::size_t> order) {
  lift_curve(locs, actual, order);  // validates
  long double sum = 0.0L;
  long double total_loc = 0.0L;
  long double found = 0.0L;
  for (auto i : order) {
    const long double d = actual[i] == Label::defective ? 1.0L : 0.0L;
    sum += static_cast<long double>(locs[i]) * (2.0L * found + d);
    found += d;
    total_loc += locs[i];
  }
  return static_cast<double>(sum / (2.0L * total_loc * found));
}

}  // namespace

std::vector<std::size_t> model_order(std::span<const double> locs, std::span<const double> scores) {
  check_lengths(locs.size(), scores.size());
  auto order = iota_order(locs.size());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool da = scores[a] >= 0.5;
    const bool db = scores[b] >= 0.5;
    if (da != db) return da;
    return locs[a] < locs[b];
  });
  return order;
}

std::vector<std::size_t> optimal_order(std::span<const double> locs, std::span<const Label> actual) {
  check_lengths(locs.size(), actual.size());
  auto order = iota_order(locs.size());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return denser(locs, actual, a, b); });
  return order;
}

std::vector<std::size_t> worst_order(std::span<const double> locs, std::span<const Label> actual) {
  check_lengths(locs.size(), actual.size());
  auto order = iota_order(locs.size());
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return denser(locs, actual, b, a); });
  return order;
}

PoptBreakdown p_opt_for_order(std::span<const double> locs, std::span<const Label> actual,
                              std::span<const std::size_t> order) {
  check_lengths(locs.size(), actual.size());
  check_lengths(locs.size(), order.size());
  PoptBreakdown out;
  out.s_model = lift_area(locs, actual, order);
  out.s_optimal = lift_area(locs, actual, optimal_order(locs, actual));
  out.s_worst = lift_area(locs, actual, worst_order(locs, actual));
  const double span = out.s_optimal - out.s_worst;
  if (!(span > 0.0)) throw DegenerateDataError("p_opt is undefined when optimal and worst orderings coincide");
  out.value = 1.0 - (out.s_optimal - out.s_model) / span;
  return out;
}

PoptBreakdown p_opt_breakdown(std::span<const double> locs, std::span<const Label> actual,
                              std::span<const double> scores) {
  check_lengths(locs.size(), scores.size());
  return p_opt_for_order(locs, actual, model_order(locs, scores));
}

double p_opt(std::span<const double> locs, std::span<const Label> actual, std::span<const double> scores) {
  return p_opt_breakdown(locs, actual, scores).value;
}

double p_opt(std::span<const double> locs, std::span<const Label> actual, std::span<const Label> predicted) {
  std::vector<double> scores(predicted.size());
  std::transform(predicted.begin(), predicted.end(), scores.begin(),
                 [](Label l) { return l == Label::defective ? 1.0 : 0.0; });
  return p_opt(locs, actual, scores);
}

// ---------------------------------------------------------------------------

double GoalSpec::worst_value() const {
  return direction() == Direction::minimize ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();
}

std::string GoalSpec::name() const {
  switch (kind) {
    case GoalKind::dist2heaven: return "d2h";
    case GoalKind::p_opt: return "popt";
    case GoalKind::f1: return "f1";
    case GoalKind::accuracy: return "acc";
    case GoalKind::precision: return "precision";
    case GoalKind::recall: return "recall";
  }
  return "?";
}

GoalSpec parse_goal(std::string_view text) {
  const auto t = detail::to_lower(text);
  if (t == "d2h" || t == "dist2heaven" || t == "dis2heaven") return {GoalKind::dist2heaven};
  if (t == "popt" || t == "p_opt") return {GoalKind::p_opt};
  if (t == "f1") return {GoalKind::f1};
  if (t == "acc" || t == "accuracy") return {GoalKind::accuracy};
  if (t == "precision" || t == "prec") return {GoalKind::precision};
  if (t == "recall" || t == "pd") return {GoalKind::recall};
  throw ArgumentError("unknown goal '" + std::string(text) + "'");
}

double evaluate(const GoalSpec& goal, std::span<const Label> actual, std::span<const Label> predicted,
                std::span<const double> locs) {
  if (goal.kind == GoalKind::p_opt) {
    if (actual.size() != predicted.size()) throw ArgumentError("actual and predicted lengths differ");
    return p_opt(locs, actual, predicted);
  }
  const auto m = confusion(actual, predicted);
  switch (goal.kind) {
    case GoalKind::accuracy: return accuracy(m);
    case GoalKind::f1: return class_metrics(m, 1).f1;
    case GoalKind::precision: return class_metrics(m, 1).precision;
    case GoalKind::recall: return class_metrics(m, 1).recall;
    case GoalKind::dist2heaven: return dist2heaven(class_metrics(m, 1).recall, false_alarm(m));
    case GoalKind::p_opt: break;
  }
  throw ArgumentError("unhandled goal");
}

}  // namespace frugal
