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
#include "frugal/metrics.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frugal::fft {

enum class Relation { le, gt };

std::string_view to_string(Relation r);

/// One side of a median split, together with the class it predicts and the
/// goal score of that prediction on the data it was built from.
struct Range {
  std::size_t attribute = 0;
  Relation relation = Relation::le;
  double threshold = 0.0;
  Label predicted = Label::defective;
  double score = 0.0;

  template <typename Derived>
  bool matches(const Eigen::DenseBase<Derived>& features) const {
    const double v = features(static_cast<Eigen::Index>(attribute));
    return relation == Relation::le ? v <= threshold : v > threshold;
  }

  /// Compares everything except the score.
  bool same_rule(const Range& other) const {
    return attribute == other.attribute && relation == other.relation && threshold == other.threshold &&
           predicted == other.predicted;
  }
};

/// Fast-and-frugal tree: an ordered chain of ranges, each exiting to its
/// predicted class, closed by an "else" class.
///
/// A complete tree of depth d has d levels and closes with the opposite of
/// the last level's exit. A tree whose data ran out (empty or single-class)
/// before depth d is truncated and closes with the majority class of what
/// remained.
struct FFTree {
  std::vector<Range> levels;
  Label else_class = Label::clean;
  std::size_t depth = 0;
  std::uint32_t structure_id = 0;
  std::vector<std::string> attribute_names;

  bool truncated() const { return levels.size() < depth; }
  /// Class of the last level's true branch (the final leaf's "true" side).
  Label final_true_class() const { return levels.empty() ? else_class : levels.back().predicted; }
  Label final_false_class() const { return else_class; }
  std::size_t feature_count() const { return attribute_names.size(); }

  /// Compares structure and rules, ignoring range scores.
  bool same_rules(const FFTree& other) const;
};

/// Exit class of level `level` under `structure_id` (bit `level`, LSB first).
constexpr Label exit_class(std::uint32_t structure_id, std::size_t level) noexcept {
  return ((structure_id >> level) & 1U) != 0U ? Label::defective : Label::clean;
}

struct FFTEnsemble {
  std::vector<FFTree> trees;
  std::vector<double> scores;
  std::size_t best = 0;
  GoalSpec goal;

  const FFTree& best_tree() const { return trees.at(best); }
};

/// Lower median: element at index floor((n-1)/2) after sorting.
double median(std::span<const double> values);
double median_split(const Dataset& data, std::size_t attribute);

/// Goal score of predicting `range.predicted` for the instances the range
/// captures and the opposite class for all others.
double score_range(const Dataset& data, const GoalSpec& goal, const Range& range);

/// Every non-empty median-split range for both classes, best score first.
/// Ties keep (attribute, <= before >, defective before clean) order.
std::vector<Range> score_ranges(const Dataset& data, const GoalSpec& goal);

/// Best range predicting `cls` among score_ranges.
Range extreme_range(const Dataset& data, const GoalSpec& goal, Label cls);

FFTree build_tree(const Dataset& data, const GoalSpec& goal, std::uint32_t structure_id, std::size_t depth);

/// Builds all 2^depth trees and selects the best on the training data.
FFTEnsemble fit(const Dataset& data, const GoalSpec& goal, std::size_t depth);

Label predict(const FFTree& tree, const Instance& instance);
template <typename Derived>
Label predict_row(const FFTree& tree, const Eigen::DenseBase<Derived>& features) {
  for (const auto& level : tree.levels) {
    if (level.matches(features)) return level.predicted;
  }
  return tree.else_class;
}
std::vector<Label> predict(const FFTree& tree, const Dataset& data);

/// Human-readable rule list, one rule per line:
///   if cob <= 4 then false
///   else if rfc > 32 then true
///   else false
std::string to_rules(const FFTree& tree);
/// Parses a rule list; attribute names resolve against `attribute_names`.
/// Leading "N." line numbers are accepted.
FFTree parse_rules(std::string_view text, const std::vector<std::string>& attribute_names);

std::string to_json(const FFTree& tree);
FFTree tree_from_json(std::string_view text);

}  // namespace frugal::fft
