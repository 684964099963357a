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
#include "frugal/fft.hpp"
#include "frugal/metrics.hpp"
#include "frugal/param_space.hpp"
#include "frugal/random.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frugal::learners {

enum class LearnerKind { cart, random_forest, naive_bayes, logistic, knn, linear_svm, fft };

std::string_view to_string(LearnerKind kind);
/// Accepts the canonical names plus rf, nb, lr|sl, svm|smo, dt, dart.
LearnerKind parse_kind(std::string_view text);
const std::vector<LearnerKind>& all_kinds();

using ParamMap = std::map<std::string, ParamValue>;

struct LearnerSpec {
  LearnerKind kind = LearnerKind::cart;
  ParamMap params;

  /// Throws ValidationError naming the parameter and its legal range.
  void validate() const;
  /// Value of `name`, falling back to the space default.
  ParamValue get(std::string_view name) const;
};

/// Tunable dimensions of each learner kind.
ParamSpace param_space(LearnerKind kind);
/// The full SVM table (C, kernel, gamma, coef0); only the linear kernel is executable.
ParamSpace kernel_svm_param_space();
/// Spec with the candidate's tunings; "None" tunings are left unset.
LearnerSpec spec_from(LearnerKind kind, const Candidate& candidate);
/// Candidate holding the effective values of `spec` in param_space(kind) order.
Candidate candidate_from(const LearnerSpec& spec);

using RowRef = Eigen::Ref<const Eigen::RowVectorXd>;

/// Fitted scoring function: defect probability or margin mapped to [0, 1].
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double score(const RowRef& x) const = 0;
};

/// Per-feature z-normalisation fitted on training data (zero spread -> 1).
struct Standardizer {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Standardizer fit(const FeatureMatrix& x);
  Eigen::RowVectorXd apply(const RowRef& x) const { return (x - mean).cwiseQuotient(scale); }
  FeatureMatrix apply(const FeatureMatrix& x) const;
};

// ---------------------------------------------------------------------------
// Trees

struct TreeParams {
  double max_feature = 1.0;  // fraction of attributes drawn per split
  std::optional<std::size_t> max_leaf_nodes;
  std::size_t min_samples_split = 2;
  std::size_t min_samples_leaf = 1;
};

/// Entropy-split binary tree grown best-first (largest impurity decrease first),
/// so max_leaf_nodes keeps the most useful splits. Leaves store the fraction
/// of defective training rows.
class DecisionTree final : public Classifier {
 public:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
    std::size_t samples = 0;

    bool leaf() const { return feature < 0; }
    bool operator==(const Node&) const = default;
  };

  /// `rows` may contain repeats (bootstrap samples).
  static DecisionTree grow(const Dataset& data, std::span<const std::size_t> rows, const TreeParams& params, Rng& rng);
  static DecisionTree grow(const Dataset& data, const TreeParams& params, Rng& rng);

  double score(const RowRef& x) const override;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t leaf_count() const;

  bool operator==(const DecisionTree& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<Node> nodes_;
};

struct ForestParams {
  TreeParams tree;
  std::size_t n_estimators = 100;
};

/// Bagged entropy trees; tree t draws from derive_seed(seed, t). A forest of
/// one tree uses the full sample. Score = fraction of trees voting defective.
class RandomForest final : public Classifier {
 public:
  static RandomForest fit(const Dataset& data, const ForestParams& params, std::uint64_t seed);
  double score(const RowRef& x) const override;
  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
};

// ---------------------------------------------------------------------------

/// Gaussian naive Bayes. Tolerates single-class training data.
class GaussianNaiveBayes final : public Classifier {
 public:
  static GaussianNaiveBayes fit(const Dataset& data);
  double score(const RowRef& x) const override;

 private:
  std::array<double, 2> log_prior_{};
  std::array<Eigen::RowVectorXd, 2> mean_;
  std::array<Eigen::RowVectorXd, 2> var_;
  std::array<bool, 2> present_{};
};

/// Logistic regression on z-normalised features; full-batch gradient descent,
/// 500 epochs, learning rate 0.1, zero initial weights.
class LogisticRegression final : public Classifier {
 public:
  LogisticRegression(Standardizer standardizer, Eigen::RowVectorXd weights, double bias);
  static LogisticRegression fit(const Dataset& data);
  double score(const RowRef& x) const override;

  const Eigen::RowVectorXd& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  Standardizer standardizer_;
  Eigen::RowVectorXd weights_;
  double bias_ = 0.0;
};

struct Neighbor {
  std::size_t index = 0;
  double distance = 0.0;
};

/// k nearest neighbours, Euclidean on z-normalised features. Score = share of
/// defective neighbours; a 50/50 vote reaches the default 0.5 threshold.
class KNearestNeighbors final : public Classifier {
 public:
  static KNearestNeighbors fit(const Dataset& data, std::size_t k);
  double score(const RowRef& x) const override;
  /// Ascending distance, ties by training index.
  std::vector<Neighbor> neighbors(const RowRef& x) const;

 private:
  Standardizer standardizer_;
  FeatureMatrix train_;
  std::vector<Label> labels_;
  std::size_t k_ = 8;
};

/// Linear SVM: minimises 0.5 |w|^2 + C sum hinge by deterministic full-batch
/// subgradient descent. Score = logistic(margin), so margin 0 maps to 0.5.
class LinearSvm final : public Classifier {
 public:
  static LinearSvm fit(const Dataset& data, double c);
  double score(const RowRef& x) const override;
  double margin(const RowRef& x) const;

 private:
  Standardizer standardizer_;
  Eigen::RowVectorXd weights_;
  double bias_ = 0.0;
};

/// Best tree of a DART ensemble; scores are hard 0/1.
class FftClassifier final : public Classifier {
 public:
  FftClassifier(fft::FFTEnsemble ensemble) : ensemble_(std::move(ensemble)) {}
  double score(const RowRef& x) const override;
  const fft::FFTEnsemble& ensemble() const { return ensemble_; }

 private:
  fft::FFTEnsemble ensemble_;
};

// ---------------------------------------------------------------------------

struct Prediction {
  Label label = Label::clean;
  double score = 0.0;
};

class Model {
 public:
  Model(LearnerKind kind, std::shared_ptr<const Classifier> impl, const AttributeSchema& schema, double threshold);

  LearnerKind kind() const { return kind_; }
  double threshold() const { return threshold_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  const Classifier& classifier() const { return *impl_; }
  template <typename T>
  const T* as() const {
    return dynamic_cast<const T*>(impl_.get());
  }

  Prediction predict(const Instance& instance) const;
  /// Rejects datasets whose schema fingerprint differs from the training data.
  std::vector<Prediction> predict(const Dataset& data) const;
  std::vector<Label> predict_labels(const Dataset& data) const;

 private:
  Prediction classify(const RowRef& x) const;

  LearnerKind kind_;
  std::shared_ptr<const Classifier> impl_;
  std::uint64_t fingerprint_ = 0;
  std::size_t feature_count_ = 0;
  double threshold_ = 0.5;
};

/// Deterministic in (spec, data, seed). `goal` drives the fft learner only.
Model fit(const LearnerSpec& spec, const Dataset& data, std::uint64_t seed, const GoalSpec& goal = {});

}  // namespace frugal::learners
