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

#include "frugal/learners.hpp"

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frugal::learners {

std::string_view to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::cart: return "cart";
    case LearnerKind::random_forest: return "random_forest";
    case LearnerKind::naive_bayes: return "naive_bayes";
    case LearnerKind::logistic: return "logistic";
    case LearnerKind::knn: return "knn";
    case LearnerKind::linear_svm: return "linear_svm";
    case LearnerKind::fft: return "fft";
  }
  return "?";
}

LearnerKind parse_kind(std::string_view text) {
  const auto t = detail::to_lower(detail::trim(text));
  if (t == "cart" || t == "dt") return LearnerKind::cart;
  if (t == "random_forest" || t == "rf") return LearnerKind::random_forest;
  if (t == "naive_bayes" || t == "nb") return LearnerKind::naive_bayes;
  if (t == "logistic" || t == "lr" || t == "sl") return LearnerKind::logistic;
  if (t == "knn") return LearnerKind::knn;
  if (t == "linear_svm" || t == "svm" || t == "smo") return LearnerKind::linear_svm;
  if (t == "fft" || t == "dart") return LearnerKind::fft;
  throw ArgumentError("unknown learner '" + std::string(text) + "'");
}

const std::vector<LearnerKind>& all_kinds() {
  static const std::vector<LearnerKind> kinds{LearnerKind::cart,     LearnerKind::random_forest,
                                              LearnerKind::naive_bayes, LearnerKind::logistic,
                                              LearnerKind::knn,      LearnerKind::linear_svm,
                                              LearnerKind::fft};
  return kinds;
}

// ---------------------------------------------------------------------------
// Parameter spaces

namespace {

ParamSpec threshold_spec() {
  return ParamSpec::continuous("threshold", 0.01, 1.0, 0.5, "The value to determine defective or not.");
}
ParamSpec max_leaf_spec() {
  return ParamSpec::integer("max_leaf_nodes", 1, 50, std::monostate{},
                            "Grow trees with max_leaf_nodes in best-first fashion.");
}
ParamSpec min_split_spec() {
  return ParamSpec::integer("min_sample_split", 2, 20, std::int64_t{2},
                            "The minimum number of samples required to split an internal node.");
}
ParamSpec min_leaf_spec() {
  return ParamSpec::integer("min_samples_leaf", 1, 20, std::int64_t{1},
                            "The minimum number of samples required to be at a leaf node.");
}

}  // namespace

ParamSpace param_space(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::random_forest:
      return ParamSpace({
          threshold_spec(),
          ParamSpec::continuous("max_feature", 0.01, 1.0, std::monostate{},
                                "The number of features to consider when looking for the best split."),
          max_leaf_spec(),
          min_split_spec(),
          min_leaf_spec(),
          ParamSpec::integer("n_estimators", 50, 150, std::int64_t{100}, "The number of trees in the forest."),
      });
    case LearnerKind::cart:
      return ParamSpace({threshold_spec(), max_leaf_spec(), min_split_spec(), min_leaf_spec()});
    case LearnerKind::knn:
      return ParamSpace({ParamSpec::integer("k", 1, 20, std::int64_t{8}, "Number of neighbors")});
    case LearnerKind::linear_svm:
      return ParamSpace({ParamSpec::continuous("C", 1.0, 50.0, 1.0, "Penalty parameter C of the error term.")});
    case LearnerKind::fft:
      return ParamSpace({ParamSpec::integer("d", 1, 5, std::int64_t{4}, "Depth of each fast-and-frugal tree")});
    case LearnerKind::naive_bayes:
    case LearnerKind::logistic:
      return ParamSpace{};
  }
  throw ArgumentError("unknown learner kind");
}

ParamSpace kernel_svm_param_space() {
  return ParamSpace({
      ParamSpec::continuous("C", 1.0, 50.0, 1.0, "Penalty parameter C of the error term."),
      ParamSpec::categorical("kernel", {"linear", "poly", "rbf", "sigmoid"}, std::string("rbf"),
                             "Specify the kernel type to be used in the algorithms."),
      ParamSpec::continuous("gamma", 0.0, 1.0, std::monostate{},
                            "Kernel coefficient for 'rbf', 'poly' and 'sigmoid' (default 1/n_features)."),
      ParamSpec::continuous("coef0", 0.0, 1.0, 0.0,
                            "Independent term in kernel function. It is only used in 'poly' and 'sigmoid'."),
  });
}

void LearnerSpec::validate() const {
  const auto space = param_space(kind);
  for (const auto& [name, value] : params) {
    const auto idx = space.index_of(name);
    if (!idx) {
      throw ValidationError("learner " + std::string(to_string(kind)) + " has no parameter '" + name + "'");
    }
    const auto& spec = space[*idx];
    if (!spec.contains(spec.coerce(value))) {
      std::string range = spec.numeric() ? "[" + detail::format_double(spec.lo) + ", " + detail::format_double(spec.hi) + "]"
                                         : "the allowed values";
      throw ValidationError("parameter '" + name + "' = " + frugal::to_string(value) + " is outside " + range);
    }
  }
}

ParamValue LearnerSpec::get(std::string_view name) const {
  const auto space = param_space(kind);
  const auto& spec = space.at(name);
  if (auto it = params.find(std::string(name)); it != params.end()) return spec.coerce(it->second);
  return spec.default_value;
}

LearnerSpec spec_from(LearnerKind kind, const Candidate& candidate) {
  const auto space = param_space(kind);
  if (candidate.tunings.size() != space.size()) throw ArgumentError("candidate does not match the learner space");
  LearnerSpec spec{kind, {}};
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!is_none(candidate.tunings[i])) spec.params[space[i].name] = candidate.tunings[i];
  }
  return spec;
}

Candidate candidate_from(const LearnerSpec& spec) {
  const auto space = param_space(spec.kind);
  Candidate c;
  for (const auto& s : space) c.tunings.push_back(spec.get(s.name));
  return c;
}

// ---------------------------------------------------------------------------

Standardizer Standardizer::fit(const FeatureMatrix& x) {
  Standardizer s;
  const auto n = static_cast<double>(std::max<Eigen::Index>(x.rows(), 1));
  s.mean = x.colwise().sum() / n;
  const FeatureMatrix centered = x.rowwise() - s.mean;
  s.scale = (centered.array().square().colwise().sum() / n).sqrt().matrix();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 0.0)) s.scale(j) = 1.0;
  }
  return s;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& x) const {
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double entropy(double pos, double total) {
  if (total <= 0.0 || pos <= 0.0 || pos >= total) return 0.0;
  const double p = pos / total;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

std::optional<Split> best_split(const Dataset& data, std::span<const std::size_t> rows, const TreeParams& params,
                                Rng& rng) {
  const std::size_t n = rows.size();
  std::size_t pos = 0;
  for (auto r : rows) pos += data.label(r) == Label::defective ? 1 : 0;
  if (n < params.min_samples_split || pos == 0 || pos == n) return std::nullopt;

  const std::size_t features = data.feature_count();
  const auto draw = static_cast<std::size_t>(std::floor(params.max_feature * static_cast<double>(features)));
  std::vector<std::size_t> candidates;
  if (draw >= features) {
    candidates.resize(features);
    std::iota(candidates.begin(), candidates.end(), std::size_t{0});
  } else {
    candidates = sample_without_replacement(features, std::max<std::size_t>(draw, 1), rng);
  }

  const double parent = static_cast<double>(n) * entropy(static_cast<double>(pos), static_cast<double>(n));
  Split best;
  std::vector<std::pair<double, bool>> column(n);
  for (auto f : candidates) {
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = {data.features()(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(f)),
                   data.label(rows[i]) == Label::defective};
    }
    std::stable_sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t left_pos = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_pos += column[i].second ? 1 : 0;
      if (column[i].first == column[i + 1].first) continue;
      const std::size_t nl = i + 1;
      const std::size_t nr = n - nl;
      if (nl < params.min_samples_leaf || nr < params.min_samples_leaf) continue;
      const double child = static_cast<double>(nl) * entropy(static_cast<double>(left_pos), static_cast<double>(nl)) +
                           static_cast<double>(nr) * entropy(static_cast<double>(pos - left_pos), static_cast<double>(nr));
      const double gain = parent - child;
      if (gain > (best.feature < 0 ? 0.0 : best.gain) + 1e-12) {
        best.feature = static_cast<int>(f);
        best.gain = gain;
        double mid = 0.5 * (column[i].first + column[i + 1].first);
        if (!(mid < column[i + 1].first)) mid = column[i].first;
        best.threshold = mid;
      }
    }
  }
  if (best.feature < 0) return std::nullopt;
  for (auto r : rows) {
    const double v = data.features()(static_cast<Eigen::Index>(r), best.feature);
    (v <= best.threshold ? best.left : best.right).push_back(r);
  }
  return best;
}

}  // namespace

DecisionTree DecisionTree::grow(const Dataset& data, std::span<const std::size_t> rows, const TreeParams& params,
                                Rng& rng) {
  if (rows.empty()) throw ArgumentError("cannot grow a tree from no rows");
  if (params.min_samples_leaf < 1) throw ValidationError("min_samples_leaf must be at least 1");
  if (params.max_leaf_nodes && *params.max_leaf_nodes < 1) throw ValidationError("max_leaf_nodes must be at least 1");

  DecisionTree tree;
  struct Pending {
    int node;
    Split split;
  };
  std::vector<Pending> frontier;

  auto make_node = [&](std::span<const std::size_t> members) {
    Node node;
    std::size_t pos = 0;
    for (auto r : members) pos += data.label(r) == Label::defective ? 1 : 0;
    node.samples = members.size();
    node.value = static_cast<double>(pos) / static_cast<double>(members.size());
    tree.nodes_.push_back(node);
    const int id = static_cast<int>(tree.nodes_.size()) - 1;
    if (auto split = best_split(data, members, params, rng)) frontier.push_back(Pending{id, std::move(*split)});
    return id;
  };

  make_node(rows);
  std::size_t leaves = 1;
  while (!frontier.empty() && (!params.max_leaf_nodes || leaves < *params.max_leaf_nodes)) {
    auto it = std::max_element(frontier.begin(), frontier.end(), [](const Pending& a, const Pending& b) {
      if (a.split.gain != b.split.gain) return a.split.gain < b.split.gain;
      return a.node > b.node;
    });
    Pending next = std::move(*it);
    frontier.erase(it);
    const int left = make_node(next.split.left);
    const int right = make_node(next.split.right);
    auto& node = tree.nodes_[static_cast<std::size_t>(next.node)];
    node.feature = next.split.feature;
    node.threshold = next.split.threshold;
    node.left = left;
    node.right = right;
    ++leaves;
  }
  return tree;
}

DecisionTree DecisionTree::grow(const Dataset& data, const TreeParams& params, Rng& rng) {
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return grow(data, rows, params, rng);
}

double DecisionTree::score(const RowRef& x) const {
  std::size_t at = 0;
  while (!nodes_[at].leaf()) {
    const auto& n = nodes_[at];
    at = static_cast<std::size_t>(x(n.feature) <= n.threshold ? n.left : n.right);
  }
  return nodes_[at].value;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf(); }));
}

RandomForest RandomForest::fit(const Dataset& data, const ForestParams& params, std::uint64_t seed) {
  if (params.n_estimators < 1) throw ValidationError("n_estimators must be at least 1");
  RandomForest forest;
  forest.trees_.reserve(params.n_estimators);
  const std::size_t n = data.size();
  for (std::size_t t = 0; t < params.n_estimators; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::size_t> rows(n);
    if (params.n_estimators == 1) {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    } else {
      for (auto& r : rows) r = rng.below(n);
      std::sort(rows.begin(), rows.end());
    }
    forest.trees_.push_back(DecisionTree::grow(data, rows, params.tree, rng));
  }
  return forest;
}

double RandomForest::score(const RowRef& x) const {
  std::size_t votes = 0;
  for (const auto& t : trees_) votes += t.score(x) >= 0.5 ? 1 : 0;
  return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

// ---------------------------------------------------------------------------

GaussianNaiveBayes GaussianNaiveBayes::fit(const Dataset& data) {
  if (data.empty()) throw ArgumentError("naive Bayes needs training data");
  GaussianNaiveBayes nb;
  const auto& x = data.features();
  const Standardizer all = Standardizer::fit(x);
  double max_var = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double centered = (x.col(j).array() - all.mean(j)).square().mean();
    max_var = std::max(max_var, centered);
  }
  const double epsilon = 1e-9 * (max_var > 0.0 ? max_var : 1.0);

  for (int cls = 0; cls < 2; ++cls) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (to_int(data.label(i)) == cls) rows.push_back(i);
    }
    nb.present_[cls] = !rows.empty();
    if (rows.empty()) continue;
    const FeatureMatrix sub = data.subset(rows).features();
    const auto n = static_cast<double>(rows.size());
    nb.mean_[cls] = sub.colwise().sum() / n;
    nb.var_[cls] = ((sub.rowwise() - nb.mean_[cls]).array().square().colwise().sum() / n).matrix();
    nb.var_[cls].array() += epsilon;
    nb.log_prior_[cls] = std::log(n / static_cast<double>(data.size()));
  }
  return nb;
}

double GaussianNaiveBayes::score(const RowRef& x) const {
  if (!present_[0]) return 1.0;
  if (!present_[1]) return 0.0;
  std::array<double, 2> log_post{};
  for (int cls = 0; cls < 2; ++cls) {
    const auto diff = (x - mean_[cls]).array();
    const double ll = -0.5 * ((2.0 * M_PI * var_[cls].array()).log() + diff.square() / var_[cls].array()).sum();
    log_post[cls] = log_prior_[cls] + ll;
  }
  return sigmoid(log_post[1] - log_post[0]);
}

LogisticRegression::LogisticRegression(Standardizer standardizer, Eigen::RowVectorXd weights, double bias)
    : standardizer_(std::move(standardizer)), weights_(std::move(weights)), bias_(bias) {}

LogisticRegression LogisticRegression::fit(const Dataset& data) {
  constexpr int kEpochs = 500;
  constexpr double kRate = 0.1;
  auto standardizer = Standardizer::fit(data.features());
  const FeatureMatrix x = standardizer.apply(data.features());
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) y(static_cast<Eigen::Index>(i)) = to_int(data.label(i));
  const auto n = static_cast<double>(data.size());

  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.cols());
  double b = 0.0;
  for (int epoch = 0; epoch < kEpochs; ++epoch) {
    const Eigen::VectorXd z = (x * w).array() + b;
    const Eigen::VectorXd residual = z.unaryExpr([](double v) { return sigmoid(v); }) - y;
    w -= kRate * (x.transpose() * residual) / n;
    b -= kRate * residual.mean();
  }
  return LogisticRegression(std::move(standardizer), w.transpose(), b);
}

double LogisticRegression::score(const RowRef& x) const {
  return sigmoid(standardizer_.apply(x).dot(weights_) + bias_);
}

KNearestNeighbors KNearestNeighbors::fit(const Dataset& data, std::size_t k) {
  if (k < 1) throw ValidationError("knn k must be at least 1");
  KNearestNeighbors knn;
  knn.standardizer_ = Standardizer::fit(data.features());
  knn.train_ = knn.standardizer_.apply(data.features());
  knn.labels_.assign(data.labels().begin(), data.labels().end());
  knn.k_ = k;
  return knn;
}

std::vector<Neighbor> KNearestNeighbors::neighbors(const RowRef& x) const {
  const Eigen::RowVectorXd q = standardizer_.apply(x);
  std::vector<Neighbor> all(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    all[i] = Neighbor{i, (train_.row(static_cast<Eigen::Index>(i)) - q).norm()};
  }
  const std::size_t k = std::min(k_, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
                    });
  all.resize(k);
  return all;
}

double KNearestNeighbors::score(const RowRef& x) const {
  const auto nn = neighbors(x);
  std::size_t bad = 0;
  for (const auto& n : nn) bad += labels_[n.index] == Label::defective ? 1 : 0;
  return static_cast<double>(bad) / static_cast<double>(nn.size());
}

LinearSvm LinearSvm::fit(const Dataset& data, double c) {
  constexpr int kEpochs = 1000;
  constexpr double kRate = 0.5;
  if (!(c > 0.0)) throw ValidationError("svm C must be positive");
  LinearSvm svm;
  svm.standardizer_ = Standardizer::fit(data.features());
  const FeatureMatrix x = svm.standardizer_.apply(data.features());
  Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = data.label(i) == Label::defective ? 1.0 : -1.0;
  }
  const auto n = static_cast<double>(data.size());
  const double lambda = 1.0 / (c * n);

  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.cols());
  double b = 0.0;
  for (int t = 1; t <= kEpochs; ++t) {
    const Eigen::VectorXd margins = y.cwiseProduct((x * w).array().matrix() + Eigen::VectorXd::Constant(y.size(), b));
    const Eigen::VectorXd active = (margins.array() < 1.0).cast<double>().matrix().cwiseProduct(y);
    const Eigen::VectorXd grad_w = lambda * w - (x.transpose() * active) / n;
    const double grad_b = -active.sum() / n;
    const double rate = kRate / std::sqrt(static_cast<double>(t));
    w -= rate * grad_w;
    b -= rate * grad_b;
  }
  svm.weights_ = w.transpose();
  svm.bias_ = b;
  return svm;
}

double LinearSvm::margin(const RowRef& x) const { return standardizer_.apply(x).dot(weights_) + bias_; }

double LinearSvm::score(const RowRef& x) const { return sigmoid(margin(x)); }

double FftClassifier::score(const RowRef& x) const {
  return fft::predict_row(ensemble_.best_tree(), x) == Label::defective ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------

Model::Model(LearnerKind kind, std::shared_ptr<const Classifier> impl, const AttributeSchema& schema, double threshold)
    : kind_(kind),
      impl_(std::move(impl)),
      fingerprint_(schema.fingerprint()),
      feature_count_(schema.feature_count()),
      threshold_(threshold) {}

Prediction Model::classify(const RowRef& x) const {
  const double s = impl_->score(x);
  return Prediction{s >= threshold_ ? Label::defective : Label::clean, s};
}

Prediction Model::predict(const Instance& instance) const {
  if (static_cast<std::size_t>(instance.features.size()) != feature_count_) {
    throw ArgumentError("instance has " + std::to_string(instance.features.size()) + " attributes, model expects " +
                        std::to_string(feature_count_));
  }
  const Eigen::RowVectorXd row = instance.features.transpose();
  return classify(row);
}

std::vector<Prediction> Model::predict(const Dataset& data) const {
  if (data.schema().fingerprint() != fingerprint_) throw ArgumentError("dataset schema differs from the training schema");
  std::vector<Prediction> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out.push_back(classify(data.row(i)));
  return out;
}

std::vector<Label> Model::predict_labels(const Dataset& data) const {
  const auto preds = predict(data);
  std::vector<Label> out(preds.size());
  std::transform(preds.begin(), preds.end(), out.begin(), [](const Prediction& p) { return p.label; });
  return out;
}

namespace {

TreeParams tree_params(const LearnerSpec& spec) {
  TreeParams p;
  if (const auto v = spec.get("max_leaf_nodes"); !is_none(v)) {
    p.max_leaf_nodes = static_cast<std::size_t>(std::get<std::int64_t>(v));
  }
  p.min_samples_split = static_cast<std::size_t>(std::get<std::int64_t>(spec.get("min_sample_split")));
  p.min_samples_leaf = static_cast<std::size_t>(std::get<std::int64_t>(spec.get("min_samples_leaf")));
  return p;
}

}  // namespace

Model fit(const LearnerSpec& spec, const Dataset& data, std::uint64_t seed, const GoalSpec& goal) {
  spec.validate();
  if (data.empty()) throw ArgumentError("cannot fit a learner on an empty dataset");
  const auto bad = data.defectives();
  if (spec.kind != LearnerKind::naive_bayes && (bad == 0 || bad == data.size())) {
    throw DegenerateDataError(std::string(to_string(spec.kind)) + " needs both classes in its training data");
  }

  double threshold = 0.5;
  std::shared_ptr<const Classifier> impl;
  switch (spec.kind) {
    case LearnerKind::cart: {
      threshold = std::get<double>(spec.get("threshold"));
      Rng rng(seed);
      impl = std::make_shared<DecisionTree>(DecisionTree::grow(data, tree_params(spec), rng));
      break;
    }
    case LearnerKind::random_forest: {
      threshold = std::get<double>(spec.get("threshold"));
      ForestParams p;
      p.tree = tree_params(spec);
      if (const auto v = spec.get("max_feature"); !is_none(v)) p.tree.max_feature = std::get<double>(v);
      p.n_estimators = static_cast<std::size_t>(std::get<std::int64_t>(spec.get("n_estimators")));
      impl = std::make_shared<RandomForest>(RandomForest::fit(data, p, seed));
      break;
    }
    case LearnerKind::naive_bayes:
      impl = std::make_shared<GaussianNaiveBayes>(GaussianNaiveBayes::fit(data));
      break;
    case LearnerKind::logistic:
      impl = std::make_shared<LogisticRegression>(LogisticRegression::fit(data));
      break;
    case LearnerKind::knn:
      impl = std::make_shared<KNearestNeighbors>(
          KNearestNeighbors::fit(data, static_cast<std::size_t>(std::get<std::int64_t>(spec.get("k")))));
      break;
    case LearnerKind::linear_svm:
      impl = std::make_shared<LinearSvm>(LinearSvm::fit(data, std::get<double>(spec.get("C"))));
      break;
    case LearnerKind::fft:
      impl = std::make_shared<FftClassifier>(
          fft::fit(data, goal, static_cast<std::size_t>(std::get<std::int64_t>(spec.get("d")))));
      break;
  }
  return Model(spec.kind, std::move(impl), data.schema(), threshold);
}

}  // namespace frugal::learners
