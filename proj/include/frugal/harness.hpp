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
#include "frugal/learners.hpp"
#include "frugal/metrics.hpp"
#include "frugal/smote.hpp"
#include "frugal/tuner.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frugal::harness {

enum class SplitKind { version_based, kfold, random };

struct SplitSpec {
  SplitKind kind = SplitKind::version_based;
  std::size_t k = 10;
  double fraction = 0.8;
};

enum class Preprocess { none, smote, smotuned };

struct ExperimentSpec {
  std::filesystem::path manifest;
  /// Projects to run; empty means every project in the manifest.
  std::vector<std::string> datasets;
  std::vector<learners::LearnerSpec> learners;
  GoalSpec goal;
  /// Present for tuned workflows. Its seed is ignored: every DE run gets a
  /// seed derived from `seed`.
  std::optional<tuner::DEConfig> tuning;
  Preprocess preprocess = Preprocess::none;
  smote::SmoteConfig smote;
  std::size_t repeats = 1;
  SplitSpec split;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;
};

/// Loads an experiment spec from JSON. Relative paths resolve against `base_dir`.
ExperimentSpec parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir);
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// One (dataset, learner, repeat) cell.
struct RunRecord {
  std::string dataset;
  std::string learner;
  std::size_t repeat = 0;
  double score = 0.0;
  /// Tuned runs: best score DE found on the tuning split, and the score of the
  /// default configuration on that same split.
  std::optional<double> tune_score;
  std::optional<double> default_tune_score;
  std::size_t evaluations = 0;
  std::string tunings;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double seconds = 0.0;
};

enum class Aggregate { median, mean };

struct Summary {
  std::string dataset;
  std::string learner;
  double value = 0.0;
  std::size_t count = 0;
  double seconds = 0.0;
};

struct ExperimentResult {
  std::string mode;
  GoalSpec goal;
  bool tuned = false;
  Aggregate aggregate = Aggregate::median;
  std::vector<RunRecord> runs;
  std::vector<Summary> summaries;
  /// Number of times any external test set was read.
  std::size_t test_accesses = 0;
  /// Sum of objective calls over every DE run.
  std::size_t evaluations = 0;
};

/// Counts reads of the external test set so tests can prove each
/// (repeat, learner) touches it exactly once.
class GuardedTestSet {
 public:
  explicit GuardedTestSet(const Dataset& data) : data_(&data) {}
  const Dataset& access() {
    ++accesses_;
    return *data_;
  }
  std::size_t accesses() const { return accesses_; }

 private:
  const Dataset* data_;
  std::size_t accesses_ = 0;
};

/// Lower median of an odd count, mean of the two middle values otherwise.
double median(std::vector<double> values);
double mean(const std::vector<double>& values);

/// Seed for repeat `index` of a run seeded with `seed` (see derive_seed).
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t index);

/// Loads the selected projects from the manifest as version-based splits.
std::vector<VersionSplit> load_splits(const ExperimentSpec& spec);

/// Train on merged older versions, test on the latest version.
ExperimentResult run_untuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits);
/// Per repeat: split training 80/20 into new-training/tuning, tune with DE
/// (defaults seeded as member 0), refit the winner on new-training and score
/// it once on the test set. Median over repeats.
ExperimentResult run_tuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits);
/// Per fold of a k-fold split of the training data: the other folds are
/// new-training, the fold is tuning data. Mean over folds.
ExperimentResult run_kfold_tuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits);
/// DE tunes SMOTE's k, m, r with learner parameters fixed; only new-training
/// data is rebalanced.
ExperimentResult run_smotuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits);

ExperimentResult run_untuned(const ExperimentSpec& spec);
ExperimentResult run_tuned(const ExperimentSpec& spec);
ExperimentResult run_kfold_tuned(const ExperimentSpec& spec);
ExperimentResult run_smotuned(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { table, csv };

struct ReportOptions {
  /// Default: on for tuned results, off otherwise.
  std::optional<bool> runtime;
};

/// One row per dataset, one column per learner, summary values x100 at one
/// decimal. The best cells of each row, compared at that precision, are
/// flagged ('*' in tables, `best` column in CSV).
std::string report(const ExperimentResult& result, ReportFormat format, const ReportOptions& options = {});

struct ReportRow {
  std::string dataset;
  std::vector<double> values;
  std::vector<double> seconds;
  std::string best;
};

struct ReportGrid {
  std::vector<std::string> methods;
  std::vector<ReportRow> rows;
};

ReportGrid parse_report_csv(std::string_view text);

/// Per-run CSV without wall-clock columns (stable across runs).
std::string runs_csv(const ExperimentResult& result);
/// Wall-clock seconds per (dataset, learner).
std::string runtime_csv(const ExperimentResult& result);

std::string to_json(const ExperimentResult& result);
ExperimentResult result_from_json(std::string_view text);

}  // namespace frugal::harness
