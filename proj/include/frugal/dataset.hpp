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

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frugal {

enum class Label : std::uint8_t { clean = 0, defective = 1 };

constexpr Label opposite(Label l) noexcept {
  return l == Label::defective ? Label::clean : Label::defective;
}

constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }

/// Instances are rows; row-major keeps an instance's attributes contiguous.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Column layout of a defect data file. `names` lists every column in file
/// order, including the label column. Features are all columns except the
/// label, in the same order.
struct AttributeSchema {
  std::vector<std::string> names;
  std::size_t loc_index = 0;
  std::size_t label_index = 0;

  /// Throws SchemaError when names are empty/duplicated (case-insensitive)
  /// or the loc/label indices are invalid.
  void validate() const;

  std::size_t feature_count() const { return names.size() - 1; }
  std::vector<std::string> feature_names() const;
  /// Position of the loc column among the features.
  std::size_t loc_feature() const { return loc_index < label_index ? loc_index : loc_index - 1; }
  /// Feature position of column `name` (case-insensitive), if any.
  std::optional<std::size_t> feature_index(std::string_view name) const;
  /// Hash of the lower-cased feature names; models compare it to reject foreign data.
  std::uint64_t fingerprint() const;

  bool operator==(const AttributeSchema&) const = default;
};

struct Instance {
  Eigen::VectorXd features;
  double loc = 0.0;
  Label label = Label::clean;
};

struct Provenance {
  std::string project;
  std::string version;

  bool operator==(const Provenance&) const = default;
};

/// Immutable labelled table of CK-metric rows.
///
/// The loc value of an instance is the loc column of its feature row, so the
/// two can never disagree.
class Dataset {
 public:
  Dataset() = default;
  Dataset(AttributeSchema schema, FeatureMatrix features, std::vector<Label> labels,
          std::vector<Provenance> provenance = {});

  const AttributeSchema& schema() const { return schema_; }
  const FeatureMatrix& features() const { return features_; }
  std::span<const Label> labels() const { return labels_; }
  const std::vector<Provenance>& provenance() const { return provenance_; }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t feature_count() const { return static_cast<std::size_t>(features_.cols()); }

  Label label(std::size_t i) const { return labels_[i]; }
  double loc(std::size_t i) const {
    return features_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(schema_.loc_feature()));
  }
  auto row(std::size_t i) const { return features_.row(static_cast<Eigen::Index>(i)); }
  Eigen::VectorXd locs() const { return features_.col(static_cast<Eigen::Index>(schema_.loc_feature())); }
  Instance instance(std::size_t i) const;

  std::size_t defectives() const;
  /// Fraction of defective instances; 0 for an empty dataset.
  double defect_ratio() const;

  /// Rows at `indices`, in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;
  /// Same rows with a replacement label vector (used for permutation controls).
  Dataset with_labels(std::vector<Label> labels) const;

  bool operator==(const Dataset& other) const;

 private:
  AttributeSchema schema_;
  FeatureMatrix features_;
  std::vector<Label> labels_;
  std::vector<Provenance> provenance_;
};

/// Overrides for CSV column detection. Matching is case-insensitive.
struct SchemaHints {
  std::optional<std::string> loc_column;    // default "loc"
  std::optional<std::string> label_column;  // default: first of bug, defects, defect
  std::vector<std::string> ignore_columns;  // dropped before parsing (e.g. name, version)
  std::optional<Provenance> provenance;     // default: {file stem, ""}
};

Dataset read_csv(std::istream& in, const SchemaHints& hints = {}, std::string_view source = "<stream>");
Dataset load_csv(const std::filesystem::path& path, const SchemaHints& hints = {});
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path);

/// Concatenation in input order. All parts must share one schema.
Dataset merge(std::span<const Dataset> parts);

/// Index partition behind random_split: first part has floor(fraction*n + 0.5)
/// indices. Both parts are in ascending index order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_split_indices(std::size_t n, double fraction,
                                                                                   std::uint64_t seed);
std::pair<Dataset, Dataset> random_split(const Dataset& data, double fraction, std::uint64_t seed);

/// Holdout index sets of a shuffled k-fold partition, sizes differing by at most 1.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

struct Fold {
  Dataset train;
  Dataset holdout;
};
std::vector<Fold> kfold(const Dataset& data, std::size_t k, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Manifest: project -> ordered version files. The last version is the test
// set; all older versions merged are the training set.

struct VersionFile {
  std::string version;
  std::filesystem::path file;
};

struct ProjectEntry {
  std::string name;
  std::vector<VersionFile> versions;
};

struct Manifest {
  SchemaHints hints;
  std::vector<ProjectEntry> projects;

  const ProjectEntry& project(std::string_view name) const;
};

struct VersionSplit {
  std::string project;
  Dataset train;
  Dataset test;
};

/// Parses the JSON manifest. Relative file paths resolve against the
/// manifest's directory.
Manifest load_manifest(const std::filesystem::path& path);
Manifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);

/// Loads and merges the project's older versions as training data and its
/// latest version as test data.
VersionSplit assemble(const Manifest& manifest, const ProjectEntry& project);

}  // namespace frugal
