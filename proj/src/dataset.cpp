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

#include "frugal/dataset.hpp"

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"
#include "frugal/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace frugal {

using detail::iequals;
using detail::to_lower;

// ---------------------------------------------------------------------------
// AttributeSchema

void AttributeSchema::validate() const {
  if (names.size() < 2) throw SchemaError("schema needs at least a loc and a label column");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw SchemaError("schema contains an empty column name");
    if (!seen.insert(to_lower(n)).second) throw SchemaError("duplicate column name '" + n + "'");
  }
  if (loc_index >= names.size()) throw SchemaError("loc column index out of range");
  if (label_index >= names.size()) throw SchemaError("label column index out of range");
  if (loc_index == label_index) throw SchemaError("loc and label must be different columns");
}

std::vector<std::string> AttributeSchema::feature_names() const {
  std::vector<std::string> out;
  out.reserve(feature_count());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i != label_index) out.push_back(names[i]);
  }
  return out;
}

std::optional<std::size_t> AttributeSchema::feature_index(std::string_view name) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i == label_index) continue;
    if (iequals(names[i], name)) return f;
    ++f;
  }
  return std::nullopt;
}

std::uint64_t AttributeSchema::fingerprint() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const auto& n : feature_names()) {
    for (char c : to_lower(n)) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    h ^= 0x1F;  // separator
    h *= 0x100000001B3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(AttributeSchema schema, FeatureMatrix features, std::vector<Label> labels,
                 std::vector<Provenance> provenance)
    : schema_(std::move(schema)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      provenance_(std::move(provenance)) {
  schema_.validate();
  if (static_cast<std::size_t>(features_.cols()) != schema_.feature_count()) {
    throw SchemaError("feature matrix has " + std::to_string(features_.cols()) + " columns, schema expects " +
                      std::to_string(schema_.feature_count()));
  }
  if (static_cast<std::size_t>(features_.rows()) != labels_.size()) {
    throw ArgumentError("feature rows and label count differ");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!(loc(i) >= 0.0)) throw ArgumentError("negative loc at row " + std::to_string(i));
  }
}

Instance Dataset::instance(std::size_t i) const {
  return Instance{row(i).transpose(), loc(i), labels_[i]};
}

std::size_t Dataset::defectives() const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), Label::defective));
}

double Dataset::defect_ratio() const {
  return labels_.empty() ? 0.0 : static_cast<double>(defectives()) / static_cast<double>(labels_.size());
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  FeatureMatrix rows(static_cast<Eigen::Index>(indices.size()), features_.cols());
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= size()) throw ArgumentError("subset index out of range");
    rows.row(static_cast<Eigen::Index>(r)) = features_.row(static_cast<Eigen::Index>(indices[r]));
    labels.push_back(labels_[indices[r]]);
  }
  return Dataset(schema_, std::move(rows), std::move(labels), provenance_);
}

Dataset Dataset::with_labels(std::vector<Label> labels) const {
  if (labels.size() != size()) throw ArgumentError("replacement label vector has the wrong length");
  return Dataset(schema_, features_, std::move(labels), provenance_);
}

bool Dataset::operator==(const Dataset& other) const {
  return schema_ == other.schema_ && labels_ == other.labels_ && provenance_ == other.provenance_ &&
         features_.rows() == other.features_.rows() && features_.cols() == other.features_.cols() &&
         features_ == other.features_;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::string(detail::trim(cell)));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::string(detail::trim(cell)));
  return cells;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (iequals(header[i], name)) return i;
  }
  return std::nullopt;
}

bool is_blank(std::string_view line) { return detail::trim(line).empty(); }

}  // namespace

Dataset read_csv(std::istream& in, const SchemaHints& hints, std::string_view source) {
  const std::string src(source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!is_blank(line)) break;
  }
  if (is_blank(line)) throw SchemaError(src + ": missing header row");

  const auto header = split_csv_line(line);
  std::vector<bool> keep(header.size(), true);
  // every column carrying an ignored name goes, since some exports repeat "name"
  for (const auto& ignored : hints.ignore_columns) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (iequals(header[i], ignored)) keep[i] = false;
    }
  }

  AttributeSchema schema;
  std::vector<std::size_t> source_columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!keep[i]) continue;
    schema.names.push_back(header[i]);
    source_columns.push_back(i);
  }

  const std::string loc_name = hints.loc_column.value_or("loc");
  auto loc_idx = find_column(schema.names, loc_name);
  if (!loc_idx) throw SchemaError(src + ": no lines-of-code column named '" + loc_name + "'");
  std::optional<std::size_t> label_idx;
  if (hints.label_column) {
    label_idx = find_column(schema.names, *hints.label_column);
    if (!label_idx) throw SchemaError(src + ": no label column named '" + *hints.label_column + "'");
  } else {
    for (const char* alias : {"bug", "defects", "defect"}) {
      if ((label_idx = find_column(schema.names, alias))) break;
    }
    if (!label_idx) throw SchemaError(src + ": no label column (expected bug, defects or defect)");
  }
  schema.loc_index = *loc_idx;
  schema.label_index = *label_idx;
  schema.validate();

  std::vector<double> values;
  std::vector<Label> labels;
  const std::size_t width = schema.feature_count();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(src + ": line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < source_columns.size(); ++c) {
      const auto& cell = cells[source_columns[c]];
      const auto where = src + ": line " + std::to_string(line_no) + ", column '" + schema.names[c] + "'";
      if (cell.empty() || cell == "?" || iequals(cell, "na") || iequals(cell, "nan")) {
        throw ParseError(where + ": missing value");
      }
      const auto v = detail::parse_double(cell);
      if (!v) throw ParseError(where + ": non-numeric value '" + cell + "'");
      if (c == schema.label_index) {
        labels.push_back(*v > 0.0 ? Label::defective : Label::clean);
      } else {
        if (c == schema.loc_index && *v < 0.0) throw ParseError(where + ": negative lines of code");
        values.push_back(*v);
      }
    }
  }

  FeatureMatrix features(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(width));
  if (!values.empty()) {
    features = Eigen::Map<const FeatureMatrix>(values.data(), features.rows(), features.cols());
  }
  std::vector<Provenance> provenance;
  if (hints.provenance) provenance.push_back(*hints.provenance);
  return Dataset(std::move(schema), std::move(features), std::move(labels), std::move(provenance));
}

Dataset load_csv(const std::filesystem::path& path, const SchemaHints& hints) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  SchemaHints h = hints;
  if (!h.provenance) h.provenance = Provenance{path.stem().string(), ""};
  return read_csv(in, h, path.string());
}

void write_csv(const Dataset& data, std::ostream& out) {
  const auto& schema = data.schema();
  for (std::size_t i = 0; i < schema.names.size(); ++i) {
    if (i) out << ',';
    out << schema.names[i];
  }
  out << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    std::size_t f = 0;
    for (std::size_t c = 0; c < schema.names.size(); ++c) {
      if (c) out << ',';
      if (c == schema.label_index) {
        out << to_int(data.label(r));
      } else {
        out << detail::format_double(data.features()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f++)));
      }
    }
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_csv(data, out);
}

// ---------------------------------------------------------------------------
// Combination and splitting

Dataset merge(std::span<const Dataset> parts) {
  if (parts.empty()) throw ArgumentError("merge needs at least one dataset");
  const auto& schema = parts.front().schema();
  Eigen::Index rows = 0;
  for (const auto& p : parts) {
    const auto& other = p.schema();
    if (other != schema) {
      const auto n = std::max(schema.names.size(), other.names.size());
      for (std::size_t i = 0; i < n; ++i) {
        const std::string a = i < schema.names.size() ? schema.names[i] : "<none>";
        const std::string b = i < other.names.size() ? other.names[i] : "<none>";
        if (a != b) throw SchemaError("schema mismatch at column " + std::to_string(i) + ": '" + a + "' vs '" + b + "'");
      }
      throw SchemaError("schema mismatch: loc/label columns differ");
    }
    rows += static_cast<Eigen::Index>(p.size());
  }

  FeatureMatrix features(rows, static_cast<Eigen::Index>(schema.feature_count()));
  std::vector<Label> labels;
  std::vector<Provenance> provenance;
  labels.reserve(static_cast<std::size_t>(rows));
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    features.middleRows(at, static_cast<Eigen::Index>(p.size())) = p.features();
    at += static_cast<Eigen::Index>(p.size());
    labels.insert(labels.end(), p.labels().begin(), p.labels().end());
    for (const auto& tag : p.provenance()) {
      if (std::find(provenance.begin(), provenance.end(), tag) == provenance.end()) provenance.push_back(tag);
    }
  }
  return Dataset(schema, std::move(features), std::move(labels), std::move(provenance));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_split_indices(std::size_t n, double fraction,
                                                                                   std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ArgumentError("split fraction must lie in (0, 1)");
  const auto first_size = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 0.5));
  Rng rng(seed);
  auto order = permutation(n, rng);
  std::vector<std::size_t> first(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(first_size));
  std::vector<std::size_t> second(order.begin() + static_cast<std::ptrdiff_t>(first_size), order.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return {std::move(first), std::move(second)};
}

std::pair<Dataset, Dataset> random_split(const Dataset& data, double fraction, std::uint64_t seed) {
  if (data.empty()) throw ArgumentError("cannot split an empty dataset");
  const auto [a, b] = random_split_indices(data.size(), fraction, seed);
  return {data.subset(a), data.subset(b)};
}

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ArgumentError("k-fold needs k >= 2");
  if (k > n) throw ArgumentError("k-fold needs at least k instances (k=" + std::to_string(k) +
                                 ", n=" + std::to_string(n) + ")");
  Rng rng(seed);
  const auto order = permutation(n, rng);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t at = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(at),
                    order.begin() + static_cast<std::ptrdiff_t>(at + size));
    std::sort(folds[f].begin(), folds[f].end());
    at += size;
  }
  return folds;
}

std::vector<Fold> kfold(const Dataset& data, std::size_t k, std::uint64_t seed) {
  const auto holdouts = kfold_indices(data.size(), k, seed);
  std::vector<Fold> folds;
  folds.reserve(k);
  std::vector<std::size_t> fold_of(data.size());
  for (std::size_t f = 0; f < k; ++f) {
    for (auto i : holdouts[f]) fold_of[i] = f;
  }
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train;
    train.reserve(data.size() - holdouts[f].size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] != f) train.push_back(i);
    }
    folds.push_back(Fold{data.subset(train), data.subset(holdouts[f])});
  }
  return folds;
}

// ---------------------------------------------------------------------------
// Manifest

const ProjectEntry& Manifest::project(std::string_view name) const {
  for (const auto& p : projects) {
    if (p.name == name) return p;
  }
  throw ConfigError("manifest has no project '" + std::string(name) + "'");
}

Manifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  Manifest m;
  try {
    if (doc.contains("schema")) {
      const auto& s = doc.at("schema");
      if (s.contains("loc")) m.hints.loc_column = s.at("loc").get<std::string>();
      if (s.contains("label")) m.hints.label_column = s.at("label").get<std::string>();
      if (s.contains("ignore")) m.hints.ignore_columns = s.at("ignore").get<std::vector<std::string>>();
    }
    for (const auto& p : doc.at("projects")) {
      ProjectEntry entry;
      entry.name = p.at("name").get<std::string>();
      for (const auto& v : p.at("versions")) {
        std::filesystem::path file = v.at("file").get<std::string>();
        if (file.is_relative()) file = base_dir / file;
        entry.versions.push_back(VersionFile{v.at("version").get<std::string>(), file});
      }
      m.projects.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

VersionSplit assemble(const Manifest& manifest, const ProjectEntry& project) {
  if (project.versions.size() < 2) {
    throw ConfigError("project '" + project.name + "' needs at least one training version and a test version");
  }
  std::vector<Dataset> parts;
  for (const auto& v : project.versions) {
    SchemaHints hints = manifest.hints;
    hints.provenance = Provenance{project.name, v.version};
    if (!std::filesystem::exists(v.file)) {
      throw ConfigError("project '" + project.name + "' version " + v.version + ": missing file " + v.file.string());
    }
    parts.push_back(load_csv(v.file, hints));
  }
  Dataset test = std::move(parts.back());
  parts.pop_back();
  return VersionSplit{project.name, merge(parts), std::move(test)};
}

}  // namespace frugal
