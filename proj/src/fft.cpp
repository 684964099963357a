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

#include "frugal/fft.hpp"

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace frugal::fft {

std::string_view to_string(Relation r) { return r == Relation::le ? "<=" : ">"; }

bool FFTree::same_rules(const FFTree& other) const {
  if (levels.size() != other.levels.size() || else_class != other.else_class) return false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!levels[i].same_rule(other.levels[i])) return false;
  }
  return true;
}

double median(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("median of an empty set");
  std::vector<double> v(values.begin(), values.end());
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

double median_split(const Dataset& data, std::size_t attribute) {
  if (data.empty()) throw ArgumentError("median split of an empty dataset");
  if (attribute >= data.feature_count()) throw ArgumentError("attribute index out of range");
  const Eigen::VectorXd column = data.features().col(static_cast<Eigen::Index>(attribute));
  return median(std::span<const double>(column.data(), static_cast<std::size_t>(column.size())));
}

namespace {

struct View {
  const Dataset& data;
  std::vector<double> locs;

  explicit View(const Dataset& d) : data(d) {
    const Eigen::VectorXd l = d.locs();
    locs.assign(l.data(), l.data() + l.size());
  }
};

double score_with(const View& view, const GoalSpec& goal, const Range& range) {
  const auto& data = view.data;
  std::vector<Label> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    predicted[i] = range.matches(data.row(i)) ? range.predicted : opposite(range.predicted);
  }
  return evaluate(goal, data.labels(), predicted, view.locs);
}

bool both_classes(const Dataset& data) {
  const auto bad = data.defectives();
  return bad > 0 && bad < data.size();
}

std::vector<Range> ranked_ranges(const View& view, const GoalSpec& goal) {
  const auto& data = view.data;
  std::vector<Range> ranges;
  for (std::size_t a = 0; a < data.feature_count(); ++a) {
    const double t = median_split(data, a);
    for (Relation rel : {Relation::le, Relation::gt}) {
      Range probe{a, rel, t, Label::defective, 0.0};
      bool captures = false;
      for (std::size_t i = 0; i < data.size() && !captures; ++i) captures = probe.matches(data.row(i));
      if (!captures) continue;
      for (Label cls : {Label::defective, Label::clean}) {
        Range r{a, rel, t, cls, 0.0};
        r.score = score_with(view, goal, r);
        ranges.push_back(r);
      }
    }
  }
  std::stable_sort(ranges.begin(), ranges.end(),
                   [&](const Range& x, const Range& y) { return goal.better(x.score, y.score); });
  return ranges;
}

Label majority(const Dataset& data) {
  const auto bad = data.defectives();
  return 2 * bad >= data.size() ? Label::defective : Label::clean;
}

}  // namespace

double score_range(const Dataset& data, const GoalSpec& goal, const Range& range) {
  if (range.attribute >= data.feature_count()) throw ArgumentError("range attribute out of range");
  return score_with(View(data), goal, range);
}

std::vector<Range> score_ranges(const Dataset& data, const GoalSpec& goal) {
  if (data.feature_count() == 0) throw ArgumentError("no attributes to split on");
  if (!both_classes(data)) throw DegenerateDataError("ranges need both classes present");
  return ranked_ranges(View(data), goal);
}

Range extreme_range(const Dataset& data, const GoalSpec& goal, Label cls) {
  for (const auto& r : score_ranges(data, goal)) {
    if (r.predicted == cls) return r;
  }
  throw DegenerateDataError("no range predicts the requested class");
}

FFTree build_tree(const Dataset& data, const GoalSpec& goal, std::uint32_t structure_id, std::size_t depth) {
  if (depth > 30) throw ArgumentError("tree depth too large");
  if (structure_id >= (1ULL << depth)) throw ArgumentError("structure id must be below 2^depth");
  if (data.empty()) throw ArgumentError("cannot build a tree from an empty dataset");

  FFTree tree;
  tree.depth = depth;
  tree.structure_id = structure_id;
  tree.attribute_names = data.schema().feature_names();

  Dataset remaining = data;
  Label fallback = majority(data);
  for (std::size_t level = 0; level < depth; ++level) {
    if (remaining.empty()) {
      tree.else_class = fallback;
      return tree;
    }
    if (!both_classes(remaining)) {
      tree.else_class = majority(remaining);
      return tree;
    }
    const Label cls = exit_class(structure_id, level);
    std::vector<Range> ranked;
    try {
      ranked = ranked_ranges(View(remaining), goal);
    } catch (const DegenerateDataError&) {
      // e.g. p_opt over rows whose loc is all zero
      tree.else_class = majority(remaining);
      return tree;
    }
    const auto it = std::find_if(ranked.begin(), ranked.end(), [&](const Range& r) { return r.predicted == cls; });
    if (it == ranked.end()) {
      tree.else_class = majority(remaining);
      return tree;
    }
    tree.levels.push_back(*it);

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!it->matches(remaining.row(i))) rest.push_back(i);
    }
    fallback = majority(remaining);
    remaining = remaining.subset(rest);
  }
  tree.else_class = tree.levels.empty() ? majority(data) : opposite(tree.levels.back().predicted);
  return tree;
}

FFTEnsemble fit(const Dataset& data, const GoalSpec& goal, std::size_t depth) {
  if (depth < 1) throw ArgumentError("fft depth must be at least 1");
  if (depth > 16) throw ArgumentError("fft depth must be at most 16");
  if (!both_classes(data)) throw DegenerateDataError("fft training data needs both classes present");

  FFTEnsemble ensemble;
  ensemble.goal = goal;
  const View view(data);
  const std::uint32_t count = 1U << depth;
  for (std::uint32_t id = 0; id < count; ++id) {
    FFTree tree = build_tree(data, goal, id, depth);
    const auto predicted = predict(tree, data);
    const double score = evaluate(goal, data.labels(), predicted, view.locs);
    if (id == 0 || goal.better(score, ensemble.scores[ensemble.best])) ensemble.best = id;
    ensemble.trees.push_back(std::move(tree));
    ensemble.scores.push_back(score);
  }
  return ensemble;
}

Label predict(const FFTree& tree, const Instance& instance) {
  if (static_cast<std::size_t>(instance.features.size()) != tree.feature_count()) {
    throw ArgumentError("instance has " + std::to_string(instance.features.size()) + " attributes, tree expects " +
                        std::to_string(tree.feature_count()));
  }
  return predict_row(tree, instance.features);
}

std::vector<Label> predict(const FFTree& tree, const Dataset& data) {
  const auto names = data.schema().feature_names();
  if (names.size() != tree.feature_count()) throw ArgumentError("dataset schema does not match the tree");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!detail::iequals(names[i], tree.attribute_names[i])) {
      throw ArgumentError("dataset attribute '" + names[i] + "' does not match tree attribute '" +
                          tree.attribute_names[i] + "'");
    }
  }
  std::vector<Label> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = predict_row(tree, data.row(i));
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string_view class_word(Label l) { return l == Label::defective ? "true" : "false"; }

Label parse_class(std::string_view word) {
  if (word == "true") return Label::defective;
  if (word == "false") return Label::clean;
  throw ParseError("expected 'true' or 'false', got '" + std::string(word) + "'");
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

std::string to_rules(const FFTree& tree) {
  std::string out;
  for (std::size_t i = 0; i < tree.levels.size(); ++i) {
    const auto& r = tree.levels[i];
    out += i == 0 ? "if " : "else if ";
    out += tree.attribute_names.at(r.attribute);
    out += ' ';
    out += to_string(r.relation);
    out += ' ';
    out += detail::format_double(r.threshold);
    out += " then ";
    out += class_word(r.predicted);
    out += '\n';
  }
  out += "else ";
  out += class_word(tree.else_class);
  out += '\n';
  return out;
}

FFTree parse_rules(std::string_view text, const std::vector<std::string>& attribute_names) {
  FFTree tree;
  tree.attribute_names = attribute_names;
  bool closed = false;
  std::size_t line_no = 0;
  for (const auto& raw : detail::split(text, '\n')) {
    ++line_no;
    auto toks = tokens(raw);
    if (toks.empty()) continue;
    const auto where = "rule line " + std::to_string(line_no) + ": ";
    if (closed) throw ParseError(where + "text after the closing 'else'");
    if (toks.front().size() > 1 && toks.front().back() == '.' &&
        std::all_of(toks.front().begin(), toks.front().end() - 1, [](char c) { return c >= '0' && c <= '9'; })) {
      toks.erase(toks.begin());
    }
    std::size_t at = 0;
    const bool first = tree.levels.empty();
    if (toks.size() == 2 && toks[0] == "else") {
      tree.else_class = parse_class(toks[1]);
      closed = true;
      continue;
    }
    if (!first) {
      if (toks.empty() || toks[0] != "else") throw ParseError(where + "expected 'else if'");
      ++at;
    }
    if (toks.size() != at + 6 || toks[at] != "if" || toks[at + 4] != "then") {
      throw ParseError(where + "expected 'if <attr> <= | > <value> then true|false'");
    }
    Range r;
    const auto& name = toks[at + 1];
    const auto idx = std::find_if(attribute_names.begin(), attribute_names.end(),
                                  [&](const std::string& n) { return detail::iequals(n, name); });
    if (idx == attribute_names.end()) throw ParseError(where + "unknown attribute '" + name + "'");
    r.attribute = static_cast<std::size_t>(idx - attribute_names.begin());
    if (toks[at + 2] == "<=") {
      r.relation = Relation::le;
    } else if (toks[at + 2] == ">") {
      r.relation = Relation::gt;
    } else {
      throw ParseError(where + "relation must be '<=' or '>', got '" + toks[at + 2] + "'");
    }
    const auto v = detail::parse_double(toks[at + 3]);
    if (!v) throw ParseError(where + "bad threshold '" + toks[at + 3] + "'");
    r.threshold = *v;
    r.predicted = parse_class(toks[at + 5]);
    tree.levels.push_back(r);
  }
  if (!closed) throw ParseError("rule list must end with 'else true|false'");
  tree.depth = tree.levels.size();
  for (std::size_t i = 0; i < tree.levels.size(); ++i) {
    if (tree.levels[i].predicted == Label::defective) tree.structure_id |= 1U << i;
  }
  return tree;
}

std::string to_json(const FFTree& tree) {
  nlohmann::json doc;
  doc["depth"] = tree.depth;
  doc["structure_id"] = tree.structure_id;
  doc["attributes"] = tree.attribute_names;
  doc["levels"] = nlohmann::json::array();
  for (const auto& r : tree.levels) {
    doc["levels"].push_back({{"attribute", r.attribute},
                             {"relation", std::string(to_string(r.relation))},
                             {"threshold", r.threshold},
                             {"exit", std::string(class_word(r.predicted))},
                             {"score", r.score}});
  }
  doc["else"] = std::string(class_word(tree.else_class));
  return doc.dump(2);
}

FFTree tree_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    FFTree tree;
    tree.depth = doc.at("depth").get<std::size_t>();
    tree.structure_id = doc.at("structure_id").get<std::uint32_t>();
    tree.attribute_names = doc.at("attributes").get<std::vector<std::string>>();
    for (const auto& l : doc.at("levels")) {
      Range r;
      r.attribute = l.at("attribute").get<std::size_t>();
      if (r.attribute >= tree.attribute_names.size()) throw ParseError("level attribute index out of range");
      const auto rel = l.at("relation").get<std::string>();
      if (rel == "<=") {
        r.relation = Relation::le;
      } else if (rel == ">") {
        r.relation = Relation::gt;
      } else {
        throw ParseError("bad relation '" + rel + "'");
      }
      r.threshold = l.at("threshold").get<double>();
      r.predicted = parse_class(l.at("exit").get<std::string>());
      r.score = l.value("score", 0.0);
      tree.levels.push_back(r);
    }
    tree.else_class = parse_class(doc.at("else").get<std::string>());
    return tree;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed tree JSON: ") + e.what());
  }
}

}  // namespace frugal::fft
