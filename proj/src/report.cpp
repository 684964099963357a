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

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"
#include "frugal/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace frugal::harness {

namespace {

std::vector<std::string> ordered_unique(const std::vector<Summary>& summaries, std::string Summary::*field) {
  std::vector<std::string> out;
  for (const auto& s : summaries) {
    if (std::find(out.begin(), out.end(), s.*field) == out.end()) out.push_back(s.*field);
  }
  return out;
}

const Summary* find_summary(const ExperimentResult& r, const std::string& dataset, const std::string& learner) {
  for (const auto& s : r.summaries) {
    if (s.dataset == dataset && s.learner == learner) return &s;
  }
  return nullptr;
}

std::string pct(double v) { return detail::format_fixed(100.0 * v, 1); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

/// Splits one CSV record, honouring double quotes.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string report(const ExperimentResult& result, ReportFormat format, const ReportOptions& options) {
  if (result.summaries.empty()) throw ArgumentError("cannot report an empty result");
  const bool runtime = options.runtime.value_or(result.tuned);
  const auto datasets = ordered_unique(result.summaries, &Summary::dataset);
  const auto methods = ordered_unique(result.summaries, &Summary::learner);

  struct Cell {
    std::string text;
    double value = 0.0;
    double seconds = 0.0;
    bool present = false;
    bool best = false;
  };
  std::vector<std::vector<Cell>> grid(datasets.size(), std::vector<Cell>(methods.size()));
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    std::optional<double> best;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      if (const auto* s = find_summary(result, datasets[d], methods[m])) {
        // compare what is printed, so cells that read the same are flagged together
        const std::string text = pct(s->value);
        const double shown = *detail::parse_double(text);
        grid[d][m] = Cell{text, shown, s->seconds, true, false};
        if (!best || result.goal.better(shown, *best)) best = shown;
      }
    }
    for (auto& cell : grid[d]) cell.best = cell.present && cell.value == *best;
  }

  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "dataset";
    for (const auto& m : methods) out << ',' << csv_field(m);
    if (runtime) {
      for (const auto& m : methods) out << ',' << csv_field(m + "_seconds");
    }
    out << ",best\n";
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      out << csv_field(datasets[d]);
      std::string best;
      for (std::size_t m = 0; m < methods.size(); ++m) {
        out << ',' << grid[d][m].text;
        if (grid[d][m].best) best += (best.empty() ? "" : "|") + methods[m];
      }
      if (runtime) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
          out << ',' << (grid[d][m].present ? detail::format_fixed(grid[d][m].seconds, 3) : "");
        }
      }
      out << ',' << csv_field(best) << '\n';
    }
    return out.str();
  }

  std::size_t first = std::string("dataset").size();
  for (const auto& d : datasets) first = std::max(first, d.size());
  std::vector<std::size_t> widths;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    std::size_t w = methods[m].size();
    for (const auto& row : grid) w = std::max(w, row[m].text.size() + 1);
    widths.push_back(w);
  }
  out << result.goal.name() << " (x100, " << (result.aggregate == Aggregate::median ? "median" : "mean")
      << ", * = best)\n";
  out << pad("dataset", first, true);
  for (std::size_t m = 0; m < methods.size(); ++m) out << "  " << pad(methods[m], widths[m], false);
  out << '\n';
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    out << pad(datasets[d], first, true);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const auto& c = grid[d][m];
      const std::string text = c.present ? c.text + (c.best ? "*" : " ") : "- ";
      out << "  " << pad(text, widths[m], false);
    }
    out << '\n';
  }
  if (runtime) {
    out << "\nruntime (s)\n";
    std::size_t name_w = 0;
    for (const auto& m : methods) name_w = std::max(name_w, m.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
      double total = 0.0;
      for (const auto& row : grid) total += row[m].seconds;
      out << pad(methods[m], name_w, true) << "  " << detail::format_fixed(total, 3) << '\n';
    }
  }
  return out.str();
}

ReportGrid parse_report_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("report csv is empty");
  const auto header = split_record(line);
  if (header.size() < 3 || header.front() != "dataset" || header.back() != "best") {
    throw ParseError("report csv header must read dataset,<methods...>,best");
  }
  ReportGrid grid;
  std::size_t seconds_cols = 0;
  for (std::size_t i = 1; i + 1 < header.size(); ++i) {
    const auto& h = header[i];
    if (h.size() > 8 && h.compare(h.size() - 8, 8, "_seconds") == 0) {
      ++seconds_cols;
    } else {
      grid.methods.push_back(h);
    }
  }
  if (seconds_cols != 0 && seconds_cols != grid.methods.size()) {
    throw ParseError("report csv has " + std::to_string(seconds_cols) + " runtime columns for " +
                     std::to_string(grid.methods.size()) + " methods");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_record(line);
    if (fields.size() != header.size()) {
      throw ParseError("report csv line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    ReportRow row;
    row.dataset = fields.front();
    row.best = fields.back();
    for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
      const auto v = detail::parse_double(fields[i]);
      if (!v) throw ParseError("report csv line " + std::to_string(line_no) + ": bad number '" + fields[i] + "'");
      (i <= grid.methods.size() ? row.values : row.seconds).push_back(*v);
    }
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

std::string runs_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "dataset,learner,repeat,score,tune_score,default_tune_score,evaluations,train_size,test_size,tunings\n";
  auto opt = [](const std::optional<double>& v) { return v ? detail::format_fixed(*v, 4) : std::string(); };
  for (const auto& r : result.runs) {
    out << csv_field(r.dataset) << ',' << csv_field(r.learner) << ',' << r.repeat << ','
        << detail::format_fixed(r.score, 4) << ',' << opt(r.tune_score) << ',' << opt(r.default_tune_score) << ','
        << r.evaluations << ',' << r.train_size << ',' << r.test_size << ',' << csv_field(r.tunings) << '\n';
  }
  return out.str();
}

std::string runtime_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "dataset,learner,runs,seconds\n";
  for (const auto& s : result.summaries) {
    out << csv_field(s.dataset) << ',' << csv_field(s.learner) << ',' << s.count << ','
        << detail::format_fixed(s.seconds, 3) << '\n';
  }
  return out.str();
}

std::string to_json(const ExperimentResult& result) {
  using nlohmann::json;
  json runs = json::array();
  for (const auto& r : result.runs) {
    json j{{"dataset", r.dataset},         {"learner", r.learner},       {"repeat", r.repeat},
           {"score", r.score},             {"evaluations", r.evaluations}, {"tunings", r.tunings},
           {"train_size", r.train_size},   {"test_size", r.test_size},   {"seconds", r.seconds}};
    j["tune_score"] = r.tune_score ? json(*r.tune_score) : json(nullptr);
    j["default_tune_score"] = r.default_tune_score ? json(*r.default_tune_score) : json(nullptr);
    runs.push_back(std::move(j));
  }
  json summaries = json::array();
  for (const auto& s : result.summaries) {
    summaries.push_back(
        {{"dataset", s.dataset}, {"learner", s.learner}, {"value", s.value}, {"count", s.count}, {"seconds", s.seconds}});
  }
  const json doc{{"mode", result.mode},
                 {"goal", result.goal.name()},
                 {"tuned", result.tuned},
                 {"aggregate", result.aggregate == Aggregate::median ? "median" : "mean"},
                 {"test_accesses", result.test_accesses},
                 {"evaluations", result.evaluations},
                 {"runs", std::move(runs)},
                 {"summaries", std::move(summaries)}};
  return doc.dump(2) + "\n";
}

ExperimentResult result_from_json(std::string_view text) {
  ExperimentResult result;
  try {
    const auto doc = nlohmann::json::parse(text);
    result.mode = doc.at("mode").get<std::string>();
    result.goal = parse_goal(doc.at("goal").get<std::string>());
    result.tuned = doc.at("tuned").get<bool>();
    result.aggregate = doc.at("aggregate").get<std::string>() == "mean" ? Aggregate::mean : Aggregate::median;
    result.test_accesses = doc.value("test_accesses", std::size_t{0});
    result.evaluations = doc.value("evaluations", std::size_t{0});
    for (const auto& j : doc.at("runs")) {
      RunRecord r;
      r.dataset = j.at("dataset").get<std::string>();
      r.learner = j.at("learner").get<std::string>();
      r.repeat = j.at("repeat").get<std::size_t>();
      r.score = j.at("score").get<double>();
      if (j.contains("tune_score") && !j.at("tune_score").is_null()) r.tune_score = j.at("tune_score").get<double>();
      if (j.contains("default_tune_score") && !j.at("default_tune_score").is_null()) {
        r.default_tune_score = j.at("default_tune_score").get<double>();
      }
      r.evaluations = j.value("evaluations", std::size_t{0});
      r.tunings = j.value("tunings", std::string());
      r.train_size = j.value("train_size", std::size_t{0});
      r.test_size = j.value("test_size", std::size_t{0});
      r.seconds = j.value("seconds", 0.0);
      result.runs.push_back(std::move(r));
    }
    for (const auto& j : doc.at("summaries")) {
      result.summaries.push_back(Summary{j.at("dataset").get<std::string>(), j.at("learner").get<std::string>(),
                                         j.at("value").get<double>(), j.at("count").get<std::size_t>(),
                                         j.value("seconds", 0.0)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed result file: ") + e.what());
  }
  return result;
}

}  // namespace frugal::harness
