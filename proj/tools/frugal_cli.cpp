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

#include "frugal/errors.hpp"
#include "frugal/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace frugal;

namespace {

struct Flags {
  std::string config;
  std::string manifest;
  std::vector<std::string> datasets;
  std::string goal;
  std::vector<std::string> learners;
  std::size_t repeats = 0;
  std::optional<std::uint64_t> seed;
  std::size_t k = 0;
  std::string out;
  std::string format = "table";
  std::string result;
  bool runtime = false;
  bool no_runtime = false;
};

harness::ReportFormat parse_format(const std::string& s) {
  if (s == "table") return harness::ReportFormat::table;
  if (s == "csv") return harness::ReportFormat::csv;
  throw ConfigError("unknown format '" + s + "'");
}

harness::ReportOptions report_options(const Flags& f) {
  harness::ReportOptions o;
  if (f.runtime) o.runtime = true;
  if (f.no_runtime) o.runtime = false;
  return o;
}

/// Config file first, then command-line overrides.
harness::ExperimentSpec build_spec(const Flags& f, const std::string& mode) {
  harness::ExperimentSpec spec = f.config.empty() ? harness::ExperimentSpec{} : harness::load_experiment(f.config);
  if (!f.manifest.empty()) spec.manifest = f.manifest;
  if (!f.datasets.empty()) spec.datasets = f.datasets;
  try {
    if (!f.goal.empty()) spec.goal = parse_goal(f.goal);
    if (!f.learners.empty()) {
      spec.learners.clear();
      for (const auto& name : f.learners) spec.learners.push_back({learners::parse_kind(name), {}});
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  if (f.repeats) spec.repeats = f.repeats;
  if (f.seed) spec.seed = *f.seed;

  const bool tuned = mode != "untuned";
  if (tuned && !spec.tuning) spec.tuning = tuner::DEConfig{};
  if (!tuned && spec.tuning) throw ConfigError("untuned runs take no tuning section");
  if (mode == "kfold-tune") {
    spec.split.kind = harness::SplitKind::kfold;
    if (f.k) spec.split.k = f.k;
  }
  if (mode == "smotuned") spec.preprocess = harness::Preprocess::smotuned;
  if (spec.learners.empty()) {
    if (mode == "untuned") {
      for (auto kind : learners::all_kinds()) spec.learners.push_back({kind, {}});
    } else if (mode == "smotuned") {
      spec.learners.push_back({learners::LearnerKind::random_forest, {}});
    } else {
      spec.learners.push_back({learners::LearnerKind::cart, {}});
    }
  }
  spec.validate();
  return spec;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

int run_experiment(const Flags& f, const std::string& mode) {
  const auto spec = build_spec(f, mode);
  const auto format = parse_format(f.format);
  const auto splits = harness::load_splits(spec);
  harness::ExperimentResult result;
  if (mode == "untuned") {
    result = harness::run_untuned(spec, splits);
  } else if (mode == "tune") {
    result = harness::run_tuned(spec, splits);
  } else if (mode == "kfold-tune") {
    result = harness::run_kfold_tuned(spec, splits);
  } else {
    result = harness::run_smotuned(spec, splits);
  }
  if (!f.out.empty()) {
    const fs::path dir(f.out);
    fs::create_directories(dir);
    write_file(dir / "result.json", harness::to_json(result));
    harness::ReportOptions scores;
    scores.runtime = false;
    write_file(dir / "scores.csv", harness::report(result, harness::ReportFormat::csv, scores));
    write_file(dir / "runs.csv", harness::runs_csv(result));
    write_file(dir / "runtime.csv", harness::runtime_csv(result));
  }
  std::cout << harness::report(result, format, report_options(f));
  if (result.tuned) std::cerr << "objective evaluations: " << result.evaluations << '\n';
  return 0;
}

int run_report(const Flags& f) {
  if (f.result.empty()) throw ConfigError("report needs --result <result.json>");
  std::ifstream in(f.result);
  if (!in) throw ConfigError("cannot open " + f.result);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto result = harness::result_from_json(buf.str());
  std::cout << harness::report(result, parse_format(f.format), report_options(f));
  return 0;
}

void add_run_flags(CLI::App* cmd, Flags& f, bool kfold) {
  cmd->add_option("--config", f.config, "Experiment config (JSON)");
  cmd->add_option("--manifest", f.manifest, "Dataset manifest (JSON)");
  cmd->add_option("--dataset", f.datasets, "Project(s) to run; default all")->delimiter(',');
  cmd->add_option("--goal", f.goal, "d2h, popt, f1 or acc");
  cmd->add_option("--learner", f.learners, "Learner kind(s), comma separated")->delimiter(',');
  cmd->add_option("--repeats", f.repeats, "Repeats per (dataset, learner)")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Master seed");
  if (kfold) cmd->add_option("--k", f.k, "Number of folds")->check(CLI::Range(2, 1000));
  cmd->add_option("--out", f.out, "Directory for result.json, scores.csv, runs.csv, runtime.csv");
  cmd->add_option("--format", f.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  cmd->add_flag("--runtime", f.runtime, "Include the runtime section");
  cmd->add_flag("--no-runtime", f.no_runtime, "Omit the runtime section");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frugal: defect prediction with fast-and-frugal trees, DE tuning and SMOTE"};
  app.require_subcommand(1);
  Flags flags;
  std::string mode;
  for (const char* name : {"untuned", "tune", "kfold-tune", "smotuned"}) {
    auto* cmd = app.add_subcommand(name);
    add_run_flags(cmd, flags, std::string(name) == "kfold-tune");
    cmd->callback([&mode, name] { mode = name; });
  }
  auto* rep = app.add_subcommand("report", "Render a saved result.json");
  rep->add_option("--result", flags.result, "result.json written by a run")->required();
  rep->add_option("--format", flags.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  rep->add_flag("--runtime", flags.runtime, "Include the runtime section");
  rep->add_flag("--no-runtime", flags.no_runtime, "Omit the runtime section");
  rep->callback([&mode] { mode = "report"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return mode == "report" ? run_report(flags) : run_experiment(flags, mode);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
