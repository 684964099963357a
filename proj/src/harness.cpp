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

#include "frugal/harness.hpp"

#include "frugal/detail/text.hpp"
#include "frugal/errors.hpp"
#include "frugal/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace frugal::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Column labels; repeated kinds get a #n suffix.
std::vector<std::string> learner_labels(const std::vector<learners::LearnerSpec>& specs) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string base(learners::to_string(specs[i].kind));
    const auto same = std::count_if(specs.begin(), specs.end(),
                                    [&](const learners::LearnerSpec& s) { return s.kind == specs[i].kind; });
    if (same > 1) {
      const auto nth = std::count_if(specs.begin(), specs.begin() + static_cast<std::ptrdiff_t>(i),
                                     [&](const learners::LearnerSpec& s) { return s.kind == specs[i].kind; });
      base += "#" + std::to_string(nth + 1);
    }
    labels.push_back(std::move(base));
  }
  return labels;
}

std::string describe(const ParamSpace& space, const Candidate& c) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (i) out += ';';
    out += space[i].name + "=" + to_string(c.tunings[i]);
  }
  return out;
}

std::vector<double> locs_of(const Dataset& d) {
  const Eigen::VectorXd l = d.locs();
  return {l.data(), l.data() + l.size()};
}

double score_on(const GoalSpec& goal, const learners::Model& model, const Dataset& data) {
  const auto predicted = model.predict_labels(data);
  return evaluate(goal, data.labels(), predicted, locs_of(data));
}

[[noreturn]] void rethrow_with(const std::string& dataset) {
  try {
    throw;
  } catch (const DegenerateDataError& e) {
    throw DegenerateDataError("dataset " + dataset + ": " + e.what());
  }
}

void summarize(ExperimentResult& result) {
  result.summaries.clear();
  for (const auto& run : result.runs) {
    auto it = std::find_if(result.summaries.begin(), result.summaries.end(), [&](const Summary& s) {
      return s.dataset == run.dataset && s.learner == run.learner;
    });
    if (it == result.summaries.end()) {
      result.summaries.push_back(Summary{run.dataset, run.learner, 0.0, 0, 0.0});
      it = std::prev(result.summaries.end());
    }
    ++it->count;
    it->seconds += run.seconds;
  }
  for (auto& s : result.summaries) {
    std::vector<double> values;
    for (const auto& run : result.runs) {
      if (run.dataset == s.dataset && run.learner == s.learner) values.push_back(run.score);
    }
    s.value = result.aggregate == Aggregate::median ? median(values) : mean(values);
  }
}

struct TuneOutcome {
  Candidate best;
  double default_score = 0.0;
  std::size_t evaluations = 0;
};

/// DE over `space` with the space defaults seeded as member 0.
TuneOutcome tune(const ParamSpace& space, const std::function<double(const Candidate&)>& score, const GoalSpec& goal,
                 tuner::DEConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  TuneOutcome out;
  auto objective = [&](const Candidate& c) {
    const double s = score(c);
    if (out.evaluations++ == 0) out.default_score = s;
    return s;
  };
  tuner::OptimizeOptions options;
  options.seeds.push_back(space.defaults());
  auto result = tuner::optimize(space, objective, goal.direction(), cfg, options);
  if (result.evaluations != out.evaluations) throw std::logic_error("tuner call count disagrees with the objective");
  out.best = std::move(result.best);
  return out;
}

struct TuningJob {
  const ExperimentSpec& spec;
  const std::string& dataset;
  const std::string& label;
  const learners::LearnerSpec& learner;
  std::size_t repeat;
  std::uint64_t seed;
};

/// Tunes the learner on (new_train, tuning), refits the winner on new_train
/// and scores it once on the guarded test set.
RunRecord tune_and_test(const TuningJob& job, const Dataset& new_train, const Dataset& tuning, GuardedTestSet& test) {
  const auto start = Clock::now();
  const auto space = learners::param_space(job.learner.kind);
  if (space.empty()) {
    throw ConfigError("learner " + job.label + " has no tunable parameters");
  }
  const auto fit_seed = derive_seed(job.seed, 1);
  auto objective = [&](const Candidate& c) {
    const auto model = learners::fit(learners::spec_from(job.learner.kind, c), new_train, fit_seed, job.spec.goal);
    return score_on(job.spec.goal, model, tuning);
  };
  const auto outcome = tune(space, objective, job.spec.goal, *job.spec.tuning, derive_seed(job.seed, 2));
  const auto model = learners::fit(learners::spec_from(job.learner.kind, outcome.best), new_train, fit_seed, job.spec.goal);
  const Dataset& test_data = test.access();

  RunRecord rec;
  rec.dataset = job.dataset;
  rec.learner = job.label;
  rec.repeat = job.repeat;
  rec.score = score_on(job.spec.goal, model, test_data);
  rec.tune_score = outcome.best.score;
  rec.default_tune_score = outcome.default_score;
  rec.evaluations = outcome.evaluations;
  rec.tunings = describe(space, outcome.best);
  rec.train_size = new_train.size();
  rec.test_size = test_data.size();
  rec.seconds = seconds_since(start);
  return rec;
}

void require_tuning(const ExperimentSpec& spec) {
  if (!spec.tuning) throw ConfigError("tuned workflows need a tuning section");
}

}  // namespace

// ---------------------------------------------------------------------------

void ExperimentSpec::validate() const {
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (learners.empty()) throw ConfigError("no learners selected");
  for (const auto& l : learners) {
    try {
      l.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
  if (tuning) {
    try {
      tuning->validate();
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what());
    }
  }
  if (split.kind == SplitKind::kfold && split.k < 2) throw ConfigError("k-fold split needs k >= 2");
  if (split.kind == SplitKind::random && !(split.fraction > 0.0 && split.fraction < 1.0)) {
    throw ConfigError("random split fraction must lie in (0, 1)");
  }
  if (preprocess == Preprocess::smote) {
    try {
      smote.validate();
    } catch (const ValidationError& e) {
      throw ConfigError(e.what());
    }
  }
}

ExperimentSpec parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  ExperimentSpec spec;
  try {
    if (doc.contains("manifest")) {
      std::filesystem::path m = doc.at("manifest").get<std::string>();
      spec.manifest = m.is_relative() ? base_dir / m : m;
    }
    if (doc.contains("datasets")) spec.datasets = doc.at("datasets").get<std::vector<std::string>>();
    if (doc.contains("learners")) {
      for (const auto& l : doc.at("learners")) {
        learners::LearnerSpec ls;
        if (l.is_string()) {
          ls.kind = learners::parse_kind(l.get<std::string>());
        } else {
          ls.kind = learners::parse_kind(l.at("kind").get<std::string>());
          if (l.contains("params")) {
            const auto space = learners::param_space(ls.kind);
            for (const auto& [name, value] : l.at("params").items()) {
              const auto& pspec = space.at(name);
              ParamValue v;
              if (value.is_boolean()) {
                v = value.get<bool>();
              } else if (value.is_number_integer()) {
                v = value.get<std::int64_t>();
              } else if (value.is_number()) {
                v = value.get<double>();
              } else if (value.is_null()) {
                v = std::monostate{};
              } else {
                v = pspec.parse(value.get<std::string>());
              }
              ls.params[name] = pspec.coerce(v);
            }
          }
        }
        spec.learners.push_back(std::move(ls));
      }
    }
    if (doc.contains("goal")) spec.goal = parse_goal(doc.at("goal").get<std::string>());
    if (doc.contains("tuning") && !doc.at("tuning").is_null()) {
      const auto& t = doc.at("tuning");
      tuner::DEConfig cfg;
      cfg.np = t.value("np", cfg.np);
      cfg.f = t.value("f", cfg.f);
      cfg.cr = t.value("cr", cfg.cr);
      cfg.life = t.value("life", cfg.life);
      cfg.max_generations = t.value("max_generations", cfg.max_generations);
      spec.tuning = cfg;
    }
    if (doc.contains("preprocess")) {
      const auto p = doc.at("preprocess").get<std::string>();
      if (p == "none") {
        spec.preprocess = Preprocess::none;
      } else if (p == "smote") {
        spec.preprocess = Preprocess::smote;
      } else if (p == "smotuned") {
        spec.preprocess = Preprocess::smotuned;
      } else {
        throw ConfigError("unknown preprocess '" + p + "'");
      }
    }
    if (doc.contains("smote")) {
      const auto& s = doc.at("smote");
      spec.smote.k = s.value("k", spec.smote.k);
      spec.smote.m = s.value("m", spec.smote.m);
      spec.smote.r = s.value("r", spec.smote.r);
    }
    spec.repeats = doc.value("repeats", spec.repeats);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("split")) {
      const auto& s = doc.at("split");
      const auto kind = s.value("kind", std::string("version"));
      if (kind == "version" || kind == "version_based") {
        spec.split.kind = SplitKind::version_based;
      } else if (kind == "kfold") {
        spec.split.kind = SplitKind::kfold;
      } else if (kind == "random") {
        spec.split.kind = SplitKind::random;
      } else {
        throw ConfigError("unknown split kind '" + kind + "'");
      }
      spec.split.k = s.value("k", spec.split.k);
      spec.split.fraction = s.value("fraction", spec.split.fraction);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str(), path.parent_path());
}

double median(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("mean of no values");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t index) { return derive_seed(seed, index); }

std::vector<VersionSplit> load_splits(const ExperimentSpec& spec) {
  if (spec.manifest.empty()) throw ConfigError("no manifest given");
  const auto manifest = load_manifest(spec.manifest);
  std::vector<VersionSplit> splits;
  if (spec.datasets.empty()) {
    for (const auto& p : manifest.projects) splits.push_back(assemble(manifest, p));
  } else {
    for (const auto& name : spec.datasets) splits.push_back(assemble(manifest, manifest.project(name)));
  }
  if (splits.empty()) throw ConfigError("manifest lists no projects");
  return splits;
}

ExperimentResult run_untuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits) {
  spec.validate();
  if (spec.tuning) throw ConfigError("untuned workflow given a tuning section");
  const auto labels = learner_labels(spec.learners);
  ExperimentResult result;
  result.mode = "untuned";
  result.goal = spec.goal;
  for (const auto& split : splits) {
    GuardedTestSet test(split.test);
    try {
      for (std::size_t r = 0; r < spec.repeats; ++r) {
        const auto seed_r = repeat_seed(spec.seed, r);
        for (std::size_t li = 0; li < spec.learners.size(); ++li) {
          const auto start = Clock::now();
          const auto seed = derive_seed(seed_r, li);
          Dataset train = split.train;
          if (spec.preprocess == Preprocess::smote) {
            auto cfg = spec.smote;
            cfg.seed = derive_seed(seed, 3);
            train = smote::apply(train, cfg);
          }
          const auto model = learners::fit(spec.learners[li], train, derive_seed(seed, 1), spec.goal);
          const Dataset& test_data = test.access();
          RunRecord rec;
          rec.dataset = split.project;
          rec.learner = labels[li];
          rec.repeat = r;
          rec.score = score_on(spec.goal, model, test_data);
          rec.train_size = train.size();
          rec.test_size = test_data.size();
          rec.seconds = seconds_since(start);
          result.runs.push_back(std::move(rec));
        }
      }
    } catch (const DegenerateDataError&) {
      rethrow_with(split.project);
    }
    result.test_accesses += test.accesses();
  }
  summarize(result);
  return result;
}

ExperimentResult run_tuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits) {
  spec.validate();
  require_tuning(spec);
  const auto labels = learner_labels(spec.learners);
  const double fraction = spec.split.kind == SplitKind::random ? spec.split.fraction : 0.8;
  ExperimentResult result;
  result.mode = "tune";
  result.goal = spec.goal;
  result.tuned = true;
  for (const auto& split : splits) {
    GuardedTestSet test(split.test);
    try {
      for (std::size_t r = 0; r < spec.repeats; ++r) {
        const auto seed_r = repeat_seed(spec.seed, r);
        const auto [new_train, tuning] = random_split(split.train, fraction, derive_seed(seed_r, 0x5EED));
        for (std::size_t li = 0; li < spec.learners.size(); ++li) {
          TuningJob job{spec, split.project, labels[li], spec.learners[li], r, derive_seed(seed_r, li)};
          auto rec = tune_and_test(job, new_train, tuning, test);
          result.evaluations += rec.evaluations;
          result.runs.push_back(std::move(rec));
        }
      }
    } catch (const DegenerateDataError&) {
      rethrow_with(split.project);
    }
    result.test_accesses += test.accesses();
  }
  summarize(result);
  return result;
}

ExperimentResult run_kfold_tuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits) {
  spec.validate();
  require_tuning(spec);
  if (spec.split.kind != SplitKind::kfold) throw ConfigError("k-fold tuning needs a kfold split");
  const auto labels = learner_labels(spec.learners);
  ExperimentResult result;
  result.mode = "kfold-tune";
  result.goal = spec.goal;
  result.tuned = true;
  result.aggregate = Aggregate::mean;
  for (const auto& split : splits) {
    GuardedTestSet test(split.test);
    try {
      const auto folds = kfold(split.train, spec.split.k, derive_seed(spec.seed, 0xF01D));
      for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto seed_f = repeat_seed(spec.seed, f);
        for (std::size_t li = 0; li < spec.learners.size(); ++li) {
          TuningJob job{spec, split.project, labels[li], spec.learners[li], f, derive_seed(seed_f, li)};
          auto rec = tune_and_test(job, folds[f].train, folds[f].holdout, test);
          result.evaluations += rec.evaluations;
          result.runs.push_back(std::move(rec));
        }
      }
    } catch (const DegenerateDataError&) {
      rethrow_with(split.project);
    } catch (const ArgumentError& e) {
      throw ConfigError("dataset " + split.project + ": " + e.what());
    }
    result.test_accesses += test.accesses();
  }
  summarize(result);
  return result;
}

ExperimentResult run_smotuned(const ExperimentSpec& spec, const std::vector<VersionSplit>& splits) {
  spec.validate();
  require_tuning(spec);
  const auto labels = learner_labels(spec.learners);
  const double fraction = spec.split.kind == SplitKind::random ? spec.split.fraction : 0.8;
  const auto space = smote::param_space();
  ExperimentResult result;
  result.mode = "smotuned";
  result.goal = spec.goal;
  result.tuned = true;
  for (const auto& split : splits) {
    GuardedTestSet test(split.test);
    try {
      for (std::size_t r = 0; r < spec.repeats; ++r) {
        const auto seed_r = repeat_seed(spec.seed, r);
        const auto [new_train, tuning] = random_split(split.train, fraction, derive_seed(seed_r, 0x5EED));
        const auto tune_bad = tuning.defectives();
        if (tune_bad == 0 || tune_bad == tuning.size()) {
          throw DegenerateDataError("tuning split of repeat " + std::to_string(r) + " holds a single class");
        }
        for (std::size_t li = 0; li < spec.learners.size(); ++li) {
          const auto start = Clock::now();
          const auto seed = derive_seed(seed_r, li);
          const auto& learner = spec.learners[li];
          const auto smote_seed = derive_seed(seed, 3);
          const auto fit_seed = derive_seed(seed, 1);
          auto objective = [&](const Candidate& c) {
            const auto balanced = smote::apply(new_train, smote::config_from(c, smote_seed));
            return score_on(spec.goal, learners::fit(learner, balanced, fit_seed, spec.goal), tuning);
          };
          const auto outcome = tune(space, objective, spec.goal, *spec.tuning, derive_seed(seed, 2));
          const auto balanced = smote::apply(new_train, smote::config_from(outcome.best, smote_seed));
          const auto model = learners::fit(learner, balanced, fit_seed, spec.goal);
          const Dataset& test_data = test.access();

          RunRecord rec;
          rec.dataset = split.project;
          rec.learner = labels[li];
          rec.repeat = r;
          rec.score = score_on(spec.goal, model, test_data);
          rec.tune_score = outcome.best.score;
          rec.default_tune_score = outcome.default_score;
          rec.evaluations = outcome.evaluations;
          rec.tunings = describe(space, outcome.best);
          rec.train_size = balanced.size();
          rec.test_size = test_data.size();
          rec.seconds = seconds_since(start);
          result.evaluations += rec.evaluations;
          result.runs.push_back(std::move(rec));
        }
      }
    } catch (const DegenerateDataError&) {
      rethrow_with(split.project);
    }
    result.test_accesses += test.accesses();
  }
  summarize(result);
  return result;
}

ExperimentResult run_untuned(const ExperimentSpec& spec) { return run_untuned(spec, load_splits(spec)); }
ExperimentResult run_tuned(const ExperimentSpec& spec) { return run_tuned(spec, load_splits(spec)); }
ExperimentResult run_kfold_tuned(const ExperimentSpec& spec) { return run_kfold_tuned(spec, load_splits(spec)); }
ExperimentResult run_smotuned(const ExperimentSpec& spec) { return run_smotuned(spec, load_splits(spec)); }

}  // namespace frugal::harness
