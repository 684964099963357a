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

#include "frugal/metrics.hpp"
#include "frugal/param_space.hpp"
#include "frugal/random.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace frugal::tuner {

/// Differential evolution settings. Defaults: np=10, f=0.75, cr=0.3, life=5.
struct DEConfig {
  std::size_t np = 10;
  double f = 0.75;
  double cr = 0.3;
  std::size_t life = 5;
  std::uint64_t seed = 0;
  /// Hard stop for objectives that keep improving by tiny amounts.
  std::size_t max_generations = 200;
  /// Binomial crossover with one forced dimension (index drawn uniformly), so
  /// no mutant is a plain copy of its target. Off = every dimension mutates
  /// with probability cr and nothing else.
  bool force_one_dimension = true;

  void validate() const;
};

/// Gains smaller than this do not count as improvement when spending lives.
inline constexpr double kImprovementTolerance = 1e-12;

std::vector<Candidate> init_population(const ParamSpace& space, const DEConfig& cfg, Rng& rng);
/// Same, with a fresh generator seeded from cfg.seed.
std::vector<Candidate> init_population(const ParamSpace& space, const DEConfig& cfg);

/// Three distinct indices in [0, population), all different from `target`.
std::array<std::size_t, 3> three_others(std::size_t population, std::size_t target, Rng& rng);

/// Builds a mutant of `target`. Each dimension is mutated with probability
/// cr (plus one forced dimension, see DEConfig), otherwise copied from target. Mutation rules per kind:
///   continuous  trim(a + f (b - c))
///   integer     trim(round(a + f (b - c)))
///   boolean     !target
///   categorical one of {a, b, c}, uniformly
Candidate extrapolate(const Candidate& target, const Candidate& a, const Candidate& b, const Candidate& c,
                      const ParamSpace& space, const DEConfig& cfg, Rng& rng);

using Objective = std::function<double(const Candidate&)>;

/// Snapshot passed to an observer after each generation.
struct GenerationRecord {
  std::size_t generation = 0;
  std::span<const Candidate> before;
  std::span<const Candidate> challengers;
  std::span<const Candidate> after;
  double best_score = 0.0;
  std::size_t life_left = 0;
};

struct DEResult {
  Candidate best;
  std::size_t generations = 0;
  std::size_t evaluations = 0;
  /// Best-so-far score after initialisation and after each generation.
  std::vector<double> best_history;
  std::vector<Candidate> final_population;
};

struct OptimizeOptions {
  /// Candidates placed in the first population slots before any are scored.
  std::vector<Candidate> seeds;
  std::function<void(const GenerationRecord&)> observer;
};

/// Generational DE. Each member is challenged by its mutant and replaced when
/// the mutant scores strictly better. A generation whose best does not beat
/// the best so far by more than kImprovementTolerance costs one life; the run
/// stops when lives run out (or at max_generations). Returns the best
/// candidate ever scored, which under this replacement rule is also the best
/// of the final population.
DEResult optimize(const ParamSpace& space, const Objective& objective, Direction direction, const DEConfig& cfg,
                  const OptimizeOptions& options = {});

}  // namespace frugal::tuner
