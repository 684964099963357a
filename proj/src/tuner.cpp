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

#include "frugal/tuner.hpp"

#include "frugal/errors.hpp"

namespace frugal::tuner {

void DEConfig::validate() const {
  if (np < 4) throw ArgumentError("DE population must hold at least 4 members");
  if (!(f > 0.0)) throw ArgumentError("DE extrapolation factor f must be positive");
  if (!(cr >= 0.0 && cr <= 1.0)) throw ArgumentError("DE crossover rate must lie in [0, 1]");
  if (life < 1) throw ArgumentError("DE life must be at least 1");
  if (max_generations < 1) throw ArgumentError("DE generation cap must be at least 1");
}

std::vector<Candidate> init_population(const ParamSpace& space, const DEConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<Candidate> pop;
  pop.reserve(cfg.np);
  for (std::size_t i = 0; i < cfg.np; ++i) pop.push_back(space.sample(rng));
  return pop;
}

std::vector<Candidate> init_population(const ParamSpace& space, const DEConfig& cfg) {
  Rng rng(cfg.seed);
  return init_population(space, cfg, rng);
}

std::array<std::size_t, 3> three_others(std::size_t population, std::size_t target, Rng& rng) {
  if (population < 4) throw ArgumentError("extrapolation needs at least 4 distinct population members");
  if (target >= population) throw ArgumentError("target index out of range");
  std::array<std::size_t, 3> picked{};
  std::size_t n = 0;
  while (n < 3) {
    const auto i = rng.below(population);
    if (i == target) continue;
    bool dup = false;
    for (std::size_t k = 0; k < n; ++k) dup = dup || picked[k] == i;
    if (!dup) picked[n++] = i;
  }
  return picked;
}

Candidate extrapolate(const Candidate& target, const Candidate& a, const Candidate& b, const Candidate& c,
                      const ParamSpace& space, const DEConfig& cfg, Rng& rng) {
  const std::size_t dims = space.size();
  for (const Candidate* x : {&target, &a, &b, &c}) {
    if (x->tunings.size() != dims) throw ArgumentError("candidate does not match the parameter space");
  }
  Candidate mutant;
  mutant.tunings.reserve(dims);
  const std::size_t forced = cfg.force_one_dimension ? rng.below(dims) : dims;
  for (std::size_t k = 0; k < dims; ++k) {
    const auto& spec = space[k];
    const bool mutate = rng.uniform() < cfg.cr || k == forced;
    if (!mutate) {
      mutant.tunings.push_back(target.tunings[k]);
      continue;
    }
    switch (spec.kind) {
      case ParamKind::continuous:
      case ParamKind::integer: {
        const double raw = spec.as_number(a.tunings[k]) +
                           cfg.f * (spec.as_number(b.tunings[k]) - spec.as_number(c.tunings[k]));
        mutant.tunings.push_back(spec.trim(raw));
        break;
      }
      case ParamKind::boolean: {
        const auto* old = std::get_if<bool>(&target.tunings[k]);
        mutant.tunings.push_back(!(old && *old));
        break;
      }
      case ParamKind::categorical: {
        const Candidate* pick[] = {&a, &b, &c};
        mutant.tunings.push_back(pick[rng.below(3)]->tunings[k]);
        break;
      }
    }
  }
  return mutant;
}

namespace {

std::size_t argbest(const std::vector<Candidate>& pop, Direction dir) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (improves(dir, *pop[i].score, *pop[best].score)) best = i;
  }
  return best;
}

}  // namespace

DEResult optimize(const ParamSpace& space, const Objective& objective, Direction direction, const DEConfig& cfg,
                  const OptimizeOptions& options) {
  cfg.validate();
  if (space.empty()) throw ArgumentError("nothing to tune: empty parameter space");
  if (options.seeds.size() > cfg.np) throw ArgumentError("more seed candidates than population slots");

  Rng rng(cfg.seed);
  auto pop = init_population(space, cfg, rng);
  for (std::size_t i = 0; i < options.seeds.size(); ++i) {
    if (!space.contains(options.seeds[i])) throw ArgumentError("seed candidate is outside the parameter space");
    pop[i].tunings = options.seeds[i].tunings;
  }

  DEResult result;
  for (auto& member : pop) {
    member.score = objective(member);
    ++result.evaluations;
  }
  result.best = pop[argbest(pop, direction)];
  result.best_history.push_back(*result.best.score);

  std::size_t life = cfg.life;
  std::vector<Candidate> challengers(cfg.np);
  while (life > 0 && result.generations < cfg.max_generations) {
    ++result.generations;
    auto next = pop;
    for (std::size_t i = 0; i < cfg.np; ++i) {
      const auto [ia, ib, ic] = three_others(cfg.np, i, rng);
      Candidate mutant = extrapolate(pop[i], pop[ia], pop[ib], pop[ic], space, cfg, rng);
      mutant.score = objective(mutant);
      ++result.evaluations;
      if (improves(direction, *mutant.score, *pop[i].score)) next[i] = mutant;
      challengers[i] = std::move(mutant);
    }

    const auto& gen_best = next[argbest(next, direction)];
    const bool improved = improves(direction, *gen_best.score, *result.best.score, kImprovementTolerance);
    if (improves(direction, *gen_best.score, *result.best.score)) result.best = gen_best;
    if (!improved) --life;
    result.best_history.push_back(*result.best.score);

    if (options.observer) {
      options.observer(GenerationRecord{result.generations, pop, challengers, next, *result.best.score, life});
    }
    pop = std::move(next);
  }
  result.final_population = std::move(pop);
  return result;
}

}  // namespace frugal::tuner
