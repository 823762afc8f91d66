// Copyright 2026 The mehh Authors
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

#include "mehh/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "mehh/variation.hpp"

namespace mehh {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

Evaluator::Evaluator(std::span<const Problem> training, int threads) : training_(training), threads_(threads) {
  if (training_.empty()) throw std::invalid_argument("training set is empty");
}

std::vector<Individual> Evaluator::evaluate(const std::vector<RuleExpr>& batch) {
  std::vector<std::string> keys;
  keys.reserve(batch.size());
  std::vector<std::size_t> todo;
  std::unordered_set<std::string> queued;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    keys.push_back(serialize(batch[i]));
    if (!memo_.contains(keys.back()) && queued.insert(keys.back()).second) todo.push_back(i);
  }
  std::vector<RuleEvaluation> fresh(todo.size());
  parallel_for(todo.size(), threads_,
               [&](std::size_t t) { fresh[t] = evaluate_with_slack(batch[todo[t]], training_); });
  for (std::size_t t = 0; t < todo.size(); ++t) memo_.emplace(keys[todo[t]], fresh[t]);

  std::vector<Individual> out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& ev = memo_.at(keys[i]);
    out.push_back({batch[i], ev.fitness, {node_count(batch[i]), resource_node_count(batch[i]), ev.slack}});
  }
  evaluations_ += static_cast<long long>(batch.size());
  return out;
}

Individual Evaluator::evaluate(const RuleExpr& expr) { return evaluate(std::vector<RuleExpr>{expr}).front(); }

namespace {

// Produces two children from two parents.
std::pair<RuleExpr, RuleExpr> vary(const RuleExpr& a, const RuleExpr& b, const EvolutionConfig& cfg, Rng& rng) {
  if (cfg.variation == VariationMode::kExclusive) {
    const double r = uniform01(rng);
    if (r < cfg.crossover_prob) return crossover(a, b, rng, cfg.height_limit);
    if (r < cfg.crossover_prob + cfg.mutation_prob)
      return {mutate(a, rng, cfg.height_limit), mutate(b, rng, cfg.height_limit)};
    return {a, b};
  }
  auto children = bernoulli(rng, cfg.crossover_prob) ? crossover(a, b, rng, cfg.height_limit)
                                                      : std::pair<RuleExpr, RuleExpr>{a, b};
  if (bernoulli(rng, cfg.mutation_prob)) children.first = mutate(children.first, rng, cfg.height_limit);
  if (bernoulli(rng, cfg.mutation_prob)) children.second = mutate(children.second, rng, cfg.height_limit);
  return children;
}

double best_of(std::span<const Individual> pool) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ind : pool) best = std::min(best, ind.fitness);
  return best;
}

void validate(const EvolutionConfig& cfg) {
  if (cfg.population < 1) throw std::invalid_argument("population must be positive");
  if (cfg.generations < 0) throw std::invalid_argument("generations must be non-negative");
  if (cfg.crossover_prob < 0 || cfg.crossover_prob > 1 || cfg.mutation_prob < 0 || cfg.mutation_prob > 1)
    throw std::invalid_argument("probabilities must lie in [0,1]");
  if (cfg.tournament_size < 1) throw std::invalid_argument("tournament size must be positive");
  if (cfg.init_min_height < 0 || cfg.init_max_height < cfg.init_min_height ||
      cfg.init_max_height > cfg.height_limit)
    throw std::invalid_argument("bad initial height range");
}

}  // namespace

MehhResult run_mehh(const EvolutionConfig& cfg, const GridConfig& grid, std::span<const Problem> training,
                    std::uint64_t seed) {
  validate(cfg);
  Rng rng(seed);
  Evaluator eval(training, cfg.threads);
  MehhResult res{Archive(grid), {}, 0};
  const auto lambda = static_cast<std::size_t>(cfg.population);

  for (int gen = 0; gen <= cfg.generations; ++gen) {
    std::vector<RuleExpr> batch;
    batch.reserve(lambda);
    if (gen == 0) {
      for (std::size_t i = 0; i < lambda; ++i)
        batch.push_back(random_individual(rng, cfg.init_min_height, cfg.init_max_height));
    } else {
      // Parents come from the archive as it stood at the start of the batch.
      const auto elites = res.archive.elites();
      while (batch.size() < lambda) {
        const auto& a = elites[uniform_below(rng, elites.size())].second->expr;
        const auto& b = elites[uniform_below(rng, elites.size())].second->expr;
        auto [c1, c2] = vary(a, b, cfg, rng);
        batch.push_back(std::move(c1));
        if (batch.size() < lambda) batch.push_back(std::move(c2));
      }
    }
    for (auto& ind : eval.evaluate(batch)) res.archive.insert(std::move(ind));

    const auto pool = res.archive.individuals();
    res.trace.push_back({gen, unique_fraction(pool), best_of(pool), res.archive.occupancy()});
  }
  res.evaluations = eval.evaluations();
  return res;
}

std::size_t tournament_select(std::span<const Individual> pop, int size, Rng& rng) {
  std::size_t best = uniform_below(rng, pop.size());
  for (int i = 1; i < size; ++i) {
    const std::size_t c = uniform_below(rng, pop.size());
    if (pop[c].fitness < pop[best].fitness) best = c;
  }
  return best;
}

GphhResult run_gphh(const EvolutionConfig& cfg, std::span<const Problem> training, std::uint64_t seed) {
  validate(cfg);
  Rng rng(seed);
  Evaluator eval(training, cfg.threads);
  GphhResult res;
  const auto lambda = static_cast<std::size_t>(cfg.population);

  std::vector<RuleExpr> batch;
  for (std::size_t i = 0; i < lambda; ++i)
    batch.push_back(random_individual(rng, cfg.init_min_height, cfg.init_max_height));
  res.population = eval.evaluate(batch);
  double best = best_of(res.population);
  res.trace.push_back({0, unique_fraction(res.population), best, res.population.size()});

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<RuleExpr> offspring;
    offspring.reserve(lambda);
    for (std::size_t i = 0; i < lambda; ++i)
      offspring.push_back(res.population[tournament_select(res.population, cfg.tournament_size, rng)].expr);
    // Same pairing scheme as the archive variant: consecutive pairs.
    for (std::size_t i = 0; i + 1 < lambda; i += 2) {
      auto [c1, c2] = vary(offspring[i], offspring[i + 1], cfg, rng);
      offspring[i] = std::move(c1);
      offspring[i + 1] = std::move(c2);
    }
    if (lambda % 2 == 1 && bernoulli(rng, cfg.mutation_prob))
      offspring.back() = mutate(offspring.back(), rng, cfg.height_limit);
    res.population = eval.evaluate(offspring);
    best = std::min(best, best_of(res.population));
    res.trace.push_back({gen, unique_fraction(res.population), best, res.population.size()});
  }
  res.evaluations = eval.evaluations();
  return res;
}

Representative select_representative(std::span<const Individual> pool, std::span<const Problem> validation,
                                     int threads) {
  if (pool.empty()) throw std::invalid_argument("cannot select a representative from an empty pool");
  if (validation.empty()) throw std::invalid_argument("validation set is empty");
  // Evaluate each distinct rule once.
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> first;
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    keys.push_back(serialize(pool[i].expr));
    if (first.emplace(keys.back(), distinct.size()).second) distinct.push_back(i);
  }
  std::vector<double> fit(distinct.size());
  parallel_for(distinct.size(), threads, [&](std::size_t d) {
    fit[d] = evaluate_rule(PriorityRule(pool[distinct[d]].expr), validation).mean_deviation;
  });

  std::size_t best = 0;
  for (std::size_t d = 1; d < distinct.size(); ++d) {
    const auto& cand = pool[distinct[d]];
    const auto& inc = pool[distinct[best]];
    if (fit[d] < fit[best] ||
        (fit[d] == fit[best] &&
         (node_count(cand.expr) < node_count(inc.expr) ||
          (node_count(cand.expr) == node_count(inc.expr) && keys[distinct[d]] < keys[distinct[best]]))))
      best = d;
  }
  return {pool[distinct[best]], fit[best]};
}

Domain calibrate_slack_domain(std::span<const Problem> training, int samples, std::uint64_t seed, int threads) {
  if (samples < 1) throw std::invalid_argument("calibration needs at least one sample");
  Rng rng(seed);
  std::vector<RuleExpr> batch;
  for (int i = 0; i < samples; ++i) batch.push_back(random_individual(rng));
  Evaluator eval(training, threads);
  Domain d{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& ind : eval.evaluate(batch)) {
    d.lo = std::min(d.lo, ind.features.slack);
    d.hi = std::max(d.hi, ind.features.slack);
  }
  if (d.hi <= d.lo) d.hi = d.lo + 1e-9;
  return d;
}

std::size_t unique_count(std::span<const Individual> pool) {
  std::unordered_set<std::string> seen;
  for (const auto& ind : pool) seen.insert(serialize(ind.expr));
  return seen.size();
}

double unique_fraction(std::span<const Individual> pool) {
  if (pool.empty()) return 0.0;
  return static_cast<double>(unique_count(pool)) / static_cast<double>(pool.size());
}

}  // namespace mehh
