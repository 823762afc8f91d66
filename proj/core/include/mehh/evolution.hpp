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

// The two hyper-heuristics: MAP-Elites over the three-feature grid, and the
// generational tournament GP baseline. Both spend the same number of rule
// evaluations, population * (generations + 1).

#ifndef MEHH_EVOLUTION_HPP
#define MEHH_EVOLUTION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mehh/analysis.hpp"
#include "mehh/archive.hpp"
#include "mehh/random.hpp"
#include "mehh/rule.hpp"
#include "mehh/scheduler.hpp"

namespace mehh {

enum class VariationMode {
  /// Crossover with p_cx, then mutation with p_mut on each child.
  kSequential,
  /// One of crossover (p_cx), mutation (p_mut) or plain copy per pair.
  kExclusive,
};

struct EvolutionConfig {
  int population = 1024;  // batch size for MAP-Elites
  int generations = 25;
  double crossover_prob = 0.8;
  double mutation_prob = 0.2;
  int tournament_size = 7;
  int init_min_height = 2;
  int init_max_height = 5;
  int height_limit = kHeightLimit;
  VariationMode variation = VariationMode::kSequential;
  /// Worker threads for fitness evaluation; 0 picks hardware concurrency.
  int threads = 0;
};

/// Fitness plus features of expressions on a fixed training set. Results
/// are memoized by canonical string; the memo is invisible to callers since
/// evaluation is deterministic.
class Evaluator {
 public:
  Evaluator(std::span<const Problem> training, int threads = 0);

  std::vector<Individual> evaluate(const std::vector<RuleExpr>& batch);
  Individual evaluate(const RuleExpr& expr);

  /// Individuals requested so far, cache hits included.
  long long evaluations() const { return evaluations_; }

 private:
  std::span<const Problem> training_;
  int threads_;
  std::unordered_map<std::string, RuleEvaluation> memo_;
  long long evaluations_ = 0;
};

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct GenerationStats {
  int generation = 0;
  double unique_fraction = 0.0;
  double best_fitness = 0.0;  // best so far
  std::size_t occupancy = 0;  // archive cells filled, or population size
};

struct MehhResult {
  Archive archive;
  std::vector<GenerationStats> trace;
  long long evaluations = 0;
};

struct GphhResult {
  std::vector<Individual> population;
  std::vector<GenerationStats> trace;
  long long evaluations = 0;
};

MehhResult run_mehh(const EvolutionConfig& cfg, const GridConfig& grid, std::span<const Problem> training,
                    std::uint64_t seed);

GphhResult run_gphh(const EvolutionConfig& cfg, std::span<const Problem> training, std::uint64_t seed);

/// Tournament of `size` draws with replacement; lowest fitness wins, the
/// earlier draw on ties.
std::size_t tournament_select(std::span<const Individual> pop, int size, Rng& rng);

/// Best pool member on the validation set; ties go to the smaller tree, then
/// the lexicographically smaller serialization. Throws on an empty pool.
struct Representative {
  Individual individual;
  double validation_fitness = 0.0;
};

Representative select_representative(std::span<const Individual> pool, std::span<const Problem> validation,
                                     int threads = 0);

/// [min, max] normalized slack of `samples` ramped half-and-half trees on
/// `training`. The stock slack domain was measured this way on J30; other
/// training sets need their own. Throws when samples < 1.
Domain calibrate_slack_domain(std::span<const Problem> training, int samples, std::uint64_t seed,
                              int threads = 0);

/// Distinct canonical serializations divided by pool size (0 when empty).
double unique_fraction(std::span<const Individual> pool);
std::size_t unique_count(std::span<const Individual> pool);

}  // namespace mehh

#endif  // MEHH_EVOLUTION_HPP
