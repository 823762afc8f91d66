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

// Test-only fixtures and reference oracles. The oracles are written
// independently of the library code they check: plain recursion and
// per-period loops, no shared helpers.

#ifndef MEHH_TESTS_FIXTURES_HPP
#define MEHH_TESTS_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mehh/analysis.hpp"
#include "mehh/instance.hpp"
#include "mehh/random.hpp"
#include "mehh/rule.hpp"

namespace mehh::testing {

/// source -> A(d=3) -> B(d=2) -> sink, no resources in use, R=[1].
Instance chain_instance();

/// A and B between the dummies, in parallel.
Instance parallel_instance(int da, int db, int ra = 0, int rb = 0, int capacity = 1);

/// J30-style generator knobs: network complexity (arcs per activity),
/// resource factor (share of resources an activity needs) and resource
/// strength (0 = tightest capacity, 1 = the ES-schedule peak).
struct SyntheticParams {
  int activities = 30;  // real ones
  int resources = 4;
  double complexity = 1.5;
  double factor = 0.5;
  double strength = 0.5;
  int max_duration = 10;
  int max_request = 10;
};

Instance synthetic_instance(const SyntheticParams& p, std::uint64_t seed, std::string id = {});

/// 48 parameter combinations in the J30 grid (complexity x factor x
/// strength), `per_combination` instances each, ids "syn<c>_<i>".
struct SyntheticSet {
  std::vector<Instance> instances;
  std::vector<InstanceMeta> meta;  // NC, RF, RS
};

SyntheticSet synthetic_set(int activities, int per_combination, std::uint64_t seed);

// Oracles ------------------------------------------------------------------

/// Earliest finish by memoized recursion over predecessors.
std::vector<int> longest_path_finish(const Instance& inst);

/// Per-node DFS reachability.
std::vector<int> dfs_successor_count(const Instance& inst);
std::vector<int> dfs_predecessor_count(const Instance& inst);

/// Precedence and per-period capacity, checked by brute force over time.
bool naive_feasible(const Instance& inst, const std::vector<int>& start);

/// Optimal makespan by exhaustive search over start times. Small instances
/// only (a handful of real activities).
int brute_force_makespan(const Instance& inst);

/// Slack by shifting each real activity forward one step at a time and
/// re-checking feasibility of the whole schedule.
long long naive_slack(const Instance& inst, const std::vector<int>& start);

/// Tree-walking interpreter for rule expressions.
double interpret(const RuleExpr& expr, const AttributeTable& attrs, int activity);

}  // namespace mehh::testing

#endif  // MEHH_TESTS_FIXTURES_HPP
