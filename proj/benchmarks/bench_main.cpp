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

// Hot paths of a run: attribute tables, rule evaluation, PSGS and archive
// insertion. Instance sizes follow the benchmark sets (30 to 300 activities).

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "mehh/archive.hpp"
#include "mehh/scheduler.hpp"
#include "mehh/variation.hpp"

using namespace mehh;

namespace {

Instance sized(int n) {
  testing::SyntheticParams p;
  p.activities = n;
  return testing::synthetic_instance(p, 42);
}

void BM_AttributeTable(benchmark::State& state) {
  const auto inst = sized(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Problem(inst));
}
BENCHMARK(BM_AttributeTable)->Arg(30)->Arg(120)->Arg(300);

void BM_RulePriorities(benchmark::State& state) {
  const Problem prob(sized(120));
  Rng rng(1);
  const PriorityRule rule(generate_full(rng, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(rule.priorities(prob));
}
BENCHMARK(BM_RulePriorities)->Arg(3)->Arg(7);

void BM_Psgs(benchmark::State& state) {
  const Problem prob(sized(static_cast<int>(state.range(0))));
  const auto prio = PriorityRule(BuiltinRule::kLFT, 0).priorities(prob);
  for (auto _ : state) benchmark::DoNotOptimize(psgs(prob.instance, prio));
}
BENCHMARK(BM_Psgs)->Arg(30)->Arg(120)->Arg(300);

void BM_ScheduleSlack(benchmark::State& state) {
  const Problem prob(sized(120));
  const auto sched = psgs(prob.instance, PriorityRule(BuiltinRule::kLFT, 0).priorities(prob));
  for (auto _ : state) benchmark::DoNotOptimize(schedule_slack(prob.instance, sched));
}
BENCHMARK(BM_ScheduleSlack);

void BM_ArchiveInsert(benchmark::State& state) {
  Rng rng(3);
  Archive archive(GridConfig{static_cast<int>(state.range(0))});
  for (auto _ : state) {
    Individual ind{RuleExpr{}, uniform01(rng) * 100.0,
                   {uniform_int(rng, 4, 127), uniform_int(rng, 0, 30), 1.65 + 0.35 * uniform01(rng)}};
    benchmark::DoNotOptimize(archive.insert(std::move(ind)));
  }
}
BENCHMARK(BM_ArchiveInsert)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
