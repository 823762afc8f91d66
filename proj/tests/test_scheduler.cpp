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

#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mehh/scheduler.hpp"
#include "mehh/variation.hpp"

namespace mehh {
namespace {

using testing::chain_instance;
using testing::parallel_instance;

std::vector<int> starts(const Schedule& s) { return {s.start().begin(), s.start().end()}; }

TEST(Psgs, ChainHasNoChoice) {
  const Instance inst = chain_instance();
  for (const std::vector<double>& prio :
       {std::vector<double>{0, 0, 0, 0}, std::vector<double>{3, 2, 1, 0}, std::vector<double>{-1, 5, -5, 2}}) {
    const auto s = psgs(inst, prio);
    EXPECT_EQ(starts(s), (std::vector<int>{0, 0, 3, 5}));
    EXPECT_EQ(s.makespan(), 5);
  }
}

TEST(Psgs, PriorityDecidesContendedPair) {
  // A(d=2,r=2), B(d=3,r=2), R=3: only one fits at a time.
  const Instance inst = parallel_instance(2, 3, 2, 2, 3);
  const auto favor_b = psgs(inst, std::vector<double>{0, 1, 0, 0});
  EXPECT_EQ(favor_b.start(2), 0);
  EXPECT_EQ(favor_b.start(1), 3);
  EXPECT_EQ(favor_b.makespan(), 5);
  const auto favor_a = psgs(inst, std::vector<double>{0, 0, 1, 0});
  EXPECT_EQ(favor_a.start(1), 0);
  EXPECT_EQ(favor_a.start(2), 2);
  EXPECT_EQ(favor_a.makespan(), 5);
  // Both orders are optimal here.
  EXPECT_EQ(testing::brute_force_makespan(inst), 5);
}

TEST(Psgs, TiesGoToLowerId) {
  const Instance inst = parallel_instance(2, 3, 2, 2, 3);
  const auto s = psgs(inst, std::vector<double>{0, 0, 0, 0});
  EXPECT_EQ(s.start(1), 0);
  EXPECT_EQ(s.start(2), 2);
}

TEST(Psgs, StartsEverythingThatFits) {
  const Instance inst = parallel_instance(2, 3, 1, 2, 3);
  const auto s = psgs(inst, std::vector<double>{0, 0, 0, 0});
  EXPECT_EQ(s.start(1), 0);
  EXPECT_EQ(s.start(2), 0);
  EXPECT_EQ(s.makespan(), 3);
}

TEST(Psgs, ZeroDurationActivities) {
  // source -> A(d=0) -> B(d=2) -> sink
  const Instance inst("z", {0, 0, 2, 0}, {{0}, {0}, {1}, {0}}, {1}, {{1}, {2}, {3}, {}});
  const auto s = psgs(inst, std::vector<double>{0, 0, 0, 0});
  EXPECT_EQ(starts(s), (std::vector<int>{0, 0, 0, 2}));
  EXPECT_EQ(check_feasible(inst, s.start()), "");
}

TEST(Psgs, RejectsWrongPriorityLength) {
  EXPECT_THROW(psgs(chain_instance(), std::vector<double>{0, 0}), std::invalid_argument);
}

TEST(Feasibility, DetectsViolations) {
  const Instance inst = parallel_instance(2, 3, 2, 2, 3);
  EXPECT_EQ(check_feasible(inst, std::vector<int>{0, 0, 2, 5}), "");
  EXPECT_NE(check_feasible(inst, std::vector<int>{0, 0, 1, 5}), "");  // capacity
  EXPECT_NE(check_feasible(inst, std::vector<int>{0, 0, 2, 4}), "");  // precedence
  EXPECT_NE(check_feasible(inst, std::vector<int>{0, 0}), "");
}

TEST(Deviation, Examples) {
  EXPECT_DOUBLE_EQ(deviation(110, 100), 10.0);
  EXPECT_DOUBLE_EQ(deviation(100, 100), 0.0);
  EXPECT_THROW(deviation(10, 0), std::invalid_argument);
}

TEST(Evaluate, MeanOverInstances) {
  // Chain: lb 5, makespan 5. Contended pair: lb 3, makespan 5.
  const std::vector<Problem> ps{Problem(chain_instance()), Problem(parallel_instance(2, 3, 2, 2, 3))};
  const auto r = evaluate_rule(PriorityRule(BuiltinRule::kFIFO), ps);
  EXPECT_DOUBLE_EQ(r.deviations[0], 0.0);
  EXPECT_NEAR(r.deviations[1], 200.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.mean_deviation, 100.0 / 3.0, 1e-12);
  EXPECT_EQ(r.total_makespan, 10);
  const auto single = evaluate_rule(PriorityRule(BuiltinRule::kFIFO), std::span<const Problem>(ps.data() + 1, 1));
  EXPECT_DOUBLE_EQ(single.mean_deviation, single.deviations[0]);
}

TEST(Evaluate, ConstantRuleEqualsFifo) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::vector<Problem> ps{Problem(testing::synthetic_instance({}, seed))};
    const auto c = evaluate_rule(PriorityRule(RuleExpr::constant(1.0)), ps);
    const auto f = evaluate_rule(PriorityRule(BuiltinRule::kFIFO), ps);
    EXPECT_EQ(c.makespans, f.makespans);
  }
}

TEST(Slack, ChainWithoutResourcesIsZero) {
  const Instance inst = chain_instance();
  EXPECT_EQ(schedule_slack(inst, Schedule(inst, {0, 0, 3, 5})), 0);
}

TEST(Slack, ShortBranchCountsUntilSink) {
  const Instance inst = parallel_instance(2, 5);
  const Schedule s(inst, {0, 0, 0, 5});
  EXPECT_EQ(schedule_slack(inst, s), 3);
  EXPECT_EQ(testing::naive_slack(inst, {0, 0, 0, 5}), 3);
}

TEST(Slack, StopsAtFirstBlockedPeriod) {
  // A(d=1,r=1) then a gap: C(d=1,r=1) runs in [1,2) alongside B(d=3,r=1)
  // which occupies [0,3). Extending A into period 1 would exceed R=2;
  // period 2 is free again but must not count.
  const Instance inst("c", {0, 1, 3, 1, 0}, {{0}, {1}, {1}, {1}, {0}}, {2}, {{1, 2, 3}, {4}, {4}, {4}, {}});
  const std::vector<int> start{0, 0, 0, 1, 3};
  ASSERT_EQ(check_feasible(inst, start), "");
  const Schedule s(inst, start);
  // A: 0 (blocked at t=1). B: 0. C: t=2 fits, then sink at 3 -> 1.
  EXPECT_EQ(schedule_slack(inst, s), 1);
  EXPECT_EQ(testing::naive_slack(inst, start), 1);
}

TEST(Slack, NormalizedMeanOverInstances) {
  const std::vector<Problem> ps{Problem(parallel_instance(2, 5))};
  // One real pair: slack 3 over 2 real activities.
  EXPECT_DOUBLE_EQ(normalized_slack(PriorityRule(BuiltinRule::kFIFO), ps), 1.5);
  const std::vector<Problem> two{Problem(parallel_instance(2, 5)), Problem(chain_instance())};
  EXPECT_DOUBLE_EQ(normalized_slack(PriorityRule(BuiltinRule::kFIFO), two), 0.75);
  EXPECT_THROW(normalized_slack(PriorityRule(BuiltinRule::kFIFO), std::span<const Problem>{}), std::invalid_argument);
}

TEST(Profile, UsageSumsToWork) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = testing::synthetic_instance({}, seed);
    const auto t = attribute_table(inst);
    const auto s = psgs(inst, eval_builtin_all(BuiltinRule::kLFT, inst, t));
    for (int k = 0; k < inst.num_resources(); ++k) {
      long long used = 0, work = 0;
      for (int p = 0; p < s.makespan(); ++p) used += s.usage(p, k);
      for (int j = 0; j < inst.num_activities(); ++j) work += 1LL * inst.duration(j) * inst.requirement(j, k);
      EXPECT_EQ(used, work);
    }
  }
}

TEST(ScheduleCsv, WritesOneRowPerActivity) {
  const Instance inst = chain_instance();
  std::ostringstream out;
  write_schedule_csv(out, Schedule(inst, {0, 0, 3, 5}));
  EXPECT_EQ(out.str(), "activity,start,finish\n1,0,0\n2,0,3\n3,3,5\n4,5,5\n");
}

// 1000 random (instance, rule) pairs: feasible, deterministic, deviation >= 0.
TEST(Properties, RandomPairsAreFeasible) {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    testing::SyntheticParams p;
    p.activities = 5 + static_cast<int>(uniform_below(rng, 30));
    p.resources = 1 + static_cast<int>(uniform_below(rng, 4));
    p.strength = uniform01(rng);
    p.factor = 0.25 + 0.75 * uniform01(rng);
    const Problem prob(testing::synthetic_instance(p, rng()));
    const auto rule = random_individual(rng);
    const auto prio = eval_all(rule, prob.attributes);
    const auto s = psgs(prob.instance, prio);
    ASSERT_EQ(check_feasible(prob.instance, s.start()), "") << serialize(rule);
    ASSERT_TRUE(testing::naive_feasible(prob.instance, starts(s)));
    ASSERT_GE(deviation(s.makespan(), prob.attributes.lower_bound()), 0.0);
    ASSERT_EQ(starts(psgs(prob.instance, prio)), starts(s));
  }
}

// Small instances: PSGS never beats the exhaustive optimum.
TEST(Properties, NeverBelowBruteForceOptimum) {
  Rng rng(99);
  for (int i = 0; i < 150; ++i) {
    testing::SyntheticParams p;
    p.activities = 2 + static_cast<int>(uniform_below(rng, 3));  // M <= 6
    p.resources = 1 + static_cast<int>(uniform_below(rng, 2));
    p.max_duration = 4;
    p.strength = uniform01(rng);
    const Problem prob(testing::synthetic_instance(p, rng()));
    const int opt = testing::brute_force_makespan(prob.instance);
    for (auto b : kAllBuiltins) {
      const auto s = psgs(prob.instance, eval_builtin_all(b, prob.instance, prob.attributes));
      ASSERT_GE(s.makespan(), opt);
    }
    ASSERT_GE(opt, prob.attributes.lower_bound());
  }
}

// Fixtures built so that PSGS reaches the optimum.
TEST(Properties, PsgsOptimalFixtures) {
  const std::vector<Instance> fixtures{
      chain_instance(), parallel_instance(2, 3, 2, 2, 3), parallel_instance(2, 5),
      // No resource conflict at all: PSGS reproduces the CPM schedule.
      Instance("free", {0, 2, 3, 4, 0}, {{0}, {1}, {1}, {1}, {0}}, {3}, {{1, 2}, {3}, {3}, {4}, {}}),
      // Chain of three sharing one resource unit.
      Instance("serial", {0, 1, 2, 3, 0}, {{0}, {1}, {1}, {1}, {0}}, {1}, {{1, 2, 3}, {4}, {4}, {4}, {}}),
  };
  for (const auto& inst : fixtures) {
    const Problem p(inst);
    const auto s = psgs(inst, eval_builtin_all(BuiltinRule::kLFT, inst, p.attributes));
    EXPECT_EQ(s.makespan(), testing::brute_force_makespan(inst)) << inst.id();
  }
}

// The slack routine against a shift-and-recheck simulation.
TEST(Properties, SlackMatchesNaiveSimulation) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    testing::SyntheticParams p;
    p.activities = 4 + static_cast<int>(uniform_below(rng, 16));
    p.resources = 1 + static_cast<int>(uniform_below(rng, 3));
    p.strength = uniform01(rng);
    const Problem prob(testing::synthetic_instance(p, rng()));
    const auto rule = random_individual(rng);
    const auto s = psgs(prob.instance, eval_all(rule, prob.attributes));
    const long long slack = schedule_slack(prob.instance, s);
    ASSERT_GE(slack, 0);
    ASSERT_EQ(slack, testing::naive_slack(prob.instance, starts(s))) << i;
  }
}

TEST(Properties, EvaluateWithSlackAgrees) {
  Rng rng(8);
  std::vector<Problem> ps;
  for (int i = 0; i < 5; ++i) ps.emplace_back(testing::synthetic_instance({}, rng()));
  for (int i = 0; i < 20; ++i) {
    const auto rule = random_individual(rng);
    const auto ev = evaluate_with_slack(rule, ps);
    const auto rep = evaluate_rule(PriorityRule(rule), ps);
    EXPECT_DOUBLE_EQ(ev.fitness, rep.mean_deviation);
    EXPECT_EQ(ev.total_makespan, rep.total_makespan);
    EXPECT_DOUBLE_EQ(ev.slack, normalized_slack(PriorityRule(rule), ps));
  }
}

}  // namespace
}  // namespace mehh
