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

#include "mehh/scheduler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace mehh {

Schedule::Schedule(const Instance& inst, std::vector<int> start)
    : start_(std::move(start)), num_resources_(inst.num_resources()) {
  const auto m = static_cast<std::size_t>(inst.num_activities());
  if (start_.size() != m) throw std::invalid_argument("start vector does not match activity count");
  finish_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    finish_[j] = start_[j] + inst.duration(static_cast<int>(j));
    makespan_ = std::max(makespan_, finish_[j]);
  }
  const auto k = static_cast<std::size_t>(num_resources_);
  profile_.assign(static_cast<std::size_t>(makespan_) * k, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const auto req = inst.requirements(static_cast<int>(j));
    for (int t = start_[j]; t < finish_[j]; ++t)
      for (std::size_t r = 0; r < k; ++r) profile_[static_cast<std::size_t>(t) * k + r] += req[r];
  }
}

Schedule psgs(const Instance& inst, std::span<const double> priority) {
  const int m = inst.num_activities();
  const int k = inst.num_resources();
  if (static_cast<int>(priority.size()) != m) throw std::invalid_argument("priority vector size mismatch");

  // rank[j]: position of j in ascending (priority, ID) order.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](int a, int b) {
    return priority[static_cast<std::size_t>(a)] < priority[static_cast<std::size_t>(b)];
  });
  std::vector<int> rank(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;

  std::vector<int> start(static_cast<std::size_t>(m), -1);
  std::vector<int> pending(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) pending[static_cast<std::size_t>(j)] = static_cast<int>(inst.predecessors(j).size());
  std::vector<int> avail(inst.capacities().begin(), inst.capacities().end());

  std::vector<int> eligible{rank[0]};  // ranks, kept sorted
  using Active = std::pair<int, int>;   // (finish, activity)
  std::priority_queue<Active, std::vector<Active>, std::greater<>> active;

  int t = 0;
  int done = 0;
  while (done < m) {
    while (!active.empty() && active.top().first <= t) {
      const int j = active.top().second;
      active.pop();
      ++done;
      const auto req = inst.requirements(j);
      for (int r = 0; r < k; ++r) avail[static_cast<std::size_t>(r)] += req[static_cast<std::size_t>(r)];
      for (int s : inst.successors(j))
        if (--pending[static_cast<std::size_t>(s)] == 0) {
          const int rs = rank[static_cast<std::size_t>(s)];
          eligible.insert(std::ranges::upper_bound(eligible, rs), rs);
        }
    }
    if (done == m) break;

    std::size_t keep = 0;
    for (std::size_t e = 0; e < eligible.size(); ++e) {
      const int j = order[static_cast<std::size_t>(eligible[e])];
      const auto req = inst.requirements(j);
      bool fits = true;
      for (int r = 0; r < k && fits; ++r)
        fits = req[static_cast<std::size_t>(r)] <= avail[static_cast<std::size_t>(r)];
      if (!fits) {
        eligible[keep++] = eligible[e];
        continue;
      }
      for (int r = 0; r < k; ++r) avail[static_cast<std::size_t>(r)] -= req[static_cast<std::size_t>(r)];
      start[static_cast<std::size_t>(j)] = t;
      active.emplace(t + inst.duration(j), j);
    }
    eligible.resize(keep);

    if (active.empty()) throw std::logic_error("PSGS stalled: no activity in progress");
    t = active.top().first;
  }
  return Schedule(inst, std::move(start));
}

std::string check_feasible(const Instance& inst, std::span<const int> start) {
  const int m = inst.num_activities();
  if (static_cast<int>(start.size()) != m) return "start vector size mismatch";
  for (int j = 0; j < m; ++j)
    if (start[static_cast<std::size_t>(j)] < 0) return fmt::format("activity {} starts before 0", j + 1);
  for (int j = 0; j < m; ++j) {
    const int f = start[static_cast<std::size_t>(j)] + inst.duration(j);
    for (int s : inst.successors(j))
      if (start[static_cast<std::size_t>(s)] < f)
        return fmt::format("activity {} starts at {} before predecessor {} finishes at {}", s + 1,
                           start[static_cast<std::size_t>(s)], j + 1, f);
  }
  // Event sweep: +req at start, -req at finish.
  std::map<int, std::vector<long long>> delta;
  const auto k = static_cast<std::size_t>(inst.num_resources());
  for (int j = 0; j < m; ++j) {
    if (inst.duration(j) == 0) continue;
    const int s = start[static_cast<std::size_t>(j)];
    auto& up = delta.try_emplace(s, k, 0).first->second;
    auto& down = delta.try_emplace(s + inst.duration(j), k, 0).first->second;
    for (std::size_t r = 0; r < k; ++r) {
      up[r] += inst.requirements(j)[r];
      down[r] -= inst.requirements(j)[r];
    }
  }
  std::vector<long long> level(k, 0);
  for (const auto& [time, d] : delta)
    for (std::size_t r = 0; r < k; ++r) {
      level[r] += d[r];
      if (level[r] > inst.capacity(static_cast<int>(r)))
        return fmt::format("resource {} over capacity at time {} ({} > {})", r + 1, time, level[r],
                           inst.capacity(static_cast<int>(r)));
    }
  return {};
}

double deviation(int makespan, int lower_bound) {
  if (lower_bound <= 0) throw std::invalid_argument("lower bound must be positive");
  return 100.0 * static_cast<double>(makespan - lower_bound) / static_cast<double>(lower_bound);
}

FitnessReport evaluate_priorities(std::span<const std::vector<double>> priorities,
                                  std::span<const Problem> problems) {
  FitnessReport rep;
  double sum = 0.0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    const auto sched = psgs(p.instance, priorities[i]);
    assert(sched.makespan() >= p.attributes.lower_bound());
    const double dev = deviation(sched.makespan(), p.attributes.lower_bound());
    rep.deviations.push_back(dev);
    rep.makespans.push_back(sched.makespan());
    sum += dev;
    rep.total_makespan += sched.makespan();
  }
  rep.mean_deviation = problems.empty() ? 0.0 : sum / static_cast<double>(problems.size());
  return rep;
}

FitnessReport evaluate_rule(const PriorityRule& rule, std::span<const Problem> problems) {
  std::vector<std::vector<double>> pr;
  pr.reserve(problems.size());
  for (const auto& p : problems) pr.push_back(rule.priorities(p));
  return evaluate_priorities(pr, problems);
}

long long schedule_slack(const Instance& inst, const Schedule& sched) {
  const int k = inst.num_resources();
  long long slack = 0;
  for (int i = 1; i + 1 < inst.num_activities(); ++i) {
    int least = std::numeric_limits<int>::max();
    for (int s : inst.successors(i)) least = std::min(least, sched.start(s));
    const auto req = inst.requirements(i);
    for (int t = sched.finish(i); t < least; ++t) {
      bool fits = true;
      for (int r = 0; r < k && fits; ++r)
        fits = req[static_cast<std::size_t>(r)] + sched.usage(t, r) <= inst.capacity(r);
      if (!fits) break;
      ++slack;
    }
  }
  return slack;
}

double normalized_slack(const PriorityRule& rule, std::span<const Problem> problems) {
  if (problems.empty()) throw std::invalid_argument("normalized_slack needs at least one problem");
  double sum = 0.0;
  for (const auto& p : problems) {
    const auto sched = psgs(p.instance, rule.priorities(p));
    sum += static_cast<double>(schedule_slack(p.instance, sched)) / p.instance.num_real_activities();
  }
  return sum / static_cast<double>(problems.size());
}

RuleEvaluation evaluate_with_slack(const RuleExpr& expr, std::span<const Problem> problems) {
  RuleEvaluation ev;
  if (problems.empty()) return ev;
  double dev_sum = 0.0;
  double slack_sum = 0.0;
  for (const auto& p : problems) {
    const auto sched = psgs(p.instance, eval_all(expr, p.attributes));
    assert(sched.makespan() >= p.attributes.lower_bound());
    dev_sum += deviation(sched.makespan(), p.attributes.lower_bound());
    slack_sum += static_cast<double>(schedule_slack(p.instance, sched)) / p.instance.num_real_activities();
    ev.total_makespan += sched.makespan();
  }
  const auto n = static_cast<double>(problems.size());
  ev.fitness = dev_sum / n;
  ev.slack = slack_sum / n;
  return ev;
}

void write_schedule_csv(std::ostream& out, const Schedule& sched) {
  out << "activity,start,finish\n";
  for (std::size_t j = 0; j < sched.start().size(); ++j)
    out << fmt::format("{},{},{}\n", j + 1, sched.start()[j], sched.finish()[j]);
}

}  // namespace mehh
