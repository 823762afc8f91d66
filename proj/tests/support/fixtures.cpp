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

#include "fixtures.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace mehh::testing {

Instance chain_instance() {
  return Instance("chain", {0, 3, 2, 0}, {{0}, {0}, {0}, {0}}, {1}, {{1}, {2}, {3}, {}});
}

Instance parallel_instance(int da, int db, int ra, int rb, int capacity) {
  return Instance("parallel", {0, da, db, 0}, {{0}, {ra}, {rb}, {0}}, {capacity}, {{1, 2}, {3}, {3}, {}});
}

Instance synthetic_instance(const SyntheticParams& p, std::uint64_t seed, std::string id) {
  Rng rng(seed);
  const int n = p.activities;
  const int m = n + 2;
  std::vector<std::set<int>> succ(static_cast<std::size_t>(m));
  std::vector<int> npred(static_cast<std::size_t>(m), 0);
  auto add_arc = [&](int a, int b) {
    if (succ[static_cast<std::size_t>(a)].insert(b).second) ++npred[static_cast<std::size_t>(b)];
  };

  // Every real activity after the first few gets one earlier predecessor,
  // then extra forward arcs until the arc budget is spent.
  const int starters = std::max(1, std::min(3, n));
  int arcs = 0;
  for (int j = starters + 1; j <= n; ++j) {
    add_arc(uniform_int(rng, 1, j - 1), j);
    ++arcs;
  }
  const int target = static_cast<int>(p.complexity * n);
  for (int tries = 0; arcs < target && tries < 20 * n; ++tries) {
    const int a = uniform_int(rng, 1, n);
    const int b = uniform_int(rng, 1, n);
    if (a >= b || succ[static_cast<std::size_t>(a)].contains(b)) continue;
    add_arc(a, b);
    ++arcs;
  }
  for (int j = 1; j <= n; ++j) {
    if (npred[static_cast<std::size_t>(j)] == 0) add_arc(0, j);
    if (succ[static_cast<std::size_t>(j)].empty()) add_arc(j, m - 1);
  }

  std::vector<int> dur(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> req(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(p.resources), 0));
  for (int j = 1; j <= n; ++j) {
    dur[static_cast<std::size_t>(j)] = uniform_int(rng, 1, p.max_duration);
    bool any = false;
    for (int k = 0; k < p.resources; ++k)
      if (bernoulli(rng, p.factor)) {
        req[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = uniform_int(rng, 1, p.max_request);
        any = true;
      }
    if (!any)
      req[static_cast<std::size_t>(j)][uniform_below(rng, static_cast<std::uint64_t>(p.resources))] =
          uniform_int(rng, 1, p.max_request);
  }

  // Peak usage of the earliest-start schedule, per resource.
  std::vector<int> es(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j)
    for (int s : succ[static_cast<std::size_t>(j)])
      es[static_cast<std::size_t>(s)] =
          std::max(es[static_cast<std::size_t>(s)], es[static_cast<std::size_t>(j)] + dur[static_cast<std::size_t>(j)]);
  const int span = es[static_cast<std::size_t>(m - 1)];
  std::vector<int> cap(static_cast<std::size_t>(p.resources), 1);
  for (int k = 0; k < p.resources; ++k) {
    int rmin = 1;
    std::vector<int> usage(static_cast<std::size_t>(span) + 1, 0);
    for (int j = 1; j <= n; ++j) {
      const int r = req[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      rmin = std::max(rmin, r);
      for (int t = es[static_cast<std::size_t>(j)]; t < es[static_cast<std::size_t>(j)] + dur[static_cast<std::size_t>(j)]; ++t)
        usage[static_cast<std::size_t>(t)] += r;
    }
    const int peak = std::max(rmin, *std::max_element(usage.begin(), usage.end()));
    cap[static_cast<std::size_t>(k)] = rmin + static_cast<int>(p.strength * (peak - rmin) + 0.5);
  }

  std::vector<std::vector<int>> succ_list(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    succ_list[static_cast<std::size_t>(j)].assign(succ[static_cast<std::size_t>(j)].begin(), succ[static_cast<std::size_t>(j)].end());
  return Instance(std::move(id), std::move(dur), std::move(req), std::move(cap), std::move(succ_list));
}

SyntheticSet synthetic_set(int activities, int per_combination, std::uint64_t seed) {
  static constexpr double kComplexity[] = {1.5, 1.8, 2.1};
  static constexpr double kFactor[] = {0.25, 0.5, 0.75, 1.0};
  static constexpr double kStrength[] = {0.2, 0.5, 0.7, 1.0};
  SyntheticSet out;
  int combo = 0;
  for (double nc : kComplexity)
    for (double rf : kFactor)
      for (double rs : kStrength) {
        ++combo;
        for (int i = 1; i <= per_combination; ++i) {
          SyntheticParams p;
          p.activities = activities;
          p.complexity = nc;
          p.factor = rf;
          p.strength = rs;
          const std::string id = fmt::format("syn{}_{}", combo, i);
          out.instances.push_back(synthetic_instance(p, hash_combine(seed, hash_string(id)), id));
          out.meta.push_back({id, "syn", {{"NC", nc}, {"RF", rf}, {"RS", rs}}});
        }
      }
  return out;
}

std::vector<int> longest_path_finish(const Instance& inst) {
  const int m = inst.num_activities();
  std::vector<int> memo(static_cast<std::size_t>(m), -1);
  std::function<int(int)> ef = [&](int j) {
    auto& slot = memo[static_cast<std::size_t>(j)];
    if (slot >= 0) return slot;
    int start = 0;
    for (int p : inst.predecessors(j)) start = std::max(start, ef(p));
    slot = start + inst.duration(j);
    return slot;
  };
  for (int j = 0; j < m; ++j) ef(j);
  return memo;
}

namespace {

int reach_count(const Instance& inst, int from, bool forward) {
  std::vector<char> seen(static_cast<std::size_t>(inst.num_activities()), 0);
  std::vector<int> stack{from};
  int count = 0;
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    for (int nxt : forward ? inst.successors(j) : inst.predecessors(j)) {
      if (seen[static_cast<std::size_t>(nxt)]) continue;
      seen[static_cast<std::size_t>(nxt)] = 1;
      ++count;
      stack.push_back(nxt);
    }
  }
  return count;
}

}  // namespace

std::vector<int> dfs_successor_count(const Instance& inst) {
  std::vector<int> out;
  for (int j = 0; j < inst.num_activities(); ++j) out.push_back(reach_count(inst, j, true));
  return out;
}

std::vector<int> dfs_predecessor_count(const Instance& inst) {
  std::vector<int> out;
  for (int j = 0; j < inst.num_activities(); ++j) out.push_back(reach_count(inst, j, false));
  return out;
}

bool naive_feasible(const Instance& inst, const std::vector<int>& start) {
  const int m = inst.num_activities();
  if (static_cast<int>(start.size()) != m) return false;
  int end = 0;
  for (int j = 0; j < m; ++j) {
    if (start[static_cast<std::size_t>(j)] < 0) return false;
    end = std::max(end, start[static_cast<std::size_t>(j)] + inst.duration(j));
    for (int s : inst.successors(j))
      if (start[static_cast<std::size_t>(j)] + inst.duration(j) > start[static_cast<std::size_t>(s)]) return false;
  }
  for (int t = 0; t < end; ++t)
    for (int k = 0; k < inst.num_resources(); ++k) {
      int used = 0;
      for (int j = 0; j < m; ++j)
        if (start[static_cast<std::size_t>(j)] <= t && t < start[static_cast<std::size_t>(j)] + inst.duration(j))
          used += inst.requirement(j, k);
      if (used > inst.capacity(k)) return false;
    }
  return true;
}

int brute_force_makespan(const Instance& inst) {
  const int m = inst.num_activities();
  const int horizon = std::accumulate(inst.durations().begin(), inst.durations().end(), 0);
  // Predecessors are placed before their successors.
  std::vector<int> order(inst.topological_order().begin(), inst.topological_order().end());
  std::vector<int> start(static_cast<std::size_t>(m), 0);
  int best = std::numeric_limits<int>::max();
  std::function<void(std::size_t)> place = [&](std::size_t pos) {
    if (pos == order.size()) {
      if (!naive_feasible(inst, start)) return;
      int ms = 0;
      for (int j = 0; j < m; ++j) ms = std::max(ms, start[static_cast<std::size_t>(j)] + inst.duration(j));
      best = std::min(best, ms);
      return;
    }
    const int j = order[pos];
    int earliest = 0;
    for (int p : inst.predecessors(j))
      earliest = std::max(earliest, start[static_cast<std::size_t>(p)] + inst.duration(p));
    for (int s = earliest; s <= horizon; ++s) {
      if (s + inst.duration(j) >= best) break;  // cannot improve
      start[static_cast<std::size_t>(j)] = s;
      place(pos + 1);
    }
  };
  place(0);
  return best;
}

long long naive_slack(const Instance& inst, const std::vector<int>& start) {
  long long total = 0;
  for (int i = 1; i < inst.sink(); ++i) {
    std::vector<int> shifted = start;
    int delta = 0;
    while (true) {
      shifted[static_cast<std::size_t>(i)] = start[static_cast<std::size_t>(i)] + delta + 1;
      if (!naive_feasible(inst, shifted)) break;
      ++delta;
    }
    total += delta;
  }
  return total;
}

double interpret(const RuleExpr& expr, const AttributeTable& attrs, int activity) {
  const auto nodes = expr.nodes();
  constexpr double kBig = std::numeric_limits<double>::max();
  auto clamp = [&](double v) { return std::clamp(v, -kBig, kBig); };
  std::size_t pos = 0;
  std::function<double()> walk = [&]() -> double {
    const Node n = nodes[pos++];
    if (n.kind == Node::Kind::kConstant) return n.constant;
    if (n.kind == Node::Kind::kTerminal) return attrs.value(activity, n.as_attribute());
    const double a = walk();
    if (n.as_op() == Op::kNeg1) return clamp(-a);
    const double b = walk();
    switch (n.as_op()) {
      case Op::kAdd:
        return clamp(a + b);
      case Op::kSub:
        return clamp(a - b);
      case Op::kMul:
        return clamp(a * b);
      case Op::kDiv:
        return b > 0 ? clamp(a / b) : 0.0;
      case Op::kMax:
        return std::max(a, b);
      case Op::kMin:
        return std::min(a, b);
      default:
        return 0.0;
    }
  };
  return walk();
}

}  // namespace mehh::testing
