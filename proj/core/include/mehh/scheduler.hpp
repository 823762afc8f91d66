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

#ifndef MEHH_SCHEDULER_HPP
#define MEHH_SCHEDULER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mehh/analysis.hpp"
#include "mehh/instance.hpp"
#include "mehh/rule.hpp"

namespace mehh {

/// Start/finish times plus the per-period resource usage. Period t is the
/// unit interval [t, t+1).
class Schedule {
 public:
  Schedule(const Instance& inst, std::vector<int> start);

  std::span<const int> start() const { return start_; }
  std::span<const int> finish() const { return finish_; }
  int start(int j) const { return start_[static_cast<std::size_t>(j)]; }
  int finish(int j) const { return finish_[static_cast<std::size_t>(j)]; }
  int makespan() const { return makespan_; }
  int num_resources() const { return num_resources_; }

  /// Units of resource k in use during period t; zero outside [0, makespan).
  int usage(int t, int k) const {
    if (t < 0 || t >= makespan_) return 0;
    return profile_[static_cast<std::size_t>(t) * static_cast<std::size_t>(num_resources_) +
                    static_cast<std::size_t>(k)];
  }

 private:
  std::vector<int> start_;
  std::vector<int> finish_;
  int makespan_ = 0;
  int num_resources_ = 0;
  std::vector<int> profile_;  // [period][resource]
};

/// Parallel schedule generation scheme. At each decision time every
/// precedence-eligible activity is considered in ascending (priority, ID)
/// order and started if the remaining capacity allows; time then advances to
/// the next finish.
Schedule psgs(const Instance& inst, std::span<const double> priority);

/// Independent re-check of precedence and capacity from the start times
/// alone. Returns an empty string when feasible, else the first violation.
std::string check_feasible(const Instance& inst, std::span<const int> start);

/// 100 * (makespan - lower_bound) / lower_bound. Throws on lower_bound <= 0.
double deviation(int makespan, int lower_bound);

struct FitnessReport {
  std::vector<double> deviations;  // percent, per instance
  std::vector<int> makespans;
  double mean_deviation = 0.0;
  long long total_makespan = 0;
};

FitnessReport evaluate_rule(const PriorityRule& rule, std::span<const Problem> problems);
/// Same, reusing caller-provided priorities per problem.
FitnessReport evaluate_priorities(std::span<const std::vector<double>> priorities,
                                  std::span<const Problem> problems);

/// Total slack of a schedule. For every non-dummy activity, counts the unit
/// periods from its finish onwards, before the earliest start among its
/// successors, in which its requirements still fit on top of the profile;
/// counting stops at the first period where they do not.
long long schedule_slack(const Instance& inst, const Schedule& sched);

/// Mean over problems of schedule_slack / (M - 2).
double normalized_slack(const PriorityRule& rule, std::span<const Problem> problems);

/// Fitness and slack from a single PSGS pass per problem.
struct RuleEvaluation {
  double fitness = 0.0;  // mean deviation, percent
  double slack = 0.0;    // normalized slack
  long long total_makespan = 0;
};

RuleEvaluation evaluate_with_slack(const RuleExpr& expr, std::span<const Problem> problems);

/// Gantt dump: activity,start,finish (IDs are 1-based).
void write_schedule_csv(std::ostream& out, const Schedule& sched);

}  // namespace mehh

#endif  // MEHH_SCHEDULER_HPP
