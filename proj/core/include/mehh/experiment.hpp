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

// Experiment protocol: data loading, splits, run matrix and output layout.

#ifndef MEHH_EXPERIMENT_HPP
#define MEHH_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mehh/analysis.hpp"
#include "mehh/archive.hpp"
#include "mehh/evolution.hpp"
#include "mehh/instance.hpp"
#include "mehh/reports.hpp"

namespace mehh {

struct Profile {
  std::string name;
  int population = 0;
  int generations = 0;
  int runs = 0;
  /// Training instances kept (first per parameter combination); 0 keeps all.
  int training_subset = 0;
};

/// "desk" (128 x 10, 5 runs, 48 training instances) or "paper"
/// (1024 x 25, 31 runs, full training set). Throws on other names.
Profile profile_by_name(std::string_view name);

/// $MEHH_DATA_ROOT, else ./data.
std::filesystem::path data_root();

/// Resolves `p` against the data root unless it is absolute or exists as given.
std::filesystem::path resolve_data_path(const std::filesystem::path& p);

/// Every .sm/.rcp/.inst file in `dir`, in natural filename order. Throws
/// when the directory is missing or holds no instance files. Patterson
/// files that lacked dummy activities are reported to `log`.
std::vector<Instance> load_instance_dir(const std::filesystem::path& dir, std::ostream* log = nullptr);
std::vector<Problem> make_problems(std::vector<Instance> instances);

/// Validation takes the first instance of every parameter combination in
/// natural id order; the rest is test. Instances absent from `meta` make
/// this throw. Without metadata, consecutive blocks of `block` instances
/// (natural order) stand in for combinations.
struct Split {
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

Split split_by_combination(std::span<const Instance> instances, std::span<const InstanceMeta> meta);
Split split_by_blocks(std::size_t count, std::size_t block = 10);

/// Indices of instances whose metadata marks them hard. Throws when an
/// instance has no metadata or nothing qualifies.
std::vector<std::size_t> hard_subset(std::span<const Instance> instances, std::span<const InstanceMeta> meta);

template <typename T>
std::vector<T> pick(const std::vector<T>& items, std::span<const std::size_t> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(items[i]);
  return out;
}

/// Evaluates each rule on the set, in the given order.
std::vector<RuleScore> score_rules(std::span<const PriorityRule> rules, std::span<const Problem> problems,
                                   const std::string& set_name = {});

struct ExperimentSpec {
  Profile profile;
  EvolutionConfig evolution;  // population/generations taken from the profile
  std::vector<int> grid_bins{5, 10, 15, 20};
  /// Overrides the stock slack domain (see calibrate_slack_domain).
  std::optional<Domain> slack_domain;
  bool include_gphh = true;
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir;
};

/// "GPHH" or "MEHH_<bins^3>".
std::string algorithm_name(std::optional<int> bins);

struct ExperimentOutcome {
  std::vector<ResultRow> results;
  std::vector<RunStats> run_stats;
  std::vector<SummaryRow> summary;
  std::vector<SummaryRow> unique_summary;
  std::vector<SummaryRow> coverage_summary;  // MEHH variants only
};

/// Runs every (algorithm, run) pair, seeds base_seed + run. Each pair gets
/// out_dir/<algorithm>/run_<k>/ holding snapshot.csv, trace.csv,
/// representative.txt, results.csv and stats.csv, plus a `done` marker; a
/// pair whose marker exists is reloaded instead of rerun. Summaries
/// (results.csv, runs.csv, summary.csv, unique.csv, coverage.csv) go to
/// out_dir.
/// Progress lines go to `log` when non-null.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, std::span<const Problem> training,
                                 std::span<const Problem> validation, std::span<const Problem> test,
                                 std::ostream* log = nullptr);

}  // namespace mehh

#endif  // MEHH_EXPERIMENT_HPP
