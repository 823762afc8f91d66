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

// CSV records written by the experiment harness, with loaders that invert
// every writer exactly. Doubles are printed in shortest round-trip form.

#ifndef MEHH_REPORTS_HPP
#define MEHH_REPORTS_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mehh/archive.hpp"
#include "mehh/evolution.hpp"

namespace mehh {

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double best = 0.0;   // minimum
  double worst = 0.0;  // maximum
  double stdev = 0.0;  // sample standard deviation, 0 for a single value

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

/// Throws std::invalid_argument on an empty input.
SummaryStats summarize(std::span<const double> values);

struct ResultRow {
  std::string algorithm;
  int run = 0;
  std::string split;
  double mean_deviation = 0.0;
  long long total_makespan = 0;
  std::string rule;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

std::string write_results(std::span<const ResultRow> rows);
std::vector<ResultRow> load_results(std::string_view text);

/// One aggregate per (algorithm, metric). Metrics are split names for
/// deviations, or run-level quantities such as "unique_fraction".
struct SummaryRow {
  std::string algorithm;
  std::string metric;
  int count = 0;
  SummaryStats stats;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

/// Groups result rows by (algorithm, split) in first-appearance order.
std::vector<SummaryRow> summarize_results(std::span<const ResultRow> rows);

std::string write_summary(std::span<const SummaryRow> rows);
std::vector<SummaryRow> load_summary(std::string_view text);

/// Run-level numbers that are not deviations.
struct RunStats {
  std::string algorithm;
  int run = 0;
  double unique_fraction = 0.0;
  double coverage = 0.0;  // percent; population runs report 0
  long long evaluations = 0;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

std::string write_run_stats(std::span<const RunStats> rows);
std::vector<RunStats> load_run_stats(std::string_view text);

/// Archive dump: one line per occupied cell, cells in flat order.
struct SnapshotRow {
  Cell cell{};
  Individual individual;
};

std::string write_archive(const Archive& archive);
std::string write_population(std::span<const Individual> population);
/// Reads either dump. Population dumps carry cell (-1,-1,-1).
std::vector<SnapshotRow> load_snapshot(std::string_view text);

std::string write_trace(std::span<const GenerationStats> trace);
std::vector<GenerationStats> load_trace(std::string_view text);

/// Deviation of one rule on one instance set.
struct RuleScore {
  std::string set;
  std::string rule;
  double deviation = 0.0;
  long long total_makespan = 0;

  friend bool operator==(const RuleScore&, const RuleScore&) = default;
};

/// rule,deviation,makespan
std::string write_baseline(std::span<const RuleScore> rows);
/// rule,set,deviation,makespan
std::string write_crossval(std::span<const RuleScore> rows);
std::vector<RuleScore> load_scores(std::string_view text);

/// Mean fitness of the elites whose bins on feature dimensions `a` and `b`
/// are (i, j), the remaining dimension averaged out. Only non-empty pairs
/// are listed, sorted by (i, j).
struct MatrixCell {
  int i = 0;
  int j = 0;
  double mean_fitness = 0.0;
  int count = 0;

  friend bool operator==(const MatrixCell&, const MatrixCell&) = default;
};

std::vector<MatrixCell> feature_matrix(std::span<const SnapshotRow> snapshot, int a, int b);
std::string write_matrix(std::span<const MatrixCell> cells, std::string_view a_name, std::string_view b_name);

/// Names for the three feature dimensions, in grid order.
std::string_view feature_name(int dim);

}  // namespace mehh

#endif  // MEHH_REPORTS_HPP
