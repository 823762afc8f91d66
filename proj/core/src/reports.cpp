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

#include "mehh/reports.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mehh/instance.hpp"
#include "mehh/io.hpp"

namespace mehh {
namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return format_double(v); }
std::string num(long long v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }

// Checks the header and hands back the rows. Row numbers in errors are
// 1-based file lines, the header being line 1.
csv::Table expect(std::string_view text, const Row& header) {
  auto table = csv::parse(text);
  if (table.header != header)
    throw ParseError(1, "unexpected header '" + csv::join(table.header) + "', want '" + csv::join(header) + "'");
  return table;
}

double get_double(const Row& row, std::size_t col, std::size_t line) {
  auto v = parse_double(row[col]);
  if (!v) throw ParseError(line, "bad number '" + row[col] + "'");
  return *v;
}

long long get_int(const Row& row, std::size_t col, std::size_t line) {
  auto v = parse_int(row[col]);
  if (!v) throw ParseError(line, "bad integer '" + row[col] + "'");
  return *v;
}

const Row kResultHeader{"algorithm", "run", "split", "mean_deviation", "total_makespan", "rule"};
const Row kSummaryHeader{"algorithm", "metric", "count", "mean", "median", "best", "worst", "stdev"};
const Row kRunStatsHeader{"algorithm", "run", "unique_fraction", "coverage", "evaluations"};
const Row kSnapshotHeader{"x", "y", "z", "fitness", "nodes", "resource_nodes", "slack", "rule"};
const Row kTraceHeader{"generation", "unique_fraction", "best_fitness", "occupancy"};
const Row kBaselineHeader{"rule", "deviation", "makespan"};
const Row kCrossvalHeader{"rule", "set", "deviation", "makespan"};

std::string snapshot_line(const Cell& c, const Individual& ind) {
  Row r{num(c[0]), num(c[1]), num(c[2]), num(ind.fitness), num(ind.features.nodes),
        num(ind.features.resource_nodes), num(ind.features.slack), serialize(ind.expr)};
  return csv::join(r) + "\n";
}

}  // namespace

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  SummaryStats s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(n);
  s.median = n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
  s.best = v.front();
  s.worst = v.back();
  if (n > 1) {
    double ss = 0.0;
    // Sum in the caller's order so the value does not depend on sorting.
    for (double x : values) ss += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

std::string write_results(std::span<const ResultRow> rows) {
  std::string out = csv::join(kResultHeader) + "\n";
  for (const auto& r : rows)
    out += csv::join(Row{r.algorithm, num(r.run), r.split, num(r.mean_deviation), num(r.total_makespan), r.rule}) +
           "\n";
  return out;
}

std::vector<ResultRow> load_results(std::string_view text) {
  const auto t = expect(text, kResultHeader);
  std::vector<ResultRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    out.push_back({r[0], static_cast<int>(get_int(r, 1, i + 2)), r[2], get_double(r, 3, i + 2),
                   get_int(r, 4, i + 2), r[5]});
  }
  return out;
}

std::vector<SummaryRow> summarize_results(std::span<const ResultRow> rows) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.algorithm, r.split);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(r.mean_deviation);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& v = groups.at(key);
    out.push_back({key.first, key.second, static_cast<int>(v.size()), summarize(v)});
  }
  return out;
}

std::string write_summary(std::span<const SummaryRow> rows) {
  std::string out = csv::join(kSummaryHeader) + "\n";
  for (const auto& r : rows)
    out += csv::join(Row{r.algorithm, r.metric, num(r.count), num(r.stats.mean), num(r.stats.median),
                         num(r.stats.best), num(r.stats.worst), num(r.stats.stdev)}) +
           "\n";
  return out;
}

std::vector<SummaryRow> load_summary(std::string_view text) {
  const auto t = expect(text, kSummaryHeader);
  std::vector<SummaryRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::size_t line = i + 2;
    out.push_back({r[0], r[1], static_cast<int>(get_int(r, 2, line)),
                   {get_double(r, 3, line), get_double(r, 4, line), get_double(r, 5, line), get_double(r, 6, line),
                    get_double(r, 7, line)}});
  }
  return out;
}

std::string write_run_stats(std::span<const RunStats> rows) {
  std::string out = csv::join(kRunStatsHeader) + "\n";
  for (const auto& r : rows)
    out += csv::join(Row{r.algorithm, num(r.run), num(r.unique_fraction), num(r.coverage), num(r.evaluations)}) +
           "\n";
  return out;
}

std::vector<RunStats> load_run_stats(std::string_view text) {
  const auto t = expect(text, kRunStatsHeader);
  std::vector<RunStats> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    out.push_back({r[0], static_cast<int>(get_int(r, 1, i + 2)), get_double(r, 2, i + 2), get_double(r, 3, i + 2),
                   get_int(r, 4, i + 2)});
  }
  return out;
}

std::string write_archive(const Archive& archive) {
  std::string out = csv::join(kSnapshotHeader) + "\n";
  for (const auto& [cell, ind] : archive.elites()) out += snapshot_line(cell, *ind);
  return out;
}

std::string write_population(std::span<const Individual> population) {
  std::string out = csv::join(kSnapshotHeader) + "\n";
  for (const auto& ind : population) out += snapshot_line({-1, -1, -1}, ind);
  return out;
}

std::vector<SnapshotRow> load_snapshot(std::string_view text) {
  const auto t = expect(text, kSnapshotHeader);
  std::vector<SnapshotRow> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::size_t line = i + 2;
    SnapshotRow row;
    for (std::size_t d = 0; d < 3; ++d) row.cell[d] = static_cast<int>(get_int(r, d, line));
    row.individual.fitness = get_double(r, 3, line);
    row.individual.features = {static_cast<int>(get_int(r, 4, line)), static_cast<int>(get_int(r, 5, line)),
                               get_double(r, 6, line)};
    try {
      row.individual.expr = parse_rule(r[7], -1);
    } catch (const std::exception& e) {
      throw ParseError(line, e.what());
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string write_trace(std::span<const GenerationStats> trace) {
  std::string out = csv::join(kTraceHeader) + "\n";
  for (const auto& g : trace)
    out += csv::join(Row{num(g.generation), num(g.unique_fraction), num(g.best_fitness), num(g.occupancy)}) + "\n";
  return out;
}

std::vector<GenerationStats> load_trace(std::string_view text) {
  const auto t = expect(text, kTraceHeader);
  std::vector<GenerationStats> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    out.push_back({static_cast<int>(get_int(r, 0, i + 2)), get_double(r, 1, i + 2), get_double(r, 2, i + 2),
                   static_cast<std::size_t>(get_int(r, 3, i + 2))});
  }
  return out;
}

std::string write_baseline(std::span<const RuleScore> rows) {
  std::string out = csv::join(kBaselineHeader) + "\n";
  for (const auto& r : rows) out += csv::join(Row{r.rule, num(r.deviation), num(r.total_makespan)}) + "\n";
  return out;
}

std::string write_crossval(std::span<const RuleScore> rows) {
  std::string out = csv::join(kCrossvalHeader) + "\n";
  for (const auto& r : rows) out += csv::join(Row{r.rule, r.set, num(r.deviation), num(r.total_makespan)}) + "\n";
  return out;
}

std::vector<RuleScore> load_scores(std::string_view text) {
  const auto t = csv::parse(text);
  const bool with_set = t.header == kCrossvalHeader;
  if (!with_set && t.header != kBaselineHeader)
    throw ParseError(1, "unexpected header '" + csv::join(t.header) + "'");
  std::vector<RuleScore> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::size_t o = with_set ? 1 : 0;
    out.push_back({with_set ? r[1] : std::string{}, r[0], get_double(r, 1 + o, i + 2), get_int(r, 2 + o, i + 2)});
  }
  return out;
}

std::vector<MatrixCell> feature_matrix(std::span<const SnapshotRow> snapshot, int a, int b) {
  if (a < 0 || a > 2 || b < 0 || b > 2 || a == b) throw std::invalid_argument("bad feature dimensions");
  std::map<std::pair<int, int>, std::pair<double, int>> acc;
  for (const auto& row : snapshot) {
    auto& [sum, n] = acc[{row.cell[static_cast<std::size_t>(a)], row.cell[static_cast<std::size_t>(b)]}];
    sum += row.individual.fitness;
    ++n;
  }
  std::vector<MatrixCell> out;
  for (const auto& [key, v] : acc) out.push_back({key.first, key.second, v.first / v.second, v.second});
  return out;
}

std::string write_matrix(std::span<const MatrixCell> cells, std::string_view a_name, std::string_view b_name) {
  std::string out = csv::join(Row{std::string(a_name), std::string(b_name), "mean_fitness", "count"}) + "\n";
  for (const auto& c : cells) out += csv::join(Row{num(c.i), num(c.j), num(c.mean_fitness), num(c.count)}) + "\n";
  return out;
}

std::string_view feature_name(int dim) {
  switch (dim) {
    case 0:
      return "nodes";
    case 1:
      return "resource_nodes";
    case 2:
      return "slack";
    default:
      throw std::invalid_argument("feature dimension out of range");
  }
}

}  // namespace mehh
