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

#include "mehh/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "mehh/io.hpp"

namespace mehh {

namespace fs = std::filesystem;

Profile profile_by_name(std::string_view name) {
  if (name == "desk") return {"desk", 128, 10, 5, 48};
  if (name == "paper") return {"paper", 1024, 25, 31, 0};
  throw std::invalid_argument(fmt::format("unknown profile '{}' (want desk or paper)", name));
}

fs::path data_root() {
  if (const char* env = std::getenv("MEHH_DATA_ROOT"); env && *env) return env;
  return "data";
}

fs::path resolve_data_path(const fs::path& p) {
  if (p.is_absolute() || fs::exists(p)) return p;
  return data_root() / p;
}

std::vector<Instance> load_instance_dir(const fs::path& dir, std::ostream* log) {
  if (!fs::is_directory(dir)) throw std::runtime_error(fmt::format("instance directory not found: {}", dir.string()));
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".sm" || ext == ".rcp" || ext == ".inst")) files.push_back(e.path());
  }
  if (files.empty()) throw std::runtime_error(fmt::format("no instance files in {}", dir.string()));
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return natural_less(a.filename().string(), b.filename().string()); });
  std::vector<Instance> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    try {
      PattersonLayout layout = PattersonLayout::kWithDummies;
      out.push_back(load_instance_file(f.string(), &layout));
      if (log && layout == PattersonLayout::kDummiesAdded)
        *log << fmt::format("{}: no dummy activities in file, source and sink added\n", f.filename().string());
    } catch (const ParseError& e) {
      throw std::runtime_error(fmt::format("{}: {}", f.string(), e.what()));
    }
  }
  return out;
}

std::vector<Problem> make_problems(std::vector<Instance> instances) {
  std::vector<Problem> out;
  out.reserve(instances.size());
  for (auto& inst : instances) out.emplace_back(std::move(inst));
  return out;
}

namespace {

std::unordered_map<std::string, const InstanceMeta*> index_meta(std::span<const InstanceMeta> meta) {
  std::unordered_map<std::string, const InstanceMeta*> by_id;
  for (const auto& m : meta) by_id.emplace(m.id, &m);
  return by_id;
}

const InstanceMeta& meta_for(const std::unordered_map<std::string, const InstanceMeta*>& by_id,
                             const std::string& id) {
  auto it = by_id.find(id);
  if (it == by_id.end()) throw std::runtime_error(fmt::format("no metadata for instance '{}'", id));
  return *it->second;
}

// Instance indices sorted by natural id order.
std::vector<std::size_t> natural_order(std::span<const Instance> instances) {
  std::vector<std::size_t> idx(instances.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return natural_less(instances[a].id(), instances[b].id()); });
  return idx;
}

}  // namespace

Split split_by_combination(std::span<const Instance> instances, std::span<const InstanceMeta> meta) {
  const auto by_id = index_meta(meta);
  std::map<std::vector<double>, bool> seen;
  Split s;
  for (auto i : natural_order(instances)) {
    const auto key = meta_for(by_id, instances[i].id()).combination_key();
    if (seen.emplace(key, true).second)
      s.validation.push_back(i);
    else
      s.test.push_back(i);
  }
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

Split split_by_blocks(std::size_t count, std::size_t block) {
  if (block == 0) throw std::invalid_argument("block size must be positive");
  Split s;
  for (std::size_t i = 0; i < count; ++i) (i % block == 0 ? s.validation : s.test).push_back(i);
  return s;
}

std::vector<std::size_t> hard_subset(std::span<const Instance> instances, std::span<const InstanceMeta> meta) {
  const auto by_id = index_meta(meta);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (is_hard(meta_for(by_id, instances[i].id()))) out.push_back(i);
  if (out.empty()) throw std::runtime_error("hard-instance filter selected no instances");
  return out;
}

std::vector<RuleScore> score_rules(std::span<const PriorityRule> rules, std::span<const Problem> problems,
                                   const std::string& set_name) {
  std::vector<RuleScore> out(rules.size());
  parallel_for(rules.size(), 0, [&](std::size_t r) {
    const auto rep = evaluate_rule(rules[r], problems);
    out[r] = {set_name, rules[r].label(), rep.mean_deviation, rep.total_makespan};
  });
  return out;
}

std::string algorithm_name(std::optional<int> bins) {
  if (!bins) return "GPHH";
  return fmt::format("MEHH_{}", *bins * *bins * *bins);
}

namespace {

struct RunOutput {
  std::vector<ResultRow> results;
  RunStats stats;
};

RunOutput run_one(const ExperimentSpec& spec, std::optional<int> bins, int run, std::span<const Problem> training,
                  std::span<const Problem> validation, std::span<const Problem> test, const fs::path& dir) {
  const std::string name = algorithm_name(bins);
  const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(run);
  const int threads = spec.evolution.threads;

  std::vector<Individual> pool;
  RunStats stats{name, run, 0.0, 0.0, 0};
  if (bins) {
    GridConfig grid;
    grid.bins = *bins;
    if (spec.slack_domain) grid.domains[2] = *spec.slack_domain;
    auto res = run_mehh(spec.evolution, grid, training, seed);
    pool = res.archive.individuals();
    stats.coverage = res.archive.coverage();
    stats.evaluations = res.evaluations;
    write_text_file(dir / "snapshot.csv", write_archive(res.archive));
    write_text_file(dir / "trace.csv", write_trace(res.trace));
  } else {
    auto res = run_gphh(spec.evolution, training, seed);
    pool = res.population;
    stats.evaluations = res.evaluations;
    write_text_file(dir / "snapshot.csv", write_population(res.population));
    write_text_file(dir / "trace.csv", write_trace(res.trace));
  }
  stats.unique_fraction = unique_fraction(pool);

  const auto rep = select_representative(pool, validation, threads);
  const std::string rule = serialize(rep.individual.expr);
  write_text_file(dir / "representative.txt", rule + "\n");

  RunOutput out{{}, stats};
  const auto val = evaluate_rule(PriorityRule(rep.individual.expr), validation);
  out.results.push_back({name, run, "validation", val.mean_deviation, val.total_makespan, rule});
  if (!test.empty()) {
    const auto tst = evaluate_rule(PriorityRule(rep.individual.expr), test);
    out.results.push_back({name, run, "test", tst.mean_deviation, tst.total_makespan, rule});
  }
  write_text_file(dir / "results.csv", write_results(out.results));
  write_text_file(dir / "stats.csv", write_run_stats(std::span<const RunStats>(&out.stats, 1)));
  write_text_file(dir / "done", "");
  return out;
}

std::vector<SummaryRow> summarize_stat(std::span<const RunStats> stats, const std::string& metric,
                                       double RunStats::*field, bool mehh_only) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  for (const auto& s : stats) {
    if (mehh_only && s.algorithm == "GPHH") continue;
    auto [it, fresh] = groups.try_emplace(s.algorithm);
    if (fresh) order.push_back(s.algorithm);
    it->second.push_back(s.*field);
  }
  std::vector<SummaryRow> out;
  for (const auto& a : order) {
    const auto& v = groups.at(a);
    out.push_back({a, metric, static_cast<int>(v.size()), summarize(v)});
  }
  return out;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentSpec& spec, std::span<const Problem> training,
                                 std::span<const Problem> validation, std::span<const Problem> test,
                                 std::ostream* log) {
  if (spec.profile.runs < 1) throw std::invalid_argument("profile needs at least one run");
  if (validation.empty()) throw std::invalid_argument("validation set is empty");
  if (spec.out_dir.empty()) throw std::invalid_argument("output directory not set");
  if (spec.slack_domain && !(spec.slack_domain->lo < spec.slack_domain->hi))
    throw std::invalid_argument("slack domain must satisfy lo < hi");
  for (int b : spec.grid_bins)
    if (b < 1) throw std::invalid_argument("grid bins must be positive");

  std::vector<std::optional<int>> algorithms;
  if (spec.include_gphh) algorithms.emplace_back(std::nullopt);
  for (int b : spec.grid_bins) algorithms.emplace_back(b);

  ExperimentOutcome outcome;
  for (const auto& bins : algorithms) {
    const std::string name = algorithm_name(bins);
    for (int run = 0; run < spec.profile.runs; ++run) {
      const fs::path dir = spec.out_dir / name / fmt::format("run_{}", run);
      RunOutput out;
      if (fs::exists(dir / "done")) {
        out.results = load_results(read_text_file(dir / "results.csv"));
        const auto st = load_run_stats(read_text_file(dir / "stats.csv"));
        if (st.size() != 1) throw std::runtime_error(fmt::format("corrupt stats in {}", dir.string()));
        out.stats = st.front();
        if (log) *log << fmt::format("{} run {}: reused\n", name, run);
      } else {
        fs::create_directories(dir);
        out = run_one(spec, bins, run, training, validation, test, dir);
        if (log) *log << fmt::format("{} run {}: validation {}\n", name, run, out.results.front().mean_deviation);
      }
      outcome.results.insert(outcome.results.end(), out.results.begin(), out.results.end());
      outcome.run_stats.push_back(out.stats);
    }
  }

  outcome.summary = summarize_results(outcome.results);
  outcome.unique_summary = summarize_stat(outcome.run_stats, "unique_fraction", &RunStats::unique_fraction, false);
  outcome.coverage_summary = summarize_stat(outcome.run_stats, "coverage", &RunStats::coverage, true);

  write_text_file(spec.out_dir / "results.csv", write_results(outcome.results));
  write_text_file(spec.out_dir / "runs.csv", write_run_stats(outcome.run_stats));
  write_text_file(spec.out_dir / "summary.csv", write_summary(outcome.summary));
  write_text_file(spec.out_dir / "unique.csv", write_summary(outcome.unique_summary));
  write_text_file(spec.out_dir / "coverage.csv", write_summary(outcome.coverage_summary));
  return outcome;
}

}  // namespace mehh
