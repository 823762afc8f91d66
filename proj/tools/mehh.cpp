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

// Command-line harness: data checks, baselines, evolution runs and reports.
// Failures print one JSON object on stderr and exit non-zero.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mehh/experiment.hpp"
#include "mehh/io.hpp"
#include "mehh/reports.hpp"
#include "mehh/scheduler.hpp"

namespace fs = std::filesystem;
using namespace mehh;

namespace {

struct Dataset {
  const char* name;
  std::size_t count;
  const char* ext;
  const char* url;
};

// PSPLib archives unpack to <name>/*.sm. RG300 has no stable direct link;
// the page lists it under the RanGen datasets.
constexpr Dataset kDatasets[] = {
    {"j30", 480, ".sm", "https://www.om-db.wi.tum.de/psplib/files/j30.sm.zip"},
    {"j60", 480, ".sm", "https://www.om-db.wi.tum.de/psplib/files/j60.sm.zip"},
    {"j90", 480, ".sm", "https://www.om-db.wi.tum.de/psplib/files/j90.sm.zip"},
    {"j120", 600, ".sm", "https://www.om-db.wi.tum.de/psplib/files/j120.sm.zip"},
    {"rg300", 480, ".rcp", "https://www.projectmanagement.ugent.be/research/data"},
};

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) return 0;
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) ++n;
  return n;
}

// Shared options.
struct Common {
  std::uint64_t seed = 1;
  std::string profile = "desk";
  std::string out;
  int threads = 0;
};

struct RuleOptions {
  std::vector<std::string> rules;
  std::string rules_file;
  std::string results;  // experiment results.csv, adds each run's representative
};

std::vector<std::pair<std::string, PriorityRule>> collect_rules(const RuleOptions& o, std::uint64_t seed) {
  std::vector<std::pair<std::string, PriorityRule>> out;
  std::vector<std::string> texts = o.rules;
  if (!o.rules_file.empty()) {
    std::istringstream in(read_text_file(o.rules_file));
    for (std::string line; std::getline(in, line);) {
      const auto t = trim(line);
      if (!t.empty() && t.front() != '#') texts.emplace_back(t);
    }
  }
  for (const auto& t : texts) {
    auto r = parse_priority_rule(t, seed);
    out.emplace_back(r.label(), std::move(r));
  }
  if (!o.results.empty()) {
    for (const auto& row : load_results(read_text_file(o.results)))
      if (row.split == "test" || row.split == "validation") {
        const std::string label = fmt::format("{}/run_{}", row.algorithm, row.run);
        if (std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.first == label; }))
          out.emplace_back(label, PriorityRule(parse_rule(row.rule, -1)));
      }
  }
  if (texts.empty() && o.results.empty())
    for (auto b : kAllBuiltins) out.emplace_back(std::string(builtin_name(b)), PriorityRule(b, seed));
  return out;
}

std::vector<RuleScore> score(const std::vector<std::pair<std::string, PriorityRule>>& rules,
                             std::span<const Problem> problems, const std::string& set) {
  std::vector<PriorityRule> rs;
  for (const auto& r : rules) rs.push_back(r.second);
  auto scores = score_rules(rs, problems, set);
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i].rule = rules[i].first;
  return scores;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  if (const auto parent = fs::path(out).parent_path(); !parent.empty()) fs::create_directories(parent);
  write_text_file(out, text);
}

// Loads a set of instances and selects a split. Without metadata the split
// uses blocks of ten in natural order.
std::vector<Problem> load_split(const std::string& dir, const std::string& meta_path, const std::string& split) {
  auto inst = load_instance_dir(resolve_data_path(dir), &std::cerr);
  if (split == "all") return make_problems(std::move(inst));
  Split s;
  if (!meta_path.empty()) {
    const auto meta = load_meta(read_text_file(resolve_data_path(meta_path)));
    s = split_by_combination(inst, meta);
  } else {
    s = split_by_blocks(inst.size());
  }
  const auto& idx = split == "validation" ? s.validation : s.test;
  if (split != "validation" && split != "test") throw std::invalid_argument("split must be all, validation or test");
  return make_problems(pick(inst, idx));
}

int cmd_fetch(bool download, const std::string& out) {
  const fs::path root = out.empty() ? data_root() : fs::path(out);
  bool all_ok = true;
  for (const auto& d : kDatasets) {
    const fs::path dir = root / d.name;
    std::size_t n = count_files(dir, d.ext);
    if (n != d.count && download && std::string(d.url).ends_with(".zip")) {
      fs::create_directories(dir);
      const auto zip = root / (std::string(d.name) + ".zip");
      const std::string cmd = fmt::format("curl -fsSL -o '{}' '{}' && unzip -o -q -j '{}' -d '{}'", zip.string(),
                                          d.url, zip.string(), dir.string());
      std::cerr << "fetching " << d.url << "\n";
      if (std::system(cmd.c_str()) != 0) std::cerr << "download failed for " << d.name << "\n";
      n = count_files(dir, d.ext);
    }
    const bool ok = n == d.count;
    all_ok = all_ok && ok;
    std::cout << fmt::format("{},{},{},{},{}\n", d.name, dir.string(), n, d.count, ok ? "ok" : d.url);
  }
  if (!all_ok)
    throw std::runtime_error(fmt::format("datasets incomplete under {}; fetch them from the listed URLs", root.string()));
  return 0;
}

int cmd_evolve(const Common& c, const std::string& train, const std::string& valid, const std::string& test,
               const std::string& meta, const std::vector<int>& bins, bool no_gphh,
               const std::string& slack_domain) {
  if (c.out.empty()) throw std::invalid_argument("evolve needs --out");
  ExperimentSpec spec;
  spec.profile = profile_by_name(c.profile);
  spec.evolution.population = spec.profile.population;
  spec.evolution.generations = spec.profile.generations;
  spec.evolution.threads = c.threads;
  spec.grid_bins = bins;
  spec.include_gphh = !no_gphh;
  spec.base_seed = c.seed;
  spec.out_dir = c.out;

  auto train_inst = load_instance_dir(resolve_data_path(train), &std::cerr);
  if (spec.profile.training_subset > 0 && train_inst.size() > static_cast<std::size_t>(spec.profile.training_subset)) {
    const auto block = train_inst.size() / static_cast<std::size_t>(spec.profile.training_subset);
    auto idx = split_by_blocks(train_inst.size(), block).validation;
    idx.resize(static_cast<std::size_t>(spec.profile.training_subset));
    train_inst = pick(train_inst, idx);
  }
  const auto training = make_problems(std::move(train_inst));
  if (slack_domain == "auto") {
    spec.slack_domain = calibrate_slack_domain(training, spec.profile.population, c.seed, c.threads);
    std::cerr << fmt::format("calibrated slack domain [{}, {}]\n", format_double(spec.slack_domain->lo),
                             format_double(spec.slack_domain->hi));
  } else if (!slack_domain.empty()) {
    const auto comma = slack_domain.find(',');
    const auto lo = comma == std::string::npos ? std::nullopt : parse_double(slack_domain.substr(0, comma));
    const auto hi = comma == std::string::npos ? std::nullopt : parse_double(slack_domain.substr(comma + 1));
    if (!lo || !hi) throw std::invalid_argument("--slack-domain wants lo,hi or auto");
    spec.slack_domain = Domain{*lo, *hi};
  }
  std::vector<Problem> validation, testing;
  if (!valid.empty()) {
    validation = load_split(valid, "", "all");
    if (!test.empty()) testing = load_split(test, "", "all");
  } else {
    if (test.empty()) throw std::invalid_argument("evolve needs --test (and optionally --valid)");
    validation = load_split(test, meta, "validation");
    testing = load_split(test, meta, "test");
  }
  std::cerr << fmt::format("profile {}: {} training, {} validation, {} test instances\n", spec.profile.name,
                           training.size(), validation.size(), testing.size());
  const auto outcome = run_experiment(spec, training, validation, testing, &std::cerr);
  std::cout << write_summary(outcome.summary);
  return 0;
}

int cmd_grid_report(const std::string& in, const std::string& out) {
  const fs::path root = in;
  const fs::path dest = out.empty() ? root : fs::path(out);
  if (!fs::is_directory(root)) throw std::runtime_error(fmt::format("no experiment directory {}", root.string()));
  fs::create_directories(dest);
  std::vector<std::string> coverage_rows{"algorithm,run,bins,occupied,coverage"};
  std::vector<fs::path> algos;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && e.path().filename().string().starts_with("MEHH_")) algos.push_back(e.path());
  std::sort(algos.begin(), algos.end(),
            [](const fs::path& a, const fs::path& b) { return natural_less(a.filename().string(), b.filename().string()); });
  for (const auto& algo : algos) {
    const std::string name = algo.filename().string();
    const auto cells = parse_int(name.substr(5));
    if (!cells) continue;
    const int bins = static_cast<int>(std::lround(std::cbrt(static_cast<double>(*cells))));
    std::vector<fs::path> runs;
    for (const auto& e : fs::directory_iterator(algo))
      if (fs::exists(e.path() / "snapshot.csv")) runs.push_back(e.path());
    std::sort(runs.begin(), runs.end(),
              [](const fs::path& a, const fs::path& b) { return natural_less(a.filename().string(), b.filename().string()); });
    std::vector<SnapshotRow> all;
    for (const auto& run : runs) {
      auto snap = load_snapshot(read_text_file(run / "snapshot.csv"));
      coverage_rows.push_back(fmt::format("{},{},{},{},{}", name, run.filename().string().substr(4), bins, snap.size(),
                                          format_double(100.0 * static_cast<double>(snap.size()) / *cells)));
      all.insert(all.end(), snap.begin(), snap.end());
    }
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
      write_text_file(dest / fmt::format("{}_{}_{}.csv", name, feature_name(a), feature_name(b)),
                      write_matrix(feature_matrix(all, a, b), feature_name(a), feature_name(b)));
  }
  std::string text;
  for (const auto& r : coverage_rows) text += r + "\n";
  write_text_file(dest / "grid_coverage.csv", text);
  std::cout << text;
  return 0;
}

int cmd_evaluate_rule(const std::string& rule_text, const std::string& test, const std::string& schedule_out,
                      std::uint64_t seed) {
  const auto rule = parse_priority_rule(rule_text, seed);
  const auto problems = load_split(test, "", "all");
  const auto rep = evaluate_rule(rule, problems);
  std::cout << "rule,deviation,makespan,slack\n"
            << csv::join(std::vector<std::string>{rule.label(), format_double(rep.mean_deviation),
                                                  std::to_string(rep.total_makespan),
                                                  format_double(normalized_slack(rule, problems))})
            << "\n";
  if (!schedule_out.empty()) {
    // Gantt dump of the first instance.
    const auto& p = problems.front();
    std::ostringstream out;
    write_schedule_csv(out, psgs(p.instance, rule.priorities(p)));
    write_text_file(schedule_out, out.str());
  }
  return 0;
}

void print_error(const std::string& command, const std::string& message) {
  nlohmann::json j{{"error", message}, {"command", command}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Priority-rule hyper-heuristics for resource-constrained project scheduling"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--seed", c.seed, "Base seed; run k uses seed + k")->capture_default_str();
  app.add_option("--profile", c.profile, "desk or paper")->capture_default_str();
  app.add_option("--out", c.out, "Output file or directory");
  app.add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();

  std::string train, valid, test, meta, split = "all", in_dir, sets = "j60,j90,j120", rule_text, schedule_out;
  std::vector<int> bins{5, 10, 15, 20};
  std::string slack_domain;
  bool download = false, no_gphh = false;
  RuleOptions ro;
  auto add_rules = [&](CLI::App* sub) {
    sub->add_option("--rule", ro.rules, "Rule: builtin name, prefix or infix expression (repeatable)");
    sub->add_option("--rules-file", ro.rules_file, "One rule per line");
    sub->add_option("--results", ro.results, "Experiment results.csv; adds every run's representative");
  };

  auto* fetch = app.add_subcommand("fetch", "Check (and optionally download) the benchmark sets");
  fetch->add_flag("--download", download, "Download missing PSPLib sets with curl");

  auto* baseline = app.add_subcommand("baseline", "Deviation and makespan of rules on an instance set");
  baseline->add_option("--test", test, "Instance directory")->required();
  baseline->add_option("--meta", meta, "Metadata CSV for the validation/test split");
  baseline->add_option("--split", split, "all, validation or test")->capture_default_str();
  add_rules(baseline);

  auto* evolve = app.add_subcommand("evolve", "Run GPHH and MAP-Elites variants");
  evolve->add_option("--train", train, "Training instance directory")->required();
  evolve->add_option("--valid", valid, "Validation directory (else split from --test)");
  evolve->add_option("--test", test, "Test (or validation+test) directory");
  evolve->add_option("--meta", meta, "Metadata CSV for the split");
  evolve->add_option("--grid-bins", bins, "Bins per feature, one variant each")->delimiter(',')->capture_default_str();
  evolve->add_flag("--no-gphh", no_gphh, "Skip the GP baseline");
  evolve->add_option("--slack-domain", slack_domain,
                     "Slack feature domain as lo,hi, or auto to measure it on the training set (default 1.65,2.00)");

  auto* hard = app.add_subcommand("hard-subset", "Rules on the hard instances of the test split");
  hard->add_option("--test", test, "Instance directory")->required();
  hard->add_option("--meta", meta, "Metadata CSV")->required();
  add_rules(hard);

  auto* grid = app.add_subcommand("grid-report", "Coverage and feature/fitness matrices from snapshots");
  grid->add_option("--in", in_dir, "Experiment directory")->required();

  auto* crossval = app.add_subcommand("crossval", "Rules on other instance sets");
  crossval->add_option("--sets", sets, "Comma-separated set directories")->capture_default_str();
  add_rules(crossval);

  auto* eval = app.add_subcommand("evaluate-rule", "Evaluate one rule on an instance set");
  eval->add_option("--rule", rule_text, "Rule text")->required();
  eval->add_option("--test", test, "Instance directory")->required();
  eval->add_option("--schedule", schedule_out, "Write the first instance's schedule here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("", e.what());
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*fetch) return cmd_fetch(download, c.out);
    if (*baseline) return emit(c.out, write_baseline(score(collect_rules(ro, c.seed), load_split(test, meta, split), split))), 0;
    if (*evolve) return cmd_evolve(c, train, valid, test, meta, bins, no_gphh, slack_domain);
    if (*hard) {
      auto inst = load_instance_dir(resolve_data_path(test), &std::cerr);
      const auto meta_rows = load_meta(read_text_file(resolve_data_path(meta)));
      const auto s = split_by_combination(inst, meta_rows);
      const auto test_inst = pick(inst, s.test);
      const auto problems = make_problems(pick(test_inst, hard_subset(test_inst, meta_rows)));
      std::cerr << fmt::format("{} hard instances\n", problems.size());
      emit(c.out, write_baseline(score(collect_rules(ro, c.seed), problems, "hard")));
      return 0;
    }
    if (*grid) return cmd_grid_report(in_dir, c.out);
    if (*crossval) {
      const auto rules = collect_rules(ro, c.seed);
      std::vector<RuleScore> all;
      std::stringstream ss(sets);
      for (std::string set; std::getline(ss, set, ',');) {
        const auto problems = load_split(set, "", "all");
        const auto part = score(rules, problems, fs::path(set).filename().string());
        all.insert(all.end(), part.begin(), part.end());
      }
      emit(c.out, write_crossval(all));
      return 0;
    }
    if (*eval) return cmd_evaluate_rule(rule_text, test, schedule_out, c.seed);
  } catch (const std::exception& e) {
    print_error(command, e.what());
    return 1;
  }
  return 0;
}
