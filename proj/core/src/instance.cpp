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

#include "mehh/instance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>

#include "mehh/io.hpp"

namespace mehh {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? fmt::format("line {}: {}", line, message) : message),
      line_(line) {}

Instance::Instance(std::string id, std::vector<int> durations,
                   std::vector<std::vector<int>> requirements,
                   std::vector<int> capacities,
                   std::vector<std::vector<int>> successors,
                   std::optional<int> horizon)
    : id_(std::move(id)), durations_(std::move(durations)), capacities_(std::move(capacities)) {
  const auto m = durations_.size();
  const auto k = capacities_.size();
  if (m < 3) throw InstanceError("an instance needs a source, a sink and at least one activity");
  if (requirements.size() != m) throw InstanceError("requirement rows do not match activity count");
  if (successors.size() != m) throw InstanceError("successor lists do not match activity count");
  for (std::size_t r = 0; r < k; ++r)
    if (capacities_[r] <= 0)
      throw InstanceError(fmt::format("resource {} has non-positive capacity", r + 1));

  requirements_.reserve(m * k);
  for (std::size_t j = 0; j < m; ++j) {
    if (durations_[j] < 0) throw InstanceError(fmt::format("activity {} has negative duration", j + 1));
    if (requirements[j].size() != k)
      throw InstanceError(fmt::format("activity {} lists {} requirements, expected {}", j + 1,
                                      requirements[j].size(), k));
    for (std::size_t r = 0; r < k; ++r) {
      const int req = requirements[j][r];
      if (req < 0) throw InstanceError(fmt::format("activity {} has a negative requirement", j + 1));
      if (req > capacities_[r])
        throw InstanceError(fmt::format("activity {} requires {} units of resource {} (capacity {})",
                                        j + 1, req, r + 1, capacities_[r]));
      requirements_.push_back(req);
    }
  }

  successors_.resize(m);
  predecessors_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::set<int> seen;
    for (int s : successors[j]) {
      if (s < 0 || static_cast<std::size_t>(s) >= m)
        throw InstanceError(fmt::format("activity {} has successor {} out of range", j + 1, s + 1));
      if (static_cast<std::size_t>(s) == j)
        throw InstanceError(fmt::format("activity {} is its own successor", j + 1));
      if (!seen.insert(s).second) continue;
      successors_[j].push_back(s);
      predecessors_[static_cast<std::size_t>(s)].push_back(static_cast<int>(j));
    }
  }
  for (auto& p : predecessors_) std::sort(p.begin(), p.end());

  for (std::size_t j = 0; j < m; ++j) {
    if (j != 0 && predecessors_[j].empty())
      throw InstanceError(fmt::format("activity {} has no predecessor but is not the source", j + 1));
    if (j != m - 1 && successors_[j].empty())
      throw InstanceError(fmt::format("activity {} has no successor but is not the sink", j + 1));
  }
  if (!predecessors_[0].empty()) throw InstanceError("the source has predecessors");
  if (!successors_[m - 1].empty()) throw InstanceError("the sink has successors");
  for (std::size_t j : {std::size_t{0}, m - 1}) {
    if (durations_[j] != 0) throw InstanceError(fmt::format("dummy activity {} has non-zero duration", j + 1));
    for (std::size_t r = 0; r < k; ++r)
      if (requirements_[j * k + r] != 0)
        throw InstanceError(fmt::format("dummy activity {} has non-zero requirements", j + 1));
  }

  // Kahn's algorithm; smallest ready index first so the order is canonical.
  std::vector<int> indegree(m);
  for (std::size_t j = 0; j < m; ++j) indegree[j] = static_cast<int>(predecessors_[j].size());
  std::set<int> ready{0};
  topo_order_.reserve(m);
  while (!ready.empty()) {
    const int j = *ready.begin();
    ready.erase(ready.begin());
    topo_order_.push_back(j);
    for (int s : successors_[static_cast<std::size_t>(j)])
      if (--indegree[static_cast<std::size_t>(s)] == 0) ready.insert(s);
  }
  if (topo_order_.size() != m) throw InstanceError("precedence graph contains a cycle");

  const int total = std::accumulate(durations_.begin(), durations_.end(), 0);
  if (total == 0) throw InstanceError("degenerate project: all durations are zero");
  horizon_ = horizon.value_or(total);
  if (horizon_ < 0) throw InstanceError("negative horizon");
}

bool same_project(const Instance& a, const Instance& b) {
  if (a.num_activities() != b.num_activities() || a.num_resources() != b.num_resources())
    return false;
  if (!std::ranges::equal(a.capacities(), b.capacities())) return false;
  for (int j = 0; j < a.num_activities(); ++j) {
    if (a.duration(j) != b.duration(j)) return false;
    if (!std::ranges::equal(a.requirements(j), b.requirements(j))) return false;
    std::vector<int> sa(a.successors(j).begin(), a.successors(j).end());
    std::vector<int> sb(b.successors(j).begin(), b.successors(j).end());
    std::ranges::sort(sa);
    std::ranges::sort(sb);
    if (sa != sb) return false;
  }
  return true;
}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t n = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({++n, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<int> ints_of(const Line& line) {
  std::vector<int> out;
  for (auto w : words(line.text)) {
    const auto v = parse_int(w);
    if (!v) throw ParseError(line.number, fmt::format("expected an integer, found '{}'", w));
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

int int_after_colon(const Line& line) {
  const auto colon = line.text.find(':');
  if (colon == std::string_view::npos) throw ParseError(line.number, "expected ':'");
  const auto ws = words(line.text.substr(colon + 1));
  if (ws.empty()) throw ParseError(line.number, "missing value after ':'");
  const auto v = parse_int(ws.front());
  if (!v) throw ParseError(line.number, fmt::format("expected an integer, found '{}'", ws.front()));
  return static_cast<int>(*v);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  s = trim(s);
  return s.substr(0, prefix.size()) == prefix;
}

bool is_rule_line(std::string_view s) {
  s = trim(s);
  return !s.empty() && (s.find_first_not_of("*-=") == std::string_view::npos);
}

Instance build(std::string id, std::vector<int> d, std::vector<std::vector<int>> r,
               std::vector<int> cap, std::vector<std::vector<int>> succ,
               std::optional<int> horizon) {
  try {
    return Instance(std::move(id), std::move(d), std::move(r), std::move(cap), std::move(succ),
                    horizon);
  } catch (const InstanceError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace

Instance parse_psplib(std::string_view text, std::string id) {
  const auto lines = split_lines(text);
  std::optional<int> jobs, horizon, renewable;
  std::size_t prec_at = 0, req_at = 0, avail_at = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto t = trim(lines[i].text);
    if (starts_with(t, "jobs (incl")) jobs = int_after_colon(lines[i]);
    else if (starts_with(t, "horizon")) horizon = int_after_colon(lines[i]);
    else if (starts_with(t, "- renewable")) renewable = int_after_colon(lines[i]);
    else if (starts_with(t, "PRECEDENCE RELATIONS")) prec_at = i + 1;
    else if (starts_with(t, "REQUESTS/DURATIONS")) req_at = i + 1;
    else if (starts_with(t, "RESOURCEAVAILABILITIES")) avail_at = i + 1;
  }
  if (!jobs) throw ParseError(0, "missing 'jobs (incl. supersource/sink)' header");
  if (!renewable) throw ParseError(0, "missing '- renewable' header");
  if (!prec_at) throw ParseError(0, "missing PRECEDENCE RELATIONS section");
  if (!req_at) throw ParseError(0, "missing REQUESTS/DURATIONS section");
  if (!avail_at) throw ParseError(0, "missing RESOURCEAVAILABILITIES section");
  const int m = *jobs;
  const int k = *renewable;
  if (m < 3) throw ParseError(lines[0].number, fmt::format("job count {} is too small", m));

  // Data rows of a section: skip its column header, stop at the next rule line.
  auto section_rows = [&](std::size_t from) {
    std::vector<Line> rows;
    std::size_t i = from;
    if (i < lines.size() && !trim(lines[i].text).empty() &&
        !std::isdigit(static_cast<unsigned char>(trim(lines[i].text).front())))
      ++i;  // column header
    if (i < lines.size() && starts_with(lines[i].text, "-")) ++i;  // underline
    for (; i < lines.size(); ++i) {
      if (is_rule_line(lines[i].text)) break;
      if (trim(lines[i].text).empty()) continue;
      rows.push_back(lines[i]);
    }
    return rows;
  };

  std::vector<std::vector<int>> succ(static_cast<std::size_t>(m));
  const auto prec = section_rows(prec_at);
  if (static_cast<int>(prec.size()) != m)
    throw ParseError(lines[prec_at - 1].number,
                     fmt::format("precedence section lists {} jobs, header says {}", prec.size(), m));
  for (int j = 0; j < m; ++j) {
    const auto& line = prec[static_cast<std::size_t>(j)];
    const auto v = ints_of(line);
    if (v.size() < 3) throw ParseError(line.number, "precedence row needs job, modes, successor count");
    if (v[0] != j + 1) throw ParseError(line.number, fmt::format("expected job {}, found {}", j + 1, v[0]));
    if (v[1] != 1) throw ParseError(line.number, "multi-mode jobs are not supported");
    if (v[2] < 0 || static_cast<std::size_t>(v[2]) != v.size() - 3)
      throw ParseError(line.number, fmt::format("successor count {} does not match {} listed",
                                                v[2], v.size() - 3));
    for (std::size_t i = 3; i < v.size(); ++i) {
      if (v[i] < 1 || v[i] > m)
        throw ParseError(line.number, fmt::format("successor {} out of range 1..{}", v[i], m));
      succ[static_cast<std::size_t>(j)].push_back(v[i] - 1);
    }
  }

  // The column header names each resource ("R 1  R 2 ... N 1").
  const auto& req_header = lines[req_at];
  int columns = 0;
  for (auto w : words(req_header.text))
    if (w == "R" || w == "N" || w == "D") ++columns;
  if (columns < k)
    throw ParseError(req_header.number,
                     fmt::format("request header names {} resources, expected at least {}", columns, k));
  std::vector<int> durations(static_cast<std::size_t>(m));
  std::vector<std::vector<int>> req(static_cast<std::size_t>(m));
  const auto reqs = section_rows(req_at);
  if (static_cast<int>(reqs.size()) != m)
    throw ParseError(req_header.number,
                     fmt::format("requests section lists {} jobs, header says {}", reqs.size(), m));
  for (int j = 0; j < m; ++j) {
    const auto& line = reqs[static_cast<std::size_t>(j)];
    const auto v = ints_of(line);
    if (static_cast<int>(v.size()) != 3 + columns)
      throw ParseError(line.number, fmt::format("expected {} fields, found {}", 3 + columns, v.size()));
    if (v[0] != j + 1) throw ParseError(line.number, fmt::format("expected job {}, found {}", j + 1, v[0]));
    durations[static_cast<std::size_t>(j)] = v[2];
    req[static_cast<std::size_t>(j)].assign(v.begin() + 3, v.begin() + 3 + k);
  }

  const auto avail = section_rows(avail_at);
  if (avail.empty()) throw ParseError(lines[avail_at - 1].number, "missing resource availabilities");
  auto cap = ints_of(avail.front());
  if (static_cast<int>(cap.size()) != columns)
    throw ParseError(avail.front().number,
                     fmt::format("expected {} availabilities, found {}", columns, cap.size()));
  cap.resize(static_cast<std::size_t>(k));

  for (int j = 0; j < m; ++j)
    for (int r = 0; r < k; ++r)
      if (req[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] > cap[static_cast<std::size_t>(r)])
        throw ParseError(reqs[static_cast<std::size_t>(j)].number,
                         fmt::format("job {} requests more of resource {} than available", j + 1, r + 1));

  return build(std::move(id), std::move(durations), std::move(req), std::move(cap), std::move(succ),
               horizon);
}

Instance parse_patterson(std::string_view text, std::string id, PattersonLayout* layout) {
  struct Tok {
    std::size_t line;
    int value;
  };
  std::vector<Tok> toks;
  for (const auto& line : split_lines(text))
    for (auto w : words(line.text)) {
      const auto v = parse_int(w);
      if (!v) throw ParseError(line.number, fmt::format("expected an integer, found '{}'", w));
      toks.push_back({line.number, static_cast<int>(*v)});
    }
  if (toks.empty()) throw ParseError(0, "empty Patterson file");

  std::size_t pos = 0;
  auto next = [&](const char* what) -> const Tok& {
    if (pos >= toks.size())
      throw ParseError(toks.back().line, fmt::format("unexpected end of file reading {}", what));
    return toks[pos++];
  };
  const int n = next("activity count").value;
  const int k = next("resource count").value;
  if (n < 1) throw ParseError(toks.front().line, "activity count must be positive");
  if (k < 0) throw ParseError(toks.front().line, "resource count must be non-negative");
  std::vector<int> cap;
  for (int r = 0; r < k; ++r) cap.push_back(next("capacities").value);

  std::vector<int> d(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> req(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto& first = next("duration");
    d[static_cast<std::size_t>(j)] = first.value;
    for (int r = 0; r < k; ++r) {
      const auto& t = next("requirements");
      if (r < static_cast<int>(cap.size()) && t.value > cap[static_cast<std::size_t>(r)])
        throw ParseError(t.line, fmt::format("activity {} requests more of resource {} than available",
                                             j + 1, r + 1));
      req[static_cast<std::size_t>(j)].push_back(t.value);
    }
    const auto& cnt = next("successor count");
    if (cnt.value < 0) throw ParseError(cnt.line, "negative successor count");
    for (int s = 0; s < cnt.value; ++s) {
      const auto& t = next("successors");
      if (t.value < 1 || t.value > n)
        throw ParseError(t.line, fmt::format("successor {} out of range 1..{}", t.value, n));
      succ[static_cast<std::size_t>(j)].push_back(t.value - 1);
    }
  }
  if (pos != toks.size()) throw ParseError(toks[pos].line, "trailing data after last activity");

  std::vector<int> indeg(static_cast<std::size_t>(n));
  for (const auto& s : succ)
    for (int v : s) ++indeg[static_cast<std::size_t>(v)];
  auto is_zero = [&](int j) {
    return d[static_cast<std::size_t>(j)] == 0 &&
           std::ranges::all_of(req[static_cast<std::size_t>(j)], [](int v) { return v == 0; });
  };
  int sources = 0, sinks = 0;
  for (int j = 0; j < n; ++j) {
    sources += indeg[static_cast<std::size_t>(j)] == 0;
    sinks += succ[static_cast<std::size_t>(j)].empty();
  }
  const bool has_dummies = n >= 3 && sources == 1 && sinks == 1 && indeg[0] == 0 &&
                           succ[static_cast<std::size_t>(n - 1)].empty() && is_zero(0) &&
                           is_zero(n - 1);
  if (layout) *layout = has_dummies ? PattersonLayout::kWithDummies : PattersonLayout::kDummiesAdded;
  if (has_dummies) return build(std::move(id), std::move(d), std::move(req), std::move(cap), std::move(succ), {});

  // Wrap the activities between a new source (index 0) and sink (index n+1).
  std::vector<int> d2{0};
  std::vector<std::vector<int>> req2{std::vector<int>(static_cast<std::size_t>(k), 0)};
  std::vector<std::vector<int>> succ2(1);
  for (int j = 0; j < n; ++j) {
    if (indeg[static_cast<std::size_t>(j)] == 0) succ2[0].push_back(j + 1);
    d2.push_back(d[static_cast<std::size_t>(j)]);
    req2.push_back(req[static_cast<std::size_t>(j)]);
    std::vector<int> s;
    for (int v : succ[static_cast<std::size_t>(j)]) s.push_back(v + 1);
    if (s.empty()) s.push_back(n + 1);
    succ2.push_back(std::move(s));
  }
  d2.push_back(0);
  req2.emplace_back(static_cast<std::size_t>(k), 0);
  succ2.emplace_back();
  return build(std::move(id), std::move(d2), std::move(req2), std::move(cap), std::move(succ2), {});
}

std::string write_canonical(const Instance& inst) {
  std::string out = "# mehh instance v1\n";
  out += fmt::format("id {}\n", inst.id().empty() ? "-" : inst.id());
  out += fmt::format("activities {}\n", inst.num_activities());
  out += fmt::format("resources {}\n", inst.num_resources());
  out += fmt::format("horizon {}\n", inst.horizon());
  out += fmt::format("capacities {}\n", fmt::join(inst.capacities(), " "));
  for (int j = 0; j < inst.num_activities(); ++j) {
    out += fmt::format("{} {}", j + 1, inst.duration(j));
    for (int r : inst.requirements(j)) out += fmt::format(" {}", r);
    out += " :";
    for (int s : inst.successors(j)) out += fmt::format(" {}", s + 1);
    out += '\n';
  }
  return out;
}

Instance parse_canonical(std::string_view text) {
  std::string id;
  std::optional<int> m, k, horizon;
  std::vector<int> cap;
  std::vector<int> d;
  std::vector<std::vector<int>> req, succ;
  bool have_cap = false;
  for (const auto& line : split_lines(text)) {
    const auto t = trim(line.text);
    if (t.empty() || t.front() == '#') continue;
    const auto ws = words(t);
    const auto key = ws.front();
    auto single_int = [&]() {
      if (ws.size() != 2) throw ParseError(line.number, fmt::format("'{}' takes one value", key));
      const auto v = parse_int(ws[1]);
      if (!v) throw ParseError(line.number, fmt::format("expected an integer, found '{}'", ws[1]));
      return static_cast<int>(*v);
    };
    if (key == "id") {
      if (ws.size() != 2) throw ParseError(line.number, "'id' takes one value");
      id = ws[1] == "-" ? std::string{} : std::string(ws[1]);
    } else if (key == "activities") {
      m = single_int();
    } else if (key == "resources") {
      k = single_int();
    } else if (key == "horizon") {
      horizon = single_int();
    } else if (key == "capacities") {
      if (!k) throw ParseError(line.number, "'capacities' before 'resources'");
      for (std::size_t i = 1; i < ws.size(); ++i) {
        const auto v = parse_int(ws[i]);
        if (!v) throw ParseError(line.number, fmt::format("expected an integer, found '{}'", ws[i]));
        cap.push_back(static_cast<int>(*v));
      }
      if (static_cast<int>(cap.size()) != *k)
        throw ParseError(line.number, fmt::format("expected {} capacities, found {}", *k, cap.size()));
      have_cap = true;
    } else {
      if (!m || !k || !have_cap)
        throw ParseError(line.number, "activity row before the activities/resources/capacities header");
      const auto colon = t.find(':');
      if (colon == std::string_view::npos) throw ParseError(line.number, "activity row lacks ':'");
      const auto head = ints_of({line.number, t.substr(0, colon)});
      const auto tail = ints_of({line.number, t.substr(colon + 1)});
      const int expected_id = static_cast<int>(d.size()) + 1;
      if (static_cast<int>(head.size()) != 2 + *k)
        throw ParseError(line.number, fmt::format("expected {} fields before ':', found {}", 2 + *k, head.size()));
      if (head[0] != expected_id)
        throw ParseError(line.number, fmt::format("expected activity {}, found {}", expected_id, head[0]));
      if (expected_id > *m) throw ParseError(line.number, "more activity rows than declared");
      d.push_back(head[1]);
      req.emplace_back(head.begin() + 2, head.end());
      for (int r = 0; r < *k; ++r)
        if (req.back()[static_cast<std::size_t>(r)] > cap[static_cast<std::size_t>(r)])
          throw ParseError(line.number, fmt::format("activity {} requests more of resource {} than available",
                                                    expected_id, r + 1));
      std::vector<int> s;
      for (int v : tail) {
        if (v < 1 || v > *m) throw ParseError(line.number, fmt::format("successor {} out of range 1..{}", v, *m));
        s.push_back(v - 1);
      }
      succ.push_back(std::move(s));
    }
  }
  if (!m) throw ParseError(0, "missing 'activities' line");
  if (static_cast<int>(d.size()) != *m)
    throw ParseError(0, fmt::format("declared {} activities, found {}", *m, d.size()));
  return build(std::move(id), std::move(d), std::move(req), std::move(cap), std::move(succ), horizon);
}

Instance load_instance_file(const std::string& path, PattersonLayout* layout) {
  const std::filesystem::path p(path);
  const auto text = read_text_file(p);
  auto ext = p.extension().string();
  std::ranges::transform(ext, ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto stem = p.stem().string();
  try {
    if (ext == ".sm") return parse_psplib(text, stem);
    if (ext == ".rcp") return parse_patterson(text, stem, layout);
    if (ext == ".inst") {
      auto inst = parse_canonical(text);
      return inst.id().empty() ? inst.with_id(stem) : inst;
    }
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path, e.what()));
  }
  throw ParseError(0, fmt::format("{}: unknown instance extension '{}'", path, ext));
}

std::optional<double> InstanceMeta::param(std::string_view name) const {
  for (const auto& [key, value] : params)
    if (key == name) return value;
  return std::nullopt;
}

std::vector<double> InstanceMeta::combination_key() const {
  std::vector<double> key;
  for (const auto& kv : params) key.push_back(kv.second);
  return key;
}

std::vector<InstanceMeta> load_meta(std::string_view csv_text, std::string set_name) {
  const auto table = csv::parse(csv_text);
  const auto id_col = table.column("id");
  if (!id_col) throw ParseError(1, "metadata CSV lacks an 'id' column");
  static const std::vector<std::vector<std::string>> kSchemas = {{"OS", "RU", "RC"},
                                                                 {"NC", "RF", "RS"}};
  const std::vector<std::string>* schema = nullptr;
  for (const auto& s : kSchemas)
    if (std::ranges::all_of(s, [&](const std::string& c) { return table.column(c).has_value(); }))
      schema = &s;
  if (!schema) throw ParseError(1, "metadata CSV needs columns OS,RU,RC or NC,RF,RS");

  std::vector<InstanceMeta> out;
  std::set<std::string> ids;
  std::size_t line = 1;
  for (const auto& row : table.rows) {
    ++line;
    InstanceMeta meta;
    meta.id = std::string(trim(row[*id_col]));
    meta.set_name = set_name;
    if (meta.id.empty()) throw ParseError(line, "empty id");
    if (!ids.insert(meta.id).second) throw ParseError(line, fmt::format("duplicate id '{}'", meta.id));
    for (const auto& name : *schema) {
      const auto v = parse_double(row[*table.column(name)]);
      if (!v) throw ParseError(line, fmt::format("column {} is not a number", name));
      meta.params.emplace_back(name, *v);
    }
    out.push_back(std::move(meta));
  }
  return out;
}

bool is_hard(const InstanceMeta& meta) {
  constexpr double kEps = 1e-9;
  const auto rc = meta.param("RC");
  const auto ru = meta.param("RU");
  return rc && ru && *rc >= 0.6 - kEps && *ru >= 3.0 - kEps;
}

}  // namespace mehh
