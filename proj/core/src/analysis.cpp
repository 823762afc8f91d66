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

#include "mehh/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <ostream>

#include "mehh/io.hpp"

namespace mehh {

EarliestTimes forward_pass(const Instance& inst) {
  const auto m = static_cast<std::size_t>(inst.num_activities());
  EarliestTimes t{std::vector<int>(m, 0), std::vector<int>(m, 0)};
  for (int j : inst.topological_order()) {
    int es = 0;
    for (int p : inst.predecessors(j)) es = std::max(es, t.finish[static_cast<std::size_t>(p)]);
    t.start[static_cast<std::size_t>(j)] = es;
    t.finish[static_cast<std::size_t>(j)] = es + inst.duration(j);
  }
  return t;
}

LatestTimes backward_pass(const Instance& inst, int anchor) {
  const auto m = static_cast<std::size_t>(inst.num_activities());
  LatestTimes t{std::vector<int>(m, 0), std::vector<int>(m, 0)};
  const auto order = inst.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int j = *it;
    int lf = anchor;
    for (int s : inst.successors(j)) lf = std::min(lf, t.start[static_cast<std::size_t>(s)]);
    t.finish[static_cast<std::size_t>(j)] = lf;
    t.start[static_cast<std::size_t>(j)] = lf - inst.duration(j);
  }
  return t;
}

ClosureCounts closures(const Instance& inst) {
  const auto m = static_cast<std::size_t>(inst.num_activities());
  const std::size_t words = (m + 63) / 64;
  // Bitset reachability, propagated in reverse topological order.
  std::vector<std::uint64_t> reach(m * words, 0);
  auto row = [&](std::size_t j) { return reach.data() + j * words; };
  const auto order = inst.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto j = static_cast<std::size_t>(*it);
    for (int s : inst.successors(*it)) {
      const auto su = static_cast<std::size_t>(s);
      row(j)[su / 64] |= std::uint64_t{1} << (su % 64);
      for (std::size_t w = 0; w < words; ++w) row(j)[w] |= row(su)[w];
    }
  }
  ClosureCounts c{std::vector<int>(m, 0), std::vector<int>(m, 0)};
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t w = 0; w < words; ++w) {
      auto bits = row(j)[w];
      c.successors[j] += std::popcount(bits);
      while (bits) {
        const auto b = static_cast<std::size_t>(std::countr_zero(bits));
        ++c.predecessors[w * 64 + b];
        bits &= bits - 1;
      }
    }
  }
  return c;
}

std::string_view attribute_name(Attribute a) {
  switch (a) {
    case Attribute::kES: return "ES";
    case Attribute::kEF: return "EF";
    case Attribute::kLS: return "LS";
    case Attribute::kLF: return "LF";
    case Attribute::kTPC: return "TPC";
    case Attribute::kTSC: return "TSC";
    case Attribute::kRR: return "RR";
    case Attribute::kAvgRReq: return "AvgRReq";
    case Attribute::kMaxRReq: return "MaxRReq";
    case Attribute::kMinRReq: return "MinRReq";
  }
  return "?";
}

std::optional<Attribute> parse_attribute(std::string_view name) {
  for (auto a : kAllAttributes)
    if (attribute_name(a) == name) return a;
  return std::nullopt;
}

bool is_resource_attribute(Attribute a) {
  return a == Attribute::kRR || a == Attribute::kAvgRReq || a == Attribute::kMaxRReq ||
         a == Attribute::kMinRReq;
}

namespace {

// Scales a column by 1/max; an all-zero column stays zero.
void put_scaled(std::vector<double>& values, Attribute a, std::span<const int> raw) {
  const int mx = raw.empty() ? 0 : *std::ranges::max_element(raw);
  for (std::size_t j = 0; j < raw.size(); ++j)
    values[j * kNumAttributes + static_cast<std::size_t>(a)] =
        mx > 0 ? static_cast<double>(raw[j]) / mx : 0.0;
}

}  // namespace

AttributeTable attribute_table(const Instance& inst) {
  AttributeTable t;
  const auto m = static_cast<std::size_t>(inst.num_activities());
  const int k = inst.num_resources();

  auto early = forward_pass(inst);
  t.lower_bound_ = early.finish[static_cast<std::size_t>(inst.sink())];
  auto late = backward_pass(inst, t.lower_bound_);
  auto closure = closures(inst);
  t.raw_es_ = std::move(early.start);
  t.raw_ef_ = std::move(early.finish);
  t.raw_ls_ = std::move(late.start);
  t.raw_lf_ = std::move(late.finish);
  t.total_pred_ = std::move(closure.predecessors);
  t.total_succ_ = std::move(closure.successors);

  t.values_.assign(m * kNumAttributes, 0.0);
  put_scaled(t.values_, Attribute::kES, t.raw_es_);
  put_scaled(t.values_, Attribute::kEF, t.raw_ef_);
  put_scaled(t.values_, Attribute::kLS, t.raw_ls_);
  put_scaled(t.values_, Attribute::kLF, t.raw_lf_);

  const double closure_scale = 1.0 / static_cast<double>(m - 1);
  for (std::size_t j = 0; j < m; ++j) {
    double* v = t.values_.data() + j * kNumAttributes;
    v[static_cast<std::size_t>(Attribute::kTPC)] = t.total_pred_[j] * closure_scale;
    v[static_cast<std::size_t>(Attribute::kTSC)] = t.total_succ_[j] * closure_scale;
    if (k == 0) continue;
    int used = 0;
    double sum = 0.0;
    double mx = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    for (int r = 0; r < k; ++r) {
      const int req = inst.requirement(static_cast<int>(j), r);
      const double frac = static_cast<double>(req) / inst.capacity(r);
      used += req > 0;
      sum += frac;
      mx = std::max(mx, frac);
      mn = std::min(mn, frac);
    }
    v[static_cast<std::size_t>(Attribute::kRR)] = static_cast<double>(used) / k;
    v[static_cast<std::size_t>(Attribute::kAvgRReq)] = sum / k;
    v[static_cast<std::size_t>(Attribute::kMaxRReq)] = mx;
    v[static_cast<std::size_t>(Attribute::kMinRReq)] = mn;
  }
  return t;
}

void write_attribute_csv(std::ostream& out, const Instance& inst, const AttributeTable& table,
                         bool header) {
  if (header) {
    out << "id,activity";
    for (auto a : kAllAttributes) out << ',' << attribute_name(a);
    out << ",raw_ES,raw_EF,raw_LS,raw_LF\n";
  }
  for (int j = 0; j < table.num_activities(); ++j) {
    out << csv::escape(inst.id()) << ',' << (j + 1);
    for (double v : table.row(j)) out << ',' << format_double(v);
    const auto u = static_cast<std::size_t>(j);
    out << fmt::format(",{},{},{},{}\n", table.raw_es()[u], table.raw_ef()[u], table.raw_ls()[u],
                       table.raw_lf()[u]);
  }
}

}  // namespace mehh
