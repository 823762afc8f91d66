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

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mehh/io.hpp"
#include "mehh/random.hpp"
#include "mehh/rule.hpp"

namespace mehh {

std::string_view builtin_name(BuiltinRule rule) {
  switch (rule) {
    case BuiltinRule::kEST: return "EST";
    case BuiltinRule::kEFT: return "EFT";
    case BuiltinRule::kLST: return "LST";
    case BuiltinRule::kLFT: return "LFT";
    case BuiltinRule::kMTS: return "MTS";
    case BuiltinRule::kFIFO: return "FIFO";
    case BuiltinRule::kSPT: return "SPT";
    case BuiltinRule::kGRPW: return "GRPW";
    case BuiltinRule::kGRD: return "GRD";
    case BuiltinRule::kRAND: return "RAND";
  }
  return "?";
}

std::optional<BuiltinRule> parse_builtin(std::string_view name) {
  std::string upper(trim(name));
  std::ranges::transform(upper, upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto r : kAllBuiltins)
    if (builtin_name(r) == upper) return r;
  return std::nullopt;
}

Extremum builtin_extremum(BuiltinRule rule) {
  switch (rule) {
    case BuiltinRule::kMTS:
    case BuiltinRule::kGRPW:
    case BuiltinRule::kGRD: return Extremum::kMax;
    default: return Extremum::kMin;
  }
}

double eval_builtin(BuiltinRule rule, const Instance& inst, const AttributeTable& attrs, int activity,
                    std::uint64_t rand_seed) {
  const auto j = static_cast<std::size_t>(activity);
  double score = 0.0;
  switch (rule) {
    case BuiltinRule::kEST: score = attrs.raw_es()[j]; break;
    case BuiltinRule::kEFT: score = attrs.raw_ef()[j]; break;
    case BuiltinRule::kLST: score = attrs.raw_ls()[j]; break;
    case BuiltinRule::kLFT: score = attrs.raw_lf()[j]; break;
    case BuiltinRule::kMTS: score = attrs.total_successors()[j]; break;
    case BuiltinRule::kFIFO: score = activity + 1; break;
    case BuiltinRule::kSPT: score = inst.duration(activity); break;
    case BuiltinRule::kGRPW: {
      int sum = inst.duration(activity);
      for (int s : inst.successors(activity)) sum += inst.duration(s);
      score = sum;
      break;
    }
    case BuiltinRule::kGRD: {
      const auto req = inst.requirements(activity);
      score = static_cast<double>(inst.duration(activity)) * std::accumulate(req.begin(), req.end(), 0);
      break;
    }
    case BuiltinRule::kRAND: {
      const std::uint64_t key = hash_combine(hash_combine(rand_seed, hash_string(inst.id())),
                                             static_cast<std::uint64_t>(activity));
      score = unit_double(splitmix64(key));
      break;
    }
  }
  return builtin_extremum(rule) == Extremum::kMax ? -score : score;
}

std::vector<double> eval_builtin_all(BuiltinRule rule, const Instance& inst, const AttributeTable& attrs,
                                     std::uint64_t rand_seed) {
  std::vector<double> out(static_cast<std::size_t>(inst.num_activities()));
  for (int j = 0; j < inst.num_activities(); ++j)
    out[static_cast<std::size_t>(j)] = eval_builtin(rule, inst, attrs, j, rand_seed);
  return out;
}

std::vector<double> PriorityRule::priorities(const Problem& p) const {
  if (builtin_) return eval_builtin_all(*builtin_, p.instance, p.attributes, rand_seed_);
  return eval_all(expr_, p.attributes);
}

std::string PriorityRule::label() const {
  return builtin_ ? std::string(builtin_name(*builtin_)) : serialize(expr_);
}

PriorityRule parse_priority_rule(std::string_view text, std::uint64_t rand_seed) {
  if (const auto b = parse_builtin(text)) return PriorityRule(*b, rand_seed);
  return PriorityRule(parse_any_rule(text));
}

}  // namespace mehh
