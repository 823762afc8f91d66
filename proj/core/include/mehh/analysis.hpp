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

// Resource-relaxed critical path analysis and the per-activity attribute
// table that evolved priority rules read their terminals from.

#ifndef MEHH_ANALYSIS_HPP
#define MEHH_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mehh/instance.hpp"

namespace mehh {

struct EarliestTimes {
  std::vector<int> start;
  std::vector<int> finish;
};

struct LatestTimes {
  std::vector<int> start;
  std::vector<int> finish;
};

/// ES/EF ignoring resources. ES[source] = 0.
EarliestTimes forward_pass(const Instance& inst);

/// LS/LF ignoring resources with LF[sink] = anchor. Pass the CPM makespan
/// (EF of the sink) to get zero slack on the critical path.
LatestTimes backward_pass(const Instance& inst, int anchor);

/// Transitive predecessor/successor counts. Dummies are counted like any
/// other activity, so the source has M-1 successors.
struct ClosureCounts {
  std::vector<int> predecessors;
  std::vector<int> successors;
};

ClosureCounts closures(const Instance& inst);

/// The ten rule terminals.
enum class Attribute : std::uint8_t {
  kES,
  kEF,
  kLS,
  kLF,
  kTPC,
  kTSC,
  kRR,
  kAvgRReq,
  kMaxRReq,
  kMinRReq,
};

inline constexpr std::size_t kNumAttributes = 10;
inline constexpr std::array<Attribute, kNumAttributes> kAllAttributes = {
    Attribute::kES,  Attribute::kEF,  Attribute::kLS,      Attribute::kLF,      Attribute::kTPC,
    Attribute::kTSC, Attribute::kRR,  Attribute::kAvgRReq, Attribute::kMaxRReq, Attribute::kMinRReq};

std::string_view attribute_name(Attribute a);
std::optional<Attribute> parse_attribute(std::string_view name);
/// RR, AvgRReq, MaxRReq and MinRReq.
bool is_resource_attribute(Attribute a);

/// Normalized attributes (all in [0,1]) plus the raw CPM quantities the
/// built-in rules use.
class AttributeTable {
 public:
  AttributeTable() = default;

  int num_activities() const { return static_cast<int>(raw_es_.size()); }
  double value(int activity, Attribute a) const {
    return values_[static_cast<std::size_t>(activity) * kNumAttributes + static_cast<std::size_t>(a)];
  }
  std::span<const double> row(int activity) const {
    return {values_.data() + static_cast<std::size_t>(activity) * kNumAttributes, kNumAttributes};
  }

  std::span<const int> raw_es() const { return raw_es_; }
  std::span<const int> raw_ef() const { return raw_ef_; }
  std::span<const int> raw_ls() const { return raw_ls_; }
  std::span<const int> raw_lf() const { return raw_lf_; }
  std::span<const int> total_predecessors() const { return total_pred_; }
  std::span<const int> total_successors() const { return total_succ_; }

  /// Critical-path makespan, raw EF of the sink.
  int lower_bound() const { return lower_bound_; }

 private:
  friend AttributeTable attribute_table(const Instance& inst);

  std::vector<double> values_;  // row-major [activity][attribute]
  std::vector<int> raw_es_, raw_ef_, raw_ls_, raw_lf_;
  std::vector<int> total_pred_, total_succ_;
  int lower_bound_ = 0;
};

AttributeTable attribute_table(const Instance& inst);

/// Debug dump: id, activity, the ten attributes, the four raw times.
void write_attribute_csv(std::ostream& out, const Instance& inst, const AttributeTable& table,
                         bool header = true);

/// An instance bundled with its (static) attribute table; the unit every
/// evaluator works on.
struct Problem {
  explicit Problem(Instance i) : instance(std::move(i)), attributes(attribute_table(instance)) {}

  Instance instance;
  AttributeTable attributes;
};

}  // namespace mehh

#endif  // MEHH_ANALYSIS_HPP
