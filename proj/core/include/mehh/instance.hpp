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

#ifndef MEHH_INSTANCE_HPP
#define MEHH_INSTANCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mehh {

/// Raised when an instance violates a structural invariant (cycle, missing
/// dummy, requirement above capacity, ...).
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text parsers. `line()` is 1-based; 0 means the problem
/// concerns the file as a whole.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A single-mode RCPSP project.
///
/// Activities are addressed by 0-based index; the activity ID used in files
/// and reports is index + 1. Index 0 is the dummy source and index M-1 the
/// dummy sink, both with zero duration and zero requirements. Instances are
/// validated on construction and immutable afterwards.
class Instance {
 public:
  Instance(std::string id, std::vector<int> durations,
           std::vector<std::vector<int>> requirements,
           std::vector<int> capacities,
           std::vector<std::vector<int>> successors,
           std::optional<int> horizon = std::nullopt);

  const std::string& id() const { return id_; }
  /// M, including both dummies.
  int num_activities() const { return static_cast<int>(durations_.size()); }
  /// M - 2, the count the benchmark literature reports ("30 activities").
  int num_real_activities() const { return num_activities() - 2; }
  int num_resources() const { return static_cast<int>(capacities_.size()); }

  int source() const { return 0; }
  int sink() const { return num_activities() - 1; }
  bool is_dummy(int j) const { return j == source() || j == sink(); }

  int duration(int j) const { return durations_[static_cast<std::size_t>(j)]; }
  std::span<const int> durations() const { return durations_; }
  std::span<const int> requirements(int j) const {
    return {requirements_.data() + static_cast<std::size_t>(j) * capacities_.size(),
            capacities_.size()};
  }
  int requirement(int j, int k) const { return requirements(j)[static_cast<std::size_t>(k)]; }
  int capacity(int k) const { return capacities_[static_cast<std::size_t>(k)]; }
  std::span<const int> capacities() const { return capacities_; }

  std::span<const int> successors(int j) const { return successors_[static_cast<std::size_t>(j)]; }
  std::span<const int> predecessors(int j) const { return predecessors_[static_cast<std::size_t>(j)]; }
  /// A topological order of all activities, starting at the source.
  std::span<const int> topological_order() const { return topo_order_; }

  int horizon() const { return horizon_; }

  Instance with_id(std::string id) const {
    Instance copy = *this;
    copy.id_ = std::move(id);
    return copy;
  }

 private:
  std::string id_;
  std::vector<int> durations_;
  std::vector<int> requirements_;  // row-major [activity][resource]
  std::vector<int> capacities_;
  std::vector<std::vector<int>> successors_;
  std::vector<std::vector<int>> predecessors_;
  std::vector<int> topo_order_;
  int horizon_ = 0;
};

/// Equality of durations, requirements, capacities and precedence arcs.
/// Ignores the id and the horizon.
bool same_project(const Instance& a, const Instance& b);

Instance parse_psplib(std::string_view text, std::string id = {});

/// How a Patterson file was normalized.
enum class PattersonLayout {
  kWithDummies,   // file already carries source and sink
  kDummiesAdded,  // parser inserted a dummy source and sink
};

Instance parse_patterson(std::string_view text, std::string id = {},
                         PattersonLayout* layout = nullptr);

/// Canonical line-oriented format used for fixtures; see docs/formats.md.
std::string write_canonical(const Instance& inst);
Instance parse_canonical(std::string_view text);

/// Dispatches on the file extension: .sm -> PSPLib, .rcp/.RCP -> Patterson,
/// .inst -> canonical. The id is the file stem, except that canonical files
/// keep the id they carry.
Instance load_instance_file(const std::string& path,
                            PattersonLayout* layout = nullptr);

/// Per-instance generator parameters from a sidecar CSV.
struct InstanceMeta {
  std::string id;
  std::string set_name;
  std::vector<std::pair<std::string, double>> params;  // header order

  std::optional<double> param(std::string_view name) const;
  /// Generator parameters as a tuple, used to group instances into
  /// parameter combinations.
  std::vector<double> combination_key() const;
};

/// Header must be `id,OS,RU,RC` or `id,NC,RF,RS` (columns in any order).
std::vector<InstanceMeta> load_meta(std::string_view csv_text,
                                    std::string set_name = {});

/// RC >= 0.6 and RU >= 3.
bool is_hard(const InstanceMeta& meta);

}  // namespace mehh

#endif  // MEHH_INSTANCE_HPP
