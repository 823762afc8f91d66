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

// MAP-Elites grid: three feature dimensions, one elite per cell.

#ifndef MEHH_ARCHIVE_HPP
#define MEHH_ARCHIVE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mehh/rule.hpp"

namespace mehh {

struct Features {
  int nodes = 0;
  int resource_nodes = 0;
  double slack = 0.0;

  friend bool operator==(const Features&, const Features&) = default;
};

struct Individual {
  RuleExpr expr;
  double fitness = 0.0;  // mean training deviation, lower is better
  Features features;
};

struct Domain {
  double lo = 0.0;
  double hi = 1.0;
};

struct GridConfig {
  int bins = 5;
  /// Node count, resource-node count, normalized slack.
  std::array<Domain, 3> domains{{{4.0, 127.0}, {0.0, 30.0}, {1.65, 2.00}}};

  std::size_t total_cells() const {
    return static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins);
  }
};

using Cell = std::array<int, 3>;

/// floor(bins * (v - lo) / (hi - lo)) clamped to [0, bins - 1].
int bin_value(double v, const Domain& d, int bins);
Cell bin(const Features& f, const GridConfig& cfg);

class Archive {
 public:
  explicit Archive(GridConfig cfg);

  const GridConfig& config() const { return cfg_; }

  /// Inserts when the cell is empty or its incumbent has strictly greater
  /// fitness. Returns whether the cell changed.
  bool insert(Individual ind);

  const std::optional<Individual>& at(const Cell& c) const { return cells_[flat(c)]; }
  std::size_t occupancy() const { return occupancy_; }
  double coverage() const;

  /// Occupied cells in flat-index order.
  std::vector<std::pair<Cell, const Individual*>> elites() const;
  std::vector<Individual> individuals() const;

  std::size_t flat(const Cell& c) const;
  Cell unflat(std::size_t index) const;

 private:
  GridConfig cfg_;
  std::vector<std::optional<Individual>> cells_;
  std::size_t occupancy_ = 0;
};

}  // namespace mehh

#endif  // MEHH_ARCHIVE_HPP
