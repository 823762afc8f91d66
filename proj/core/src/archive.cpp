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

#include "mehh/archive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mehh {

int bin_value(double v, const Domain& d, int bins) {
  if (!(d.hi > d.lo)) throw std::invalid_argument("empty feature domain");
  const double scaled = std::floor(bins * (v - d.lo) / (d.hi - d.lo));
  if (!(scaled >= 0.0)) return 0;  // also catches NaN
  if (scaled >= bins - 1) return bins - 1;
  return static_cast<int>(scaled);
}

Cell bin(const Features& f, const GridConfig& cfg) {
  return {bin_value(f.nodes, cfg.domains[0], cfg.bins), bin_value(f.resource_nodes, cfg.domains[1], cfg.bins),
          bin_value(f.slack, cfg.domains[2], cfg.bins)};
}

Archive::Archive(GridConfig cfg) : cfg_(cfg) {
  if (cfg_.bins < 1) throw std::invalid_argument("bins must be positive");
  cells_.resize(cfg_.total_cells());
}

std::size_t Archive::flat(const Cell& c) const {
  const auto b = static_cast<std::size_t>(cfg_.bins);
  return (static_cast<std::size_t>(c[0]) * b + static_cast<std::size_t>(c[1])) * b + static_cast<std::size_t>(c[2]);
}

Cell Archive::unflat(std::size_t index) const {
  const auto b = static_cast<std::size_t>(cfg_.bins);
  return {static_cast<int>(index / (b * b)), static_cast<int>((index / b) % b), static_cast<int>(index % b)};
}

bool Archive::insert(Individual ind) {
  auto& slot = cells_[flat(bin(ind.features, cfg_))];
  if (slot && !(slot->fitness > ind.fitness)) return false;
  if (!slot) ++occupancy_;
  slot = std::move(ind);
  return true;
}

double Archive::coverage() const {
  return 100.0 * static_cast<double>(occupancy_) / static_cast<double>(cells_.size());
}

std::vector<std::pair<Cell, const Individual*>> Archive::elites() const {
  std::vector<std::pair<Cell, const Individual*>> out;
  out.reserve(occupancy_);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i]) out.emplace_back(unflat(i), &*cells_[i]);
  return out;
}

std::vector<Individual> Archive::individuals() const {
  std::vector<Individual> out;
  out.reserve(occupancy_);
  for (const auto& c : cells_)
    if (c) out.push_back(*c);
  return out;
}

}  // namespace mehh
