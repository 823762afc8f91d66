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

// Tree generation and variation operators shared by both hyper-heuristics.

#ifndef MEHH_VARIATION_HPP
#define MEHH_VARIATION_HPP

#include <utility>

#include "mehh/random.hpp"
#include "mehh/rule.hpp"

namespace mehh {

/// Every node is an operator until `height`, then a terminal.
RuleExpr generate_full(Rng& rng, int height);
/// Operators or terminals; a branch may stop once it reaches `min_height`.
RuleExpr generate_grow(Rng& rng, int min_height, int height);
/// Ramped half-and-half: target height uniform in [min_height, max_height],
/// then full or grow with equal probability.
RuleExpr random_individual(Rng& rng, int min_height = 2, int max_height = 5);

/// Subtree swap at uniformly chosen points (the root included). A child
/// higher than `height_limit` is replaced by its own parent.
std::pair<RuleExpr, RuleExpr> crossover(const RuleExpr& a, const RuleExpr& b, Rng& rng,
                                        int height_limit = kHeightLimit);

/// Replaces a uniformly chosen subtree with a fresh full tree of height
/// [0, 2]. Returns the parent unchanged if the child would exceed the limit.
RuleExpr mutate(const RuleExpr& a, Rng& rng, int height_limit = kHeightLimit);

}  // namespace mehh

#endif  // MEHH_VARIATION_HPP
