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

#include "mehh/variation.hpp"

namespace mehh {
namespace {

constexpr double kTerminalRatio =
    static_cast<double>(kNumAttributes) / static_cast<double>(kNumAttributes + kNumOps);

Node random_terminal(Rng& rng) {
  return Node::terminal(kAllAttributes[uniform_below(rng, kNumAttributes)]);
}

Node random_op(Rng& rng) { return Node::op(kAllOps[uniform_below(rng, kNumOps)]); }

template <typename StopFn>
void generate(Rng& rng, int depth, StopFn&& stop, std::vector<Node>& out) {
  if (stop(depth)) {
    out.push_back(random_terminal(rng));
    return;
  }
  const Node n = random_op(rng);
  out.push_back(n);
  for (int c = 0; c < n.arity(); ++c) generate(rng, depth + 1, stop, out);
}

}  // namespace

RuleExpr generate_full(Rng& rng, int height) {
  std::vector<Node> nodes;
  generate(rng, 0, [&](int depth) { return depth >= height; }, nodes);
  return RuleExpr(std::move(nodes));
}

RuleExpr generate_grow(Rng& rng, int min_height, int height) {
  std::vector<Node> nodes;
  generate(
      rng, 0,
      [&](int depth) { return depth >= height || (depth >= min_height && uniform01(rng) < kTerminalRatio); },
      nodes);
  return RuleExpr(std::move(nodes));
}

RuleExpr random_individual(Rng& rng, int min_height, int max_height) {
  const int h = uniform_int(rng, min_height, max_height);
  return bernoulli(rng, 0.5) ? generate_full(rng, h) : generate_grow(rng, min_height, h);
}

std::pair<RuleExpr, RuleExpr> crossover(const RuleExpr& a, const RuleExpr& b, Rng& rng, int height_limit) {
  const auto i = static_cast<std::size_t>(uniform_below(rng, a.size()));
  const auto j = static_cast<std::size_t>(uniform_below(rng, b.size()));
  auto child_a = a.replace_subtree(i, b.subtree(j));
  auto child_b = b.replace_subtree(j, a.subtree(i));
  if (child_a.height() > height_limit) child_a = a;
  if (child_b.height() > height_limit) child_b = b;
  return {std::move(child_a), std::move(child_b)};
}

RuleExpr mutate(const RuleExpr& a, Rng& rng, int height_limit) {
  const auto i = static_cast<std::size_t>(uniform_below(rng, a.size()));
  const int h = uniform_int(rng, 0, 2);
  auto child = a.replace_subtree(i, generate_full(rng, h));
  if (child.height() > height_limit) return a;
  return child;
}

}  // namespace mehh
