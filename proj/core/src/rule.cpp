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

#include "mehh/rule.hpp"

#include <algorithm>
#include <cmath>

namespace mehh {

int arity(Op op) { return op == Op::kNeg1 ? 1 : 2; }

std::string_view op_name(Op op) {
  switch (op) {
    case Op::kAdd: return "Add";
    case Op::kMul: return "Mul";
    case Op::kSub: return "Sub";
    case Op::kDiv: return "Div";
    case Op::kMax: return "Max";
    case Op::kMin: return "Min";
    case Op::kNeg1: return "Neg1";
  }
  return "?";
}

std::optional<Op> parse_op(std::string_view name) {
  for (auto op : kAllOps)
    if (op_name(op) == name) return op;
  return std::nullopt;
}

RuleExpr::RuleExpr(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw RuleError("empty expression");
  long open = 1;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (open == 0) throw RuleError("trailing nodes after a complete expression");
    const auto& n = nodes_[i];
    if (n.kind == Node::Kind::kOperator && n.code >= kNumOps) throw RuleError("unknown operator code");
    if (n.kind == Node::Kind::kTerminal && n.code >= kNumAttributes)
      throw RuleError("unknown terminal code");
    if (n.kind == Node::Kind::kConstant && !std::isfinite(n.constant))
      throw RuleError("non-finite constant");
    open += n.arity() - 1;
  }
  if (open != 0) throw RuleError("operator is missing operands");
}

RuleExpr RuleExpr::apply(Op op, const RuleExpr& a) {
  if (arity(op) != 1) throw RuleError(std::string(op_name(op)) + " takes two operands");
  std::vector<Node> n{Node::op(op)};
  n.insert(n.end(), a.nodes_.begin(), a.nodes_.end());
  return RuleExpr(std::move(n));
}

RuleExpr RuleExpr::apply(Op op, const RuleExpr& a, const RuleExpr& b) {
  if (arity(op) != 2) throw RuleError(std::string(op_name(op)) + " takes one operand");
  std::vector<Node> n{Node::op(op)};
  n.insert(n.end(), a.nodes_.begin(), a.nodes_.end());
  n.insert(n.end(), b.nodes_.begin(), b.nodes_.end());
  return RuleExpr(std::move(n));
}

std::size_t RuleExpr::subtree_end(std::size_t i) const {
  long open = 1;
  std::size_t j = i;
  while (open > 0) open += nodes_[j++].arity() - 1;
  return j;
}

int RuleExpr::height(std::size_t i) const {
  const std::size_t end = subtree_end(i);
  std::vector<int> stack;
  for (std::size_t j = end; j-- > i;) {
    const int a = nodes_[j].arity();
    int h = 0;
    for (int c = 0; c < a; ++c) {
      h = std::max(h, stack.back() + 1);
      stack.pop_back();
    }
    stack.push_back(h);
  }
  return stack.back();
}

int RuleExpr::depth_of(std::size_t i) const {
  // Stack of remaining child slots per open ancestor.
  std::vector<int> open;
  for (std::size_t j = 0;; ++j) {
    const int depth = static_cast<int>(open.size());
    if (j == i) return depth;
    if (!open.empty()) --open.back();
    if (nodes_[j].arity() > 0) open.push_back(nodes_[j].arity());
    while (!open.empty() && open.back() == 0) open.pop_back();
  }
}

RuleExpr RuleExpr::replace_subtree(std::size_t i, const RuleExpr& replacement) const {
  const std::size_t end = subtree_end(i);
  std::vector<Node> n(nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
  n.insert(n.end(), replacement.nodes_.begin(), replacement.nodes_.end());
  n.insert(n.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
  return RuleExpr(std::move(n));
}

RuleExpr RuleExpr::subtree(std::size_t i) const {
  return RuleExpr(std::vector<Node>(nodes_.begin() + static_cast<std::ptrdiff_t>(i),
                                    nodes_.begin() + static_cast<std::ptrdiff_t>(subtree_end(i))));
}

bool RuleExpr::has_constants() const {
  return std::ranges::any_of(nodes_, [](const Node& n) { return n.kind == Node::Kind::kConstant; });
}

double apply_op(Op op, double a, double b) {
  double r = 0.0;
  switch (op) {
    case Op::kAdd: r = a + b; break;
    case Op::kMul: r = a * b; break;
    case Op::kSub: r = a - b; break;
    case Op::kDiv: r = b > 0.0 ? a / b : 0.0; break;
    case Op::kMax: r = a > b ? a : b; break;
    case Op::kMin: r = a < b ? a : b; break;
    case Op::kNeg1: r = -a; break;
  }
  return std::clamp(r, -kSaturation, kSaturation);
}

namespace {

double eval_row(std::span<const Node> nodes, std::span<const double> row, std::vector<double>& stack) {
  stack.clear();
  for (std::size_t j = nodes.size(); j-- > 0;) {
    const auto& n = nodes[j];
    switch (n.kind) {
      case Node::Kind::kTerminal: stack.push_back(row[n.code]); break;
      case Node::Kind::kConstant: stack.push_back(n.constant); break;
      case Node::Kind::kOperator: {
        const Op op = n.as_op();
        const double a = stack.back();
        stack.pop_back();
        double b = 0.0;
        if (arity(op) == 2) {
          b = stack.back();
          stack.pop_back();
        }
        stack.push_back(apply_op(op, a, b));
        break;
      }
    }
  }
  return stack.back();
}

}  // namespace

double eval_expr(const RuleExpr& expr, const AttributeTable& attrs, int activity) {
  std::vector<double> stack;
  return eval_row(expr.nodes(), attrs.row(activity), stack);
}

std::vector<double> eval_all(const RuleExpr& expr, const AttributeTable& attrs) {
  std::vector<double> out(static_cast<std::size_t>(attrs.num_activities()));
  std::vector<double> stack;
  stack.reserve(expr.size());
  for (int j = 0; j < attrs.num_activities(); ++j)
    out[static_cast<std::size_t>(j)] = eval_row(expr.nodes(), attrs.row(j), stack);
  return out;
}

int node_count(const RuleExpr& expr) { return static_cast<int>(expr.size()); }

int resource_node_count(const RuleExpr& expr) {
  return static_cast<int>(std::ranges::count_if(expr.nodes(), [](const Node& n) {
    return n.kind == Node::Kind::kTerminal && is_resource_attribute(n.as_attribute());
  }));
}

}  // namespace mehh
