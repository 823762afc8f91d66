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

#ifndef MEHH_RULE_HPP
#define MEHH_RULE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mehh/analysis.hpp"

namespace mehh {

enum class Op : std::uint8_t { kAdd, kMul, kSub, kDiv, kMax, kMin, kNeg1 };

inline constexpr std::size_t kNumOps = 7;
inline constexpr Op kAllOps[kNumOps] = {Op::kAdd, Op::kMul, Op::kSub, Op::kDiv,
                                        Op::kMax, Op::kMin, Op::kNeg1};

int arity(Op op);
std::string_view op_name(Op op);
std::optional<Op> parse_op(std::string_view name);

/// Default static height limit for evolved rules.
inline constexpr int kHeightLimit = 7;

/// Magnitude every intermediate result is clamped to.
inline constexpr double kSaturation = std::numeric_limits<double>::max();

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One node of a prefix-ordered expression. Constants never come out of the
/// tree generators; they exist so simplified, hand-written rules (which
/// contain literals such as 2 or 1) can be represented.
struct Node {
  enum class Kind : std::uint8_t { kOperator, kTerminal, kConstant };

  Kind kind = Kind::kTerminal;
  std::uint8_t code = 0;  // Op or Attribute
  double constant = 0.0;

  static Node op(Op o) { return {Kind::kOperator, static_cast<std::uint8_t>(o), 0.0}; }
  static Node terminal(Attribute a) { return {Kind::kTerminal, static_cast<std::uint8_t>(a), 0.0}; }
  static Node literal(double v) { return {Kind::kConstant, 0, v}; }

  bool is_op() const { return kind == Kind::kOperator; }
  Op as_op() const { return static_cast<Op>(code); }
  Attribute as_attribute() const { return static_cast<Attribute>(code); }
  int arity() const { return is_op() ? mehh::arity(as_op()) : 0; }

  friend bool operator==(const Node&, const Node&) = default;
};

/// Arithmetic priority rule stored as a prefix-order node sequence.
///
/// Lower values are scheduled first. Height counts edges, so a single leaf
/// has height 0.
class RuleExpr {
 public:
  /// A single ES leaf.
  RuleExpr() : nodes_{Node::terminal(Attribute::kES)} {}
  /// Throws RuleError unless `nodes` is one well-formed prefix expression.
  explicit RuleExpr(std::vector<Node> nodes);

  static RuleExpr leaf(Attribute a) { return RuleExpr(std::vector<Node>{Node::terminal(a)}); }
  static RuleExpr constant(double v) { return RuleExpr(std::vector<Node>{Node::literal(v)}); }
  static RuleExpr apply(Op op, const RuleExpr& a);
  static RuleExpr apply(Op op, const RuleExpr& a, const RuleExpr& b);

  std::span<const Node> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  /// One past the last node of the subtree rooted at `i`.
  std::size_t subtree_end(std::size_t i) const;
  /// Height of the subtree rooted at `i`.
  int height(std::size_t i = 0) const;
  /// Depth (edges from the root) of node `i`.
  int depth_of(std::size_t i) const;

  /// Copy with the subtree at `i` replaced by `replacement`.
  RuleExpr replace_subtree(std::size_t i, const RuleExpr& replacement) const;
  RuleExpr subtree(std::size_t i) const;

  bool has_constants() const;

  friend bool operator==(const RuleExpr&, const RuleExpr&) = default;

 private:
  std::vector<Node> nodes_;
};

/// Applies one operator with the protected-division and saturation rules.
double apply_op(Op op, double a, double b);

/// Priority of one activity.
double eval_expr(const RuleExpr& expr, const AttributeTable& attrs, int activity);
/// Priorities of every activity of an instance.
std::vector<double> eval_all(const RuleExpr& expr, const AttributeTable& attrs);

/// Internal plus leaf nodes.
int node_count(const RuleExpr& expr);
/// Leaves reading RR, AvgRReq, MaxRReq or MinRReq.
int resource_node_count(const RuleExpr& expr);

/// Canonical prefix form, e.g. "(Add ES (Neg1 TSC))".
std::string serialize(const RuleExpr& expr);
/// Inverse of serialize. Rejects unknown symbols, arity mismatches and trees
/// higher than `height_limit` (pass a negative limit to disable the check).
RuleExpr parse_rule(std::string_view text, int height_limit = kHeightLimit);

/// Human-readable infix form, e.g. "ES + -TSC" or "Max(LS, RR / TPC)".
std::string to_infix(const RuleExpr& expr);
/// Parses infix rules such as the simplified published ones:
/// + - * / ** unary minus, numbers, Max/Min with two or more arguments.
/// Division maps to protected Div; x**n for integer n >= 1 expands to a
/// product. No height limit is applied.
RuleExpr parse_infix(std::string_view text);

/// Accepts either the prefix or the infix form.
RuleExpr parse_any_rule(std::string_view text);

// Built-in human-designed rules -------------------------------------------

enum class BuiltinRule : std::uint8_t { kEST, kEFT, kLST, kLFT, kMTS, kFIFO, kSPT, kGRPW, kGRD, kRAND };

inline constexpr BuiltinRule kAllBuiltins[] = {
    BuiltinRule::kEST,  BuiltinRule::kEFT,  BuiltinRule::kLST,  BuiltinRule::kLFT,
    BuiltinRule::kSPT,  BuiltinRule::kFIFO, BuiltinRule::kMTS,  BuiltinRule::kRAND,
    BuiltinRule::kGRPW, BuiltinRule::kGRD};

enum class Extremum : std::uint8_t { kMin, kMax };

std::string_view builtin_name(BuiltinRule rule);
std::optional<BuiltinRule> parse_builtin(std::string_view name);
Extremum builtin_extremum(BuiltinRule rule);

/// Priority for the minimizing scheduler: Max rules are negated, FIFO is the
/// activity ID and RAND a uniform draw fixed by (seed, instance id, activity).
double eval_builtin(BuiltinRule rule, const Instance& inst, const AttributeTable& attrs,
                    int activity, std::uint64_t rand_seed = 0);
std::vector<double> eval_builtin_all(BuiltinRule rule, const Instance& inst,
                                     const AttributeTable& attrs, std::uint64_t rand_seed = 0);

/// Either an expression tree or a built-in rule.
class PriorityRule {
 public:
  PriorityRule(RuleExpr expr) : expr_(std::move(expr)) {}  // NOLINT(google-explicit-constructor)
  PriorityRule(BuiltinRule b, std::uint64_t rand_seed = 0)  // NOLINT(google-explicit-constructor)
      : builtin_(b), rand_seed_(rand_seed) {}

  std::vector<double> priorities(const Problem& p) const;
  /// Builtin name or serialized expression.
  std::string label() const;

  const std::optional<BuiltinRule>& builtin() const { return builtin_; }
  const RuleExpr& expr() const { return expr_; }

 private:
  RuleExpr expr_;
  std::optional<BuiltinRule> builtin_;
  std::uint64_t rand_seed_ = 0;
};

/// Parses a builtin name (case-insensitive) or a rule in either text form.
PriorityRule parse_priority_rule(std::string_view text, std::uint64_t rand_seed = 0);

}  // namespace mehh

#endif  // MEHH_RULE_HPP
