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

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mehh/io.hpp"
#include "mehh/rule.hpp"
#include "mehh/variation.hpp"

#ifndef MEHH_TEST_DATA_DIR
#error "MEHH_TEST_DATA_DIR must point at tests/data"
#endif

namespace mehh {
namespace {

using A = Attribute;

RuleExpr leaf(A a) { return RuleExpr::leaf(a); }

TEST(Ops, ProtectedDivision) {
  EXPECT_EQ(apply_op(Op::kDiv, 5.0, 0.0), 0.0);
  EXPECT_EQ(apply_op(Op::kDiv, 5.0, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(apply_op(Op::kDiv, 5.0, 2.0), 2.5);
}

TEST(Ops, Saturation) {
  const double big = std::numeric_limits<double>::max();
  EXPECT_EQ(apply_op(Op::kMul, big, 2.0), big);
  EXPECT_EQ(apply_op(Op::kMul, big, -2.0), -big);
  EXPECT_EQ(apply_op(Op::kAdd, big, big), big);
  EXPECT_EQ(apply_op(Op::kSub, -big, big), -big);
  EXPECT_EQ(apply_op(Op::kDiv, big, 1e-300), big);
}

TEST(Ops, NamesRoundTrip) {
  for (auto op : kAllOps) EXPECT_EQ(parse_op(op_name(op)), op);
  EXPECT_EQ(arity(Op::kNeg1), 1);
  EXPECT_EQ(arity(Op::kMax), 2);
}

TEST(Eval, NegatesLeaf) {
  const Instance inst("r", {0, 2, 0}, {{0, 0}, {2, 0}, {0, 0}}, {4, 5}, {{1}, {2}, {}});
  const auto t = attribute_table(inst);
  EXPECT_DOUBLE_EQ(eval_expr(RuleExpr::apply(Op::kNeg1, leaf(A::kAvgRReq)), t, 1), -0.25);
}

TEST(Eval, HandTreeMatchesInterpreter) {
  const auto t = attribute_table(testing::chain_instance());
  const auto e = RuleExpr::apply(Op::kMax, RuleExpr::apply(Op::kSub, leaf(A::kES), leaf(A::kEF)),
                                 RuleExpr::apply(Op::kMin, leaf(A::kTSC), leaf(A::kTPC)));
  // ES(A)=0, EF(A)=3/5, TSC(A)=2/3, TPC(A)=1/3.
  EXPECT_DOUBLE_EQ(eval_expr(e, t, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(eval_expr(e, t, 1), testing::interpret(e, t, 1));
}

TEST(Eval, RandomTreesMatchInterpreter) {
  Rng rng(7);
  const Instance inst = testing::synthetic_instance({}, 3);
  const auto t = attribute_table(inst);
  for (int i = 0; i < 500; ++i) {
    const auto e = random_individual(rng, 0, kHeightLimit);
    const auto all = eval_all(e, t);
    for (int j = 0; j < inst.num_activities(); ++j) {
      const double v = eval_expr(e, t, j);
      ASSERT_TRUE(std::isfinite(v)) << serialize(e);
      ASSERT_EQ(v, testing::interpret(e, t, j)) << serialize(e);
      ASSERT_EQ(v, all[static_cast<std::size_t>(j)]);
    }
  }
}

TEST(Counts, Examples) {
  EXPECT_EQ(node_count(leaf(A::kES)), 1);
  EXPECT_EQ(resource_node_count(leaf(A::kES)), 0);
  const auto add = RuleExpr::apply(Op::kAdd, leaf(A::kRR), leaf(A::kMaxRReq));
  EXPECT_EQ(node_count(add), 3);
  EXPECT_EQ(resource_node_count(add), 2);
  const auto neg = RuleExpr::apply(Op::kNeg1, RuleExpr::apply(Op::kDiv, leaf(A::kAvgRReq), leaf(A::kTSC)));
  EXPECT_EQ(node_count(neg), 4);
  EXPECT_EQ(resource_node_count(neg), 1);
}

TEST(Expr, HeightAndSubtrees) {
  const auto e = parse_rule("(Add ES (Neg1 (Mul TSC LF)))");
  EXPECT_EQ(e.height(), 3);
  EXPECT_EQ(e.subtree_end(0), e.size());
  EXPECT_EQ(e.subtree_end(1), 2U);
  EXPECT_EQ(e.depth_of(4), 3);
  EXPECT_EQ(serialize(e.subtree(2)), "(Neg1 (Mul TSC LF))");
  EXPECT_EQ(serialize(e.replace_subtree(2, leaf(A::kRR))), "(Add ES RR)");
  EXPECT_EQ(leaf(A::kES).height(), 0);
}

TEST(Expr, RejectsMalformedNodeSequences) {
  EXPECT_THROW(RuleExpr(std::vector<Node>{}), RuleError);
  EXPECT_THROW(RuleExpr(std::vector<Node>{Node::op(Op::kAdd), Node::terminal(A::kES)}), RuleError);
  EXPECT_THROW(RuleExpr(std::vector<Node>{Node::terminal(A::kES), Node::terminal(A::kEF)}), RuleError);
}

TEST(Serialize, RoundTripsExample) {
  const std::string s = "(Add ES (Neg1 TSC))";
  EXPECT_EQ(serialize(parse_rule(s)), s);
  EXPECT_EQ(serialize(parse_rule("  ( Add   ES\n(Neg1 TSC) ) ")), s);
}

TEST(Serialize, Errors) {
  EXPECT_THROW(parse_rule("(Add ES)"), RuleError);
  EXPECT_THROW(parse_rule("(Add ES EF LS)"), RuleError);
  EXPECT_THROW(parse_rule("(Foo ES EF)"), RuleError);
  EXPECT_THROW(parse_rule("XX"), RuleError);
  EXPECT_THROW(parse_rule("(Add ES EF"), RuleError);
  EXPECT_THROW(parse_rule("(Add ES EF))"), RuleError);
  EXPECT_THROW(parse_rule(""), RuleError);
}

TEST(Serialize, HeightLimit) {
  std::string deep = "ES";
  for (int i = 0; i < 8; ++i) deep = "(Neg1 " + deep + ")";
  EXPECT_THROW(parse_rule(deep), RuleError);
  EXPECT_EQ(parse_rule(deep, -1).height(), 8);
}

TEST(Serialize, RandomTreesRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto e = random_individual(rng);
    const auto back = parse_rule(serialize(e));
    ASSERT_EQ(back, e);
    ASSERT_EQ(node_count(back), node_count(e));
    ASSERT_EQ(resource_node_count(back), resource_node_count(e));
    ASSERT_LE(resource_node_count(e), node_count(e));
    ASSERT_EQ(parse_infix(to_infix(e)), e) << to_infix(e);
  }
}

TEST(Infix, Printing) {
  EXPECT_EQ(to_infix(parse_rule("(Add ES (Neg1 TSC))")), "ES + -TSC");
  EXPECT_EQ(to_infix(parse_rule("(Mul (Add ES EF) LS)")), "(ES + EF)*LS");
  EXPECT_EQ(to_infix(parse_rule("(Max LS (Div RR TPC))")), "Max(LS, RR/TPC)");
}

TEST(Infix, Parsing) {
  EXPECT_EQ(serialize(parse_infix("ES - 2*LS")), "(Sub ES (Mul 2 LS))");
  EXPECT_EQ(serialize(parse_infix("-AvgRReq - EF")), "(Sub (Neg1 AvgRReq) EF)");
  EXPECT_EQ(serialize(parse_infix("Min(AvgRReq, TSC, EF)")), "(Min (Min AvgRReq TSC) EF)");
  EXPECT_EQ(serialize(parse_infix("ES**3")), "(Mul (Mul ES ES) ES)");
  EXPECT_EQ(serialize(parse_infix("1/(LS*RR)")), "(Div 1 (Mul LS RR))");
  EXPECT_THROW(parse_infix("ES +"), RuleError);
  EXPECT_THROW(parse_infix("Max(ES)"), RuleError);
  EXPECT_THROW(parse_infix("Foo(ES, EF)"), RuleError);
}

TEST(Infix, AutoDetect) {
  EXPECT_EQ(parse_any_rule("(Add ES EF)"), parse_any_rule("ES + EF"));
  EXPECT_EQ(parse_any_rule("(ES + EF)*LS"), parse_infix("(ES + EF)*LS"));
}

TEST(PublishedRules, ParseAndEvaluate) {
  std::istringstream in(read_text_file(std::string(MEHH_TEST_DATA_DIR) + "/published_rules.tsv"));
  std::string line;
  std::getline(in, line);  // header
  const Instance inst = testing::synthetic_instance({}, 9);
  const auto t = attribute_table(inst);
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    const auto e = parse_any_rule(line.substr(tab + 1));
    ++count;
    // Printing and reparsing keeps the tree, constants included.
    EXPECT_EQ(parse_rule(serialize(e), -1), e) << line;
    for (int j = 0; j < inst.num_activities(); ++j) EXPECT_TRUE(std::isfinite(eval_expr(e, t, j)));
  }
  EXPECT_EQ(count, 5);
}

TEST(Builtins, Examples) {
  const Instance chain = testing::chain_instance();
  const auto t = attribute_table(chain);
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kSPT, chain, t, 1), 3.0);
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kMTS, chain, t, 1), -2.0);
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kGRPW, chain, t, 1), -5.0);
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kFIFO, chain, t, 2), 3.0);
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kLFT, chain, t, 1), 3.0);
}

TEST(Builtins, GrdIsDurationTimesTotalRequest) {
  const Instance inst("g", {0, 3, 0}, {{0, 0}, {2, 1}, {0, 0}}, {4, 5}, {{1}, {2}, {}});
  EXPECT_DOUBLE_EQ(eval_builtin(BuiltinRule::kGRD, inst, attribute_table(inst), 1), -9.0);
}

TEST(Builtins, RandIsSeededAndBounded) {
  const Instance inst = testing::synthetic_instance({}, 5, "x");
  const auto t = attribute_table(inst);
  const auto a = eval_builtin_all(BuiltinRule::kRAND, inst, t, 1);
  EXPECT_EQ(a, eval_builtin_all(BuiltinRule::kRAND, inst, t, 1));
  EXPECT_NE(a, eval_builtin_all(BuiltinRule::kRAND, inst, t, 2));
  for (double v : a) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Builtins, NamesAndOrder) {
  for (auto b : kAllBuiltins) EXPECT_EQ(parse_builtin(builtin_name(b)), b);
  EXPECT_EQ(parse_builtin("mts"), BuiltinRule::kMTS);
  EXPECT_FALSE(parse_builtin("ES").has_value());
  EXPECT_EQ(builtin_name(kAllBuiltins[0]), "EST");
  EXPECT_EQ(builtin_name(kAllBuiltins[9]), "GRD");
}

TEST(PriorityRule, ParsesEitherKind) {
  EXPECT_TRUE(parse_priority_rule("LFT").builtin().has_value());
  EXPECT_EQ(parse_priority_rule("LFT").label(), "LFT");
  const auto r = parse_priority_rule("(Add ES EF)");
  EXPECT_FALSE(r.builtin().has_value());
  EXPECT_EQ(r.label(), "(Add ES EF)");
  EXPECT_THROW(parse_priority_rule("nonsense rule"), RuleError);
}

TEST(PriorityRule, EsLeafRanksLikeEst) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Problem p(testing::synthetic_instance({}, seed));
    const auto es = PriorityRule(leaf(A::kES)).priorities(p);
    const auto est = PriorityRule(BuiltinRule::kEST).priorities(p);
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = 0; j < es.size(); ++j) ASSERT_EQ(es[i] < es[j], est[i] < est[j]);
  }
}

}  // namespace
}  // namespace mehh
