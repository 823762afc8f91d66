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

// Prefix (canonical) and infix text forms of RuleExpr.

#include <fmt/format.h>

#include <cctype>

#include "mehh/io.hpp"
#include "mehh/rule.hpp"

namespace mehh {
namespace {

bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s.front() == '-' ? 1 : 0;
  if (i >= s.size()) return false;
  if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != '.') return false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != 'e' && c != 'E' && c != '+' &&
        c != '-')
      return false;
  }
  return true;
}

void serialize_into(const RuleExpr& e, std::size_t& i, std::string& out) {
  const auto& n = e.nodes()[i++];
  switch (n.kind) {
    case Node::Kind::kTerminal: out += attribute_name(n.as_attribute()); return;
    case Node::Kind::kConstant: out += format_double(n.constant); return;
    case Node::Kind::kOperator:
      out += '(';
      out += op_name(n.as_op());
      for (int c = 0; c < n.arity(); ++c) {
        out += ' ';
        serialize_into(e, i, out);
      }
      out += ')';
      return;
  }
}

// Prefix form --------------------------------------------------------------

class PrefixParser {
 public:
  explicit PrefixParser(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(' || c == ')') {
        tokens_.push_back(text.substr(i, 1));
        ++i;
      } else {
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
               text[j] != ')')
          ++j;
        tokens_.push_back(text.substr(i, j - i));
        i = j;
      }
    }
  }

  RuleExpr parse() {
    if (tokens_.empty()) throw RuleError("empty rule");
    expr();
    if (pos_ != tokens_.size())
      throw RuleError(fmt::format("unexpected '{}' after complete expression", tokens_[pos_]));
    return RuleExpr(std::move(nodes_));
  }

 private:
  void expr() {
    if (pos_ >= tokens_.size()) throw RuleError("unexpected end of rule");
    const auto tok = tokens_[pos_++];
    if (tok == ")") throw RuleError("arity mismatch: unexpected ')'");
    if (tok == "(") {
      if (pos_ >= tokens_.size()) throw RuleError("unexpected end of rule");
      const auto name = tokens_[pos_++];
      const auto op = parse_op(name);
      if (!op) throw RuleError(fmt::format("unknown operator '{}'", name));
      nodes_.push_back(Node::op(*op));
      for (int c = 0; c < arity(*op); ++c) {
        if (pos_ < tokens_.size() && tokens_[pos_] == ")")
          throw RuleError(fmt::format("arity mismatch: {} takes {} operand(s), got {}", name, arity(*op), c));
        expr();
      }
      if (pos_ >= tokens_.size() || tokens_[pos_] != ")")
        throw RuleError(fmt::format("arity mismatch: {} takes {} operand(s), got more", name, arity(*op)));
      ++pos_;
      return;
    }
    if (const auto a = parse_attribute(tok)) {
      nodes_.push_back(Node::terminal(*a));
      return;
    }
    if (looks_numeric(tok)) {
      if (const auto v = parse_double(tok)) {
        nodes_.push_back(Node::literal(*v));
        return;
      }
    }
    throw RuleError(fmt::format("unknown symbol '{}'", tok));
  }

  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
  std::vector<Node> nodes_;
};

// Infix form ---------------------------------------------------------------

enum class Prec : int { kAdd = 1, kMul = 2, kUnary = 3, kAtom = 4 };

Prec prec_of(const Node& n) {
  if (!n.is_op()) return n.kind == Node::Kind::kConstant && n.constant < 0 ? Prec::kUnary : Prec::kAtom;
  switch (n.as_op()) {
    case Op::kAdd:
    case Op::kSub: return Prec::kAdd;
    case Op::kMul:
    case Op::kDiv: return Prec::kMul;
    case Op::kNeg1: return Prec::kUnary;
    case Op::kMax:
    case Op::kMin: return Prec::kAtom;
  }
  return Prec::kAtom;
}

std::string infix_at(const RuleExpr& e, std::size_t i);

std::string wrapped(const RuleExpr& e, std::size_t i, Prec min_prec, bool strict) {
  const Prec p = prec_of(e.nodes()[i]);
  const bool need = strict ? p <= min_prec : p < min_prec;
  auto s = infix_at(e, i);
  return need ? "(" + s + ")" : s;
}

std::string infix_at(const RuleExpr& e, std::size_t i) {
  const auto& n = e.nodes()[i];
  if (n.kind == Node::Kind::kTerminal) return std::string(attribute_name(n.as_attribute()));
  if (n.kind == Node::Kind::kConstant) return format_double(n.constant);
  const std::size_t a = i + 1;
  if (n.as_op() == Op::kNeg1) return "-" + wrapped(e, a, Prec::kUnary, false);
  const std::size_t b = e.subtree_end(a);
  switch (n.as_op()) {
    case Op::kAdd: return wrapped(e, a, Prec::kAdd, false) + " + " + wrapped(e, b, Prec::kAdd, true);
    case Op::kSub: return wrapped(e, a, Prec::kAdd, false) + " - " + wrapped(e, b, Prec::kAdd, true);
    case Op::kMul: return wrapped(e, a, Prec::kMul, false) + "*" + wrapped(e, b, Prec::kMul, true);
    case Op::kDiv: return wrapped(e, a, Prec::kMul, false) + "/" + wrapped(e, b, Prec::kMul, true);
    case Op::kMax: return "Max(" + infix_at(e, a) + ", " + infix_at(e, b) + ")";
    case Op::kMin: return "Min(" + infix_at(e, a) + ", " + infix_at(e, b) + ")";
    case Op::kNeg1: break;
  }
  return {};
}

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) { advance(); }

  RuleExpr parse() {
    auto e = expr();
    if (kind_ != Tok::kEnd) fail("unexpected trailing input");
    return e;
  }

 private:
  enum class Tok { kEnd, kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kPow, kLParen, kRParen, kComma };

  [[noreturn]] void fail(const std::string& what) const {
    throw RuleError(fmt::format("infix rule, column {}: {}", tok_start_ + 1, what));
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_start_ = pos_;
    if (pos_ >= text_.size()) {
      kind_ = Tok::kEnd;
      return;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = pos_;
      while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.')) ++j;
      if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
        ++j;
        if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      }
      lexeme_ = text_.substr(pos_, j - pos_);
      pos_ = j;
      kind_ = Tok::kNumber;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
      lexeme_ = text_.substr(pos_, j - pos_);
      pos_ = j;
      kind_ = Tok::kIdent;
      return;
    }
    ++pos_;
    switch (c) {
      case '+': kind_ = Tok::kPlus; return;
      case '-': kind_ = Tok::kMinus; return;
      case '*':
        if (pos_ < text_.size() && text_[pos_] == '*') {
          ++pos_;
          kind_ = Tok::kPow;
        } else {
          kind_ = Tok::kStar;
        }
        return;
      case '/': kind_ = Tok::kSlash; return;
      case '(': kind_ = Tok::kLParen; return;
      case ')': kind_ = Tok::kRParen; return;
      case ',': kind_ = Tok::kComma; return;
      default: fail(fmt::format("unexpected character '{}'", c));
    }
  }

  RuleExpr expr() {
    auto lhs = term();
    while (kind_ == Tok::kPlus || kind_ == Tok::kMinus) {
      const Op op = kind_ == Tok::kPlus ? Op::kAdd : Op::kSub;
      advance();
      lhs = RuleExpr::apply(op, lhs, term());
    }
    return lhs;
  }

  RuleExpr term() {
    auto lhs = unary();
    while (kind_ == Tok::kStar || kind_ == Tok::kSlash) {
      const Op op = kind_ == Tok::kStar ? Op::kMul : Op::kDiv;
      advance();
      lhs = RuleExpr::apply(op, lhs, unary());
    }
    return lhs;
  }

  RuleExpr unary() {
    if (kind_ == Tok::kMinus) {
      advance();
      return RuleExpr::apply(Op::kNeg1, unary());
    }
    if (kind_ == Tok::kPlus) {
      advance();
      return unary();
    }
    return power();
  }

  RuleExpr power() {
    auto base = primary();
    if (kind_ != Tok::kPow) return base;
    advance();
    if (kind_ != Tok::kNumber) fail("exponent must be a positive integer literal");
    const auto n = parse_int(lexeme_);
    if (!n || *n < 1 || *n > 16) fail("exponent must be an integer in 1..16");
    advance();
    auto out = base;
    for (long long i = 1; i < *n; ++i) out = RuleExpr::apply(Op::kMul, out, base);
    return out;
  }

  RuleExpr primary() {
    if (kind_ == Tok::kNumber) {
      const auto v = parse_double(lexeme_);
      if (!v) fail(fmt::format("bad number '{}'", lexeme_));
      advance();
      return RuleExpr::constant(*v);
    }
    if (kind_ == Tok::kLParen) {
      advance();
      auto e = expr();
      if (kind_ != Tok::kRParen) fail("expected ')'");
      advance();
      return e;
    }
    if (kind_ == Tok::kIdent) {
      const std::string name(lexeme_);
      advance();
      if (kind_ != Tok::kLParen) {
        if (const auto a = parse_attribute(name)) return RuleExpr::leaf(*a);
        fail(fmt::format("unknown attribute '{}'", name));
      }
      const auto op = parse_op(name);
      if (!op) fail(fmt::format("unknown function '{}'", name));
      advance();
      std::vector<RuleExpr> args{expr()};
      while (kind_ == Tok::kComma) {
        advance();
        args.push_back(expr());
      }
      if (kind_ != Tok::kRParen) fail("expected ')' after arguments");
      advance();
      if (arity(*op) == 1) {
        if (args.size() != 1) fail(fmt::format("{} takes one argument", name));
        return RuleExpr::apply(*op, args[0]);
      }
      const bool variadic = *op == Op::kMax || *op == Op::kMin;
      if (args.size() < 2 || (!variadic && args.size() != 2))
        fail(fmt::format("{} takes {} arguments", name, variadic ? "two or more" : "two"));
      auto out = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) out = RuleExpr::apply(*op, out, args[i]);
      return out;
    }
    fail("expected a number, attribute, function or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t tok_start_ = 0;
  Tok kind_ = Tok::kEnd;
  std::string_view lexeme_;
};

}  // namespace

std::string serialize(const RuleExpr& expr) {
  std::string out;
  std::size_t i = 0;
  serialize_into(expr, i, out);
  return out;
}

RuleExpr parse_rule(std::string_view text, int height_limit) {
  auto e = PrefixParser(text).parse();
  if (height_limit >= 0 && e.height() > height_limit)
    throw RuleError(fmt::format("rule height {} exceeds limit {}", e.height(), height_limit));
  return e;
}

std::string to_infix(const RuleExpr& expr) { return infix_at(expr, 0); }

RuleExpr parse_infix(std::string_view text) { return InfixParser(text).parse(); }

RuleExpr parse_any_rule(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    std::size_t i = 1;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
    if (parse_op(text.substr(i, j - i)) && j < text.size() && text[j] != '(' && text[j] != ',')
      return parse_rule(text, -1);
  }
  return parse_infix(text);
}

}  // namespace mehh
