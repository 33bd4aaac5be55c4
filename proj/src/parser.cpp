// SPDX-License-Identifier: Apache-2.0

#include "mzgen/parser.hpp"

#include <algorithm>

#include "mzgen/lexer.hpp"

namespace mzgen {

namespace {

// Thrown inside one item's parse; recovery catches it and skips to `;`.
struct SyntaxError {
  Diagnostic diagnostic;
};

SourceSpan merge(const SourceSpan& a, const SourceSpan& b) {
  SourceSpan s = a;
  if (std::tie(b.end_line, b.end_col) > std::tie(s.end_line, s.end_col)) {
    s.end_line = b.end_line;
    s.end_col = b.end_col;
  }
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ParseResult run() {
    ParseResult result;
    while (!at(TokKind::Eof)) {
      try {
        Item item = parse_item();
        expect(TokKind::Semi, "expected `;` after item");
        result.ast.items.push_back(std::move(item));
      } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
        recover_to_semi();
      }
    }
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at(TokKind kind) const { return peek().kind == kind; }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool accept(TokKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  const Token& expect(TokKind kind, const std::string& what) {
    if (!at(kind)) fail(what + ", found " + token_kind_name(peek().kind));
    return advance();
  }

  [[noreturn]] void fail(const std::string& message) {
    throw SyntaxError{make_error("E101", "syntax error: " + message, peek().span)};
  }

  [[noreturn]] void fail_at(const SourceSpan& span, const std::string& code,
                            const std::string& message) {
    throw SyntaxError{make_error(code, message, span)};
  }

  void recover_to_semi() {
    while (!at(TokKind::Eof)) {
      if (advance().kind == TokKind::Semi) return;
    }
  }

  long long parse_signed_int() {
    bool neg = accept(TokKind::Minus);
    const Token& t = expect(TokKind::IntLit, "expected integer");
    return neg ? -t.int_value : t.int_value;
  }

  Item parse_item() {
    SourceSpan start = peek().span;
    switch (peek().kind) {
      case TokKind::KwInclude: {
        advance();
        const Token& path = expect(TokKind::StringLit, "expected string after `include`");
        return Item{Include{path.text}, merge(start, path.span)};
      }
      case TokKind::KwArray:
      case TokKind::KwVar:
        return parse_vardecl(start);
      case TokKind::KwConstraint: {
        advance();
        Expr expr = parse_expr();
        SourceSpan span = merge(start, expr.span);
        return Item{ConstraintItem{std::move(expr)}, span};
      }
      case TokKind::KwSolve: {
        advance();
        if (accept(TokKind::KwSatisfy))
          return Item{SolveItem{SolveKind::Satisfy, std::nullopt}, start};
        SolveKind kind;
        if (accept(TokKind::KwMinimize)) {
          kind = SolveKind::Minimize;
        } else if (accept(TokKind::KwMaximize)) {
          kind = SolveKind::Maximize;
        } else {
          fail("expected `satisfy`, `minimize` or `maximize` after `solve`");
        }
        Expr objective = parse_expr();
        SourceSpan span = merge(start, objective.span);
        return Item{SolveItem{kind, std::move(objective)}, span};
      }
      case TokKind::KwOutput: {
        advance();
        const Token& payload = expect(TokKind::Payload, "expected output payload");
        return Item{OutputItem{payload.text}, merge(start, payload.span)};
      }
      default:
        fail("expected an item (include, var, array, constraint, solve or output)");
    }
  }

  Item parse_vardecl(const SourceSpan& start) {
    std::optional<int> array_len;
    if (accept(TokKind::KwArray)) {
      expect(TokKind::LBracket, "expected `[` after `array`");
      const Token& lo = expect(TokKind::IntLit, "expected index range lower bound");
      if (lo.int_value != 1)
        fail_at(lo.span, "E102", "array index set must start at 1");
      expect(TokKind::DotDot, "expected `..` in index range");
      const Token& hi = expect(TokKind::IntLit, "expected index range upper bound");
      if (hi.int_value < 1)
        fail_at(hi.span, "E102", "array index set must start at 1");
      expect(TokKind::RBracket, "expected `]` after index range");
      expect(TokKind::KwOf, "expected `of` after index range");
      array_len = static_cast<int>(hi.int_value);
    }
    expect(TokKind::KwVar, "expected `var`");
    auto [base, domain] = parse_domain();
    expect(TokKind::Colon, "expected `:` after domain");
    const Token& name = expect(TokKind::Ident, "expected variable name");
    return Item{VarDecl{name.text, base, std::move(domain), array_len},
                merge(start, name.span)};
  }

  std::pair<BaseType, Domain> parse_domain() {
    if (accept(TokKind::KwInt)) return {BaseType::Int, OpenDomain{}};
    if (accept(TokKind::KwBool)) return {BaseType::Bool, OpenDomain{}};
    if (at(TokKind::LBrace)) {
      advance();
      std::vector<long long> values;
      values.push_back(parse_signed_int());
      while (accept(TokKind::Comma)) values.push_back(parse_signed_int());
      expect(TokKind::RBrace, "expected `}` after set literal");
      // Normalize: sorted and deduplicated, so equal domains compare equal.
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      return {BaseType::Int, SetDomain{std::move(values)}};
    }
    if (at(TokKind::IntLit) || at(TokKind::Minus)) {
      long long lo = parse_signed_int();
      expect(TokKind::DotDot, "expected `..` in range domain");
      long long hi = parse_signed_int();
      return {BaseType::Int, RangeDomain{lo, hi}};
    }
    fail("expected a domain (`int`, `bool`, a range or a set literal)");
  }

  // Precedence climbing, loosest binding first.
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    while (at(TokKind::Or)) {
      advance();
      Expr rhs = parse_and();
      SourceSpan span = merge(lhs.span, rhs.span);
      lhs = Expr{Binary{BinaryOp::Or, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_comparison();
    while (at(TokKind::And)) {
      advance();
      Expr rhs = parse_comparison();
      SourceSpan span = merge(lhs.span, rhs.span);
      lhs = Expr{Binary{BinaryOp::And, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  static std::optional<BinaryOp> comparison_op(TokKind kind) {
    switch (kind) {
      case TokKind::Eq: return BinaryOp::Eq;
      case TokKind::Ne: return BinaryOp::Ne;
      case TokKind::Lt: return BinaryOp::Lt;
      case TokKind::Le: return BinaryOp::Le;
      case TokKind::Gt: return BinaryOp::Gt;
      case TokKind::Ge: return BinaryOp::Ge;
      default: return std::nullopt;
    }
  }

  Expr parse_comparison() {
    Expr lhs = parse_additive();
    while (auto op = comparison_op(peek().kind)) {
      advance();
      Expr rhs = parse_additive();
      SourceSpan span = merge(lhs.span, rhs.span);
      lhs = Expr{Binary{*op, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (at(TokKind::Plus) || at(TokKind::Minus)) {
      BinaryOp op = at(TokKind::Plus) ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      Expr rhs = parse_multiplicative();
      SourceSpan span = merge(lhs.span, rhs.span);
      lhs = Expr{Binary{op, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (at(TokKind::Star) || at(TokKind::KwDiv) || at(TokKind::KwMod)) {
      BinaryOp op = at(TokKind::Star)    ? BinaryOp::Mul
                    : at(TokKind::KwDiv) ? BinaryOp::Div
                                         : BinaryOp::Mod;
      advance();
      Expr rhs = parse_unary();
      SourceSpan span = merge(lhs.span, rhs.span);
      lhs = Expr{Binary{op, std::move(lhs), std::move(rhs)}, span};
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at(TokKind::Minus)) {
      SourceSpan start = advance().span;
      Expr arg = parse_unary();
      SourceSpan span = merge(start, arg.span);
      return Expr{Unary{UnaryOp::Neg, std::move(arg)}, span};
    }
    if (at(TokKind::KwNot)) {
      SourceSpan start = advance().span;
      Expr arg = parse_unary();
      SourceSpan span = merge(start, arg.span);
      return Expr{Unary{UnaryOp::Not, std::move(arg)}, span};
    }
    return parse_atom();
  }

  Expr parse_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::IntLit: {
        advance();
        return Expr{IntLit{tok.int_value}, tok.span};
      }
      case TokKind::KwTrue:
        advance();
        return Expr{BoolLit{true}, tok.span};
      case TokKind::KwFalse:
        advance();
        return Expr{BoolLit{false}, tok.span};
      case TokKind::LParen: {
        advance();
        Expr inner = parse_expr();
        expect(TokKind::RParen, "expected `)`");
        return inner;
      }
      case TokKind::LBracket: {
        SourceSpan start = advance().span;
        std::vector<Expr> elements;
        if (!at(TokKind::RBracket)) {
          elements.push_back(parse_expr());
          while (accept(TokKind::Comma)) elements.push_back(parse_expr());
        }
        const Token& close = expect(TokKind::RBracket, "expected `]` after array literal");
        return Expr{ArrayLit{std::move(elements)}, merge(start, close.span)};
      }
      case TokKind::Ident: {
        advance();
        if (at(TokKind::LParen)) {
          advance();
          std::vector<Expr> args;
          if (!at(TokKind::RParen)) {
            args.push_back(parse_expr());
            while (accept(TokKind::Comma)) args.push_back(parse_expr());
          }
          const Token& close = expect(TokKind::RParen, "expected `)` after arguments");
          return Expr{Call{tok.text, std::move(args)}, merge(tok.span, close.span)};
        }
        if (at(TokKind::LBracket)) {
          advance();
          Expr index = parse_expr();
          const Token& close = expect(TokKind::RBracket, "expected `]` after index");
          return Expr{ArrayAccess{tok.text, std::move(index)}, merge(tok.span, close.span)};
        }
        return Expr{Ident{tok.text}, tok.span};
      }
      default:
        fail("expected an expression, found " + token_kind_name(tok.kind));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse_model(std::string_view source) {
  LexResult lexed = tokenize(source);
  if (!lexed.ok()) {
    ParseResult result;
    result.diagnostics.push_back(*lexed.error);
    return result;
  }
  ParseResult result = Parser(std::move(lexed.tokens)).run();
  sort_diagnostics(result.diagnostics);
  return result;
}

}  // namespace mzgen
