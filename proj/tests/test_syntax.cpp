// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "ast_gen.hpp"
#include "mzgen/lexer.hpp"
#include "mzgen/parser.hpp"
#include "mzgen/printer.hpp"

using namespace mzgen;

TEST_CASE("tokenize recognizes the smallest declaration") {
  LexResult lexed = tokenize("var int: x;");
  REQUIRE(lexed.ok());
  REQUIRE(lexed.tokens.size() == 6);  // 5 tokens + Eof
  CHECK(lexed.tokens[0].kind == TokKind::KwVar);
  CHECK(lexed.tokens[1].kind == TokKind::KwInt);
  CHECK(lexed.tokens[2].kind == TokKind::Colon);
  CHECK(lexed.tokens[3].kind == TokKind::Ident);
  CHECK(lexed.tokens[3].text == "x");
  CHECK(lexed.tokens[4].kind == TokKind::Semi);
  CHECK(lexed.tokens[5].kind == TokKind::Eof);
}

TEST_CASE("tokenize drops percent comments") {
  LexResult lexed = tokenize("% Bot: here are the variables\nvar 1..10: a;");
  REQUIRE(lexed.ok());
  // var 1 .. 10 : a ;  — seven tokens once the comment is gone.
  REQUIRE(lexed.tokens.size() == 8);  // + Eof
  CHECK(lexed.tokens[0].kind == TokKind::KwVar);
  CHECK(lexed.tokens[1].kind == TokKind::IntLit);
  CHECK(lexed.tokens[2].kind == TokKind::DotDot);
  CHECK(lexed.tokens[3].kind == TokKind::IntLit);
  CHECK(lexed.tokens[3].int_value == 10);
  CHECK(lexed.tokens[4].kind == TokKind::Colon);
  CHECK(lexed.tokens[5].kind == TokKind::Ident);
  CHECK(lexed.tokens[6].kind == TokKind::Semi);
  CHECK(lexed.tokens[0].span.start_line == 2);  // comment line skipped
}

TEST_CASE("tokenize flags illegal characters with a span") {
  LexResult lexed = tokenize("var int: x @ 3;");
  REQUIRE(!lexed.ok());
  CHECK(lexed.error->code == "E100");
  REQUIRE(lexed.error->span.has_value());
  CHECK(lexed.error->span->start_line == 1);
  CHECK(lexed.error->span->start_col == 12);
}

TEST_CASE("tokenize survives arbitrary bytes") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(0, 60);
  for (int i = 0; i < 300; ++i) {
    std::string junk;
    int n = len(rng);
    for (int k = 0; k < n; ++k) junk += static_cast<char>(byte(rng));
    LexResult lexed = tokenize(junk);  // must not crash
    CHECK(!lexed.tokens.empty());      // at least Eof
  }
}

TEST_CASE("parse_model handles the minimal model") {
  ParseResult parsed = parse_model("var int: x;\nsolve satisfy;");
  REQUIRE(parsed.ok());
  REQUIRE(parsed.ast.items.size() == 2);
  const auto* decl = item_as<VarDecl>(parsed.ast.items[0]);
  REQUIRE(decl);
  CHECK(decl->name == "x");
  CHECK(decl->base == BaseType::Int);
  CHECK(std::holds_alternative<OpenDomain>(decl->domain));
  CHECK(!decl->array_len.has_value());
  const auto* solve = item_as<SolveItem>(parsed.ast.items[1]);
  REQUIRE(solve);
  CHECK(solve->kind == SolveKind::Satisfy);
}

TEST_CASE("parse_model handles the all_different instance shape") {
  ParseResult parsed = parse_model(
      "include \"alldifferent.mzn\";\n"
      "array[1..10] of var 1..10: q;\n"
      "constraint all_different(q);\n"
      "solve satisfy;");
  REQUIRE(parsed.ok());
  REQUIRE(parsed.ast.items.size() == 4);
  CHECK(item_as<Include>(parsed.ast.items[0])->path == "alldifferent.mzn");
  const auto* decl = item_as<VarDecl>(parsed.ast.items[1]);
  REQUIRE(decl);
  CHECK(decl->name == "q");
  CHECK(decl->domain == Domain{RangeDomain{1, 10}});
  CHECK(decl->array_len == 10);
  const auto* constraint = item_as<ConstraintItem>(parsed.ast.items[2]);
  REQUIRE(constraint);
  const auto* call = std::get_if<Call>(&constraint->expr.node);
  REQUIRE(call);
  CHECK(call->callee == "all_different");
  REQUIRE(call->args.size() == 1);
  CHECK(call->args[0] == Expr{Ident{"q"}});
}

TEST_CASE("parse_model reports a missing colon at the identifier") {
  ParseResult parsed = parse_model("var int x;");
  REQUIRE(!parsed.ok());
  REQUIRE(parsed.diagnostics.size() == 1);
  const Diagnostic& d = parsed.diagnostics[0];
  CHECK(d.code == "E101");
  CHECK(d.severity == Severity::Error);
  REQUIRE(d.span.has_value());
  CHECK(d.span->start_line == 1);
  CHECK(d.span->start_col == 9);  // the 'x'
}

TEST_CASE("parser recovers at semicolons so later errors still surface") {
  ParseResult parsed = parse_model(
      "var int x;\n"
      "var 1..5: ok;\n"
      "constraint ok > ;\n"
      "solve satisfy;");
  CHECK(parsed.diagnostics.size() == 2);
  // The healthy declarations still made it into the AST.
  int decls = 0, solves = 0;
  for (const auto& item : parsed.ast.items) {
    if (item_as<VarDecl>(item)) ++decls;
    if (item_as<SolveItem>(item)) ++solves;
  }
  CHECK(decls == 1);
  CHECK(solves == 1);
}

TEST_CASE("array index sets must start at one") {
  ParseResult parsed = parse_model("array[0..9] of var int: q;\nsolve satisfy;");
  REQUIRE(!parsed.ok());
  CHECK(parsed.diagnostics[0].code == "E102");
}

TEST_CASE("negative domain bounds parse") {
  ParseResult parsed = parse_model("var -5..5: t;\nsolve satisfy;");
  REQUIRE(parsed.ok());
  CHECK(item_as<VarDecl>(parsed.ast.items[0])->domain == Domain{RangeDomain{-5, 5}});
}

TEST_CASE("set domains are normalized to ascending order") {
  ParseResult parsed = parse_model("var {3, 1, 3, 2}: s;\nsolve satisfy;");
  REQUIRE(parsed.ok());
  CHECK(item_as<VarDecl>(parsed.ast.items[0])->domain ==
        Domain{SetDomain{{1, 2, 3}}});
}

TEST_CASE("output payloads stay opaque but balanced") {
  ParseResult parsed =
      parse_model("output [\"x = \", show(x), \"\\n\"];\nsolve satisfy;");
  REQUIRE(parsed.ok());
  CHECK(item_as<OutputItem>(parsed.ast.items[0])->raw ==
        "[\"x = \", show(x), \"\\n\"]");

  // A ';' inside a payload string does not end the item.
  parsed = parse_model("output [\"a;b\"];\nsolve satisfy;");
  REQUIRE(parsed.ok());
  CHECK(parsed.ast.items.size() == 2);
}

TEST_CASE("print_model emits the canonical form") {
  ParseResult parsed = parse_model("var  int :  x ;");
  REQUIRE(parsed.ok());
  CHECK(print_model(parsed.ast) == "var int: x;\n");

  ModelAst ast;
  ast.items.push_back(Item{VarDecl{"q", BaseType::Int, RangeDomain{1, 3}, 2}});
  CHECK(print_model(ast) == "array[1..2] of var 1..3: q;\n");
}

TEST_CASE("expression printing respects precedence") {
  auto reprint = [](const std::string& source) {
    ParseResult parsed = parse_model("constraint " + source + ";");
    REQUIRE(parsed.ok());
    return print_expr(item_as<ConstraintItem>(parsed.ast.items[0])->expr);
  };
  CHECK(reprint("1 + 2 * 3") == "1 + 2 * 3");
  CHECK(reprint("(1 + 2) * 3") == "(1 + 2) * 3");
  CHECK(reprint("1 - (2 - 3)") == "1 - (2 - 3)");
  CHECK(reprint("not (x /\\ y)") == "not (x /\\ y)");
  CHECK(reprint("-(x + y) < z \\/ b") == "-(x + y) < z \\/ b");
  CHECK(reprint("all_different([x, y, q[2]])") == "all_different([x, y, q[2]])");
}

TEST_CASE("spans of parse diagnostics lie within the input") {
  const std::string source = "var int x;\nconstraint + ;\nsolve satisfy;";
  int lines = 3;
  ParseResult parsed = parse_model(source);
  REQUIRE(!parsed.ok());
  for (const auto& d : parsed.diagnostics) {
    REQUIRE(d.span.has_value());
    CHECK(d.span->start_line >= 1);
    CHECK(d.span->end_line <= lines);
    CHECK(d.span->start_col >= 1);
    CHECK(std::tie(d.span->start_line, d.span->start_col) <=
          std::tie(d.span->end_line, d.span->end_col));
  }
}

TEST_CASE("round-trip: parse of print is identity on generated asts") {
  testgen::AstGenerator gen(42);
  for (int i = 0; i < 300; ++i) {
    ModelAst ast = gen.model();
    std::string printed = print_model(ast);
    CAPTURE(printed);
    ParseResult reparsed = parse_model(printed);
    REQUIRE(reparsed.ok());
    CHECK(reparsed.ast == ast);
    CHECK(print_model(reparsed.ast) == printed);  // printing is a fixpoint
  }
}

TEST_CASE("round-trip holds for source that uses every construct") {
  const std::string source =
      "include \"globals.mzn\";\n"
      "array[1..4] of var {2, 4, 6}: q;\n"
      "var bool: flag;\n"
      "var -3..3: t;\n"
      "constraint not flag \\/ q[1] + t * 2 <= q[2] div 2 mod 3;\n"
      "constraint all_different([q[1], q[2], -t]);\n"
      "solve minimize t + q[3];\n"
      "output [\"t = \", show(t), \"\\n\"];\n";
  ParseResult first = parse_model(source);
  REQUIRE(first.ok());
  std::string printed = print_model(first.ast);
  ParseResult second = parse_model(printed);
  REQUIRE(second.ok());
  CHECK(second.ast == first.ast);
  CHECK(print_model(second.ast) == printed);
}
