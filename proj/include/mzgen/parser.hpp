// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "mzgen/ast.hpp"
#include "mzgen/diagnostics.hpp"

namespace mzgen {

/// Result of parsing one model source. When diagnostics is non-empty the ast
/// holds whatever items survived error recovery (the parser skips to the next
/// `;` after a syntax error so one bad item does not hide later ones).
struct ParseResult {
  ModelAst ast;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

/// Recursive-descent parser for the subset grammar:
///
///   model      := { item ";" }
///   item       := include | vardecl | constraint | solve | output
///   include    := "include" STRING
///   vardecl    := ["array" "[" INT ".." INT "]" "of"] "var" domain ":" IDENT
///   domain     := "int" | "bool" | INT ".." INT | "{" INT {"," INT} "}"
///   constraint := "constraint" expr
///   solve      := "solve" ("satisfy" | ("minimize"|"maximize") expr)
///   output     := "output" <balanced-bracket payload>
///
/// Expression precedence, loosest first: \/  /\  comparisons  + -  * div mod
/// then unary (- not) and postfix/atoms. Binary operators associate left.
/// Array index sets must be `1..n` literals; other lower bounds are rejected
/// with E102. Integers in domain positions may carry a leading minus.
ParseResult parse_model(std::string_view source);

}  // namespace mzgen
