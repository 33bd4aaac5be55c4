// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mzgen/diagnostics.hpp"

namespace mzgen {

enum class TokKind {
  // keywords
  KwVar, KwInt, KwBool, KwArray, KwOf, KwConstraint, KwSolve, KwSatisfy,
  KwMinimize, KwMaximize, KwInclude, KwOutput, KwDiv, KwMod, KwNot,
  KwTrue, KwFalse,
  // literals and names
  Ident, IntLit, StringLit,
  // raw output payload (lexed in a separate mode after `output`)
  Payload,
  // punctuation / operators
  DotDot, Colon, Semi, Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace, Comma, And, Or,
  Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;           // identifier name, decoded string, or raw payload
  long long int_value = 0;    // valid for IntLit
  SourceSpan span{};
};

struct LexResult {
  std::vector<Token> tokens;            // always ends with an Eof token
  std::optional<Diagnostic> error;      // E100 on the first illegal character
  bool ok() const { return !error.has_value(); }
};

/// Tokenizes the MiniZinc subset. %-comments run to end of line and are
/// dropped. After an `output` keyword the lexer switches to payload mode and
/// captures everything up to the `;` at bracket depth zero as one Payload
/// token (string-literal aware, comments stripped). Never throws on arbitrary
/// byte input; the first illegal character stops lexing with an E100 error.
LexResult tokenize(std::string_view source);

/// Token spelling for diagnostics ("`;`", "identifier", ...).
std::string token_kind_name(TokKind kind);

}  // namespace mzgen
