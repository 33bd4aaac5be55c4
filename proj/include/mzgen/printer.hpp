// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mzgen/ast.hpp"

namespace mzgen {

/// Canonical form: one item per line with a trailing newline, `lo..hi`
/// ranges, single spaces around binary operators, `name: ` after domains.
/// parse(print(a)) == a for every well-formed ast, and printing is a
/// fixpoint: print(parse(print(a))) == print(a).
std::string print_model(const ModelAst& ast);

std::string print_item(const Item& item);
std::string print_expr(const Expr& expr);
std::string print_domain(const Domain& domain);

}  // namespace mzgen
