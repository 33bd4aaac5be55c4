// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "mzgen/ast.hpp"
#include "mzgen/diagnostics.hpp"
#include "mzgen/spec.hpp"

namespace mzgen {

// Static validity analysis. Emitted codes:
//   E001 missing include for a known global constraint (all_different)
//   E002 undeclared identifier / unknown function
//   E003 duplicate declaration
//   E004 no solve item
//   E005 range domain with lo > hi
//   E006 constant array index out of bounds
//   E007 type mismatch (bool where int is required, or vice versa)
//   E008 all_different applied to a non-array, or with wrong arity
//   E009 more than one solve item
//   W001 unused variable (warning)
// Deterministic and order-stable: sorted by span, then code.
std::vector<Diagnostic> validate(const ModelAst& ast);

/// The "Correct" verdict of a benchmark row: correct iff mismatches is empty.
struct ConformanceReport {
  bool correct = false;
  std::vector<std::string> mismatches;
  bool operator==(const ConformanceReport&) const = default;
};

/// Mechanized replacement for manual inspection of a generated model.
/// Checks, per spec: (a) variable form and count — scalar specs need exactly
/// variable_count scalar int declarations and no arrays, array specs need an
/// int array of exactly that length (auxiliary scalars are ignored);
/// (b) domain openness of every counted variable (any finite domain counts
/// as defined); (c) the constraint requirement — None forbids constraint
/// items, Simple wants at least one, AllDifferent wants an all_different
/// call covering all counted variables. A model with validity errors reports
/// correct=false with the single mismatch "model invalid".
ConformanceReport check_conformance(const ModelAst& ast, const ModelSpec& spec);

}  // namespace mzgen
