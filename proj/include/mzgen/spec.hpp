// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mzgen {

enum class VariableKind { DiscreteScalars, DiscreteArray };
enum class DomainKind { Open, Defined };
enum class ConstraintKind { None, Simple, AllDifferent };

struct Bounds {
  long long lo = 0;
  long long hi = 0;
  bool operator==(const Bounds&) const = default;
};

/// Declarative description of the model a generation run should produce:
/// how many discrete variables, scalar or array form, open or defined
/// domain, and which constraint requirement applies. `defined_domain` is
/// only a suggestion for the generator; conformance accepts any finite
/// domain.
struct ModelSpec {
  int id = 0;
  VariableKind variable_kind = VariableKind::DiscreteScalars;
  int variable_count = 1;
  DomainKind domain_kind = DomainKind::Open;
  ConstraintKind constraint_kind = ConstraintKind::None;
  std::optional<Bounds> defined_domain;

  bool operator==(const ModelSpec&) const = default;
};

/// Checks the ModelSpec invariants (count >= 1, open domains carry no
/// bounds). Returns an explanation for the first violation, or nullopt.
std::optional<std::string> spec_invariant_violation(const ModelSpec& spec);

/// The 10 benchmark instances, in order. ids 1..10, ten variables each,
/// defined-domain rows suggesting bounds 1..10. Pure: every call returns
/// the same list.
std::vector<ModelSpec> builtin_instances();

/// One English sentence describing the requested features, e.g.
/// "A source code with 10 discrete variables without domain and without
/// constraints." Deterministic for a given spec.
std::string spec_feature_sentence(const ModelSpec& spec);

// Vocabulary used by reports and config files.
std::string variable_kind_label(VariableKind k);   // "discrete" / "array disc."
std::string domain_kind_label(DomainKind k);       // "open" / "defined"
std::string constraint_kind_label(ConstraintKind k);  // "no" / "yes" / "all_diff"

}  // namespace mzgen
