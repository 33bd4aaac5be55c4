// SPDX-License-Identifier: Apache-2.0

#include "mzgen/spec.hpp"

namespace mzgen {

std::optional<std::string> spec_invariant_violation(const ModelSpec& spec) {
  if (spec.variable_count < 1) return "variable_count must be at least 1";
  if (spec.domain_kind == DomainKind::Open && spec.defined_domain)
    return "an open domain carries no bounds";
  if (spec.defined_domain && spec.defined_domain->lo > spec.defined_domain->hi)
    return "defined_domain lower bound exceeds upper bound";
  return std::nullopt;
}

std::vector<ModelSpec> builtin_instances() {
  auto make = [](int id, VariableKind var, DomainKind dom, ConstraintKind con) {
    ModelSpec spec;
    spec.id = id;
    spec.variable_kind = var;
    spec.variable_count = 10;
    spec.domain_kind = dom;
    spec.constraint_kind = con;
    if (dom == DomainKind::Defined) spec.defined_domain = Bounds{1, 10};
    return spec;
  };
  using enum VariableKind;
  using enum DomainKind;
  using enum ConstraintKind;
  return {
      make(1, DiscreteScalars, Open, None),
      make(2, DiscreteScalars, Open, Simple),
      make(3, DiscreteScalars, Defined, None),
      make(4, DiscreteScalars, Defined, Simple),
      make(5, DiscreteScalars, Defined, AllDifferent),
      make(6, DiscreteArray, Open, None),
      make(7, DiscreteArray, Open, Simple),
      make(8, DiscreteArray, Defined, None),
      make(9, DiscreteArray, Defined, Simple),
      make(10, DiscreteArray, Defined, AllDifferent),
  };
}

std::string spec_feature_sentence(const ModelSpec& spec) {
  std::string sentence = "A source code with ";
  if (spec.variable_kind == VariableKind::DiscreteArray) sentence += "an array of ";
  sentence += std::to_string(spec.variable_count);
  sentence += " discrete variables ";

  std::string domain_part = spec.domain_kind == DomainKind::Open
                                ? "without domain"
                                : "with a defined domain";
  std::string constraint_part;
  switch (spec.constraint_kind) {
    case ConstraintKind::None: constraint_part = "without constraints"; break;
    case ConstraintKind::Simple: constraint_part = "with a constraint"; break;
    case ConstraintKind::AllDifferent:
      constraint_part = "with an all_different constraint";
      break;
  }
  // "with" distributes over the conjunction: "with a defined domain and an
  // all_different constraint", but "without domain and with a constraint".
  if (domain_part.rfind("with ", 0) == 0 && constraint_part.rfind("with ", 0) == 0)
    constraint_part.erase(0, 5);

  sentence += domain_part;
  sentence += " and ";
  sentence += constraint_part;
  sentence += '.';
  return sentence;
}

std::string variable_kind_label(VariableKind k) {
  return k == VariableKind::DiscreteScalars ? "discrete" : "array disc.";
}

std::string domain_kind_label(DomainKind k) {
  return k == DomainKind::Open ? "open" : "defined";
}

std::string constraint_kind_label(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::None: return "no";
    case ConstraintKind::Simple: return "yes";
    case ConstraintKind::AllDifferent: return "all_diff";
  }
  return {};
}

}  // namespace mzgen
