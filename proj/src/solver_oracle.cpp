// SPDX-License-Identifier: Apache-2.0

// Exhaustive enumeration oracle. Deliberately written apart from the
// production solver: its own grounding walk, its own odometer enumeration
// and its own expression evaluator, sharing only the AST types and the
// grounded naming convention ("x", "q[1]" ... "q[n]").

#include <cstdint>
#include <map>

#include "mzgen/solver.hpp"

namespace mzgen {

namespace {

constexpr unsigned long long kMaxSpace = 1'000'000;

struct OracleVar {
  std::string name;
  std::vector<long long> domain;  // ascending, fully materialized
};

struct OracleArray {
  std::size_t first = 0;
  int len = 0;
};

struct OracleModel {
  std::vector<OracleVar> vars;
  std::map<std::string, std::size_t> scalars;
  std::map<std::string, OracleArray> arrays;
  std::vector<const Expr*> constraints;
};

std::vector<long long> domain_values(const VarDecl& decl, const SolveLimits& limits) {
  if (decl.base == BaseType::Bool) return {0, 1};
  if (const auto* range = std::get_if<RangeDomain>(&decl.domain)) {
    std::vector<long long> values;
    for (long long v = range->lo; v <= range->hi; ++v) {
      values.push_back(v);
      if (values.size() > kMaxSpace) break;  // caller's space guard rejects anyway
    }
    return values;
  }
  if (const auto* set = std::get_if<SetDomain>(&decl.domain)) return set->values;
  std::vector<long long> values;
  for (long long v = limits.open_lo; v <= limits.open_hi; ++v) values.push_back(v);
  return values;
}

OracleModel build_model(const ModelAst& ast, const SolveLimits& limits) {
  OracleModel model;
  unsigned __int128 space = 1;
  for (const auto& item : ast.items) {
    if (const auto* decl = item_as<VarDecl>(item)) {
      std::vector<long long> domain = domain_values(*decl, limits);
      int copies = decl->array_len.value_or(1);
      if (decl->array_len)
        model.arrays.emplace(decl->name, OracleArray{model.vars.size(), copies});
      else
        model.scalars.emplace(decl->name, model.vars.size());
      for (int i = 1; i <= copies; ++i) {
        std::string name = decl->array_len
                               ? decl->name + "[" + std::to_string(i) + "]"
                               : decl->name;
        space *= domain.empty() ? 0 : domain.size();
        if (space > kMaxSpace)
          throw SpaceTooLargeError("grounded search space exceeds " +
                                   std::to_string(kMaxSpace) + " assignments");
        model.vars.push_back(OracleVar{std::move(name), domain});
      }
    } else if (const auto* c = item_as<ConstraintItem>(item)) {
      model.constraints.push_back(&c->expr);
    }
  }
  return model;
}

// Evaluator with explicit undefined propagation: any undefined subterm makes
// the whole constraint unsatisfied.
struct Undefined {};
using OracleValue = std::variant<Undefined, long long, std::vector<long long>>;

OracleValue oracle_eval(const Expr& e, const OracleModel& model,
                        const std::vector<long long>& values);

long long truth(bool b) { return b ? 1 : 0; }

OracleValue oracle_eval_binary(const Binary& node, const OracleModel& model,
                               const std::vector<long long>& values) {
  OracleValue lv = oracle_eval(*node.lhs, model, values);
  OracleValue rv = oracle_eval(*node.rhs, model, values);
  const auto* a = std::get_if<long long>(&lv);
  const auto* b = std::get_if<long long>(&rv);
  if (!a || !b) return Undefined{};
  switch (node.op) {
    case BinaryOp::Add: return *a + *b;
    case BinaryOp::Sub: return *a - *b;
    case BinaryOp::Mul: return *a * *b;
    case BinaryOp::Div: return *b == 0 ? OracleValue{Undefined{}} : OracleValue{*a / *b};
    case BinaryOp::Mod: return *b == 0 ? OracleValue{Undefined{}} : OracleValue{*a % *b};
    case BinaryOp::Eq: return truth(*a == *b);
    case BinaryOp::Ne: return truth(*a != *b);
    case BinaryOp::Lt: return truth(*a < *b);
    case BinaryOp::Le: return truth(*a <= *b);
    case BinaryOp::Gt: return truth(*a > *b);
    case BinaryOp::Ge: return truth(*a >= *b);
    case BinaryOp::And: return truth(*a != 0 && *b != 0);
    case BinaryOp::Or: return truth(*a != 0 || *b != 0);
  }
  return Undefined{};
}

OracleValue oracle_eval(const Expr& e, const OracleModel& model,
                        const std::vector<long long>& values) {
  if (const auto* lit = std::get_if<IntLit>(&e.node)) return lit->value;
  if (const auto* lit = std::get_if<BoolLit>(&e.node)) return truth(lit->value);
  if (const auto* ident = std::get_if<Ident>(&e.node)) {
    auto scalar = model.scalars.find(ident->name);
    if (scalar != model.scalars.end()) return values[scalar->second];
    auto array = model.arrays.find(ident->name);
    if (array == model.arrays.end()) return Undefined{};
    std::vector<long long> elements(values.begin() + array->second.first,
                                    values.begin() + array->second.first +
                                        array->second.len);
    return elements;
  }
  if (const auto* access = std::get_if<ArrayAccess>(&e.node)) {
    auto array = model.arrays.find(access->array);
    if (array == model.arrays.end()) return Undefined{};
    OracleValue idx = oracle_eval(*access->index, model, values);
    const auto* i = std::get_if<long long>(&idx);
    if (!i || *i < 1 || *i > array->second.len) return Undefined{};
    return values[array->second.first + *i - 1];
  }
  if (const auto* lit = std::get_if<ArrayLit>(&e.node)) {
    std::vector<long long> elements;
    for (const auto& el : lit->elements) {
      OracleValue v = oracle_eval(el, model, values);
      const auto* scalar = std::get_if<long long>(&v);
      if (!scalar) return Undefined{};
      elements.push_back(*scalar);
    }
    return elements;
  }
  if (const auto* unary = std::get_if<Unary>(&e.node)) {
    OracleValue v = oracle_eval(*unary->arg, model, values);
    const auto* scalar = std::get_if<long long>(&v);
    if (!scalar) return Undefined{};
    return unary->op == UnaryOp::Neg ? -*scalar : truth(*scalar == 0);
  }
  if (const auto* binary = std::get_if<Binary>(&e.node))
    return oracle_eval_binary(*binary, model, values);
  if (const auto* call = std::get_if<Call>(&e.node)) {
    if (call->args.size() != 1) return Undefined{};
    OracleValue v = oracle_eval(call->args[0], model, values);
    const auto* list = std::get_if<std::vector<long long>>(&v);
    if (!list) return Undefined{};
    for (std::size_t i = 0; i < list->size(); ++i)
      for (std::size_t j = i + 1; j < list->size(); ++j)
        if ((*list)[i] == (*list)[j]) return truth(false);
    return truth(true);
  }
  return Undefined{};
}

bool all_constraints_hold(const OracleModel& model, const std::vector<long long>& values) {
  for (const Expr* c : model.constraints) {
    OracleValue v = oracle_eval(*c, model, values);
    const auto* scalar = std::get_if<long long>(&v);
    if (!scalar || *scalar == 0) return false;
  }
  return true;
}

}  // namespace

OracleSolutions brute_force_oracle(const ModelAst& ast, const SolveLimits& limits) {
  OracleModel model = build_model(ast, limits);

  OracleSolutions result;
  for (const auto& v : model.vars) result.variable_names.push_back(v.name);

  std::size_t n = model.vars.size();
  for (const auto& v : model.vars)
    if (v.domain.empty()) return result;  // empty domain: nothing to enumerate

  // Odometer over domain indices; rightmost digit spins fastest, so
  // assignments come out in ascending lexicographic order.
  std::vector<std::size_t> digits(n, 0);
  std::vector<long long> values(n, 0);
  for (std::size_t i = 0; i < n; ++i) values[i] = model.vars[i].domain[0];

  while (true) {
    if (all_constraints_hold(model, values)) result.solutions.push_back(values);

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < model.vars[pos].domain.size()) {
        values[pos] = model.vars[pos].domain[digits[pos]];
        break;
      }
      digits[pos] = 0;
      values[pos] = model.vars[pos].domain[0];
      if (pos == 0) return result;
    }
    if (n == 0) return result;  // single empty assignment already evaluated
  }
}

}  // namespace mzgen
