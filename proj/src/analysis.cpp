// SPDX-License-Identifier: Apache-2.0

#include "mzgen/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mzgen {

namespace {

bool is_known_global(const std::string& callee) {
  return callee == "all_different" || callee == "alldifferent";
}

bool include_satisfies_globals(const ModelAst& ast) {
  for (const auto& item : ast.items) {
    if (const auto* inc = item_as<Include>(item)) {
      if (inc->path == "alldifferent.mzn" || inc->path == "globals.mzn") return true;
    }
  }
  return false;
}

enum class ValueType { Int, Bool, IntArray, BoolArray, Unknown };

bool is_array_type(ValueType t) {
  return t == ValueType::IntArray || t == ValueType::BoolArray;
}

const char* type_name(ValueType t) {
  switch (t) {
    case ValueType::Int: return "int";
    case ValueType::Bool: return "bool";
    case ValueType::IntArray: return "array of int";
    case ValueType::BoolArray: return "array of bool";
    case ValueType::Unknown: return "unknown";
  }
  return "unknown";
}

struct DeclInfo {
  const VarDecl* decl = nullptr;
  SourceSpan span{};
};

class Validator {
 public:
  explicit Validator(const ModelAst& ast) : ast_(ast) {}

  std::vector<Diagnostic> run() {
    collect_declarations();
    has_global_include_ = include_satisfies_globals(ast_);

    const SolveItem* solve = nullptr;
    for (const auto& item : ast_.items) {
      if (const auto* c = item_as<ConstraintItem>(item)) {
        ValueType t = infer(c->expr);
        if (t != ValueType::Bool && t != ValueType::Unknown)
          error("E007",
                "type mismatch: constraint expression must be boolean, found " +
                    std::string(type_name(t)),
                c->expr.span);
      } else if (const auto* s = item_as<SolveItem>(item)) {
        if (solve)
          error("E009", "more than one solve item", item.span);
        else
          solve = s;
        if (s->objective) {
          ValueType t = infer(*s->objective);
          if (t != ValueType::Int && t != ValueType::Unknown)
            error("E007",
                  "type mismatch: objective must be an integer expression, found " +
                      std::string(type_name(t)),
                  s->objective->span);
        }
      }
    }
    if (!solve) error("E004", "model has no solve item", std::nullopt);

    check_domains();
    check_unused();

    sort_diagnostics(diags_);
    return std::move(diags_);
  }

 private:
  void error(std::string code, std::string message, std::optional<SourceSpan> span) {
    diags_.push_back(make_error(std::move(code), std::move(message), span));
  }

  void collect_declarations() {
    for (const auto& item : ast_.items) {
      const auto* decl = item_as<VarDecl>(item);
      if (!decl) continue;
      auto [it, inserted] = decls_.emplace(decl->name, DeclInfo{decl, item.span});
      if (!inserted)
        error("E003", "identifier `" + decl->name + "` already declared", item.span);
    }
  }

  void check_domains() {
    for (const auto& item : ast_.items) {
      const auto* decl = item_as<VarDecl>(item);
      if (!decl) continue;
      if (const auto* range = std::get_if<RangeDomain>(&decl->domain)) {
        if (range->lo > range->hi)
          error("E005",
                "invalid domain `" + std::to_string(range->lo) + ".." +
                    std::to_string(range->hi) + "`: lower bound exceeds upper bound",
                item.span);
      }
    }
  }

  void check_unused() {
    std::set<std::string> used;
    auto collect = [&](const Expr& e, auto&& self) -> void {
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Ident>) {
              used.insert(node.name);
            } else if constexpr (std::is_same_v<T, ArrayAccess>) {
              used.insert(node.array);
              self(*node.index, self);
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
              for (const auto& el : node.elements) self(el, self);
            } else if constexpr (std::is_same_v<T, Unary>) {
              self(*node.arg, self);
            } else if constexpr (std::is_same_v<T, Binary>) {
              self(*node.lhs, self);
              self(*node.rhs, self);
            } else if constexpr (std::is_same_v<T, Call>) {
              for (const auto& arg : node.args) self(arg, self);
            }
          },
          e.node);
    };
    for (const auto& item : ast_.items) {
      if (const auto* c = item_as<ConstraintItem>(item)) collect(c->expr, collect);
      if (const auto* s = item_as<SolveItem>(item))
        if (s->objective) collect(*s->objective, collect);
    }
    for (const auto& item : ast_.items) {
      const auto* decl = item_as<VarDecl>(item);
      if (!decl) continue;
      if (!used.count(decl->name))
        diags_.push_back(make_warning("W001", "unused variable `" + decl->name + "`",
                                      item.span));
    }
  }

  ValueType declared_type(const DeclInfo& info) const {
    bool is_bool = info.decl->base == BaseType::Bool;
    if (info.decl->array_len)
      return is_bool ? ValueType::BoolArray : ValueType::IntArray;
    return is_bool ? ValueType::Bool : ValueType::Int;
  }

  ValueType infer(const Expr& e) {
    return std::visit(
        [&](const auto& node) -> ValueType {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return ValueType::Int;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return ValueType::Bool;
          } else if constexpr (std::is_same_v<T, Ident>) {
            auto it = decls_.find(node.name);
            if (it == decls_.end()) {
              error("E002", "undefined identifier `" + node.name + "`", e.span);
              return ValueType::Unknown;
            }
            return declared_type(it->second);
          } else if constexpr (std::is_same_v<T, ArrayAccess>) {
            return infer_array_access(node, e.span);
          } else if constexpr (std::is_same_v<T, ArrayLit>) {
            return infer_array_lit(node, e.span);
          } else if constexpr (std::is_same_v<T, Unary>) {
            return infer_unary(node, e.span);
          } else if constexpr (std::is_same_v<T, Binary>) {
            return infer_binary(node, e.span);
          } else {
            return infer_call(node, e.span);
          }
        },
        e.node);
  }

  ValueType infer_array_access(const ArrayAccess& node, const SourceSpan& span) {
    ValueType index_type = infer(*node.index);
    if (index_type != ValueType::Int && index_type != ValueType::Unknown)
      error("E007",
            "type mismatch: array index must be int, found " +
                std::string(type_name(index_type)),
            node.index->span);

    auto it = decls_.find(node.array);
    if (it == decls_.end()) {
      error("E002", "undefined identifier `" + node.array + "`", span);
      return ValueType::Unknown;
    }
    const DeclInfo& info = it->second;
    if (!info.decl->array_len) {
      error("E007", "type mismatch: `" + node.array + "` is not an array", span);
      return ValueType::Unknown;
    }
    // E006 only for indices known at analysis time.
    if (auto constant = constant_index(*node.index)) {
      int len = *info.decl->array_len;
      if (*constant < 1 || *constant > len)
        error("E006",
              "array index " + std::to_string(*constant) + " out of bounds for `" +
                  node.array + "` (valid range 1.." + std::to_string(len) + ")",
              span);
    }
    return info.decl->base == BaseType::Bool ? ValueType::Bool : ValueType::Int;
  }

  static std::optional<long long> constant_index(const Expr& e) {
    if (const auto* lit = std::get_if<IntLit>(&e.node)) return lit->value;
    if (const auto* unary = std::get_if<Unary>(&e.node)) {
      if (unary->op == UnaryOp::Neg)
        if (const auto* lit = std::get_if<IntLit>(&unary->arg->node))
          return -lit->value;
    }
    return std::nullopt;
  }

  ValueType infer_array_lit(const ArrayLit& node, const SourceSpan& span) {
    bool saw_int = false, saw_bool = false;
    for (const auto& el : node.elements) {
      ValueType t = infer(el);
      if (is_array_type(t)) {
        error("E007", "type mismatch: array literal elements must be scalar", el.span);
        return ValueType::Unknown;
      }
      saw_int |= t == ValueType::Int;
      saw_bool |= t == ValueType::Bool;
    }
    if (saw_int && saw_bool) {
      error("E007", "type mismatch: array literal mixes int and bool elements", span);
      return ValueType::Unknown;
    }
    return saw_bool ? ValueType::BoolArray : ValueType::IntArray;
  }

  ValueType infer_unary(const Unary& node, const SourceSpan& span) {
    ValueType arg = infer(*node.arg);
    if (node.op == UnaryOp::Neg) {
      if (arg != ValueType::Int && arg != ValueType::Unknown)
        error("E007",
              "type mismatch: expected int operand, found " +
                  std::string(type_name(arg)),
              span);
      return ValueType::Int;
    }
    if (arg != ValueType::Bool && arg != ValueType::Unknown)
      error("E007",
            "type mismatch: expected bool operand, found " + std::string(type_name(arg)),
            span);
    return ValueType::Bool;
  }

  ValueType infer_binary(const Binary& node, const SourceSpan& span) {
    ValueType lhs = infer(*node.lhs);
    ValueType rhs = infer(*node.rhs);
    auto require = [&](ValueType t, ValueType want) {
      if (t != want && t != ValueType::Unknown)
        error("E007",
              "type mismatch: expected " + std::string(type_name(want)) +
                  " operand, found " + std::string(type_name(t)),
              span);
    };
    switch (node.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::Mul:
      case BinaryOp::Div:
      case BinaryOp::Mod:
        require(lhs, ValueType::Int);
        require(rhs, ValueType::Int);
        return ValueType::Int;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
        require(lhs, ValueType::Int);
        require(rhs, ValueType::Int);
        return ValueType::Bool;
      case BinaryOp::Eq:
      case BinaryOp::Ne:
        if (is_array_type(lhs) || is_array_type(rhs)) {
          error("E007", "type mismatch: cannot compare arrays", span);
        } else if (lhs != ValueType::Unknown && rhs != ValueType::Unknown &&
                   lhs != rhs) {
          error("E007",
                "type mismatch: cannot compare " + std::string(type_name(lhs)) +
                    " with " + std::string(type_name(rhs)),
                span);
        }
        return ValueType::Bool;
      case BinaryOp::And:
      case BinaryOp::Or:
        require(lhs, ValueType::Bool);
        require(rhs, ValueType::Bool);
        return ValueType::Bool;
    }
    return ValueType::Unknown;
  }

  ValueType infer_call(const Call& node, const SourceSpan& span) {
    std::vector<ValueType> arg_types;
    arg_types.reserve(node.args.size());
    for (const auto& arg : node.args) arg_types.push_back(infer(arg));
    if (!is_known_global(node.callee)) {
      error("E002", "undefined identifier `" + node.callee + "`", span);
      return ValueType::Unknown;
    }
    if (!has_global_include_)
      error("E001",
            "undefined identifier `" + node.callee +
                "`, did you forget to include \"alldifferent.mzn\"?",
            span);
    if (node.args.size() != 1) {
      error("E008",
            node.callee + " expects 1 argument, found " +
                std::to_string(node.args.size()),
            span);
      return ValueType::Bool;
    }
    if (!is_array_type(arg_types[0]) && arg_types[0] != ValueType::Unknown)
      error("E008", node.callee + " applied to a non-array expression", span);
    return ValueType::Bool;
  }

  const ModelAst& ast_;
  std::map<std::string, DeclInfo> decls_;
  bool has_global_include_ = false;
  std::vector<Diagnostic> diags_;
};

// --- conformance -----------------------------------------------------------

struct CountedDecls {
  std::vector<const VarDecl*> scalars;  // int scalars, declaration order
  std::vector<const VarDecl*> arrays;   // int arrays, declaration order
};

CountedDecls collect_int_decls(const ModelAst& ast) {
  CountedDecls out;
  for (const auto& item : ast.items) {
    const auto* decl = item_as<VarDecl>(item);
    if (!decl || decl->base != BaseType::Int) continue;
    (decl->array_len ? out.arrays : out.scalars).push_back(decl);
  }
  return out;
}

std::set<std::string> grounded_names(const std::vector<const VarDecl*>& decls) {
  std::set<std::string> names;
  for (const auto* d : decls) {
    if (d->array_len) {
      for (int i = 1; i <= *d->array_len; ++i)
        names.insert(d->name + "[" + std::to_string(i) + "]");
    } else {
      names.insert(d->name);
    }
  }
  return names;
}

// Grounded variables named by an all_different argument, or nullopt when the
// argument's coverage cannot be determined statically.
std::optional<std::set<std::string>> covered_names(
    const Expr& arg, const std::map<std::string, const VarDecl*>& decl_by_name) {
  std::set<std::string> names;
  auto add_ident = [&](const std::string& name) -> bool {
    auto it = decl_by_name.find(name);
    if (it == decl_by_name.end()) return false;
    const VarDecl* d = it->second;
    if (d->array_len) {
      for (int i = 1; i <= *d->array_len; ++i)
        names.insert(name + "[" + std::to_string(i) + "]");
    } else {
      names.insert(name);
    }
    return true;
  };

  if (const auto* ident = std::get_if<Ident>(&arg.node)) {
    if (!add_ident(ident->name)) return std::nullopt;
    return names;
  }
  if (const auto* lit = std::get_if<ArrayLit>(&arg.node)) {
    for (const auto& el : lit->elements) {
      if (const auto* ident = std::get_if<Ident>(&el.node)) {
        if (!add_ident(ident->name)) return std::nullopt;
      } else if (const auto* access = std::get_if<ArrayAccess>(&el.node)) {
        const auto* idx = std::get_if<IntLit>(&access->index->node);
        if (!idx) return std::nullopt;
        names.insert(access->array + "[" + std::to_string(idx->value) + "]");
      } else {
        return std::nullopt;
      }
    }
    return names;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Diagnostic> validate(const ModelAst& ast) { return Validator(ast).run(); }

ConformanceReport check_conformance(const ModelAst& ast, const ModelSpec& spec) {
  if (has_errors(validate(ast))) return ConformanceReport{false, {"model invalid"}};

  ConformanceReport report;
  CountedDecls decls = collect_int_decls(ast);
  std::map<std::string, const VarDecl*> decl_by_name;
  for (const auto& item : ast.items)
    if (const auto* d = item_as<VarDecl>(item)) decl_by_name.emplace(d->name, d);

  // (a) variable form and count; (b) domain openness of the counted variables.
  std::vector<const VarDecl*> counted;
  if (spec.variable_kind == VariableKind::DiscreteScalars) {
    if (static_cast<int>(decls.scalars.size()) != spec.variable_count)
      report.mismatches.push_back(
          "expected " + std::to_string(spec.variable_count) +
          " discrete variables, found " + std::to_string(decls.scalars.size()));
    if (!decls.arrays.empty())
      report.mismatches.push_back("unexpected array declaration");
    counted = decls.scalars;
  } else {
    bool found = false;
    for (const auto* d : decls.arrays)
      if (*d->array_len == spec.variable_count) found = true;
    if (!found) {
      std::string msg = "expected an array of " +
                        std::to_string(spec.variable_count) +
                        " discrete variables, found ";
      if (decls.arrays.empty()) {
        msg += "none";
      } else {
        msg += "length(s) ";
        for (std::size_t i = 0; i < decls.arrays.size(); ++i) {
          if (i > 0) msg += ", ";
          msg += std::to_string(*decls.arrays[i]->array_len);
        }
      }
      report.mismatches.push_back(std::move(msg));
    }
    counted = decls.arrays;  // auxiliary scalars are ignored for array specs
  }

  for (const auto* d : counted) {
    bool open = std::holds_alternative<OpenDomain>(d->domain);
    if (spec.domain_kind == DomainKind::Open && !open)
      report.mismatches.push_back("expected open domain, found defined domain on `" +
                                  d->name + "`");
    if (spec.domain_kind == DomainKind::Defined && open)
      report.mismatches.push_back("expected defined domain, found open domain on `" +
                                  d->name + "`");
  }

  // (c) constraint requirement.
  std::vector<const ConstraintItem*> constraints;
  for (const auto& item : ast.items)
    if (const auto* c = item_as<ConstraintItem>(item)) constraints.push_back(c);

  switch (spec.constraint_kind) {
    case ConstraintKind::None:
      if (!constraints.empty())
        report.mismatches.push_back("expected no constraints, found " +
                                    std::to_string(constraints.size()));
      break;
    case ConstraintKind::Simple:
      if (constraints.empty())
        report.mismatches.push_back("expected at least one constraint, found none");
      break;
    case ConstraintKind::AllDifferent: {
      std::set<std::string> required = grounded_names(counted);
      bool covering = false;
      for (const auto* c : constraints) {
        const auto* call = std::get_if<Call>(&c->expr.node);
        if (!call || !is_known_global(call->callee) || call->args.size() != 1)
          continue;
        auto covered = covered_names(call->args[0], decl_by_name);
        if (!covered) continue;
        if (std::includes(covered->begin(), covered->end(), required.begin(),
                          required.end())) {
          covering = true;
          break;
        }
      }
      if (!covering)
        report.mismatches.push_back(
            "no all_different constraint covering all variables");
      break;
    }
  }

  report.correct = report.mismatches.empty();
  return report;
}

}  // namespace mzgen
