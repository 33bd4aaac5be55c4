// SPDX-License-Identifier: Apache-2.0

#include "mzgen/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>

#include "mzgen/analysis.hpp"

namespace mzgen {

bool outcome_executed(const SolveOutcome& outcome) {
  return std::holds_alternative<Satisfied>(outcome) ||
         std::holds_alternative<Unsatisfiable>(outcome);
}

std::string describe_outcome(const SolveOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Satisfied>) {
          std::string out = "SATISFIED";
          if (o.objective) out += " objective=" + std::to_string(*o.objective);
          for (const auto& [name, value] : o.assignment) {
            out += "\n  " + name + " = ";
            if (const auto* scalar = std::get_if<long long>(&value)) {
              out += std::to_string(*scalar);
            } else {
              const auto& list = std::get<std::vector<long long>>(value);
              out += '[';
              for (std::size_t i = 0; i < list.size(); ++i) {
                if (i > 0) out += ", ";
                out += std::to_string(list[i]);
              }
              out += ']';
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, Unsatisfiable>) {
          return "UNSATISFIABLE";
        } else if constexpr (std::is_same_v<T, CompileError>) {
          return "COMPILE ERROR: " + o.message;
        } else {
          return o.kind == LimitKind::Time ? "LIMIT REACHED: time"
                                           : "LIMIT REACHED: nodes";
        }
      },
      outcome);
}

namespace {

// One grounded decision variable. Range domains stay symbolic so a
// declaration like `var 1..1000000000` cannot exhaust memory; the node
// budget bounds how much of it search ever visits.
struct GroundVar {
  std::string name;
  long long lo = 0;                 // used when values is empty
  long long hi = -1;
  std::vector<long long> values;   // ascending, used for set domains
  bool from_values = false;

  unsigned long long size() const {
    if (from_values) return values.size();
    if (lo > hi) return 0;
    return static_cast<unsigned long long>(hi - lo + 1);
  }
  long long value_at(unsigned long long index) const {
    return from_values ? values[index] : lo + static_cast<long long>(index);
  }
};

struct ArrayInfo {
  std::size_t first = 0;  // index of element 1 in the grounded vector
  int len = 0;
};

struct Grounding {
  std::vector<GroundVar> vars;
  std::map<std::string, std::size_t> scalar_index;
  std::map<std::string, ArrayInfo> arrays;
};

GroundVar make_ground_var(std::string name, BaseType base, const Domain& domain,
                          const SolveLimits& limits) {
  GroundVar v;
  v.name = std::move(name);
  if (base == BaseType::Bool) {
    v.lo = 0;
    v.hi = 1;
    return v;
  }
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, OpenDomain>) {
          v.lo = limits.open_lo;
          v.hi = limits.open_hi;
        } else if constexpr (std::is_same_v<T, RangeDomain>) {
          v.lo = d.lo;
          v.hi = d.hi;
        } else {
          v.values = d.values;
          v.from_values = true;
        }
      },
      domain);
  return v;
}

Grounding ground(const ModelAst& ast, const SolveLimits& limits) {
  Grounding g;
  for (const auto& item : ast.items) {
    const auto* decl = item_as<VarDecl>(item);
    if (!decl) continue;
    if (decl->array_len) {
      ArrayInfo info{g.vars.size(), *decl->array_len};
      g.arrays.emplace(decl->name, info);
      for (int i = 1; i <= info.len; ++i)
        g.vars.push_back(make_ground_var(decl->name + "[" + std::to_string(i) + "]",
                                         decl->base, decl->domain, limits));
    } else {
      g.scalar_index.emplace(decl->name, g.vars.size());
      g.vars.push_back(make_ground_var(decl->name, decl->base, decl->domain, limits));
    }
  }
  return g;
}

// Untyped evaluation over a full or sufficient partial assignment. The type
// checker has already run; anything undefined at runtime (div/mod by zero,
// out-of-range index) makes the enclosing constraint unsatisfied.
struct EvalEnv {
  const Grounding* grounding = nullptr;
  const std::vector<long long>* values = nullptr;
};

using EvalValue = std::variant<long long, std::vector<long long>>;

std::optional<EvalValue> eval(const Expr& e, const EvalEnv& env);

std::optional<long long> eval_scalar(const Expr& e, const EvalEnv& env) {
  auto v = eval(e, env);
  if (!v) return std::nullopt;
  if (const auto* scalar = std::get_if<long long>(&*v)) return *scalar;
  return std::nullopt;
}

std::optional<EvalValue> eval(const Expr& e, const EvalEnv& env) {
  return std::visit(
      [&](const auto& node) -> std::optional<EvalValue> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return EvalValue{node.value};
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return EvalValue{static_cast<long long>(node.value ? 1 : 0)};
        } else if constexpr (std::is_same_v<T, Ident>) {
          auto scalar = env.grounding->scalar_index.find(node.name);
          if (scalar != env.grounding->scalar_index.end())
            return EvalValue{(*env.values)[scalar->second]};
          auto array = env.grounding->arrays.find(node.name);
          if (array != env.grounding->arrays.end()) {
            std::vector<long long> elements;
            elements.reserve(array->second.len);
            for (int i = 0; i < array->second.len; ++i)
              elements.push_back((*env.values)[array->second.first + i]);
            return EvalValue{std::move(elements)};
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, ArrayAccess>) {
          auto array = env.grounding->arrays.find(node.array);
          if (array == env.grounding->arrays.end()) return std::nullopt;
          auto index = eval_scalar(*node.index, env);
          if (!index || *index < 1 || *index > array->second.len) return std::nullopt;
          return EvalValue{(*env.values)[array->second.first + *index - 1]};
        } else if constexpr (std::is_same_v<T, ArrayLit>) {
          std::vector<long long> elements;
          elements.reserve(node.elements.size());
          for (const auto& el : node.elements) {
            auto v = eval_scalar(el, env);
            if (!v) return std::nullopt;
            elements.push_back(*v);
          }
          return EvalValue{std::move(elements)};
        } else if constexpr (std::is_same_v<T, Unary>) {
          auto v = eval_scalar(*node.arg, env);
          if (!v) return std::nullopt;
          return EvalValue{node.op == UnaryOp::Neg ? -*v
                                                   : static_cast<long long>(*v == 0)};
        } else if constexpr (std::is_same_v<T, Binary>) {
          auto lhs = eval_scalar(*node.lhs, env);
          auto rhs = eval_scalar(*node.rhs, env);
          if (!lhs || !rhs) return std::nullopt;
          long long a = *lhs, b = *rhs;
          switch (node.op) {
            case BinaryOp::Add: return EvalValue{a + b};
            case BinaryOp::Sub: return EvalValue{a - b};
            case BinaryOp::Mul: return EvalValue{a * b};
            case BinaryOp::Div:
              if (b == 0) return std::nullopt;
              return EvalValue{a / b};
            case BinaryOp::Mod:
              if (b == 0) return std::nullopt;
              return EvalValue{a % b};
            case BinaryOp::Eq: return EvalValue{static_cast<long long>(a == b)};
            case BinaryOp::Ne: return EvalValue{static_cast<long long>(a != b)};
            case BinaryOp::Lt: return EvalValue{static_cast<long long>(a < b)};
            case BinaryOp::Le: return EvalValue{static_cast<long long>(a <= b)};
            case BinaryOp::Gt: return EvalValue{static_cast<long long>(a > b)};
            case BinaryOp::Ge: return EvalValue{static_cast<long long>(a >= b)};
            case BinaryOp::And:
              return EvalValue{static_cast<long long>(a != 0 && b != 0)};
            case BinaryOp::Or:
              return EvalValue{static_cast<long long>(a != 0 || b != 0)};
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Call>) {
          if (node.args.size() != 1) return std::nullopt;
          auto v = eval(node.args[0], env);
          if (!v) return std::nullopt;
          const auto* list = std::get_if<std::vector<long long>>(&*v);
          if (!list) return std::nullopt;
          // all_different, checked pairwise.
          for (std::size_t i = 0; i < list->size(); ++i)
            for (std::size_t j = i + 1; j < list->size(); ++j)
              if ((*list)[i] == (*list)[j]) return EvalValue{0LL};
          return EvalValue{1LL};
        }
      },
      e.node);
}

bool constraint_holds(const Expr& e, const EvalEnv& env) {
  auto v = eval_scalar(e, env);
  return v && *v != 0;
}

// Grounded variable indices an expression depends on.
void collect_var_indices(const Expr& e, const Grounding& g, std::set<std::size_t>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Ident>) {
          auto scalar = g.scalar_index.find(node.name);
          if (scalar != g.scalar_index.end()) {
            out.insert(scalar->second);
          } else {
            auto array = g.arrays.find(node.name);
            if (array != g.arrays.end())
              for (int i = 0; i < array->second.len; ++i)
                out.insert(array->second.first + i);
          }
        } else if constexpr (std::is_same_v<T, ArrayAccess>) {
          // Conservative: a variable index may touch any element.
          auto array = g.arrays.find(node.array);
          if (array != g.arrays.end()) {
            if (const auto* lit = std::get_if<IntLit>(&node.index->node)) {
              if (lit->value >= 1 && lit->value <= array->second.len)
                out.insert(array->second.first + lit->value - 1);
            } else {
              for (int i = 0; i < array->second.len; ++i)
                out.insert(array->second.first + i);
            }
          }
          collect_var_indices(*node.index, g, out);
        } else if constexpr (std::is_same_v<T, ArrayLit>) {
          for (const auto& el : node.elements) collect_var_indices(el, g, out);
        } else if constexpr (std::is_same_v<T, Unary>) {
          collect_var_indices(*node.arg, g, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_var_indices(*node.lhs, g, out);
          collect_var_indices(*node.rhs, g, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& arg : node.args) collect_var_indices(arg, g, out);
        }
      },
      e.node);
}

class BacktrackingSearch {
 public:
  BacktrackingSearch(const ModelAst& ast, const Grounding& grounding,
                     const SolveLimits& limits)
      : grounding_(grounding),
        limits_(limits),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(limits.max_time_ms)) {
    values_.assign(grounding_.vars.size(), 0);
    env_ = EvalEnv{&grounding_, &values_};

    for (const auto& item : ast.items) {
      if (const auto* c = item_as<ConstraintItem>(item)) {
        if (!decompose_all_different(c->expr)) register_check(&c->expr);
      } else if (const auto* s = item_as<SolveItem>(item)) {
        solve_kind_ = s->kind;
        if (s->objective) {
          objective_ = &*s->objective;
          std::set<std::size_t> deps;
          collect_var_indices(*objective_, grounding_, deps);
          objective_last_var_ = deps.empty() ? std::nullopt
                                             : std::optional<std::size_t>(*deps.rbegin());
        }
      }
    }
  }

  SolveOutcome run() {
    for (const Expr* e : ground_constraints_)
      if (!constraint_holds(*e, env_)) return Unsatisfiable{};
    if (objective_ && !objective_last_var_) {
      // Constant objective: feasibility search decides everything.
      auto value = eval_scalar(*objective_, env_);
      if (!value) return Unsatisfiable{};
    }

    SearchStatus status = search(0);
    if (status == SearchStatus::Limit)
      return LimitReached{limit_kind_};
    if (solve_kind_ == SolveKind::Satisfy)
      return status == SearchStatus::Solution ? make_satisfied() : SolveOutcome{Unsatisfiable{}};
    if (!best_) return Unsatisfiable{};
    return Satisfied{to_assignment(*best_), best_objective_};
  }

 private:
  enum class SearchStatus { Exhausted, Solution, Limit };

  void register_check(const Expr* e) {
    std::set<std::size_t> deps;
    collect_var_indices(*e, grounding_, deps);
    if (deps.empty())
      ground_constraints_.push_back(e);
    else
      checks_by_var_[*deps.rbegin()].push_back(e);
  }

  // A top-level all_different over an array or array literal becomes one
  // `!=` check per pair, so each pair fires as soon as its second variable
  // is assigned instead of waiting for the whole collection.
  bool decompose_all_different(const Expr& expr) {
    const auto* call = std::get_if<Call>(&expr.node);
    if (!call || call->args.size() != 1) return false;
    if (call->callee != "all_different" && call->callee != "alldifferent")
      return false;

    std::vector<Expr> elements;
    if (const auto* ident = std::get_if<Ident>(&call->args[0].node)) {
      auto array = grounding_.arrays.find(ident->name);
      if (array == grounding_.arrays.end()) return false;
      for (int i = 1; i <= array->second.len; ++i)
        elements.push_back(
            Expr{ArrayAccess{ident->name, Expr{IntLit{i}}}});
    } else if (const auto* lit = std::get_if<ArrayLit>(&call->args[0].node)) {
      elements = lit->elements;
    } else {
      return false;
    }

    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i + 1; j < elements.size(); ++j) {
        pairwise_checks_.push_back(
            Expr{Binary{BinaryOp::Ne, elements[i], elements[j]}});
        register_check(&pairwise_checks_.back());
      }
    return true;
  }

  bool over_budget() {
    if (++nodes_ > limits_.max_nodes) {
      limit_kind_ = LimitKind::Nodes;
      return true;
    }
    if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) {
      limit_kind_ = LimitKind::Time;
      return true;
    }
    return false;
  }

  // Depth-first, declaration order, values ascending. Returns Solution only
  // in satisfy mode (optimization keeps searching for better incumbents).
  SearchStatus search(std::size_t var) {
    if (var == grounding_.vars.size()) return on_leaf();
    const GroundVar& gv = grounding_.vars[var];
    unsigned long long size = gv.size();
    for (unsigned long long i = 0; i < size; ++i) {
      if (over_budget()) return SearchStatus::Limit;
      values_[var] = gv.value_at(i);

      bool feasible = true;
      auto checks = checks_by_var_.find(var);
      if (checks != checks_by_var_.end())
        for (const Expr* e : checks->second)
          if (!constraint_holds(*e, env_)) {
            feasible = false;
            break;
          }
      // Branch-and-bound: once the objective is fully assigned, any subtree
      // that cannot strictly improve on the incumbent is pruned.
      if (feasible && objective_ && best_ && objective_last_var_ &&
          *objective_last_var_ == var) {
        auto obj = eval_scalar(*objective_, env_);
        if (!obj || !improves(*obj)) feasible = false;
      }
      if (!feasible) continue;

      SearchStatus status = search(var + 1);
      if (status != SearchStatus::Exhausted) return status;
    }
    return SearchStatus::Exhausted;
  }

  SearchStatus on_leaf() {
    if (solve_kind_ == SolveKind::Satisfy) {
      solution_ = values_;
      return SearchStatus::Solution;
    }
    auto obj = objective_ ? eval_scalar(*objective_, env_) : std::optional<long long>{0};
    if (!obj) return SearchStatus::Exhausted;  // undefined objective: not a solution
    if (!best_ || improves(*obj)) {
      best_ = values_;
      best_objective_ = *obj;
    }
    return SearchStatus::Exhausted;
  }

  bool improves(long long objective) const {
    if (!best_) return true;
    return solve_kind_ == SolveKind::Minimize ? objective < *best_objective_
                                              : objective > *best_objective_;
  }

  Satisfied make_satisfied() const {
    return Satisfied{to_assignment(*solution_), std::nullopt};
  }

  Assignment to_assignment(const std::vector<long long>& values) const {
    Assignment assignment;
    for (const auto& [name, index] : grounding_.scalar_index)
      assignment.emplace(name, values[index]);
    for (const auto& [name, info] : grounding_.arrays) {
      std::vector<long long> elements(values.begin() + info.first,
                                      values.begin() + info.first + info.len);
      assignment.emplace(name, std::move(elements));
    }
    return assignment;
  }

  const Grounding& grounding_;
  const SolveLimits& limits_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<long long> values_;
  EvalEnv env_;
  std::map<std::size_t, std::vector<const Expr*>> checks_by_var_;
  std::vector<const Expr*> ground_constraints_;
  std::deque<Expr> pairwise_checks_;  // deque: registered pointers must stay put
  SolveKind solve_kind_ = SolveKind::Satisfy;
  const Expr* objective_ = nullptr;
  std::optional<std::size_t> objective_last_var_;
  long long nodes_ = 0;
  LimitKind limit_kind_ = LimitKind::Nodes;
  std::optional<std::vector<long long>> solution_;
  std::optional<std::vector<long long>> best_;
  std::optional<long long> best_objective_;
};

}  // namespace

SolveOutcome solve_builtin(const ModelAst& ast, const SolveLimits& limits) {
  std::vector<Diagnostic> diags = validate(ast);
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return CompileError{d.message};

  Grounding grounding = ground(ast, limits);
  // Even one assignment per variable would blow the node budget past this
  // point, and the recursive search needs bounded depth.
  if (static_cast<long long>(grounding.vars.size()) >
      std::min<long long>(limits.max_nodes, 50'000))
    return LimitReached{LimitKind::Nodes};
  return BacktrackingSearch(ast, grounding, limits).run();
}

std::vector<std::string> grounded_variable_names(const ModelAst& ast) {
  std::vector<std::string> names;
  for (const auto& item : ast.items) {
    const auto* decl = item_as<VarDecl>(item);
    if (!decl) continue;
    if (decl->array_len) {
      for (int i = 1; i <= *decl->array_len; ++i)
        names.push_back(decl->name + "[" + std::to_string(i) + "]");
    } else {
      names.push_back(decl->name);
    }
  }
  return names;
}

std::vector<long long> flatten_assignment(const Assignment& assignment,
                                          const ModelAst& ast) {
  std::vector<long long> flat;
  for (const auto& item : ast.items) {
    const auto* decl = item_as<VarDecl>(item);
    if (!decl) continue;
    auto it = assignment.find(decl->name);
    if (it == assignment.end())
      throw std::logic_error("assignment misses variable `" + decl->name + "`");
    if (const auto* scalar = std::get_if<long long>(&it->second)) {
      flat.push_back(*scalar);
    } else {
      const auto& list = std::get<std::vector<long long>>(it->second);
      flat.insert(flat.end(), list.begin(), list.end());
    }
  }
  return flat;
}

}  // namespace mzgen
