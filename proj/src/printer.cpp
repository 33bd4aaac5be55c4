// SPDX-License-Identifier: Apache-2.0

#include "mzgen/printer.hpp"

#include <string>

namespace mzgen {

namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 3;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 4;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 5;
  }
  return 0;
}

constexpr int kUnaryPrec = 6;

int expr_precedence(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  if (std::holds_alternative<Unary>(e.node)) return kUnaryPrec;
  return 7;  // atoms and postfix forms never need parentheses
}

std::string op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "div";
    case BinaryOp::Mod: return "mod";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "/\\";
    case BinaryOp::Or: return "\\/";
  }
  return "?";
}

void print_expr_into(const Expr& e, std::string& out);

void print_child(const Expr& child, int parent_prec, bool is_right, std::string& out) {
  int child_prec = expr_precedence(child);
  bool parens = child_prec < parent_prec || (is_right && child_prec == parent_prec);
  if (parens) out += '(';
  print_expr_into(child, out);
  if (parens) out += ')';
}

void print_expr_into(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(node.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out += node.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Ident>) {
          out += node.name;
        } else if constexpr (std::is_same_v<T, ArrayAccess>) {
          out += node.array;
          out += '[';
          print_expr_into(*node.index, out);
          out += ']';
        } else if constexpr (std::is_same_v<T, ArrayLit>) {
          out += '[';
          for (std::size_t i = 0; i < node.elements.size(); ++i) {
            if (i > 0) out += ", ";
            print_expr_into(node.elements[i], out);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, Unary>) {
          const Expr& arg = *node.arg;
          bool parens = expr_precedence(arg) < kUnaryPrec ||
                        std::holds_alternative<Unary>(arg.node);
          out += node.op == UnaryOp::Neg ? "-" : "not ";
          if (parens) out += '(';
          print_expr_into(arg, out);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          int prec = precedence(node.op);
          print_child(*node.lhs, prec, false, out);
          out += ' ';
          out += op_text(node.op);
          out += ' ';
          print_child(*node.rhs, prec, true, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          out += node.callee;
          out += '(';
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i > 0) out += ", ";
            print_expr_into(node.args[i], out);
          }
          out += ')';
        }
      },
      e.node);
}

std::string escape_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c; break;
    }
  }
  return out;
}

}  // namespace

std::string print_expr(const Expr& expr) {
  std::string out;
  print_expr_into(expr, out);
  return out;
}

std::string print_domain(const Domain& domain) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, OpenDomain>) {
          return "int";
        } else if constexpr (std::is_same_v<T, RangeDomain>) {
          return std::to_string(d.lo) + ".." + std::to_string(d.hi);
        } else {
          std::string out = "{";
          for (std::size_t i = 0; i < d.values.size(); ++i) {
            if (i > 0) out += ", ";
            out += std::to_string(d.values[i]);
          }
          out += '}';
          return out;
        }
      },
      domain);
}

std::string print_item(const Item& item) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Include>) {
          return "include \"" + escape_string(node.path) + "\";";
        } else if constexpr (std::is_same_v<T, VarDecl>) {
          std::string out;
          if (node.array_len)
            out += "array[1.." + std::to_string(*node.array_len) + "] of ";
          out += "var ";
          out += node.base == BaseType::Bool ? "bool" : print_domain(node.domain);
          out += ": ";
          out += node.name;
          out += ';';
          return out;
        } else if constexpr (std::is_same_v<T, ConstraintItem>) {
          return "constraint " + print_expr(node.expr) + ";";
        } else if constexpr (std::is_same_v<T, SolveItem>) {
          switch (node.kind) {
            case SolveKind::Satisfy: return "solve satisfy;";
            case SolveKind::Minimize:
              return "solve minimize " + print_expr(*node.objective) + ";";
            case SolveKind::Maximize:
              return "solve maximize " + print_expr(*node.objective) + ";";
          }
          return {};
        } else {
          return "output " + node.raw + ";";
        }
      },
      item.node);
}

std::string print_model(const ModelAst& ast) {
  std::string out;
  for (const auto& item : ast.items) {
    out += print_item(item);
    out += '\n';
  }
  return out;
}

}  // namespace mzgen
