// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mzgen/diagnostics.hpp"

namespace mzgen {

/// Value-semantic heap box for recursive variant members. Copies are deep,
/// equality compares the pointee.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

  bool operator==(const Box& other) const { return *ptr_ == *other.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Domains

struct OpenDomain {
  bool operator==(const OpenDomain&) const = default;
};

/// `lo..hi`. lo > hi is representable; analysis flags it as E005.
struct RangeDomain {
  long long lo = 0;
  long long hi = 0;
  bool operator==(const RangeDomain&) const = default;
};

/// `{v1, v2, ...}`, non-empty and strictly ascending after parse normalization.
struct SetDomain {
  std::vector<long long> values;
  bool operator==(const SetDomain&) const = default;
};

using Domain = std::variant<OpenDomain, RangeDomain, SetDomain>;

enum class BaseType { Int, Bool };

// ---------------------------------------------------------------------------
// Expressions

struct Expr;

/// The parser never produces a negative IntLit: `-5` parses as Neg(IntLit 5).
struct IntLit {
  long long value = 0;
  bool operator==(const IntLit&) const = default;
};

struct BoolLit {
  bool value = false;
  bool operator==(const BoolLit&) const = default;
};

struct Ident {
  std::string name;
  bool operator==(const Ident&) const = default;
};

struct ArrayAccess {
  std::string array;
  Box<Expr> index;
  bool operator==(const ArrayAccess&) const = default;
};

struct ArrayLit {
  std::vector<Expr> elements;
  bool operator==(const ArrayLit&) const = default;
};

enum class UnaryOp { Neg, Not };

struct Unary {
  UnaryOp op;
  Box<Expr> arg;
  bool operator==(const Unary&) const = default;
};

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,          // arithmetic
  Eq, Ne, Lt, Le, Gt, Ge,           // comparison
  And, Or,                          // /\ and \/
};

struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const Binary&) const = default;
};

struct Call {
  std::string callee;
  std::vector<Expr> args;
  bool operator==(const Call&) const = default;
};

using ExprNode =
    std::variant<IntLit, BoolLit, Ident, ArrayAccess, ArrayLit, Unary, Binary, Call>;

/// Spans are carried for diagnostics but excluded from structural equality,
/// so round-tripping through the canonical printer compares equal.
struct Expr {
  ExprNode node;
  SourceSpan span{};

  Expr(ExprNode n, SourceSpan s = {}) : node(std::move(n)), span(s) {}
  bool operator==(const Expr& other) const { return node == other.node; }
};

// ---------------------------------------------------------------------------
// Items

struct Include {
  std::string path;
  bool operator==(const Include&) const = default;
};

/// `var <domain>: name;` or `array[1..n] of var <domain>: name;`.
/// array_len present means a 1-based fixed-length array.
struct VarDecl {
  std::string name;
  BaseType base = BaseType::Int;
  Domain domain = OpenDomain{};
  std::optional<int> array_len;
  bool operator==(const VarDecl&) const = default;
};

struct ConstraintItem {
  Expr expr;
  bool operator==(const ConstraintItem&) const = default;
};

enum class SolveKind { Satisfy, Minimize, Maximize };

struct SolveItem {
  SolveKind kind = SolveKind::Satisfy;
  std::optional<Expr> objective;
  bool operator==(const SolveItem&) const = default;
};

/// Output payloads are kept opaque: bracket-balanced, comment-stripped,
/// whitespace-trimmed raw text between `output` and the terminating `;`.
struct OutputItem {
  std::string raw;
  bool operator==(const OutputItem&) const = default;
};

using ItemNode = std::variant<Include, VarDecl, ConstraintItem, SolveItem, OutputItem>;

struct Item {
  ItemNode node;
  SourceSpan span{};

  Item(ItemNode n, SourceSpan s = {}) : node(std::move(n)), span(s) {}
  bool operator==(const Item& other) const { return node == other.node; }
};

struct ModelAst {
  std::vector<Item> items;
  bool operator==(const ModelAst&) const = default;
};

// Convenience accessors used across analysis, solving and reporting.

template <typename T>
const T* item_as(const Item& item) {
  return std::get_if<T>(&item.node);
}

inline const SolveItem* find_solve(const ModelAst& ast) {
  for (const auto& item : ast.items)
    if (const auto* s = item_as<SolveItem>(item)) return s;
  return nullptr;
}

}  // namespace mzgen
