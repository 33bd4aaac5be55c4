// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mzgen/ast.hpp"

namespace mzgen {

struct SolveLimits {
  long long max_nodes = 1'000'000;
  int max_time_ms = 10'000;
  // Open int domains are boxed to these bounds; enumeration needs finite
  // domains. Recorded in run metadata by the reporting layer.
  long long open_lo = -1000;
  long long open_hi = 1000;
};

/// Scalar variables map to a single value, arrays to the list of their
/// element values (index 1 first). Bools are reported as 0/1.
using SolutionValue = std::variant<long long, std::vector<long long>>;
using Assignment = std::map<std::string, SolutionValue>;

struct Satisfied {
  Assignment assignment;  // covers every declared variable
  std::optional<long long> objective;
  bool operator==(const Satisfied&) const = default;
};
struct Unsatisfiable {
  bool operator==(const Unsatisfiable&) const = default;
};
struct CompileError {
  std::string message;
  bool operator==(const CompileError&) const = default;
};
enum class LimitKind { Time, Nodes };
struct LimitReached {
  LimitKind kind = LimitKind::Time;
  bool operator==(const LimitReached&) const = default;
};

using SolveOutcome = std::variant<Satisfied, Unsatisfiable, CompileError, LimitReached>;

/// True when the model executed: Satisfied or Unsatisfiable.
bool outcome_executed(const SolveOutcome& outcome);
std::string describe_outcome(const SolveOutcome& outcome);

/// Finite-domain chronological backtracking over the grounded model.
/// Arrays are grounded to scalars, open domains boxed to the limits' bounds,
/// variables assigned in declaration order with values ascending, each
/// constraint checked as soon as all its variables are assigned, and
/// all_different checked pairwise. Minimize/maximize run branch-and-bound on
/// the objective. Deterministic: the returned assignment is the
/// lexicographically smallest satisfying one in that search order. A model
/// with validity errors returns CompileError carrying the first error's
/// message; the solver itself introduces no new compile failures.
SolveOutcome solve_builtin(const ModelAst& ast, const SolveLimits& limits = {});

/// Grounded variable names in declaration order: scalars as "x", array
/// elements as "q[1]" ... "q[n]".
std::vector<std::string> grounded_variable_names(const ModelAst& ast);

/// Flattens a Satisfied assignment into grounded order for comparison with
/// oracle solutions.
std::vector<long long> flatten_assignment(const Assignment& assignment,
                                          const ModelAst& ast);

class SpaceTooLargeError : public std::runtime_error {
 public:
  explicit SpaceTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/// All satisfying assignments in grounded order (ascending lexicographic).
struct OracleSolutions {
  std::vector<std::string> variable_names;
  std::vector<std::vector<long long>> solutions;
};

/// Exhaustive test oracle: enumerates every grounded assignment with no
/// pruning and evaluates every constraint at the full assignment. Refuses
/// search spaces above 10^6 assignments with SpaceTooLargeError. Kept
/// independent of solve_builtin's search and evaluation code on purpose.
OracleSolutions brute_force_oracle(const ModelAst& ast, const SolveLimits& limits = {});

}  // namespace mzgen
