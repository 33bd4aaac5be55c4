// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mzgen/solver.hpp"

namespace mzgen {

struct ExternalSolverConfig {
  std::string binary_path;        // e.g. "minizinc"
  std::string solver_name = "gecode";
  int time_limit_ms = 10'000;
  bool keep_artifacts = false;    // retain the temp .mzn for debugging
};

enum class ExternalSolverErrorKind { ToolNotFound, Io };

class ExternalSolverError : public std::runtime_error {
 public:
  ExternalSolverError(ExternalSolverErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ExternalSolverErrorKind kind() const { return kind_; }

 private:
  ExternalSolverErrorKind kind_;
};

/// Runs a real MiniZinc toolchain on the model text:
///   <binary> --solver <name> --time-limit <ms> <file.mzn>
/// Nonzero exit with error text maps to CompileError (that text is what the
/// repair loop feeds back), "=====UNSATISFIABLE=====" to Unsatisfiable, a
/// solution block to Satisfied (assignment parsed from the default
/// name = value; output when possible, otherwise left empty with a warning),
/// and a timeout or "=====UNKNOWN=====" to LimitReached{Time}. Throws
/// ExternalSolverError for a missing binary or I/O failure.
SolveOutcome run_external(const std::string& model_text,
                          const ExternalSolverConfig& config,
                          std::vector<std::string>* warnings = nullptr);

/// Parses a MiniZinc-convention stdout/stderr/exit triple into an outcome.
/// Exposed separately so the mapping is testable without a real toolchain.
SolveOutcome map_external_output(int exit_code, const std::string& out,
                                 const std::string& err, bool timed_out,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace mzgen
