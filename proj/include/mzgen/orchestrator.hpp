// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzgen/analysis.hpp"
#include "mzgen/backend.hpp"
#include "mzgen/external_solver.hpp"
#include "mzgen/solver.hpp"
#include "mzgen/spec.hpp"

namespace mzgen {

enum class SolverMode { Builtin, External };

struct RunConfig {
  int max_steps = 10;  // generation counts as step 1
  GenerationParams generation_params = GenerationParams::generation_defaults();
  GenerationParams edit_params = GenerationParams::edit_defaults();
  SolverMode solver_mode = SolverMode::Builtin;
  SolveLimits limits;
  std::optional<ExternalSolverConfig> external;  // required for External mode
};

/// One backend call and what happened to its output. Step 1 is always the
/// generation call; every later step is an edit call.
struct StepTrace {
  int index = 1;
  CallKind kind = CallKind::Generate;
  std::string prompt_or_instruction;
  std::string backend_text;
  std::string extracted_model;
  std::vector<Diagnostic> diagnostics;
  std::optional<SolveOutcome> solve_outcome;  // present when no error diagnostics
  int prompt_tokens = 0;
  int completion_tokens = 0;

  bool operator==(const StepTrace&) const = default;
};

/// One benchmark instance's outcome. steps == trace.size() == number of
/// backend calls; tokens is the sum of prompt and completion tokens over the
/// trace; valid=false forces correct=false.
struct RunRecord {
  ModelSpec spec;
  bool valid = false;
  bool correct = false;
  int steps = 0;
  long long tokens = 0;
  std::string final_model;
  std::vector<StepTrace> trace;
  bool aborted = false;         // backend failure cut the run short
  std::string abort_reason;

  bool operator==(const RunRecord&) const = default;
};

/// The generate → test → auto-fix loop. Step 1 builds the generation prompt
/// and completes it; each step extracts model text, parses and validates,
/// and solves when there are no error diagnostics. A step is valid when the
/// model executes (Satisfied or Unsatisfiable); the loop then stops and
/// checks conformance. Otherwise the error text (all error diagnostic
/// messages joined by "; ", or the external tool's compile error) becomes
/// the next repair instruction, with the current model text as edit input,
/// until max_steps is exhausted. Backend failures stop the run and are
/// reported in the record (aborted flag) rather than thrown, so suite runs
/// stay isolated.
RunRecord run_instance(const ModelSpec& spec, TextBackend& backend,
                       const RunConfig& config);

/// Runs each instance independently in input order; one instance's failure
/// never aborts the suite. Throws std::invalid_argument on an empty list.
std::vector<RunRecord> run_suite(const std::vector<ModelSpec>& specs,
                                 TextBackend& backend, const RunConfig& config);

/// Script whose replay reproduces the given trace: one entry per step with
/// the step's kind, backend text and token counts.
std::vector<ScriptEntry> script_from_trace(const std::vector<StepTrace>& trace);

}  // namespace mzgen
