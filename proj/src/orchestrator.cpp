// SPDX-License-Identifier: Apache-2.0

#include "mzgen/orchestrator.hpp"

#include <stdexcept>

#include "mzgen/parser.hpp"
#include "mzgen/prompt.hpp"

namespace mzgen {

namespace {

std::string join_error_messages(const std::vector<Diagnostic>& diags) {
  std::string joined;
  for (const auto& d : diags) {
    if (d.severity != Severity::Error) continue;
    if (!joined.empty()) joined += "; ";
    joined += d.message;
  }
  return joined;
}

SolveOutcome dispatch_solve(const std::string& model_text, const ModelAst& ast,
                            const RunConfig& config) {
  if (config.solver_mode == SolverMode::External) {
    if (!config.external)
      throw std::invalid_argument("external solver mode needs a solver config");
    return run_external(model_text, *config.external);
  }
  return solve_builtin(ast, config.limits);
}

}  // namespace

RunRecord run_instance(const ModelSpec& spec, TextBackend& backend,
                       const RunConfig& config) {
  if (config.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  RunRecord record;
  record.spec = spec;

  std::string current_model;  // edit input for the next repair call
  std::string error_text;     // error output of the previous step

  for (int step = 1; step <= config.max_steps; ++step) {
    StepTrace trace;
    trace.index = step;

    BackendResult response;
    try {
      if (step == 1) {
        PromptText prompt = build_generation_prompt(spec);
        trace.kind = CallKind::Generate;
        trace.prompt_or_instruction = prompt.content;
        response = backend.complete(prompt, config.generation_params);
      } else {
        RepairInstruction instruction = build_repair_instruction(error_text);
        trace.kind = CallKind::Edit;
        trace.prompt_or_instruction = instruction.content;
        response = backend.edit(current_model, instruction, config.edit_params);
      }
    } catch (const BackendError& e) {
      record.aborted = true;
      record.abort_reason = e.what();
      break;
    }
    trace.backend_text = response.text;
    trace.prompt_tokens = response.prompt_tokens;
    trace.completion_tokens = response.completion_tokens;

    try {
      trace.extracted_model = extract_model_text(response.text);
    } catch (const EmptyModelError&) {
      trace.extracted_model.clear();
      trace.diagnostics = {make_error("E103", "empty model text")};
    }

    if (trace.diagnostics.empty()) {
      ParseResult parsed = parse_model(trace.extracted_model);
      if (parsed.ok()) {
        trace.diagnostics = validate(parsed.ast);
        if (!has_errors(trace.diagnostics)) {
          trace.solve_outcome =
              dispatch_solve(trace.extracted_model, parsed.ast, config);
          if (outcome_executed(*trace.solve_outcome)) {
            // Valid in its execution: stop and judge conformance.
            record.valid = true;
            record.correct = check_conformance(parsed.ast, spec).correct;
            record.final_model = trace.extracted_model;
            record.trace.push_back(std::move(trace));
            break;
          }
          if (const auto* ce = std::get_if<CompileError>(&*trace.solve_outcome)) {
            error_text = ce->message;
          } else {
            const auto& limit = std::get<LimitReached>(*trace.solve_outcome);
            error_text = limit.kind == LimitKind::Time
                             ? "solver limit reached: time"
                             : "solver limit reached: nodes";
          }
        } else {
          error_text = join_error_messages(trace.diagnostics);
        }
      } else {
        trace.diagnostics = parsed.diagnostics;
        error_text = join_error_messages(trace.diagnostics);
      }
    } else {
      error_text = join_error_messages(trace.diagnostics);
    }

    current_model = trace.extracted_model;
    record.final_model = trace.extracted_model;
    record.trace.push_back(std::move(trace));
  }

  record.steps = static_cast<int>(record.trace.size());
  record.tokens = 0;
  for (const auto& t : record.trace)
    record.tokens += t.prompt_tokens + t.completion_tokens;
  if (!record.valid) record.correct = false;
  return record;
}

std::vector<RunRecord> run_suite(const std::vector<ModelSpec>& specs,
                                 TextBackend& backend, const RunConfig& config) {
  if (specs.empty()) throw std::invalid_argument("run_suite needs at least one spec");
  std::vector<RunRecord> records;
  records.reserve(specs.size());
  for (const ModelSpec& spec : specs) {
    try {
      records.push_back(run_instance(spec, backend, config));
    } catch (const std::exception& e) {
      // Instance isolation: a failure lands in its record, never the suite.
      RunRecord record;
      record.spec = spec;
      record.aborted = true;
      record.abort_reason = e.what();
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<ScriptEntry> script_from_trace(const std::vector<StepTrace>& trace) {
  std::vector<ScriptEntry> script;
  script.reserve(trace.size());
  for (const auto& step : trace)
    script.push_back(ScriptEntry{step.kind, step.backend_text, step.prompt_tokens,
                                 step.completion_tokens});
  return script;
}

}  // namespace mzgen
