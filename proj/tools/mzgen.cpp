// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "mzgen/analysis.hpp"
#include "mzgen/backend.hpp"
#include "mzgen/config.hpp"
#include "mzgen/http_backend.hpp"
#include "mzgen/orchestrator.hpp"
#include "mzgen/parser.hpp"
#include "mzgen/report.hpp"

namespace {

using namespace mzgen;

// Exit codes, a total function over outcome categories:
//   0 success / valid and conforming
//   1 invalid or non-conforming model
//   2 usage error
//   3 backend, transport or external-tool failure
//   4 internal error
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kBackend = 3;
constexpr int kInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

ModelSpec resolve_spec(const std::string& spec_arg) {
  if (spec_arg.rfind("builtin:", 0) == 0) {
    int id = std::stoi(spec_arg.substr(8));
    for (const auto& spec : builtin_instances())
      if (spec.id == id) return spec;
    throw CLI::ValidationError("--spec", "builtin id must be 1..10");
  }
  return load_model_spec(spec_arg);
}

struct BackendChoice {
  std::string script_path;
  std::string backend_cfg_path;

  std::unique_ptr<TextBackend> make() const {
    if (!script_path.empty())
      return std::make_unique<ScriptedBackend>(load_script(script_path));
    if (!backend_cfg_path.empty())
      return std::make_unique<HttpBackend>(load_backend_config(backend_cfg_path));
    throw CLI::ValidationError("backend",
                               "need --script <replay.json> or --backend <cfg>");
  }
};

int record_exit_code(const RunRecord& record) {
  if (record.aborted) return kBackend;
  return record.valid && record.correct ? kOk : kInvalid;
}

void print_verdicts(const RunRecord& record) {
  std::cout << "valid: " << (record.valid ? "yes" : "no")
            << "\ncorrect: " << (record.correct ? "yes" : "no")
            << "\nsteps: " << record.steps << "\ntokens: " << record.tokens << "\n";
  if (record.aborted) std::cout << "aborted: " << record.abort_reason << "\n";
}

int cmd_generate(const std::string& spec_arg, const BackendChoice& backend_choice,
                 const RunConfig& config, const std::string& out_path) {
  ModelSpec spec = resolve_spec(spec_arg);
  auto backend = backend_choice.make();
  RunRecord record = run_instance(spec, *backend, config);

  if (!record.final_model.empty())
    std::cout << record.final_model << "\n\n";
  print_verdicts(record);
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw IoError("cannot write " + out_path);
    file << run_record_to_json(record).dump(2) << '\n';
  }
  return record_exit_code(record);
}

int cmd_check(const std::string& model_path, const std::string& spec_arg,
              const SolveLimits& limits) {
  ModelSpec spec = resolve_spec(spec_arg);
  std::string source = read_file(model_path);

  ParseResult parsed = parse_model(source);
  std::vector<Diagnostic> diags =
      parsed.ok() ? validate(parsed.ast) : parsed.diagnostics;
  for (const auto& d : diags) std::cout << render_diagnostic_line(d) << "\n";

  bool valid = parsed.ok() && !has_errors(diags);
  if (valid) {
    SolveOutcome outcome = solve_builtin(parsed.ast, limits);
    valid = outcome_executed(outcome);
    if (!valid) std::cout << describe_outcome(outcome) << "\n";
  }

  ConformanceReport report = parsed.ok()
                                 ? check_conformance(parsed.ast, spec)
                                 : ConformanceReport{false, {"model invalid"}};
  std::cout << "valid: " << (valid ? "yes" : "no") << "\n";
  std::cout << "correct: " << (report.correct ? "yes" : "no") << "\n";
  for (const auto& m : report.mismatches) std::cout << "mismatch: " << m << "\n";
  return valid && report.correct ? kOk : kInvalid;
}

int cmd_solve(const std::string& model_path, bool external,
              const ExternalSolverConfig& external_config, const SolveLimits& limits) {
  std::string source = read_file(model_path);

  SolveOutcome outcome = CompileError{"unparsed"};
  if (external) {
    std::vector<std::string> warnings;
    outcome = run_external(source, external_config, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    ParseResult parsed = parse_model(source);
    if (!parsed.ok()) {
      for (const auto& d : parsed.diagnostics)
        std::cout << render_diagnostic_line(d) << "\n";
      return kInvalid;
    }
    outcome = solve_builtin(parsed.ast, limits);
  }
  std::cout << describe_outcome(outcome) << "\n";
  return outcome_executed(outcome) ? kOk : kInvalid;
}

int cmd_bench(const BackendChoice& backend_choice, const RunConfig& config,
              const std::string& out_json, const std::string& out_csv, int jobs) {
  auto backend = backend_choice.make();
  std::vector<ModelSpec> specs = builtin_instances();

  if (jobs > 1 && !backend_choice.script_path.empty())
    std::cerr << "note: scripted replay runs sequentially; ignoring --jobs\n";
  // Live instances are independent; scripted replay must consume its script
  // in order, so parallelism only applies to the live path.
  std::vector<RunRecord> records;
  if (jobs > 1 && backend_choice.script_path.empty()) {
    records.resize(specs.size());
    std::vector<std::future<void>> pending;
    std::size_t next = 0;
    while (next < specs.size() || !pending.empty()) {
      while (static_cast<int>(pending.size()) < jobs && next < specs.size()) {
        std::size_t i = next++;
        pending.push_back(std::async(std::launch::async, [&, i] {
          try {
            records[i] = run_instance(specs[i], *backend, config);
          } catch (const std::exception& e) {
            records[i].spec = specs[i];
            records[i].aborted = true;
            records[i].abort_reason = e.what();
          }
        }));
      }
      pending.front().get();
      pending.erase(pending.begin());
    }
  } else {
    records = run_suite(specs, *backend, config);
  }

  std::cout << render_table(records);
  export_results(records, ExportFormat::Json, out_json, config.limits);
  export_results(records, ExportFormat::Csv, out_csv, config.limits);
  std::cout << "wrote " << out_json << " and " << out_csv << "\n";

  for (const auto& r : records)
    if (r.aborted) {
      std::cerr << "instance " << r.spec.id << " aborted: " << r.abort_reason << "\n";
      return kBackend;
    }
  return kOk;
}

int cmd_replay(const std::string& trace_path) {
  std::vector<RunRecord> originals = import_records_json(trace_path);
  if (originals.empty()) {
    std::cerr << "no runs in " << trace_path << "\n";
    return kUsage;
  }

  bool all_identical = true;
  for (const auto& original : originals) {
    RunConfig config;
    // Budget reconstruction: a run that ended by exhausting its budget ran
    // exactly `steps` steps; an aborted run needs one more attempted call to
    // reproduce the abort.
    config.max_steps = original.aborted ? original.steps + 1
                       : original.steps > 0 ? original.steps
                                            : 1;
    ScriptedBackend backend(script_from_trace(original.trace));
    RunRecord rerun = run_instance(original.spec, backend, config);
    bool identical = rerun == original &&
                     run_record_to_json(rerun).dump() ==
                         run_record_to_json(original).dump();
    std::cout << "instance " << original.spec.id << ": "
              << (identical ? "reproduced" : "MISMATCH") << "\n";
    all_identical = all_identical && identical;
  }
  return all_identical ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MiniZinc-subset model generation, validation and repair pipeline"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "run one instance end to end");
  std::string gen_spec;
  BackendChoice gen_backend;
  std::string gen_out;
  RunConfig gen_config;
  generate->add_option("--spec", gen_spec, "spec file or builtin:N")->required();
  generate->add_option("--backend", gen_backend.backend_cfg_path, "backend config file");
  generate->add_option("--script", gen_backend.script_path, "scripted replay file");
  generate->add_option("--max-steps", gen_config.max_steps, "backend call budget")
      ->check(CLI::PositiveNumber);
  generate->add_option("--out", gen_out, "write the run record JSON here");

  // check
  auto* check = app.add_subcommand("check", "validity diagnostics + conformance");
  std::string check_model, check_spec;
  SolveLimits check_limits;
  check->add_option("model", check_model, "model file (.mzn)")->required();
  check->add_option("--spec", check_spec, "spec file or builtin:N")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve a model file");
  std::string solve_model;
  bool solve_external = false;
  ExternalSolverConfig solve_external_config;
  SolveLimits solve_limits;
  solve->add_option("model", solve_model, "model file (.mzn)")->required();
  solve->add_flag("--external", solve_external, "use an external MiniZinc toolchain");
  solve->add_option("--solver-bin", solve_external_config.binary_path,
                    "external toolchain binary (default: minizinc)");
  solve->add_option("--solver-name", solve_external_config.solver_name,
                    "external solver name");
  solve->add_option("--time-limit", solve_external_config.time_limit_ms,
                    "external time limit in ms");
  solve->add_flag("--keep-artifacts", solve_external_config.keep_artifacts,
                  "keep the temporary .mzn file");
  solve->add_option("--max-nodes", solve_limits.max_nodes, "builtin node budget");
  solve->add_option("--max-time", solve_limits.max_time_ms, "builtin time budget (ms)");

  // bench
  auto* bench = app.add_subcommand("bench", "run the 10 built-in instances");
  BackendChoice bench_backend;
  RunConfig bench_config;
  std::string bench_out_json = "mzgen_results.json";
  std::string bench_out_csv = "mzgen_results.csv";
  int bench_jobs = 1;
  bench->add_option("--script", bench_backend.script_path, "scripted replay file");
  bench->add_option("--backend", bench_backend.backend_cfg_path, "backend config file");
  bench->add_option("--max-steps", bench_config.max_steps, "backend call budget")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out-json", bench_out_json, "JSON export path");
  bench->add_option("--out-csv", bench_out_csv, "CSV export path");
  bench->add_option("--jobs", bench_jobs, "parallel live instances")
      ->check(CLI::PositiveNumber);

  // replay
  auto* replay = app.add_subcommand("replay", "re-execute a recorded trace");
  std::string replay_path;
  replay->add_option("trace", replay_path, "run record or results JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(gen_spec, gen_backend, gen_config, gen_out);
    if (check->parsed()) return cmd_check(check_model, check_spec, check_limits);
    if (solve->parsed()) {
      if (solve_external && solve_external_config.binary_path.empty())
        solve_external_config.binary_path = "minizinc";
      return cmd_solve(solve_model, solve_external, solve_external_config,
                       solve_limits);
    }
    if (bench->parsed())
      return cmd_bench(bench_backend, bench_config, bench_out_json, bench_out_csv,
                       bench_jobs);
    if (replay->parsed()) return cmd_replay(replay_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kBackend;
  } catch (const ExternalSolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
