// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one check per shipped guarantee, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ast_gen.hpp"
#include "mzgen/analysis.hpp"
#include "mzgen/orchestrator.hpp"
#include "mzgen/parser.hpp"
#include "mzgen/printer.hpp"
#include "mzgen/proc.hpp"
#include "mzgen/prompt.hpp"
#include "mzgen/report.hpp"
#include "mzgen/solver.hpp"

using namespace mzgen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string name;
  double time_budget_s;  // <= 0: no budget
  std::function<Outcome()> run;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass(std::string detail = {}) { return {true, std::move(detail)}; }

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t gap = line.find("  ", pos);
    std::string field =
        line.substr(pos, gap == std::string::npos ? std::string::npos : gap - pos);
    if (!field.empty()) fields.push_back(field);
    if (gap == std::string::npos) break;
    pos = line.find_first_not_of(' ', gap);
    if (pos == std::string::npos) break;
  }
  return fields;
}

// --- 1. benchmark table replay ------------------------------------------------

const fs::path kResultsJson = fs::temp_directory_path() / "mzgen_acceptance_results.json";

Outcome table_replay() {
  fs::path script = fs::path(MZGEN_DATA_DIR) / "paper_replay.json";
  fs::path csv = fs::temp_directory_path() / "mzgen_acceptance_results.csv";

  ProcessResult proc = run_process(
      {MZGEN_CLI_PATH, "bench", "--script", script.string(), "--out-json",
       kResultsJson.string(), "--out-csv", csv.string()},
      30'000);
  if (proc.exit_code != 0)
    return fail("bench exited with " + std::to_string(proc.exit_code) + ": " + proc.err);

  // valid, correct, step per instance.
  const std::vector<std::array<std::string, 3>> expected = {
      {"yes", "yes", "2"}, {"yes", "yes", "2"}, {"yes", "yes", "1"},
      {"yes", "yes", "1"}, {"no", "no", "10"},  {"yes", "no", "2"},
      {"yes", "no", "2"},  {"yes", "no", "2"},  {"yes", "yes", "2"},
      {"no", "no", "10"},
  };

  auto lines = split_lines(proc.out);
  if (lines.size() < 11) return fail("expected a header and ten rows in bench output");
  for (int id = 1; id <= 10; ++id) {
    auto fields = split_fields(lines[id]);
    if (fields.size() != 8)
      return fail("row " + std::to_string(id) + " does not have eight columns");
    if (fields[0] != std::to_string(id))
      return fail("row " + std::to_string(id) + " out of order");
    const auto& want = expected[id - 1];
    if (fields[4] != want[0] || fields[5] != want[1] || fields[6] != want[2])
      return fail("row " + std::to_string(id) + " is " + fields[4] + "/" + fields[5] +
                  "/" + fields[6] + ", expected " + want[0] + "/" + want[1] + "/" +
                  want[2]);
  }
  return pass("all ten valid/correct/step triples match");
}

// --- 2. missing include -----------------------------------------------------

Outcome missing_include() {
  std::string source = "array[1..10] of var 1..10: q;\nconstraint all_different(q);\n"
                       "solve satisfy;";
  ParseResult parsed = parse_model(source);
  if (!parsed.ok()) return fail("fixture model failed to parse");

  std::vector<Diagnostic> diags = validate(parsed.ast);
  const Diagnostic* e001 = nullptr;
  for (const auto& d : diags)
    if (d.code == "E001") e001 = &d;
  if (!e001) return fail("validate did not emit E001");

  SolveOutcome outcome = solve_builtin(parsed.ast);
  const auto* error = std::get_if<CompileError>(&outcome);
  if (!error) return fail("solve_builtin did not return CompileError");
  if (error->message != e001->message)
    return fail("CompileError message differs from the E001 diagnostic");

  RepairInstruction instruction = build_repair_instruction(error->message);
  if (instruction.content.find(e001->message) == std::string::npos)
    return fail("repair instruction does not embed the error message verbatim");
  return pass("E001 -> CompileError -> repair instruction, verbatim");
}

// --- 3. parser round-trip ---------------------------------------------------

Outcome parser_roundtrip() {
  testgen::AstGenerator gen(0xC0FFEE);
  for (int i = 0; i < 1000; ++i) {
    ModelAst ast = gen.model();
    std::string printed = print_model(ast);
    ParseResult reparsed = parse_model(printed);
    if (!reparsed.ok())
      return fail("iteration " + std::to_string(i) + ": reparse failed on\n" + printed);
    if (!(reparsed.ast == ast))
      return fail("iteration " + std::to_string(i) + ": parse(print(a)) != a on\n" +
                  printed);
    if (print_model(reparsed.ast) != printed)
      return fail("iteration " + std::to_string(i) + ": print not a fixpoint on\n" +
                  printed);
  }
  return pass("1000 generated asts round-tripped");
}

// --- 4. solver vs oracle ----------------------------------------------------

// Random valid models: up to 4 grounded variables, every domain at most 6
// values, type-correct constraints over the declared variables.
struct SmallModelGen {
  std::mt19937 rng{0x5EED5};

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::string domain() {
    switch (pick(0, 3)) {
      case 0: return "int";  // boxed to at most 6 values via limits
      case 1: {
        int lo = pick(-3, 3);
        return std::to_string(lo) + ".." + std::to_string(lo + pick(0, 5));
      }
      case 2: return "{1, 3, 5}";
      default: {
        int lo = pick(0, 2);
        return std::to_string(lo) + ".." + std::to_string(lo + pick(1, 3));
      }
    }
  }

  std::string model() {
    int grounded = pick(1, 4);
    bool array = grounded >= 2 && pick(0, 2) == 0;
    int array_len = array ? pick(2, grounded) : 0;
    int scalars = grounded - array_len;

    std::string source = "include \"alldifferent.mzn\";\n";
    std::vector<std::string> terms;  // int-valued atoms
    if (array) {
      source += "array[1.." + std::to_string(array_len) + "] of var " + domain() +
                ": q;\n";
      for (int i = 1; i <= array_len; ++i)
        terms.push_back("q[" + std::to_string(i) + "]");
    }
    for (int i = 0; i < scalars; ++i) {
      std::string name = "v" + std::to_string(i);
      source += "var " + domain() + ": " + name + ";\n";
      terms.push_back(name);
    }

    auto term = [&]() -> std::string {
      if (pick(0, 2) == 0) return std::to_string(pick(-3, 6));
      return terms[pick(0, static_cast<int>(terms.size()) - 1)];
    };
    auto int_expr = [&]() -> std::string {
      switch (pick(0, 3)) {
        case 0: return term() + " + " + term();
        case 1: return term() + " - " + term();
        case 2: return term() + " * " + term();
        default: return term();
      }
    };
    const char* cmp[] = {"=", "!=", "<", "<=", ">", ">="};
    auto bool_expr = [&]() -> std::string {
      std::string atom = int_expr() + " " + cmp[pick(0, 5)] + " " + int_expr();
      switch (pick(0, 3)) {
        case 0: return atom + " /\\ " + term() + " " + cmp[pick(0, 5)] + " " + term();
        case 1: return atom + " \\/ " + term() + " " + cmp[pick(0, 5)] + " " + term();
        case 2: return "not (" + atom + ")";
        default: return atom;
      }
    };

    int constraints = pick(0, 3);
    for (int c = 0; c < constraints; ++c) {
      if (array && pick(0, 3) == 0)
        source += "constraint all_different(q);\n";
      else
        source += "constraint " + bool_expr() + ";\n";
    }
    source += "solve satisfy;\n";
    return source;
  }
};

Outcome solver_oracle_equivalence() {
  SmallModelGen gen;
  SolveLimits limits;
  limits.open_lo = 1;
  limits.open_hi = 6;

  for (int round = 0; round < 200; ++round) {
    std::string source = gen.model();
    ParseResult parsed = parse_model(source);
    if (!parsed.ok()) return fail("generated model failed to parse:\n" + source);
    if (has_errors(validate(parsed.ast)))
      return fail("generated model failed validation:\n" + source);

    OracleSolutions oracle = brute_force_oracle(parsed.ast, limits);
    SolveOutcome outcome = solve_builtin(parsed.ast, limits);

    if (oracle.solutions.empty()) {
      if (!std::holds_alternative<Unsatisfiable>(outcome))
        return fail("round " + std::to_string(round) +
                    ": oracle says unsat, solver disagrees:\n" + source);
      continue;
    }
    const auto* sat = std::get_if<Satisfied>(&outcome);
    if (!sat)
      return fail("round " + std::to_string(round) +
                  ": oracle found solutions, solver returned none:\n" + source);
    std::vector<long long> flat = flatten_assignment(sat->assignment, parsed.ast);
    bool member = false;
    for (const auto& solution : oracle.solutions)
      if (solution == flat) {
        member = true;
        break;
      }
    if (!member)
      return fail("round " + std::to_string(round) +
                  ": solver assignment not in the oracle's solution set:\n" + source);
    if (flat != oracle.solutions.front())
      return fail("round " + std::to_string(round) +
                  ": solver assignment is not the search-order minimum:\n" + source);
  }
  return pass("200 models agree, assignments minimal");
}

// --- 5. loop budget ---------------------------------------------------------

Outcome loop_budget() {
  for (int budget : {1, 3, 10}) {
    std::vector<ScriptEntry> script;
    script.push_back({CallKind::Generate, "var int x;", 10, 10});
    for (int i = 1; i < budget; ++i)
      script.push_back({CallKind::Edit, "var int x;", 10, 10});

    ScriptedBackend backend(script);
    RunConfig config;
    config.max_steps = budget;
    RunRecord record = run_instance(builtin_instances()[0], backend, config);

    if (record.steps != budget)
      return fail("max_steps " + std::to_string(budget) + ": steps is " +
                  std::to_string(record.steps));
    if (record.valid) return fail("a broken model counted as valid");
    if (record.aborted) return fail("the run aborted instead of exhausting the budget");
    if (backend.consumed() != static_cast<std::size_t>(budget))
      return fail("max_steps " + std::to_string(budget) + ": backend saw " +
                  std::to_string(backend.consumed()) + " calls");
  }
  return pass("budgets 1, 3 and 10 hit exactly");
}

// --- 6. conformance verdicts -------------------------------------------------

Outcome conformance_verdicts() {
  auto scalars = [](int n, const std::string& domain) {
    std::string out;
    for (int i = 1; i <= n; ++i)
      out += "var " + domain + ": x" + std::to_string(i) + ";\n";
    return out;
  };
  const std::string all_ten =
      "constraint all_different([x1, x2, x3, x4, x5, x6, x7, x8, x9, x10]);\n";

  struct Fixture {
    int spec_id;
    bool expect_correct;
    std::string source;
  };
  // One conforming and one non-conforming model per spec family.
  const Fixture fixtures[] = {
      // discrete / open / none
      {1, true, scalars(10, "int") + "solve satisfy;\n"},
      {1, false, scalars(8, "int") + "solve satisfy;\n"},
      // discrete / defined / simple
      {4, true, scalars(10, "1..10") + "constraint x1 < x2;\nsolve satisfy;\n"},
      {4, false, scalars(10, "1..10") + "solve satisfy;\n"},
      // discrete / defined / all_different
      {5, true, "include \"alldifferent.mzn\";\n" + scalars(10, "1..10") + all_ten +
                    "solve satisfy;\n"},
      {5, false, scalars(10, "1..10") + "constraint x1 != x2;\nsolve satisfy;\n"},
      // array / open / none
      {6, true, "array[1..10] of var int: q;\nsolve satisfy;\n"},
      {6, false, scalars(10, "int") + "solve satisfy;\n"},
      // array / open / simple
      {7, true,
       "array[1..10] of var int: q;\nconstraint q[1] != q[2];\nsolve satisfy;\n"},
      {7, false,
       "array[1..8] of var int: q;\nconstraint q[1] != q[2];\nsolve satisfy;\n"},
      // array / defined / all_different
      {10, true,
       "include \"alldifferent.mzn\";\narray[1..10] of var 1..10: q;\n"
       "constraint all_different(q);\nsolve satisfy;\n"},
      {10, false,
       "array[1..10] of var 1..10: q;\nconstraint q[1] < q[2];\nsolve satisfy;\n"},
  };

  int index = 0;
  for (const auto& fixture : fixtures) {
    ++index;
    ParseResult parsed = parse_model(fixture.source);
    if (!parsed.ok())
      return fail("fixture " + std::to_string(index) + " failed to parse");
    if (has_errors(validate(parsed.ast)))
      return fail("fixture " + std::to_string(index) +
                  " is invalid; conformance would not be exercised");
    ConformanceReport report =
        check_conformance(parsed.ast, builtin_instances()[fixture.spec_id - 1]);
    if (report.correct != fixture.expect_correct)
      return fail("fixture " + std::to_string(index) + " (spec " +
                  std::to_string(fixture.spec_id) + "): correct=" +
                  (report.correct ? "true" : "false") + ", expected " +
                  (fixture.expect_correct ? "true" : "false"));
  }
  return pass("12 of 12 verdicts match");
}

// --- 7. trace replay fidelity -------------------------------------------------

Outcome trace_replay_fidelity() {
  if (!fs::exists(kResultsJson))
    return fail("criterion 1 must run first to produce " + kResultsJson.string());
  std::vector<RunRecord> records = import_records_json(kResultsJson);
  if (records.size() != 10)
    return fail("expected 10 recorded runs, found " + std::to_string(records.size()));

  for (const auto& original : records) {
    ScriptedBackend backend(script_from_trace(original.trace));
    RunRecord rerun = run_instance(original.spec, backend, RunConfig{});
    if (!(rerun == original))
      return fail("instance " + std::to_string(original.spec.id) +
                  " did not reproduce");
    if (run_record_to_json(rerun).dump() != run_record_to_json(original).dump())
      return fail("instance " + std::to_string(original.spec.id) +
                  " reproduced but serializes differently");
  }
  return pass("all ten runs reproduce bit-identically");
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"benchmark table replay (hermetic bench --script paper_replay.json)", 5.0, table_replay},
      {"missing-include failure mode (E001 end to end)", 0, missing_include},
      {"parser round-trip property (1000 random asts)", 10.0, parser_roundtrip},
      {"solver-oracle equivalence (200 random models)", 30.0, solver_oracle_equivalence},
      {"loop-budget property (max_steps 1, 3, 10)", 0, loop_budget},
      {"conformance verdicts (12 fixture models)", 0, conformance_verdicts},
      {"trace replay fidelity (criterion-1 records)", 0, trace_replay_fidelity},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = checks[i].run();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.passed && checks[i].time_budget_s > 0 &&
        seconds > checks[i].time_budget_s) {
      outcome = fail("passed but took " + std::to_string(seconds) + "s, budget " +
                     std::to_string(checks[i].time_budget_s) + "s");
    }
    std::printf("[%s] %zu. %s (%.2fs)%s%s\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                checks[i].name.c_str(), seconds, outcome.detail.empty() ? "" : " — ",
                outcome.detail.c_str());
    if (!outcome.passed) ++failures;
  }
  return failures;
}
