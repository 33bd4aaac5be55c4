// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mzgen/config.hpp"
#include "mzgen/report.hpp"

using namespace mzgen;
namespace fs = std::filesystem;

namespace {

RunRecord sample_record(int id, bool valid, bool correct, int steps, long long tokens) {
  RunRecord record;
  record.spec = builtin_instances()[id - 1];
  record.valid = valid;
  record.correct = correct;
  record.steps = steps;
  record.tokens = tokens;
  record.final_model = "var int: x;\nsolve satisfy;";
  for (int i = 1; i <= steps; ++i) {
    StepTrace step;
    step.index = i;
    step.kind = i == 1 ? CallKind::Generate : CallKind::Edit;
    step.prompt_or_instruction = i == 1 ? "the prompt\nBot:" : "Me: Fix ... Bot:";
    step.backend_text = "var int: x;\nsolve satisfy;";
    step.extracted_model = "var int: x;\nsolve satisfy;";
    if (i < steps)
      step.diagnostics = {make_error("E002", "undefined identifier `y`",
                                     SourceSpan{1, 1, 1, 3})};
    else
      step.solve_outcome = Satisfied{{{"x", 1LL}}, std::nullopt};
    step.prompt_tokens = 10 * i;
    step.completion_tokens = 5 * i;
    record.trace.push_back(std::move(step));
  }
  return record;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  // Fixed-width cells separated by runs of two or more spaces.
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t gap = line.find("  ", pos);
    std::string field = line.substr(pos, gap == std::string::npos ? std::string::npos
                                                                  : gap - pos);
    if (!field.empty()) fields.push_back(field);
    if (gap == std::string::npos) break;
    pos = line.find_first_not_of(' ', gap);
    if (pos == std::string::npos) break;
  }
  return fields;
}

}  // namespace

TEST_CASE("render_table uses the benchmark vocabulary in eight columns") {
  auto records = std::vector<RunRecord>{
      sample_record(3, true, true, 1, 170),
      sample_record(10, false, false, 10, 1787),
  };
  std::string table = render_table(records);
  auto lines = split_lines(table);
  REQUIRE(lines.size() == 3);

  CHECK(split_fields(lines[0]) ==
        std::vector<std::string>{"ID", "Variable", "Domain", "Const.", "Valid",
                                 "Correct", "Step", "Token"});
  CHECK(split_fields(lines[1]) ==
        std::vector<std::string>{"3", "discrete", "defined", "no", "yes", "yes",
                                 "1", "170"});
  CHECK(split_fields(lines[2]) ==
        std::vector<std::string>{"10", "array disc.", "defined", "all_diff", "no",
                                 "no", "10", "1787"});
}

TEST_CASE("rows are ordered by id regardless of input order") {
  auto records = std::vector<RunRecord>{
      sample_record(7, true, false, 2, 300),
      sample_record(2, true, true, 2, 500),
  };
  ReportTable table = build_report_table(records);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].id == 2);
  CHECK(table.rows[1].id == 7);
}

TEST_CASE("render_table is stable under record re-serialization") {
  auto records = std::vector<RunRecord>{sample_record(1, true, true, 2, 500)};
  std::string first = render_table(records);
  RunRecord reloaded = run_record_from_json(run_record_to_json(records[0]));
  CHECK(render_table({reloaded}) == first);
}

TEST_CASE("csv exports hold a header plus one line per record") {
  fs::path path = fs::temp_directory_path() / "mzgen_results_test.csv";
  std::vector<RunRecord> records;
  for (int id = 1; id <= 10; ++id) records.push_back(sample_record(id, true, true, 1, id));
  export_results(records, ExportFormat::Csv, path);

  std::ifstream file(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  auto lines = split_lines(buffer.str());
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "id,variable,domain,constraint,valid,correct,step,token");
  CHECK(lines[1] == "1,discrete,open,no,yes,yes,1,1");
  CHECK(lines[10] == "10,array disc.,defined,all_diff,yes,yes,1,10");
  fs::remove(path);
}

TEST_CASE("json exports round-trip to identical records") {
  fs::path path = fs::temp_directory_path() / "mzgen_results_test.json";
  auto records = std::vector<RunRecord>{
      sample_record(1, true, true, 2, 500),
      sample_record(5, false, false, 10, 1712),
  };
  records[1].trace[3].solve_outcome = Unsatisfiable{};
  records[1].trace[5].solve_outcome = CompileError{"undefined identifier `q`"};
  records[1].trace[7].solve_outcome = LimitReached{LimitKind::Nodes};
  records[1].aborted = true;
  records[1].abort_reason = "script exhausted after 10 calls";

  export_results(records, ExportFormat::Json, path);
  std::vector<RunRecord> reloaded = import_records_json(path);
  CHECK(reloaded == records);
  fs::remove(path);
}

TEST_CASE("csv and json agree on the eight tabular fields") {
  fs::path csv_path = fs::temp_directory_path() / "mzgen_agree.csv";
  fs::path json_path = fs::temp_directory_path() / "mzgen_agree.json";
  auto records = std::vector<RunRecord>{
      sample_record(4, true, true, 1, 205),
      sample_record(6, true, false, 2, 293),
  };
  export_results(records, ExportFormat::Csv, csv_path);
  export_results(records, ExportFormat::Json, json_path);

  std::vector<RunRecord> reloaded = import_records_json(json_path);
  ReportTable from_json = build_report_table(reloaded);

  std::ifstream file(csv_path);
  std::string header;
  std::getline(file, header);
  for (const auto& row : from_json.rows) {
    std::string line;
    REQUIRE(std::getline(file, line));
    std::string expected = std::to_string(row.id) + "," + row.variable + "," +
                           row.domain + "," + row.constraint + "," + row.valid +
                           "," + row.correct + "," + std::to_string(row.step) +
                           "," + std::to_string(row.token);
    CHECK(line == expected);
  }
  fs::remove(csv_path);
  fs::remove(json_path);
}

TEST_CASE("exports refuse unwritable paths") {
  auto records = std::vector<RunRecord>{sample_record(1, true, true, 1, 1)};
  CHECK_THROWS_AS(
      export_results(records, ExportFormat::Csv, "/nonexistent-dir/out.csv"),
      IoError);
  CHECK_THROWS_AS(import_records_json("/nonexistent-dir/in.json"), IoError);
}

TEST_CASE("run records with every outcome shape survive json round-trips") {
  RunRecord record = sample_record(9, true, true, 2, 349);
  record.trace[1].solve_outcome =
      Satisfied{{{"q", std::vector<long long>{1, 2, 3}}, {"s", 7LL}}, 42LL};
  RunRecord reloaded = run_record_from_json(run_record_to_json(record));
  CHECK(reloaded == record);
  CHECK(run_record_to_json(reloaded).dump() == run_record_to_json(record).dump());
}

// --- key=value configs ------------------------------------------------------

TEST_CASE("key=value parsing handles comments and blanks") {
  auto kv = parse_key_values(
      "# a comment\n\nendpoint_url = http://localhost:8080/v1\n"
      "timeout_ms=5000   # trailing comment\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("endpoint_url") == "http://localhost:8080/v1");
  CHECK(kv.at("timeout_ms") == "5000");
  CHECK_THROWS(parse_key_values("not a pair\n"));
}

TEST_CASE("backend configs load and reject unknown keys") {
  fs::path path = fs::temp_directory_path() / "mzgen_backend.conf";
  {
    std::ofstream file(path);
    file << "endpoint_url = http://localhost:9999/v1\n"
            "generate_model = gen-model\n"
            "edit_model = fix-model\n"
            "api_key_env = MY_KEY\n"
            "timeout_ms = 30000\n"
            "edit_via_completions = true\n";
  }
  HttpBackendConfig config = load_backend_config(path);
  CHECK(config.endpoint_url == "http://localhost:9999/v1");
  CHECK(config.generate_model == "gen-model");
  CHECK(config.edit_model == "fix-model");
  CHECK(config.api_key_env == "MY_KEY");
  CHECK(config.timeout_ms == 30000);
  CHECK(config.edit_via_completions);

  {
    std::ofstream file(path);
    file << "endpoint_url = http://x\nmystery = 1\n";
  }
  CHECK_THROWS(load_backend_config(path));
  fs::remove(path);
}

TEST_CASE("model specs load from key=value files") {
  auto kv = parse_key_values(
      "id = 11\nvariable = array\ncount = 4\ndomain = defined\n"
      "constraint = all_diff\ndomain_bounds = 2..9\n");
  ModelSpec spec = model_spec_from_key_values(kv);
  CHECK(spec.id == 11);
  CHECK(spec.variable_kind == VariableKind::DiscreteArray);
  CHECK(spec.variable_count == 4);
  CHECK(spec.domain_kind == DomainKind::Defined);
  CHECK(spec.constraint_kind == ConstraintKind::AllDifferent);
  CHECK(spec.defined_domain == Bounds{2, 9});

  // Defined domains default their suggested bounds to 1..count.
  spec = model_spec_from_key_values(
      parse_key_values("id = 12\nvariable = discrete\ncount = 6\ndomain = defined\n"
                       "constraint = none\n"));
  CHECK(spec.defined_domain == Bounds{1, 6});

  CHECK_THROWS(model_spec_from_key_values(parse_key_values("id = 1\n")));
  CHECK_THROWS(model_spec_from_key_values(
      parse_key_values("id = 1\ncount = 0\nvariable = discrete\n")));
}
