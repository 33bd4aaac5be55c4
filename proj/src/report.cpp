// SPDX-License-Identifier: Apache-2.0

#include "mzgen/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace mzgen {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string variable_kind_key(VariableKind k) {
  return k == VariableKind::DiscreteScalars ? "discrete" : "array";
}
VariableKind variable_kind_from_key(const std::string& s) {
  if (s == "discrete") return VariableKind::DiscreteScalars;
  if (s == "array") return VariableKind::DiscreteArray;
  throw std::runtime_error("unknown variable kind: " + s);
}

std::string domain_kind_key(DomainKind k) {
  return k == DomainKind::Open ? "open" : "defined";
}
DomainKind domain_kind_from_key(const std::string& s) {
  if (s == "open") return DomainKind::Open;
  if (s == "defined") return DomainKind::Defined;
  throw std::runtime_error("unknown domain kind: " + s);
}

std::string constraint_kind_key(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::None: return "none";
    case ConstraintKind::Simple: return "simple";
    case ConstraintKind::AllDifferent: return "all_different";
  }
  return {};
}
ConstraintKind constraint_kind_from_key(const std::string& s) {
  if (s == "none") return ConstraintKind::None;
  if (s == "simple") return ConstraintKind::Simple;
  if (s == "all_different") return ConstraintKind::AllDifferent;
  throw std::runtime_error("unknown constraint kind: " + s);
}

}  // namespace

ReportTable build_report_table(const std::vector<RunRecord>& records) {
  ReportTable table;
  for (const auto& r : records) {
    table.rows.push_back(ReportRow{
        r.spec.id,
        variable_kind_label(r.spec.variable_kind),
        domain_kind_label(r.spec.domain_kind),
        constraint_kind_label(r.spec.constraint_kind),
        yes_no(r.valid),
        yes_no(r.correct),
        r.steps,
        r.tokens,
    });
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ReportRow& a, const ReportRow& b) { return a.id < b.id; });
  return table;
}

std::string render_table(const std::vector<RunRecord>& records) {
  ReportTable table = build_report_table(records);

  const std::array<std::string, 8> header = {"ID",    "Variable", "Domain", "Const.",
                                             "Valid", "Correct",  "Step",   "Token"};
  std::vector<std::array<std::string, 8>> cells;
  for (const auto& row : table.rows) {
    cells.push_back({std::to_string(row.id), row.variable, row.domain, row.constraint,
                     row.valid, row.correct, std::to_string(row.step),
                     std::to_string(row.token)});
  }

  std::array<std::size_t, 8> widths;
  for (std::size_t c = 0; c < 8; ++c) {
    widths[c] = header[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }

  auto render_row = [&](const std::array<std::string, 8>& row) {
    std::string line;
    for (std::size_t c = 0; c < 8; ++c) {
      line += row[c];
      if (c + 1 < 8) line += std::string(widths[c] - row[c].size() + 2, ' ');
    }
    line += '\n';
    return line;
  };

  std::string out = render_row(header);
  for (const auto& row : cells) out += render_row(row);
  return out;
}

nlohmann::json model_spec_to_json(const ModelSpec& spec) {
  nlohmann::json j{
      {"id", spec.id},
      {"variable_kind", variable_kind_key(spec.variable_kind)},
      {"variable_count", spec.variable_count},
      {"domain_kind", domain_kind_key(spec.domain_kind)},
      {"constraint_kind", constraint_kind_key(spec.constraint_kind)},
      {"defined_domain", nullptr},
  };
  if (spec.defined_domain)
    j["defined_domain"] = {{"lo", spec.defined_domain->lo},
                           {"hi", spec.defined_domain->hi}};
  return j;
}

ModelSpec model_spec_from_json(const nlohmann::json& j) {
  ModelSpec spec;
  spec.id = j.at("id").get<int>();
  spec.variable_kind = variable_kind_from_key(j.at("variable_kind").get<std::string>());
  spec.variable_count = j.at("variable_count").get<int>();
  spec.domain_kind = domain_kind_from_key(j.at("domain_kind").get<std::string>());
  spec.constraint_kind =
      constraint_kind_from_key(j.at("constraint_kind").get<std::string>());
  if (!j.at("defined_domain").is_null())
    spec.defined_domain = Bounds{j["defined_domain"].at("lo").get<long long>(),
                                 j["defined_domain"].at("hi").get<long long>()};
  return spec;
}

nlohmann::json solve_outcome_to_json(const SolveOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> nlohmann::json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Satisfied>) {
          nlohmann::json assignment = nlohmann::json::object();
          for (const auto& [name, value] : o.assignment) {
            if (const auto* scalar = std::get_if<long long>(&value))
              assignment[name] = *scalar;
            else
              assignment[name] = std::get<std::vector<long long>>(value);
          }
          nlohmann::json j{{"status", "satisfied"},
                           {"assignment", std::move(assignment)},
                           {"objective", nullptr}};
          if (o.objective) j["objective"] = *o.objective;
          return j;
        } else if constexpr (std::is_same_v<T, Unsatisfiable>) {
          return {{"status", "unsatisfiable"}};
        } else if constexpr (std::is_same_v<T, CompileError>) {
          return {{"status", "compile_error"}, {"message", o.message}};
        } else {
          return {{"status", "limit"},
                  {"kind", o.kind == LimitKind::Time ? "time" : "nodes"}};
        }
      },
      outcome);
}

SolveOutcome solve_outcome_from_json(const nlohmann::json& j) {
  std::string status = j.at("status").get<std::string>();
  if (status == "satisfied") {
    Satisfied s;
    for (const auto& [name, value] : j.at("assignment").items()) {
      if (value.is_array())
        s.assignment.emplace(name, value.get<std::vector<long long>>());
      else
        s.assignment.emplace(name, value.get<long long>());
    }
    if (!j.at("objective").is_null()) s.objective = j["objective"].get<long long>();
    return s;
  }
  if (status == "unsatisfiable") return Unsatisfiable{};
  if (status == "compile_error")
    return CompileError{j.at("message").get<std::string>()};
  if (status == "limit")
    return LimitReached{j.at("kind").get<std::string>() == "time" ? LimitKind::Time
                                                                  : LimitKind::Nodes};
  throw std::runtime_error("unknown solve outcome status: " + status);
}

nlohmann::json run_record_to_json(const RunRecord& record) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : record.trace) {
    nlohmann::json t{
        {"index", step.index},
        {"kind", call_kind_name(step.kind)},
        {"prompt_or_instruction", step.prompt_or_instruction},
        {"backend_text", step.backend_text},
        {"extracted_model", step.extracted_model},
        {"diagnostics", diagnostics_to_json(step.diagnostics)},
        {"solve_outcome", nullptr},
        {"prompt_tokens", step.prompt_tokens},
        {"completion_tokens", step.completion_tokens},
    };
    if (step.solve_outcome) t["solve_outcome"] = solve_outcome_to_json(*step.solve_outcome);
    trace.push_back(std::move(t));
  }
  return nlohmann::json{
      {"spec", model_spec_to_json(record.spec)},
      {"valid", record.valid},
      {"correct", record.correct},
      {"steps", record.steps},
      {"tokens", record.tokens},
      {"final_model", record.final_model},
      {"trace", std::move(trace)},
      {"aborted", record.aborted},
      {"abort_reason", record.abort_reason},
  };
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord record;
  record.spec = model_spec_from_json(j.at("spec"));
  record.valid = j.at("valid").get<bool>();
  record.correct = j.at("correct").get<bool>();
  record.steps = j.at("steps").get<int>();
  record.tokens = j.at("tokens").get<long long>();
  record.final_model = j.at("final_model").get<std::string>();
  record.aborted = j.at("aborted").get<bool>();
  record.abort_reason = j.at("abort_reason").get<std::string>();
  for (const auto& t : j.at("trace")) {
    StepTrace step;
    step.index = t.at("index").get<int>();
    step.kind = call_kind_from_name(t.at("kind").get<std::string>());
    step.prompt_or_instruction = t.at("prompt_or_instruction").get<std::string>();
    step.backend_text = t.at("backend_text").get<std::string>();
    step.extracted_model = t.at("extracted_model").get<std::string>();
    for (const auto& d : t.at("diagnostics"))
      step.diagnostics.push_back(diagnostic_from_json(d));
    if (!t.at("solve_outcome").is_null())
      step.solve_outcome = solve_outcome_from_json(t["solve_outcome"]);
    step.prompt_tokens = t.at("prompt_tokens").get<int>();
    step.completion_tokens = t.at("completion_tokens").get<int>();
    record.trace.push_back(std::move(step));
  }
  return record;
}

void export_results(const std::vector<RunRecord>& records, ExportFormat format,
                    const std::filesystem::path& path, const SolveLimits& limits) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());

  if (format == ExportFormat::Csv) {
    file << "id,variable,domain,constraint,valid,correct,step,token\n";
    for (const auto& row : build_report_table(records).rows) {
      std::string variable = row.variable;  // "array disc." carries no comma/quote
      file << row.id << ',' << variable << ',' << row.domain << ','
           << row.constraint << ',' << row.valid << ',' << row.correct << ','
           << row.step << ',' << row.token << '\n';
    }
  } else {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : records) runs.push_back(run_record_to_json(r));
    nlohmann::json j{
        {"runs", std::move(runs)},
        {"solver_limits",
         {{"max_nodes", limits.max_nodes},
          {"max_time_ms", limits.max_time_ms},
          {"open_domain_bounds", {limits.open_lo, limits.open_hi}}}},
        {"note",
         "token counts are backend- or script-reported and are not comparable "
         "across backends"},
    };
    file << j.dump(2) << '\n';
  }
  if (!file.good()) throw IoError("write failed for " + path.string());
}

std::vector<RunRecord> import_records_json(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(file);

  const nlohmann::json* runs = nullptr;
  if (j.is_array())
    runs = &j;
  else if (j.is_object() && j.contains("runs"))
    runs = &j["runs"];
  else if (j.is_object())
    return {run_record_from_json(j)};  // a single per-run trace file
  else
    throw IoError("unrecognized results file shape: " + path.string());

  std::vector<RunRecord> records;
  for (const auto& r : *runs) records.push_back(run_record_from_json(r));
  return records;
}

}  // namespace mzgen
