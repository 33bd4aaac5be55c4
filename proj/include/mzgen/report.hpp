// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mzgen/orchestrator.hpp"

namespace mzgen {

/// One row of the eight-column results table.
struct ReportRow {
  int id = 0;
  std::string variable;    // "discrete" / "array disc."
  std::string domain;      // "open" / "defined"
  std::string constraint;  // "no" / "yes" / "all_diff"
  std::string valid;       // "yes" / "no"
  std::string correct;     // "yes" / "no"
  int step = 0;
  long long token = 0;
};

struct ReportTable {
  std::vector<ReportRow> rows;  // ordered by id ascending
};

ReportTable build_report_table(const std::vector<RunRecord>& records);

/// Fixed-width plain-text table with columns
/// ID Variable Domain Const. Valid Correct Step Token.
std::string render_table(const std::vector<RunRecord>& records);

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExportFormat { Json, Csv };

/// CSV holds exactly the eight table columns; JSON embeds the full records
/// including traces, plus the solver limits in effect, and round-trips
/// losslessly through import_records_json.
void export_results(const std::vector<RunRecord>& records, ExportFormat format,
                    const std::filesystem::path& path,
                    const SolveLimits& limits = {});

std::vector<RunRecord> import_records_json(const std::filesystem::path& path);

// Record (de)serialization, shared by exports, per-run trace files and the
// replay subcommand.
nlohmann::json run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);
nlohmann::json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);
nlohmann::json solve_outcome_to_json(const SolveOutcome& outcome);
SolveOutcome solve_outcome_from_json(const nlohmann::json& j);

}  // namespace mzgen
