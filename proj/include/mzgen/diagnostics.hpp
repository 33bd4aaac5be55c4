// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mzgen {

/// Half-open is avoided on purpose: both ends are 1-based and inclusive,
/// matching the line:col style of compiler output.
struct SourceSpan {
  int start_line = 1;
  int start_col = 1;
  int end_line = 1;
  int end_col = 1;

  bool operator==(const SourceSpan&) const = default;
};

enum class Severity { Error, Warning };

/// A validity or conformance finding. `message` is what gets spliced into
/// repair instructions, so it is phrased the way a MiniZinc compiler would
/// phrase it. `code` is stable and machine-checkable.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::optional<SourceSpan> span;

  bool operator==(const Diagnostic&) const = default;
};

inline Diagnostic make_error(std::string code, std::string message,
                             std::optional<SourceSpan> span = std::nullopt) {
  return Diagnostic{Severity::Error, std::move(code), std::move(message), span};
}

inline Diagnostic make_warning(std::string code, std::string message,
                               std::optional<SourceSpan> span = std::nullopt) {
  return Diagnostic{Severity::Warning, std::move(code), std::move(message), span};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

/// "ERROR E001 3:1 undefined identifier `all_different`, ..."
/// Span-less diagnostics print "-" in place of line:col.
std::string render_diagnostic_line(const Diagnostic& d);

/// Stable order: span-less first, then by span position, then code, then message.
void sort_diagnostics(std::vector<Diagnostic>& diags);

nlohmann::json diagnostic_to_json(const Diagnostic& d);
Diagnostic diagnostic_from_json(const nlohmann::json& j);
nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diags);

}  // namespace mzgen
