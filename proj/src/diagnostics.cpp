// SPDX-License-Identifier: Apache-2.0

#include "mzgen/diagnostics.hpp"

#include <algorithm>
#include <tuple>

namespace mzgen {

std::string render_diagnostic_line(const Diagnostic& d) {
  std::string line = d.severity == Severity::Error ? "ERROR" : "WARNING";
  line += ' ';
  line += d.code;
  line += ' ';
  if (d.span) {
    line += std::to_string(d.span->start_line);
    line += ':';
    line += std::to_string(d.span->start_col);
  } else {
    line += '-';
  }
  line += ' ';
  line += d.message;
  return line;
}

namespace {

std::tuple<int, int, int, int> span_key(const std::optional<SourceSpan>& span) {
  if (!span) return {0, 0, 0, 0};  // span-less diagnostics sort first
  return {span->start_line, span->start_col, span->end_line, span->end_col};
}

}  // namespace

void sort_diagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tuple_cat(span_key(a.span), std::tie(a.code, a.message)) <
                            std::tuple_cat(span_key(b.span), std::tie(b.code, b.message));
                   });
}

nlohmann::json diagnostic_to_json(const Diagnostic& d) {
  nlohmann::json j{
      {"severity", d.severity == Severity::Error ? "error" : "warning"},
      {"code", d.code},
      {"message", d.message},
      {"span", nullptr},
  };
  if (d.span) {
    j["span"] = {{"start_line", d.span->start_line},
                 {"start_col", d.span->start_col},
                 {"end_line", d.span->end_line},
                 {"end_col", d.span->end_col}};
  }
  return j;
}

Diagnostic diagnostic_from_json(const nlohmann::json& j) {
  Diagnostic d;
  d.severity = j.at("severity").get<std::string>() == "error" ? Severity::Error
                                                              : Severity::Warning;
  d.code = j.at("code").get<std::string>();
  d.message = j.at("message").get<std::string>();
  if (!j.at("span").is_null()) {
    const auto& s = j.at("span");
    d.span = SourceSpan{s.at("start_line").get<int>(), s.at("start_col").get<int>(),
                        s.at("end_line").get<int>(), s.at("end_col").get<int>()};
  }
  return d;
}

nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& diags) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diags) arr.push_back(diagnostic_to_json(d));
  return arr;
}

}  // namespace mzgen
