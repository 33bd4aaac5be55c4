// SPDX-License-Identifier: Apache-2.0

#include "mzgen/external_solver.hpp"

#include <unistd.h>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>

#include "mzgen/proc.hpp"

namespace mzgen {

namespace {

namespace fs = std::filesystem;

fs::path fresh_model_path() {
  static std::mt19937_64 rng{std::random_device{}()};
  return fs::temp_directory_path() /
         ("mzgen-" + std::to_string(getpid()) + "-" + std::to_string(rng()) + ".mzn");
}

std::string trimmed(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// Parses the default `name = value;` solution lines, including the
// array1d(1..n, [v1, ...]) form. Lines it cannot read are skipped with a
// warning; the outcome still counts as Satisfied.
Assignment parse_solution_block(const std::string& block,
                                std::vector<std::string>* warnings) {
  Assignment assignment;
  std::size_t pos = 0;
  while (pos < block.size()) {
    std::size_t eol = block.find('\n', pos);
    std::string line = trimmed(block.substr(pos, eol == std::string::npos
                                                     ? std::string::npos
                                                     : eol - pos));
    pos = eol == std::string::npos ? block.size() : eol + 1;
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string name = trimmed(line.substr(0, eq));
    std::string rhs = trimmed(line.substr(eq + 1));
    if (!rhs.empty() && rhs.back() == ';') rhs = trimmed(rhs.substr(0, rhs.size() - 1));
    if (name.empty() || rhs.empty()) continue;

    auto parse_int = [](const std::string& text, long long& value) {
      try {
        std::size_t used = 0;
        value = std::stoll(text, &used);
        return used == text.size();
      } catch (...) {
        return false;
      }
    };

    long long scalar = 0;
    if (rhs == "true" || rhs == "false") {
      assignment.emplace(name, static_cast<long long>(rhs == "true"));
      continue;
    }
    if (parse_int(rhs, scalar)) {
      assignment.emplace(name, scalar);
      continue;
    }
    std::size_t open = rhs.find('[');
    std::size_t close = rhs.rfind(']');
    if (open != std::string::npos && close != std::string::npos && close > open) {
      std::vector<long long> elements;
      std::string body = rhs.substr(open + 1, close - open - 1);
      bool ok = true;
      std::size_t start = 0;
      while (start <= body.size() && ok) {
        std::size_t comma = body.find(',', start);
        std::string cell = trimmed(body.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!cell.empty()) {
          long long v = 0;
          if (cell == "true" || cell == "false")
            v = cell == "true";
          else if (!parse_int(cell, v))
            ok = false;
          elements.push_back(v);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (ok) {
        assignment.emplace(name, std::move(elements));
        continue;
      }
    }
    if (warnings)
      warnings->push_back("could not parse solution line: " + line);
  }
  return assignment;
}

}  // namespace

SolveOutcome map_external_output(int exit_code, const std::string& out,
                                 const std::string& err, bool timed_out,
                                 std::vector<std::string>* warnings) {
  if (timed_out) return LimitReached{LimitKind::Time};
  if (exit_code != 0) {
    std::string message = trimmed(err.empty() ? out : err);
    if (message.empty()) message = "solver exited with status " + std::to_string(exit_code);
    return CompileError{message};
  }
  if (out.find("=====UNSATISFIABLE=====") != std::string::npos) return Unsatisfiable{};
  if (out.find("=====UNKNOWN=====") != std::string::npos ||
      out.find("=====UNBOUNDED=====") != std::string::npos)
    return LimitReached{LimitKind::Time};

  std::size_t sep = out.find("----------");
  if (sep == std::string::npos) {
    // Executed but produced no recognizable outcome; surface stderr if any.
    std::string message = trimmed(err);
    if (!message.empty()) return CompileError{message};
    if (warnings) warnings->push_back("no solution separator in solver output");
    return Satisfied{};
  }
  Assignment assignment = parse_solution_block(out.substr(0, sep), warnings);
  if (assignment.empty() && warnings)
    warnings->push_back("solution block had no parseable assignments");
  return Satisfied{std::move(assignment), std::nullopt};
}

SolveOutcome run_external(const std::string& model_text,
                          const ExternalSolverConfig& config,
                          std::vector<std::string>* warnings) {
  if (model_text.empty())
    throw ExternalSolverError(ExternalSolverErrorKind::Io, "model text is empty");
  if (config.binary_path.empty())
    throw ExternalSolverError(ExternalSolverErrorKind::ToolNotFound,
                              "no solver binary configured");
  // A path with a directory component must exist up front; bare names go
  // through PATH lookup and are reported after the spawn attempt.
  if (config.binary_path.find('/') != std::string::npos &&
      !fs::exists(config.binary_path))
    throw ExternalSolverError(ExternalSolverErrorKind::ToolNotFound,
                              "solver binary not found: " + config.binary_path);

  fs::path model_path = fresh_model_path();
  {
    std::ofstream file(model_path);
    if (!file)
      throw ExternalSolverError(ExternalSolverErrorKind::Io,
                                "cannot write " + model_path.string());
    file << model_text;
    if (!model_text.empty() && model_text.back() != '\n') file << '\n';
  }

  // The tool gets its own --time-limit plus a grace period before the hard
  // kill; a healthy toolchain exits on its own well inside the grace.
  ProcessResult proc = run_process(
      {config.binary_path, "--solver", config.solver_name, "--time-limit",
       std::to_string(config.time_limit_ms), model_path.string()},
      config.time_limit_ms + 2'000);

  std::error_code ec;
  if (!config.keep_artifacts) fs::remove(model_path, ec);

  if (proc.spawn_failed)
    throw ExternalSolverError(ExternalSolverErrorKind::ToolNotFound,
                              "solver binary not found: " + config.binary_path);
  return map_external_output(proc.exit_code, proc.out, proc.err, proc.timed_out,
                             warnings);
}

}  // namespace mzgen
