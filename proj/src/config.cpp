// SPDX-License-Identifier: Apache-2.0

#include "mzgen/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mzgen {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (...) {
    throw std::runtime_error("config key `" + key + "` needs an integer, got: " + value);
  }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected key=value, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("line " + std::to_string(line_no) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> load_key_values(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_key_values(buffer.str());
}

HttpBackendConfig load_backend_config(const std::filesystem::path& path) {
  auto kv = load_key_values(path);
  HttpBackendConfig config;
  for (const auto& [key, value] : kv) {
    if (key == "endpoint_url") {
      config.endpoint_url = value;
    } else if (key == "generate_model") {
      config.generate_model = value;
    } else if (key == "edit_model") {
      config.edit_model = value;
    } else if (key == "api_key_env") {
      config.api_key_env = value;
    } else if (key == "timeout_ms") {
      config.timeout_ms = static_cast<int>(to_int(key, value));
    } else if (key == "edit_via_completions") {
      config.edit_via_completions = value == "true" || value == "1" || value == "yes";
    } else {
      throw std::runtime_error("unknown backend config key: " + key);
    }
  }
  if (config.endpoint_url.empty())
    throw std::runtime_error("backend config needs endpoint_url");
  return config;
}

ModelSpec model_spec_from_key_values(const std::map<std::string, std::string>& kv) {
  ModelSpec spec;
  spec.id = 0;
  spec.variable_count = 0;
  bool have_count = false;

  for (const auto& [key, value] : kv) {
    if (key == "id") {
      spec.id = static_cast<int>(to_int(key, value));
    } else if (key == "variable") {
      if (value == "discrete")
        spec.variable_kind = VariableKind::DiscreteScalars;
      else if (value == "array" || value == "array disc." || value == "array_disc")
        spec.variable_kind = VariableKind::DiscreteArray;
      else
        throw std::runtime_error("variable must be discrete or array, got: " + value);
    } else if (key == "count") {
      spec.variable_count = static_cast<int>(to_int(key, value));
      have_count = true;
    } else if (key == "domain") {
      if (value == "open")
        spec.domain_kind = DomainKind::Open;
      else if (value == "defined")
        spec.domain_kind = DomainKind::Defined;
      else
        throw std::runtime_error("domain must be open or defined, got: " + value);
    } else if (key == "constraint") {
      if (value == "none" || value == "no")
        spec.constraint_kind = ConstraintKind::None;
      else if (value == "simple" || value == "yes")
        spec.constraint_kind = ConstraintKind::Simple;
      else if (value == "all_different" || value == "all_diff" ||
               value == "alldifferent")
        spec.constraint_kind = ConstraintKind::AllDifferent;
      else
        throw std::runtime_error(
            "constraint must be none, simple or all_different, got: " + value);
    } else if (key == "domain_bounds") {
      std::size_t sep = value.find("..");
      if (sep == std::string::npos)
        throw std::runtime_error("domain_bounds must look like lo..hi, got: " + value);
      spec.defined_domain = Bounds{to_int(key, trim(value.substr(0, sep))),
                                   to_int(key, trim(value.substr(sep + 2)))};
    } else {
      throw std::runtime_error("unknown spec config key: " + key);
    }
  }

  if (!have_count) throw std::runtime_error("spec config needs count");
  if (spec.id <= 0) throw std::runtime_error("spec config needs a positive id");
  if (spec.domain_kind == DomainKind::Defined && !spec.defined_domain)
    spec.defined_domain = Bounds{1, spec.variable_count};
  if (auto violation = spec_invariant_violation(spec))
    throw std::runtime_error("invalid spec: " + *violation);
  return spec;
}

ModelSpec load_model_spec(const std::filesystem::path& path) {
  return model_spec_from_key_values(load_key_values(path));
}

}  // namespace mzgen
