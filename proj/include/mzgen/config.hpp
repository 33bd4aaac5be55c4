// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "mzgen/http_backend.hpp"
#include "mzgen/spec.hpp"

namespace mzgen {

/// Plain-text key=value config format: one pair per line, '#' starts a
/// comment, blank lines ignored, keys and values trimmed. Unknown keys are
/// an error in the typed loaders below.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> load_key_values(const std::filesystem::path& path);

/// Backend config keys: endpoint_url, generate_model, edit_model,
/// api_key_env, timeout_ms, edit_via_completions.
HttpBackendConfig load_backend_config(const std::filesystem::path& path);

/// Model-spec config keys: id, variable (discrete|array), count,
/// domain (open|defined), constraint (none|simple|all_different, the report
/// vocabulary no|yes|all_diff also accepted), domain_bounds (lo..hi,
/// optional). Throws std::runtime_error with an explanation on invalid
/// specs.
ModelSpec load_model_spec(const std::filesystem::path& path);
ModelSpec model_spec_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace mzgen
