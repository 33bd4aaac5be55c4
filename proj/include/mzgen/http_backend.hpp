// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "mzgen/backend.hpp"

namespace mzgen {

/// Live adapter configuration. The API key is read from the environment
/// variable named by api_key_env and sent as a bearer token; it is never
/// stored on disk. edit_via_completions emulates the edits capability over
/// the completions endpoint by concatenating input and instruction, for
/// services that only speak completions.
struct HttpBackendConfig {
  std::string endpoint_url;   // e.g. "http://localhost:8080/v1"
  std::string generate_model;
  std::string edit_model;
  std::string api_key_env = "MZGEN_API_KEY";
  int timeout_ms = 60'000;
  bool edit_via_completions = false;
};

/// Request bodies for the classic wire shape; exposed so tests can pin the
/// exact field set without a network.
nlohmann::json completion_request_body(const std::string& model,
                                       const std::string& prompt,
                                       const GenerationParams& params);
nlohmann::json edit_request_body(const std::string& model, const std::string& input,
                                 const std::string& instruction,
                                 const GenerationParams& params);

/// HTTP adapter for any service speaking the classic completions/edits wire
/// shape: POST {base}/completions and {base}/edits, response read from
/// choices[0].text and usage.{prompt_tokens,completion_tokens}. When usage is
/// missing, approx_token_count fills in. Never retries; every transport
/// failure surfaces as a BackendError.
class HttpBackend : public TextBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  BackendResult complete(const PromptText& prompt,
                         const GenerationParams& params) override;
  BackendResult edit(const std::string& input, const RepairInstruction& instruction,
                     const GenerationParams& params) override;

  const HttpBackendConfig& config() const { return config_; }

 private:
  BackendResult post_json(const std::string& path, const nlohmann::json& body,
                          const std::string& usage_fallback_prompt);

  HttpBackendConfig config_;
};

}  // namespace mzgen
