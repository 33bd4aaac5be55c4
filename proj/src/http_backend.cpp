// SPDX-License-Identifier: Apache-2.0

#include "mzgen/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>

namespace mzgen {

namespace {

struct SplitUrl {
  std::string scheme_host_port;  // "http://host:port"
  std::string base_path;         // "" or "/v1"
};

SplitUrl split_url(const std::string& url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw BackendError(BackendErrorKind::Transport,
                       "endpoint_url must start with http:// — got: " + url);
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http")
    throw BackendError(BackendErrorKind::Transport,
                       "only http:// endpoints are supported in this build "
                       "(use a local gateway for TLS): " +
                           url);
  std::size_t path_start = url.find('/', scheme_end + 3);
  SplitUrl split;
  if (path_start == std::string::npos) {
    split.scheme_host_port = url;
  } else {
    split.scheme_host_port = url.substr(0, path_start);
    split.base_path = url.substr(path_start);
    while (!split.base_path.empty() && split.base_path.back() == '/')
      split.base_path.pop_back();
  }
  return split;
}

}  // namespace

nlohmann::json completion_request_body(const std::string& model,
                                       const std::string& prompt,
                                       const GenerationParams& params) {
  nlohmann::json body{
      {"model", model},
      {"prompt", prompt},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
      {"frequency_penalty", params.frequency_penalty},
      {"presence_penalty", params.presence_penalty},
  };
  if (params.max_tokens) body["max_tokens"] = *params.max_tokens;
  if (params.stop) body["stop"] = *params.stop;
  return body;
}

nlohmann::json edit_request_body(const std::string& model, const std::string& input,
                                 const std::string& instruction,
                                 const GenerationParams& params) {
  return nlohmann::json{
      {"model", model},
      {"input", input},
      {"instruction", instruction},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
  };
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {}

BackendResult HttpBackend::post_json(const std::string& path,
                                     const nlohmann::json& body,
                                     const std::string& usage_fallback_prompt) {
  SplitUrl url = split_url(config_.endpoint_url);

  httplib::Client client(url.scheme_host_port);
  client.set_connection_timeout(config_.timeout_ms / 1000,
                                (config_.timeout_ms % 1000) * 1000);
  client.set_read_timeout(config_.timeout_ms / 1000,
                          (config_.timeout_ms % 1000) * 1000);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()))
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto response = client.Post(url.base_path + path, headers, body.dump(),
                              "application/json");
  if (!response)
    throw BackendError(BackendErrorKind::Transport,
                       "request to " + config_.endpoint_url + path + " failed: " +
                           httplib::to_string(response.error()));
  if (response->status < 200 || response->status >= 300)
    throw BackendError(BackendErrorKind::Refusal,
                       "backend returned HTTP " + std::to_string(response->status) +
                           ": " + response->body);

  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(response->body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendErrorKind::Transport,
                       std::string("backend sent unparseable JSON: ") + e.what());
  }

  BackendResult result;
  try {
    result.text = parsed.at("choices").at(0).at("text").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw BackendError(BackendErrorKind::Transport,
                       "backend response has no choices[0].text");
  }
  if (parsed.contains("usage") && parsed["usage"].is_object()) {
    result.prompt_tokens = parsed["usage"].value("prompt_tokens", 0);
    result.completion_tokens = parsed["usage"].value("completion_tokens", 0);
  } else {
    result.prompt_tokens = approx_token_count(usage_fallback_prompt);
    result.completion_tokens = approx_token_count(result.text);
  }
  return result;
}

BackendResult HttpBackend::complete(const PromptText& prompt,
                                    const GenerationParams& params) {
  std::string model = params.model_name.empty() ? config_.generate_model
                                                : params.model_name;
  return post_json("/completions",
                   completion_request_body(model, prompt.content, params),
                   prompt.content);
}

BackendResult HttpBackend::edit(const std::string& input,
                                const RepairInstruction& instruction,
                                const GenerationParams& params) {
  std::string model = params.model_name.empty() ? config_.edit_model
                                                : params.model_name;
  if (config_.edit_via_completions) {
    // Emulation for completion-only services: the broken model followed by
    // the repair instruction, continued after its closing "Bot:".
    std::string prompt = input + "\n" + instruction.content;
    return post_json("/completions", completion_request_body(model, prompt, params),
                     prompt);
  }
  return post_json("/edits", edit_request_body(model, input, instruction.content, params),
                   input + instruction.content);
}

}  // namespace mzgen
