// SPDX-License-Identifier: Apache-2.0

#include "mzgen/backend.hpp"

#include <cctype>
#include <fstream>

#include <json.hpp>

namespace mzgen {

GenerationParams GenerationParams::generation_defaults(std::string model) {
  GenerationParams params;
  params.model_name = std::move(model);
  params.temperature = 0.0;
  params.max_tokens = 200;
  params.top_p = 1.0;
  params.frequency_penalty = 0.0;
  params.presence_penalty = 0.0;
  params.stop = std::vector<std::string>{"Bot:", "Me:"};
  return params;
}

GenerationParams GenerationParams::edit_defaults(std::string model) {
  GenerationParams params;
  params.model_name = std::move(model);
  params.temperature = 0.0;
  params.top_p = 1.0;
  return params;
}

std::string call_kind_name(CallKind kind) {
  return kind == CallKind::Generate ? "generate" : "edit";
}

CallKind call_kind_from_name(const std::string& name) {
  if (name == "generate") return CallKind::Generate;
  if (name == "edit") return CallKind::Edit;
  throw std::invalid_argument("unknown call kind: " + name);
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptEntry> script)
    : script_(std::move(script)) {}

BackendResult ScriptedBackend::next(CallKind kind) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (cursor_ >= script_.size())
    throw BackendError(BackendErrorKind::ScriptExhausted,
                       "script exhausted after " + std::to_string(cursor_) +
                           " calls");
  const ScriptEntry& entry = script_[cursor_];
  if (entry.kind != kind)
    throw BackendError(BackendErrorKind::ScriptExhausted,
                       "script entry " + std::to_string(cursor_ + 1) + " is a " +
                           call_kind_name(entry.kind) + " entry, but a " +
                           call_kind_name(kind) + " call was made");
  ++cursor_;
  return BackendResult{entry.response_text, entry.prompt_tokens,
                       entry.completion_tokens};
}

BackendResult ScriptedBackend::complete(const PromptText&, const GenerationParams&) {
  return next(CallKind::Generate);
}

BackendResult ScriptedBackend::edit(const std::string&, const RepairInstruction&,
                                    const GenerationParams&) {
  return next(CallKind::Edit);
}

std::size_t ScriptedBackend::consumed() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cursor_;
}

std::size_t ScriptedBackend::remaining() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return script_.size() - cursor_;
}

std::vector<ScriptEntry> load_script(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open script file: " + path.string());
  nlohmann::json j = nlohmann::json::parse(file);
  if (!j.is_array())
    throw std::runtime_error("script file must hold a JSON array: " + path.string());
  std::vector<ScriptEntry> script;
  script.reserve(j.size());
  for (const auto& entry : j) {
    script.push_back(ScriptEntry{
        call_kind_from_name(entry.at("kind").get<std::string>()),
        entry.at("response_text").get<std::string>(),
        entry.at("prompt_tokens").get<int>(),
        entry.at("completion_tokens").get<int>(),
    });
  }
  return script;
}

void save_script(const std::vector<ScriptEntry>& script,
                 const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& entry : script) {
    j.push_back({
        {"kind", call_kind_name(entry.kind)},
        {"response_text", entry.response_text},
        {"prompt_tokens", entry.prompt_tokens},
        {"completion_tokens", entry.completion_tokens},
    });
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write script file: " + path.string());
  file << j.dump(2) << '\n';
}

int approx_token_count(std::string_view text) {
  int count = 0;
  bool in_word = false;
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      in_word = false;
    } else if (std::isalnum(uc) || c == '_') {
      if (!in_word) ++count;
      in_word = true;
    } else {
      ++count;  // every punctuation/operator character counts on its own
      in_word = false;
    }
  }
  return count;
}

}  // namespace mzgen
