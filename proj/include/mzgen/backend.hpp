// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzgen/prompt.hpp"

namespace mzgen {

/// Sampling parameters for one backend call, mirroring the classic
/// completions/edits wire shape. max_tokens and stop are absent for edit
/// calls.
struct GenerationParams {
  std::string model_name;
  double temperature = 0.0;
  std::optional<int> max_tokens;
  double top_p = 1.0;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
  std::optional<std::vector<std::string>> stop;

  /// temperature=0, max_tokens=200, top_p=1, penalties 0, stop ["Bot:","Me:"].
  static GenerationParams generation_defaults(std::string model = {});
  /// temperature=0, top_p=1, no max_tokens, no stop.
  static GenerationParams edit_defaults(std::string model = {});
};

struct BackendResult {
  std::string text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  int total_tokens() const { return prompt_tokens + completion_tokens; }
  bool operator==(const BackendResult&) const = default;
};

enum class BackendErrorKind {
  Transport,        // network / HTTP-level failure
  ScriptExhausted,  // scripted backend out of entries or kind mismatch
  Refusal,          // non-2xx response with a message
};

class BackendError : public std::runtime_error {
 public:
  BackendError(BackendErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  BackendErrorKind kind() const { return kind_; }

 private:
  BackendErrorKind kind_;
};

/// The two text-generation capabilities the pipeline needs: completion-style
/// generation and edit-style repair. Implementations must be safe to share
/// across threads.
class TextBackend {
 public:
  virtual ~TextBackend() = default;
  virtual BackendResult complete(const PromptText& prompt,
                                 const GenerationParams& params) = 0;
  virtual BackendResult edit(const std::string& input,
                             const RepairInstruction& instruction,
                             const GenerationParams& params) = 0;
};

enum class CallKind { Generate, Edit };

std::string call_kind_name(CallKind kind);                 // "generate"/"edit"
CallKind call_kind_from_name(const std::string& name);

struct ScriptEntry {
  CallKind kind = CallKind::Generate;
  std::string response_text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  bool operator==(const ScriptEntry&) const = default;
};

/// Deterministic replay backend: each call consumes the next script entry,
/// which must match the call's kind. Cursor advancement is serialized, so
/// concurrent calls are atomic (though replay suites run sequentially).
class ScriptedBackend : public TextBackend {
 public:
  explicit ScriptedBackend(std::vector<ScriptEntry> script);

  BackendResult complete(const PromptText& prompt,
                         const GenerationParams& params) override;
  BackendResult edit(const std::string& input, const RepairInstruction& instruction,
                     const GenerationParams& params) override;

  std::size_t consumed() const;
  std::size_t remaining() const;

 private:
  BackendResult next(CallKind kind);

  std::vector<ScriptEntry> script_;
  std::size_t cursor_ = 0;
  mutable std::mutex mutex_;
};

/// Script file format: a JSON array of
///   {"kind": "generate"|"edit", "response_text": str,
///    "prompt_tokens": int, "completion_tokens": int}
/// consumed in order.
std::vector<ScriptEntry> load_script(const std::filesystem::path& path);
void save_script(const std::vector<ScriptEntry>& script,
                 const std::filesystem::path& path);

/// Fallback token estimate when a backend reports no usage: words made of
/// [A-Za-z0-9_] runs count one each, every other non-space character counts
/// one. An approximation only — never comparable to API-reported usage.
int approx_token_count(std::string_view text);

}  // namespace mzgen
