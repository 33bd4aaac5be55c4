// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mzgen/spec.hpp"

namespace mzgen {

/// Full prompt for the completion backend. Always ends with the turn marker
/// "Bot:" so the completion continues from there, and contains exactly one
/// feature sentence.
struct PromptText {
  std::string content;
  bool operator==(const PromptText&) const = default;
};

/// Instruction for the edit backend. Always of the form
/// "Me: Fix the minizinc code. The Error code is <error> Bot:".
struct RepairInstruction {
  std::string content;
  bool operator==(const RepairInstruction&) const = default;
};

/// The scripted Bot/Me dialogue asking for a model with the requested
/// features, including the "Put the Bot comments with % symbol." directive.
PromptText build_generation_prompt(const ModelSpec& spec);

/// Wraps solver/analysis error text for the edit backend. A single space
/// separates the error text from the closing "Bot:". Throws
/// std::invalid_argument on empty error_output.
RepairInstruction build_repair_instruction(std::string_view error_output);

class EmptyModelError : public std::runtime_error {
 public:
  EmptyModelError() : std::runtime_error("backend returned an empty model") {}
};

/// Recovers model source from a raw backend response: trims whitespace,
/// truncates at the first "Me:"/"Bot:" turn marker that is not inside a
/// %-comment (backends that ignore stop sequences leave such residue), and
/// strips a surrounding ``` code fence. %-comments are preserved — the
/// prompt explicitly asks for them. Throws EmptyModelError if nothing
/// remains.
std::string extract_model_text(std::string_view raw);

}  // namespace mzgen
