// SPDX-License-Identifier: Apache-2.0

#include "mzgen/prompt.hpp"

namespace mzgen {

namespace {

constexpr std::string_view kDialogueHead =
    "Bot: Ask me any questions about the MiniZinc. MiniZinc is a high-level "
    "constraint programming language used for modelling and solving "
    "combinatorial optimisation problems.\n"
    "Me: Can I ask you about codes written in MiniZinc as an example? Can you "
    "show only the source code?\n"
    "Bot: Yes. Tell me what kind of language optimisation problems MiniZinc "
    "would like me to generate for you.\n"
    "Me: ";

constexpr std::string_view kCommentDirective = " Put the Bot comments with % symbol.";

std::string_view trim(std::string_view s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// Position of the first "Me:"/"Bot:" that is not inside a %-comment, or npos.
// The prompt asks for Bot commentary as %-comments, so those are kept.
std::size_t find_turn_marker(std::string_view text) {
  bool in_comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      in_comment = false;
      continue;
    }
    if (in_comment) continue;
    if (c == '%') {
      in_comment = true;
      continue;
    }
    if (text.compare(i, 3, "Me:") == 0) return i;
    if (text.compare(i, 4, "Bot:") == 0) return i;
  }
  return std::string_view::npos;
}

}  // namespace

PromptText build_generation_prompt(const ModelSpec& spec) {
  std::string content{kDialogueHead};
  content += spec_feature_sentence(spec);
  content += kCommentDirective;
  content += "\nBot:";
  return PromptText{std::move(content)};
}

RepairInstruction build_repair_instruction(std::string_view error_output) {
  if (error_output.empty())
    throw std::invalid_argument("repair instruction needs non-empty error output");
  std::string content = "Me: Fix the minizinc code. The Error code is ";
  content += error_output;
  content += " Bot:";
  return RepairInstruction{std::move(content)};
}

std::string extract_model_text(std::string_view raw) {
  std::string_view text = trim(raw);

  // Stop-sequence residue: the backend is expected to halt at "Bot:"/"Me:";
  // anything from a bare turn marker onward is not model text.
  std::size_t marker = find_turn_marker(text);
  if (marker != std::string_view::npos) text = trim(text.substr(0, marker));

  // Surrounding ``` fence (optionally with a language tag on the open line).
  if (text.size() >= 3 && text.compare(0, 3, "```") == 0) {
    std::size_t body = text.find('\n');
    std::size_t closing = text.rfind("```");
    if (body != std::string_view::npos && closing > body) {
      text = trim(text.substr(body + 1, closing - body - 1));
    }
  }

  if (text.empty()) throw EmptyModelError{};
  return std::string{text};
}

}  // namespace mzgen
