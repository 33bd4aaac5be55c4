// SPDX-License-Identifier: Apache-2.0

#include "mzgen/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace mzgen {

namespace {

const std::unordered_map<std::string_view, TokKind> kKeywords = {
    {"var", TokKind::KwVar},           {"int", TokKind::KwInt},
    {"bool", TokKind::KwBool},         {"array", TokKind::KwArray},
    {"of", TokKind::KwOf},             {"constraint", TokKind::KwConstraint},
    {"solve", TokKind::KwSolve},       {"satisfy", TokKind::KwSatisfy},
    {"minimize", TokKind::KwMinimize}, {"maximize", TokKind::KwMaximize},
    {"include", TokKind::KwInclude},   {"output", TokKind::KwOutput},
    {"div", TokKind::KwDiv},           {"mod", TokKind::KwMod},
    {"not", TokKind::KwNot},           {"true", TokKind::KwTrue},
    {"false", TokKind::KwFalse},
};

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  LexResult run() {
    LexResult result;
    while (true) {
      skip_trivia();
      mark();
      if (at_end()) {
        result.tokens.push_back(Token{TokKind::Eof, "", 0, span_here()});
        break;
      }
      Token tok = next_token();
      if (error_) {
        result.error = error_;
        break;
      }
      bool was_output = tok.kind == TokKind::KwOutput;
      result.tokens.push_back(std::move(tok));
      if (was_output) {
        skip_trivia();
        mark();
        Token payload = lex_payload();
        if (error_) {
          result.error = error_;
          break;
        }
        result.tokens.push_back(std::move(payload));
      }
    }
    if (result.error) {
      error_ = std::nullopt;
      // Keep the Eof terminator so downstream consumers need no special case.
      result.tokens.push_back(Token{TokKind::Eof, "", 0, span_here()});
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void mark() {
    start_line_ = line_;
    start_col_ = col_;
  }

  SourceSpan span_here() const { return {line_, col_, line_, col_}; }

  // Span from the last mark() to the previous character (inclusive ends).
  SourceSpan span_from_mark() const {
    int end_line = line_;
    int end_col = col_ - 1;
    if (end_col < 1) {  // token ended exactly at a line break
      end_line = start_line_;
      end_col = start_col_;
    }
    return {start_line_, start_col_, end_line, end_col};
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  Token make(TokKind kind, std::string text = {}) {
    return Token{kind, std::move(text), 0, span_from_mark()};
  }

  void fail(const std::string& message) {
    error_ = make_error("E100", message, span_from_mark());
  }

  Token next_token() {
    char c = advance();
    switch (c) {
      case ':': return make(TokKind::Colon);
      case ';': return make(TokKind::Semi);
      case '=': return make(TokKind::Eq);
      case '+': return make(TokKind::Plus);
      case '-': return make(TokKind::Minus);
      case '*': return make(TokKind::Star);
      case '(': return make(TokKind::LParen);
      case ')': return make(TokKind::RParen);
      case '[': return make(TokKind::LBracket);
      case ']': return make(TokKind::RBracket);
      case '{': return make(TokKind::LBrace);
      case '}': return make(TokKind::RBrace);
      case ',': return make(TokKind::Comma);
      case '.':
        if (peek() == '.') {
          advance();
          return make(TokKind::DotDot);
        }
        fail("illegal character `.`");
        return {};
      case '!':
        if (peek() == '=') {
          advance();
          return make(TokKind::Ne);
        }
        fail("illegal character `!`");
        return {};
      case '<':
        if (peek() == '=') {
          advance();
          return make(TokKind::Le);
        }
        return make(TokKind::Lt);
      case '>':
        if (peek() == '=') {
          advance();
          return make(TokKind::Ge);
        }
        return make(TokKind::Gt);
      case '/':
        if (peek() == '\\') {
          advance();
          return make(TokKind::And);
        }
        fail("illegal character `/`");
        return {};
      case '\\':
        if (peek() == '/') {
          advance();
          return make(TokKind::Or);
        }
        fail("illegal character `\\`");
        return {};
      case '"': return lex_string();
      default: break;
    }
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isdigit(uc)) return lex_int(c);
    if (is_ident_start(uc)) return lex_word(c);
    std::string shown = std::isprint(uc) ? std::string(1, c)
                                         : "\\x" + to_hex(uc);
    fail("illegal character `" + shown + "`");
    return {};
  }

  static std::string to_hex(unsigned char c) {
    static const char digits[] = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 0xf]};
  }

  Token lex_int(char first) {
    std::string digits(1, first);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      digits += advance();
    Token tok = make(TokKind::IntLit, digits);
    try {
      tok.int_value = std::stoll(digits);
    } catch (const std::out_of_range&) {
      fail("integer literal `" + digits + "` out of range");
      return {};
    }
    return tok;
  }

  Token lex_word(char first) {
    std::string word(1, first);
    while (!at_end() && is_ident_char(static_cast<unsigned char>(peek())))
      word += advance();
    auto it = kKeywords.find(word);
    if (it != kKeywords.end()) return make(it->second, word);
    return make(TokKind::Ident, word);
  }

  Token lex_string() {
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') {
        fail("unterminated string literal");
        return {};
      }
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) {
          fail("unterminated string literal");
          return {};
        }
        char esc = advance();
        switch (esc) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default:
            value += '\\';
            value += esc;
            break;
        }
      } else {
        value += c;
      }
    }
    return make(TokKind::StringLit, value);
  }

  // Raw capture between `output` and the `;` at bracket depth zero. String
  // literals are copied verbatim (escapes untouched); %-comments outside
  // strings are dropped.
  Token lex_payload() {
    std::string raw;
    int depth = 0;
    while (true) {
      if (at_end()) {
        fail("unterminated output item");
        return {};
      }
      char c = peek();
      if (c == ';' && depth == 0) break;
      advance();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      if (c == '"') {
        raw += c;
        while (true) {
          if (at_end() || peek() == '\n') {
            fail("unterminated string literal");
            return {};
          }
          char s = advance();
          raw += s;
          if (s == '\\') {
            if (at_end()) {
              fail("unterminated string literal");
              return {};
            }
            raw += advance();
          } else if (s == '"') {
            break;
          }
        }
        continue;
      }
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') --depth;
      raw += c;
    }
    // Trim so the canonical printer round-trips the payload byte for byte.
    std::size_t begin = raw.find_first_not_of(" \t\r\n");
    std::size_t end = raw.find_last_not_of(" \t\r\n");
    raw = begin == std::string::npos ? std::string{} : raw.substr(begin, end - begin + 1);
    return make(TokKind::Payload, raw);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int start_line_ = 1;
  int start_col_ = 1;
  std::optional<Diagnostic> error_;
};

}  // namespace

LexResult tokenize(std::string_view source) { return Lexer(source).run(); }

std::string token_kind_name(TokKind kind) {
  switch (kind) {
    case TokKind::KwVar: return "`var`";
    case TokKind::KwInt: return "`int`";
    case TokKind::KwBool: return "`bool`";
    case TokKind::KwArray: return "`array`";
    case TokKind::KwOf: return "`of`";
    case TokKind::KwConstraint: return "`constraint`";
    case TokKind::KwSolve: return "`solve`";
    case TokKind::KwSatisfy: return "`satisfy`";
    case TokKind::KwMinimize: return "`minimize`";
    case TokKind::KwMaximize: return "`maximize`";
    case TokKind::KwInclude: return "`include`";
    case TokKind::KwOutput: return "`output`";
    case TokKind::KwDiv: return "`div`";
    case TokKind::KwMod: return "`mod`";
    case TokKind::KwNot: return "`not`";
    case TokKind::KwTrue: return "`true`";
    case TokKind::KwFalse: return "`false`";
    case TokKind::Ident: return "identifier";
    case TokKind::IntLit: return "integer literal";
    case TokKind::StringLit: return "string literal";
    case TokKind::Payload: return "output payload";
    case TokKind::DotDot: return "`..`";
    case TokKind::Colon: return "`:`";
    case TokKind::Semi: return "`;`";
    case TokKind::Eq: return "`=`";
    case TokKind::Ne: return "`!=`";
    case TokKind::Lt: return "`<`";
    case TokKind::Le: return "`<=`";
    case TokKind::Gt: return "`>`";
    case TokKind::Ge: return "`>=`";
    case TokKind::Plus: return "`+`";
    case TokKind::Minus: return "`-`";
    case TokKind::Star: return "`*`";
    case TokKind::LParen: return "`(`";
    case TokKind::RParen: return "`)`";
    case TokKind::LBracket: return "`[`";
    case TokKind::RBracket: return "`]`";
    case TokKind::LBrace: return "`{`";
    case TokKind::RBrace: return "`}`";
    case TokKind::Comma: return "`,`";
    case TokKind::And: return "`/\\`";
    case TokKind::Or: return "`\\/`";
    case TokKind::Eof: return "end of input";
  }
  return "token";
}

}  // namespace mzgen
