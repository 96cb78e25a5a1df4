#include "testrl/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <optional>

namespace testrl {

namespace {

constexpr std::string_view kKeywords[] = {
    "abstract", "as",        "base",     "bool",      "break",     "byte",     "case",     "catch",
    "char",     "checked",   "class",    "const",     "continue",  "decimal",  "default",  "delegate",
    "do",       "double",    "else",     "enum",      "event",     "explicit", "extern",   "false",
    "finally",  "fixed",     "float",    "for",       "foreach",   "goto",     "if",       "implicit",
    "in",       "int",       "interface", "internal", "is",        "lock",     "long",     "namespace",
    "new",      "null",      "object",   "operator",  "out",       "override", "params",   "private",
    "protected", "public",   "readonly", "ref",       "return",    "sbyte",    "sealed",   "short",
    "sizeof",   "stackalloc", "static",  "string",    "struct",    "switch",   "this",     "throw",
    "true",     "try",       "typeof",   "uint",      "ulong",     "unchecked", "unsafe",  "ushort",
    "using",    "virtual",   "void",     "volatile",  "while",
};

// Longest-match first.
constexpr std::string_view kPunctuators[] = {
    "<<=", "?\?=", "...", "=>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "%=",  "&=",  "|=",  "^=", "??", "?.", "::", "->", "<<", "..", "{",  "}",  "(",  ")",  "[",  "]",
    ";",   ",",   ".",   ":",  "?",  "+",  "-",  "*",  "/",  "%",  "&",  "|",  "^",  "!",  "~",  "<",  ">",  "=",
};

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) lex_one();
    return std::move(tokens_);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Token> tokens_;
  // Bracket stack for attribute detection: true marks an attribute '['.
  std::vector<bool> square_stack_;

  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  void emit(TokenKind kind, std::size_t end) {
    tokens_.push_back(Token{kind, std::string(src_.substr(pos_, end - pos_)), pos_});
    pos_ = end;
  }

  bool at_line_start(std::size_t i) const {
    while (i > 0) {
      const char c = src_[i - 1];
      if (c == '\n') return true;
      if (c != ' ' && c != '\t') return false;
      --i;
    }
    return true;
  }

  const Token* previous_significant() const {
    for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it)
      if (!it->is_trivia()) return &*it;
    return nullptr;
  }

  // Returns the end offset of a string literal starting at `i`, or nullopt if
  // it is unterminated. Handles regular, verbatim, interpolated and raw forms.
  std::optional<std::size_t> scan_string(std::size_t i) const {
    std::size_t dollars = 0;
    bool verbatim = false;
    while (at(i) == '$' || at(i) == '@') {
      if (at(i) == '$') ++dollars;
      else verbatim = true;
      ++i;
    }
    // at(i) == '"'
    std::size_t quotes = 0;
    while (at(i + quotes) == '"') ++quotes;
    if (quotes >= 3) return scan_raw(i + quotes, quotes);
    ++i;  // opening quote
    const bool interpolated = dollars > 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (verbatim) {
        if (c == '"') {
          if (at(i + 1) == '"') {
            i += 2;
            continue;
          }
          return i + 1;
        }
      } else {
        if (c == '\\') {
          i += 2;
          continue;
        }
        if (c == '\n') return std::nullopt;
        if (c == '"') return i + 1;
      }
      if (interpolated && c == '{') {
        if (at(i + 1) == '{') {
          i += 2;
          continue;
        }
        auto hole_end = scan_hole(i + 1);
        if (!hole_end) return std::nullopt;
        i = *hole_end;
        continue;
      }
      if (interpolated && c == '}' && at(i + 1) == '}') {
        i += 2;
        continue;
      }
      ++i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> scan_raw(std::size_t i, std::size_t quotes) const {
    while (i < src_.size()) {
      if (src_[i] == '"') {
        std::size_t run = 0;
        while (at(i + run) == '"') ++run;
        if (run >= quotes) return i + quotes;
        i += run;
        continue;
      }
      ++i;
    }
    return std::nullopt;
  }

  // Interpolation hole contents: skipped as raw text with brace nesting and
  // nested literals. Returns the offset just past the closing '}'.
  std::optional<std::size_t> scan_hole(std::size_t i) const {
    int depth = 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '"' || ((c == '$' || c == '@') && (at(i + 1) == '"' || at(i + 1) == '$' || at(i + 1) == '@'))) {
        auto end = scan_string(i);
        if (!end) return std::nullopt;
        i = *end;
        continue;
      }
      if (c == '\'') {
        auto end = scan_char(i);
        if (!end) return std::nullopt;
        i = *end;
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') {
        if (depth == 0) return i + 1;
        --depth;
      }
      ++i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> scan_char(std::size_t i) const {
    ++i;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '\\') {
        i += 2;
        continue;
      }
      if (c == '\n') return std::nullopt;
      if (c == '\'') return i + 1;
      ++i;
    }
    return std::nullopt;
  }

  bool starts_string(std::size_t i) const {
    while (at(i) == '$' || at(i) == '@') ++i;
    return at(i) == '"';
  }

  void lex_one() {
    const char c = src_[pos_];
    const auto uc = static_cast<unsigned char>(c);

    if (is_space(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && is_space(src_[end])) ++end;
      emit(TokenKind::whitespace, end);
      return;
    }
    if (c == '#' && at_line_start(pos_)) {
      std::size_t end = src_.find('\n', pos_);
      emit(TokenKind::preprocessor, end == std::string_view::npos ? src_.size() : end);
      return;
    }
    if (c == '/' && at(pos_ + 1) == '/') {
      std::size_t end = src_.find('\n', pos_);
      emit(TokenKind::comment_line, end == std::string_view::npos ? src_.size() : end);
      return;
    }
    if (c == '/' && at(pos_ + 1) == '*') {
      std::size_t end = src_.find("*/", pos_ + 2);
      if (end == std::string_view::npos) emit(TokenKind::error, src_.size());
      else emit(TokenKind::comment_block, end + 2);
      return;
    }
    if (c == '"' || ((c == '$' || c == '@') && starts_string(pos_))) {
      auto end = scan_string(pos_);
      emit(end ? TokenKind::string_literal : TokenKind::error, end.value_or(src_.size()));
      return;
    }
    if (c == '\'') {
      auto end = scan_char(pos_);
      emit(end ? TokenKind::char_literal : TokenKind::error, end.value_or(src_.size()));
      return;
    }
    if (is_ident_start(uc) || (c == '@' && is_ident_start(static_cast<unsigned char>(at(pos_ + 1))))) {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && is_ident_part(static_cast<unsigned char>(src_[end]))) ++end;
      const std::string_view word = src_.substr(pos_, end - pos_);
      emit(is_csharp_keyword(word) ? TokenKind::keyword : TokenKind::identifier, end);
      return;
    }
    if (std::isdigit(uc) || (c == '.' && std::isdigit(static_cast<unsigned char>(at(pos_ + 1))))) {
      lex_number();
      return;
    }
    for (std::string_view p : kPunctuators) {
      if (src_.substr(pos_, p.size()) == p) {
        lex_punctuator(p);
        return;
      }
    }
    emit(TokenKind::error, pos_ + 1);
  }

  void lex_number() {
    std::size_t end = pos_;
    const bool hex = at(end) == '0' && (at(end + 1) == 'x' || at(end + 1) == 'X');
    if (hex) end += 2;
    while (end < src_.size()) {
      const char c = src_[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        const bool exponent = !hex && (c == 'e' || c == 'E') && (at(end + 1) == '+' || at(end + 1) == '-');
        end += exponent ? 2 : 1;
        continue;
      }
      if (c == '.' && !hex && std::isdigit(static_cast<unsigned char>(at(end + 1)))) {
        ++end;
        continue;
      }
      break;
    }
    emit(TokenKind::number, end);
  }

  void lex_punctuator(std::string_view p) {
    if (p == "[") {
      const Token* prev = previous_significant();
      const bool attribute = prev == nullptr || prev->is(";") || prev->is("{") || prev->is("}") ||
                             (prev->is("]") && prev->kind == TokenKind::attribute_bracket);
      square_stack_.push_back(attribute);
      emit(attribute ? TokenKind::attribute_bracket : TokenKind::punctuation, pos_ + 1);
      return;
    }
    if (p == "]") {
      bool attribute = false;
      if (!square_stack_.empty()) {
        attribute = square_stack_.back();
        square_stack_.pop_back();
      }
      emit(attribute ? TokenKind::attribute_bracket : TokenKind::punctuation, pos_ + 1);
      return;
    }
    emit(TokenKind::punctuation, pos_ + p.size());
  }
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::string_literal: return "string-literal";
    case TokenKind::char_literal: return "char-literal";
    case TokenKind::number: return "number";
    case TokenKind::comment_line: return "comment-line";
    case TokenKind::comment_block: return "comment-block";
    case TokenKind::attribute_bracket: return "attribute-bracket";
    case TokenKind::preprocessor: return "preprocessor";
    case TokenKind::whitespace: return "whitespace";
    case TokenKind::error: return "error";
  }
  return "unknown";
}

bool is_csharp_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) != std::end(kKeywords);
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace testrl
