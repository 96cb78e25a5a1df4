#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace testrl {

enum class TokenKind {
  identifier,
  keyword,
  punctuation,
  string_literal,
  char_literal,
  number,
  comment_line,
  comment_block,
  attribute_bracket,
  preprocessor,
  whitespace,
  error,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;

  std::size_t end() const { return offset + text.size(); }
  bool is(std::string_view s) const { return text == s; }
  bool is_trivia() const {
    return kind == TokenKind::whitespace || kind == TokenKind::comment_line ||
           kind == TokenKind::comment_block || kind == TokenKind::preprocessor;
  }
  bool is_comment() const { return kind == TokenKind::comment_line || kind == TokenKind::comment_block; }
  bool is_open_bracket() const {
    return (kind == TokenKind::punctuation || kind == TokenKind::attribute_bracket) &&
           (text == "(" || text == "[" || text == "{");
  }
  bool is_close_bracket() const {
    return (kind == TokenKind::punctuation || kind == TokenKind::attribute_bracket) &&
           (text == ")" || text == "]" || text == "}");
  }
};

// Lossless C# tokenizer. Concatenating the token texts reproduces `source`
// byte for byte. Unterminated literals and comments become a single error
// token running to the end of the input; stray bytes become one-byte error
// tokens.
std::vector<Token> tokenize(std::string_view source);

bool is_csharp_keyword(std::string_view word);

}  // namespace testrl
