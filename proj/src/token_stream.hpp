#pragma once

// Shared plumbing for the two parsers: the significant (non-trivia) tokens of
// a source plus the bracket matching between them.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "testrl/lexer.hpp"
#include "testrl/syntax.hpp"

namespace testrl::detail {

inline constexpr std::size_t kNoMatch = static_cast<std::size_t>(-1);

struct BracketError {
  std::string message;
  std::size_t offset;
};

class TokenStream {
 public:
  explicit TokenStream(std::string_view source);

  std::string_view source() const { return source_; }
  const std::vector<Token>& all() const { return tokens_; }
  std::size_t size() const { return sig_.size(); }
  const Token& operator[](std::size_t i) const { return tokens_[sig_[i]]; }
  // Index into all() of significant token i.
  std::size_t raw_index(std::size_t i) const { return sig_[i]; }

  // Partner of a bracket token, `size()` for an opener that is never closed
  // and kNoMatch for a closer without opener (or for non-brackets).
  std::size_t match(std::size_t i) const { return match_[i]; }

  bool is(std::size_t i, std::string_view text) const { return i < sig_.size() && (*this)[i].text == text; }
  bool is_kind(std::size_t i, TokenKind kind) const { return i < sig_.size() && (*this)[i].kind == kind; }
  bool is_identifier(std::size_t i) const { return is_kind(i, TokenKind::identifier); }

  // Byte offset where significant token i starts (source size past the end).
  std::size_t offset(std::size_t i) const { return i < sig_.size() ? (*this)[i].offset : source_.size(); }
  std::size_t end_offset(std::size_t i) const { return (*this)[i].end(); }

  // Source text of significant tokens [first, last), including the trivia between them.
  std::string text(std::size_t first, std::size_t last) const;
  // Significant tokens [first, last) joined by single spaces.
  std::string normalized(std::size_t first, std::size_t last) const;

  const std::vector<BracketError>& bracket_errors() const { return bracket_errors_; }
  const Token* first_error_token() const;

 private:
  std::string_view source_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> sig_;
  std::vector<std::size_t> match_;
  std::vector<BracketError> bracket_errors_;
};

}  // namespace testrl::detail
