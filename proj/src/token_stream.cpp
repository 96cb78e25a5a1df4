#include "token_stream.hpp"

namespace testrl::detail {

namespace {

char closer_for(const std::string& open) {
  if (open == "(") return ')';
  if (open == "[") return ']';
  return '}';
}

}  // namespace

TokenStream::TokenStream(std::string_view source) : source_(source), tokens_(tokenize(source)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (!tokens_[i].is_trivia()) sig_.push_back(i);

  match_.assign(sig_.size(), kNoMatch);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    const Token& t = (*this)[i];
    if (t.is_open_bracket()) {
      stack.push_back(i);
    } else if (t.is_close_bracket()) {
      if (!stack.empty() && closer_for((*this)[stack.back()].text) == t.text[0]) {
        match_[stack.back()] = i;
        match_[i] = stack.back();
        stack.pop_back();
      } else {
        bracket_errors_.push_back({"unmatched '" + t.text + "'", t.offset});
      }
    }
  }
  for (std::size_t open : stack) {
    match_[open] = sig_.size();
    bracket_errors_.push_back({"unclosed '" + (*this)[open].text + "'", (*this)[open].offset});
  }
}

std::string TokenStream::text(std::size_t first, std::size_t last) const {
  if (first >= last || first >= sig_.size()) return {};
  const std::size_t begin = offset(first);
  const std::size_t end = end_offset(std::min(last, sig_.size()) - 1);
  return std::string(source_.substr(begin, end - begin));
}

std::string TokenStream::normalized(std::size_t first, std::size_t last) const {
  std::string out;
  last = std::min(last, sig_.size());
  for (std::size_t i = first; i < last; ++i) {
    if (!out.empty()) out += ' ';
    out += (*this)[i].text;
  }
  return out;
}

const Token* TokenStream::first_error_token() const {
  for (const Token& t : tokens_)
    if (t.kind == TokenKind::error) return &t;
  return nullptr;
}

}  // namespace testrl::detail
