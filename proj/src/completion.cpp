#include "testrl/completion.hpp"

#include <vector>

#include "testrl/lexer.hpp"

namespace testrl {

namespace {

bool is_test_method_attribute(const std::vector<Token>& tokens, std::size_t i) {
  if (!tokens[i].is("[")) return false;
  std::size_t k = i + 1;
  while (k < tokens.size() && tokens[k].is_trivia()) ++k;
  if (k >= tokens.size() || tokens[k].kind != TokenKind::identifier || !tokens[k].is("TestMethod")) return false;
  ++k;
  while (k < tokens.size() && tokens[k].is_trivia()) ++k;
  return k < tokens.size() && tokens[k].is("]");
}

}  // namespace

std::string truncate_completion(const RawCompletion& raw) {
  std::string text = raw.prompt_hint + raw.completion_text;
  const std::size_t floor = raw.prompt_hint.size();
  const std::vector<Token> tokens = tokenize(text);
  int attributes_seen = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    const bool attribute = is_test_method_attribute(tokens, i);
    if (attribute) ++attributes_seen;
    if (t.offset < floor) continue;
    if (t.kind == TokenKind::punctuation && t.is("}") && t.offset > 0 && text[t.offset - 1] == '\n') {
      text.resize(t.end());
      return text;
    }
    if (attribute && attributes_seen >= 2) {
      text.resize(t.offset);
      return text;
    }
  }
  return text;
}

CorpusRecord assemble_record(std::string_view prompt, const RawCompletion& raw, const RecordMetadata& metadata) {
  CorpusRecord record;
  record.repo = metadata.repo;
  record.focal_class = metadata.focal_class;
  record.focal_method = metadata.focal_method;
  record.prompt = std::string(prompt);
  record.test = truncate_completion(raw);
  record.source = RecordSource::generated;
  return record;
}

}  // namespace testrl
