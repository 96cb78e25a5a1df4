#include "testrl/prompt.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "testrl/errors.hpp"

namespace testrl {

namespace {

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

struct FocalLocation {
  const ClassNode* cls = nullptr;
  const MethodNode* method = nullptr;
};

FocalLocation locate(const FocalFileTree& tree, std::string_view focal) {
  FocalLocation loc;
  loc.cls = find_focal_class(tree, focal);
  if (!loc.cls) throw FocalNotFound(std::string(focal));
  for (const auto& m : loc.cls->methods) {
    if (m.name == focal) {
      loc.method = &m;
      break;
    }
  }
  return loc;
}

// Signature text with comments removed and each whitespace run collapsed to
// one space.
std::string collapsed(const FocalFileTree& tree, SourceSpan span) {
  std::string out;
  bool gap = false;
  for (const Token& t : tree.tokens) {
    if (t.offset < span.begin || t.end() > span.end) continue;
    if (t.is_trivia()) {
      gap = true;
      continue;
    }
    if (gap && !out.empty()) out += ' ';
    out += t.text;
    gap = false;
  }
  return out;
}

// Drops blank lines left behind by deletions: a run of blank lines shrinks
// to one, and none directly follows an opening brace or precedes a closing one.
std::string tidy_blank_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  const auto blank = [](const std::string& l) { return l.find_first_not_of(" \t\r") == std::string::npos; };
  const auto last_char = [](const std::string& l) {
    const auto e = l.find_last_not_of(" \t\r");
    return e == std::string::npos ? '\0' : l[e];
  };
  const auto first_char = [](const std::string& l) {
    const auto b = l.find_first_not_of(" \t\r");
    return b == std::string::npos ? '\0' : l[b];
  };
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i]) && i + 1 < lines.size()) {
      if (kept.empty() || blank(kept.back()) || last_char(kept.back()) == '{') continue;
      std::size_t next = i + 1;
      while (next < lines.size() && blank(lines[next])) ++next;
      if (next < lines.size() && first_char(lines[next]) == '}') continue;
    }
    kept.push_back(lines[i]);
  }
  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i > 0) out += '\n';
    out += kept[i];
  }
  return out;
}

// Grows a deletion over the whole line when nothing else shares it.
SourceSpan line_expanded(std::string_view src, SourceSpan s) {
  std::size_t b = s.begin;
  while (b > 0 && (src[b - 1] == ' ' || src[b - 1] == '\t')) --b;
  if (b > 0 && src[b - 1] != '\n') return s;
  std::size_t e = s.end;
  while (e < src.size() && (src[e] == ' ' || src[e] == '\t' || src[e] == '\r')) ++e;
  if (e < src.size() && src[e] != '\n') return s;
  if (e < src.size()) ++e;
  return {b, e};
}

std::string apply(std::string_view src, SourceSpan base, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  std::string out;
  std::size_t pos = base.begin;
  for (const Edit& e : edits) {
    if (e.end <= pos) continue;  // swallowed by an earlier, wider edit
    const std::size_t begin = std::max(e.begin, pos);
    out.append(src.substr(pos, begin - pos));
    out += e.replacement;
    pos = std::min(e.end, base.end);
  }
  if (pos < base.end) out.append(src.substr(pos, base.end - pos));
  return out;
}

void abbreviate_methods(const FocalFileTree& tree, const ClassNode& cls, const MethodNode* focal,
                        std::vector<Edit>& edits) {
  for (const auto& m : cls.methods) {
    if (&m == focal) continue;
    edits.push_back({m.span.begin, m.span.end, collapsed(tree, m.signature) + ";"});
  }
  for (const auto& n : cls.nested) abbreviate_methods(tree, n, focal, edits);
}

void delete_fields(std::string_view src, const ClassNode& cls, std::vector<Edit>& edits) {
  for (const auto& f : cls.fields) {
    const SourceSpan s = line_expanded(src, f.span);
    edits.push_back({s.begin, s.end, ""});
  }
  for (const auto& n : cls.nested) delete_fields(src, n, edits);
}

// Every comment token in `within` that is neither inside the focal method
// nor inside a span some other edit already rewrites.
void delete_comments(const FocalFileTree& tree, SourceSpan within, SourceSpan keep, std::vector<Edit>& edits) {
  std::vector<Edit> comment_edits;
  for (const Token& t : tree.tokens) {
    if (!t.is_comment() || !within.contains(t.offset) || keep.contains(t.offset)) continue;
    const bool covered = std::any_of(edits.begin(), edits.end(), [&](const Edit& e) {
      return t.offset >= e.begin && t.offset < e.end;
    });
    if (covered) continue;
    const SourceSpan s = line_expanded(tree.source, {t.offset, t.end()});
    comment_edits.push_back({s.begin, s.end, ""});
  }
  edits.insert(edits.end(), comment_edits.begin(), comment_edits.end());
}

void delete_all_but(std::string_view src, const ClassNode& cls, const MethodNode* focal, std::vector<Edit>& edits) {
  const auto drop = [&](SourceSpan span) {
    const SourceSpan s = line_expanded(src, span);
    edits.push_back({s.begin, s.end, ""});
  };
  for (const auto& f : cls.fields) drop(f.span);
  for (const auto& p : cls.properties) drop(p.span);
  for (const auto& m : cls.methods)
    if (&m != focal) drop(m.span);
  for (const auto& n : cls.nested) drop(n.span);
  for (const auto& r : cls.raw_members) drop(r);
}

}  // namespace

void BudgetConfig::validate() const {
  if (prompt_token_budget == 0 || completion_token_budget == 0 || chars_per_token == 0 || model_context == 0)
    throw std::invalid_argument("budget values must be positive");
  if (prompt_token_budget + completion_token_budget > model_context)
    throw std::invalid_argument("prompt and completion budgets exceed the model context");
}

std::size_t estimate_tokens(std::string_view text, const BudgetConfig& cfg) {
  const auto chars = static_cast<std::size_t>(
      std::count_if(text.begin(), text.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  return (chars + cfg.chars_per_token - 1) / cfg.chars_per_token;
}

std::string test_path_for(std::string_view focal_path) {
  const auto slash = focal_path.find_last_of("/\\");
  const std::size_t name_at = slash == std::string_view::npos ? 0 : slash + 1;
  std::string out(focal_path.substr(0, name_at));
  out += "Test";
  out += focal_path.substr(name_at);
  return out;
}

std::string prompt_hint(std::string_view focal_method) {
  return "[TestMethod]\npublic void Test" + std::string(focal_method);
}

std::string render_level(const FocalFileTree& tree, std::string_view focal, int level) {
  if (level < kMinContextLevel || level > kMaxContextLevel)
    throw std::invalid_argument("context level must be between 1 and 4");
  const FocalLocation loc = locate(tree, focal);
  if (level == 1) return tree.source;

  const std::string_view src = tree.source;
  const SourceSpan keep = loc.method->span;
  std::vector<Edit> edits;
  if (level == 4) {
    delete_all_but(src, *loc.cls, loc.method, edits);
  } else {
    abbreviate_methods(tree, *loc.cls, loc.method, edits);
    if (level == 3) delete_fields(src, *loc.cls, edits);
  }
  if (level >= 3) delete_comments(tree, loc.cls->span, keep, edits);
  return tidy_blank_lines(apply(src, loc.cls->span, std::move(edits)));
}

std::string assemble_prompt(std::string_view focal_path, std::string_view context, std::string_view focal) {
  std::string prompt(focal_path);
  prompt += ":\n";
  prompt += context;
  if (!context.empty() && context.back() != '\n') prompt += '\n';
  prompt += test_path_for(focal_path);
  prompt += ":\n";
  prompt += prompt_hint(focal);
  return prompt;
}

PromptRecord build_prompt(const FocalFileTree& tree, std::string_view focal, std::string_view focal_path,
                          const BudgetConfig& cfg) {
  std::size_t last_tokens = 0;
  for (int level = kMinContextLevel; level <= kMaxContextLevel; ++level) {
    std::string text = assemble_prompt(focal_path, render_level(tree, focal, level), focal);
    last_tokens = estimate_tokens(text, cfg);
    if (last_tokens <= cfg.prompt_token_budget) {
      PromptRecord record;
      record.focal_path = std::string(focal_path);
      record.test_path = test_path_for(focal_path);
      record.focal_method = std::string(focal);
      record.context_level = level;
      record.prompt_text = std::move(text);
      record.estimated_tokens = last_tokens;
      return record;
    }
  }
  throw PromptTooLong(last_tokens, cfg.prompt_token_budget);
}

}  // namespace testrl
