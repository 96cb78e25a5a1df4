#include <algorithm>

#include "testrl/errors.hpp"
#include "testrl/syntax.hpp"
#include "token_stream.hpp"

namespace testrl {

namespace {

using detail::kNoMatch;
using detail::TokenStream;

bool is_type_keyword(const Token& t) {
  if (t.kind == TokenKind::keyword) return t.text == "class" || t.text == "struct" || t.text == "interface" || t.text == "enum";
  return t.kind == TokenKind::identifier && t.text == "record";
}

class FileParser {
 public:
  explicit FileParser(const TokenStream& ts) : ts_(ts) {}

  void parse_scope(std::size_t first, std::size_t last, FocalFileTree& tree) {
    std::size_t i = first;
    while (i < last) {
      if (is_punct(i, ";")) {
        ++i;
        continue;
      }
      const bool global_using = ts_.is_identifier(i) && ts_[i].text == "global" && is_keyword(i + 1, "using");
      if (global_using || is_keyword(i, "using")) {
        const std::size_t end = find_semicolon(i, last);
        tree.using_directives.push_back({ts_.normalized(i, end), span(i, end)});
        i = end;
        continue;
      }
      if (is_keyword(i, "namespace")) {
        std::size_t k = i + 1;
        std::string name;
        while (k < last && !is_punct(k, "{") && !is_punct(k, ";")) name += ts_[k++].text;
        if (is_punct(k, ";")) {
          tree.namespaces.push_back({name, span(i, last), true});
          i = k + 1;
          continue;
        }
        const std::size_t close = closing(k, last);
        tree.namespaces.push_back({name, span(i, std::min(close + 1, last)), false});
        parse_scope(k + 1, close, tree);
        i = close + 1;
        continue;
      }
      std::size_t end = i;
      if (auto cls = parse_member_or_type(i, last, end)) {
        tree.classes.push_back(std::move(*cls));
      }
      i = std::max(end, i + 1);
    }
  }

 private:
  const TokenStream& ts_;

  bool is_punct(std::size_t i, std::string_view text) const {
    if (i >= ts_.size()) return false;
    const Token& t = ts_[i];
    return (t.kind == TokenKind::punctuation || t.kind == TokenKind::attribute_bracket) && t.text == text;
  }
  bool is_keyword(std::size_t i, std::string_view text) const {
    return ts_.is_kind(i, TokenKind::keyword) && ts_[i].text == text;
  }

  SourceSpan span(std::size_t first, std::size_t last) const {
    if (first >= last) return {ts_.offset(first), ts_.offset(first)};
    return {ts_.offset(first), ts_.end_offset(std::min(last, ts_.size()) - 1)};
  }

  std::size_t closing(std::size_t open, std::size_t limit) const {
    const std::size_t m = ts_.match(open);
    if (m == kNoMatch || m >= limit) throw FatalSyntax("unbalanced '" + ts_[open].text + "'", ts_.offset(open));
    return m;
  }

  std::size_t find_semicolon(std::size_t i, std::size_t last) const {
    while (i < last && !is_punct(i, ";")) {
      if (ts_[i].is_open_bracket()) i = closing(i, last);
      ++i;
    }
    return std::min(i + 1, last);
  }

  // Parses the member starting at `i` inside a scope ending at `last`. Returns
  // a ClassNode when the member is a type declaration. `end` receives the
  // index one past the member. Non-type members are reported through the
  // optional `owner`.
  std::optional<ClassNode> parse_member_or_type(std::size_t i, std::size_t last, std::size_t& end,
                                                ClassNode* owner = nullptr) {
    const std::size_t start = i;
    while (is_punct(i, "[")) i = closing(i, last) + 1;
    const std::size_t decl = i;

    std::size_t first_paren = kNoMatch;
    std::size_t first_assign = kNoMatch;
    std::size_t type_kw = kNoMatch;
    std::size_t k = decl;
    while (k < last) {
      const Token& t = ts_[k];
      if (type_kw == kNoMatch && first_paren == kNoMatch && first_assign == kNoMatch && is_type_keyword(t) &&
          !(t.text == "record" && (is_punct(k + 1, "(") || is_punct(k + 1, ";")))) {
        type_kw = k;
      }
      if (is_punct(k, ";")) {
        if (type_kw != kNoMatch) {  // record R(int X);
          end = k + 1;
          return make_type(start, decl, type_kw, k, kNoMatch);
        }
        end = k + 1;
        add_member(owner, start, decl, k + 1, first_paren, first_assign, kNoMatch, kNoMatch);
        return std::nullopt;
      }
      if (is_punct(k, "(")) {
        if (first_paren == kNoMatch) first_paren = k;
        k = closing(k, last) + 1;
        continue;
      }
      if (is_punct(k, "[")) {
        k = closing(k, last) + 1;
        continue;
      }
      if (is_punct(k, "=") && first_assign == kNoMatch) first_assign = k;
      if (is_punct(k, "=>") && first_assign == kNoMatch && type_kw == kNoMatch) {
        const std::size_t semi = find_semicolon(k, last);
        end = semi;
        add_member(owner, start, decl, semi, first_paren, first_assign, k, semi);
        return std::nullopt;
      }
      if (is_punct(k, "{")) {
        const std::size_t close = closing(k, last);
        if (type_kw != kNoMatch) {
          end = close + 1;
          return make_type(start, decl, type_kw, k, close);
        }
        if (first_assign != kNoMatch) {  // initializer braces inside a field
          k = close + 1;
          continue;
        }
        std::size_t member_end = close + 1;
        // Property initializer: `{ get; set; } = value;`
        if (is_punct(member_end, "=")) member_end = find_semicolon(member_end, last);
        end = member_end;
        add_member(owner, start, decl, member_end, first_paren, first_assign, k, close + 1);
        return std::nullopt;
      }
      ++k;
    }
    end = last;
    if (owner && last > start) owner->raw_members.push_back(span(start, last));
    return std::nullopt;
  }

  ClassNode make_type(std::size_t start, std::size_t decl, std::size_t type_kw, std::size_t open,
                      std::size_t close) {
    ClassNode node;
    node.kind = ts_[type_kw].text;
    if (ts_.is_identifier(type_kw + 1)) node.name = ts_[type_kw + 1].text;
    else if ((is_keyword(type_kw + 1, "class") || is_keyword(type_kw + 1, "struct")) && ts_.is_identifier(type_kw + 2))
      node.name = ts_[type_kw + 2].text;  // record class / record struct
    node.header = span(decl, open);
    if (close == kNoMatch) {
      node.span = span(start, open + 1);
      return node;
    }
    node.span = span(start, close + 1);
    node.body = span(open, close + 1);
    if (node.kind == "enum") return node;
    std::size_t i = open + 1;
    while (i < close) {
      if (is_punct(i, ";")) {
        ++i;
        continue;
      }
      std::size_t end = i;
      if (auto nested = parse_member_or_type(i, close, end, &node)) node.nested.push_back(std::move(*nested));
      i = std::max(end, i + 1);
    }
    collect_comments(node);
    return node;
  }

  void add_member(ClassNode* owner, std::size_t start, std::size_t decl, std::size_t end, std::size_t first_paren,
                  std::size_t first_assign, std::size_t body_first, std::size_t body_last) {
    if (!owner) return;
    const SourceSpan whole = span(start, end);
    const bool method = first_paren != kNoMatch && (first_assign == kNoMatch || first_paren < first_assign) &&
                        (body_first == kNoMatch || first_paren < body_first);
    if (method) {
      MethodNode m;
      m.name = method_name(decl, first_paren);
      m.span = whole;
      const std::size_t sig_end = body_first == kNoMatch ? end - 1 : body_first;  // drop ';' when bodiless
      m.signature = span(decl, sig_end);
      if (body_first != kNoMatch) m.body = span(body_first, body_last);
      else m.body = {whole.end, whole.end};
      owner->methods.push_back(std::move(m));
      return;
    }
    if (body_first != kNoMatch) {
      std::size_t name_at = body_first;
      while (name_at > decl && !ts_.is_identifier(name_at - 1) && !is_keyword(name_at - 1, "this")) --name_at;
      owner->properties.push_back({name_at > decl ? ts_[name_at - 1].text : std::string(), whole});
      return;
    }
    // Field: name is the identifier before the first '=' or the terminating ';'.
    std::size_t stop = first_assign != kNoMatch ? first_assign : end - 1;
    std::size_t name_at = stop;
    while (name_at > decl && !ts_.is_identifier(name_at - 1)) --name_at;
    owner->fields.push_back({name_at > decl ? ts_[name_at - 1].text : std::string(), whole});
  }

  std::string method_name(std::size_t decl, std::size_t paren) const {
    std::size_t k = paren;
    if (k > decl && is_punct(k - 1, ">")) {
      int depth = 0;
      while (k > decl) {
        --k;
        if (is_punct(k, ">")) ++depth;
        else if (is_punct(k, "<") && --depth == 0) break;
      }
    }
    if (k > decl && ts_.is_identifier(k - 1)) return ts_[k - 1].text;
    // operator overloads: `operator +(`
    for (std::size_t j = decl; j < paren; ++j)
      if (is_keyword(j, "operator")) return "operator" + ts_.normalized(j + 1, paren);
    return k > decl ? ts_[k - 1].text : std::string();
  }

  void collect_comments(ClassNode& node) const {
    std::vector<SourceSpan> occupied;
    for (const auto& f : node.fields) occupied.push_back(f.span);
    for (const auto& p : node.properties) occupied.push_back(p.span);
    for (const auto& m : node.methods) occupied.push_back(m.span);
    for (const auto& n : node.nested) occupied.push_back(n.span);
    for (const auto& r : node.raw_members) occupied.push_back(r);
    for (const Token& t : ts_.all()) {
      if (!t.is_comment() || !node.body.contains(t.offset)) continue;
      const bool inside = std::any_of(occupied.begin(), occupied.end(),
                                      [&](const SourceSpan& s) { return s.contains(t.offset); });
      if (!inside) node.comments.push_back({t.offset, t.end()});
    }
  }
};

const ClassNode* find_in(const ClassNode& node, std::string_view method) {
  for (const auto& m : node.methods)
    if (m.name == method) return &node;
  for (const auto& n : node.nested)
    if (const ClassNode* found = find_in(n, method)) return found;
  return nullptr;
}

}  // namespace

FocalFileTree parse_focal_file(std::string_view source) {
  const TokenStream ts(source);
  for (const auto& e : ts.bracket_errors()) {
    if (e.message.find('{') != std::string::npos || e.message.find('}') != std::string::npos)
      throw FatalSyntax(e.message, e.offset);
  }
  FocalFileTree tree;
  tree.source = std::string(source);
  tree.tokens = ts.all();
  FileParser(ts).parse_scope(0, ts.size(), tree);
  return tree;
}

const ClassNode* find_focal_class(const FocalFileTree& tree, std::string_view method) {
  for (const auto& c : tree.classes)
    if (const ClassNode* found = find_in(c, method)) return found;
  return nullptr;
}

}  // namespace testrl
