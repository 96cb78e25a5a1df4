#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testrl/lexer.hpp"

namespace testrl {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t offset) const { return offset >= begin && offset < end; }
  bool contains(const SourceSpan& other) const { return other.begin >= begin && other.end <= end; }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { warning, fatal };

struct SyntaxDiagnostic {
  std::string message;
  std::size_t offset = 0;
  Severity severity = Severity::fatal;
  friend bool operator==(const SyntaxDiagnostic&, const SyntaxDiagnostic&) = default;
};

// One call site. `callee` is the member-access chain leading to the call
// with call/indexer segments elided: `command.Stop().Wait()` yields
// {"command", "Stop"} for the inner call and {"command", "Stop", "Wait"} for
// the outer one.
struct Invocation {
  std::vector<std::string> callee;
  std::size_t offset = 0;
  // Paren/bracket/brace nesting inside the owning statement; 0 = outermost.
  int depth = 0;

  const std::string& name() const { return callee.back(); }
  friend bool operator==(const Invocation&, const Invocation&) = default;
};

enum class StatementKind {
  expression,
  local_declaration,
  if_statement,
  switch_statement,
  while_statement,
  do_statement,
  for_statement,
  foreach_statement,
  try_statement,
  using_statement,
  return_statement,
  throw_statement,
  block,
  unknown,
};

std::string_view to_string(StatementKind kind);

// Statement node. Children layout per kind:
//   block                  the statements of the block, in order
//   if                     then-branch, optional else-branch
//   while/for/foreach/do   the loop body
//   switch                 one block per section (header holds the labels)
//   try                    try block, catch blocks, optional finally block
//                          (header holds "catch (...)" / "finally")
//   using                  the embedded statement, if any
//   expression/declaration lambda and anonymous-method bodies (as blocks)
//   unknown                nested block of `unsafe {}`, `lock (...)`, local functions
// Only a block's children are a statement sequence; the other slots are
// independent and never adjacent to each other.
struct Statement {
  StatementKind kind = StatementKind::unknown;
  SourceSpan span;
  std::string text;
  // Significant tokens joined by single spaces; comments dropped.
  std::string normalized;
  std::string header;
  std::vector<Invocation> invocations;
  bool has_ternary = false;
  bool has_switch_expression = false;
  std::vector<Statement> children;

  friend bool operator==(const Statement&, const Statement&) = default;
};

struct AttributeNode {
  std::string name;
  std::string text;
  friend bool operator==(const AttributeNode&, const AttributeNode&) = default;
};

struct TestSyntaxTree {
  std::vector<AttributeNode> attributes;
  std::vector<std::string> modifiers;
  std::string return_type;
  std::string method_name;
  std::vector<std::string> parameters;
  // Present iff there is no fatal diagnostic.
  std::optional<std::vector<Statement>> body;
  // Best-effort statements from the lenient re-parse; filled only when the
  // strict parse failed.
  std::vector<Statement> recovered_body;
  std::vector<std::string> comments;
  SourceSpan method_span;
  std::vector<SyntaxDiagnostic> diagnostics;

  bool has_fatal() const;
  const std::vector<Statement>& statements() const { return body ? *body : recovered_body; }
  friend bool operator==(const TestSyntaxTree&, const TestSyntaxTree&) = default;
};

struct SyntaxVerdict {
  bool correct = false;
  std::vector<SyntaxDiagnostic> diagnostics;
};

// Members of a type declaration. Spans are byte ranges into the source.
struct FieldNode {
  std::string name;
  SourceSpan span;
};

struct PropertyNode {
  std::string name;
  SourceSpan span;
};

struct MethodNode {
  std::string name;
  // Whole member including attributes.
  SourceSpan span;
  // Modifiers through the parameter list and constraints.
  SourceSpan signature;
  // `{ ... }`, `=> ...;` or empty (abstract / interface / extern).
  SourceSpan body;
  bool has_body() const { return body.size() > 0; }
};

struct ClassNode {
  std::string kind;  // class, struct, interface, record, enum
  std::string name;
  SourceSpan span;
  // Declaration from modifiers up to (not including) the opening brace.
  SourceSpan header;
  // Braces inclusive; empty for `record R(int X);`.
  SourceSpan body;
  std::vector<FieldNode> fields;
  std::vector<PropertyNode> properties;
  std::vector<MethodNode> methods;
  std::vector<ClassNode> nested;
  std::vector<SourceSpan> comments;
  std::vector<SourceSpan> raw_members;
};

struct UsingDirective {
  std::string text;
  SourceSpan span;
};

struct NamespaceNode {
  std::string name;
  SourceSpan span;
  bool file_scoped = false;
};

struct FocalFileTree {
  std::string source;
  std::vector<Token> tokens;
  std::vector<UsingDirective> using_directives;
  std::vector<NamespaceNode> namespaces;
  std::vector<ClassNode> classes;
};

// Parses one attribute-decorated method. Never throws: failures become
// diagnostics and a best-effort `recovered_body`.
TestSyntaxTree parse_test_method(std::string_view source);

// Parses a whole C# file into the structure used for prompt abbreviation.
// Throws FatalSyntax when the brace structure cannot be recovered.
FocalFileTree parse_focal_file(std::string_view source);

SyntaxVerdict check_syntax(std::string_view source);

// Finds the innermost type that directly declares `method`, depth first in
// declaration order.
const ClassNode* find_focal_class(const FocalFileTree& tree, std::string_view method);

}  // namespace testrl
