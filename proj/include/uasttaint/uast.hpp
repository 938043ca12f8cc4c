#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace uast {

struct SourceLocation {
  std::string file;
  int startLine = 1;
  int startCol = 1;
  int endLine = 1;
  int endCol = 1;

  bool operator==(const SourceLocation&) const = default;
  bool wellFormed() const {
    return startLine <= endLine && (startLine != endLine || startCol <= endCol);
  }
  std::string str() const;
};

enum class NodeKind {
  // Basic
  Noop,
  Literal,
  Identifier,
  Sequence,
  // Statement
  IfStatement,
  ReturnStatement,
  WhileStatement,
  RangeStatement,
  TryStatement,
  ExpressionStatement,
  BreakStatement,
  ContinueStatement,
  ThrowStatement,
  ImportStatement,
  // Expression
  BinaryExpression,
  UnaryExpression,
  CallExpression,
  MemberAccess,
  IndexAccess,
  NewExpression,
  AssignmentExpression,
  ConditionalExpression,
  ObjectLiteral,
  ArrayLiteral,
  AwaitExpression,
  YieldExpression,
  // Declaration
  FunctionDefinition,
  VariableDeclaration,
  ClassDefinition,
  PackageDeclaration,
  // Type
  PrimitiveType,
  ChanType,
};

enum class NodeCategory { Basic, Statement, Expression, Declaration, Type };

constexpr int kNodeKindCount = 32;

const char* kindName(NodeKind k);
std::optional<NodeKind> kindFromName(const std::string& name);
NodeCategory kindCategory(NodeKind k);
bool kindIsUniversal(NodeKind k);
std::vector<NodeKind> allKinds();

// Attribute values are scalars; integers stay integers through serialization.
using AttrValue = std::variant<std::string, bool, std::int64_t, double>;

struct UastNode;
using NodePtr = std::shared_ptr<UastNode>;

struct UastNode {
  NodeKind kind = NodeKind::Noop;
  SourceLocation loc;
  bool synthetic = false;
  std::string langTag = "raw";  // "minipy" | "minijs" | "raw"
  std::map<std::string, AttrValue> attrs;
  std::map<std::string, NodePtr> children;
  std::map<std::string, std::vector<NodePtr>> childLists;

  const NodePtr& child(const std::string& slot) const;
  NodePtr childOrNull(const std::string& slot) const;
  const std::vector<NodePtr>& list(const std::string& slot) const;
  bool hasList(const std::string& slot) const { return childLists.count(slot) != 0; }

  std::string attrString(const std::string& name) const;
  bool attrBool(const std::string& name, bool dflt = false) const;
  std::optional<AttrValue> attr(const std::string& name) const;
};

NodePtr makeNode(NodeKind kind, SourceLocation loc, std::string langTag = "raw");

struct ValidationDiagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string nodePath;  // child-slot path from root, e.g. "/body[0]/test"
  std::string message;
};

// Empty result iff every node satisfies the kind/child-slot schema.
// Diagnostics come out in pre-order traversal order.
std::vector<ValidationDiagnostic> validate(const NodePtr& tree);

bool hasErrors(const std::vector<ValidationDiagnostic>& diags);

class SerializeError : public std::runtime_error {
 public:
  explicit SerializeError(const std::string& what) : std::runtime_error(what) {}
};

class DeserializeError : public std::runtime_error {
 public:
  explicit DeserializeError(const std::string& what) : std::runtime_error(what) {}
};

// Canonical interchange form: sorted keys, no insignificant whitespace, UTF-8.
// Rejects trees with validation errors.
std::string serialize(const NodePtr& tree);

// Accepts only documents whose tree passes validate; unknown kinds rejected.
NodePtr deserialize(const std::string& doc);

// Pre-order traversal. The visitor sees (node, childSlotName, depth);
// the root's slot name is "".
using Visitor = std::function<void(const UastNode&, const std::string&, int)>;
void walk(const NodePtr& tree, const Visitor& visitor);

std::size_t countNodes(const NodePtr& tree);

// Structural equality ignoring nothing: kind, loc, attrs, children.
bool treeEqual(const NodePtr& a, const NodePtr& b);

// Structural key of an expression ignoring locations; used for syntactic
// path-constraint reuse.
std::string exprKey(const UastNode& node);

}  // namespace uast
