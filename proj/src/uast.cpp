#include "uasttaint/uast.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "json.hpp"

namespace uast {

using json = nlohmann::json;

std::string SourceLocation::str() const {
  std::ostringstream os;
  os << file << ":" << startLine << ":" << startCol;
  return os.str();
}

namespace {

struct KindInfo {
  NodeKind kind;
  const char* name;
  NodeCategory category;
  bool universal;
};

constexpr std::array<KindInfo, kNodeKindCount> kKinds = {{
    {NodeKind::Noop, "Noop", NodeCategory::Basic, true},
    {NodeKind::Literal, "Literal", NodeCategory::Basic, true},
    {NodeKind::Identifier, "Identifier", NodeCategory::Basic, true},
    {NodeKind::Sequence, "Sequence", NodeCategory::Basic, true},
    {NodeKind::IfStatement, "IfStatement", NodeCategory::Statement, true},
    {NodeKind::ReturnStatement, "ReturnStatement", NodeCategory::Statement, true},
    {NodeKind::WhileStatement, "WhileStatement", NodeCategory::Statement, true},
    {NodeKind::RangeStatement, "RangeStatement", NodeCategory::Statement, true},
    {NodeKind::TryStatement, "TryStatement", NodeCategory::Statement, true},
    {NodeKind::ExpressionStatement, "ExpressionStatement", NodeCategory::Statement, true},
    {NodeKind::BreakStatement, "BreakStatement", NodeCategory::Statement, true},
    {NodeKind::ContinueStatement, "ContinueStatement", NodeCategory::Statement, true},
    {NodeKind::ThrowStatement, "ThrowStatement", NodeCategory::Statement, true},
    {NodeKind::ImportStatement, "ImportStatement", NodeCategory::Statement, true},
    {NodeKind::BinaryExpression, "BinaryExpression", NodeCategory::Expression, true},
    {NodeKind::UnaryExpression, "UnaryExpression", NodeCategory::Expression, true},
    {NodeKind::CallExpression, "CallExpression", NodeCategory::Expression, true},
    {NodeKind::MemberAccess, "MemberAccess", NodeCategory::Expression, true},
    {NodeKind::IndexAccess, "IndexAccess", NodeCategory::Expression, true},
    {NodeKind::NewExpression, "NewExpression", NodeCategory::Expression, true},
    {NodeKind::AssignmentExpression, "AssignmentExpression", NodeCategory::Expression, true},
    {NodeKind::ConditionalExpression, "ConditionalExpression", NodeCategory::Expression, true},
    {NodeKind::ObjectLiteral, "ObjectLiteral", NodeCategory::Expression, true},
    {NodeKind::ArrayLiteral, "ArrayLiteral", NodeCategory::Expression, true},
    {NodeKind::AwaitExpression, "AwaitExpression", NodeCategory::Expression, true},
    {NodeKind::YieldExpression, "YieldExpression", NodeCategory::Expression, false},
    {NodeKind::FunctionDefinition, "FunctionDefinition", NodeCategory::Declaration, true},
    {NodeKind::VariableDeclaration, "VariableDeclaration", NodeCategory::Declaration, true},
    {NodeKind::ClassDefinition, "ClassDefinition", NodeCategory::Declaration, true},
    {NodeKind::PackageDeclaration, "PackageDeclaration", NodeCategory::Declaration, true},
    {NodeKind::PrimitiveType, "PrimitiveType", NodeCategory::Type, true},
    {NodeKind::ChanType, "ChanType", NodeCategory::Type, false},
}};

const KindInfo& info(NodeKind k) { return kKinds[static_cast<std::size_t>(k)]; }

// What a child slot may hold.
enum class SlotClass {
  Expr,        // expression-valued: Expression kinds + Literal/Identifier/Sequence
               // + FunctionDefinition (function expressions)
  Stmt,        // statement position: Statement + Declaration kinds + Noop + Sequence
  Any,         // Expr or Stmt
  Ident,       // Identifier only
  AssignTarget,  // Identifier | MemberAccess | IndexAccess | Literal (object keys)
  Assign,      // AssignmentExpression only (object literal entries)
  Callable,    // Expr or ChanType (NewExpression callee)
  VarDecl,     // VariableDeclaration only (parameter lists)
};

bool isExprKind(NodeKind k) {
  switch (kindCategory(k)) {
    case NodeCategory::Expression:
      return true;
    case NodeCategory::Basic:
      return k != NodeKind::Noop;
    case NodeCategory::Declaration:
      return k == NodeKind::FunctionDefinition;
    default:
      return false;
  }
}

bool isStmtKind(NodeKind k) {
  switch (kindCategory(k)) {
    case NodeCategory::Statement:
    case NodeCategory::Declaration:
      return true;
    case NodeCategory::Basic:
      return k == NodeKind::Noop || k == NodeKind::Sequence;
    default:
      return false;
  }
}

bool slotAccepts(SlotClass cls, NodeKind k) {
  switch (cls) {
    case SlotClass::Expr:
      return isExprKind(k);
    case SlotClass::Stmt:
      return isStmtKind(k);
    case SlotClass::Any:
      return isExprKind(k) || isStmtKind(k);
    case SlotClass::Ident:
      return k == NodeKind::Identifier;
    case SlotClass::AssignTarget:
      return k == NodeKind::Identifier || k == NodeKind::MemberAccess ||
             k == NodeKind::IndexAccess || k == NodeKind::Literal;
    case SlotClass::Assign:
      return k == NodeKind::AssignmentExpression;
    case SlotClass::Callable:
      return isExprKind(k) || k == NodeKind::ChanType;
    case SlotClass::VarDecl:
      return k == NodeKind::VariableDeclaration;
  }
  return false;
}

const char* slotClassName(SlotClass cls) {
  switch (cls) {
    case SlotClass::Expr: return "expression";
    case SlotClass::Stmt: return "statement";
    case SlotClass::Any: return "statement-or-expression";
    case SlotClass::Ident: return "Identifier";
    case SlotClass::AssignTarget: return "assignment-target";
    case SlotClass::Assign: return "AssignmentExpression";
    case SlotClass::Callable: return "expression-or-ChanType";
    case SlotClass::VarDecl: return "VariableDeclaration";
  }
  return "?";
}

struct ChildSlot {
  const char* name;
  SlotClass cls;
  bool required;
};
struct ListSlot {
  const char* name;
  SlotClass cls;
  bool required;  // slot must be present (may still be empty)
};
enum class AttrType { String, Bool, Number, Scalar };
struct AttrSlot {
  const char* name;
  AttrType type;
  bool required;
};

struct KindSchema {
  std::vector<ChildSlot> children;
  std::vector<ListSlot> lists;
  std::vector<AttrSlot> attrs;
};

const KindSchema& schemaFor(NodeKind k) {
  static const std::map<NodeKind, KindSchema> table = {
      {NodeKind::Noop, {}},
      {NodeKind::Literal,
       {{}, {}, {{"value", AttrType::Scalar, true}, {"litType", AttrType::String, true}}}},
      {NodeKind::Identifier, {{}, {}, {{"name", AttrType::String, true}}}},
      {NodeKind::Sequence, {{}, {{"elements", SlotClass::Any, true}}, {}}},
      {NodeKind::IfStatement,
       {{{"test", SlotClass::Expr, true}},
        {{"consequent", SlotClass::Stmt, true}, {"alternate", SlotClass::Stmt, false}},
        {}}},
      {NodeKind::ReturnStatement, {{{"argument", SlotClass::Expr, false}}, {}, {}}},
      {NodeKind::WhileStatement,
       {{{"test", SlotClass::Expr, true}}, {{"body", SlotClass::Stmt, true}}, {}}},
      {NodeKind::RangeStatement,
       {{{"target", SlotClass::Ident, true}, {"iterable", SlotClass::Expr, true}},
        {{"body", SlotClass::Stmt, true}},
        {}}},
      {NodeKind::TryStatement,
       {{},
        {{"block", SlotClass::Stmt, true}, {"handler", SlotClass::Stmt, false}},
        {{"exceptionVar", AttrType::String, false}}}},
      {NodeKind::ExpressionStatement, {{{"expression", SlotClass::Expr, true}}, {}, {}}},
      {NodeKind::BreakStatement, {}},
      {NodeKind::ContinueStatement, {}},
      {NodeKind::ThrowStatement, {{{"argument", SlotClass::Expr, true}}, {}, {}}},
      {NodeKind::ImportStatement, {{}, {}, {{"moduleName", AttrType::String, true}}}},
      {NodeKind::BinaryExpression,
       {{{"left", SlotClass::Expr, true}, {"right", SlotClass::Expr, true}},
        {},
        {{"operator", AttrType::String, true}}}},
      {NodeKind::UnaryExpression,
       {{{"operand", SlotClass::Expr, true}}, {}, {{"operator", AttrType::String, true}}}},
      {NodeKind::CallExpression,
       {{{"callee", SlotClass::Expr, true}}, {{"arguments", SlotClass::Expr, true}}, {}}},
      {NodeKind::MemberAccess,
       {{{"object", SlotClass::Expr, true}}, {}, {{"property", AttrType::String, true}}}},
      {NodeKind::IndexAccess,
       {{{"object", SlotClass::Expr, true}, {"index", SlotClass::Expr, true}}, {}, {}}},
      {NodeKind::NewExpression,
       {{{"callee", SlotClass::Callable, true}}, {{"arguments", SlotClass::Expr, true}}, {}}},
      {NodeKind::AssignmentExpression,
       {{{"target", SlotClass::AssignTarget, true}, {"value", SlotClass::Expr, true}},
        {},
        {{"operator", AttrType::String, false}}}},
      {NodeKind::ConditionalExpression,
       {{{"test", SlotClass::Expr, true},
         {"consequent", SlotClass::Expr, true},
         {"alternate", SlotClass::Expr, true}},
        {},
        {}}},
      {NodeKind::ObjectLiteral, {{}, {{"entries", SlotClass::Assign, true}}, {}}},
      {NodeKind::ArrayLiteral, {{}, {{"elements", SlotClass::Expr, true}}, {}}},
      {NodeKind::AwaitExpression, {{{"argument", SlotClass::Expr, true}}, {}, {}}},
      {NodeKind::YieldExpression, {{{"argument", SlotClass::Expr, false}}, {}, {}}},
      {NodeKind::FunctionDefinition,
       {{},
        {{"params", SlotClass::VarDecl, true}, {"body", SlotClass::Stmt, true}},
        {{"name", AttrType::String, false},
         {"isAsync", AttrType::Bool, false},
         {"lexicalThis", AttrType::Bool, false},
         {"isMethod", AttrType::Bool, false}}}},
      {NodeKind::VariableDeclaration,
       {{{"init", SlotClass::Expr, false}},
        {},
        {{"name", AttrType::String, true}, {"declKind", AttrType::String, false}}}},
      {NodeKind::ClassDefinition,
       {{},
        {{"bases", SlotClass::Expr, true}, {"body", SlotClass::Stmt, true}},
        {{"name", AttrType::String, true}}}},
      {NodeKind::PackageDeclaration,
       {{}, {{"body", SlotClass::Stmt, true}}, {{"name", AttrType::String, true}}}},
      {NodeKind::PrimitiveType, {{}, {}, {{"name", AttrType::String, true}}}},
      {NodeKind::ChanType, {{}, {}, {{"elemType", AttrType::String, false}}}},
  };
  return table.at(k);
}

}  // namespace

const char* kindName(NodeKind k) { return info(k).name; }

std::optional<NodeKind> kindFromName(const std::string& name) {
  for (const auto& ki : kKinds) {
    if (name == ki.name) return ki.kind;
  }
  return std::nullopt;
}

NodeCategory kindCategory(NodeKind k) { return info(k).category; }
bool kindIsUniversal(NodeKind k) { return info(k).universal; }

std::vector<NodeKind> allKinds() {
  std::vector<NodeKind> out;
  for (const auto& ki : kKinds) out.push_back(ki.kind);
  return out;
}

const NodePtr& UastNode::child(const std::string& slot) const {
  auto it = children.find(slot);
  if (it == children.end()) throw std::out_of_range("missing child slot: " + slot);
  return it->second;
}

NodePtr UastNode::childOrNull(const std::string& slot) const {
  auto it = children.find(slot);
  return it == children.end() ? nullptr : it->second;
}

const std::vector<NodePtr>& UastNode::list(const std::string& slot) const {
  static const std::vector<NodePtr> empty;
  auto it = childLists.find(slot);
  return it == childLists.end() ? empty : it->second;
}

std::string UastNode::attrString(const std::string& name) const {
  auto it = attrs.find(name);
  if (it == attrs.end()) return "";
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  return "";
}

bool UastNode::attrBool(const std::string& name, bool dflt) const {
  auto it = attrs.find(name);
  if (it == attrs.end()) return dflt;
  if (const auto* b = std::get_if<bool>(&it->second)) return *b;
  return dflt;
}

std::optional<AttrValue> UastNode::attr(const std::string& name) const {
  auto it = attrs.find(name);
  if (it == attrs.end()) return std::nullopt;
  return it->second;
}

NodePtr makeNode(NodeKind kind, SourceLocation loc, std::string langTag) {
  auto n = std::make_shared<UastNode>();
  n->kind = kind;
  n->loc = std::move(loc);
  n->langTag = std::move(langTag);
  return n;
}

namespace {

void validateNode(const UastNode& node, const std::string& path,
                  std::vector<ValidationDiagnostic>& out) {
  const KindSchema& schema = schemaFor(node.kind);
  auto err = [&](const std::string& msg) {
    out.push_back({ValidationDiagnostic::Severity::Error, path, msg});
  };

  if (!node.loc.wellFormed()) err("malformed source location");

  // Attributes.
  for (const auto& as : schema.attrs) {
    auto v = node.attr(as.name);
    if (!v) {
      if (as.required)
        err(std::string(kindName(node.kind)) + " missing attribute `" + as.name + "`");
      continue;
    }
    bool ok = true;
    switch (as.type) {
      case AttrType::String: ok = std::holds_alternative<std::string>(*v); break;
      case AttrType::Bool: ok = std::holds_alternative<bool>(*v); break;
      case AttrType::Number:
        ok = std::holds_alternative<std::int64_t>(*v) || std::holds_alternative<double>(*v);
        break;
      case AttrType::Scalar: ok = true; break;
    }
    if (!ok) err(std::string("attribute `") + as.name + "` has wrong type");
  }
  for (const auto& [name, _] : node.attrs) {
    bool known = std::any_of(schema.attrs.begin(), schema.attrs.end(),
                             [&](const AttrSlot& a) { return name == a.name; });
    if (!known)
      err(std::string(kindName(node.kind)) + " has unknown attribute `" + name + "`");
  }

  // Single-child slots.
  for (const auto& cs : schema.children) {
    auto child = node.childOrNull(cs.name);
    if (!child) {
      if (cs.required)
        err(std::string(kindName(node.kind)) + " missing child slot `" + cs.name + "`");
      continue;
    }
    if (!slotAccepts(cs.cls, child->kind))
      err(std::string("slot `") + cs.name + "` requires " + slotClassName(cs.cls) +
          ", found " + kindName(child->kind));
  }
  for (const auto& [name, _] : node.children) {
    bool known = std::any_of(schema.children.begin(), schema.children.end(),
                             [&](const ChildSlot& c) { return name == c.name; });
    if (!known)
      err(std::string(kindName(node.kind)) + " has extra child slot `" + name + "`");
  }

  // List slots.
  for (const auto& ls : schema.lists) {
    if (!node.hasList(ls.name)) {
      if (ls.required)
        err(std::string(kindName(node.kind)) + " missing list slot `" + ls.name + "`");
      continue;
    }
    const auto& items = node.list(ls.name);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!items[i]) {
        err(std::string("null entry in list slot `") + ls.name + "`");
        continue;
      }
      if (!slotAccepts(ls.cls, items[i]->kind))
        err(std::string("slot `") + ls.name + "[" + std::to_string(i) + "]` requires " +
            slotClassName(ls.cls) + ", found " + kindName(items[i]->kind));
    }
  }
  for (const auto& [name, _] : node.childLists) {
    bool known = std::any_of(schema.lists.begin(), schema.lists.end(),
                             [&](const ListSlot& l) { return name == l.name; });
    if (!known)
      err(std::string(kindName(node.kind)) + " has extra list slot `" + name + "`");
  }

  // Recurse in deterministic (sorted slot name) order, single slots before lists
  // when names tie never happens since slot names are unique per kind.
  for (const auto& [name, child] : node.children) {
    if (child) validateNode(*child, path + "/" + name, out);
  }
  for (const auto& [name, items] : node.childLists) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i])
        validateNode(*items[i], path + "/" + name + "[" + std::to_string(i) + "]", out);
    }
  }
}

}  // namespace

std::vector<ValidationDiagnostic> validate(const NodePtr& tree) {
  std::vector<ValidationDiagnostic> out;
  if (!tree) {
    out.push_back({ValidationDiagnostic::Severity::Error, "", "null tree"});
    return out;
  }
  validateNode(*tree, "", out);
  return out;
}

bool hasErrors(const std::vector<ValidationDiagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const ValidationDiagnostic& d) {
    return d.severity == ValidationDiagnostic::Severity::Error;
  });
}

namespace {

json attrToJson(const AttrValue& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

json nodeToJson(const UastNode& node) {
  json j;  // nlohmann::json object keys are sorted; dump() emits no whitespace
  j["kind"] = kindName(node.kind);
  j["lang"] = node.langTag;
  j["loc"] = {{"file", node.loc.file},
              {"startLine", node.loc.startLine},
              {"startCol", node.loc.startCol},
              {"endLine", node.loc.endLine},
              {"endCol", node.loc.endCol}};
  if (node.synthetic) j["synthetic"] = true;
  for (const auto& [name, v] : node.attrs) j[name] = attrToJson(v);
  for (const auto& [name, child] : node.children) j[name] = nodeToJson(*child);
  for (const auto& [name, items] : node.childLists) {
    json arr = json::array();
    for (const auto& item : items) arr.push_back(nodeToJson(*item));
    j[name] = std::move(arr);
  }
  return j;
}

const std::vector<std::string> kFixedNodeFields = {"kind", "lang", "loc", "synthetic"};

NodePtr nodeFromJson(const json& j, const std::string& path) {
  if (!j.is_object()) throw DeserializeError(path + ": node must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw DeserializeError(path + ": missing `kind`");
  auto kind = kindFromName(j["kind"].get<std::string>());
  if (!kind)
    throw DeserializeError(path + ": unknown kind \"" + j["kind"].get<std::string>() + "\"");

  auto node = std::make_shared<UastNode>();
  node->kind = *kind;
  if (j.contains("lang")) {
    if (!j["lang"].is_string()) throw DeserializeError(path + ": `lang` must be a string");
    node->langTag = j["lang"].get<std::string>();
  }
  if (j.contains("loc")) {
    const json& l = j["loc"];
    if (!l.is_object()) throw DeserializeError(path + ": `loc` must be an object");
    try {
      node->loc.file = l.at("file").get<std::string>();
      node->loc.startLine = l.at("startLine").get<int>();
      node->loc.startCol = l.at("startCol").get<int>();
      node->loc.endLine = l.at("endLine").get<int>();
      node->loc.endCol = l.at("endCol").get<int>();
    } catch (const json::exception& e) {
      throw DeserializeError(path + ": bad `loc`: " + e.what());
    }
  } else {
    throw DeserializeError(path + ": missing `loc`");
  }
  if (j.contains("synthetic")) {
    if (!j["synthetic"].is_boolean())
      throw DeserializeError(path + ": `synthetic` must be a boolean");
    node->synthetic = j["synthetic"].get<bool>();
  }

  const KindSchema& schema = schemaFor(*kind);
  for (const auto& [key, value] : j.items()) {
    if (std::find(kFixedNodeFields.begin(), kFixedNodeFields.end(), key) !=
        kFixedNodeFields.end())
      continue;
    const std::string childPath = path + "/" + key;
    bool isAttr = std::any_of(schema.attrs.begin(), schema.attrs.end(),
                              [&](const AttrSlot& a) { return key == a.name; });
    bool isChild = std::any_of(schema.children.begin(), schema.children.end(),
                               [&](const ChildSlot& c) { return key == c.name; });
    bool isList = std::any_of(schema.lists.begin(), schema.lists.end(),
                              [&](const ListSlot& l) { return key == l.name; });
    if (isAttr) {
      if (value.is_string())
        node->attrs[key] = value.get<std::string>();
      else if (value.is_boolean())
        node->attrs[key] = value.get<bool>();
      else if (value.is_number_integer())
        node->attrs[key] = value.get<std::int64_t>();
      else if (value.is_number())
        node->attrs[key] = value.get<double>();
      else
        throw DeserializeError(childPath + ": attribute must be a scalar");
    } else if (isChild) {
      node->children[key] = nodeFromJson(value, childPath);
    } else if (isList) {
      if (!value.is_array()) throw DeserializeError(childPath + ": must be an array");
      std::vector<NodePtr> items;
      for (std::size_t i = 0; i < value.size(); ++i)
        items.push_back(nodeFromJson(value[i], childPath + "[" + std::to_string(i) + "]"));
      node->childLists[key] = std::move(items);
    } else {
      throw DeserializeError(childPath + ": unknown field for kind " +
                             std::string(kindName(*kind)));
    }
  }
  return node;
}

}  // namespace

std::string serialize(const NodePtr& tree) {
  auto diags = validate(tree);
  if (hasErrors(diags)) {
    std::string msg = "cannot serialize invalid tree:";
    for (const auto& d : diags) msg += " [" + d.nodePath + "] " + d.message + ";";
    throw SerializeError(msg);
  }
  json doc;
  doc["version"] = "1";
  doc["root"] = nodeToJson(*tree);
  return doc.dump();
}

NodePtr deserialize(const std::string& docText) {
  json doc;
  try {
    doc = json::parse(docText);
  } catch (const json::parse_error& e) {
    throw DeserializeError(std::string("malformed document at byte ") +
                           std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != "1")
    throw DeserializeError("document must carry version \"1\"");
  if (!doc.contains("root")) throw DeserializeError("document missing `root`");
  NodePtr root = nodeFromJson(doc["root"], "root");
  auto diags = validate(root);
  if (hasErrors(diags)) {
    std::string msg = "deserialized tree fails validation:";
    for (const auto& d : diags) msg += " [" + d.nodePath + "] " + d.message + ";";
    throw DeserializeError(msg);
  }
  return root;
}

namespace {
void walkImpl(const NodePtr& node, const std::string& slot, int depth,
              const Visitor& visitor) {
  visitor(*node, slot, depth);
  for (const auto& [name, child] : node->children)
    if (child) walkImpl(child, name, depth + 1, visitor);
  for (const auto& [name, items] : node->childLists)
    for (std::size_t i = 0; i < items.size(); ++i)
      if (items[i])
        walkImpl(items[i], name + "[" + std::to_string(i) + "]", depth + 1, visitor);
}
}  // namespace

void walk(const NodePtr& tree, const Visitor& visitor) {
  if (!tree) return;
  walkImpl(tree, "", 0, visitor);
}

std::size_t countNodes(const NodePtr& tree) {
  std::size_t n = 0;
  walk(tree, [&](const UastNode&, const std::string&, int) { ++n; });
  return n;
}

bool treeEqual(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->loc != b->loc || a->synthetic != b->synthetic ||
      a->langTag != b->langTag || a->attrs != b->attrs)
    return false;
  if (a->children.size() != b->children.size() ||
      a->childLists.size() != b->childLists.size())
    return false;
  for (const auto& [name, child] : a->children) {
    auto it = b->children.find(name);
    if (it == b->children.end() || !treeEqual(child, it->second)) return false;
  }
  for (const auto& [name, items] : a->childLists) {
    auto it = b->childLists.find(name);
    if (it == b->childLists.end() || it->second.size() != items.size()) return false;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (!treeEqual(items[i], it->second[i])) return false;
  }
  return true;
}

namespace {
void exprKeyImpl(const UastNode& node, std::string& out) {
  out += kindName(node.kind);
  out += '(';
  for (const auto& [name, v] : node.attrs) {
    out += name;
    out += '=';
    std::visit(
        [&](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>)
            out += x;
          else
            out += std::to_string(x);
        },
        v);
    out += ',';
  }
  for (const auto& [name, child] : node.children) {
    out += name;
    out += ':';
    if (child) exprKeyImpl(*child, out);
    out += ',';
  }
  for (const auto& [name, items] : node.childLists) {
    out += name;
    out += ":[";
    for (const auto& item : items) {
      if (item) exprKeyImpl(*item, out);
      out += ',';
    }
    out += ']';
  }
  out += ')';
}
}  // namespace

std::string exprKey(const UastNode& node) {
  std::string out;
  exprKeyImpl(node, out);
  return out;
}

}  // namespace uast
