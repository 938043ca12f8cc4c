#include <algorithm>
#include <filesystem>

#include "uasttaint/frontend.hpp"

namespace uast {
namespace {

class UnsupportedConstruct : public std::runtime_error {
 public:
  explicit UnsupportedConstruct(const NativeAst& n)
      : std::runtime_error("unsupported construct `" + n.kind + "` at " + n.loc.str()) {}
};

class Lowerer {
 public:
  Lowerer(std::string lang) : lang_(std::move(lang)) {}

  NodePtr lowerModule(const NativeAst& mod) {
    auto pkg = uastNode(NodeKind::PackageDeclaration, mod.loc);
    pkg->attrs["name"] = std::filesystem::path(mod.loc.file).stem().string();
    std::vector<NodePtr> body;
    for (const auto& stmt : mod.list("body")) lowerStmtInto(*stmt, body);
    pkg->childLists["body"] = std::move(body);
    return pkg;
  }

 private:
  NodePtr uastNode(NodeKind kind, const SourceLocation& loc, bool synthetic = false) {
    auto n = makeNode(kind, loc, lang_);
    n->synthetic = synthetic;
    return n;
  }

  NodePtr ident(const std::string& name, const SourceLocation& loc,
                bool synthetic = false) {
    auto n = uastNode(NodeKind::Identifier, loc, synthetic);
    n->attrs["name"] = name;
    return n;
  }

  NodePtr strLit(const std::string& value, const SourceLocation& loc,
                 bool synthetic = false) {
    auto n = uastNode(NodeKind::Literal, loc, synthetic);
    n->attrs["value"] = value;
    n->attrs["litType"] = "string";
    return n;
  }

  std::string normalizeOp(const std::string& op) const {
    if (op == "and") return "&&";
    if (op == "or") return "||";
    if (op == "not") return "!";
    if (op == "===") return "==";
    if (op == "!==") return "!=";
    return op;
  }

  std::vector<NodePtr> lowerBlock(const std::vector<NativePtr>& stmts) {
    std::vector<NodePtr> out;
    for (const auto& s : stmts) lowerStmtInto(*s, out);
    return out;
  }

  // One native statement may lower to several UAST statements (decorator
  // rebinding, require imports).
  void lowerStmtInto(const NativeAst& n, std::vector<NodePtr>& out) {
    const std::string& k = n.kind;
    if (k == "FunctionDef") {
      auto fn = lowerFunction(n, /*isMethod=*/false);
      out.push_back(fn);
      // `@d def f` becomes the definition followed by `f = d(f)`; decorators
      // then flow through ordinary call semantics.
      std::string name = n.attrString("name");
      for (const auto& dec : n.list("decorators")) {
        auto call = uastNode(NodeKind::CallExpression, dec->loc, true);
        call->children["callee"] = lowerExpr(*dec);
        call->childLists["arguments"] = {ident(name, dec->loc, true)};
        auto assign = uastNode(NodeKind::AssignmentExpression, dec->loc, true);
        assign->children["target"] = ident(name, dec->loc, true);
        assign->children["value"] = call;
        auto stmt = uastNode(NodeKind::ExpressionStatement, dec->loc, true);
        stmt->children["expression"] = assign;
        out.push_back(stmt);
      }
      return;
    }
    if (k == "FunctionDecl") {
      out.push_back(lowerFunction(n, /*isMethod=*/false));
      return;
    }
    if (k == "ClassDef" || k == "ClassDecl") {
      out.push_back(lowerClass(n));
      return;
    }
    if (k == "VarDeclGroup") {
      for (const auto& d : n.list("decls")) lowerStmtInto(*d, out);
      return;
    }
    if (k == "VarDecl") {
      auto init = n.childOrNull("init");
      if (init && isRequireCall(*init))
        out.push_back(requireImport(*init));
      auto decl = uastNode(NodeKind::VariableDeclaration, n.loc);
      decl->attrs["name"] = n.attrString("name");
      decl->attrs["declKind"] = n.attrString("declKind");
      if (init) decl->children["init"] = lowerExpr(*init);
      out.push_back(decl);
      return;
    }
    if (k == "If") {
      auto stmt = uastNode(NodeKind::IfStatement, n.loc);
      stmt->children["test"] = lowerExpr(*n.childOrNull("test"));
      stmt->childLists["consequent"] = lowerBlock(n.list("body"));
      if (!n.list("orelse").empty())
        stmt->childLists["alternate"] = lowerBlock(n.list("orelse"));
      out.push_back(stmt);
      return;
    }
    if (k == "While") {
      auto stmt = uastNode(NodeKind::WhileStatement, n.loc);
      stmt->children["test"] = lowerExpr(*n.childOrNull("test"));
      stmt->childLists["body"] = lowerBlock(n.list("body"));
      out.push_back(stmt);
      return;
    }
    if (k == "For" || k == "ForOf") {
      out.push_back(lowerRange(n));
      return;
    }
    if (k == "Try") {
      auto stmt = uastNode(NodeKind::TryStatement, n.loc);
      stmt->childLists["block"] = lowerBlock(n.list("body"));
      stmt->childLists["handler"] = lowerBlock(n.list("handler"));
      if (!n.attrString("exceptionVar").empty())
        stmt->attrs["exceptionVar"] = n.attrString("exceptionVar");
      out.push_back(stmt);
      return;
    }
    if (k == "Return") {
      auto stmt = uastNode(NodeKind::ReturnStatement, n.loc);
      if (auto v = n.childOrNull("value")) stmt->children["argument"] = lowerExpr(*v);
      out.push_back(stmt);
      return;
    }
    if (k == "Throw") {
      auto stmt = uastNode(NodeKind::ThrowStatement, n.loc);
      stmt->children["argument"] = lowerExpr(*n.childOrNull("value"));
      out.push_back(stmt);
      return;
    }
    if (k == "Import") {
      auto stmt = uastNode(NodeKind::ImportStatement, n.loc);
      stmt->attrs["moduleName"] = n.attrString("module");
      out.push_back(stmt);
      return;
    }
    if (k == "Break") {
      out.push_back(uastNode(NodeKind::BreakStatement, n.loc));
      return;
    }
    if (k == "Continue") {
      out.push_back(uastNode(NodeKind::ContinueStatement, n.loc));
      return;
    }
    if (k == "Pass") {
      out.push_back(uastNode(NodeKind::Noop, n.loc));
      return;
    }
    if (k == "Assign") {
      auto stmt = uastNode(NodeKind::ExpressionStatement, n.loc);
      stmt->children["expression"] = lowerExpr(n);
      out.push_back(stmt);
      return;
    }
    if (k == "ExprStmt") {
      const NativeAst& value = *n.childOrNull("value");
      if (isRequireCall(value)) {
        out.push_back(requireImport(value));
        return;
      }
      auto stmt = uastNode(NodeKind::ExpressionStatement, n.loc);
      stmt->children["expression"] = lowerExpr(value);
      out.push_back(stmt);
      return;
    }
    throw UnsupportedConstruct(n);
  }

  bool isRequireCall(const NativeAst& n) const {
    if (n.kind != "Call") return false;
    auto func = n.childOrNull("func");
    if (!func || func->kind != "Name" || func->attrString("name") != "require")
      return false;
    const auto& args = n.list("args");
    return args.size() == 1 && args[0]->kind == "Str";
  }

  NodePtr requireImport(const NativeAst& call) {
    auto stmt = uastNode(NodeKind::ImportStatement, call.loc);
    stmt->attrs["moduleName"] = call.list("args")[0]->attrString("value");
    return stmt;
  }

  NodePtr lowerFunction(const NativeAst& n, bool isMethod) {
    auto fn = uastNode(NodeKind::FunctionDefinition, n.loc);
    if (!n.attrString("name").empty()) fn->attrs["name"] = n.attrString("name");
    if (isMethod) fn->attrs["isMethod"] = true;
    if (n.attrs.count("isAsync")) fn->attrs["isAsync"] = true;
    std::vector<NodePtr> params;
    for (const auto& p : n.list("params")) {
      auto decl = uastNode(NodeKind::VariableDeclaration, p->loc);
      decl->attrs["name"] = p->attrString("name");
      decl->attrs["declKind"] = "param";
      if (auto d = p->childOrNull("default")) decl->children["init"] = lowerExpr(*d);
      params.push_back(decl);
    }
    fn->childLists["params"] = std::move(params);
    fn->childLists["body"] = lowerBlock(n.list("body"));
    return fn;
  }

  NodePtr lowerClass(const NativeAst& n) {
    auto cls = uastNode(NodeKind::ClassDefinition, n.loc);
    cls->attrs["name"] = n.attrString("name");
    std::vector<NodePtr> bases;
    if (n.kind == "ClassDef") {
      for (const auto& b : n.list("bases")) bases.push_back(lowerExpr(*b));
      cls->childLists["bases"] = std::move(bases);
      std::vector<NodePtr> body;
      for (const auto& s : n.list("body")) {
        if (s->kind == "FunctionDef") {
          body.push_back(lowerFunction(*s, /*isMethod=*/true));
        } else if (s->kind == "Pass") {
          body.push_back(uastNode(NodeKind::Noop, s->loc));
        } else {
          lowerStmtInto(*s, body);
        }
      }
      cls->childLists["body"] = std::move(body);
    } else {  // ClassDecl (minijs)
      if (auto sup = n.childOrNull("superClass")) bases.push_back(lowerExpr(*sup));
      cls->childLists["bases"] = std::move(bases);
      std::vector<NodePtr> body;
      for (const auto& m : n.list("methods"))
        body.push_back(lowerFunction(*m, /*isMethod=*/true));
      cls->childLists["body"] = std::move(body);
    }
    return cls;
  }

  NodePtr lowerRange(const NativeAst& n) {
    const NativeAst& iter = *n.childOrNull("iter");
    auto stmt = uastNode(NodeKind::RangeStatement, n.loc);
    stmt->children["target"] = ident(n.attrString("target"), n.loc);
    stmt->children["iterable"] = lowerExpr(iter);
    stmt->childLists["body"] = lowerBlock(n.list("body"));
    return stmt;
  }

  // [e for x in it] -> Sequence(tmp = []; for x in it: tmp.append(e); tmp)
  NodePtr desugarListComp(const NativeAst& n) {
    std::string tmp = "__lc" + std::to_string(lcCounter_++);
    auto seq = uastNode(NodeKind::Sequence, n.loc, true);

    auto decl = uastNode(NodeKind::VariableDeclaration, n.loc, true);
    decl->attrs["name"] = tmp;
    decl->attrs["declKind"] = "var";
    auto emptyArr = uastNode(NodeKind::ArrayLiteral, n.loc, true);
    emptyArr->childLists["elements"] = {};
    decl->children["init"] = emptyArr;

    auto range = uastNode(NodeKind::RangeStatement, n.loc, true);
    range->children["target"] = ident(n.attrString("target"), n.loc, true);
    range->children["iterable"] = lowerExpr(*n.childOrNull("iter"));
    auto append = uastNode(NodeKind::MemberAccess, n.loc, true);
    append->children["object"] = ident(tmp, n.loc, true);
    append->attrs["property"] = "append";
    auto call = uastNode(NodeKind::CallExpression, n.loc, true);
    call->children["callee"] = append;
    call->childLists["arguments"] = {lowerExpr(*n.childOrNull("elt"))};
    auto callStmt = uastNode(NodeKind::ExpressionStatement, n.loc, true);
    callStmt->children["expression"] = call;
    range->childLists["body"] = {callStmt};

    seq->childLists["elements"] = {decl, range, ident(tmp, n.loc, true)};
    return seq;
  }

  // lambda / arrow -> anonymous FunctionDefinition with implicit return.
  NodePtr desugarLambda(const NativeAst& n) {
    auto fn = uastNode(NodeKind::FunctionDefinition, n.loc, true);
    if (n.kind == "Arrow") fn->attrs["lexicalThis"] = true;
    if (n.attrs.count("isAsync")) fn->attrs["isAsync"] = true;
    std::vector<NodePtr> params;
    for (const auto& p : n.list("params")) {
      auto decl = uastNode(NodeKind::VariableDeclaration, p->loc, true);
      decl->attrs["name"] = p->attrString("name");
      decl->attrs["declKind"] = "param";
      if (auto d = p->childOrNull("default")) decl->children["init"] = lowerExpr(*d);
      params.push_back(decl);
    }
    fn->childLists["params"] = std::move(params);
    if (n.kind == "Lambda" || n.attrs.count("exprBody")) {
      const NativeAst& bodyExpr =
          n.kind == "Lambda" ? *n.childOrNull("body") : *n.childOrNull("expr");
      auto ret = uastNode(NodeKind::ReturnStatement, bodyExpr.loc, true);
      ret->children["argument"] = lowerExpr(bodyExpr);
      fn->childLists["body"] = {ret};
    } else {
      fn->childLists["body"] = lowerBlock(n.list("body"));
    }
    return fn;
  }

  // f-string / template literal -> left-associated `+` chain in source order;
  // a single surviving part lowers to the bare value.
  NodePtr desugarFString(const NativeAst& n) {
    std::vector<NodePtr> parts;
    for (const auto& p : n.list("parts")) {
      if (p->kind == "Str") {
        if (p->attrString("value").empty()) continue;
        parts.push_back(strLit(p->attrString("value"), p->loc, true));
      } else {
        parts.push_back(lowerExpr(*p));
      }
    }
    if (parts.empty()) return strLit("", n.loc, true);
    NodePtr chain = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto bin = uastNode(NodeKind::BinaryExpression, n.loc, true);
      bin->attrs["operator"] = "+";
      bin->children["left"] = chain;
      bin->children["right"] = parts[i];
      chain = bin;
    }
    return chain;
  }

  NodePtr lowerExpr(const NativeAst& n) {
    const std::string& k = n.kind;
    if (k == "Name") return ident(n.attrString("name"), n.loc);
    if (k == "Num") {
      auto lit = uastNode(NodeKind::Literal, n.loc);
      lit->attrs["value"] = n.attrs.at("value");
      lit->attrs["litType"] = "number";
      return lit;
    }
    if (k == "Str") return strLit(n.attrString("value"), n.loc);
    if (k == "Bool") {
      auto lit = uastNode(NodeKind::Literal, n.loc);
      lit->attrs["value"] = n.attrs.at("value");
      lit->attrs["litType"] = "boolean";
      return lit;
    }
    if (k == "NoneLit" || k == "NullLit") {
      auto lit = uastNode(NodeKind::Literal, n.loc);
      lit->attrs["value"] = std::string("null");
      lit->attrs["litType"] = "null";
      return lit;
    }
    if (k == "BinOp" || k == "Binary") {
      auto bin = uastNode(NodeKind::BinaryExpression, n.loc);
      bin->attrs["operator"] = normalizeOp(n.attrString("op"));
      bin->children["left"] = lowerExpr(*n.childOrNull("left"));
      bin->children["right"] = lowerExpr(*n.childOrNull("right"));
      return bin;
    }
    if (k == "UnaryOp" || k == "Unary") {
      auto un = uastNode(NodeKind::UnaryExpression, n.loc);
      un->attrs["operator"] = normalizeOp(n.attrString("op"));
      un->children["operand"] = lowerExpr(*n.childOrNull("operand"));
      return un;
    }
    if (k == "Call") {
      auto call = uastNode(NodeKind::CallExpression, n.loc);
      call->children["callee"] = lowerExpr(*n.childOrNull("func"));
      std::vector<NodePtr> args;
      for (const auto& a : n.list("args")) args.push_back(lowerExpr(*a));
      call->childLists["arguments"] = std::move(args);
      return call;
    }
    if (k == "Attribute" || k == "Member") {
      auto m = uastNode(NodeKind::MemberAccess, n.loc);
      m->children["object"] = lowerExpr(*n.childOrNull("object"));
      m->attrs["property"] =
          k == "Attribute" ? n.attrString("attr") : n.attrString("prop");
      return m;
    }
    if (k == "Subscript" || k == "Index") {
      auto idx = uastNode(NodeKind::IndexAccess, n.loc);
      idx->children["object"] = lowerExpr(*n.childOrNull("object"));
      idx->children["index"] = lowerExpr(*n.childOrNull("index"));
      return idx;
    }
    if (k == "New") {
      auto nw = uastNode(NodeKind::NewExpression, n.loc);
      nw->children["callee"] = lowerExpr(*n.childOrNull("callee"));
      std::vector<NodePtr> args;
      for (const auto& a : n.list("args")) args.push_back(lowerExpr(*a));
      nw->childLists["arguments"] = std::move(args);
      return nw;
    }
    if (k == "Assign") {
      auto assign = uastNode(NodeKind::AssignmentExpression, n.loc);
      assign->children["target"] = lowerExpr(*n.childOrNull("target"));
      assign->children["value"] = lowerExpr(*n.childOrNull("value"));
      return assign;
    }
    if (k == "Cond") {
      auto cond = uastNode(NodeKind::ConditionalExpression, n.loc);
      cond->children["test"] = lowerExpr(*n.childOrNull("test"));
      cond->children["consequent"] = lowerExpr(*n.childOrNull("cons"));
      cond->children["alternate"] = lowerExpr(*n.childOrNull("alt"));
      return cond;
    }
    if (k == "List" || k == "ArrayLit" || k == "Tuple") {
      auto arr = uastNode(NodeKind::ArrayLiteral, n.loc);
      std::vector<NodePtr> elems;
      for (const auto& e : n.list("elements")) elems.push_back(lowerExpr(*e));
      arr->childLists["elements"] = std::move(elems);
      return arr;
    }
    if (k == "Dict" || k == "ObjectLit") {
      auto obj = uastNode(NodeKind::ObjectLiteral, n.loc);
      std::vector<NodePtr> entries;
      const auto& keys = n.list("keys");
      const auto& values = n.list("values");
      for (std::size_t i = 0; i < keys.size(); ++i) {
        auto entry = uastNode(NodeKind::AssignmentExpression, values[i]->loc);
        auto keyNode = lowerExpr(*keys[i]);
        if (keyNode->kind != NodeKind::Literal && keyNode->kind != NodeKind::Identifier)
          throw UnsupportedConstruct(*keys[i]);
        entry->children["target"] = keyNode;
        entry->children["value"] = lowerExpr(*values[i]);
        entries.push_back(entry);
      }
      obj->childLists["entries"] = std::move(entries);
      return obj;
    }
    if (k == "Await") {
      auto aw = uastNode(NodeKind::AwaitExpression, n.loc);
      aw->children["argument"] = lowerExpr(*n.childOrNull("value"));
      return aw;
    }
    if (k == "Yield") {
      auto y = uastNode(NodeKind::YieldExpression, n.loc);
      if (auto v = n.childOrNull("value")) y->children["argument"] = lowerExpr(*v);
      return y;
    }
    if (k == "ListComp") return desugarListComp(n);
    if (k == "Lambda" || k == "Arrow") return desugarLambda(n);
    if (k == "FString" || k == "TemplateLit") return desugarFString(n);
    if (k == "FunctionExpr") return lowerFunction(n, /*isMethod=*/false);
    throw UnsupportedConstruct(n);
  }

  std::string lang_;
  int lcCounter_ = 0;
};

}  // namespace

NodePtr lower(const NativePtr& ast, const std::string& lang) {
  Lowerer lowerer(lang);
  return lowerer.lowerModule(*ast);
}

}  // namespace uast
