#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "uasttaint/frontend.hpp"
#include "uasttaint/uast.hpp"

using namespace uast;

namespace {

NodePtr firstStmt(const NodePtr& pkg) { return pkg->list("body").at(0); }

NodePtr assignedValue(const NodePtr& stmt) {
  return stmt->child("expression")->child("value");
}

int countKind(const NodePtr& tree, NodeKind kind, bool syntheticOnly = false) {
  int n = 0;
  walk(tree, [&](const UastNode& node, const std::string&, int) {
    if (node.kind == kind && (!syntheticOnly || node.synthetic)) n++;
  });
  return n;
}

}  // namespace

TEST_CASE("lowering rule table covers both languages without duplicates") {
  const auto& rules = loweringRules();
  CHECK(rules.size() > 40);
  std::set<std::string> kinds;
  bool sawPy = false, sawJs = false, sawDesugar = false;
  for (const auto& r : rules) {
    CHECK(kinds.insert(r.sourceKind).second);  // one rule per native kind
    if (r.sourceKind.starts_with("minipy:")) sawPy = true;
    if (r.sourceKind.starts_with("minijs:")) sawJs = true;
    if (r.ruleClass == RuleClass::Desugar) sawDesugar = true;
    CHECK(!r.description.empty());
  }
  CHECK(sawPy);
  CHECK(sawJs);
  CHECK(sawDesugar);
}

TEST_CASE("every lowered tree validates") {
  const char* programs[] = {
      "x = 1\nif x:\n    y = 2\nelse:\n    y = 3\n",
      "def f(a, b=2):\n    return a + b\nf(1)\n",
      "class C(B):\n    def m(self):\n        return self.x\n",
      "for v in [1, 2]:\n    print(v)\n",
      "try:\n    x = 1\nexcept Exception as e:\n    x = 2\n",
      "while x:\n    break\n",
      "import os\n",
      "xs = [a for a in [1]]\nf = lambda q: q\ns = f\"v {x} w\"\n",
      "def g():\n    yield 1\n",
  };
  for (const char* p : programs) {
    CAPTURE(p);
    CHECK(validate(parseToUast(p, "minipy", "t.mpy")).empty());
  }
  const char* js[] = {
      "let x = 1;\nconst y = x ? 2 : 3;\n",
      "function f(a) { return a + 1; }\nf(2);\n",
      "class C extends B { constructor() { this.x = 1; } m() { return 2; } }\n",
      "for (const v of [1, 2]) { g(v); }\n",
      "try { f(); } catch (e) { g(); }\n",
      "let o = { a: 1, b: [2, 3] };\no.a = o.b[0];\n",
      "async function f() { return await g(); }\n",
      "const h = (x) => x * 2;\nlet s = `a ${h} b`;\n",
      "let n = new F(1);\nthrow n;\n",
      "const express = require(\"expressish\");\n",
  };
  for (const char* p : js) {
    CAPTURE(p);
    CHECK(validate(parseToUast(p, "minijs", "t.mjs.txt")).empty());
  }
}

TEST_CASE("minipy syntax errors carry location and expectation") {
  try {
    parse("def f(:\n", "minipy", "bad.mpy");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.file == "bad.mpy");
    CHECK(e.line == 1);
    CHECK(e.col > 1);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS((void)parse("if x\n    y = 1\n", "minipy", "t"), SyntaxError);
  CHECK_THROWS_AS((void)parse("x = \"unterminated\n", "minipy", "t"), SyntaxError);
}

TEST_CASE("minijs syntax errors carry location") {
  try {
    parse("let = 3;\n", "minijs", "bad.js");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.file == "bad.js");
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS((void)parse("function (){", "minijs", "t"), SyntaxError);
  CHECK_THROWS_AS((void)parse("x = ;\n", "minijs", "t"), SyntaxError);
}

TEST_CASE("unknown language is rejected") {
  CHECK_THROWS((void)parse("x = 1", "cobol", "t"));
}

TEST_CASE("listcomp desugars to a synthetic accumulator loop") {
  NodePtr pkg = parseToUast("xs = [x for x in [1, 2]]\n", "minipy", "t.mpy");
  NodePtr value = assignedValue(firstStmt(pkg));
  REQUIRE(value->kind == NodeKind::Sequence);
  const auto& elems = value->list("elements");
  REQUIRE(elems.size() == 3);
  CHECK(elems[0]->kind == NodeKind::VariableDeclaration);
  CHECK(elems[0]->synthetic);
  CHECK(elems[0]->attrString("name").starts_with("__lc"));
  CHECK(elems[1]->kind == NodeKind::RangeStatement);
  CHECK(elems[1]->synthetic);
  CHECK(elems[2]->kind == NodeKind::Identifier);
}

TEST_CASE("lambda desugars to a function with a synthetic return") {
  NodePtr pkg = parseToUast("f = lambda a: a + 1\n", "minipy", "t.mpy");
  NodePtr fn = assignedValue(firstStmt(pkg));
  REQUIRE(fn->kind == NodeKind::FunctionDefinition);
  REQUIRE(fn->list("body").size() == 1);
  const NodePtr& ret = fn->list("body")[0];
  CHECK(ret->kind == NodeKind::ReturnStatement);
  CHECK(ret->synthetic);
  CHECK(fn->list("params").size() == 1);
}

TEST_CASE("f-string desugars to a concat chain; single expression stays bare") {
  NodePtr pkg =
      parseToUast("m = f\"hi {name}!\"\ns = f\"{name}\"\n", "minipy", "t.mpy");
  NodePtr chain = assignedValue(pkg->list("body")[0]);
  CHECK(chain->kind == NodeKind::BinaryExpression);
  CHECK(chain->attrString("operator") == "+");
  NodePtr bare = assignedValue(pkg->list("body")[1]);
  CHECK(bare->kind == NodeKind::Identifier);
  CHECK(bare->attrString("name") == "name");
}

TEST_CASE("arrow functions become lexical-this function definitions") {
  NodePtr pkg = parseToUast("let f = (x) => x;\n", "minijs", "t.js");
  NodePtr decl = firstStmt(pkg);
  NodePtr fn = decl->child("init");
  REQUIRE(fn->kind == NodeKind::FunctionDefinition);
  CHECK(fn->attrBool("lexicalThis"));
  CHECK(fn->synthetic);
}

TEST_CASE("template literals desugar to a concat chain") {
  NodePtr pkg = parseToUast("let s = `a ${x} b`;\n", "minijs", "t.js");
  NodePtr init = firstStmt(pkg)->child("init");
  CHECK(init->kind == NodeKind::BinaryExpression);
  CHECK(init->attrString("operator") == "+");
}

TEST_CASE("tuples and lists both lower to ArrayLiteral") {
  NodePtr pkg = parseToUast("a = (1, 2)\nb = [3, 4]\n", "minipy", "t.mpy");
  CHECK(assignedValue(pkg->list("body")[0])->kind == NodeKind::ArrayLiteral);
  CHECK(assignedValue(pkg->list("body")[1])->kind == NodeKind::ArrayLiteral);
}

TEST_CASE("dicts and object literals lower to ObjectLiteral entries") {
  NodePtr pkg = parseToUast("d = {\"k\": 1}\n", "minipy", "t.mpy");
  NodePtr obj = assignedValue(firstStmt(pkg));
  REQUIRE(obj->kind == NodeKind::ObjectLiteral);
  REQUIRE(obj->list("entries").size() == 1);
  CHECK(obj->list("entries")[0]->kind == NodeKind::AssignmentExpression);
}

TEST_CASE("require() lowers to an ImportStatement") {
  NodePtr pkg =
      parseToUast("const e = require(\"expressish\");\n", "minijs", "t.js");
  CHECK(countKind(pkg, NodeKind::ImportStatement) == 1);
}

TEST_CASE("methods are tagged and bind self/this conventionally") {
  NodePtr py = parseToUast("class C:\n    def m(self):\n        return 1\n",
                           "minipy", "t.mpy");
  NodePtr cls = firstStmt(py);
  REQUIRE(cls->kind == NodeKind::ClassDefinition);
  const NodePtr& m = cls->list("body")[0];
  CHECK(m->attrBool("isMethod"));
  CHECK(m->list("params")[0]->attrString("name") == "self");

  NodePtr js = parseToUast("class C { m() { return this.x; } }\n", "minijs",
                           "t.js");
  const NodePtr& jm = firstStmt(js)->list("body")[0];
  CHECK(jm->attrBool("isMethod"));
}

TEST_CASE("language tags ride every lowered node") {
  NodePtr pkg = parseToUast("x = 1\n", "minipy", "t.mpy");
  walk(pkg, [](const UastNode& n, const std::string&, int) {
    CHECK(n.langTag == "minipy");
  });
}

TEST_CASE("locations are well-formed across a multi-line program") {
  NodePtr pkg = parseToUast(
      "def f(a):\n    if a:\n        return a\n    return 0\nf(1)\n", "minipy",
      "t.mpy");
  walk(pkg, [](const UastNode& n, const std::string&, int) {
    CHECK(n.loc.wellFormed());
    CHECK(n.loc.file == "t.mpy");
  });
}
