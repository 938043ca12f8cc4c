#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "uasttaint/frontend.hpp"
#include "uasttaint/uast.hpp"

using namespace uast;

namespace {

NodePtr literalNode(std::int64_t v, int line = 1) {
  NodePtr n = makeNode(NodeKind::Literal, {"t", line, 1, line, 2});
  n->attrs["value"] = v;
  n->attrs["litType"] = std::string("number");
  return n;
}

NodePtr smallPackage() {
  NodePtr pkg = makeNode(NodeKind::PackageDeclaration, {"t", 1, 1, 3, 1});
  pkg->attrs["name"] = std::string("m");
  NodePtr stmt = makeNode(NodeKind::ExpressionStatement, {"t", 2, 1, 2, 9});
  NodePtr asg = makeNode(NodeKind::AssignmentExpression, {"t", 2, 1, 2, 9});
  NodePtr target = makeNode(NodeKind::Identifier, {"t", 2, 1, 2, 2});
  target->attrs["name"] = std::string("x");
  asg->children["target"] = target;
  asg->children["value"] = literalNode(42, 2);
  stmt->children["expression"] = asg;
  pkg->childLists["body"] = {stmt};
  return pkg;
}

}  // namespace

TEST_CASE("kind taxonomy: 32 kinds with stable name round-trip") {
  auto kinds = allKinds();
  REQUIRE(kinds.size() == kNodeKindCount);
  for (NodeKind k : kinds) {
    auto back = kindFromName(kindName(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(!kindFromName("NotAKind").has_value());
}

TEST_CASE("only yield and channel types are non-universal") {
  for (NodeKind k : allKinds()) {
    bool universal = kindIsUniversal(k);
    if (k == NodeKind::YieldExpression || k == NodeKind::ChanType)
      CHECK(!universal);
    else
      CHECK(universal);
  }
}

TEST_CASE("category partition covers every kind") {
  int counts[5] = {0, 0, 0, 0, 0};
  for (NodeKind k : allKinds()) counts[static_cast<int>(kindCategory(k))]++;
  CHECK(counts[static_cast<int>(NodeCategory::Basic)] == 4);
  CHECK(counts[static_cast<int>(NodeCategory::Statement)] == 10);
  CHECK(counts[static_cast<int>(NodeCategory::Expression)] == 12);
  CHECK(counts[static_cast<int>(NodeCategory::Declaration)] == 4);
  CHECK(counts[static_cast<int>(NodeCategory::Type)] == 2);
}

TEST_CASE("validate accepts a well-formed tree") {
  CHECK(validate(smallPackage()).empty());
}

TEST_CASE("validate flags missing required children with a node path") {
  NodePtr pkg = smallPackage();
  NodePtr bad = makeNode(NodeKind::IfStatement, {"t", 2, 1, 2, 5});
  bad->childLists["consequent"] = {};
  pkg->childLists["body"].push_back(bad);
  auto diags = validate(pkg);
  REQUIRE(hasErrors(diags));
  bool sawPath = false;
  for (const auto& d : diags)
    if (d.nodePath.find("/body[1]") != std::string::npos) sawPath = true;
  CHECK(sawPath);
}

TEST_CASE("serialize rejects invalid trees") {
  NodePtr bad = makeNode(NodeKind::IfStatement, {"t", 1, 1, 1, 5});
  CHECK_THROWS_AS((void)serialize(bad), SerializeError);
}

TEST_CASE("serialize then deserialize is the identity, byte for byte") {
  NodePtr pkg = smallPackage();
  std::string doc = serialize(pkg);
  NodePtr back = deserialize(doc);
  CHECK(treeEqual(pkg, back));
  CHECK(serialize(back) == doc);
}

TEST_CASE("deserialize rejects unknown kinds, fields, and versions") {
  std::string good = serialize(smallPackage());
  CHECK_THROWS_AS((void)deserialize("{\"version\":\"1\"}"), DeserializeError);
  CHECK_THROWS_AS((void)deserialize("not json"), DeserializeError);

  std::string badKind = good;
  badKind.replace(badKind.find("PackageDeclaration"), 18, "MysteryDeclaration");
  CHECK_THROWS_AS((void)deserialize(badKind), DeserializeError);

  std::string badVersion = good;
  badVersion.replace(badVersion.rfind("\"1\""), 3, "\"2\"");
  CHECK_THROWS_AS((void)deserialize(badVersion), DeserializeError);
}

TEST_CASE("integer attributes survive serialization as integers") {
  NodePtr pkg = smallPackage();
  NodePtr back = deserialize(serialize(pkg));
  const UastNode& lit =
      *back->list("body")[0]->child("expression")->child("value");
  auto v = lit.attr("value");
  REQUIRE(v.has_value());
  CHECK(std::holds_alternative<std::int64_t>(*v));
  CHECK(std::get<std::int64_t>(*v) == 42);
}

TEST_CASE("walk visits in pre-order with slot names and depths") {
  std::vector<std::pair<NodeKind, std::string>> seen;
  walk(smallPackage(), [&](const UastNode& n, const std::string& slot, int depth) {
    seen.push_back({n.kind, slot});
    CHECK(depth >= 0);
  });
  REQUIRE(seen.size() == 5);
  CHECK(seen[0] == std::pair{NodeKind::PackageDeclaration, std::string("")});
  CHECK(seen[1].first == NodeKind::ExpressionStatement);
  CHECK(seen[2].first == NodeKind::AssignmentExpression);
}

TEST_CASE("countNodes and treeEqual agree on structure") {
  NodePtr a = smallPackage();
  NodePtr b = smallPackage();
  CHECK(countNodes(a) == 5);
  CHECK(treeEqual(a, b));
  b->list("body")[0]->child("expression")->child("value")->attrs["value"] =
      std::int64_t{43};
  CHECK(!treeEqual(a, b));
}

TEST_CASE("exprKey ignores locations but not structure") {
  NodePtr a = literalNode(5, 1);
  NodePtr b = literalNode(5, 99);
  NodePtr c = literalNode(6, 1);
  CHECK(exprKey(*a) == exprKey(*b));
  CHECK(exprKey(*a) != exprKey(*c));
}

TEST_CASE("round-trip property over randomly generated parsed programs") {
  oracle::ProgramGen gen(7);
  for (int i = 0; i < 50; ++i) {
    oracle::RandomProgram prog = gen.next();
    NodePtr tree = parseToUast(prog.source, "minipy", "rand.mpy");
    REQUIRE(validate(tree).empty());
    std::string doc = serialize(tree);
    NodePtr back = deserialize(doc);
    CHECK(treeEqual(tree, back));
    CHECK(serialize(back) == doc);
  }
}
