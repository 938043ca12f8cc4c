#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>

#include "oracle.hpp"
#include "uasttaint/frontend.hpp"
#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"

using namespace uast;

namespace {

std::unique_ptr<Interpreter> runMiniPy(const std::string& src,
                                       AnalysisConfig config = {}) {
  auto interp = std::make_unique<Interpreter>(config, defaultRuleset());
  interp->runModule(parseToUast(src, "minipy", "test.mpy"));
  return interp;
}

}  // namespace

TEST_CASE("branch merge produces a Phi with both leaves") {
  auto interp = runMiniPy(
      "c = u()\n"
      "if c:\n"
      "    x = 1\n"
      "else:\n"
      "    x = 2\n");
  ValuePtr x = interp->globalScope()->vars.at("x");
  REQUIRE(x->tag == ValueTag::Phi);
  std::set<long long> vals;
  REQUIRE(oracle::abstractValueSet(x, vals));
  CHECK(vals == std::set<long long>{1, 2});
}

TEST_CASE("equal arms collapse instead of building a Phi") {
  auto interp = runMiniPy(
      "c = u()\n"
      "if c:\n"
      "    x = 7\n"
      "else:\n"
      "    x = 7\n");
  ValuePtr x = interp->globalScope()->vars.at("x");
  CHECK(x->tag == ValueTag::Prim);
  CHECK(x->asNumber() == 7.0);
}

TEST_CASE("decidable conditions do not fork") {
  auto interp = runMiniPy(
      "x = 1\n"
      "if x < 2:\n"
      "    y = 10\n"
      "else:\n"
      "    y = 20\n");
  ValuePtr y = interp->globalScope()->vars.at("y");
  CHECK(y->tag == ValueTag::Prim);
  CHECK(y->asNumber() == 10.0);
  CHECK(interp->counters.armEntries == 1);
}

TEST_CASE("contradictory leaves are infeasible at later same-condition branches") {
  auto interp = runMiniPy(
      "def f(c):\n"
      "    x = \"ok\"\n"
      "    if c:\n"
      "        x = source()\n"
      "    if c:\n"
      "        pass\n"
      "    else:\n"
      "        exec(x)\n"
      "f(u())\n");
  CHECK(interp->findings.empty());
}

TEST_CASE("independent conditions keep the tainted leaf feasible") {
  auto interp = runMiniPy(
      "def f(c, d):\n"
      "    x = \"ok\"\n"
      "    if c:\n"
      "        x = source()\n"
      "    if d:\n"
      "        exec(x)\n"
      "f(u(), w())\n");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].sinkLoc.startLine == 6);
}

TEST_CASE("bounded recursion terminates with exactly maxCallDepth descends") {
  auto interp = runMiniPy(
      "def f(n):\n"
      "    return f(n - 1)\n"
      "f(100)\n");
  CHECK(interp->counters.callDescends == 10);
  CHECK(interp->counters.depthLimitedCalls == 1);
}

TEST_CASE("deep but bounded recursion is cut at the configured depth") {
  AnalysisConfig config;
  config.maxCallDepth = 4;
  auto interp = runMiniPy(
      "def f(n):\n"
      "    return f(n - 1)\n"
      "f(100)\n",
      config);
  CHECK(interp->counters.callDescends == 4);
}

TEST_CASE("symbolic while condition unrolls exactly loopUnrollBound times") {
  auto interp = runMiniPy(
      "c = u()\n"
      "x = 0\n"
      "while c:\n"
      "    x = x + 1\n");
  CHECK(interp->counters.loopIterations == 3);
}

TEST_CASE("loop bound is configurable") {
  AnalysisConfig config;
  config.loopUnrollBound = 5;
  auto interp = runMiniPy(
      "c = u()\n"
      "x = 0\n"
      "while c:\n"
      "    x = x + 1\n",
      config);
  CHECK(interp->counters.loopIterations == 5);
}

TEST_CASE("concrete while loop executes to its exit condition") {
  auto interp = runMiniPy(
      "i = 0\n"
      "while i < 2:\n"
      "    i = i + 1\n");
  ValuePtr i = interp->globalScope()->vars.at("i");
  CHECK(i->asNumber() == 2.0);
}

TEST_CASE("merge cap degrades to a tainted union Sym") {
  AnalysisConfig config;
  config.pathMergeCap = 1;
  auto interp = runMiniPy(
      "a = u0()\n"
      "b = u1()\n"
      "c = u2()\n"
      "x = \"0\"\n"
      "if a:\n"
      "    x = source()\n"
      "if b:\n"
      "    x = \"2\"\n"
      "if c:\n"
      "    x = \"3\"\n",
      config);
  ValuePtr x = interp->globalScope()->vars.at("x");
  bool degraded = false;
  for (const auto& leaf : phiLeaves(x))
    if (leaf.value->tag == ValueTag::Sym && leaf.value->taint.tainted())
      degraded = true;
  CHECK(degraded);
}

TEST_CASE("unresolved identifiers memoize to a stable Sym") {
  auto interp = runMiniPy(
      "x = mystery\n"
      "y = mystery\n");
  CHECK(interp->globalScope()->vars.at("x") == interp->globalScope()->vars.at("y"));
}

TEST_CASE("field reads off a Sym receiver are memoized") {
  auto interp = runMiniPy("x = 0\n");
  ValuePtr sym = makeSym("o");
  ValuePtr a = interp->readField(sym, "f", {});
  ValuePtr b = interp->readField(sym, "f", {});
  CHECK(a == b);
  CHECK(a != interp->readField(sym, "g", {}));
}

TEST_CASE("context sensitivity: per-call-site argument binding") {
  auto interp = runMiniPy(
      "def f(a):\n"
      "    exec(a)\n"
      "f(\"ls\")\n"
      "f(source())\n");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].ruleId == "cmd-exec");
}

TEST_CASE("field sensitivity: sibling fields stay independent") {
  auto interp = runMiniPy(
      "class Box:\n"
      "    pass\n"
      "b = Box()\n"
      "b.f = source()\n"
      "b.g = \"ok\"\n"
      "exec(b.g)\n"
      "exec(b.f)\n");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].sinkLoc.startLine == 7);
}

TEST_CASE("aliased objects share field updates") {
  auto interp = runMiniPy(
      "class Box:\n"
      "    pass\n"
      "b = Box()\n"
      "p = b\n"
      "b.f = source()\n"
      "exec(p.f)\n");
  CHECK(interp->findings.size() == 1);
}

TEST_CASE("returns from both arms fold into one Phi") {
  auto interp = runMiniPy(
      "def f(c):\n"
      "    if c:\n"
      "        return 1\n"
      "    return 2\n"
      "x = f(u())\n");
  std::set<long long> vals;
  REQUIRE(oracle::abstractValueSet(interp->globalScope()->vars.at("x"), vals));
  CHECK(vals == std::set<long long>{1, 2});
}

TEST_CASE("break exits a concrete loop early") {
  auto interp = runMiniPy(
      "i = 0\n"
      "while i < 3:\n"
      "    break\n");
  ValuePtr i = interp->globalScope()->vars.at("i");
  CHECK(i->asNumber() == 0.0);
}

TEST_CASE("range statement iterates concrete arrays elementwise") {
  auto interp = runMiniPy(
      "total = 0\n"
      "for v in [1, 2, 3]:\n"
      "    total = total + v\n");
  CHECK(interp->globalScope()->vars.at("total")->asNumber() == 6.0);
}

TEST_CASE("oracle equivalence on 200 random branching programs") {
  AnalysisConfig config;
  config.pathMergeCap = 64;  // keep every leaf representable for comparison
  oracle::ProgramGen gen(20240817);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    oracle::RandomProgram prog = gen.next();
    CAPTURE(prog.source);
    NodePtr tree = parseToUast(prog.source, "minipy", "rand.mpy");
    auto expected = oracle::enumeratePaths(tree, prog.branchVars);

    Interpreter interp(config, defaultRuleset());
    interp.runModule(tree);
    for (const auto& [name, want] : expected) {
      std::set<long long> got;
      bool ok = oracle::abstractValueSet(interp.globalScope()->vars.at(name), got);
      if (!ok || got != want) {
        ++mismatches;
        CHECK_MESSAGE(false, "variable ", name, " diverged in:\n", prog.source);
      }
    }
  }
  CHECK(mismatches == 0);
}
