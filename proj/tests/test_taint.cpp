#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "uasttaint/frontend.hpp"
#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"

using namespace uast;

namespace {

std::unique_ptr<Interpreter> run(const std::string& src, const std::string& lang,
                                 Ruleset rules = defaultRuleset()) {
  auto interp = std::make_unique<Interpreter>(AnalysisConfig{}, std::move(rules));
  interp->runModule(parseToUast(src, lang, "t." + lang));
  return interp;
}

std::unique_ptr<Interpreter> runRawFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto interp = std::make_unique<Interpreter>(AnalysisConfig{}, defaultRuleset());
  interp->runModule(deserialize(buf.str()));
  return interp;
}

ValuePtr global(Interpreter& interp, const std::string& name) {
  return interp.globalScope()->vars.at(name);
}

bool tainted(Interpreter& interp, const std::string& name) {
  return effectiveTaint(global(interp, name), {}).tainted();
}

}  // namespace

// --- rule 1: assignment ---

TEST_CASE("assignment copies taint") {
  auto interp = run("y = source()\nx = y\n", "minipy");
  CHECK(tainted(*interp, "x"));
  CHECK(tainted(*interp, "y"));
}

TEST_CASE("reassignment from a literal is a strong update") {
  auto interp = run("x = source()\nx = 1\n", "minipy");
  CHECK(!tainted(*interp, "x"));
}

TEST_CASE("assignment from an untainted value stays untainted") {
  auto interp = run("y = \"ok\"\nx = y\n", "minipy");
  CHECK(!tainted(*interp, "x"));
}

// --- rule 2: fields ---

TEST_CASE("field read observes field taint") {
  auto interp = run(
      "let o = {};\no.f = source();\nlet x = o.f;\n", "minijs");
  CHECK(tainted(*interp, "x"));
}

TEST_CASE("sibling field stays clean") {
  auto interp = run(
      "let o = {};\no.f = source();\no.g = \"ok\";\nlet x = o.g;\n", "minijs");
  CHECK(!tainted(*interp, "x"));
}

TEST_CASE("container identity does not become tainted via a field") {
  auto interp = run(
      "let o = {};\no.f = source();\nexec(o.g);\n", "minijs");
  CHECK(interp->findings.empty());
}

// --- rule 3: calls ---

TEST_CASE("interpreted call propagates through param and return") {
  auto interp = run("def f(a):\n    return a\nz = f(source())\n", "minipy");
  CHECK(tainted(*interp, "z"));
}

TEST_CASE("return of a literal drops the argument's taint") {
  auto interp = run("def f(a):\n    return 1\nz = f(source())\n", "minipy");
  CHECK(!tainted(*interp, "z"));
}

TEST_CASE("unknown callee is conservatively tainting") {
  auto interp = run("z = g(source())\nw = g(\"ok\")\n", "minipy");
  CHECK(tainted(*interp, "z"));
  CHECK(!tainted(*interp, "w"));
}

// --- rule 4: prototypes (MiniJS) ---

TEST_CASE("prototype field taint reaches instances") {
  auto interp = run(
      "function F() {}\n"
      "F.prototype.f = source();\n"
      "let x = (new F()).f;\n",
      "minijs");
  CHECK(tainted(*interp, "x"));
  bool sawProtoStep = false;
  for (const auto& s : effectiveTaint(global(*interp, "x"), {}).trace)
    if (s.kind == TraceStep::Kind::Prototype) sawProtoStep = true;
  CHECK(sawProtoStep);
}

TEST_CASE("own field shadows a tainted prototype field") {
  auto interp = run(
      "function F() {}\n"
      "F.prototype.f = source();\n"
      "let o = new F();\n"
      "o.f = \"ok\";\n"
      "let x = o.f;\n",
      "minijs");
  CHECK(!tainted(*interp, "x"));
}

TEST_CASE("unrelated constructors are unaffected") {
  auto interp = run(
      "function F() {}\n"
      "function G() {}\n"
      "F.prototype.f = source();\n"
      "let x = (new G()).f;\n",
      "minijs");
  CHECK(!tainted(*interp, "x"));
}

// --- rule 5: promises (MiniJS) ---

TEST_CASE("awaiting a resolved tainted promise yields taint") {
  auto interp = run(
      "async function m() {\n"
      "  let p = Promise.resolve(source());\n"
      "  let v = await p;\n"
      "  exec(v);\n"
      "}\n"
      "m();\n",
      "minijs");
  CHECK(interp->findings.size() == 1);
}

TEST_CASE("then-result carries only the callback's return taint") {
  auto interp = run(
      "let p = Promise.resolve(source());\n"
      "let q = p.then(function(x) { exec(x); return \"ok\"; });\n"
      "async function m() { let v = await q; exec(v); }\n"
      "m();\n",
      "minijs");
  // The callback parameter was tainted (one finding inside), the awaited
  // then-result was not (no second finding).
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].sinkLoc.startLine == 2);
}

TEST_CASE("awaiting a clean promise is clean") {
  auto interp = run(
      "async function m() {\n"
      "  let v = await Promise.resolve(1);\n"
      "  exec(v);\n"
      "}\n"
      "m();\n",
      "minijs");
  CHECK(interp->findings.empty());
}

// --- rule 6: channels (raw UAST fixtures) ---

TEST_CASE("channel send then receive moves taint") {
  auto interp = runRawFile(std::string(BENCH_DIR) + "/channel-pos/src.uast.json");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].ruleId == "cmd-exec");
  bool sawChannelStep = false;
  for (const auto& s : interp->findings[0].trace)
    if (s.kind == TraceStep::Kind::Channel) sawChannelStep = true;
  CHECK(sawChannelStep);
}

TEST_CASE("channel forwarding transfers taint across channels") {
  auto interp =
      runRawFile(std::string(BENCH_DIR) + "/channel-fwd-pos/src.uast.json");
  REQUIRE(interp->findings.size() == 1);
  int channelSteps = 0;
  for (const auto& s : interp->findings[0].trace)
    if (s.kind == TraceStep::Kind::Channel) channelSteps++;
  CHECK(channelSteps >= 3);  // send, forward, receive
}

TEST_CASE("receive from a never-sent channel is an untainted Sym") {
  auto interp = runRawFile(std::string(BENCH_DIR) + "/channel-neg/src.uast.json");
  CHECK(interp->findings.empty());
  CHECK(!tainted(*interp, "v"));
  CHECK(global(*interp, "v")->tag == ValueTag::Sym);
}

// --- sinks, sanitizers, rulesets ---

TEST_CASE("sink call produces one finding with a source-to-sink trace") {
  auto interp = run("exec(source())\n", "minipy");
  REQUIRE(interp->findings.size() == 1);
  const Finding& f = interp->findings[0];
  CHECK(f.ruleId == "cmd-exec");
  REQUIRE(f.trace.size() >= 2);
  CHECK(f.trace.front().kind == TraceStep::Kind::Source);
  CHECK(f.trace.back().kind == TraceStep::Kind::Sink);
}

TEST_CASE("sanitizer is value-producing, not in-place") {
  auto interp = run("t = source()\ns = sanitize(t)\n", "minipy");
  CHECK(!tainted(*interp, "s"));
  CHECK(tainted(*interp, "t"));
}

TEST_CASE("sanitized sink argument yields no finding; raw one does") {
  auto clean = run("exec(sanitize(source()))\n", "minipy");
  CHECK(clean->findings.empty());
  auto dirty = run("exec(source())\n", "minipy");
  CHECK(dirty->findings.size() == 1);
}

TEST_CASE("sanitizing untainted input is a no-op") {
  auto interp = run("s = sanitize(\"ok\")\nexec(s)\n", "minipy");
  CHECK(interp->findings.empty());
}

TEST_CASE("dotted sink patterns match qualified callees") {
  auto interp = run("db.query(source())\n", "minipy");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].ruleId == "sql-query");
}

TEST_CASE("identical findings are deduplicated") {
  auto interp = run(
      "def f():\n    exec(t)\nt = source()\nf()\nf()\n", "minipy");
  CHECK(interp->findings.size() == 1);
}

TEST_CASE("no spontaneous taint without source rules") {
  Ruleset rules = parseRuleset(R"({
    "sources": [],
    "sinks": [{"id": "cmd-exec", "pattern": "exec", "taintedArgs": [0]}],
    "sanitizers": []
  })");
  auto interp = run(
      "x = source()\ny = g(x)\nexec(y)\nexec(x)\n", "minipy", rules);
  CHECK(interp->findings.empty());
}

TEST_CASE("binary expressions union operand taint") {
  auto interp = run("x = \"a\" + source()\ny = 1 + 2\n", "minipy");
  CHECK(tainted(*interp, "x"));
  CHECK(!tainted(*interp, "y"));
}

TEST_CASE("findings start at a source location in the analyzed file") {
  auto interp = run("t = source()\nexec(t)\n", "minipy");
  REQUIRE(interp->findings.size() == 1);
  CHECK(interp->findings[0].sourceLoc.startLine == 1);
  CHECK(interp->findings[0].sinkLoc.startLine == 2);
}

TEST_CASE("taintedArgs positions are respected") {
  Ruleset rules = parseRuleset(R"({
    "sources": [{"id": "user-input", "kind": "call", "pattern": "source"}],
    "sinks": [{"id": "second-arg", "pattern": "run", "taintedArgs": [1]}],
    "sanitizers": []
  })");
  auto hit = run("run(\"ok\", source())\n", "minipy", rules);
  CHECK(hit->findings.size() == 1);
  auto miss = run("run(source(), \"ok\")\n", "minipy", rules);
  CHECK(miss->findings.empty());
}

// --- ruleset parsing ---

TEST_CASE("pattern matching: exact, wildcard last segment, bare star") {
  CHECK(patternMatches("db.query", "db.query"));
  CHECK(!patternMatches("db.query", "db.queryx"));
  CHECK(patternMatches("db.*", "db.query"));
  CHECK(!patternMatches("db.*", "db.conn.query"));
  CHECK(patternMatches("*", "exec"));
  CHECK(!patternMatches("*", "db.query"));
}

TEST_CASE("malformed rulesets are rejected with context") {
  CHECK_THROWS_AS((void)parseRuleset("{bad"), RulesetError);
  CHECK_THROWS_AS((void)parseRuleset(R"({"sources":[{"id":"s"}]})"), RulesetError);
  CHECK_THROWS_AS(
      (void)parseRuleset(
          R"({"sources":[{"id":"s","kind":"call","pattern":"a.*.b"}]})"),
      RulesetError);
  CHECK_THROWS_AS(
      (void)parseRuleset(
          R"({"sinks":[{"id":"k","pattern":"p","taintedArgs":[-1]}]})"),
      RulesetError);
  CHECK_THROWS_AS(
      (void)parseRuleset(R"({"sources":[{"id":"s","kind":"env","pattern":"p"}]})"),
      RulesetError);
}
