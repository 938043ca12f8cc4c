#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uasttaint/framework.hpp"
#include "uasttaint/frontend.hpp"
#include "uasttaint/rules.hpp"

using namespace uast;

namespace {

std::vector<Finding> analyzeEntries(const std::string& src, const std::string& lang,
                                    const std::string& framework = "auto") {
  NodePtr tree = parseToUast(src, lang, "t." + lang);
  Ruleset rules = defaultRuleset();
  std::vector<Finding> findings;
  for (const EntryPoint& ep : discoverEntrypoints(tree, framework, rules)) {
    Interpreter interp(AnalysisConfig{}, rules);
    seedGlobals(interp, ep);
    interp.runModule(tree);
    runEntry(interp, ep);
    for (auto& f : interp.findings) findings.push_back(std::move(f));
  }
  return findings;
}

}  // namespace

TEST_CASE("framework detection is import-based") {
  CHECK(detectFramework(parseToUast("import flaskish\n", "minipy", "t")) ==
        "miniflask");
  CHECK(detectFramework(parseToUast("const e = require(\"expressish\");\n",
                                    "minijs", "t")) == "miniexpress");
  CHECK(detectFramework(parseToUast("import os\n", "minipy", "t")).empty());
  CHECK(detectFramework(parseToUast("let x = 1;\n", "minijs", "t")).empty());
}

TEST_CASE("miniflask: decorated routes become entry points with seeded params") {
  const char* src =
      "import flaskish\n"
      "app = flaskish.Flask(\"app\")\n"
      "@app.route(\"/user\")\n"
      "def show(name):\n"
      "    exec(name)\n";
  NodePtr tree = parseToUast(src, "minipy", "t.mpy");
  auto entries = discoverEntrypoints(tree, "auto", defaultRuleset());
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].framework == "miniflask");
  CHECK(entries[0].route == "/user");
  // Handler params plus the three seeded request fields.
  REQUIRE(entries[0].seededParams.size() == 4);
  CHECK(entries[0].seededParams[0].first == "name");
  CHECK(entries[0].seededParams[0].second == "http-param");

  auto findings = analyzeEntries(src, "minipy");
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].sinkLoc.startLine == 5);
}

TEST_CASE("miniflask: request global fields are tainted") {
  const char* src =
      "import flaskish\n"
      "app = flaskish.Flask(\"app\")\n"
      "@app.route(\"/q\")\n"
      "def q():\n"
      "    exec(request.args[\"q\"])\n"
      "    exec(request.form[\"f\"])\n"
      "    exec(request.json[\"j\"])\n";
  auto findings = analyzeEntries(src, "minipy");
  CHECK(findings.size() == 3);
}

TEST_CASE("miniflask: sanitized handler stays clean") {
  const char* src =
      "import flaskish\n"
      "app = flaskish.Flask(\"app\")\n"
      "@app.route(\"/u\")\n"
      "def u(name):\n"
      "    exec(sanitize(name))\n";
  CHECK(analyzeEntries(src, "minipy").empty());
}

TEST_CASE("miniexpress: get/post callbacks become entry points") {
  const char* src =
      "const express = require(\"expressish\");\n"
      "const app = express();\n"
      "app.get(\"/a\", function(req, res) { exec(req.query.q); });\n"
      "app.post(\"/b\", function(req, res) { exec(req.body.v); });\n";
  NodePtr tree = parseToUast(src, "minijs", "t.js");
  auto entries = discoverEntrypoints(tree, "auto", defaultRuleset());
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].route == "/a");
  CHECK(entries[1].route == "/b");

  auto findings = analyzeEntries(src, "minijs");
  CHECK(findings.size() == 2);
}

TEST_CASE("miniexpress: named callback functions are resolved") {
  const char* src =
      "const express = require(\"expressish\");\n"
      "const app = express();\n"
      "function handler(req, res) { exec(req.params.id); }\n"
      "app.get(\"/u\", handler);\n";
  auto findings = analyzeEntries(src, "minijs");
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].sinkLoc.startLine == 3);
}

TEST_CASE("miniexpress: response-only handlers are clean") {
  const char* src =
      "const express = require(\"expressish\");\n"
      "const app = express();\n"
      "app.get(\"/ok\", function(req, res) { exec(\"ls\"); });\n";
  CHECK(analyzeEntries(src, "minijs").empty());
}

TEST_CASE("non-literal routes surface as <dynamic>") {
  const char* src =
      "const express = require(\"expressish\");\n"
      "const app = express();\n"
      "let path = \"/x\";\n"
      "app.get(path, function(req, res) { exec(req.query.q); });\n";
  NodePtr tree = parseToUast(src, "minijs", "t.js");
  auto entries = discoverEntrypoints(tree, "auto", defaultRuleset());
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].route == "<dynamic>");
}

TEST_CASE("param-kind source rules mark custom entry points") {
  Ruleset rules = parseRuleset(R"({
    "sources": [{"id": "rpc-input", "kind": "param", "pattern": "handle_rpc.*"}],
    "sinks": [{"id": "cmd-exec", "pattern": "exec", "taintedArgs": [0]}],
    "sanitizers": []
  })");
  const char* src =
      "def handle_rpc(payload):\n"
      "    exec(payload)\n"
      "def helper(payload):\n"
      "    exec(payload)\n";
  NodePtr tree = parseToUast(src, "minipy", "t.mpy");
  auto entries = discoverEntrypoints(tree, "auto", rules);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].framework == "custom");

  Interpreter interp(AnalysisConfig{}, rules);
  seedGlobals(interp, entries[0]);
  interp.runModule(tree);
  runEntry(interp, entries[0]);
  REQUIRE(interp.findings.size() == 1);
  CHECK(interp.findings[0].sinkLoc.startLine == 2);
  CHECK(interp.findings[0].ruleId == "cmd-exec");
}

TEST_CASE("framework override suppresses mismatched discovery") {
  const char* src =
      "import flaskish\n"
      "app = flaskish.Flask(\"app\")\n"
      "@app.route(\"/u\")\n"
      "def u(name):\n"
      "    exec(name)\n";
  NodePtr tree = parseToUast(src, "minipy", "t.mpy");
  auto entries = discoverEntrypoints(tree, "miniexpress", defaultRuleset());
  CHECK(entries.empty());
}

TEST_CASE("plain modules yield no entry points") {
  NodePtr tree = parseToUast("x = 1\nexec(x)\n", "minipy", "t.mpy");
  CHECK(discoverEntrypoints(tree, "auto", defaultRuleset()).empty());
}
