#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "uasttaint/bench.hpp"

namespace fs = std::filesystem;
using namespace uast;

namespace {

fs::path freshDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void writeFile(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
}

const char* kRules = R"({
  "sources": [{"id": "user-input", "kind": "call", "pattern": "source"}],
  "sinks": [{"id": "cmd-exec", "pattern": "exec", "taintedArgs": [0]}],
  "sanitizers": []
})";

void writeCase(const fs::path& root, const std::string& id,
               const std::string& polarity, const std::string& src,
               const std::string& expected, const std::string& dimension = "flow",
               bool requiresHandlers = false) {
  fs::path dir = root / id;
  writeFile(dir / "case.json",
            "{\"caseId\":\"" + id +
                "\",\"category\":\"completeness\",\"dimension\":\"" + dimension +
                "\",\"polarity\":\"" + polarity + "\",\"requiresHandlers\":" +
                (requiresHandlers ? "true" : "false") + ",\"expected\":[" +
                expected + "]}");
  writeFile(dir / "src.mpy", src);
}

}  // namespace

TEST_CASE("the shipped corpus loads, is large enough, and scores 100%") {
  auto cases = loadCases(BENCH_DIR);
  CHECK(cases.size() >= 48);

  int completeness = 0, soundness = 0;
  std::map<std::string, int> byDim;
  for (const auto& c : cases) {
    (c.category == "completeness" ? completeness : soundness)++;
    if (c.category == "completeness") byDim[c.dimension]++;
  }
  CHECK(soundness >= 16);
  for (const char* dim : {"context", "field", "path", "flow"})
    CHECK(byDim[dim] >= 12);

  Scoreboard board = runSuite(cases, AnalysisConfig{});
  for (const auto& r : board.results) {
    CAPTURE(r.caseId);
    CHECK(r.passed);
  }
  CHECK(board.passes == board.total);
}

TEST_CASE("ablation delta is exactly the requiresHandlers cases") {
  auto cases = loadCases(BENCH_DIR);
  AblationResult result = runAblation(cases, AnalysisConfig{});
  CHECK(result.full.passes == result.full.total);
  CHECK(result.agnostic.passes < result.full.passes);
  CHECK(result.monotone);
  CHECK(result.changedAllRequireHandlers);

  std::set<std::string> tagged;
  for (const auto& c : cases)
    if (c.requiresHandlers) tagged.insert(c.caseId);
  std::set<std::string> changed(result.changed.begin(), result.changed.end());
  CHECK(changed == tagged);
}

TEST_CASE("well-formed corpus of N dirs loads N cases") {
  fs::path root = freshDir("bench-ok");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "a-pos", "positive", "x = source()\nexec(x)\n",
            R"({"ruleId":"cmd-exec","sinkLine":2})");
  writeCase(root, "b-neg", "negative", "x = 1\nexec(x)\n", "");
  auto cases = loadCases(root.string());
  CHECK(cases.size() == 2);
  Scoreboard board = runSuite(cases, AnalysisConfig{});
  CHECK(board.passes == 2);
}

TEST_CASE("positive case with empty expected is a manifest error") {
  fs::path root = freshDir("bench-badpos");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "a-pos", "positive", "x = 1\n", "");
  CHECK_THROWS_AS((void)loadCases(root.string()), BenchError);
}

TEST_CASE("negative case with expected findings is a manifest error") {
  fs::path root = freshDir("bench-badneg");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "a-neg", "negative", "x = 1\n",
            R"({"ruleId":"cmd-exec","sinkLine":1})");
  CHECK_THROWS_AS((void)loadCases(root.string()), BenchError);
}

TEST_CASE("duplicate caseIds name both offending directories") {
  fs::path root = freshDir("bench-dup");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "dir-one", "negative", "x = 1\n", "");
  writeCase(root, "dir-two", "negative", "x = 1\n", "");
  // Same caseId in both dirs:
  writeFile(root / "dir-two" / "case.json",
            R"({"caseId":"dir-one","category":"completeness","dimension":"flow",
                "polarity":"negative","requiresHandlers":false,"expected":[]})");
  try {
    loadCases(root.string());
    FAIL("expected BenchError");
  } catch (const BenchError& e) {
    std::string msg = e.what();
    CHECK(msg.find("dir-one") != std::string::npos);
    CHECK(msg.find("dir-two") != std::string::npos);
  }
}

TEST_CASE("positives without a negative sibling dimension are rejected") {
  fs::path root = freshDir("bench-nosibling");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "a-pos", "positive", "x = source()\nexec(x)\n",
            R"({"ruleId":"cmd-exec","sinkLine":2})", "lonely");
  CHECK_THROWS_AS((void)loadCases(root.string()), BenchError);
}

TEST_CASE("malformed manifests abort with the offending path") {
  fs::path root = freshDir("bench-malformed");
  writeFile(root / "rules.json", kRules);
  writeFile(root / "broken" / "case.json", "{not json");
  try {
    loadCases(root.string());
    FAIL("expected BenchError");
  } catch (const BenchError& e) {
    CHECK(std::string(e.what()).find("broken") != std::string::npos);
  }
}

TEST_CASE("flipping one expected sink line fails only that case") {
  fs::path root = freshDir("bench-flip");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "a-pos", "positive", "x = source()\nexec(x)\n",
            R"({"ruleId":"cmd-exec","sinkLine":2})");
  writeCase(root, "b-pos", "positive", "x = source()\nexec(x)\n",
            R"({"ruleId":"cmd-exec","sinkLine":3})");  // deliberately wrong
  writeCase(root, "c-neg", "negative", "x = 1\nexec(x)\n", "");
  Scoreboard board = runSuite(loadCases(root.string()), AnalysisConfig{});
  CHECK(board.passes == 2);
  for (const auto& r : board.results)
    CHECK(r.passed == (r.caseId != "b-pos"));
}

TEST_CASE("loop-bound regressions localize to bound-sensitive cases") {
  fs::path root = freshDir("bench-loopbound");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "relay-pos", "positive",
            "x = \"ok\"\ny = \"ok\"\ni = 0\nwhile i < 2:\n"
            "    y = x\n    x = source()\n    i = i + 1\nexec(y)\n",
            R"({"ruleId":"cmd-exec","sinkLine":8})");
  writeCase(root, "direct-pos", "positive", "x = source()\nexec(x)\n",
            R"({"ruleId":"cmd-exec","sinkLine":2})");
  writeCase(root, "plain-neg", "negative", "x = 1\nexec(x)\n", "");

  auto cases = loadCases(root.string());
  AnalysisConfig tight;
  tight.loopUnrollBound = 1;
  Scoreboard board = runSuite(cases, tight);
  CHECK(board.passes == 2);
  for (const auto& r : board.results)
    CHECK(r.passed == (r.caseId != "relay-pos"));
  CHECK(runSuite(cases, AnalysisConfig{}).passes == 3);
}

TEST_CASE("per-case rules.json overrides the suite ruleset") {
  fs::path root = freshDir("bench-caserules");
  writeFile(root / "rules.json", kRules);
  writeCase(root, "xss-pos", "positive", "t = fetch()\nrender(t)\n",
            R"({"ruleId":"xss","sinkLine":2})");
  writeFile(root / "xss-pos" / "rules.json", R"({
    "sources": [{"id": "net", "kind": "call", "pattern": "fetch"}],
    "sinks": [{"id": "xss", "pattern": "render", "taintedArgs": [0]}],
    "sanitizers": []
  })");
  writeCase(root, "plain-neg", "negative", "x = 1\n", "");
  Scoreboard board = runSuite(loadCases(root.string()), AnalysisConfig{});
  CHECK(board.passes == 2);
}

TEST_CASE("scoreboard serializations carry the per-dimension tallies") {
  auto cases = loadCases(BENCH_DIR);
  Scoreboard board = runSuite(cases, AnalysisConfig{});
  auto doc = nlohmann::json::parse(scoreboardJson(board));
  CHECK(doc["mode"] == "full");
  CHECK(doc["passes"] == board.passes);
  CHECK(doc["byDimension"].contains("path"));
  CHECK(doc["results"].size() == cases.size());

  std::string text = scoreboardText(board);
  CHECK(text.find("passes:") != std::string::npos);
  CHECK(text.find("path:") != std::string::npos);

  auto abl = nlohmann::json::parse(ablationJson(runAblation(cases, {})));
  CHECK(abl["monotone"] == true);
  CHECK(abl["changedAllRequireHandlers"] == true);
  CHECK(abl["agnosticOnly"]["mode"] == "agnostic-only");
}
