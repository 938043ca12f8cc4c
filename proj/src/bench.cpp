#include "uasttaint/bench.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "uasttaint/analyzer.hpp"

namespace fs = std::filesystem;

namespace uast {

namespace {

BenchCase parseManifest(const fs::path& dir, const std::string& fallbackRules) {
  fs::path manifest = dir / "case.json";
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw BenchError("missing case.json in " + dir.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw BenchError(manifest.string() + ": " + e.what());
  }

  auto str = [&](const char* field) -> std::string {
    if (!doc.contains(field) || !doc[field].is_string())
      throw BenchError(manifest.string() + ": missing string field '" +
                       std::string(field) + "'");
    return doc[field].get<std::string>();
  };

  BenchCase c;
  c.caseId = str("caseId");
  c.dir = dir.string();
  c.category = str("category");
  if (c.category != "soundness" && c.category != "completeness")
    throw BenchError(manifest.string() + ": category must be soundness|completeness");
  c.dimension = str("dimension");
  c.polarity = str("polarity");
  if (c.polarity != "positive" && c.polarity != "negative")
    throw BenchError(manifest.string() + ": polarity must be positive|negative");
  if (!doc.contains("requiresHandlers") || !doc["requiresHandlers"].is_boolean())
    throw BenchError(manifest.string() + ": missing boolean 'requiresHandlers'");
  c.requiresHandlers = doc["requiresHandlers"].get<bool>();
  if (!doc.contains("expected") || !doc["expected"].is_array())
    throw BenchError(manifest.string() + ": missing 'expected' array");
  for (const auto& e : doc["expected"]) {
    if (!e.is_object() || !e.contains("ruleId") || !e.contains("sinkLine") ||
        !e["ruleId"].is_string() || !e["sinkLine"].is_number_integer())
      throw BenchError(manifest.string() +
                       ": expected entries need string ruleId and integer sinkLine");
    c.expected.push_back({e["ruleId"].get<std::string>(), e["sinkLine"].get<int>()});
  }
  std::sort(c.expected.begin(), c.expected.end());

  if (c.polarity == "positive" && c.expected.empty())
    throw BenchError(manifest.string() + ": positive case with empty expected");
  if (c.polarity == "negative" && !c.expected.empty())
    throw BenchError(manifest.string() + ": negative case with non-empty expected");

  fs::path ownRules = dir / "rules.json";
  c.rulesFile = fs::exists(ownRules) ? ownRules.string() : fallbackRules;
  if (c.rulesFile.empty())
    throw BenchError(manifest.string() + ": no rules.json for case or suite");
  return c;
}

}  // namespace

std::vector<BenchCase> loadCases(const std::string& benchRoot) {
  fs::path root(benchRoot);
  if (!fs::is_directory(root))
    throw BenchError("bench root is not a directory: " + benchRoot);

  std::string suiteRules;
  if (fs::exists(root / "rules.json")) suiteRules = (root / "rules.json").string();

  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "case.json"))
      dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());

  std::vector<BenchCase> cases;
  std::map<std::string, std::string> seen;  // caseId -> dir
  for (const auto& d : dirs) {
    BenchCase c = parseManifest(d, suiteRules);
    auto [it, inserted] = seen.emplace(c.caseId, c.dir);
    if (!inserted)
      throw BenchError("duplicate caseId '" + c.caseId + "' in " + it->second +
                       " and " + c.dir);
    cases.push_back(std::move(c));
  }

  // Every positive case needs a sibling negative case in its dimension.
  std::set<std::string> negativeDims;
  for (const auto& c : cases)
    if (c.polarity == "negative") negativeDims.insert(c.dimension);
  for (const auto& c : cases)
    if (c.polarity == "positive" && !negativeDims.count(c.dimension))
      throw BenchError("positive case '" + c.caseId +
                       "' has no negative sibling for dimension '" + c.dimension +
                       "'");
  return cases;
}

Scoreboard runSuite(const std::vector<BenchCase>& cases, AnalysisConfig config) {
  Scoreboard board;
  board.mode = config.handlersEnabled ? "full" : "agnostic-only";
  for (const auto& c : cases) {
    Ruleset rules = loadRuleset(c.rulesFile);
    RunReport report = runAnalysis(c.dir, config, rules);

    CaseResult r;
    r.caseId = c.caseId;
    r.category = c.category;
    r.dimension = c.dimension;
    r.expected = c.expected;
    std::set<ExpectedFinding> actual;
    for (const auto& ff : report.findings)
      actual.insert({ff.finding.ruleId, ff.finding.sinkLoc.startLine});
    r.actual.assign(actual.begin(), actual.end());
    r.passed = r.actual == r.expected && report.fileErrors.empty();

    board.total++;
    board.byDimension[c.dimension].second++;
    board.byCategory[c.category].second++;
    if (r.passed) {
      board.passes++;
      board.byDimension[c.dimension].first++;
      board.byCategory[c.category].first++;
    }
    board.results.push_back(std::move(r));
  }
  return board;
}

AblationResult runAblation(const std::vector<BenchCase>& cases,
                           AnalysisConfig config) {
  AblationResult out;
  AnalysisConfig full = config;
  full.handlersEnabled = true;
  AnalysisConfig agnostic = config;
  agnostic.handlersEnabled = false;
  out.full = runSuite(cases, full);
  out.agnostic = runSuite(cases, agnostic);

  std::map<std::string, bool> needsHandlers;
  for (const auto& c : cases) needsHandlers[c.caseId] = c.requiresHandlers;

  out.monotone = true;
  out.changedAllRequireHandlers = true;
  for (std::size_t i = 0; i < out.full.results.size(); ++i) {
    const auto& f = out.full.results[i];
    const auto& a = out.agnostic.results[i];
    if (f.passed == a.passed) continue;
    out.changed.push_back(f.caseId);
    if (a.passed && !f.passed) out.monotone = false;  // full lost a case
    if (!needsHandlers[f.caseId]) out.changedAllRequireHandlers = false;
  }
  if (out.full.passes < out.agnostic.passes) out.monotone = false;
  return out;
}

std::string scoreboardText(const Scoreboard& board) {
  std::ostringstream out;
  out << "mode: " << board.mode << "\n";
  out << "passes: " << board.passes << "/" << board.total << "\n";
  out << "by category:\n";
  for (const auto& [name, pt] : board.byCategory)
    out << "  " << name << ": " << pt.first << "/" << pt.second << "\n";
  out << "by dimension:\n";
  for (const auto& [name, pt] : board.byDimension)
    out << "  " << name << ": " << pt.first << "/" << pt.second << "\n";
  for (const auto& r : board.results) {
    if (r.passed) continue;
    out << "FAIL " << r.caseId << " (" << r.category << "/" << r.dimension
        << "): expected {";
    for (const auto& e : r.expected) out << " " << e.ruleId << "@" << e.sinkLine;
    out << " } got {";
    for (const auto& e : r.actual) out << " " << e.ruleId << "@" << e.sinkLine;
    out << " }\n";
  }
  return out.str();
}

namespace {

nlohmann::json boardJson(const Scoreboard& board) {
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [name, pt] : board.byDimension)
    dims[name] = {{"passes", pt.first}, {"total", pt.second}};
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [name, pt] : board.byCategory)
    cats[name] = {{"passes", pt.first}, {"total", pt.second}};
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : board.results) {
    nlohmann::json exp = nlohmann::json::array();
    for (const auto& e : r.expected) exp.push_back({{"ruleId", e.ruleId},
                                                    {"sinkLine", e.sinkLine}});
    nlohmann::json act = nlohmann::json::array();
    for (const auto& e : r.actual) act.push_back({{"ruleId", e.ruleId},
                                                  {"sinkLine", e.sinkLine}});
    results.push_back({{"caseId", r.caseId},
                       {"category", r.category},
                       {"dimension", r.dimension},
                       {"passed", r.passed},
                       {"expected", std::move(exp)},
                       {"actual", std::move(act)}});
  }
  return {{"mode", board.mode},
          {"passes", board.passes},
          {"total", board.total},
          {"byCategory", std::move(cats)},
          {"byDimension", std::move(dims)},
          {"results", std::move(results)}};
}

}  // namespace

std::string scoreboardJson(const Scoreboard& board) {
  return boardJson(board).dump(2) + "\n";
}

std::string ablationJson(const AblationResult& result) {
  nlohmann::json doc = {{"full", boardJson(result.full)},
                        {"agnosticOnly", boardJson(result.agnostic)},
                        {"changed", result.changed},
                        {"monotone", result.monotone},
                        {"changedAllRequireHandlers",
                         result.changedAllRequireHandlers}};
  return doc.dump(2) + "\n";
}

}  // namespace uast
