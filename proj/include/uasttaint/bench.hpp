#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"

namespace uast {

struct BenchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExpectedFinding {
  std::string ruleId;
  int sinkLine = 0;
  auto operator<=>(const ExpectedFinding&) const = default;
};

struct BenchCase {
  std::string caseId;
  std::string dir;
  std::string category;   // "soundness" | "completeness"
  std::string dimension;  // feature tag or sensitivity tag
  std::string polarity;   // "positive" | "negative"
  bool requiresHandlers = false;
  std::vector<ExpectedFinding> expected;
  std::string rulesFile;  // per-case rules.json, else the suite-level one
};

struct CaseResult {
  std::string caseId;
  std::string category;
  std::string dimension;
  bool passed = false;
  std::vector<ExpectedFinding> expected;
  std::vector<ExpectedFinding> actual;
};

struct Scoreboard {
  std::string mode;  // "full" | "agnostic-only"
  int passes = 0;
  int total = 0;
  std::map<std::string, std::pair<int, int>> byDimension;  // passes/total
  std::map<std::string, std::pair<int, int>> byCategory;
  std::vector<CaseResult> results;
};

struct AblationResult {
  Scoreboard full;
  Scoreboard agnostic;
  std::vector<std::string> changed;  // caseIds whose outcome differs
  bool monotone = false;             // full passes >= agnostic passes, no losses
  bool changedAllRequireHandlers = false;
};

// Loads every direct subdirectory of benchRoot holding a case.json manifest.
// Malformed manifests and duplicate caseIds abort with the offending paths.
std::vector<BenchCase> loadCases(const std::string& benchRoot);

// Exact-match scoring on (ruleId, sinkLine) set equality per case.
Scoreboard runSuite(const std::vector<BenchCase>& cases, AnalysisConfig config);

AblationResult runAblation(const std::vector<BenchCase>& cases,
                           AnalysisConfig config);

std::string scoreboardText(const Scoreboard& board);
std::string scoreboardJson(const Scoreboard& board);
std::string ablationJson(const AblationResult& result);

}  // namespace uast
