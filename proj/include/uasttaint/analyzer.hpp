#pragma once

#include <map>
#include <string>
#include <vector>

#include "uasttaint/framework.hpp"
#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"

namespace uast {

struct AnalyzerOptions {
  std::string lang = "auto";       // "minipy" | "minijs" | "auto" (by extension)
  std::string framework = "auto";  // "miniflask" | "miniexpress" | "auto"
  int jobs = 0;                    // 0 = one per entry point (hardware-capped)
  bool emitUast = false;           // write lowered trees under <root>/.uast/
};

struct FileFinding {
  std::string file;  // path relative to the analysis root
  Finding finding;
};

struct RunReport {
  std::vector<FileFinding> findings;  // ordered by (file, sink line, rule id)
  std::vector<EngineWarning> warnings;
  std::vector<std::string> fileErrors;  // parse/validation failures, skipped
  int fileCount = 0;
  long long locCount = 0;  // non-blank source lines
  long long elapsedMs = 0;
  AnalysisConfig config;
  std::map<std::string, std::vector<std::string>> fileLines;  // for excerpts
};

// Read maxCallDepth/loopUnrollBound/pathMergeCap/handlersEnabled from a JSON
// config file; missing keys keep the passed-in defaults.
AnalysisConfig loadConfigFile(const std::string& path, AnalysisConfig base);

// Analyze every .mpy / .mjs.txt / .uast.json under root (or a single file).
RunReport runAnalysis(const std::string& root, const AnalysisConfig& config,
                      const Ruleset& ruleset, const AnalyzerOptions& options = {});

}  // namespace uast
