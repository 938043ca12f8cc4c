#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uast {

struct RulesetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dotted qualified-name pattern; `*` is allowed as the last segment only
// ("db.*" matches "db.query" but not "db.raw.query").
bool patternMatches(const std::string& pattern, const std::string& qualifiedName);

struct SourceRule {
  std::string id;
  std::string kind;  // "call" | "param"
  std::string pattern;
};

struct SinkRule {
  std::string id;
  std::string pattern;
  std::vector<int> taintedArgs;
};

struct SanitizerRule {
  std::string id;
  std::string pattern;
};

struct Ruleset {
  std::vector<SourceRule> sources;
  std::vector<SinkRule> sinks;
  std::vector<SanitizerRule> sanitizers;

  const SourceRule* matchCallSource(const std::string& name) const;
  const SinkRule* matchSink(const std::string& name) const;
  const SanitizerRule* matchSanitizer(const std::string& name) const;
};

Ruleset parseRuleset(const std::string& jsonText);
Ruleset loadRuleset(const std::string& path);
Ruleset defaultRuleset();

}  // namespace uast
