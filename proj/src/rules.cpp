#include "uasttaint/rules.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace uast {

bool patternMatches(const std::string& pattern, const std::string& qualifiedName) {
  if (pattern == qualifiedName) return true;
  if (pattern.size() >= 2 && pattern.compare(pattern.size() - 2, 2, ".*") == 0) {
    std::string prefix = pattern.substr(0, pattern.size() - 1);  // keep the dot
    if (qualifiedName.size() <= prefix.size()) return false;
    if (qualifiedName.compare(0, prefix.size(), prefix) != 0) return false;
    // Last segment only: no further dots after the prefix.
    return qualifiedName.find('.', prefix.size()) == std::string::npos;
  }
  if (pattern == "*") return qualifiedName.find('.') == std::string::npos;
  return false;
}

const SourceRule* Ruleset::matchCallSource(const std::string& name) const {
  for (const auto& r : sources)
    if (r.kind == "call" && patternMatches(r.pattern, name)) return &r;
  return nullptr;
}

const SinkRule* Ruleset::matchSink(const std::string& name) const {
  for (const auto& r : sinks)
    if (patternMatches(r.pattern, name)) return &r;
  return nullptr;
}

const SanitizerRule* Ruleset::matchSanitizer(const std::string& name) const {
  for (const auto& r : sanitizers)
    if (patternMatches(r.pattern, name)) return &r;
  return nullptr;
}

namespace {

void checkPattern(const std::string& pattern, const std::string& where) {
  if (pattern.empty()) throw RulesetError(where + ": empty pattern");
  auto star = pattern.find('*');
  if (star != std::string::npos) {
    bool lastSegment = (star == pattern.size() - 1) &&
                       (star == 0 || pattern[star - 1] == '.');
    if (!lastSegment)
      throw RulesetError(where + ": '*' is only allowed as the last segment");
  }
}

std::string requireString(const nlohmann::json& obj, const char* field,
                          const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_string())
    throw RulesetError(where + ": missing string field '" + field + "'");
  return obj[field].get<std::string>();
}

}  // namespace

Ruleset parseRuleset(const std::string& jsonText) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(jsonText);
  } catch (const nlohmann::json::parse_error& e) {
    throw RulesetError(std::string("rules: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw RulesetError("rules: top level must be an object");

  Ruleset rs;
  for (const auto& s : doc.value("sources", nlohmann::json::array())) {
    SourceRule r;
    r.id = requireString(s, "id", "sources");
    r.kind = requireString(s, "kind", "source '" + r.id + "'");
    if (r.kind != "call" && r.kind != "param")
      throw RulesetError("source '" + r.id + "': kind must be 'call' or 'param'");
    r.pattern = requireString(s, "pattern", "source '" + r.id + "'");
    checkPattern(r.pattern, "source '" + r.id + "'");
    rs.sources.push_back(std::move(r));
  }
  for (const auto& s : doc.value("sinks", nlohmann::json::array())) {
    SinkRule r;
    r.id = requireString(s, "id", "sinks");
    r.pattern = requireString(s, "pattern", "sink '" + r.id + "'");
    checkPattern(r.pattern, "sink '" + r.id + "'");
    if (!s.contains("taintedArgs") || !s["taintedArgs"].is_array())
      throw RulesetError("sink '" + r.id + "': missing taintedArgs array");
    for (const auto& a : s["taintedArgs"]) {
      if (!a.is_number_integer() || a.get<int>() < 0)
        throw RulesetError("sink '" + r.id + "': taintedArgs must be non-negative ints");
      r.taintedArgs.push_back(a.get<int>());
    }
    rs.sinks.push_back(std::move(r));
  }
  for (const auto& s : doc.value("sanitizers", nlohmann::json::array())) {
    SanitizerRule r;
    r.id = requireString(s, "id", "sanitizers");
    r.pattern = requireString(s, "pattern", "sanitizer '" + r.id + "'");
    checkPattern(r.pattern, "sanitizer '" + r.id + "'");
    rs.sanitizers.push_back(std::move(r));
  }
  return rs;
}

Ruleset loadRuleset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RulesetError("cannot open rules file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseRuleset(buf.str());
}

Ruleset defaultRuleset() {
  static const char* kDefault = R"({
    "sources": [{"id": "user-input", "kind": "call", "pattern": "source"}],
    "sinks": [{"id": "cmd-exec", "pattern": "exec", "taintedArgs": [0]},
              {"id": "sql-query", "pattern": "db.query", "taintedArgs": [0]}],
    "sanitizers": [{"id": "escape", "pattern": "sanitize"}]
  })";
  return parseRuleset(kDefault);
}

}  // namespace uast
