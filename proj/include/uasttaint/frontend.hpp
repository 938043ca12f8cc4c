#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "uasttaint/uast.hpp"

namespace uast {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string file, int line, int col, const std::string& expected)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                           ": syntax error, expected " + expected),
        file(std::move(file)),
        line(line),
        col(col),
        expected(expected) {}
  std::string file;
  int line;
  int col;
  std::string expected;
};

// Pre-lowering parse tree. Kinds are per-language strings; the lowering pass
// consumes every kind through exactly one rule.
struct NativeAst;
using NativePtr = std::shared_ptr<NativeAst>;

struct NativeAst {
  std::string kind;
  SourceLocation loc;
  std::map<std::string, AttrValue> attrs;
  std::map<std::string, NativePtr> children;
  std::map<std::string, std::vector<NativePtr>> childLists;

  NativePtr childOrNull(const std::string& slot) const {
    auto it = children.find(slot);
    return it == children.end() ? nullptr : it->second;
  }
  const std::vector<NativePtr>& list(const std::string& slot) const {
    static const std::vector<NativePtr> empty;
    auto it = childLists.find(slot);
    return it == childLists.end() ? empty : it->second;
  }
  std::string attrString(const std::string& name) const {
    auto it = attrs.find(name);
    if (it == attrs.end()) return "";
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    return "";
  }
};

NativePtr makeNative(std::string kind, SourceLocation loc);

enum class RuleClass { Direct, Structural, Desugar };

struct LoweringRule {
  RuleClass ruleClass;
  std::string sourceKind;  // "<lang>:<native kind>"
  std::string description;
};

// The full native-kind -> rule map, one entry per kind either frontend emits.
const std::vector<LoweringRule>& loweringRules();

// First syntax error aborts with location; no error recovery.
NativePtr parse(const std::string& source, const std::string& lang,
                const std::string& file = "<input>");

// Applies the lowering rules in one pass; result passes validate().
NodePtr lower(const NativePtr& ast, const std::string& lang);

NodePtr parseToUast(const std::string& source, const std::string& lang,
                    const std::string& file = "<input>");

// Internal per-language entry points (exposed for tests).
NativePtr parseMiniPy(const std::string& source, const std::string& file);
NativePtr parseMiniJs(const std::string& source, const std::string& file);

}  // namespace uast
