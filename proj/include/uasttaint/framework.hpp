#pragma once

#include <string>
#include <vector>

#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"
#include "uasttaint/uast.hpp"

namespace uast {

// A framework-invoked function where analysis begins and sources are seeded.
struct EntryPoint {
  const UastNode* function = nullptr;
  std::string framework;  // "miniflask" | "miniexpress" | "custom"
  std::string route;      // "<dynamic>" when not a string literal
  // (param name or request-field path, source id)
  std::vector<std::pair<std::string, std::string>> seededParams;
};

// Import-based detection: `import flaskish` -> miniflask,
// `require("expressish")` -> miniexpress. Empty string when neither appears.
std::string detectFramework(const NodePtr& uast);

// framework: "miniflask" | "miniexpress" | "auto"; param-kind sources in the
// ruleset additionally mark matching functions as custom entry points.
std::vector<EntryPoint> discoverEntrypoints(const NodePtr& uast,
                                            const std::string& framework,
                                            const Ruleset& rules);

// Pre-bind framework globals (miniflask's `request`) before module
// interpretation.
void seedGlobals(Interpreter& interp, const EntryPoint& entry);

// Build the seeded argument list and invoke the entry function.
void runEntry(Interpreter& interp, const EntryPoint& entry);

}  // namespace uast
