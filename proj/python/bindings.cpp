#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uasttaint/analyzer.hpp"
#include "uasttaint/frontend.hpp"
#include "uasttaint/report.hpp"
#include "uasttaint/rules.hpp"

namespace py = pybind11;
using namespace uast;

namespace {

AnalysisConfig makeConfig(int maxCallDepth, int loopBound, int pathMergeCap,
                          bool handlers) {
  AnalysisConfig config;
  config.maxCallDepth = maxCallDepth;
  config.loopUnrollBound = loopBound;
  config.pathMergeCap = pathMergeCap;
  config.handlersEnabled = handlers;
  return config;
}

py::dict locDict(const SourceLocation& loc) {
  py::dict d;
  d["file"] = loc.file;
  d["startLine"] = loc.startLine;
  d["startCol"] = loc.startCol;
  d["endLine"] = loc.endLine;
  d["endCol"] = loc.endCol;
  return d;
}

py::list analyze(const std::string& root, const std::string& rulesPath,
                 int maxCallDepth, int loopBound, int pathMergeCap,
                 bool handlers) {
  Ruleset rules = rulesPath.empty() ? defaultRuleset() : loadRuleset(rulesPath);
  RunReport report = runAnalysis(
      root, makeConfig(maxCallDepth, loopBound, pathMergeCap, handlers), rules,
      {});
  if (!report.fileErrors.empty())
    throw std::runtime_error("analysis skipped files: " + report.fileErrors[0]);
  py::list out;
  for (const auto& ff : report.findings) {
    py::dict d;
    d["file"] = ff.file;
    d["ruleId"] = ff.finding.ruleId;
    d["message"] = ff.finding.message;
    d["severity"] = ff.finding.severity;
    d["source"] = locDict(ff.finding.sourceLoc);
    d["sink"] = locDict(ff.finding.sinkLoc);
    py::list trace;
    for (const auto& ts : ff.finding.trace) {
      py::dict step;
      step["kind"] = traceStepKindName(ts.kind);
      step["loc"] = locDict(ts.loc);
      step["description"] = ts.description;
      trace.append(step);
    }
    d["trace"] = trace;
    out.append(d);
  }
  return out;
}

std::string analyzeSarif(const std::string& root, const std::string& rulesPath) {
  Ruleset rules = rulesPath.empty() ? defaultRuleset() : loadRuleset(rulesPath);
  return emitSarif(runAnalysis(root, AnalysisConfig{}, rules, {}));
}

std::string toUastJson(const std::string& source, const std::string& lang,
                       const std::string& file) {
  return serialize(parseToUast(source, lang, file));
}

}  // namespace

PYBIND11_MODULE(_uast_taint, m) {
  m.doc() = "Static taint analyzer over a unified AST";

  m.def("analyze", &analyze, py::arg("root"), py::arg("rules") = "",
        py::arg("max_call_depth") = 10, py::arg("loop_bound") = 3,
        py::arg("path_merge_cap") = 8, py::arg("lang_handlers") = true,
        "Analyze a file or directory; returns a list of finding dicts.");

  m.def("analyze_sarif", &analyzeSarif, py::arg("root"), py::arg("rules") = "",
        "Analyze and render the findings as a SARIF 2.1.0 document.");

  m.def("to_uast_json", &toUastJson, py::arg("source"), py::arg("lang"),
        py::arg("file") = "<input>",
        "Parse MiniPy/MiniJS source and return the canonical UAST JSON.");

  m.def(
      "validate_uast_json",
      [](const std::string& doc) {
        deserialize(doc);  // throws DeserializeError on any violation
        return true;
      },
      py::arg("doc"), "Check a serialized UAST document against the schema.");

  py::register_exception<SyntaxError>(m, "UastSyntaxError");
  py::register_exception<DeserializeError>(m, "UastFormatError");
  py::register_exception<RulesetError>(m, "RulesetError");
}
