#include "uasttaint/report.hpp"

#include <set>
#include <sstream>

#include "json.hpp"

namespace uast {

namespace {

std::string excerpt(const RunReport& report, const SourceLocation& loc) {
  auto it = report.fileLines.find(loc.file);
  if (it == report.fileLines.end()) return "";
  if (loc.startLine < 1 || loc.startLine > static_cast<int>(it->second.size()))
    return "";
  std::string line = it->second[loc.startLine - 1];
  std::size_t first = line.find_first_not_of(" \t");
  return first == std::string::npos ? line : line.substr(first);
}

std::string locStr(const SourceLocation& loc) {
  return loc.file + ":" + std::to_string(loc.startLine) + ":" +
         std::to_string(loc.startCol);
}

}  // namespace

std::string emitText(const RunReport& report) {
  std::ostringstream out;
  if (report.findings.empty()) {
    out << "No findings.\n";
  } else {
    for (const auto& ff : report.findings) {
      const Finding& f = ff.finding;
      out << f.ruleId << " @ " << locStr(f.sinkLoc) << "\n";
      out << "  " << f.message << "\n";
      int step = 1;
      for (const auto& ts : f.trace) {
        out << "  " << step++ << ". [" << traceStepKindName(ts.kind) << "] "
            << locStr(ts.loc) << " " << ts.description;
        std::string src = excerpt(report, ts.loc);
        if (!src.empty()) out << "  |  " << src;
        out << "\n";
      }
      out << "\n";
    }
  }
  out << report.findings.size() << " finding(s), " << report.fileCount
      << " file(s), " << report.locCount << " LoC";
  if (!report.fileErrors.empty())
    out << ", " << report.fileErrors.size() << " file(s) skipped";
  out << "\n";
  for (const auto& e : report.fileErrors) out << "error: " << e << "\n";
  return out.str();
}

std::string emitSarif(const RunReport& report) {
  using json = nlohmann::json;  // std::map-backed: keys sorted, deterministic

  auto location = [](const SourceLocation& loc) {
    return json{
        {"physicalLocation",
         {{"artifactLocation", {{"uri", loc.file}}},
          {"region",
           {{"startLine", loc.startLine},
            {"startColumn", loc.startCol},
            {"endLine", loc.endLine},
            {"endColumn", loc.endCol}}}}}};
  };

  std::set<std::string> ruleIds;
  json results = json::array();
  for (const auto& ff : report.findings) {
    const Finding& f = ff.finding;
    ruleIds.insert(f.ruleId);
    json threadFlowLocations = json::array();
    for (const auto& ts : f.trace) {
      json l = location(ts.loc);
      l["message"] = {{"text", std::string(traceStepKindName(ts.kind)) + ": " +
                                   ts.description}};
      threadFlowLocations.push_back({{"location", std::move(l)}});
    }
    json result = {
        {"ruleId", f.ruleId},
        {"level", f.severity},
        {"message", {{"text", f.message}}},
        {"locations", json::array({location(f.sinkLoc)})},
        {"codeFlows",
         json::array(
             {{{"threadFlows",
                json::array({{{"locations", std::move(threadFlowLocations)}}})}}})},
    };
    results.push_back(std::move(result));
  }

  json rules = json::array();
  for (const auto& id : ruleIds)
    rules.push_back({{"id", id}, {"shortDescription", {{"text", id}}}});

  json doc = {
      {"$schema",
       "https://raw.githubusercontent.com/oasis-tcs/sarif-spec/master/Schemata/"
       "sarif-schema-2.1.0.json"},
      {"version", "2.1.0"},
      {"runs",
       json::array({{{"tool",
                      {{"driver",
                        {{"name", "uast-taint"},
                         {"version", "1.0.0"},
                         {"rules", std::move(rules)}}}}},
                     {"results", std::move(results)}}})},
  };
  return doc.dump(2) + "\n";
}

}  // namespace uast
