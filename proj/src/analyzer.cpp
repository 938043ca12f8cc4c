#include "uasttaint/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "uasttaint/frontend.hpp"

namespace fs = std::filesystem;

namespace uast {

namespace {

bool endsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string langForFile(const std::string& path) {
  if (endsWith(path, ".mpy")) return "minipy";
  if (endsWith(path, ".mjs.txt")) return "minijs";
  if (endsWith(path, ".uast.json")) return "raw";
  return "";
}

std::string readFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct AnalysisUnit {
  std::string relPath;
  NodePtr tree;
  std::string lang;
};

struct Task {
  const AnalysisUnit* unit = nullptr;
  const EntryPoint* entry = nullptr;  // null = plain module run
};

}  // namespace

AnalysisConfig loadConfigFile(const std::string& path, AnalysisConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RulesetError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw RulesetError("config file " + path + ": " + e.what());
  }
  if (doc.contains("maxCallDepth")) base.maxCallDepth = doc["maxCallDepth"].get<int>();
  if (doc.contains("loopUnrollBound"))
    base.loopUnrollBound = doc["loopUnrollBound"].get<int>();
  if (doc.contains("pathMergeCap")) base.pathMergeCap = doc["pathMergeCap"].get<int>();
  if (doc.contains("handlersEnabled"))
    base.handlersEnabled = doc["handlersEnabled"].get<bool>();
  if (base.maxCallDepth < 1 || base.loopUnrollBound < 1 || base.pathMergeCap < 1)
    throw RulesetError("config file " + path + ": all bounds must be >= 1");
  return base;
}

RunReport runAnalysis(const std::string& root, const AnalysisConfig& config,
                      const Ruleset& ruleset, const AnalyzerOptions& options) {
  auto started = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;

  // Discover analyzable files (dot-directories are skipped).
  std::vector<fs::path> paths;
  fs::path rootPath(root);
  if (fs::is_regular_file(rootPath)) {
    paths.push_back(rootPath);
  } else {
    for (auto it = fs::recursive_directory_iterator(rootPath);
         it != fs::recursive_directory_iterator(); ++it) {
      if (it->is_directory() && it->path().filename().string().starts_with(".")) {
        it.disable_recursion_pending();
        continue;
      }
      if (it->is_regular_file() && !langForFile(it->path().string()).empty())
        paths.push_back(it->path());
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<AnalysisUnit> units;
  std::vector<std::vector<EntryPoint>> unitEntries;
  for (const auto& p : paths) {
    std::string rel = fs::is_regular_file(rootPath)
                          ? p.filename().string()
                          : fs::relative(p, rootPath).generic_string();
    std::string lang = langForFile(p.string());
    std::string text = readFile(p);

    report.fileCount++;
    std::vector<std::string> lines;
    {
      std::istringstream ls(text);
      std::string line;
      while (std::getline(ls, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) report.locCount++;
        lines.push_back(line);
      }
    }

    NodePtr tree;
    try {
      if (lang == "raw") {
        tree = deserialize(text);
      } else {
        tree = parseToUast(text, lang, rel);
        auto diags = validate(tree);
        if (hasErrors(diags))
          throw std::runtime_error(rel + ": lowered tree failed validation: " +
                                   diags.front().message);
      }
    } catch (const std::exception& e) {
      report.fileErrors.push_back(e.what());
      continue;
    }

    if (options.emitUast) {
      fs::path outDir = (fs::is_regular_file(rootPath) ? rootPath.parent_path()
                                                       : rootPath) /
                        ".uast";
      fs::create_directories(outDir / fs::path(rel).parent_path());
      std::ofstream out(outDir / (rel + ".json"), std::ios::binary);
      out << serialize(tree);
    }

    report.fileLines[rel] = std::move(lines);
    units.push_back({rel, tree, lang});
    unitEntries.push_back(lang == "raw"
                              ? std::vector<EntryPoint>{}
                              : discoverEntrypoints(tree, options.framework, ruleset));
  }

  // One task per entry point; files without entry points get a module run.
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (unitEntries[i].empty()) {
      tasks.push_back({&units[i], nullptr});
    } else {
      for (const auto& ep : unitEntries[i]) tasks.push_back({&units[i], &ep});
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      Interpreter interp(config, ruleset);
      if (task.entry) seedGlobals(interp, *task.entry);
      interp.runModule(task.unit->tree);
      if (task.entry) runEntry(interp, *task.entry);
      std::lock_guard<std::mutex> lock(mu);
      for (auto& f : interp.findings)
        report.findings.push_back({task.unit->relPath, std::move(f)});
      for (auto& w : interp.warnings) report.warnings.push_back(std::move(w));
    }
  };

  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t nThreads = options.jobs > 0 ? static_cast<std::size_t>(options.jobs)
                                          : std::min<std::size_t>(tasks.size(), hw);
  nThreads = std::max<std::size_t>(1, std::min(nThreads, tasks.size()));
  if (nThreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < nThreads; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // Deterministic ordering regardless of parallelism, plus cross-entry dedup.
  auto key = [](const FileFinding& f) {
    return std::tuple<std::string, int, std::string, int, std::string>(
        f.file, f.finding.sinkLoc.startLine, f.finding.ruleId,
        f.finding.sinkLoc.startCol,
        f.finding.sourceLoc.file + ":" + std::to_string(f.finding.sourceLoc.startLine) +
            ":" + std::to_string(f.finding.sourceLoc.startCol));
  };
  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [&](const FileFinding& a, const FileFinding& b) {
                     return key(a) < key(b);
                   });
  report.findings.erase(
      std::unique(report.findings.begin(), report.findings.end(),
                  [&](const FileFinding& a, const FileFinding& b) {
                    return key(a) == key(b);
                  }),
      report.findings.end());

  report.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return report;
}

}  // namespace uast
