#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "uasttaint/analyzer.hpp"
#include "uasttaint/bench.hpp"
#include "uasttaint/report.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"uast-taint: multi-language static taint analyzer"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "analyze sources under a root");
  std::string root;
  std::string rulesPath;
  std::string format = "text";
  std::string lang = "auto";
  std::string framework = "auto";
  int maxCallDepth = 10;
  int loopBound = 3;
  int pathMergeCap = 8;
  bool noHandlers = false;
  int jobs = 0;
  bool emitUast = false;
  analyze->add_option("root", root, "file or directory to analyze")->required();
  analyze->add_option("--rules", rulesPath, "ruleset file (rules.json)");
  auto* fmtOpt = analyze->add_option("--format", format, "text|sarif");
  analyze->add_option("--lang", lang, "minipy|minijs|auto");
  analyze->add_option("--framework", framework, "miniflask|miniexpress|auto");
  auto* depthOpt = analyze->add_option("--max-call-depth", maxCallDepth);
  auto* loopOpt = analyze->add_option("--loop-bound", loopBound);
  auto* capOpt = analyze->add_option("--path-merge-cap", pathMergeCap);
  analyze->add_flag("--no-lang-handlers", noHandlers,
                    "disable language-specific handlers");
  analyze->add_option("--jobs", jobs, "max parallel analysis tasks");
  analyze->add_flag("--emit-uast", emitUast, "write lowered trees under <root>/.uast/");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark corpus");
  std::string benchRoot;
  bool ablation = false;
  std::string jsonOut;
  bench->add_option("benchRoot", benchRoot, "corpus directory")->required();
  bench->add_flag("--ablation", ablation, "also run agnostic-only mode");
  bench->add_option("--json-out", jsonOut, "write the scoreboard as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      if (!fs::exists(root)) {
        std::cerr << "error: root path does not exist: " << root << "\n";
        return 2;
      }
      if (format != "text" && format != "sarif") {
        std::cerr << "error: --format must be text or sarif\n";
        return 2;
      }
      (void)fmtOpt;

      uast::AnalysisConfig config;
      try {
        const char* env = std::getenv("UAST_TAINT_CONFIG");
        if (env && *env) {
          config = uast::loadConfigFile(env, config);
        } else {
          fs::path implicit =
              (fs::is_directory(root) ? fs::path(root) : fs::path(root).parent_path()) /
              "yasa.config.json";
          if (fs::exists(implicit))
            config = uast::loadConfigFile(implicit.string(), config);
        }
      } catch (const uast::RulesetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      // Flags override file values.
      if (depthOpt->count()) config.maxCallDepth = maxCallDepth;
      if (loopOpt->count()) config.loopUnrollBound = loopBound;
      if (capOpt->count()) config.pathMergeCap = pathMergeCap;
      if (noHandlers) config.handlersEnabled = false;
      if (config.maxCallDepth < 1 || config.loopUnrollBound < 1 ||
          config.pathMergeCap < 1) {
        std::cerr << "error: all bounds must be >= 1\n";
        return 2;
      }

      uast::Ruleset ruleset;
      try {
        ruleset = rulesPath.empty() ? uast::defaultRuleset()
                                    : uast::loadRuleset(rulesPath);
      } catch (const uast::RulesetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }

      uast::AnalyzerOptions options;
      options.lang = lang;
      options.framework = framework;
      options.jobs = jobs;
      options.emitUast = emitUast;

      uast::RunReport report = uast::runAnalysis(root, config, ruleset, options);
      std::cout << (format == "sarif" ? uast::emitSarif(report)
                                      : uast::emitText(report));
      return report.findings.empty() ? 0 : 1;
    }

    if (*bench) {
      std::vector<uast::BenchCase> cases;
      try {
        cases = uast::loadCases(benchRoot);
      } catch (const uast::BenchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      uast::AnalysisConfig config;
      std::string jsonDoc;
      int exitCode = 0;
      if (ablation) {
        uast::AblationResult result = uast::runAblation(cases, config);
        std::cout << scoreboardText(result.full) << "\n"
                  << scoreboardText(result.agnostic) << "\n";
        std::cout << "changed cases:";
        for (const auto& id : result.changed) std::cout << " " << id;
        std::cout << "\nmonotone: " << (result.monotone ? "yes" : "no")
                  << "\nchanged cases all requiresHandlers: "
                  << (result.changedAllRequireHandlers ? "yes" : "no") << "\n";
        jsonDoc = ablationJson(result);
        exitCode = result.full.passes == result.full.total ? 0 : 1;
      } else {
        uast::Scoreboard board = uast::runSuite(cases, config);
        std::cout << scoreboardText(board);
        jsonDoc = scoreboardJson(board);
        exitCode = board.passes == board.total ? 0 : 1;
      }
      if (!jsonOut.empty()) {
        std::ofstream out(jsonOut, std::ios::binary);
        if (!out) {
          std::cerr << "error: cannot write " << jsonOut << "\n";
          return 2;
        }
        out << jsonDoc;
      }
      return exitCode;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
