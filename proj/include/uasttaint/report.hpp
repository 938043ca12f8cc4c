#pragma once

#include <string>

#include "uasttaint/analyzer.hpp"

namespace uast {

// One block per finding: `RULE @ file:line:col` header, then numbered trace
// steps with source excerpts. "No findings." when the report is clean.
std::string emitText(const RunReport& report);

// SARIF 2.1.0 subset: runs[0].tool.driver.name = "uast-taint", one result per
// finding with a codeFlow mirroring the trace. Byte-deterministic.
std::string emitSarif(const RunReport& report);

}  // namespace uast
