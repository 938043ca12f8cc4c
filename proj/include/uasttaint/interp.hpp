#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "uasttaint/handlers.hpp"
#include "uasttaint/rules.hpp"
#include "uasttaint/uast.hpp"
#include "uasttaint/value.hpp"

namespace uast {

struct AnalysisConfig {
  int maxCallDepth = 10;
  int loopUnrollBound = 3;
  int pathMergeCap = 8;
  bool handlersEnabled = true;
};

struct Finding {
  std::string ruleId;
  SourceLocation sourceLoc;
  SourceLocation sinkLoc;
  std::vector<TraceStep> trace;  // source-first, sink-last
  std::string severity = "error";
  std::string message;
};

struct EngineWarning {
  SourceLocation loc;
  std::string message;
};

struct Counters {
  long long callDescends = 0;
  long long depthLimitedCalls = 0;
  long long loopIterations = 0;
  long long armEntries = 0;
};

enum class CondDecision { True, False, Unknown };

// Abstract interpreter over a validated UAST: bounded call depth, bounded
// loop unrolling, branch fork/merge into Phi values, field-sensitive object
// model, plus event-driven taint propagation against a Ruleset.
class Interpreter {
 public:
  Interpreter(AnalysisConfig config, Ruleset ruleset);

  // Interpret a PackageDeclaration's top-level body in the global scope.
  void runModule(const NodePtr& pkg);

  // Evaluate an expression (statement kinds execute and yield null).
  ValuePtr evaluate(const UastNode& node);

  // Call any abstract value with already-evaluated arguments.
  ValuePtr callValue(const ValuePtr& callee, std::vector<ValuePtr> args,
                     const SourceLocation& loc, const ValuePtr& receiver = nullptr);

  ValuePtr readField(const ValuePtr& obj, const std::string& f,
                     const SourceLocation& loc);
  void writeField(const ValuePtr& obj, const std::string& f, const ValuePtr& v,
                  const SourceLocation& loc);

  CondDecision evaluateCondition(const ValuePtr& v, const UastNode& testNode) const;

  // Function value created for a FunctionDefinition during runModule.
  ValuePtr functionValue(const UastNode* fnDef) const;

  ScopePtr globalScope() const { return global_; }
  std::vector<PathCondition>& path() { return pi_; }
  const AnalysisConfig& config() const { return config_; }

  std::vector<Finding> findings;
  std::vector<EngineWarning> warnings;
  Counters counters;

 private:
  enum class Sig { Normal, Break, Continue, Return, Throw };

  struct ObjState {
    std::map<std::string, ValuePtr> fields;
    Taint taint;
    ValuePtr protoLink;
    std::int64_t arrayLen = 0;
  };
  struct Snapshot {
    std::vector<std::pair<ScopePtr, std::map<std::string, ValuePtr>>> scopes;
    std::map<ValuePtr, ObjState> heap;
  };
  struct Frame {
    std::vector<std::pair<ValuePtr, std::vector<PathCondition>>> returns;
    std::size_t entryPiSize = 0;
  };

  Sig execStmt(const UastNode& node);
  Sig execList(const std::vector<NodePtr>& stmts);
  Sig execIf(const UastNode& node);
  Sig execWhile(const UastNode& node);
  Sig execRange(const UastNode& node);
  Sig execTry(const UastNode& node);

  ValuePtr evalCall(const UastNode& node);
  ValuePtr evalNew(const UastNode& node);
  ValuePtr evalAssignment(const UastNode& node);
  ValuePtr evalBinary(const UastNode& node);
  ValuePtr evalConditional(const UastNode& node);
  ValuePtr binop(const std::string& op, const ValuePtr& a, const ValuePtr& b,
                 const SourceLocation& loc);
  ValuePtr binopLeaf(const std::string& op, const ValuePtr& a, const ValuePtr& b);
  ValuePtr lookupIdentifier(const UastNode& node);
  void declareClass(const UastNode& node);
  ValuePtr makeFunctionValue(const UastNode& node);
  ValuePtr instantiateClass(const ValuePtr& classObj, std::vector<ValuePtr> args,
                            const SourceLocation& loc);
  void channelSend(const ValuePtr& ch, const ValuePtr& v, const SourceLocation& loc);
  ValuePtr channelReceive(const ValuePtr& ch, const SourceLocation& loc);
  ValuePtr makePromise(const ValuePtr& payload, const SourceLocation& loc);

  void checkSink(const SinkRule& rule, const std::string& qname,
                 const std::vector<ValuePtr>& args, const SourceLocation& loc);
  ValuePtr unknownCall(const std::string& name, const std::vector<ValuePtr>& args,
                       const ValuePtr& callee, const SourceLocation& loc);
  ValuePtr makePhiFromLeaves(std::vector<PhiLeaf> leaves);

  Snapshot takeSnapshot();
  void restoreSnapshot(const Snapshot& snap);
  void mergeSnapshot(const PathCondition& cond, const Snapshot& thenSnap);

  AnalysisConfig config_;
  Ruleset rules_;
  ScopePtr global_;
  ScopePtr cur_;
  std::vector<PathCondition> pi_;
  std::vector<Frame> frames_;
  int callDepth_ = 0;
  std::map<const UastNode*, ValuePtr> fnValues_;
  std::set<std::string> dedup_;
  std::vector<NodePtr> keepAlive_;
};

std::string qualifiedName(const UastNode& node);

}  // namespace uast
