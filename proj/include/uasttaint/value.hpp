#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "uasttaint/uast.hpp"

namespace uast {

struct TraceStep {
  enum class Kind {
    Source,
    Assign,
    Field,
    CallArg,
    CallReturn,
    Prototype,
    Promise,
    Channel,
    Sink,
  };
  Kind kind = Kind::Assign;
  SourceLocation loc;
  std::string description;
};

const char* traceStepKindName(TraceStep::Kind k);

// Taint rides on abstract values; untainted iff the label set is empty.
struct Taint {
  std::set<std::string> labels;
  std::vector<TraceStep> trace;

  bool tainted() const { return !labels.empty(); }
  void clear() {
    labels.clear();
    trace.clear();
  }
  void mergeFrom(const Taint& other);
  void addStep(TraceStep::Kind kind, const SourceLocation& loc,
               const std::string& description);
};

struct PathCondition {
  std::string key;  // structural key of the condition expression
  bool polarity = true;

  bool operator==(const PathCondition&) const = default;
  bool contradicts(const PathCondition& other) const {
    return key == other.key && polarity != other.polarity;
  }
};

// True when the set {a ∪ b} contains some key with both polarities.
bool conditionsContradict(const std::vector<PathCondition>& a,
                          const std::vector<PathCondition>& b);

struct Value;
using ValuePtr = std::shared_ptr<Value>;
struct Scope;
using ScopePtr = std::shared_ptr<Scope>;

enum class ValueTag { Prim, Obj, Sym, Phi, Uninit };

struct PhiLeaf {
  ValuePtr value;
  std::vector<PathCondition> conds;  // conjunction along the merge path
};

// Function-closure payload: the definition plus its captured lexical scope.
struct FclosInfo {
  const UastNode* fn = nullptr;
  ScopePtr defScope;
};

struct Value {
  ValueTag tag = ValueTag::Sym;
  Taint taint;

  // Prim
  std::string primType;  // "number" | "string" | "boolean" | "null"
  AttrValue primValue = std::string();

  // Obj
  std::uint64_t objId = 0;
  std::map<std::string, ValuePtr> fields;
  ValuePtr protoLink;
  const UastNode* classDef = nullptr;
  std::optional<FclosInfo> fclos;
  bool isArray = false;
  std::int64_t arrayLen = 0;
  bool isChannel = false;
  bool isPromise = false;
  bool isPrototype = false;

  // Sym
  std::string symName;
  SourceLocation originLoc;

  // Phi
  std::vector<PhiLeaf> leaves;

  bool isFunction() const { return tag == ValueTag::Obj && fclos.has_value(); }
  bool isClass() const { return tag == ValueTag::Obj && classDef != nullptr && !fclos; }
  // Prim truthiness; nullopt when not statically decidable.
  std::optional<bool> truthiness() const;
  std::optional<double> asNumber() const;
  std::optional<std::string> asString() const;
};

ValuePtr makeNumber(double v);
ValuePtr makeInt(std::int64_t v);
ValuePtr makeString(std::string v);
ValuePtr makeBool(bool v);
ValuePtr makeNull();
ValuePtr makeSym(std::string name, SourceLocation origin = {});
ValuePtr makeUninit(SourceLocation origin = {});
ValuePtr makeObj();

// Deep copy preserving internal aliasing (same memo -> same clone).
ValuePtr cloneValue(const ValuePtr& v, std::map<const Value*, ValuePtr>& memo);

// Structural equality: tag, payload, taint labels, object identity plus
// recursive fields. Traces are ignored.
bool valueEqual(const ValuePtr& a, const ValuePtr& b);

// Expand to Phi leaves (a non-Phi value is a single leaf with no conditions).
std::vector<PhiLeaf> phiLeaves(const ValuePtr& v);

// Build a Phi from two arms of `cond`; collapses when the arms are equal and
// degrades to a tainted-union Sym past `mergeCap` nesting.
ValuePtr makePhi(const PathCondition& cond, const ValuePtr& ifTrue,
                 const ValuePtr& ifFalse, int mergeCap);

// Own taint plus, for arrays/phis, taint reachable through elements/leaves.
Taint effectiveTaint(const ValuePtr& v, const std::vector<PathCondition>& path);

enum class ScopeType { Scope, Fclos, Global, Uninit, Sym };

struct DeclInfo {
  std::string declaredKind;
  SourceLocation loc;
  std::string typeTag;
};

struct Scope {
  std::map<std::string, ValuePtr> vars;
  std::map<std::string, DeclInfo> decls;
  ScopePtr parent;
  ScopeType type = ScopeType::Scope;
  const UastNode* fnDef = nullptr;  // Fclos scopes only

  ValuePtr lookup(const std::string& name) const;
  Scope* findDefining(const std::string& name);
};

ScopePtr makeScope(ScopeType type, ScopePtr parent = nullptr);

// Clone a whole chain (current scope up to the global root), preserving value
// aliasing across the chain.
ScopePtr cloneChain(const ScopePtr& scope, std::map<const Value*, ValuePtr>& memo);

}  // namespace uast
