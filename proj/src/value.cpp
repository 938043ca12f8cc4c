#include "uasttaint/value.hpp"

#include <atomic>

namespace uast {

const char* traceStepKindName(TraceStep::Kind k) {
  switch (k) {
    case TraceStep::Kind::Source: return "source";
    case TraceStep::Kind::Assign: return "assign";
    case TraceStep::Kind::Field: return "field";
    case TraceStep::Kind::CallArg: return "call-arg";
    case TraceStep::Kind::CallReturn: return "call-return";
    case TraceStep::Kind::Prototype: return "prototype";
    case TraceStep::Kind::Promise: return "promise";
    case TraceStep::Kind::Channel: return "channel";
    case TraceStep::Kind::Sink: return "sink";
  }
  return "?";
}

void Taint::mergeFrom(const Taint& other) {
  if (!other.tainted()) return;
  if (!tainted()) {
    *this = other;
    return;
  }
  labels.insert(other.labels.begin(), other.labels.end());
  // Keep the existing trace as the primary provenance; alternates would only
  // duplicate steps in the report.
}

void Taint::addStep(TraceStep::Kind kind, const SourceLocation& loc,
                    const std::string& description) {
  if (!tainted()) return;
  trace.push_back({kind, loc, description});
}

bool conditionsContradict(const std::vector<PathCondition>& a,
                          const std::vector<PathCondition>& b) {
  for (const auto& x : a) {
    for (const auto& y : a)
      if (x.contradicts(y)) return true;
    for (const auto& y : b)
      if (x.contradicts(y)) return true;
  }
  for (const auto& x : b)
    for (const auto& y : b)
      if (x.contradicts(y)) return true;
  return false;
}

std::optional<bool> Value::truthiness() const {
  if (tag != ValueTag::Prim) return std::nullopt;
  if (primType == "boolean") {
    if (const auto* b = std::get_if<bool>(&primValue)) return *b;
  }
  if (primType == "number") {
    if (const auto* i = std::get_if<std::int64_t>(&primValue)) return *i != 0;
    if (const auto* d = std::get_if<double>(&primValue)) return *d != 0.0;
  }
  if (primType == "string") {
    if (const auto* s = std::get_if<std::string>(&primValue)) return !s->empty();
  }
  if (primType == "null") return false;
  return std::nullopt;
}

std::optional<double> Value::asNumber() const {
  if (tag != ValueTag::Prim || primType != "number") return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(&primValue))
    return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&primValue)) return *d;
  return std::nullopt;
}

std::optional<std::string> Value::asString() const {
  if (tag != ValueTag::Prim || primType != "string") return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&primValue)) return *s;
  return std::nullopt;
}

namespace {
std::atomic<std::uint64_t> nextObjId{1};

ValuePtr prim(std::string type, AttrValue v) {
  auto val = std::make_shared<Value>();
  val->tag = ValueTag::Prim;
  val->primType = std::move(type);
  val->primValue = std::move(v);
  return val;
}
}  // namespace

ValuePtr makeNumber(double v) { return prim("number", v); }
ValuePtr makeInt(std::int64_t v) { return prim("number", v); }
ValuePtr makeString(std::string v) { return prim("string", std::move(v)); }
ValuePtr makeBool(bool v) { return prim("boolean", v); }
ValuePtr makeNull() { return prim("null", std::string("null")); }

ValuePtr makeSym(std::string name, SourceLocation origin) {
  auto val = std::make_shared<Value>();
  val->tag = ValueTag::Sym;
  val->symName = std::move(name);
  val->originLoc = std::move(origin);
  return val;
}

ValuePtr makeUninit(SourceLocation origin) {
  auto val = std::make_shared<Value>();
  val->tag = ValueTag::Uninit;
  val->originLoc = std::move(origin);
  return val;
}

ValuePtr makeObj() {
  auto val = std::make_shared<Value>();
  val->tag = ValueTag::Obj;
  val->objId = nextObjId.fetch_add(1);
  return val;
}

ValuePtr cloneValue(const ValuePtr& v, std::map<const Value*, ValuePtr>& memo) {
  if (!v) return nullptr;
  auto it = memo.find(v.get());
  if (it != memo.end()) return it->second;
  auto copy = std::make_shared<Value>(*v);
  copy->fields.clear();
  copy->leaves.clear();
  copy->protoLink = nullptr;
  memo[v.get()] = copy;
  for (const auto& [name, fv] : v->fields) copy->fields[name] = cloneValue(fv, memo);
  copy->protoLink = cloneValue(v->protoLink, memo);
  for (const auto& leaf : v->leaves)
    copy->leaves.push_back({cloneValue(leaf.value, memo), leaf.conds});
  if (copy->fclos) {
    // The captured scope is cloned by cloneChain when it is part of the
    // chain; closures over scopes outside the chain keep sharing.
  }
  return copy;
}

namespace {
bool valueEqualImpl(const ValuePtr& a, const ValuePtr& b,
                    std::set<std::pair<const Value*, const Value*>>& visited) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  if (a->taint.labels != b->taint.labels) return false;
  switch (a->tag) {
    case ValueTag::Prim:
      return a->primType == b->primType && a->primValue == b->primValue;
    case ValueTag::Sym:
      return a->symName == b->symName;
    case ValueTag::Uninit:
      return true;
    case ValueTag::Obj: {
      if (a->objId != b->objId) return false;
      auto key = std::make_pair(a.get(), b.get());
      if (visited.count(key)) return true;
      visited.insert(key);
      if (a->fields.size() != b->fields.size()) return false;
      for (const auto& [name, fv] : a->fields) {
        auto it = b->fields.find(name);
        if (it == b->fields.end() || !valueEqualImpl(fv, it->second, visited))
          return false;
      }
      return valueEqualImpl(a->protoLink, b->protoLink, visited) ||
             (!a->protoLink && !b->protoLink);
    }
    case ValueTag::Phi: {
      if (a->leaves.size() != b->leaves.size()) return false;
      for (std::size_t i = 0; i < a->leaves.size(); ++i) {
        if (a->leaves[i].conds != b->leaves[i].conds) return false;
        if (!valueEqualImpl(a->leaves[i].value, b->leaves[i].value, visited))
          return false;
      }
      return true;
    }
  }
  return false;
}
}  // namespace

bool valueEqual(const ValuePtr& a, const ValuePtr& b) {
  std::set<std::pair<const Value*, const Value*>> visited;
  return valueEqualImpl(a, b, visited);
}

std::vector<PhiLeaf> phiLeaves(const ValuePtr& v) {
  if (!v) return {};
  if (v->tag != ValueTag::Phi) return {{v, {}}};
  return v->leaves;
}

ValuePtr makePhi(const PathCondition& cond, const ValuePtr& ifTrue,
                 const ValuePtr& ifFalse, int mergeCap) {
  if (valueEqual(ifTrue, ifFalse)) return ifTrue;

  std::vector<PhiLeaf> leaves;
  PathCondition tc = cond;
  tc.polarity = true;
  PathCondition fc = cond;
  fc.polarity = false;
  for (const auto& leaf : phiLeaves(ifTrue)) {
    std::vector<PathCondition> conds = {tc};
    conds.insert(conds.end(), leaf.conds.begin(), leaf.conds.end());
    leaves.push_back({leaf.value, std::move(conds)});
  }
  for (const auto& leaf : phiLeaves(ifFalse)) {
    std::vector<PathCondition> conds = {fc};
    conds.insert(conds.end(), leaf.conds.begin(), leaf.conds.end());
    leaves.push_back({leaf.value, std::move(conds)});
  }

  // All-equal leaves collapse to the single value.
  bool allEqual = true;
  for (std::size_t i = 1; i < leaves.size(); ++i)
    if (!valueEqual(leaves[0].value, leaves[i].value)) {
      allEqual = false;
      break;
    }
  if (allEqual && !leaves.empty()) return leaves[0].value;

  std::size_t depth = 0;
  for (const auto& leaf : leaves) depth = std::max(depth, leaf.conds.size());
  if (depth > static_cast<std::size_t>(mergeCap)) {
    auto sym = makeSym("merged");
    for (const auto& leaf : leaves)
      if (leaf.value) sym->taint.mergeFrom(leaf.value->taint);
    return sym;
  }

  auto phi = std::make_shared<Value>();
  phi->tag = ValueTag::Phi;
  phi->leaves = std::move(leaves);
  return phi;
}

namespace {
void effectiveTaintImpl(const ValuePtr& v, const std::vector<PathCondition>& path,
                        Taint& out, std::set<const Value*>& visited) {
  if (!v || visited.count(v.get())) return;
  visited.insert(v.get());
  if (v->tag == ValueTag::Phi) {
    for (const auto& leaf : v->leaves) {
      if (conditionsContradict(leaf.conds, path)) continue;  // infeasible leaf
      effectiveTaintImpl(leaf.value, path, out, visited);
    }
    return;
  }
  out.mergeFrom(v->taint);
  if (v->tag == ValueTag::Obj && (v->isArray || v->isPromise)) {
    for (const auto& [name, fv] : v->fields) effectiveTaintImpl(fv, path, out, visited);
  }
}
}  // namespace

Taint effectiveTaint(const ValuePtr& v, const std::vector<PathCondition>& path) {
  Taint out;
  std::set<const Value*> visited;
  effectiveTaintImpl(v, path, out, visited);
  return out;
}

ValuePtr Scope::lookup(const std::string& name) const {
  auto it = vars.find(name);
  if (it != vars.end()) return it->second;
  return parent ? parent->lookup(name) : nullptr;
}

Scope* Scope::findDefining(const std::string& name) {
  if (vars.count(name)) return this;
  return parent ? parent->findDefining(name) : nullptr;
}

ScopePtr makeScope(ScopeType type, ScopePtr parent) {
  auto s = std::make_shared<Scope>();
  s->type = type;
  s->parent = std::move(parent);
  return s;
}

ScopePtr cloneChain(const ScopePtr& scope, std::map<const Value*, ValuePtr>& memo) {
  if (!scope) return nullptr;
  auto copy = std::make_shared<Scope>();
  copy->decls = scope->decls;
  copy->type = scope->type;
  copy->fnDef = scope->fnDef;
  copy->parent = cloneChain(scope->parent, memo);
  for (const auto& [name, v] : scope->vars) copy->vars[name] = cloneValue(v, memo);
  return copy;
}

}  // namespace uast
