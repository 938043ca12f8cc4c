#include "uasttaint/interp.hpp"

#include <algorithm>
#include <cmath>

namespace uast {

std::string qualifiedName(const UastNode& node) {
  if (node.kind == NodeKind::Identifier) return node.attrString("name");
  if (node.kind == NodeKind::MemberAccess) {
    std::string base = qualifiedName(*node.child("object"));
    if (base.empty()) return "";
    return base + "." + node.attrString("property");
  }
  return "";
}

namespace {

// Copy-with-trace-step for values whose identity does not matter; objects are
// shared by reference, so their traces stay on the values inside them.
ValuePtr withStep(const ValuePtr& v, TraceStep::Kind kind, const SourceLocation& loc,
                  const std::string& desc) {
  if (!v || !v->taint.tainted()) return v;
  if (v->tag == ValueTag::Obj || v->tag == ValueTag::Phi) return v;
  auto copy = std::make_shared<Value>(*v);
  copy->taint.addStep(kind, loc, desc);
  return copy;
}

ValuePtr clearTaintCopy(const ValuePtr& v, int depth = 0) {
  if (!v) return v;
  auto copy = std::make_shared<Value>(*v);
  copy->taint.clear();
  if (depth > 6) return copy;
  if (v->tag == ValueTag::Phi) {
    copy->leaves.clear();
    for (const auto& leaf : v->leaves)
      copy->leaves.push_back({clearTaintCopy(leaf.value, depth + 1), leaf.conds});
  } else if (v->tag == ValueTag::Obj && v->isArray) {
    for (auto& [name, fv] : copy->fields) fv = clearTaintCopy(fv, depth + 1);
  }
  return copy;
}

std::vector<PathCondition> mergeConds(const std::vector<PathCondition>& a,
                                      const std::vector<PathCondition>& b) {
  std::vector<PathCondition> out = a;
  for (const auto& c : b)
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  return out;
}

std::string locKey(const SourceLocation& loc) {
  return loc.file + ":" + std::to_string(loc.startLine) + ":" +
         std::to_string(loc.startCol);
}

}  // namespace

Interpreter::Interpreter(AnalysisConfig config, Ruleset ruleset)
    : config_(std::move(config)), rules_(std::move(ruleset)) {
  global_ = makeScope(ScopeType::Global);
  cur_ = global_;
}

void Interpreter::runModule(const NodePtr& pkg) {
  keepAlive_.push_back(pkg);
  cur_ = global_;
  execList(pkg->list("body"));
}

ValuePtr Interpreter::functionValue(const UastNode* fnDef) const {
  auto it = fnValues_.find(fnDef);
  return it == fnValues_.end() ? nullptr : it->second;
}

// ---------------------------------------------------------------------------
// Snapshots: branch arms run against the live state; the other arm's state is
// captured as scope-variable maps plus reachable object contents.

Interpreter::Snapshot Interpreter::takeSnapshot() {
  Snapshot snap;
  std::set<const Scope*> seenScopes;
  std::vector<ScopePtr> queue;
  for (ScopePtr s = cur_; s; s = s->parent) queue.push_back(s);

  auto collectValue = [&](auto&& self, const ValuePtr& v) -> void {
    if (!v || snap.heap.count(v)) return;
    snap.heap[v] = ObjState{v->fields, v->taint, v->protoLink, v->arrayLen};
    for (const auto& [name, fv] : v->fields) self(self, fv);
    self(self, v->protoLink);
    for (const auto& leaf : v->leaves) self(self, leaf.value);
    if (v->fclos && v->fclos->defScope) {
      for (ScopePtr s = v->fclos->defScope; s; s = s->parent)
        if (!seenScopes.count(s.get())) queue.push_back(s);
    }
  };

  while (!queue.empty()) {
    ScopePtr s = queue.back();
    queue.pop_back();
    if (!s || seenScopes.count(s.get())) continue;
    seenScopes.insert(s.get());
    snap.scopes.emplace_back(s, s->vars);
    for (const auto& [name, v] : s->vars) collectValue(collectValue, v);
  }
  return snap;
}

void Interpreter::restoreSnapshot(const Snapshot& snap) {
  for (const auto& [scope, vars] : snap.scopes) scope->vars = vars;
  for (const auto& [v, st] : snap.heap) {
    v->fields = st.fields;
    v->taint = st.taint;
    v->protoLink = st.protoLink;
    v->arrayLen = st.arrayLen;
  }
}

void Interpreter::mergeSnapshot(const PathCondition& cond, const Snapshot& thenSnap) {
  // Live state is the false arm; thenSnap holds the true arm.
  for (const auto& [scope, thenVars] : thenSnap.scopes) {
    std::set<std::string> names;
    for (const auto& [n, v] : thenVars) names.insert(n);
    for (const auto& [n, v] : scope->vars) names.insert(n);
    for (const auto& n : names) {
      auto ti = thenVars.find(n);
      auto ei = scope->vars.find(n);
      ValuePtr tv = ti == thenVars.end() ? nullptr : ti->second;
      ValuePtr ev = ei == scope->vars.end() ? nullptr : ei->second;
      if (tv == ev) continue;
      scope->vars[n] = makePhi(cond, tv ? tv : makeUninit(), ev ? ev : makeUninit(),
                               config_.pathMergeCap);
    }
  }
  for (const auto& [v, st] : thenSnap.heap) {
    std::set<std::string> names;
    for (const auto& [n, fv] : st.fields) names.insert(n);
    for (const auto& [n, fv] : v->fields) names.insert(n);
    for (const auto& n : names) {
      auto ti = st.fields.find(n);
      auto ei = v->fields.find(n);
      ValuePtr tv = ti == st.fields.end() ? nullptr : ti->second;
      ValuePtr ev = ei == v->fields.end() ? nullptr : ei->second;
      if (tv == ev) continue;
      v->fields[n] = makePhi(cond, tv ? tv : makeUninit(), ev ? ev : makeUninit(),
                             config_.pathMergeCap);
    }
    if (st.taint.labels != v->taint.labels) v->taint.mergeFrom(st.taint);
    if (!v->protoLink && st.protoLink) v->protoLink = st.protoLink;
    v->arrayLen = std::max(v->arrayLen, st.arrayLen);
  }
}

// ---------------------------------------------------------------------------
// Statements

Interpreter::Sig Interpreter::execList(const std::vector<NodePtr>& stmts) {
  for (const auto& s : stmts) {
    Sig sig = execStmt(*s);
    if (sig != Sig::Normal) return sig;
  }
  return Sig::Normal;
}

Interpreter::Sig Interpreter::execStmt(const UastNode& node) {
  switch (node.kind) {
    case NodeKind::Noop:
      return Sig::Normal;
    case NodeKind::ExpressionStatement:
      evaluate(*node.child("expression"));
      return Sig::Normal;
    case NodeKind::IfStatement:
      return execIf(node);
    case NodeKind::WhileStatement:
      return execWhile(node);
    case NodeKind::RangeStatement:
      return execRange(node);
    case NodeKind::TryStatement:
      return execTry(node);
    case NodeKind::BreakStatement:
      return Sig::Break;
    case NodeKind::ContinueStatement:
      return Sig::Continue;
    case NodeKind::ThrowStatement:
      evaluate(*node.child("argument"));
      return Sig::Throw;
    case NodeKind::ReturnStatement: {
      NodePtr arg = node.childOrNull("argument");
      ValuePtr v = arg ? evaluate(*arg) : makeNull();
      if (!frames_.empty()) {
        auto& frame = frames_.back();
        std::vector<PathCondition> conds(pi_.begin() + frame.entryPiSize, pi_.end());
        frame.returns.emplace_back(v, std::move(conds));
      }
      return Sig::Return;
    }
    case NodeKind::ImportStatement: {
      std::string mod = node.attrString("moduleName");
      auto dot = mod.rfind('.');
      std::string name = dot == std::string::npos ? mod : mod.substr(dot + 1);
      if (!cur_->vars.count(name)) cur_->vars[name] = makeSym(mod, node.loc);
      return Sig::Normal;
    }
    case NodeKind::VariableDeclaration: {
      std::string name = node.attrString("name");
      NodePtr init = node.childOrNull("init");
      cur_->vars[name] = init ? evaluate(*init) : makeUninit(node.loc);
      cur_->decls[name] = {node.attr("declKind") ? node.attrString("declKind") : "",
                           node.loc, ""};
      return Sig::Normal;
    }
    case NodeKind::FunctionDefinition: {
      ValuePtr fv = makeFunctionValue(node);
      std::string name = node.attr("name") ? node.attrString("name") : "";
      if (!name.empty()) cur_->vars[name] = fv;
      return Sig::Normal;
    }
    case NodeKind::ClassDefinition:
      declareClass(node);
      return Sig::Normal;
    case NodeKind::PackageDeclaration:
      return execList(node.list("body"));
    default:
      evaluate(node);
      return Sig::Normal;
  }
}

CondDecision Interpreter::evaluateCondition(const ValuePtr& v,
                                            const UastNode& testNode) const {
  std::string key = exprKey(testNode);
  for (const auto& pc : pi_)
    if (pc.key == key) return pc.polarity ? CondDecision::True : CondDecision::False;
  if (v) {
    auto t = v->truthiness();
    if (t) return *t ? CondDecision::True : CondDecision::False;
  }
  return CondDecision::Unknown;
}

Interpreter::Sig Interpreter::execIf(const UastNode& node) {
  const UastNode& test = *node.child("test");
  ValuePtr tv = evaluate(test);
  CondDecision d = evaluateCondition(tv, test);
  if (d == CondDecision::True) {
    counters.armEntries++;
    return execList(node.list("consequent"));
  }
  if (d == CondDecision::False) {
    if (node.hasList("alternate")) {
      counters.armEntries++;
      return execList(node.list("alternate"));
    }
    return Sig::Normal;
  }

  PathCondition cond{exprKey(test), true};
  Snapshot base = takeSnapshot();
  pi_.push_back({cond.key, true});
  counters.armEntries++;
  Sig sThen = execList(node.list("consequent"));
  pi_.pop_back();
  Snapshot thenSnap = takeSnapshot();
  restoreSnapshot(base);

  pi_.push_back({cond.key, false});
  Sig sElse = Sig::Normal;
  if (node.hasList("alternate")) {
    counters.armEntries++;
    sElse = execList(node.list("alternate"));
  }
  pi_.pop_back();

  if (sThen != Sig::Normal && sElse == Sig::Normal) return Sig::Normal;
  if (sThen == Sig::Normal && sElse != Sig::Normal) {
    restoreSnapshot(thenSnap);
    return Sig::Normal;
  }
  mergeSnapshot(cond, thenSnap);
  return sThen == sElse ? sThen : Sig::Normal;
}

Interpreter::Sig Interpreter::execWhile(const UastNode& node) {
  const UastNode& test = *node.child("test");
  std::vector<std::pair<PathCondition, Snapshot>> exits;
  Sig result = Sig::Normal;
  for (int iter = 0; iter <= config_.loopUnrollBound; ++iter) {
    ValuePtr tv = evaluate(test);
    CondDecision d = evaluateCondition(tv, test);
    if (d == CondDecision::False) break;
    if (d == CondDecision::Unknown)
      exits.push_back({{"loop@" + exprKey(test) + "#" + std::to_string(iter), true},
                       takeSnapshot()});
    if (iter == config_.loopUnrollBound) break;  // post-bound state is final arm
    counters.loopIterations++;
    Sig s = execList(node.list("body"));
    if (s == Sig::Break) break;
    if (s == Sig::Continue || s == Sig::Normal) continue;
    if (exits.empty()) return s;  // definite return/throw
    result = Sig::Normal;  // some paths exit the loop without returning
    break;
  }
  for (auto it = exits.rbegin(); it != exits.rend(); ++it)
    mergeSnapshot(it->first, it->second);
  return result;
}

Interpreter::Sig Interpreter::execRange(const UastNode& node) {
  const UastNode& target = *node.child("target");
  std::string var = target.attrString("name");
  ValuePtr iterVal = evaluate(*node.child("iterable"));

  bool concrete = iterVal && iterVal->tag == ValueTag::Obj && iterVal->isArray &&
                  iterVal->arrayLen <= config_.loopUnrollBound;
  if (concrete) {
    for (std::int64_t i = 0; i < iterVal->arrayLen; ++i) {
      counters.loopIterations++;
      auto it = iterVal->fields.find(std::to_string(i));
      cur_->vars[var] = it != iterVal->fields.end() ? it->second : makeSym(var);
      Sig s = execList(node.list("body"));
      if (s == Sig::Break) break;
      if (s == Sig::Continue || s == Sig::Normal) continue;
      return s;
    }
    return Sig::Normal;
  }

  // Unknown iteration count: element is a memoized Sym carrying the
  // container's (deep) taint; merge the post-states of 0..bound iterations.
  ValuePtr elem;
  if (iterVal && iterVal->tag == ValueTag::Obj && iterVal->isArray) {
    auto it = iterVal->fields.find("__elem");
    if (it != iterVal->fields.end()) {
      elem = it->second;
    } else {
      elem = makeSym("elem", node.loc);
      elem->taint = effectiveTaint(iterVal, pi_);
      iterVal->fields["__elem"] = elem;
    }
  } else {
    elem = readField(iterVal, "__elem", node.loc);
  }

  std::string baseKey = "range@" + exprKey(node) + "#";
  std::vector<std::pair<PathCondition, Snapshot>> exits;
  Sig result = Sig::Normal;
  for (int iter = 0; iter < config_.loopUnrollBound; ++iter) {
    exits.push_back({{baseKey + std::to_string(iter), true}, takeSnapshot()});
    counters.loopIterations++;
    cur_->vars[var] = elem;
    Sig s = execList(node.list("body"));
    if (s == Sig::Break) break;
    if (s == Sig::Continue || s == Sig::Normal) continue;
    result = Sig::Normal;
    break;
  }
  for (auto it = exits.rbegin(); it != exits.rend(); ++it)
    mergeSnapshot(it->first, it->second);
  return result;
}

Interpreter::Sig Interpreter::execTry(const UastNode& node) {
  Snapshot base = takeSnapshot();
  Sig sb = execList(node.list("block"));
  bool threw = sb == Sig::Throw;
  if (!node.hasList("handler")) return sb;

  Snapshot blockSnap = takeSnapshot();
  restoreSnapshot(base);
  if (node.attr("exceptionVar"))
    cur_->vars[node.attrString("exceptionVar")] = makeSym("exception", node.loc);
  Sig sh = execList(node.list("handler"));

  if (threw) return sh;  // try body never completes on this path
  if (sh != Sig::Normal && sb == Sig::Normal) {
    restoreSnapshot(blockSnap);
    return sb;
  }
  mergeSnapshot({"try@" + locKey(node.loc), true}, blockSnap);
  return sb == sh ? sb : Sig::Normal;
}

// ---------------------------------------------------------------------------
// Expressions

ValuePtr Interpreter::evaluate(const UastNode& node) {
  switch (node.kind) {
    case NodeKind::Literal: {
      std::string t = node.attrString("litType");
      auto v = node.attr("value");
      if (t == "number") {
        if (v && std::holds_alternative<std::int64_t>(*v))
          return makeInt(std::get<std::int64_t>(*v));
        if (v && std::holds_alternative<double>(*v))
          return makeNumber(std::get<double>(*v));
        return makeNumber(0);
      }
      if (t == "string")
        return makeString(v && std::holds_alternative<std::string>(*v)
                              ? std::get<std::string>(*v)
                              : "");
      if (t == "boolean")
        return makeBool(v && std::holds_alternative<bool>(*v) && std::get<bool>(*v));
      return makeNull();
    }
    case NodeKind::Identifier:
      return lookupIdentifier(node);
    case NodeKind::Sequence: {
      ValuePtr last = makeNull();
      for (const auto& el : node.list("elements")) {
        if (kindCategory(el->kind) == NodeCategory::Expression ||
            el->kind == NodeKind::Identifier || el->kind == NodeKind::Literal)
          last = evaluate(*el);
        else
          execStmt(*el);
      }
      return last;
    }
    case NodeKind::BinaryExpression: {
      std::string op = node.attrString("operator");
      if (op == "<-") {  // channel send (raw UAST documents only)
        ValuePtr ch = evaluate(*node.child("left"));
        ValuePtr v = evaluate(*node.child("right"));
        channelSend(ch, v, node.loc);
        return makeNull();
      }
      return evalBinary(node);
    }
    case NodeKind::UnaryExpression: {
      std::string op = node.attrString("operator");
      ValuePtr v = evaluate(*node.child("operand"));
      if (op == "<-") return channelReceive(v, node.loc);
      if (!v) return makeSym("unary");
      if (op == "!" || op == "not") {
        auto t = v->truthiness();
        ValuePtr r = t ? makeBool(!*t) : makeSym("!x");
        r->taint.mergeFrom(v->taint);
        return r;
      }
      if (op == "-") {
        auto n = v->asNumber();
        ValuePtr r;
        if (n && v->primValue.index() == 2)  // int64 stays integral
          r = makeInt(-std::get<std::int64_t>(v->primValue));
        else if (n)
          r = makeNumber(-*n);
        else
          r = makeSym("-x");
        r->taint.mergeFrom(v->taint);
        return r;
      }
      if (op == "+") return v;
      ValuePtr r = makeSym("unary");
      r->taint.mergeFrom(v->taint);
      return r;
    }
    case NodeKind::AwaitExpression: {
      ValuePtr v = evaluate(*node.child("argument"));
      if (v && v->tag == ValueTag::Obj && v->isPromise) {
        auto it = v->fields.find("__value");
        ValuePtr payload = it != v->fields.end() ? it->second : makeSym("awaited");
        return withStep(payload, TraceStep::Kind::Promise, node.loc, "await");
      }
      return v;
    }
    case NodeKind::YieldExpression: {
      if (node.childOrNull("argument")) evaluate(*node.child("argument"));
      return makeSym("yield", node.loc);  // conservative
    }
    case NodeKind::CallExpression:
      return evalCall(node);
    case NodeKind::NewExpression:
      return evalNew(node);
    case NodeKind::MemberAccess: {
      ValuePtr obj = evaluate(*node.child("object"));
      return readField(obj, node.attrString("property"), node.loc);
    }
    case NodeKind::IndexAccess: {
      ValuePtr obj = evaluate(*node.child("object"));
      ValuePtr idx = evaluate(*node.child("index"));
      if (idx) {
        if (idx->tag == ValueTag::Prim && idx->primType == "number" &&
            idx->primValue.index() == 2)
          return readField(obj, std::to_string(std::get<std::int64_t>(idx->primValue)),
                           node.loc);
        if (auto s = idx->asString()) return readField(obj, *s, node.loc);
      }
      // Unknown index: any element may be read.
      ValuePtr r = makeSym("elem", node.loc);
      if (obj) r->taint = effectiveTaint(obj, pi_);
      if (idx) r->taint.mergeFrom(idx->taint);
      return r;
    }
    case NodeKind::AssignmentExpression:
      return evalAssignment(node);
    case NodeKind::ConditionalExpression:
      return evalConditional(node);
    case NodeKind::ArrayLiteral: {
      ValuePtr arr = makeObj();
      arr->isArray = true;
      const auto& els = node.list("elements");
      for (std::size_t i = 0; i < els.size(); ++i)
        arr->fields[std::to_string(i)] = evaluate(*els[i]);
      arr->arrayLen = static_cast<std::int64_t>(els.size());
      return arr;
    }
    case NodeKind::ObjectLiteral: {
      ValuePtr obj = makeObj();
      for (const auto& entry : node.list("entries")) {
        const UastNode& target = *entry->child("target");
        std::string key;
        if (target.kind == NodeKind::Literal) {
          auto v = target.attr("value");
          key = v && std::holds_alternative<std::string>(*v)
                    ? std::get<std::string>(*v)
                    : "";
        } else if (target.kind == NodeKind::Identifier) {
          key = target.attrString("name");
        }
        obj->fields[key] = evaluate(*entry->child("value"));
      }
      return obj;
    }
    case NodeKind::FunctionDefinition:
      return makeFunctionValue(node);
    default:
      // Statement kinds in expression position (desugared sequences).
      execStmt(node);
      return makeNull();
  }
}

ValuePtr Interpreter::lookupIdentifier(const UastNode& node) {
  std::string name = node.attrString("name");
  ValuePtr v = cur_->lookup(name);
  if (!v) {
    // Memoized so repeated reads of the same free name alias one Sym.
    auto sym = makeSym(name, node.loc);
    global_->vars[name] = sym;
    return sym;
  }
  if (v->tag == ValueTag::Uninit) {
    warnings.push_back({node.loc, "use of '" + name + "' before definition"});
    return makeSym(name, node.loc);
  }
  return v;
}

ValuePtr Interpreter::makePhiFromLeaves(std::vector<PhiLeaf> leaves) {
  if (leaves.empty()) return makeSym("empty");
  if (leaves.size() == 1) return leaves[0].value;
  bool allEqual = true;
  for (std::size_t i = 1; i < leaves.size(); ++i)
    if (!valueEqual(leaves[0].value, leaves[i].value)) {
      allEqual = false;
      break;
    }
  if (allEqual) return leaves[0].value;
  std::size_t depth = 0;
  for (const auto& l : leaves) depth = std::max(depth, l.conds.size());
  if (depth > static_cast<std::size_t>(config_.pathMergeCap)) {
    auto sym = makeSym("merged");
    for (const auto& l : leaves)
      if (l.value) sym->taint.mergeFrom(l.value->taint);
    return sym;
  }
  auto phi = std::make_shared<Value>();
  phi->tag = ValueTag::Phi;
  phi->leaves = std::move(leaves);
  return phi;
}

ValuePtr Interpreter::evalBinary(const UastNode& node) {
  ValuePtr a = evaluate(*node.child("left"));
  ValuePtr b = evaluate(*node.child("right"));
  return binop(node.attrString("operator"), a, b, node.loc);
}

ValuePtr Interpreter::binop(const std::string& op, const ValuePtr& a,
                            const ValuePtr& b, const SourceLocation& loc) {
  (void)loc;
  std::vector<PhiLeaf> leaves;
  for (const auto& la : phiLeaves(a)) {
    for (const auto& lb : phiLeaves(b)) {
      if (conditionsContradict(la.conds, lb.conds)) continue;  // infeasible pair
      leaves.push_back({binopLeaf(op, la.value, lb.value),
                        mergeConds(la.conds, lb.conds)});
    }
  }
  return makePhiFromLeaves(std::move(leaves));
}

ValuePtr Interpreter::binopLeaf(const std::string& op, const ValuePtr& a,
                                const ValuePtr& b) {
  ValuePtr r;
  if (a && b && a->tag == ValueTag::Prim && b->tag == ValueTag::Prim) {
    auto an = a->asNumber();
    auto bn = b->asNumber();
    auto as = a->asString();
    auto bs = b->asString();
    bool bothInt = a->primValue.index() == 2 && b->primValue.index() == 2;
    if (an && bn) {
      double x = *an, y = *bn;
      if (op == "+") r = bothInt ? makeInt((std::int64_t)(x + y)) : makeNumber(x + y);
      else if (op == "-") r = bothInt ? makeInt((std::int64_t)(x - y)) : makeNumber(x - y);
      else if (op == "*") r = bothInt ? makeInt((std::int64_t)(x * y)) : makeNumber(x * y);
      else if (op == "/") r = y != 0 ? makeNumber(x / y) : makeSym("div0");
      else if (op == "//") r = y != 0 ? makeInt((std::int64_t)std::floor(x / y)) : makeSym("div0");
      else if (op == "%") r = y != 0 ? makeNumber(std::fmod(x, y)) : makeSym("mod0");
      else if (op == "==") r = makeBool(x == y);
      else if (op == "!=") r = makeBool(x != y);
      else if (op == "<") r = makeBool(x < y);
      else if (op == "<=") r = makeBool(x <= y);
      else if (op == ">") r = makeBool(x > y);
      else if (op == ">=") r = makeBool(x >= y);
    } else if (as && bs) {
      if (op == "+") r = makeString(*as + *bs);
      else if (op == "==") r = makeBool(*as == *bs);
      else if (op == "!=") r = makeBool(*as != *bs);
      else if (op == "<") r = makeBool(*as < *bs);
      else if (op == ">") r = makeBool(*as > *bs);
    } else if (op == "+" && (as || bs)) {
      // Mixed concatenation (from string interpolation): stringify the
      // non-string side when concrete.
      auto str = [](const ValuePtr& v) -> std::optional<std::string> {
        if (auto s = v->asString()) return s;
        if (auto n = v->asNumber()) {
          if (v->primValue.index() == 2)
            return std::to_string(std::get<std::int64_t>(v->primValue));
          std::string out = std::to_string(*n);
          return out;
        }
        if (v->primType == "boolean")
          return std::get<bool>(v->primValue) ? "true" : "false";
        return std::nullopt;
      };
      auto sa = str(a);
      auto sb = str(b);
      if (sa && sb) r = makeString(*sa + *sb);
    } else if (op == "==" || op == "!=") {
      bool eq = a->primType == b->primType && a->primValue == b->primValue;
      r = makeBool(op == "==" ? eq : !eq);
    }
    if (!r && (op == "&&" || op == "||")) {
      auto at = a->truthiness();
      if (at) r = (op == "&&") == *at ? b : a;
    }
  }
  if (!r && (op == "&&" || op == "||") && a) {
    auto at = a->truthiness();
    if (at) r = (op == "&&") == *at ? b : a;
  }
  if (!r) r = makeSym("binop:" + op);
  // Operator propagation: results union operand taint.
  if (a) r->taint.mergeFrom(effectiveTaint(a, pi_));
  if (b) r->taint.mergeFrom(effectiveTaint(b, pi_));
  return r;
}

ValuePtr Interpreter::evalConditional(const UastNode& node) {
  const UastNode& test = *node.child("test");
  ValuePtr tv = evaluate(test);
  CondDecision d = evaluateCondition(tv, test);
  if (d == CondDecision::True) return evaluate(*node.child("consequent"));
  if (d == CondDecision::False) return evaluate(*node.child("alternate"));

  PathCondition cond{exprKey(test), true};
  Snapshot base = takeSnapshot();
  pi_.push_back({cond.key, true});
  ValuePtr va = evaluate(*node.child("consequent"));
  pi_.pop_back();
  Snapshot thenSnap = takeSnapshot();
  restoreSnapshot(base);
  pi_.push_back({cond.key, false});
  ValuePtr vb = evaluate(*node.child("alternate"));
  pi_.pop_back();
  mergeSnapshot(cond, thenSnap);
  return makePhi(cond, va, vb, config_.pathMergeCap);
}

ValuePtr Interpreter::evalAssignment(const UastNode& node) {
  ValuePtr v = evaluate(*node.child("value"));
  const UastNode& target = *node.child("target");
  switch (target.kind) {
    case NodeKind::Identifier: {
      std::string name = target.attrString("name");
      Scope* def = cur_->findDefining(name);
      Scope* tgt = def ? def : cur_.get();
      tgt->vars[name] =
          withStep(v, TraceStep::Kind::Assign, node.loc, "assigned to " + name);
      break;
    }
    case NodeKind::MemberAccess: {
      ValuePtr obj = evaluate(*target.child("object"));
      writeField(obj, target.attrString("property"), v, node.loc);
      break;
    }
    case NodeKind::IndexAccess: {
      ValuePtr obj = evaluate(*target.child("object"));
      ValuePtr idx = evaluate(*target.child("index"));
      std::string key;
      if (idx && idx->tag == ValueTag::Prim && idx->primType == "number" &&
          idx->primValue.index() == 2)
        key = std::to_string(std::get<std::int64_t>(idx->primValue));
      else if (idx && idx->asString())
        key = *idx->asString();
      else
        key = "__elem";  // weak update under unknown index
      writeField(obj, key, v, node.loc);
      if (obj && obj->isArray && key != "__elem") {
        std::int64_t i = 0;
        try { i = std::stoll(key); } catch (...) { i = -1; }
        if (i >= obj->arrayLen) obj->arrayLen = i + 1;
      }
      break;
    }
    default:
      break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Fields

ValuePtr Interpreter::readField(const ValuePtr& obj, const std::string& f,
                                const SourceLocation& loc) {
  if (!obj) return makeSym(f, loc);
  if (obj->tag == ValueTag::Phi) {
    std::vector<PhiLeaf> leaves;
    for (const auto& leaf : obj->leaves)
      leaves.push_back({readField(leaf.value, f, loc), leaf.conds});
    return makePhiFromLeaves(std::move(leaves));
  }
  if (obj->tag == ValueTag::Prim) return makeSym(f, loc);

  auto it = obj->fields.find(f);
  if (it != obj->fields.end()) return it->second;

  for (ValuePtr p = obj->protoLink; p; p = p->protoLink) {
    auto pit = p->fields.find(f);
    if (pit != p->fields.end()) {
      if (p->isPrototype)
        return withStep(pit->second, TraceStep::Kind::Prototype, loc,
                        "read '" + f + "' through prototype chain");
      return pit->second;
    }
  }

  // Absent: memoized Sym, field-sensitive; inherits the container's taint so
  // reads out of tainted symbolic containers stay tainted.
  std::string parent = obj->tag == ValueTag::Sym && !obj->symName.empty()
                           ? obj->symName
                           : "o";
  auto sym = makeSym(parent + "." + f, loc);
  if (obj->taint.tainted()) {
    sym->taint = obj->taint;
    sym->taint.addStep(TraceStep::Kind::Field, loc, "read field '" + f + "'");
  }
  obj->fields[f] = sym;
  return sym;
}

void Interpreter::writeField(const ValuePtr& obj, const std::string& f,
                             const ValuePtr& v, const SourceLocation& loc) {
  if (!obj) return;
  if (obj->tag == ValueTag::Phi) {
    for (const auto& leaf : obj->leaves) writeField(leaf.value, f, v, loc);
    return;
  }
  if (obj->tag == ValueTag::Prim) return;
  TraceStep::Kind kind =
      obj->isPrototype ? TraceStep::Kind::Prototype : TraceStep::Kind::Field;
  obj->fields[f] = withStep(v, kind, loc, "wrote field '" + f + "'");
}

// ---------------------------------------------------------------------------
// Calls

ValuePtr Interpreter::evalCall(const UastNode& node) {
  const UastNode& calleeNode = *node.child("callee");
  std::string qname = qualifiedName(calleeNode);

  std::vector<ValuePtr> args;
  auto evalArgs = [&]() {
    if (!args.empty()) return;
    for (const auto& a : node.list("arguments")) args.push_back(evaluate(*a));
  };

  if (!qname.empty()) {
    if (const SourceRule* src = rules_.matchCallSource(qname)) {
      evalArgs();
      auto sym = makeSym("source:" + qname, node.loc);
      sym->taint.labels.insert(src->id);
      sym->taint.trace.push_back(
          {TraceStep::Kind::Source, node.loc, "source '" + qname + "'"});
      return sym;
    }
    if (rules_.matchSanitizer(qname)) {
      evalArgs();
      if (args.empty()) return makeNull();
      return clearTaintCopy(args[0]);  // value-producing: argument unchanged
    }
    if (const SinkRule* sink = rules_.matchSink(qname)) {
      evalArgs();
      checkSink(*sink, qname, args, node.loc);
      return makeSym("sink:" + qname, node.loc);
    }
    // Builtin models.
    if (qname == "print") {
      evalArgs();
      return makeNull();
    }
    if (qname == "len") {
      evalArgs();
      if (!args.empty() && args[0] && args[0]->isArray) return makeInt(args[0]->arrayLen);
      return makeSym("len", node.loc);
    }
    if (qname == "str" || qname == "int") {
      evalArgs();
      ValuePtr r = makeSym(qname, node.loc);
      if (!args.empty() && args[0]) {
        if (qname == "str" && args[0]->tag == ValueTag::Prim) {
          if (auto s = args[0]->asString()) r = makeString(*s);
          else if (auto n = args[0]->asNumber())
            r = makeString(args[0]->primValue.index() == 2
                               ? std::to_string(std::get<std::int64_t>(args[0]->primValue))
                               : std::to_string(*n));
        }
        r->taint.mergeFrom(args[0]->taint);
      }
      return r;
    }
    if (qname == "range") {
      evalArgs();
      if (!args.empty() && args[0] && args[0]->tag == ValueTag::Prim) {
        auto n = args[0]->asNumber();
        if (n && *n >= 0 && *n <= 16) {
          ValuePtr arr = makeObj();
          arr->isArray = true;
          arr->arrayLen = static_cast<std::int64_t>(*n);
          for (std::int64_t i = 0; i < arr->arrayLen; ++i)
            arr->fields[std::to_string(i)] = makeInt(i);
          return arr;
        }
      }
      return makeSym("range", node.loc);
    }
    if (qname == "Promise.resolve") {
      evalArgs();
      return makePromise(args.empty() ? makeNull() : args[0], node.loc);
    }
  }

  if (calleeNode.kind == NodeKind::MemberAccess) {
    ValuePtr recv = evaluate(*calleeNode.child("object"));
    std::string prop = calleeNode.attrString("property");
    if (recv && recv->tag == ValueTag::Obj) {
      if ((prop == "append" || prop == "push") && recv->isArray) {
        evalArgs();
        for (const auto& a : args)
          recv->fields[std::to_string(recv->arrayLen++)] = a;
        return makeNull();
      }
      if (prop == "then" && recv->isPromise) {
        evalArgs();
        auto it = recv->fields.find("__value");
        ValuePtr payload =
            it != recv->fields.end() ? it->second : makeSym("awaited", node.loc);
        payload = withStep(payload, TraceStep::Kind::Promise, node.loc,
                           "delivered to then-callback");
        ValuePtr res = args.empty()
                           ? makeNull()
                           : callValue(args[0], {payload}, node.loc);
        return makePromise(res, node.loc);  // carries the callback's return taint
      }
    }
    evalArgs();
    ValuePtr f = readField(recv, prop, calleeNode.loc);
    return callValue(f, args, node.loc, recv);
  }

  ValuePtr fv = evaluate(calleeNode);
  evalArgs();
  return callValue(fv, args, node.loc);
}

ValuePtr Interpreter::callValue(const ValuePtr& callee, std::vector<ValuePtr> args,
                                const SourceLocation& loc, const ValuePtr& receiver) {
  if (callee && callee->isClass())
    return instantiateClass(callee, std::move(args), loc);
  if (!callee || !callee->isFunction())
    return unknownCall(callee && callee->tag == ValueTag::Sym ? callee->symName : "",
                       args, callee, loc);

  if (callDepth_ >= config_.maxCallDepth) {
    counters.depthLimitedCalls++;
    return makeSym("depth-limited call", loc);
  }
  counters.callDescends++;

  const UastNode* fn = callee->fclos->fn;
  ScopePtr fnScope = makeScope(ScopeType::Fclos, callee->fclos->defScope);
  fnScope->fnDef = fn;

  const auto& params = fn->list("params");
  std::size_t argIdx = 0;
  std::size_t paramIdx = 0;
  bool pyMethod = receiver && fn->langTag == "minipy" && fn->attrBool("isMethod");
  if (pyMethod && !params.empty()) {
    fnScope->vars[params[0]->attrString("name")] = receiver;
    paramIdx = 1;
  }
  if (receiver && fn->langTag == "minijs" && !fn->attrBool("lexicalThis"))
    fnScope->vars["this"] = receiver;

  for (; paramIdx < params.size(); ++paramIdx) {
    const UastNode& p = *params[paramIdx];
    ValuePtr v;
    if (argIdx < args.size()) {
      v = withStep(args[argIdx++], TraceStep::Kind::CallArg, p.loc,
                   "passed as '" + p.attrString("name") + "'");
    } else if (p.childOrNull("init")) {
      v = evaluate(*p.child("init"));
    } else {
      v = makeUninit(p.loc);
    }
    fnScope->vars[p.attrString("name")] = v;
    fnScope->decls[p.attrString("name")] = {"param", p.loc, ""};
  }

  ScopePtr savedCur = cur_;
  cur_ = fnScope;
  callDepth_++;
  frames_.push_back({{}, pi_.size()});
  execList(fn->list("body"));
  Frame frame = std::move(frames_.back());
  frames_.pop_back();
  callDepth_--;
  cur_ = savedCur;

  ValuePtr ret;
  if (frame.returns.empty()) {
    ret = makeNull();
  } else if (frame.returns.size() == 1) {
    ret = frame.returns[0].first;
  } else {
    std::vector<PhiLeaf> leaves;
    for (auto& [v, conds] : frame.returns) leaves.push_back({v, std::move(conds)});
    ret = makePhiFromLeaves(std::move(leaves));
  }
  ret = withStep(ret, TraceStep::Kind::CallReturn, loc, "returned from call");
  if (fn->attrBool("isAsync")) return makePromise(ret, loc);
  return ret;
}

ValuePtr Interpreter::unknownCall(const std::string& name,
                                  const std::vector<ValuePtr>& args,
                                  const ValuePtr& callee, const SourceLocation& loc) {
  // Conservative model: tainted any-argument (or tainted callee value, e.g. a
  // method of a tainted symbolic object) -> tainted Sym return. The receiver
  // is never tainted by the call.
  auto sym = makeSym(name.empty() ? "call" : "call:" + name, loc);
  for (const auto& a : args)
    if (a) sym->taint.mergeFrom(effectiveTaint(a, pi_));
  if (callee) sym->taint.mergeFrom(callee->taint);
  if (sym->taint.tainted())
    sym->taint.addStep(TraceStep::Kind::CallReturn, loc,
                       "returned from unknown call" +
                           (name.empty() ? "" : " '" + name + "'"));
  return sym;
}

void Interpreter::checkSink(const SinkRule& rule, const std::string& qname,
                            const std::vector<ValuePtr>& args,
                            const SourceLocation& loc) {
  for (int idx : rule.taintedArgs) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= args.size()) continue;
    Taint t = effectiveTaint(args[idx], pi_);
    if (!t.tainted()) continue;
    Finding f;
    f.ruleId = rule.id;
    f.sinkLoc = loc;
    f.trace = t.trace;
    f.trace.push_back({TraceStep::Kind::Sink, loc,
                       "sink '" + qname + "' argument " + std::to_string(idx)});
    f.sourceLoc = f.trace.front().loc;
    std::string labels;
    for (const auto& l : t.labels) labels += (labels.empty() ? "" : ", ") + l;
    f.message = "tainted data (" + labels + ") reaches sink '" + qname + "'";
    std::string key = locKey(f.sourceLoc) + "|" + locKey(f.sinkLoc) + "|" + f.ruleId;
    if (dedup_.insert(key).second) findings.push_back(std::move(f));
  }
}

// ---------------------------------------------------------------------------
// Functions, classes, channels, promises

ValuePtr Interpreter::makeFunctionValue(const UastNode& node) {
  ValuePtr fv = makeObj();
  fv->fclos = FclosInfo{&node, cur_};
  if (config_.handlersEnabled && node.langTag == "minijs" &&
      !node.attrBool("lexicalThis") && !node.attrBool("isMethod"))
    HandlerRegistry::instance().jsInjectPrototype(fv);
  fnValues_[&node] = fv;
  return fv;
}

void Interpreter::declareClass(const UastNode& node) {
  ValuePtr classObj = makeObj();
  classObj->classDef = &node;

  std::vector<ValuePtr> baseVals;
  for (const auto& b : node.list("bases")) baseVals.push_back(evaluate(*b));

  // Own members first (they win over inherited copies).
  for (const auto& member : node.list("body")) {
    if (member->kind == NodeKind::FunctionDefinition) {
      ValuePtr mv = makeObj();
      mv->fclos = FclosInfo{member.get(), cur_};
      fnValues_[member.get()] = mv;
      classObj->fields[member->attrString("name")] = mv;
    } else if (member->kind == NodeKind::VariableDeclaration) {
      NodePtr init = member->childOrNull("init");
      classObj->fields[member->attrString("name")] =
          init ? evaluate(*init) : makeNull();
    } else if (member->kind == NodeKind::ExpressionStatement &&
               member->child("expression")->kind == NodeKind::AssignmentExpression) {
      const UastNode& asg = *member->child("expression");
      if (asg.child("target")->kind == NodeKind::Identifier)
        classObj->fields[asg.child("target")->attrString("name")] =
            evaluate(*asg.child("value"));
    }
  }

  if (node.langTag == "minipy") {
    if (config_.handlersEnabled)
      HandlerRegistry::instance().pyResolveInheritance(classObj, baseVals);
  } else if (!baseVals.empty() && baseVals[0] && baseVals[0]->tag == ValueTag::Obj) {
    classObj->protoLink = baseVals[0];  // class-extends chain lookup
  }

  cur_->vars[node.attrString("name")] = classObj;
}

ValuePtr Interpreter::instantiateClass(const ValuePtr& classObj,
                                       std::vector<ValuePtr> args,
                                       const SourceLocation& loc) {
  ValuePtr inst = makeObj();
  inst->protoLink = classObj;
  const char* ctorName =
      classObj->classDef && classObj->classDef->langTag == "minijs" ? "constructor"
                                                                    : "__init__";
  ValuePtr ctor;
  for (ValuePtr c = classObj; c; c = c->protoLink) {
    auto it = c->fields.find(ctorName);
    if (it != c->fields.end()) {
      ctor = it->second;
      break;
    }
  }
  if (ctor && ctor->isFunction()) callValue(ctor, std::move(args), loc, inst);
  return inst;
}

ValuePtr Interpreter::evalNew(const UastNode& node) {
  const UastNode& calleeNode = *node.child("callee");
  if (calleeNode.kind == NodeKind::ChanType) {
    ValuePtr ch = makeObj();
    ch->isChannel = true;
    return ch;
  }
  std::vector<ValuePtr> args;
  for (const auto& a : node.list("arguments")) args.push_back(evaluate(*a));
  ValuePtr ctor = evaluate(calleeNode);
  if (ctor && ctor->isClass()) return instantiateClass(ctor, std::move(args), node.loc);
  if (ctor && ctor->isFunction()) {
    ValuePtr inst = makeObj();
    auto it = ctor->fields.find("prototype");
    // Only handler-injected prototype objects participate in the chain;
    // in agnostic-only mode the memoized Sym placeholder does not link.
    if (it != ctor->fields.end() && it->second && it->second->isPrototype)
      inst->protoLink = it->second;
    callValue(ctor, std::move(args), node.loc, inst);
    return inst;
  }
  return unknownCall(qualifiedName(calleeNode), args, ctor, node.loc);
}

void Interpreter::channelSend(const ValuePtr& ch, const ValuePtr& v,
                              const SourceLocation& loc) {
  if (!ch || ch->tag != ValueTag::Obj || !ch->isChannel || !v) return;
  // Single merged cell: taint accumulates across sends, no ordering.
  ValuePtr cell = withStep(v, TraceStep::Kind::Channel, loc, "sent on channel");
  auto it = ch->fields.find("__cell");
  if (it != ch->fields.end() && it->second) {
    if (cell->tag == ValueTag::Obj) {
      ch->taint.mergeFrom(it->second->taint);
    } else {
      auto copy = std::make_shared<Value>(*cell);
      copy->taint.mergeFrom(it->second->taint);
      cell = copy;
    }
  }
  ch->fields["__cell"] = cell;
  if (v->taint.tainted()) {
    ch->taint.mergeFrom(v->taint);
    ch->taint.addStep(TraceStep::Kind::Channel, loc, "channel received tainted send");
  }
}

ValuePtr Interpreter::channelReceive(const ValuePtr& ch, const SourceLocation& loc) {
  if (!ch || ch->tag != ValueTag::Obj || !ch->isChannel)
    return makeSym("recv", loc);
  auto it = ch->fields.find("__cell");
  if (it == ch->fields.end() || !it->second) return makeSym("recv", loc);
  return withStep(it->second, TraceStep::Kind::Channel, loc, "received from channel");
}

ValuePtr Interpreter::makePromise(const ValuePtr& payload, const SourceLocation& loc) {
  ValuePtr p = makeObj();
  p->isPromise = true;
  p->fields["__value"] = payload;
  if (payload && payload->taint.tainted()) {
    p->taint.mergeFrom(payload->taint);
    p->taint.addStep(TraceStep::Kind::Promise, loc, "resolved with tainted value");
  }
  return p;
}

}  // namespace uast
