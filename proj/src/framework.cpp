#include "uasttaint/framework.hpp"

namespace uast {

namespace {

ValuePtr taintedRequestField(const std::string& path, const std::string& sourceId,
                             const SourceLocation& loc) {
  auto sym = makeSym(path, loc);
  sym->taint.labels.insert(sourceId);
  sym->taint.trace.push_back(
      {TraceStep::Kind::Source, loc, "framework source '" + path + "'"});
  return sym;
}

std::string routeFromArg(const UastNode& arg) {
  if (arg.kind == NodeKind::Literal) {
    auto v = arg.attr("value");
    if (v && std::holds_alternative<std::string>(*v))
      return std::get<std::string>(*v);
  }
  return "<dynamic>";
}

// `h = app.route("/u")(h)` — the decorator-desugared rebinding pattern.
const UastNode* matchFlaskRoute(const UastNode& stmt, std::string& routeOut,
                                std::string& nameOut) {
  if (stmt.kind != NodeKind::ExpressionStatement) return nullptr;
  const UastNode& expr = *stmt.child("expression");
  if (expr.kind != NodeKind::AssignmentExpression) return nullptr;
  const UastNode& target = *expr.child("target");
  const UastNode& value = *expr.child("value");
  if (target.kind != NodeKind::Identifier ||
      value.kind != NodeKind::CallExpression)
    return nullptr;
  const UastNode& inner = *value.child("callee");
  if (inner.kind != NodeKind::CallExpression) return nullptr;
  const UastNode& dec = *inner.child("callee");
  if (dec.kind != NodeKind::MemberAccess || dec.attrString("property") != "route")
    return nullptr;
  const auto& outerArgs = value.list("arguments");
  if (outerArgs.size() != 1 || outerArgs[0]->kind != NodeKind::Identifier ||
      outerArgs[0]->attrString("name") != target.attrString("name"))
    return nullptr;
  const auto& routeArgs = inner.list("arguments");
  routeOut = routeArgs.empty() ? "<dynamic>" : routeFromArg(*routeArgs[0]);
  nameOut = target.attrString("name");
  return &stmt;
}

}  // namespace

std::string detectFramework(const NodePtr& uast) {
  std::string found;
  walk(uast, [&](const UastNode& n, const std::string&, int) {
    if (n.kind != NodeKind::ImportStatement) return;
    std::string mod = n.attrString("moduleName");
    if (mod == "flaskish") found = "miniflask";
    if (mod == "expressish") found = "miniexpress";
  });
  return found;
}

std::vector<EntryPoint> discoverEntrypoints(const NodePtr& uast,
                                            const std::string& framework,
                                            const Ruleset& rules) {
  std::vector<EntryPoint> entries;
  std::string fw = framework == "auto" ? detectFramework(uast) : framework;

  std::map<std::string, const UastNode*> namedFns;
  const auto& body = uast->list("body");
  for (const auto& stmt : body)
    if (stmt->kind == NodeKind::FunctionDefinition && stmt->attr("name"))
      namedFns[stmt->attrString("name")] = stmt.get();

  if (fw == "miniflask") {
    for (const auto& stmt : body) {
      std::string route, name;
      if (!matchFlaskRoute(*stmt, route, name)) continue;
      auto it = namedFns.find(name);
      if (it == namedFns.end()) continue;
      EntryPoint ep{it->second, "miniflask", route, {}};
      for (const auto& p : it->second->list("params"))
        ep.seededParams.emplace_back(p->attrString("name"), "http-param");
      ep.seededParams.emplace_back("request.args", "http-request");
      ep.seededParams.emplace_back("request.form", "http-request");
      ep.seededParams.emplace_back("request.json", "http-request");
      entries.push_back(std::move(ep));
    }
  } else if (fw == "miniexpress") {
    for (const auto& stmt : body) {
      if (stmt->kind != NodeKind::ExpressionStatement) continue;
      const UastNode& expr = *stmt->child("expression");
      if (expr.kind != NodeKind::CallExpression) continue;
      const UastNode& callee = *expr.child("callee");
      if (callee.kind != NodeKind::MemberAccess) continue;
      std::string prop = callee.attrString("property");
      if (prop != "get" && prop != "post") continue;
      const auto& args = expr.list("arguments");
      if (args.size() < 2) continue;
      const UastNode* fn = nullptr;
      if (args[1]->kind == NodeKind::FunctionDefinition) {
        fn = args[1].get();
      } else if (args[1]->kind == NodeKind::Identifier) {
        auto it = namedFns.find(args[1]->attrString("name"));
        if (it != namedFns.end()) fn = it->second;
      }
      if (!fn) continue;
      EntryPoint ep{fn, "miniexpress", routeFromArg(*args[0]), {}};
      const auto& params = fn->list("params");
      if (!params.empty()) {
        std::string req = params[0]->attrString("name");
        ep.seededParams.emplace_back(req + ".query", "http-request");
        ep.seededParams.emplace_back(req + ".body", "http-request");
        ep.seededParams.emplace_back(req + ".params", "http-request");
      }
      entries.push_back(std::move(ep));
    }
  }

  // Custom frameworks: param-kind sources name the tainted parameters as
  // "function.param" patterns.
  bool hasParamSources = false;
  for (const auto& s : rules.sources)
    if (s.kind == "param") hasParamSources = true;
  if (hasParamSources) {
    for (const auto& [name, fn] : namedFns) {
      EntryPoint ep{fn, "custom", "<dynamic>", {}};
      for (const auto& p : fn->list("params")) {
        std::string pname = p->attrString("name");
        for (const auto& s : rules.sources) {
          if (s.kind != "param") continue;
          if (patternMatches(s.pattern, name + "." + pname) ||
              patternMatches(s.pattern, pname))
            ep.seededParams.emplace_back(pname, s.id);
        }
      }
      if (!ep.seededParams.empty()) entries.push_back(std::move(ep));
    }
  }
  return entries;
}

void seedGlobals(Interpreter& interp, const EntryPoint& entry) {
  if (entry.framework != "miniflask") return;
  auto request = makeObj();
  for (const char* field : {"args", "form", "json"})
    request->fields[field] = taintedRequestField(std::string("request.") + field,
                                                 "http-request",
                                                 entry.function->loc);
  interp.globalScope()->vars["request"] = request;
}

void runEntry(Interpreter& interp, const EntryPoint& entry) {
  ValuePtr fnVal = interp.functionValue(entry.function);
  if (!fnVal) return;  // module interpretation never reached the definition

  const auto& params = entry.function->list("params");
  std::vector<ValuePtr> args;
  for (const auto& p : params) {
    std::string pname = p->attrString("name");
    ValuePtr arg;
    if (entry.framework == "miniexpress" && args.empty()) {
      // First parameter is the request object with tainted fields.
      arg = makeObj();
      for (const char* field : {"query", "body", "params"})
        arg->fields[field] = taintedRequestField(pname + "." + field,
                                                 "http-request", p->loc);
    } else {
      for (const auto& [seedName, sourceId] : entry.seededParams) {
        if (seedName != pname) continue;
        arg = makeSym(pname, p->loc);
        arg->taint.labels.insert(sourceId);
        arg->taint.trace.push_back({TraceStep::Kind::Source, p->loc,
                                    "entry parameter '" + pname + "'"});
        break;
      }
    }
    if (!arg) arg = makeSym(pname, p->loc);
    args.push_back(std::move(arg));
  }
  interp.callValue(fnVal, std::move(args), entry.function->loc);
}

}  // namespace uast
