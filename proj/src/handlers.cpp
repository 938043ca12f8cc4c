#include "uasttaint/handlers.hpp"

namespace uast {

const char* hookPointName(HookPoint h) {
  switch (h) {
    case HookPoint::ClassDefinition: return "classDefinition";
    case HookPoint::MethodResolution: return "methodResolution";
    case HookPoint::CallPre: return "callPre";
    case HookPoint::CallPost: return "callPost";
  }
  return "?";
}

HandlerRegistry::HandlerRegistry() {
  regs_ = {
      {"minipy", HookPoint::ClassDefinition, "py-inheritance-copy", true},
      {"minijs", HookPoint::ClassDefinition, "js-prototype-injection", true},
      {"java", HookPoint::ClassDefinition, "java-data-annotation", false},
      {"go", HookPoint::MethodResolution, "go-interface-satisfaction", false},
  };
}

const HandlerRegistry& HandlerRegistry::instance() {
  static HandlerRegistry registry;
  return registry;
}

bool HandlerRegistry::has(const std::string& langTag, HookPoint hook) const {
  for (const auto& r : regs_)
    if (r.langTag == langTag && r.hook == hook) return true;
  return false;
}

void HandlerRegistry::pyResolveInheritance(
    const ValuePtr& classObj, const std::vector<ValuePtr>& baseVals) const {
  if (!classObj) return;
  std::map<std::string, ValuePtr> inherited;
  for (const auto& base : baseVals) {
    // Unresolvable bases (Syms) contribute nothing; missing members resolve
    // to memoized Syms at read time.
    if (!base || base->tag != ValueTag::Obj) continue;
    for (const auto& [name, v] : base->fields) inherited.try_emplace(name, v);
  }
  // Own members were installed first and win over every copy.
  for (const auto& [name, v] : inherited) classObj->fields.try_emplace(name, v);
}

void HandlerRegistry::jsInjectPrototype(const ValuePtr& funcVal) const {
  if (!funcVal || funcVal->fields.count("prototype")) return;
  auto proto = makeObj();
  proto->isPrototype = true;
  proto->fields["toString"] = makeSym("toString");
  funcVal->fields["prototype"] = proto;
}

void HandlerRegistry::dispatchStub(const std::string& langTag, HookPoint hook) const {
  for (const auto& r : regs_)
    if (r.langTag == langTag && r.hook == hook && !r.implemented)
      throw NotImplementedHandler("handler '" + r.name + "' (" + langTag + "/" +
                                  hookPointName(hook) + ") is not implemented");
}

}  // namespace uast
