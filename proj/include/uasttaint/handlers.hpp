#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uasttaint/value.hpp"

namespace uast {

enum class HookPoint { ClassDefinition, MethodResolution, CallPre, CallPost };

const char* hookPointName(HookPoint h);

struct HandlerRegistration {
  std::string langTag;
  HookPoint hook = HookPoint::ClassDefinition;
  std::string name;
  bool implemented = true;
};

struct NotImplementedHandler : std::logic_error {
  using std::logic_error::logic_error;
};

// Language-specific semantics live here so the interpreter core stays
// language-agnostic; the registry is immutable after startup. The engine
// skips every dispatch when handlers are disabled.
class HandlerRegistry {
 public:
  static const HandlerRegistry& instance();

  const std::vector<HandlerRegistration>& registrations() const { return regs_; }
  bool has(const std::string& langTag, HookPoint hook) const;

  // MiniPy: copy base-class members into the class object, left-to-right with
  // first-wins on conflicts (MRO approximation); members already present on
  // the class (its own definitions) take precedence over every copy.
  void pyResolveInheritance(const ValuePtr& classObj,
                            const std::vector<ValuePtr>& baseVals) const;

  // MiniJS: attach a shared `prototype` object to a constructor value,
  // pre-populated with modeled builtins.
  void jsInjectPrototype(const ValuePtr& funcVal) const;

  // Java/Go hooks keep the registry shape but are not implemented.
  void dispatchStub(const std::string& langTag, HookPoint hook) const;

 private:
  HandlerRegistry();
  std::vector<HandlerRegistration> regs_;
};

}  // namespace uast
