#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "uasttaint/frontend.hpp"
#include "uasttaint/handlers.hpp"
#include "uasttaint/interp.hpp"
#include "uasttaint/rules.hpp"

using namespace uast;

namespace {

std::unique_ptr<Interpreter> run(const std::string& src, const std::string& lang,
                                 bool handlers = true) {
  AnalysisConfig config;
  config.handlersEnabled = handlers;
  auto interp = std::make_unique<Interpreter>(config, defaultRuleset());
  interp->runModule(parseToUast(src, lang, "t." + lang));
  return interp;
}

}  // namespace

TEST_CASE("registry lists handlers for four languages") {
  const auto& regs = HandlerRegistry::instance().registrations();
  bool py = false, js = false, javaStub = false, goStub = false;
  for (const auto& r : regs) {
    if (r.langTag == "minipy" && r.implemented) py = true;
    if (r.langTag == "minijs" && r.implemented) js = true;
    if (r.langTag == "java" && !r.implemented) javaStub = true;
    if (r.langTag == "go" && !r.implemented) goStub = true;
    CHECK(!r.name.empty());
    CHECK(hookPointName(r.hook) != nullptr);
  }
  CHECK(py);
  CHECK(js);
  CHECK(javaStub);
  CHECK(goStub);
  CHECK(HandlerRegistry::instance().has("minipy", HookPoint::ClassDefinition));
  CHECK(!HandlerRegistry::instance().has("cobol", HookPoint::ClassDefinition));
}

TEST_CASE("unimplemented language stubs throw when dispatched") {
  const auto& reg = HandlerRegistry::instance();
  CHECK_THROWS_AS(reg.dispatchStub("java", HookPoint::ClassDefinition),
                  NotImplementedHandler);
  CHECK_THROWS_AS(reg.dispatchStub("go", HookPoint::MethodResolution),
                  NotImplementedHandler);
}

TEST_CASE("pyResolveInheritance copies left-to-right, first wins") {
  ValuePtr cls = makeObj();
  cls->fields["own"] = makeString("own");
  ValuePtr a = makeObj();
  a->fields["m"] = makeString("from-a");
  a->fields["own"] = makeString("shadowed");
  ValuePtr b = makeObj();
  b->fields["m"] = makeString("from-b");
  b->fields["extra"] = makeString("from-b");
  HandlerRegistry::instance().pyResolveInheritance(cls, {a, b});
  CHECK(cls->fields.at("own")->asString() == "own");      // own member wins
  CHECK(cls->fields.at("m")->asString() == "from-a");     // leftmost base wins
  CHECK(cls->fields.at("extra")->asString() == "from-b");
}

TEST_CASE("jsInjectPrototype attaches a marked prototype object") {
  ValuePtr fn = makeObj();
  HandlerRegistry::instance().jsInjectPrototype(fn);
  REQUIRE(fn->fields.count("prototype") == 1);
  ValuePtr proto = fn->fields.at("prototype");
  CHECK(proto->tag == ValueTag::Obj);
  CHECK(proto->isPrototype);
  CHECK(proto->fields.count("toString") == 1);
}

TEST_CASE("minipy inherited method resolves only with handlers on") {
  const char* src =
      "class Base:\n"
      "    def get(self):\n"
      "        return source()\n"
      "class Child(Base):\n"
      "    pass\n"
      "c = Child()\n"
      "exec(c.get())\n";
  CHECK(run(src, "minipy", true)->findings.size() == 1);
  CHECK(run(src, "minipy", false)->findings.empty());
}

TEST_CASE("instances of sibling subclasses share the copied method") {
  auto interp = run(
      "class Base:\n"
      "    def get(self):\n"
      "        return source()\n"
      "class A(Base):\n"
      "    pass\n"
      "class B(Base):\n"
      "    pass\n"
      "exec(A().get())\n"
      "db.query(B().get())\n",
      "minipy");
  CHECK(interp->findings.size() == 2);
}

TEST_CASE("minijs constructor prototypes are shared across instances") {
  auto interp = run(
      "function F() {}\n"
      "let a = new F();\n"
      "let b = new F();\n"
      "F.prototype.v = source();\n"
      "exec(a.v);\n"
      "db.query(b.v);\n",
      "minijs");
  CHECK(interp->findings.size() == 2);
}

TEST_CASE("prototype flows vanish without handlers; own fields keep working") {
  const char* src =
      "function F() {}\n"
      "F.prototype.v = source();\n"
      "let o = new F();\n"
      "exec(o.v);\n"
      "o.w = source();\n"
      "db.query(o.w);\n";
  auto full = run(src, "minijs", true);
  CHECK(full->findings.size() == 2);
  auto agnostic = run(src, "minijs", false);
  REQUIRE(agnostic->findings.size() == 1);
  CHECK(agnostic->findings[0].ruleId == "sql-query");  // own-field flow survives
}

TEST_CASE("handler ablation leaves language-agnostic programs untouched") {
  const char* src =
      "def f(a):\n"
      "    return a\n"
      "x = f(source())\n"
      "exec(x)\n";
  CHECK(run(src, "minipy", true)->findings.size() == 1);
  CHECK(run(src, "minipy", false)->findings.size() == 1);
}

TEST_CASE("es6 class extends is core semantics, not handler-gated") {
  const char* src =
      "class Base { get() { return source(); } }\n"
      "class Child extends Base {}\n"
      "let c = new Child();\n"
      "exec(c.get());\n";
  CHECK(run(src, "minijs", true)->findings.size() == 1);
  CHECK(run(src, "minijs", false)->findings.size() == 1);
}
