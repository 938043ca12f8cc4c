#include "uasttaint/frontend.hpp"

namespace uast {

NativePtr makeNative(std::string kind, SourceLocation loc) {
  auto n = std::make_shared<NativeAst>();
  n->kind = std::move(kind);
  n->loc = std::move(loc);
  return n;
}

NativePtr parse(const std::string& source, const std::string& lang,
                const std::string& file) {
  if (lang == "minipy") return parseMiniPy(source, file);
  if (lang == "minijs") return parseMiniJs(source, file);
  throw std::invalid_argument("unknown language: " + lang);
}

NodePtr parseToUast(const std::string& source, const std::string& lang,
                    const std::string& file) {
  return lower(parse(source, lang, file), lang);
}

const std::vector<LoweringRule>& loweringRules() {
  static const std::vector<LoweringRule> rules = {
      // MiniPy
      {RuleClass::Direct, "minipy:Name", "Name -> Identifier"},
      {RuleClass::Direct, "minipy:Num", "Num -> Literal(number)"},
      {RuleClass::Direct, "minipy:Str", "Str -> Literal(string)"},
      {RuleClass::Direct, "minipy:Bool", "Bool -> Literal(boolean)"},
      {RuleClass::Direct, "minipy:NoneLit", "None -> Literal(null)"},
      {RuleClass::Direct, "minipy:BinOp", "BinOp -> BinaryExpression"},
      {RuleClass::Direct, "minipy:UnaryOp", "UnaryOp -> UnaryExpression"},
      {RuleClass::Direct, "minipy:Call", "Call -> CallExpression"},
      {RuleClass::Direct, "minipy:Attribute", "Attribute -> MemberAccess"},
      {RuleClass::Direct, "minipy:Subscript", "Subscript -> IndexAccess"},
      {RuleClass::Direct, "minipy:Assign", "Assign -> AssignmentExpression"},
      {RuleClass::Direct, "minipy:If", "If -> IfStatement"},
      {RuleClass::Direct, "minipy:While", "While -> WhileStatement"},
      {RuleClass::Direct, "minipy:Return", "Return -> ReturnStatement"},
      {RuleClass::Direct, "minipy:Yield", "Yield -> YieldExpression"},
      {RuleClass::Direct, "minipy:Try", "Try -> TryStatement"},
      {RuleClass::Direct, "minipy:Import", "Import -> ImportStatement"},
      {RuleClass::Direct, "minipy:Break", "Break -> BreakStatement"},
      {RuleClass::Direct, "minipy:Continue", "Continue -> ContinueStatement"},
      {RuleClass::Direct, "minipy:Pass", "pass -> Noop"},
      {RuleClass::Direct, "minipy:ExprStmt", "expression stmt -> ExpressionStatement"},
      {RuleClass::Structural, "minipy:Module", "module -> PackageDeclaration"},
      {RuleClass::Structural, "minipy:For", "for-in -> RangeStatement"},
      {RuleClass::Structural, "minipy:FunctionDef",
       "def (+decorator rebinding) -> FunctionDefinition"},
      {RuleClass::Structural, "minipy:Param", "parameter -> VariableDeclaration"},
      {RuleClass::Structural, "minipy:ClassDef", "class -> ClassDefinition"},
      {RuleClass::Structural, "minipy:Tuple", "tuple -> ArrayLiteral"},
      {RuleClass::Structural, "minipy:List", "list literal -> ArrayLiteral"},
      {RuleClass::Structural, "minipy:Dict", "dict literal -> ObjectLiteral"},
      {RuleClass::Desugar, "minipy:ListComp",
       "list comprehension -> Sequence(VariableDeclaration, RangeStatement, tmp)"},
      {RuleClass::Desugar, "minipy:Lambda", "lambda -> FunctionDefinition"},
      {RuleClass::Desugar, "minipy:FString", "f-string -> BinaryExpression chain"},
      // MiniJS
      {RuleClass::Direct, "minijs:Name", "Name -> Identifier"},
      {RuleClass::Direct, "minijs:Num", "Num -> Literal(number)"},
      {RuleClass::Direct, "minijs:Str", "Str -> Literal(string)"},
      {RuleClass::Direct, "minijs:Bool", "Bool -> Literal(boolean)"},
      {RuleClass::Direct, "minijs:NullLit", "null -> Literal(null)"},
      {RuleClass::Direct, "minijs:Binary", "Binary -> BinaryExpression"},
      {RuleClass::Direct, "minijs:Unary", "Unary -> UnaryExpression"},
      {RuleClass::Direct, "minijs:Call", "Call -> CallExpression"},
      {RuleClass::Direct, "minijs:Member", "Member -> MemberAccess"},
      {RuleClass::Direct, "minijs:Index", "Index -> IndexAccess"},
      {RuleClass::Direct, "minijs:New", "New -> NewExpression"},
      {RuleClass::Direct, "minijs:Assign", "Assign -> AssignmentExpression"},
      {RuleClass::Direct, "minijs:Cond", "?: -> ConditionalExpression"},
      {RuleClass::Direct, "minijs:If", "If -> IfStatement"},
      {RuleClass::Direct, "minijs:While", "While -> WhileStatement"},
      {RuleClass::Direct, "minijs:Return", "Return -> ReturnStatement"},
      {RuleClass::Direct, "minijs:Throw", "Throw -> ThrowStatement"},
      {RuleClass::Direct, "minijs:Try", "try/catch -> TryStatement"},
      {RuleClass::Direct, "minijs:Await", "await -> AwaitExpression"},
      {RuleClass::Direct, "minijs:Break", "Break -> BreakStatement"},
      {RuleClass::Direct, "minijs:Continue", "Continue -> ContinueStatement"},
      {RuleClass::Direct, "minijs:ExprStmt", "expression stmt -> ExpressionStatement"},
      {RuleClass::Direct, "minijs:ArrayLit", "array literal -> ArrayLiteral"},
      {RuleClass::Direct, "minijs:ObjectLit", "object literal -> ObjectLiteral"},
      {RuleClass::Structural, "minijs:Program", "program -> PackageDeclaration"},
      {RuleClass::Structural, "minijs:ForOf", "for-of -> RangeStatement"},
      {RuleClass::Structural, "minijs:FunctionDecl",
       "function declaration -> FunctionDefinition"},
      {RuleClass::Structural, "minijs:FunctionExpr",
       "function expression -> FunctionDefinition"},
      {RuleClass::Structural, "minijs:MethodDef", "class method -> FunctionDefinition"},
      {RuleClass::Structural, "minijs:Param", "parameter -> VariableDeclaration"},
      {RuleClass::Structural, "minijs:ClassDecl", "class -> ClassDefinition"},
      {RuleClass::Structural, "minijs:VarDeclGroup",
       "var/let/const -> VariableDeclaration (+ImportStatement for require)"},
      {RuleClass::Structural, "minijs:VarDecl", "declarator -> VariableDeclaration"},
      {RuleClass::Desugar, "minijs:Arrow", "arrow function -> FunctionDefinition"},
      {RuleClass::Desugar, "minijs:TemplateLit",
       "template literal -> BinaryExpression chain"},
  };
  return rules;
}

}  // namespace uast
