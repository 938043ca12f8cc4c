#include <algorithm>
#include <cstdlib>
#include <set>

#include "lexer.hpp"
#include "uasttaint/frontend.hpp"

namespace uast {
namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string> kJsKeywords = {
    "function", "var",   "let",   "const", "if",    "else",  "while",
    "for",      "of",    "return", "new",  "class", "extends", "try",
    "catch",    "throw", "async", "await", "this",  "null",  "true",
    "false",    "break", "continue"};

class JsLexer {
 public:
  JsLexer(const std::string& src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    while (true) {
      skipTrivia();
      if (pos_ >= src_.size()) break;
      lexToken();
    }
    Token end;
    end.type = Tok::End;
    end.line = line_;
    end.col = col_;
    tokens_.push_back(end);
    return std::move(tokens_);
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(file_, line_, col_, expected);
  }

  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char peek(int n = 1) const { return pos_ + n < src_.size() ? src_[pos_ + n] : '\0'; }
  void advance() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipTrivia() {
    while (pos_ < src_.size()) {
      char c = cur();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '/' && peek() == '/') {
        while (cur() != '\n' && cur() != '\0') advance();
      } else if (c == '/' && peek() == '*') {
        advance();
        advance();
        while (!(cur() == '*' && peek() == '/')) {
          if (cur() == '\0') fail("`*/`");
          advance();
        }
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  void push(Tok type, std::string text, int startCol, int startLine, int contentCol = 0) {
    Token t;
    t.type = type;
    t.text = std::move(text);
    t.line = startLine;
    t.col = startCol;
    t.contentCol = contentCol;
    tokens_.push_back(std::move(t));
  }

  void lexToken() {
    int startCol = col_, startLine = line_;
    char c = cur();
    if (detail::isIdentStart(c) || c == '$') {
      std::string name;
      while (detail::isIdentChar(cur()) || cur() == '$') {
        name += cur();
        advance();
      }
      push(kJsKeywords.count(name) ? Tok::Keyword : Tok::Name, name, startCol, startLine);
      return;
    }
    if (detail::isDigit(c)) {
      std::string num;
      while (detail::isDigit(cur())) {
        num += cur();
        advance();
      }
      if (cur() == '.' && detail::isDigit(peek())) {
        num += '.';
        advance();
        while (detail::isDigit(cur())) {
          num += cur();
          advance();
        }
      }
      push(Tok::Number, num, startCol, startLine);
      return;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      advance();
      std::string out;
      while (cur() != quote) {
        if (cur() == '\0' || cur() == '\n') fail("closing string quote");
        if (cur() == '\\') {
          advance();
          char e = cur();
          switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case '\\': out += '\\'; break;
            case '\'': out += '\''; break;
            case '"': out += '"'; break;
            case '`': out += '`'; break;
            default: out += e; break;
          }
          advance();
          continue;
        }
        out += cur();
        advance();
      }
      advance();
      push(Tok::Str, out, startCol, startLine);
      return;
    }
    if (c == '`') {
      advance();
      int contentCol = col_;
      std::string out;
      while (cur() != '`') {
        if (cur() == '\0') fail("closing backtick");
        out += cur();
        advance();
      }
      advance();
      push(Tok::FStr, out, startCol, startLine, contentCol);
      return;
    }
    static const char* threeCharOps[] = {"===", "!=="};
    for (const char* op : threeCharOps) {
      if (c == op[0] && peek() == op[1] && peek(2) == op[2]) {
        advance();
        advance();
        advance();
        push(Tok::Op, op, startCol, startLine);
        return;
      }
    }
    static const char* twoCharOps[] = {"==", "!=", "<=", ">=", "&&", "||", "=>"};
    for (const char* op : twoCharOps) {
      if (c == op[0] && peek() == op[1]) {
        advance();
        advance();
        push(Tok::Op, op, startCol, startLine);
        return;
      }
    }
    static const std::string oneCharOps = "+-*/%<>=!()[]{},;.:?";
    if (oneCharOps.find(c) != std::string::npos) {
      advance();
      push(Tok::Op, std::string(1, c), startCol, startLine);
      return;
    }
    fail("a valid token");
  }

  const std::string& src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> tokens_;
};

class JsParser {
 public:
  JsParser(std::vector<Token> tokens, std::string file)
      : tokens_(std::move(tokens)), file_(std::move(file)) {}

  NativePtr parseProgram() {
    auto prog = node("Program", cur());
    std::vector<NativePtr> body;
    while (!at(Tok::End)) body.push_back(parseStatement());
    prog->childLists["body"] = std::move(body);
    return prog;
  }

  NativePtr parseExprOnly() {
    auto e = parseAssignment();
    if (!at(Tok::End)) fail("end of expression");
    return e;
  }

 private:
  const Token& cur() const { return tokens_[idx_]; }
  const Token& peek(int n = 1) const {
    return tokens_[std::min(idx_ + n, tokens_.size() - 1)];
  }
  bool at(Tok t) const { return cur().type == t; }
  bool atOp(const std::string& op) const { return at(Tok::Op) && cur().text == op; }
  bool atKw(const std::string& kw) const { return at(Tok::Keyword) && cur().text == kw; }
  Token take() { return tokens_[idx_++]; }
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(file_, cur().line, cur().col, expected);
  }
  Token expectOp(const std::string& op) {
    if (!atOp(op)) fail("`" + op + "`");
    return take();
  }
  Token expectKw(const std::string& kw) {
    if (!atKw(kw)) fail("`" + kw + "`");
    return take();
  }
  Token expectName() {
    if (!at(Tok::Name)) fail("identifier");
    return take();
  }
  void optSemi() {
    if (atOp(";")) take();
  }

  NativePtr node(std::string kind, const Token& t) {
    return makeNative(std::move(kind), {file_, t.line, t.col, t.line, t.col});
  }
  void closeLoc(const NativePtr& n) {
    const Token& prev = tokens_[idx_ > 0 ? idx_ - 1 : 0];
    n->loc.endLine = prev.line;
    n->loc.endCol = prev.col + static_cast<int>(prev.text.size());
    if (n->loc.endLine < n->loc.startLine ||
        (n->loc.endLine == n->loc.startLine && n->loc.endCol < n->loc.startCol)) {
      n->loc.endLine = n->loc.startLine;
      n->loc.endCol = n->loc.startCol;
    }
  }

  std::vector<NativePtr> parseBlockOrStatement() {
    std::vector<NativePtr> body;
    if (atOp("{")) {
      take();
      while (!atOp("}")) {
        if (at(Tok::End)) fail("`}`");
        body.push_back(parseStatement());
      }
      take();
    } else {
      body.push_back(parseStatement());
    }
    return body;
  }

  std::vector<NativePtr> parseParams() {
    expectOp("(");
    std::vector<NativePtr> params;
    while (!atOp(")")) {
      Token p = expectName();
      auto param = node("Param", p);
      param->attrs["name"] = p.text;
      if (atOp("=")) {
        take();
        param->children["default"] = parseAssignment();
      }
      closeLoc(param);
      params.push_back(param);
      if (!atOp(")")) expectOp(",");
    }
    take();
    return params;
  }

  NativePtr parseStatement() {
    Token start = cur();
    if (atKw("function") || (atKw("async") && peek().type == Tok::Keyword &&
                             peek().text == "function")) {
      bool isAsync = atKw("async");
      if (isAsync) take();
      take();  // function
      auto fn = node("FunctionDecl", start);
      fn->attrs["name"] = expectName().text;
      if (isAsync) fn->attrs["isAsync"] = true;
      fn->childLists["params"] = parseParams();
      expectOp("{");
      std::vector<NativePtr> body;
      while (!atOp("}")) {
        if (at(Tok::End)) fail("`}`");
        body.push_back(parseStatement());
      }
      take();
      fn->childLists["body"] = std::move(body);
      closeLoc(fn);
      return fn;
    }
    if (atKw("class")) return parseClass();
    if (atKw("var") || atKw("let") || atKw("const")) {
      std::string declKind = take().text;
      auto group = node("VarDeclGroup", start);
      std::vector<NativePtr> decls;
      while (true) {
        Token nameTok = expectName();
        auto d = node("VarDecl", nameTok);
        d->attrs["name"] = nameTok.text;
        d->attrs["declKind"] = declKind;
        if (atOp("=")) {
          take();
          d->children["init"] = parseAssignment();
        }
        closeLoc(d);
        decls.push_back(d);
        if (!atOp(",")) break;
        take();
      }
      optSemi();
      group->childLists["decls"] = std::move(decls);
      closeLoc(group);
      return group;
    }
    if (atKw("if")) {
      take();
      auto n = node("If", start);
      expectOp("(");
      n->children["test"] = parseAssignment();
      expectOp(")");
      n->childLists["body"] = parseBlockOrStatement();
      std::vector<NativePtr> orelse;
      if (atKw("else")) {
        take();
        if (atKw("if"))
          orelse.push_back(parseStatement());
        else
          orelse = parseBlockOrStatement();
      }
      n->childLists["orelse"] = std::move(orelse);
      closeLoc(n);
      return n;
    }
    if (atKw("while")) {
      take();
      auto n = node("While", start);
      expectOp("(");
      n->children["test"] = parseAssignment();
      expectOp(")");
      n->childLists["body"] = parseBlockOrStatement();
      closeLoc(n);
      return n;
    }
    if (atKw("for")) {
      take();
      auto n = node("ForOf", start);
      expectOp("(");
      if (atKw("var") || atKw("let") || atKw("const")) take();
      n->attrs["target"] = expectName().text;
      expectKw("of");
      n->children["iter"] = parseAssignment();
      expectOp(")");
      n->childLists["body"] = parseBlockOrStatement();
      closeLoc(n);
      return n;
    }
    if (atKw("return")) {
      take();
      auto n = node("Return", start);
      if (!atOp(";") && !atOp("}") && !at(Tok::End))
        n->children["value"] = parseAssignment();
      optSemi();
      closeLoc(n);
      return n;
    }
    if (atKw("try")) {
      take();
      auto n = node("Try", start);
      if (!atOp("{")) fail("`{`");
      n->childLists["body"] = parseBlockOrStatement();
      expectKw("catch");
      if (atOp("(")) {
        take();
        n->attrs["exceptionVar"] = expectName().text;
        expectOp(")");
      }
      if (!atOp("{")) fail("`{`");
      n->childLists["handler"] = parseBlockOrStatement();
      closeLoc(n);
      return n;
    }
    if (atKw("throw")) {
      take();
      auto n = node("Throw", start);
      n->children["value"] = parseAssignment();
      optSemi();
      closeLoc(n);
      return n;
    }
    if (atKw("break")) {
      take();
      optSemi();
      return node("Break", start);
    }
    if (atKw("continue")) {
      take();
      optSemi();
      return node("Continue", start);
    }
    auto n = node("ExprStmt", start);
    n->children["value"] = parseAssignment();
    optSemi();
    closeLoc(n);
    return n;
  }

  NativePtr parseClass() {
    Token start = expectKw("class");
    auto cls = node("ClassDecl", start);
    cls->attrs["name"] = expectName().text;
    if (atKw("extends")) {
      take();
      cls->children["superClass"] = parsePostfix(parseAtom());
    }
    expectOp("{");
    std::vector<NativePtr> methods;
    while (!atOp("}")) {
      if (at(Tok::End)) fail("`}`");
      Token mt = cur();
      bool isAsync = false;
      if (atKw("async") && peek().type == Tok::Name) {
        isAsync = true;
        take();
      }
      Token nameTok = expectName();
      auto m = node("MethodDef", mt);
      m->attrs["name"] = nameTok.text;
      if (isAsync) m->attrs["isAsync"] = true;
      m->childLists["params"] = parseParams();
      expectOp("{");
      std::vector<NativePtr> body;
      while (!atOp("}")) {
        if (at(Tok::End)) fail("`}`");
        body.push_back(parseStatement());
      }
      take();
      m->childLists["body"] = std::move(body);
      closeLoc(m);
      methods.push_back(m);
    }
    take();
    cls->childLists["methods"] = std::move(methods);
    closeLoc(cls);
    return cls;
  }

  // Arrow lookahead: '(' ... ')' '=>' with balanced parens, or NAME '=>'.
  bool atArrow() const {
    std::size_t i = idx_;
    bool isAsync = tokens_[i].type == Tok::Keyword && tokens_[i].text == "async";
    if (isAsync) ++i;
    if (i >= tokens_.size()) return false;
    if (tokens_[i].type == Tok::Name) {
      return i + 1 < tokens_.size() && tokens_[i + 1].type == Tok::Op &&
             tokens_[i + 1].text == "=>";
    }
    if (!(tokens_[i].type == Tok::Op && tokens_[i].text == "(")) return false;
    int depth = 0;
    for (; i < tokens_.size(); ++i) {
      if (tokens_[i].type == Tok::Op && tokens_[i].text == "(") ++depth;
      if (tokens_[i].type == Tok::Op && tokens_[i].text == ")") {
        --depth;
        if (depth == 0)
          return i + 1 < tokens_.size() && tokens_[i + 1].type == Tok::Op &&
                 tokens_[i + 1].text == "=>";
      }
    }
    return false;
  }

  NativePtr parseArrow() {
    Token start = cur();
    auto fn = node("Arrow", start);
    if (atKw("async")) {
      take();
      fn->attrs["isAsync"] = true;
    }
    std::vector<NativePtr> params;
    if (at(Tok::Name)) {
      Token p = take();
      auto param = node("Param", p);
      param->attrs["name"] = p.text;
      params.push_back(param);
    } else {
      params = parseParams();
    }
    fn->childLists["params"] = std::move(params);
    expectOp("=>");
    if (atOp("{")) {
      take();
      std::vector<NativePtr> body;
      while (!atOp("}")) {
        if (at(Tok::End)) fail("`}`");
        body.push_back(parseStatement());
      }
      take();
      fn->childLists["body"] = std::move(body);
    } else {
      fn->attrs["exprBody"] = true;
      fn->children["expr"] = parseAssignment();
    }
    closeLoc(fn);
    return fn;
  }

  NativePtr parseAssignment() {
    if (atArrow()) return parseArrow();
    Token start = cur();
    auto left = parseConditional();
    if (atOp("=")) {
      if (left->kind != "Name" && left->kind != "Member" && left->kind != "Index")
        fail("assignable target");
      take();
      auto n = node("Assign", start);
      n->children["target"] = left;
      n->children["value"] = parseAssignment();
      closeLoc(n);
      return n;
    }
    return left;
  }

  NativePtr parseConditional() {
    Token start = cur();
    auto test = parseOr();
    if (!atOp("?")) return test;
    take();
    auto n = node("Cond", start);
    n->children["test"] = test;
    n->children["cons"] = parseAssignment();
    expectOp(":");
    n->children["alt"] = parseAssignment();
    closeLoc(n);
    return n;
  }

  NativePtr binop(const Token& start, const std::string& op, NativePtr left,
                  NativePtr right) {
    auto n = node("Binary", start);
    n->attrs["op"] = op;
    n->children["left"] = std::move(left);
    n->children["right"] = std::move(right);
    closeLoc(n);
    return n;
  }

  NativePtr parseOr() {
    Token start = cur();
    auto left = parseAnd();
    while (atOp("||")) {
      take();
      left = binop(start, "||", left, parseAnd());
    }
    return left;
  }
  NativePtr parseAnd() {
    Token start = cur();
    auto left = parseEquality();
    while (atOp("&&")) {
      take();
      left = binop(start, "&&", left, parseEquality());
    }
    return left;
  }
  NativePtr parseEquality() {
    Token start = cur();
    auto left = parseRelational();
    while (atOp("==") || atOp("!=") || atOp("===") || atOp("!==")) {
      std::string op = take().text;
      left = binop(start, op, left, parseRelational());
    }
    return left;
  }
  NativePtr parseRelational() {
    Token start = cur();
    auto left = parseAddSub();
    while (atOp("<") || atOp("<=") || atOp(">") || atOp(">=")) {
      std::string op = take().text;
      left = binop(start, op, left, parseAddSub());
    }
    return left;
  }
  NativePtr parseAddSub() {
    Token start = cur();
    auto left = parseMulDiv();
    while (atOp("+") || atOp("-")) {
      std::string op = take().text;
      left = binop(start, op, left, parseMulDiv());
    }
    return left;
  }
  NativePtr parseMulDiv() {
    Token start = cur();
    auto left = parseUnary();
    while (atOp("*") || atOp("/") || atOp("%")) {
      std::string op = take().text;
      left = binop(start, op, left, parseUnary());
    }
    return left;
  }
  NativePtr parseUnary() {
    Token start = cur();
    if (atOp("!") || atOp("-") || atOp("+")) {
      std::string op = take().text;
      auto n = node("Unary", start);
      n->attrs["op"] = op;
      n->children["operand"] = parseUnary();
      closeLoc(n);
      return n;
    }
    if (atKw("await")) {
      take();
      auto n = node("Await", start);
      n->children["value"] = parseUnary();
      closeLoc(n);
      return n;
    }
    if (atKw("new")) {
      take();
      auto n = node("New", start);
      auto callee = parseAtom();
      while (atOp(".")) {
        Token dot = take();
        auto m = node("Member", dot);
        m->loc = callee->loc;
        m->children["object"] = callee;
        m->attrs["prop"] = expectName().text;
        closeLoc(m);
        callee = m;
      }
      n->children["callee"] = callee;
      std::vector<NativePtr> args;
      if (atOp("(")) {
        take();
        while (!atOp(")")) {
          args.push_back(parseAssignment());
          if (!atOp(")")) expectOp(",");
        }
        take();
      }
      n->childLists["args"] = std::move(args);
      closeLoc(n);
      return parsePostfix(n);
    }
    return parsePostfix(parseAtom());
  }

  NativePtr parsePostfix(NativePtr base) {
    while (true) {
      Token start = cur();
      if (atOp("(")) {
        take();
        auto call = node("Call", start);
        call->loc = base->loc;
        call->children["func"] = base;
        std::vector<NativePtr> args;
        while (!atOp(")")) {
          args.push_back(parseAssignment());
          if (!atOp(")")) expectOp(",");
        }
        take();
        call->childLists["args"] = std::move(args);
        closeLoc(call);
        base = call;
      } else if (atOp(".")) {
        take();
        auto m = node("Member", start);
        m->loc = base->loc;
        m->children["object"] = base;
        m->attrs["prop"] = expectName().text;
        closeLoc(m);
        base = m;
      } else if (atOp("[")) {
        take();
        auto sub = node("Index", start);
        sub->loc = base->loc;
        sub->children["object"] = base;
        sub->children["index"] = parseAssignment();
        expectOp("]");
        closeLoc(sub);
        base = sub;
      } else {
        return base;
      }
    }
  }

  NativePtr parseAtom() {
    Token t = cur();
    if (atArrow()) return parseArrow();
    if (at(Tok::Name)) {
      take();
      auto n = node("Name", t);
      n->attrs["name"] = t.text;
      closeLoc(n);
      return n;
    }
    if (atKw("this")) {
      take();
      auto n = node("Name", t);
      n->attrs["name"] = "this";
      closeLoc(n);
      return n;
    }
    if (at(Tok::Number)) {
      take();
      auto n = node("Num", t);
      if (t.text.find('.') != std::string::npos)
        n->attrs["value"] = std::strtod(t.text.c_str(), nullptr);
      else
        n->attrs["value"] =
            static_cast<std::int64_t>(std::strtoll(t.text.c_str(), nullptr, 10));
      closeLoc(n);
      return n;
    }
    if (at(Tok::Str)) {
      take();
      auto n = node("Str", t);
      n->attrs["value"] = t.text;
      closeLoc(n);
      return n;
    }
    if (at(Tok::FStr)) {
      take();
      return parseTemplate(t);
    }
    if (atKw("true") || atKw("false")) {
      take();
      auto n = node("Bool", t);
      n->attrs["value"] = (t.text == "true");
      closeLoc(n);
      return n;
    }
    if (atKw("null")) {
      take();
      auto n = node("NullLit", t);
      closeLoc(n);
      return n;
    }
    if (atKw("function") ||
        (atKw("async") && peek().type == Tok::Keyword && peek().text == "function")) {
      bool isAsync = atKw("async");
      if (isAsync) take();
      take();
      auto fn = node("FunctionExpr", t);
      if (at(Tok::Name)) fn->attrs["name"] = take().text;
      if (isAsync) fn->attrs["isAsync"] = true;
      fn->childLists["params"] = parseParams();
      expectOp("{");
      std::vector<NativePtr> body;
      while (!atOp("}")) {
        if (at(Tok::End)) fail("`}`");
        body.push_back(parseStatement());
      }
      take();
      fn->childLists["body"] = std::move(body);
      closeLoc(fn);
      return fn;
    }
    if (atOp("(")) {
      take();
      auto e = parseAssignment();
      expectOp(")");
      return e;
    }
    if (atOp("[")) {
      take();
      auto n = node("ArrayLit", t);
      std::vector<NativePtr> elems;
      while (!atOp("]")) {
        elems.push_back(parseAssignment());
        if (!atOp("]")) expectOp(",");
      }
      take();
      n->childLists["elements"] = std::move(elems);
      closeLoc(n);
      return n;
    }
    if (atOp("{")) {
      take();
      auto n = node("ObjectLit", t);
      std::vector<NativePtr> keys, values;
      while (!atOp("}")) {
        Token kt = cur();
        std::string key;
        if (at(Tok::Name) || at(Tok::Keyword))
          key = take().text;
        else if (at(Tok::Str))
          key = take().text;
        else
          fail("property name");
        auto k = node("Str", kt);
        k->attrs["value"] = key;
        closeLoc(k);
        keys.push_back(k);
        expectOp(":");
        values.push_back(parseAssignment());
        if (!atOp("}")) expectOp(",");
      }
      take();
      n->childLists["keys"] = std::move(keys);
      n->childLists["values"] = std::move(values);
      closeLoc(n);
      return n;
    }
    fail("an expression");
  }

  NativePtr parseTemplate(const Token& t);

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t idx_ = 0;
};

NativePtr parseJsFragment(const std::string& text, const std::string& file, int line,
                          int col) {
  JsLexer lexer(text, file);
  auto tokens = lexer.run();
  for (auto& tok : tokens) {
    if (tok.line == 1) tok.col += col - 1;
    tok.line += line - 1;
  }
  JsParser parser(std::move(tokens), file);
  return parser.parseExprOnly();
}

NativePtr JsParser::parseTemplate(const Token& t) {
  auto tpl = node("TemplateLit", t);
  tpl->loc.endCol = t.contentCol + static_cast<int>(t.text.size()) + 1;
  std::vector<NativePtr> parts;
  const std::string& raw = t.text;
  std::string text;
  std::size_t i = 0;
  int textStartCol = t.contentCol;
  auto flushText = [&]() {
    if (text.empty()) return;
    auto s = makeNative("Str", {file_, t.line, textStartCol, t.line,
                                textStartCol + static_cast<int>(text.size())});
    s->attrs["value"] = text;
    parts.push_back(s);
    text.clear();
  };
  while (i < raw.size()) {
    if (raw[i] == '$' && i + 1 < raw.size() && raw[i + 1] == '{') {
      flushText();
      std::size_t j = i + 2;
      int depth = 1;
      while (j < raw.size() && depth > 0) {
        if (raw[j] == '{') ++depth;
        if (raw[j] == '}') --depth;
        ++j;
      }
      if (depth != 0)
        throw SyntaxError(file_, t.line, t.contentCol + static_cast<int>(i), "`}`");
      std::string inner = raw.substr(i + 2, j - i - 3);
      parts.push_back(
          parseJsFragment(inner, file_, t.line, t.contentCol + static_cast<int>(i) + 2));
      i = j;
      textStartCol = t.contentCol + static_cast<int>(i);
    } else {
      text += raw[i];
      ++i;
    }
  }
  flushText();
  tpl->childLists["parts"] = std::move(parts);
  return tpl;
}

}  // namespace

NativePtr parseMiniJs(const std::string& source, const std::string& file) {
  JsLexer lexer(source, file);
  JsParser parser(lexer.run(), file);
  return parser.parseProgram();
}

}  // namespace uast
