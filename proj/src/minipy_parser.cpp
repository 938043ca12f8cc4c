#include <algorithm>
#include <cstdlib>
#include <set>

#include "lexer.hpp"
#include "uasttaint/frontend.hpp"

namespace uast {
namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string> kPyKeywords = {
    "def",   "class",  "if",     "elif",   "else", "while", "for",
    "in",    "return", "yield",  "try",    "except", "as",  "import",
    "lambda", "and",   "or",     "not",    "True", "False", "None",
    "break", "continue", "pass"};

class PyLexer {
 public:
  PyLexer(const std::string& src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) lexLine();
    if (!atLineStart_) pushToken(Tok::Newline, "\n");
    while (indents_.size() > 1) {
      indents_.pop_back();
      pushToken(Tok::Dedent, "");
    }
    pushToken(Tok::End, "");
    return std::move(tokens_);
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(file_, line_, col_, expected);
  }

  void pushToken(Tok type, std::string text, int contentCol = 0) {
    Token t;
    t.type = type;
    t.text = std::move(text);
    t.line = line_;
    t.col = tokStartCol_;
    t.contentCol = contentCol;
    tokens_.push_back(std::move(t));
  }

  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char peek(int n = 1) const {
    return pos_ + n < src_.size() ? src_[pos_ + n] : '\0';
  }
  void advance() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void lexLine() {
    if (atLineStart_ && bracketDepth_ == 0) {
      int indent = 0;
      while (cur() == ' ') {
        ++indent;
        advance();
      }
      if (cur() == '\t') fail("spaces for indentation (no tabs)");
      if (cur() == '\n' || cur() == '#' || cur() == '\0') {
        // blank or comment-only line
        while (cur() != '\n' && cur() != '\0') advance();
        if (cur() == '\n') advance();
        return;
      }
      tokStartCol_ = 1;
      if (indent > indents_.back()) {
        indents_.push_back(indent);
        pushToken(Tok::Indent, "");
      } else {
        while (indent < indents_.back()) {
          indents_.pop_back();
          pushToken(Tok::Dedent, "");
        }
        if (indent != indents_.back()) fail("consistent indentation");
      }
      atLineStart_ = false;
    }
    while (true) {
      while (cur() == ' ' || cur() == '\t') advance();
      if (cur() == '#') {
        while (cur() != '\n' && cur() != '\0') advance();
      }
      if (cur() == '\0') return;
      if (cur() == '\n') {
        advance();
        if (bracketDepth_ == 0) {
          tokStartCol_ = col_;
          pushToken(Tok::Newline, "\n");
          atLineStart_ = true;
        }
        return;
      }
      lexToken();
    }
  }

  void lexToken() {
    tokStartCol_ = col_;
    char c = cur();
    if (detail::isIdentStart(c)) {
      // f-string?
      if (c == 'f' && (peek() == '"' || peek() == '\'')) {
        advance();
        lexString(true);
        return;
      }
      std::string name;
      while (detail::isIdentChar(cur())) {
        name += cur();
        advance();
      }
      if (name.rfind("__lc", 0) == 0)
        fail("identifier without reserved `__lc` prefix");
      pushToken(kPyKeywords.count(name) ? Tok::Keyword : Tok::Name, name);
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
      pushToken(Tok::Number, num);
      return;
    }
    if (c == '"' || c == '\'') {
      lexString(false);
      return;
    }
    static const char* twoCharOps[] = {"==", "!=", "<=", ">=", "//", "**"};
    for (const char* op : twoCharOps) {
      if (c == op[0] && peek() == op[1]) {
        advance();
        advance();
        pushToken(Tok::Op, op);
        return;
      }
    }
    static const std::string oneCharOps = "+-*/%<>=()[]{},:.@;";
    if (oneCharOps.find(c) != std::string::npos) {
      if (c == '(' || c == '[' || c == '{') ++bracketDepth_;
      if (c == ')' || c == ']' || c == '}') --bracketDepth_;
      advance();
      pushToken(Tok::Op, std::string(1, c));
      return;
    }
    fail("a valid token");
  }

  void lexString(bool isF) {
    char quote = cur();
    advance();
    int contentCol = col_;
    std::string out;
    while (cur() != quote) {
      if (cur() == '\0' || cur() == '\n') fail("closing string quote");
      if (cur() == '\\' && !isF) {
        advance();
        char e = cur();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '\'': out += '\''; break;
          case '"': out += '"'; break;
          default: out += e; break;
        }
        advance();
        continue;
      }
      out += cur();
      advance();
    }
    advance();
    pushToken(isF ? Tok::FStr : Tok::Str, out, contentCol);
  }

  const std::string& src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int tokStartCol_ = 1;
  bool atLineStart_ = true;
  int bracketDepth_ = 0;
  std::vector<int> indents_;
  std::vector<Token> tokens_;
};

class PyParser {
 public:
  PyParser(std::vector<Token> tokens, std::string file)
      : tokens_(std::move(tokens)), file_(std::move(file)) {}

  NativePtr parseModule() {
    auto mod = node("Module", cur());
    std::vector<NativePtr> body;
    while (!at(Tok::End)) body.push_back(parseStatement());
    mod->childLists["body"] = std::move(body);
    return mod;
  }

  NativePtr parseExprOnly() {
    auto e = parseExpression();
    if (!at(Tok::End) && !at(Tok::Newline)) fail("end of expression");
    return e;
  }

 private:
  const Token& cur() const { return tokens_[idx_]; }
  const Token& peek(int n = 1) const {
    return tokens_[std::min(idx_ + n, tokens_.size() - 1)];
  }
  bool at(Tok t) const { return cur().type == t; }
  bool atOp(const std::string& op) const { return at(Tok::Op) && cur().text == op; }
  bool atKw(const std::string& kw) const {
    return at(Tok::Keyword) && cur().text == kw;
  }
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
  void expectNewline() {
    if (at(Tok::End)) return;
    if (!at(Tok::Newline)) fail("end of line");
    take();
  }

  NativePtr node(std::string kind, const Token& t) {
    auto n = makeNative(std::move(kind), {file_, t.line, t.col, t.line, t.col});
    return n;
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

  // block: ':' (inline simple stmt | NEWLINE INDENT stmt+ DEDENT)
  std::vector<NativePtr> parseBlock() {
    expectOp(":");
    std::vector<NativePtr> body;
    if (!at(Tok::Newline)) {
      body.push_back(parseSimpleStatement());
      expectNewline();
      return body;
    }
    take();  // newline
    if (!at(Tok::Indent)) fail("indented block");
    take();
    while (!at(Tok::Dedent) && !at(Tok::End)) body.push_back(parseStatement());
    if (at(Tok::Dedent)) take();
    return body;
  }

  NativePtr parseStatement() {
    if (atOp("@") || atKw("def")) return parseFunctionDef();
    if (atKw("class")) return parseClassDef();
    if (atKw("if")) return parseIf();
    if (atKw("while")) return parseWhile();
    if (atKw("for")) return parseFor();
    if (atKw("try")) return parseTry();
    auto s = parseSimpleStatement();
    expectNewline();
    return s;
  }

  NativePtr parseFunctionDef() {
    std::vector<NativePtr> decorators;
    Token start = cur();
    while (atOp("@")) {
      take();
      auto dec = parsePostfix(parseAtom());
      decorators.push_back(dec);
      expectNewline();
    }
    expectKw("def");
    auto fn = node("FunctionDef", start);
    fn->attrs["name"] = expectName().text;
    expectOp("(");
    std::vector<NativePtr> params;
    while (!atOp(")")) {
      Token p = expectName();
      auto param = node("Param", p);
      param->attrs["name"] = p.text;
      if (atOp("=")) {
        take();
        param->children["default"] = parseExpression();
      }
      closeLoc(param);
      params.push_back(param);
      if (!atOp(")")) expectOp(",");
    }
    take();  // ')'
    fn->childLists["params"] = std::move(params);
    fn->childLists["body"] = parseBlock();
    fn->childLists["decorators"] = std::move(decorators);
    closeLoc(fn);
    return fn;
  }

  NativePtr parseClassDef() {
    Token start = expectKw("class");
    auto cls = node("ClassDef", start);
    cls->attrs["name"] = expectName().text;
    std::vector<NativePtr> bases;
    if (atOp("(")) {
      take();
      while (!atOp(")")) {
        bases.push_back(parseExpression());
        if (!atOp(")")) expectOp(",");
      }
      take();
    }
    cls->childLists["bases"] = std::move(bases);
    cls->childLists["body"] = parseBlock();
    closeLoc(cls);
    return cls;
  }

  NativePtr parseIf() {
    Token start = take();  // if / elif
    auto n = node("If", start);
    n->children["test"] = parseExpression();
    n->childLists["body"] = parseBlock();
    std::vector<NativePtr> orelse;
    if (atKw("elif")) {
      orelse.push_back(parseIf());
    } else if (atKw("else")) {
      take();
      orelse = parseBlock();
    }
    n->childLists["orelse"] = std::move(orelse);
    closeLoc(n);
    return n;
  }

  NativePtr parseWhile() {
    Token start = expectKw("while");
    auto n = node("While", start);
    n->children["test"] = parseExpression();
    n->childLists["body"] = parseBlock();
    closeLoc(n);
    return n;
  }

  NativePtr parseFor() {
    Token start = expectKw("for");
    auto n = node("For", start);
    n->attrs["target"] = expectName().text;
    expectKw("in");
    n->children["iter"] = parseExpression();
    n->childLists["body"] = parseBlock();
    closeLoc(n);
    return n;
  }

  NativePtr parseTry() {
    Token start = expectKw("try");
    auto n = node("Try", start);
    n->childLists["body"] = parseBlock();
    expectKw("except");
    if (at(Tok::Name)) take();  // exception class name, unused
    if (atKw("as")) {
      take();
      n->attrs["exceptionVar"] = expectName().text;
    }
    n->childLists["handler"] = parseBlock();
    closeLoc(n);
    return n;
  }

  NativePtr parseSimpleStatement() {
    Token start = cur();
    if (atKw("return")) {
      take();
      auto n = node("Return", start);
      if (!at(Tok::Newline) && !at(Tok::End) && !atOp(";"))
        n->children["value"] = parseExpression();
      closeLoc(n);
      return n;
    }
    if (atKw("import")) {
      take();
      auto n = node("Import", start);
      std::string mod = expectName().text;
      while (atOp(".")) {
        take();
        mod += "." + expectName().text;
      }
      n->attrs["module"] = mod;
      closeLoc(n);
      return n;
    }
    if (atKw("break")) {
      take();
      return node("Break", start);
    }
    if (atKw("continue")) {
      take();
      return node("Continue", start);
    }
    if (atKw("pass")) {
      take();
      return node("Pass", start);
    }
    auto expr = parseExpression();
    if (atOp("=")) {
      if (expr->kind != "Name" && expr->kind != "Attribute" && expr->kind != "Subscript")
        fail("assignable target");
      take();
      auto n = node("Assign", start);
      n->children["target"] = expr;
      n->children["value"] = parseExpression();
      closeLoc(n);
      return n;
    }
    auto n = node("ExprStmt", start);
    n->children["value"] = expr;
    closeLoc(n);
    return n;
  }

  // Expression grammar, lowest binding first:
  //   lambda | yield | orExpr
  NativePtr parseExpression() {
    if (atKw("lambda")) return parseLambda();
    if (atKw("yield")) {
      Token start = take();
      auto n = node("Yield", start);
      if (!at(Tok::Newline) && !at(Tok::End) && !atOp(")") && !atOp(",") && !atOp(";"))
        n->children["value"] = parseExpression();
      closeLoc(n);
      return n;
    }
    return parseOr();
  }

  NativePtr parseLambda() {
    Token start = expectKw("lambda");
    auto n = node("Lambda", start);
    std::vector<NativePtr> params;
    while (!atOp(":")) {
      Token p = expectName();
      auto param = node("Param", p);
      param->attrs["name"] = p.text;
      if (atOp("=")) {
        take();
        param->children["default"] = parseExpression();
      }
      params.push_back(param);
      if (!atOp(":")) expectOp(",");
    }
    take();  // ':'
    n->childLists["params"] = std::move(params);
    n->children["body"] = parseExpression();
    closeLoc(n);
    return n;
  }

  NativePtr binop(const Token& start, const std::string& op, NativePtr left,
                  NativePtr right) {
    auto n = node("BinOp", start);
    n->attrs["op"] = op;
    n->children["left"] = std::move(left);
    n->children["right"] = std::move(right);
    closeLoc(n);
    return n;
  }

  NativePtr parseOr() {
    Token start = cur();
    auto left = parseAnd();
    while (atKw("or")) {
      take();
      left = binop(start, "or", left, parseAnd());
    }
    return left;
  }
  NativePtr parseAnd() {
    Token start = cur();
    auto left = parseNot();
    while (atKw("and")) {
      take();
      left = binop(start, "and", left, parseNot());
    }
    return left;
  }
  NativePtr parseNot() {
    if (atKw("not")) {
      Token start = take();
      auto n = node("UnaryOp", start);
      n->attrs["op"] = "not";
      n->children["operand"] = parseNot();
      closeLoc(n);
      return n;
    }
    return parseComparison();
  }
  NativePtr parseComparison() {
    Token start = cur();
    auto left = parseAddSub();
    static const std::set<std::string> cmpOps = {"==", "!=", "<", "<=", ">", ">="};
    while (at(Tok::Op) && cmpOps.count(cur().text)) {
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
    while (atOp("*") || atOp("/") || atOp("%") || atOp("//")) {
      std::string op = take().text;
      left = binop(start, op, left, parseUnary());
    }
    return left;
  }
  NativePtr parseUnary() {
    if (atOp("-") || atOp("+")) {
      Token start = take();
      auto n = node("UnaryOp", start);
      n->attrs["op"] = start.text;
      n->children["operand"] = parseUnary();
      closeLoc(n);
      return n;
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
          args.push_back(parseExpression());
          if (!atOp(")")) expectOp(",");
        }
        take();
        call->childLists["args"] = std::move(args);
        closeLoc(call);
        base = call;
      } else if (atOp(".")) {
        take();
        auto attr = node("Attribute", start);
        attr->loc = base->loc;
        attr->children["object"] = base;
        attr->attrs["attr"] = expectName().text;
        closeLoc(attr);
        base = attr;
      } else if (atOp("[")) {
        take();
        auto sub = node("Subscript", start);
        sub->loc = base->loc;
        sub->children["object"] = base;
        sub->children["index"] = parseExpression();
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
    if (at(Tok::Name)) {
      take();
      auto n = node("Name", t);
      n->attrs["name"] = t.text;
      closeLoc(n);
      return n;
    }
    if (at(Tok::Number)) {
      take();
      auto n = node("Num", t);
      if (t.text.find('.') != std::string::npos)
        n->attrs["value"] = std::strtod(t.text.c_str(), nullptr);
      else
        n->attrs["value"] = static_cast<std::int64_t>(std::strtoll(t.text.c_str(), nullptr, 10));
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
      return parseFString(t);
    }
    if (atKw("True") || atKw("False")) {
      take();
      auto n = node("Bool", t);
      n->attrs["value"] = (t.text == "True");
      closeLoc(n);
      return n;
    }
    if (atKw("None")) {
      take();
      auto n = node("NoneLit", t);
      closeLoc(n);
      return n;
    }
    if (atKw("lambda")) return parseLambda();
    if (atOp("(")) {
      take();
      if (atOp(")")) fail("expression inside parentheses");
      auto first = parseExpression();
      if (atOp(",")) {
        auto tup = node("Tuple", t);
        std::vector<NativePtr> elems = {first};
        while (atOp(",")) {
          take();
          if (atOp(")")) break;
          elems.push_back(parseExpression());
        }
        expectOp(")");
        tup->childLists["elements"] = std::move(elems);
        closeLoc(tup);
        return tup;
      }
      expectOp(")");
      return first;
    }
    if (atOp("[")) {
      take();
      if (atOp("]")) {
        take();
        auto n = node("List", t);
        n->childLists["elements"] = {};
        closeLoc(n);
        return n;
      }
      auto first = parseExpression();
      if (atKw("for")) {
        take();
        auto comp = node("ListComp", t);
        comp->children["elt"] = first;
        comp->attrs["target"] = expectName().text;
        expectKw("in");
        comp->children["iter"] = parseExpression();
        expectOp("]");
        closeLoc(comp);
        return comp;
      }
      std::vector<NativePtr> elems = {first};
      while (atOp(",")) {
        take();
        if (atOp("]")) break;
        elems.push_back(parseExpression());
      }
      expectOp("]");
      auto n = node("List", t);
      n->childLists["elements"] = std::move(elems);
      closeLoc(n);
      return n;
    }
    if (atOp("{")) {
      take();
      auto n = node("Dict", t);
      std::vector<NativePtr> keys, values;
      while (!atOp("}")) {
        keys.push_back(parseExpression());
        expectOp(":");
        values.push_back(parseExpression());
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

  // Split f-string content into Str parts and embedded expressions.
  NativePtr parseFString(const Token& t);

  std::vector<Token> tokens_;
  std::string file_;
  std::size_t idx_ = 0;
};

NativePtr parsePyFragment(const std::string& text, const std::string& file, int line,
                          int col);

NativePtr PyParser::parseFString(const Token& t) {
  auto fs = node("FString", t);
  fs->loc.endCol = t.contentCol + static_cast<int>(t.text.size()) + 1;
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
    if (raw[i] == '{') {
      flushText();
      std::size_t j = i + 1;
      int depth = 1;
      while (j < raw.size() && depth > 0) {
        if (raw[j] == '{') ++depth;
        if (raw[j] == '}') --depth;
        ++j;
      }
      if (depth != 0) throw SyntaxError(file_, t.line, t.contentCol + static_cast<int>(i), "`}`");
      std::string inner = raw.substr(i + 1, j - i - 2);
      parts.push_back(
          parsePyFragment(inner, file_, t.line, t.contentCol + static_cast<int>(i) + 1));
      i = j;
      textStartCol = t.contentCol + static_cast<int>(i);
    } else {
      text += raw[i];
      ++i;
    }
  }
  flushText();
  fs->childLists["parts"] = std::move(parts);
  return fs;
}

NativePtr parsePyFragment(const std::string& text, const std::string& file, int line,
                          int col) {
  PyLexer lexer(text, file);
  auto tokens = lexer.run();
  // Re-anchor fragment token locations into the host line.
  for (auto& tok : tokens) {
    if (tok.line == 1) tok.col += col - 1;
    tok.line += line - 1;
  }
  // Strip block tokens the fragment lexer synthesized.
  std::vector<Token> flat;
  for (auto& tok : tokens) {
    if (tok.type == Tok::Newline || tok.type == Tok::Indent || tok.type == Tok::Dedent)
      continue;
    flat.push_back(tok);
  }
  PyParser parser(std::move(flat), file);
  return parser.parseExprOnly();
}

}  // namespace

NativePtr parseMiniPy(const std::string& source, const std::string& file) {
  PyLexer lexer(source, file);
  PyParser parser(lexer.run(), file);
  return parser.parseModule();
}

}  // namespace uast
