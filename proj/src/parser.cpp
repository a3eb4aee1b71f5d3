#include "ccred/parser.hpp"

#include <map>
#include <utility>

#include "ccred/errors.hpp"
#include "ccred/lexer.hpp"

namespace ccred {
namespace {

// Raised when a method body contains a construct outside the supported
// subset; caught at the member level so the rest of the file still parses.
struct UnsupportedConstruct {
  Span span;
  std::string what;
};

// Raised to abort a tentative parse (type-vs-expression disambiguation).
struct TentativeFail {};

bool is_primitive_type(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  return t.text == "int" || t.text == "long" || t.text == "short" ||
         t.text == "byte" || t.text == "char" || t.text == "boolean" ||
         t.text == "float" || t.text == "double";
}

bool is_modifier(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  return t.text == "public" || t.text == "private" || t.text == "protected" ||
         t.text == "static" || t.text == "final" || t.text == "abstract" ||
         t.text == "synchronized" || t.text == "native" ||
         t.text == "transient" || t.text == "volatile" ||
         t.text == "strictfp";
}

bool is_assign_op(const Token& t) {
  if (t.kind != TokenKind::Symbol) return false;
  return t.text == "=" || t.text == "+=" || t.text == "-=" || t.text == "*=" ||
         t.text == "/=" || t.text == "%=" || t.text == "&=" || t.text == "|=" ||
         t.text == "^=";
}

class Parser {
 public:
  Parser(CompilationUnit& unit, const std::vector<Token>& tokens)
      : unit_(unit), tokens_(tokens) {}

  void parse_unit() {
    while (cur().is_keyword("package") || cur().is_keyword("import")) {
      skip_until_semicolon();
    }
    while (!cur().is(TokenKind::EndOfFile)) {
      parse_class();
    }
  }

  NodeId parse_statement_entry() {
    NodeId id = parse_statement();
    expect_eof();
    return id;
  }

  NodeId parse_expression_entry() {
    NodeId id = parse_expression();
    expect_eof();
    return id;
  }

 private:
  CompilationUnit& unit_;
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  bool tentative_ = false;

  const Token& cur() const { return tokens_[pos_]; }
  const Token& peek(std::size_t n = 1) const {
    std::size_t i = pos_ + n;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& prev() const { return tokens_[pos_ - 1]; }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    if (tentative_) throw TentativeFail{};
    const Token& t = cur();
    int at = t.is(TokenKind::EndOfFile) ? std::max(0, unit_.source.size() - 1)
                                        : t.span.begin;
    LineCol lc = unit_.source.line_col(at);
    throw SyntaxError(lc.line, lc.column, message);
  }

  std::string describe(const Token& t) const {
    if (t.is(TokenKind::EndOfFile)) return "end of file";
    return "'" + std::string(t.text) + "'";
  }

  void expect_symbol(std::string_view sym) {
    if (!cur().is_symbol(sym))
      fail("expected '" + std::string(sym) + "', got " + describe(cur()));
    advance();
  }

  void expect_keyword(std::string_view kw) {
    if (!cur().is_keyword(kw))
      fail("expected '" + std::string(kw) + "', got " + describe(cur()));
    advance();
  }

  std::string expect_identifier(const char* what) {
    if (!cur().is(TokenKind::Identifier))
      fail(std::string("expected ") + what + ", got " + describe(cur()));
    std::string name(cur().text);
    advance();
    return name;
  }

  void expect_eof() {
    if (!cur().is(TokenKind::EndOfFile))
      fail("expected end of input, got " + describe(cur()));
  }

  bool accept_symbol(std::string_view sym) {
    if (cur().is_symbol(sym)) {
      advance();
      return true;
    }
    return false;
  }

  NodeId make(NodeKind kind, Span span) {
    unit_.nodes.push_back(AstNode{kind, span, {}, {}, 0, {}});
    return static_cast<NodeId>(unit_.nodes.size() - 1);
  }

  Span span_from(std::size_t start_tok) const {
    return Span{tokens_[start_tok].span.begin, prev().span.end};
  }

  void skip_until_semicolon() {
    while (!cur().is(TokenKind::EndOfFile) && !cur().is_symbol(";")) advance();
    expect_symbol(";");
  }

  void skip_annotation() {
    expect_symbol("@");
    expect_identifier("annotation name");
    while (accept_symbol(".")) expect_identifier("annotation name");
    if (cur().is_symbol("(")) skip_balanced("(", ")");
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    expect_symbol(open);
    int depth = 1;
    while (depth > 0) {
      if (cur().is(TokenKind::EndOfFile)) fail("unbalanced delimiters");
      if (cur().is_symbol(open)) ++depth;
      if (cur().is_symbol(close)) --depth;
      advance();
    }
  }

  struct Modifiers {
    bool is_static = false;
  };

  Modifiers parse_modifiers() {
    Modifiers mods;
    for (;;) {
      if (cur().is_symbol("@")) {
        skip_annotation();
        continue;
      }
      if (is_modifier(cur())) {
        if (cur().text == "static") mods.is_static = true;
        advance();
        continue;
      }
      return mods;
    }
  }

  // ---- types ----

  // Balanced generic arguments are skipped, not modelled. Only tokens that
  // can occur in a type argument list are admitted, so a tentative parse of
  // an expression like `a < b` fails here instead of running away.
  void skip_generic_args() {
    expect_symbol("<");
    int depth = 1;
    while (depth > 0) {
      const Token& t = cur();
      if (t.is_symbol("<")) {
        ++depth;
      } else if (t.is_symbol(">")) {
        --depth;
      } else if (t.is(TokenKind::Identifier) || is_primitive_type(t) ||
                 t.is_symbol(",") || t.is_symbol(".") || t.is_symbol("?") ||
                 t.is_symbol("[") || t.is_symbol("]") ||
                 t.is_keyword("extends") || t.is_keyword("super")) {
        // fine
      } else {
        fail("unexpected token in type arguments: " + describe(cur()));
      }
      advance();
    }
  }

  // Parses a type and returns its source text. `allow_array` admits trailing
  // `[]` pairs.
  std::string parse_type(bool allow_array = true) {
    std::size_t start = pos_;
    if (cur().is_keyword("void")) {
      advance();
    } else if (is_primitive_type(cur())) {
      advance();
    } else if (cur().is(TokenKind::Identifier)) {
      advance();
      if (cur().is_symbol("<")) skip_generic_args();
      while (cur().is_symbol(".") && peek().is(TokenKind::Identifier)) {
        advance();
        advance();
        if (cur().is_symbol("<")) skip_generic_args();
      }
    } else {
      fail("expected type, got " + describe(cur()));
    }
    if (allow_array) {
      while (cur().is_symbol("[") && peek().is_symbol("]")) {
        advance();
        advance();
      }
    }
    Span s = span_from(start);
    return std::string(unit_.source.slice(s));
  }

  // ---- declarations ----

  void parse_class() {
    std::size_t start = pos_;
    parse_modifiers();
    if (cur().is_keyword("interface") || cur().is_keyword("enum"))
      fail("only classes are supported");
    expect_keyword("class");
    ClassDecl cls;
    cls.name = expect_identifier("class name");
    if (cur().is_symbol("<")) skip_generic_args();
    while (!cur().is_symbol("{")) {
      if (cur().is(TokenKind::EndOfFile)) fail("expected class body");
      advance();  // extends / implements clauses
    }
    expect_symbol("{");
    while (!cur().is_symbol("}")) {
      if (cur().is(TokenKind::EndOfFile)) fail("unterminated class body");
      parse_member(cls);
    }
    cls.span = Span{tokens_[start].span.begin, cur().span.end};
    expect_symbol("}");

    std::map<std::string, int> counts;
    for (MethodDecl& m : cls.methods) m.ordinal = ++counts[m.name];
    unit_.classes.push_back(std::move(cls));
  }

  void parse_member(ClassDecl& cls) {
    std::size_t start = pos_;
    Modifiers mods = parse_modifiers();
    if (accept_symbol(";")) return;  // stray semicolon

    if (cur().is(TokenKind::Identifier) && cur().text == cls.name &&
        peek().is_symbol("(")) {
      MethodDecl m;
      m.owner_class = cls.name;
      m.name = cls.name;
      m.return_type = "void";
      m.is_constructor = true;
      m.is_static = mods.is_static;
      advance();  // constructor name
      finish_method(m, start);
      cls.methods.push_back(std::move(m));
      return;
    }

    std::string type = parse_type();
    std::string name = expect_identifier("member name");
    if (cur().is_symbol("(")) {
      MethodDecl m;
      m.owner_class = cls.name;
      m.name = name;
      m.return_type = type;
      m.is_static = mods.is_static;
      finish_method(m, start);
      // Abstract/native declarations carry nothing to analyze or rewrite.
      if (m.problem != "method has no body") cls.methods.push_back(std::move(m));
      return;
    }

    // field declaration; declarators are parsed and discarded
    for (;;) {
      if (accept_symbol("=")) parse_expression();
      if (accept_symbol(",")) {
        expect_identifier("field name");
        continue;
      }
      break;
    }
    expect_symbol(";");
  }

  void finish_method(MethodDecl& m, std::size_t start_tok) {
    expect_symbol("(");
    if (!cur().is_symbol(")")) {
      for (;;) {
        if (cur().is_keyword("final")) advance();
        Param p;
        p.type = parse_type();
        p.name = expect_identifier("parameter name");
        // C-style array suffix on the name
        while (cur().is_symbol("[") && peek().is_symbol("]")) {
          advance();
          advance();
          p.type += "[]";
        }
        m.params.push_back(std::move(p));
        if (!accept_symbol(",")) break;
      }
    }
    expect_symbol(")");
    if (cur().is_keyword("throws")) {
      advance();
      for (;;) {
        expect_identifier("exception type");
        while (accept_symbol(".")) expect_identifier("exception type");
        if (cur().is_symbol("<")) skip_generic_args();
        if (!accept_symbol(",")) break;
      }
    }
    if (accept_symbol(";")) {  // abstract/native: nothing to analyze
      m.span = span_from(start_tok);
      m.analyzable = false;
      m.problem = "method has no body";
      m.problem_span = m.span;
      return;
    }
    if (!cur().is_symbol("{")) fail("expected method body");
    std::size_t body_open = pos_;
    std::size_t nodes_before = unit_.nodes.size();
    try {
      m.body = parse_block();
      m.span = span_from(start_tok);
    } catch (const UnsupportedConstruct& uc) {
      unit_.nodes.resize(nodes_before);
      m.body = kInvalidNode;
      m.analyzable = false;
      m.problem = uc.what;
      m.problem_span = uc.span;
      skip_method_body(body_open);
      m.span = span_from(start_tok);
    }
  }

  void skip_method_body(std::size_t open_tok) {
    pos_ = open_tok;
    int depth = 0;
    do {
      if (cur().is(TokenKind::EndOfFile)) fail("unterminated method body");
      if (cur().is_symbol("{")) ++depth;
      if (cur().is_symbol("}")) --depth;
      advance();
    } while (depth > 0);
  }

  // ---- statements ----

  NodeId parse_block() {
    std::size_t start = pos_;
    expect_symbol("{");
    std::vector<NodeId> stmts;
    while (!cur().is_symbol("}")) {
      if (cur().is(TokenKind::EndOfFile)) fail("unterminated block");
      stmts.push_back(parse_statement());
    }
    Span s{tokens_[start].span.begin, cur().span.end};
    expect_symbol("}");
    NodeId id = make(NodeKind::Block, s);
    unit_.node(id).children = std::move(stmts);
    return id;
  }

  NodeId parse_statement() {
    const Token& t = cur();
    if (t.is_symbol("{")) return parse_block();
    if (t.is_symbol(";")) {
      NodeId id = make(NodeKind::Empty, t.span);
      advance();
      return id;
    }
    if (t.is(TokenKind::Keyword)) {
      if (t.text == "if") return parse_if();
      if (t.text == "while") return parse_while();
      if (t.text == "do") return parse_do_while();
      if (t.text == "for") return parse_for();
      if (t.text == "switch") return parse_switch();
      if (t.text == "break" || t.text == "continue") return parse_jump();
      if (t.text == "return") return parse_return();
      if (t.text == "throw") return parse_throw();
      if (t.text == "try") return parse_try();
      if (t.text == "final" || is_primitive_type(t)) {
        return parse_local_decl_statement();
      }
    }
    if (t.is(TokenKind::Identifier) && peek().is_symbol(":")) {
      return parse_labeled();
    }
    if (t.is(TokenKind::Identifier)) {
      NodeId decl;
      if (try_parse_local_decl(decl)) return decl;
    }
    return parse_expression_statement();
  }

  NodeId parse_expression_statement() {
    std::size_t start = pos_;
    NodeId expr = parse_expression();
    expect_symbol(";");
    NodeId id = make(NodeKind::ExprStmt, span_from(start));
    unit_.node(id).children = {expr};
    return id;
  }

  NodeId parse_local_decl_statement() {
    std::size_t start = pos_;
    if (cur().is_keyword("final")) advance();
    std::string type = parse_type();
    return parse_declarators(type, start);
  }

  bool try_parse_local_decl(NodeId& out) {
    std::size_t save_pos = pos_;
    std::size_t save_nodes = unit_.nodes.size();
    bool save_tentative = tentative_;
    tentative_ = true;
    std::string type;
    bool ok = false;
    try {
      type = parse_type();
      ok = cur().is(TokenKind::Identifier) &&
           (peek().is_symbol("=") || peek().is_symbol(";") ||
            peek().is_symbol(","));
    } catch (const TentativeFail&) {
      ok = false;
    }
    tentative_ = save_tentative;
    if (!ok) {
      pos_ = save_pos;
      unit_.nodes.resize(save_nodes);
      return false;
    }
    pos_ = save_pos;
    unit_.nodes.resize(save_nodes);
    std::size_t start = pos_;
    type = parse_type();
    out = parse_declarators(type, start);
    return true;
  }

  NodeId parse_declarators(const std::string& type, std::size_t start_tok) {
    std::vector<NodeId> declarators;
    for (;;) {
      std::size_t dstart = pos_;
      std::string name = expect_identifier("variable name");
      NodeId init = kInvalidNode;
      if (accept_symbol("=")) init = parse_expression();
      NodeId d = make(NodeKind::VarDeclarator, span_from(dstart));
      unit_.node(d).text = name;
      unit_.node(d).text2 = type;
      if (init != kInvalidNode) unit_.node(d).children = {init};
      declarators.push_back(d);
      if (!accept_symbol(",")) break;
    }
    expect_symbol(";");
    NodeId id = make(NodeKind::LocalVarDecl, span_from(start_tok));
    unit_.node(id).text = type;
    unit_.node(id).children = std::move(declarators);
    return id;
  }

  NodeId parse_if() {
    std::size_t start = pos_;
    expect_keyword("if");
    expect_symbol("(");
    NodeId cond = parse_expression();
    expect_symbol(")");
    NodeId then_stmt = parse_statement();
    NodeId else_stmt = kInvalidNode;
    if (cur().is_keyword("else")) {
      advance();
      else_stmt = parse_statement();
    }
    NodeId id = make(NodeKind::If, span_from(start));
    unit_.node(id).children = {cond, then_stmt};
    if (else_stmt != kInvalidNode) unit_.node(id).children.push_back(else_stmt);
    return id;
  }

  NodeId parse_while() {
    std::size_t start = pos_;
    expect_keyword("while");
    expect_symbol("(");
    NodeId cond = parse_expression();
    expect_symbol(")");
    NodeId body = parse_statement();
    NodeId id = make(NodeKind::While, span_from(start));
    unit_.node(id).children = {cond, body};
    return id;
  }

  NodeId parse_do_while() {
    std::size_t start = pos_;
    expect_keyword("do");
    NodeId body = parse_statement();
    expect_keyword("while");
    expect_symbol("(");
    NodeId cond = parse_expression();
    expect_symbol(")");
    expect_symbol(";");
    NodeId id = make(NodeKind::DoWhile, span_from(start));
    unit_.node(id).children = {body, cond};
    return id;
  }

  NodeId parse_for() {
    std::size_t start = pos_;
    expect_keyword("for");
    expect_symbol("(");

    // for-each: [final] Type name : iterable
    {
      std::size_t save_pos = pos_;
      std::size_t save_nodes = unit_.nodes.size();
      bool save_tentative = tentative_;
      tentative_ = true;
      bool foreach_form = false;
      std::string elem_type;
      try {
        if (cur().is_keyword("final")) advance();
        elem_type = parse_type();
        foreach_form = cur().is(TokenKind::Identifier) && peek().is_symbol(":");
      } catch (const TentativeFail&) {
        foreach_form = false;
      }
      tentative_ = save_tentative;
      if (foreach_form) {
        std::size_t vstart = pos_;
        std::string name = expect_identifier("loop variable");
        NodeId var = make(NodeKind::VarDeclarator, span_from(vstart));
        unit_.node(var).text = name;
        unit_.node(var).text2 = elem_type;
        expect_symbol(":");
        NodeId iterable = parse_expression();
        expect_symbol(")");
        NodeId body = parse_statement();
        NodeId id = make(NodeKind::ForEach, span_from(start));
        unit_.node(id).text = elem_type;
        unit_.node(id).children = {var, iterable, body};
        return id;
      }
      pos_ = save_pos;
      unit_.nodes.resize(save_nodes);
    }

    std::uint8_t aux = 0;
    NodeId init = kInvalidNode;
    if (accept_symbol(";")) {
      // no init
    } else {
      bool decl_form = false;
      if (cur().is_keyword("final") || is_primitive_type(cur())) {
        decl_form = true;
      } else if (cur().is(TokenKind::Identifier)) {
        std::size_t save_pos = pos_;
        std::size_t save_nodes = unit_.nodes.size();
        bool save_tentative = tentative_;
        tentative_ = true;
        try {
          parse_type();
          decl_form = cur().is(TokenKind::Identifier);
        } catch (const TentativeFail&) {
          decl_form = false;
        }
        tentative_ = save_tentative;
        pos_ = save_pos;
        unit_.nodes.resize(save_nodes);
      }
      if (decl_form) {
        std::size_t istart = pos_;
        if (cur().is_keyword("final")) advance();
        std::string type = parse_type();
        init = parse_declarators(type, istart);  // consumes ';'
        aux |= kForInitDecl;
      } else {
        init = parse_expr_list();
        aux |= kForInitExprs;
        expect_symbol(";");
      }
    }
    NodeId cond = kInvalidNode;
    if (!cur().is_symbol(";")) {
      cond = parse_expression();
      aux |= kForHasCond;
    }
    expect_symbol(";");
    NodeId update = kInvalidNode;
    if (!cur().is_symbol(")")) {
      update = parse_expr_list();
      aux |= kForHasUpdate;
    }
    expect_symbol(")");
    NodeId body = parse_statement();
    NodeId id = make(NodeKind::For, span_from(start));
    unit_.node(id).aux = aux;
    auto& children = unit_.node(id).children;
    if (init != kInvalidNode) children.push_back(init);
    if (cond != kInvalidNode) children.push_back(cond);
    if (update != kInvalidNode) children.push_back(update);
    children.push_back(body);
    return id;
  }

  NodeId parse_expr_list() {
    std::size_t start = pos_;
    std::vector<NodeId> exprs;
    exprs.push_back(parse_expression());
    while (accept_symbol(",")) exprs.push_back(parse_expression());
    NodeId id = make(NodeKind::ExprList, span_from(start));
    unit_.node(id).children = std::move(exprs);
    return id;
  }

  NodeId parse_switch() {
    std::size_t start = pos_;
    expect_keyword("switch");
    expect_symbol("(");
    NodeId scrutinee = parse_expression();
    expect_symbol(")");
    expect_symbol("{");
    std::vector<NodeId> groups;
    while (!cur().is_symbol("}")) {
      if (cur().is(TokenKind::EndOfFile)) fail("unterminated switch");
      groups.push_back(parse_case_group());
    }
    Span s{tokens_[start].span.begin, cur().span.end};
    expect_symbol("}");
    NodeId id = make(NodeKind::Switch, s);
    unit_.node(id).children.push_back(scrutinee);
    for (NodeId g : groups) unit_.node(id).children.push_back(g);
    return id;
  }

  NodeId parse_case_group() {
    std::size_t start = pos_;
    std::vector<NodeId> children;
    if (!cur().is_keyword("case") && !cur().is_keyword("default"))
      fail("expected 'case' or 'default'");
    while (cur().is_keyword("case") || cur().is_keyword("default")) {
      std::size_t lstart = pos_;
      bool is_default = cur().is_keyword("default");
      advance();
      NodeId label_expr = kInvalidNode;
      if (!is_default) label_expr = parse_ternary_no_assign();
      expect_symbol(":");
      NodeId label = make(NodeKind::CaseLabel, span_from(lstart));
      if (label_expr != kInvalidNode) unit_.node(label).children = {label_expr};
      children.push_back(label);
    }
    while (!cur().is_keyword("case") && !cur().is_keyword("default") &&
           !cur().is_symbol("}")) {
      if (cur().is(TokenKind::EndOfFile)) fail("unterminated switch");
      children.push_back(parse_statement());
    }
    NodeId id = make(NodeKind::CaseGroup, span_from(start));
    unit_.node(id).children = std::move(children);
    return id;
  }

  NodeId parse_jump() {
    std::size_t start = pos_;
    bool is_break = cur().is_keyword("break");
    advance();
    std::string label;
    if (cur().is(TokenKind::Identifier)) {
      label = std::string(cur().text);
      advance();
    }
    expect_symbol(";");
    NodeId id = make(is_break ? NodeKind::Break : NodeKind::Continue,
                     span_from(start));
    unit_.node(id).text = label;
    return id;
  }

  NodeId parse_return() {
    std::size_t start = pos_;
    expect_keyword("return");
    NodeId expr = kInvalidNode;
    if (!cur().is_symbol(";")) expr = parse_expression();
    expect_symbol(";");
    NodeId id = make(NodeKind::Return, span_from(start));
    if (expr != kInvalidNode) unit_.node(id).children = {expr};
    return id;
  }

  NodeId parse_throw() {
    std::size_t start = pos_;
    expect_keyword("throw");
    NodeId expr = parse_expression();
    expect_symbol(";");
    NodeId id = make(NodeKind::Throw, span_from(start));
    unit_.node(id).children = {expr};
    return id;
  }

  NodeId parse_try() {
    std::size_t start = pos_;
    expect_keyword("try");
    NodeId body = parse_block();
    std::vector<NodeId> children = {body};
    bool has_catch = false;
    while (cur().is_keyword("catch")) {
      has_catch = true;
      std::size_t cstart = pos_;
      advance();
      expect_symbol("(");
      if (cur().is_keyword("final")) advance();
      std::string types = parse_type();
      while (accept_symbol("|")) types += " | " + parse_type();
      std::size_t vstart = pos_;
      std::string name = expect_identifier("catch parameter");
      NodeId var = make(NodeKind::VarDeclarator,
                        Span{tokens_[vstart].span.begin, prev().span.end});
      unit_.node(var).text = name;
      unit_.node(var).text2 = types;
      expect_symbol(")");
      NodeId cbody = parse_block();
      NodeId clause = make(NodeKind::Catch, span_from(cstart));
      unit_.node(clause).children = {var, cbody};
      children.push_back(clause);
    }
    if (cur().is_keyword("finally")) {
      std::size_t fstart = pos_;
      advance();
      NodeId fbody = parse_block();
      NodeId fin = make(NodeKind::Finally, span_from(fstart));
      unit_.node(fin).children = {fbody};
      children.push_back(fin);
    } else if (!has_catch) {
      fail("'try' requires at least one catch or finally");
    }
    NodeId id = make(NodeKind::Try, span_from(start));
    unit_.node(id).children = std::move(children);
    return id;
  }

  NodeId parse_labeled() {
    std::size_t start = pos_;
    std::string label = expect_identifier("label");
    expect_symbol(":");
    NodeId stmt = parse_statement();
    NodeId id = make(NodeKind::Labeled, span_from(start));
    unit_.node(id).text = label;
    unit_.node(id).children = {stmt};
    return id;
  }

  // ---- expressions ----

  NodeId parse_expression() { return parse_assignment(); }

  NodeId parse_assignment() {
    std::size_t start = pos_;
    NodeId lhs = parse_ternary_no_assign();
    if (is_assign_op(cur())) {
      std::string op(cur().text);
      advance();
      NodeId rhs = parse_assignment();
      NodeId id = make(NodeKind::Assign, span_from(start));
      unit_.node(id).text = op;
      unit_.node(id).children = {lhs, rhs};
      return id;
    }
    return lhs;
  }

  NodeId parse_ternary_no_assign() {
    std::size_t start = pos_;
    NodeId cond = parse_binary(0);
    if (cur().is_symbol("?")) {
      advance();
      NodeId then_expr = parse_assignment();
      expect_symbol(":");
      NodeId else_expr = parse_assignment();
      NodeId id = make(NodeKind::Ternary, span_from(start));
      unit_.node(id).children = {cond, then_expr, else_expr};
      return id;
    }
    return cond;
  }

  // Precedence levels, loosest first.
  static constexpr int kNumLevels = 9;
  bool level_matches(int level, const Token& t) const {
    if (t.kind != TokenKind::Symbol) return false;
    switch (level) {
      case 0: return t.text == "||";
      case 1: return t.text == "&&";
      case 2: return t.text == "|";
      case 3: return t.text == "^";
      case 4: return t.text == "&";
      case 5: return t.text == "==" || t.text == "!=";
      case 6:
        return t.text == "<" || t.text == ">" || t.text == "<=" ||
               t.text == ">=";
      case 7: return t.text == "+" || t.text == "-";
      case 8: return t.text == "*" || t.text == "/" || t.text == "%";
    }
    return false;
  }

  NodeId parse_binary(int level) {
    if (level >= kNumLevels) return parse_unary();
    std::size_t start = pos_;
    NodeId lhs = parse_binary(level + 1);
    for (;;) {
      if (level == 6 && cur().is_keyword("instanceof")) {
        advance();
        std::string type = parse_type();
        NodeId id = make(NodeKind::InstanceOf, span_from(start));
        unit_.node(id).text = type;
        unit_.node(id).children = {lhs};
        lhs = id;
        continue;
      }
      if (!level_matches(level, cur())) return lhs;
      std::string op(cur().text);
      advance();
      NodeId rhs = parse_binary(level + 1);
      NodeId id = make(NodeKind::Binary, span_from(start));
      unit_.node(id).text = op;
      unit_.node(id).children = {lhs, rhs};
      lhs = id;
    }
  }

  NodeId parse_unary() {
    const Token& t = cur();
    if (t.is_symbol("!") || t.is_symbol("-") || t.is_symbol("+") ||
        t.is_symbol("++") || t.is_symbol("--")) {
      std::size_t start = pos_;
      std::string op(t.text);
      advance();
      NodeId operand = parse_unary();
      NodeId id = make(NodeKind::Unary, span_from(start));
      unit_.node(id).text = op;
      unit_.node(id).children = {operand};
      return id;
    }
    return parse_postfix();
  }

  [[noreturn]] void unsupported(Span span, const std::string& what) {
    if (tentative_) throw TentativeFail{};
    throw UnsupportedConstruct{span, what};
  }

  NodeId parse_postfix() {
    std::size_t start = pos_;
    NodeId expr = parse_primary();
    for (;;) {
      if (cur().is_symbol("->"))
        unsupported(cur().span, "lambda expression");
      if (cur().is_symbol(".") && peek().is(TokenKind::Identifier)) {
        advance();
        std::string name = expect_identifier("member name");
        if (cur().is_symbol("(")) {
          std::vector<NodeId> args = parse_args();
          NodeId id = make(NodeKind::Call, span_from(start));
          unit_.node(id).text = name;
          unit_.node(id).aux = kCallHasReceiver;
          unit_.node(id).children = {expr};
          for (NodeId a : args) unit_.node(id).children.push_back(a);
          expr = id;
        } else {
          NodeId id = make(NodeKind::FieldAccess, span_from(start));
          unit_.node(id).text = name;
          unit_.node(id).children = {expr};
          expr = id;
        }
        continue;
      }
      if (cur().is_symbol("[")) {
        advance();
        NodeId index = parse_expression();
        expect_symbol("]");
        NodeId id = make(NodeKind::ArrayAccess, span_from(start));
        unit_.node(id).children = {expr, index};
        expr = id;
        continue;
      }
      if (cur().is_symbol("++") || cur().is_symbol("--")) {
        std::string op(cur().text);
        advance();
        NodeId id = make(NodeKind::Postfix, span_from(start));
        unit_.node(id).text = op;
        unit_.node(id).children = {expr};
        expr = id;
        continue;
      }
      return expr;
    }
  }

  std::vector<NodeId> parse_args() {
    expect_symbol("(");
    std::vector<NodeId> args;
    if (!cur().is_symbol(")")) {
      args.push_back(parse_assignment());
      while (accept_symbol(",")) args.push_back(parse_assignment());
    }
    expect_symbol(")");
    return args;
  }

  NodeId parse_primary() {
    const Token& t = cur();
    std::size_t start = pos_;

    if (t.is_symbol("(")) {
      // Any parenthesized group immediately followed by `->` is a lambda
      // parameter list, whatever its contents.
      std::size_t i = pos_ + 1;
      int depth = 1;
      while (depth > 0 && !tokens_[i].is(TokenKind::EndOfFile)) {
        if (tokens_[i].is_symbol("(")) ++depth;
        if (tokens_[i].is_symbol(")")) --depth;
        ++i;
      }
      if (depth == 0 && tokens_[i].is_symbol("->"))
        unsupported(Span{t.span.begin, tokens_[i].span.end},
                    "lambda expression");
      if (peek().is_symbol(")")) fail("empty parentheses");
      advance();
      NodeId inner = parse_expression();
      expect_symbol(")");
      if (cur().is_symbol("->"))
        unsupported(cur().span, "lambda expression");
      NodeId id = make(NodeKind::Paren, span_from(start));
      unit_.node(id).children = {inner};
      return id;
    }

    if (t.is(TokenKind::IntLiteral) || t.is(TokenKind::FloatLiteral) ||
        t.is(TokenKind::StringLiteral) || t.is(TokenKind::CharLiteral) ||
        t.is_keyword("true") || t.is_keyword("false") ||
        t.is_keyword("null")) {
      NodeId id = make(NodeKind::Literal, t.span);
      unit_.node(id).text = std::string(t.text);
      advance();
      return id;
    }

    if (t.is_keyword("this")) {
      NodeId id = make(NodeKind::Identifier, t.span);
      unit_.node(id).text = "this";
      advance();
      return id;
    }

    if (t.is_keyword("new")) return parse_creator();

    if (t.is(TokenKind::Identifier)) {
      std::string name(t.text);
      advance();
      if (cur().is_symbol("(")) {
        std::vector<NodeId> args = parse_args();
        NodeId id = make(NodeKind::Call, span_from(start));
        unit_.node(id).text = name;
        unit_.node(id).children = std::move(args);
        return id;
      }
      NodeId id = make(NodeKind::Identifier, t.span);
      unit_.node(id).text = name;
      return id;
    }

    fail("expected expression, got " + describe(t));
  }

  NodeId parse_creator() {
    std::size_t start = pos_;
    expect_keyword("new");
    std::string type = parse_type(/*allow_array=*/false);

    if (cur().is_symbol("[")) {
      std::vector<NodeId> dims;
      while (cur().is_symbol("[")) {
        advance();
        if (!cur().is_symbol("]")) dims.push_back(parse_expression());
        expect_symbol("]");
      }
      std::uint8_t aux = 0;
      NodeId init = kInvalidNode;
      if (cur().is_symbol("{")) {
        std::size_t istart = pos_;
        advance();
        std::vector<NodeId> elems;
        if (!cur().is_symbol("}")) {
          elems.push_back(parse_assignment());
          while (accept_symbol(",")) elems.push_back(parse_assignment());
        }
        Span s{tokens_[istart].span.begin, cur().span.end};
        expect_symbol("}");
        init = make(NodeKind::ExprList, s);
        unit_.node(init).children = std::move(elems);
        aux |= kNewArrayHasInit;
      }
      NodeId id = make(NodeKind::NewArray, span_from(start));
      unit_.node(id).text = type;
      unit_.node(id).aux = aux;
      unit_.node(id).children = std::move(dims);
      if (init != kInvalidNode) unit_.node(id).children.push_back(init);
      return id;
    }

    std::vector<NodeId> args = parse_args();
    if (cur().is_symbol("{"))
      unsupported(Span{tokens_[start].span.begin, cur().span.end},
                  "anonymous class");
    NodeId id = make(NodeKind::NewObject, span_from(start));
    unit_.node(id).text = type;
    unit_.node(id).children = std::move(args);
    return id;
  }
};

}  // namespace

CompilationUnit parse(SourceFile source) {
  CompilationUnit unit;
  unit.source = std::move(source);
  std::vector<Token> tokens = tokenize(unit.source);
  unit.token_spans.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (!t.is(TokenKind::EndOfFile)) unit.token_spans.push_back(t.span);
  }
  Parser parser(unit, tokens);
  parser.parse_unit();
  return unit;
}

ParsedFragment parse_statement_fragment(const std::string& text) {
  ParsedFragment fragment;
  fragment.unit.source = SourceFile::from_text("<fragment>", text);
  std::vector<Token> tokens = tokenize(fragment.unit.source);
  Parser parser(fragment.unit, tokens);
  fragment.root = parser.parse_statement_entry();
  return fragment;
}

ParsedFragment parse_expression_fragment(const std::string& text) {
  ParsedFragment fragment;
  fragment.unit.source = SourceFile::from_text("<fragment>", text);
  std::vector<Token> tokens = tokenize(fragment.unit.source);
  Parser parser(fragment.unit, tokens);
  fragment.root = parser.parse_expression_entry();
  return fragment;
}

}  // namespace ccred
