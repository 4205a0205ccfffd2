#include "lca/parser.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>

namespace lca {

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, Newline, End };
  Kind kind;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blanks();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      int line = line_, col = col_;
      if (c == '\n') {
        advance();
        if (!out.empty() && out.back().kind != Token::Kind::Newline)
          out.push_back({Token::Kind::Newline, "\n", line, col});
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          text += src_[pos_], advance();
        out.push_back({Token::Kind::Int, text, line, col});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string text;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          text += src_[pos_], advance();
        out.push_back({Token::Kind::Ident, text, line, col});
        continue;
      }
      // multi-char punctuation first
      for (const char* two : {"==", "!=", "<=", ">=", ".."}) {
        if (src_.substr(pos_, 2) == two) {
          out.push_back({Token::Kind::Punct, two, line, col});
          advance(), advance();
          goto next;
        }
      }
      if (std::string_view("()=+-*/^<>,").find(c) != std::string_view::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
        advance();
        continue;
      }
      throw ParseDiagnostic(std::string("unexpected character '") + c + "'", line, col);
    next:;
    }
    out.push_back({Token::Kind::Newline, "\n", line_, col_});
    out.push_back({Token::Kind::End, "", line_, col_});
    return out;
  }

 private:
  void skip_blanks() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'))
      advance();
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

/// Syntax tree for scalar expressions, lowered to Poly once all
/// declarations are known.
struct Expr {
  enum class Kind { Num, Var, Add, Sub, Mul, Pow, Neg };
  Kind kind;
  Rational value;           // Num
  std::string name;         // Var
  std::uint32_t exponent = 0;  // Pow
  std::vector<Expr> kids;
  int line = 0, col = 0;
};

struct RawTerm {
  std::optional<Expr> coeff;  // absent: coefficient 1
  std::string family;
  Expr index;
  int line = 0, col = 0;
};

struct RawGuardAtom {
  Expr lhs;
  CmpOp op;
  Expr rhs;
};

struct RawBracket {
  std::string left_family, left_var, right_family, right_var;
  std::vector<RawTerm> terms;  // empty: zero
  std::vector<RawGuardAtom> guard;
  int line = 0, col = 0;
};

struct RawAction {
  std::string family;
  std::optional<long> concrete_index;
  std::string index_var;
  std::string basis_var;          // graded pattern v(j)
  std::string basis_name;         // the 'v' token
  std::vector<RawTerm> terms;     // graded rhs; rank-one uses plain_coeff
  std::optional<Expr> plain_coeff;
  std::vector<RawGuardAtom> guard;
  int line = 0, col = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  AlgebraDef algebra() {
    scan_statements(/*module_mode=*/false);
    AlgebraDef def;
    def.params = params_;
    def.families = families_;
    def.truncation = truncation_;

    std::vector<std::string> index_vars;
    for (auto& rb : raw_brackets_) {
      index_vars.push_back(rb.left_var);
      index_vars.push_back(rb.right_var);
    }
    def.ring = make_ring(params_, index_vars);

    std::set<std::pair<std::string, std::string>> seen;
    for (auto& rb : raw_brackets_) {
      BracketRule rule;
      rule.left_family = rb.left_family;
      rule.left_var = rb.left_var;
      rule.right_family = rb.right_family;
      rule.right_var = rb.right_var;
      require_family(def, rb.left_family, rb.line, rb.col);
      require_family(def, rb.right_family, rb.line, rb.col);
      if (rb.left_var == rb.right_var)
        throw ParseDiagnostic("bracket pattern reuses index variable '" + rb.left_var + "'",
                              rb.line, rb.col);
      auto key = std::minmax(rb.left_family, rb.right_family);
      if (!seen.insert({key.first, key.second}).second)
        throw ParseDiagnostic("family pair (" + rb.left_family + ", " + rb.right_family +
                                  ") already covered by an earlier rule (mirrors are derived)",
                              rb.line, rb.col);
      std::set<std::string> scope = {rb.left_var, rb.right_var};
      for (auto& rt : rb.terms) {
        ResultTerm term;
        term.coeff = rt.coeff ? lower_scalar(def.ring, *rt.coeff, scope)
                              : Poly::constant(def.ring, 1);
        require_family(def, rt.family, rt.line, rt.col);
        term.family = rt.family;
        term.index = lower_index(rt.index, scope);
        rule.result.push_back(std::move(term));
      }
      if (!rb.guard.empty()) rule.guard = lower_guard(def.ring, rb.guard, scope);
      def.rules.push_back(std::move(rule));
    }
    return def;
  }

  ModuleDef module(const AlgebraDef& algebra) {
    scan_statements(/*module_mode=*/true);
    if (!module_name_)
      throw ParseDiagnostic("missing module header", 1, 1);
    ModuleDef def;
    def.name = *module_name_;
    def.algebra_name = module_algebra_;
    def.graded = graded_;
    def.params = params_;

    std::vector<VarDecl> extra;
    for (auto& p : params_) {
      if (algebra.ring->has(p))
        throw ParseDiagnostic("module parameter '" + p + "' collides with an algebra name",
                              module_line_, 1);
      extra.push_back({p, VarKind::Parameter});
    }
    std::set<std::string> new_index;
    for (auto& ra : raw_actions_) {
      if (!ra.index_var.empty() && !algebra.ring->has(ra.index_var)) new_index.insert(ra.index_var);
      if (!ra.basis_var.empty() && !algebra.ring->has(ra.basis_var)) new_index.insert(ra.basis_var);
    }
    for (auto& v : new_index) extra.push_back({v, VarKind::Index});
    def.ring = extra.empty() ? algebra.ring : algebra.ring->extend(std::move(extra));
    for (auto& [name, value] : algebra.bound) def.bound.emplace(name, value.transfer(def.ring));

    for (auto& ra : raw_actions_) {
      ActionRule action;
      if (!algebra.find_family(ra.family))
        throw ParseDiagnostic("unknown family: " + ra.family, ra.line, ra.col);
      action.family = ra.family;
      action.concrete_index = ra.concrete_index;
      action.index_var = ra.index_var;
      action.basis_var = ra.basis_var;
      if (def.graded && ra.basis_var.empty())
        throw ParseDiagnostic("graded module action needs a basis pattern", ra.line, ra.col);
      if (!def.graded && !ra.basis_var.empty())
        throw ParseDiagnostic("basis pattern in non-graded module", ra.line, ra.col);

      std::set<std::string> scope;
      if (!ra.index_var.empty()) scope.insert(ra.index_var);
      if (!ra.basis_var.empty()) scope.insert(ra.basis_var);

      if (def.graded) {
        if (ra.terms.size() > 1)
          throw ParseDiagnostic("graded action must map to a single basis target", ra.line,
                                ra.col);
        if (ra.terms.empty()) {
          action.coeff = Poly::zero(def.ring);
        } else {
          const RawTerm& rt = ra.terms.front();
          if (rt.family != ra.basis_name)
            throw ParseDiagnostic("graded action target must use basis symbol '" +
                                      ra.basis_name + "'",
                                  rt.line, rt.col);
          action.coeff = rt.coeff ? lower_scalar(def.ring, *rt.coeff, scope)
                                  : Poly::constant(def.ring, 1);
          action.target = lower_index(rt.index, scope);
        }
      } else {
        action.coeff = ra.plain_coeff ? lower_scalar(def.ring, *ra.plain_coeff, scope)
                                      : Poly::zero(def.ring);
      }
      if (!ra.guard.empty()) action.guard = lower_guard(def.ring, ra.guard, scope);
      def.actions.push_back(std::move(action));
    }
    return def;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool at_punct(std::string_view p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool at_ident(std::string_view name) const {
    return peek().kind == Token::Kind::Ident && peek().text == name;
  }
  Token expect_punct(std::string_view p) {
    if (!at_punct(p))
      throw ParseDiagnostic("expected '" + std::string(p) + "', found '" + peek().text + "'",
                            peek().line, peek().col);
    return take();
  }
  Token expect_ident() {
    if (peek().kind != Token::Kind::Ident)
      throw ParseDiagnostic("expected identifier, found '" + peek().text + "'", peek().line,
                            peek().col);
    return take();
  }
  long expect_int() {
    if (peek().kind != Token::Kind::Int)
      throw ParseDiagnostic("expected integer, found '" + peek().text + "'", peek().line,
                            peek().col);
    Token t = take();
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      throw ParseDiagnostic("integer literal out of range", t.line, t.col);
    }
  }
  void end_statement() {
    if (peek().kind == Token::Kind::End) return;
    if (peek().kind != Token::Kind::Newline)
      throw ParseDiagnostic("unexpected '" + peek().text + "' at end of statement", peek().line,
                            peek().col);
    take();
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::Newline) take();
  }

  // ---- statement scanning ----
  void scan_statements(bool module_mode) {
    skip_newlines();
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      if (t.kind != Token::Kind::Ident)
        throw ParseDiagnostic("expected statement keyword, found '" + t.text + "'", t.line,
                              t.col);
      if (t.text == "params") {
        take();
        if (peek().kind != Token::Kind::Ident)
          throw ParseDiagnostic("params statement needs at least one name", t.line, t.col);
        while (peek().kind == Token::Kind::Ident) {
          std::string p = take().text;
          if (std::find(params_.begin(), params_.end(), p) != params_.end())
            throw ParseDiagnostic("duplicate parameter: " + p, t.line, t.col);
          params_.push_back(std::move(p));
        }
        end_statement();
      } else if (t.text == "family") {
        if (module_mode)
          throw ParseDiagnostic("family declaration inside a module definition", t.line, t.col);
        take();
        FamilyDecl fam;
        fam.name = expect_ident().text;
        if (at_ident("all")) {
          take();
        } else {
          long lo = expect_int();
          expect_punct("..");
          long hi = expect_int();
          if (lo != 0 || hi < 0)
            throw ParseDiagnostic("family range must be 0..n with n >= 0", t.line, t.col);
          fam.max_index = hi;
        }
        for (auto& f : families_)
          if (f.name == fam.name)
            throw ParseDiagnostic("duplicate family: " + fam.name, t.line, t.col);
        families_.push_back(std::move(fam));
        end_statement();
      } else if (t.text == "truncate") {
        if (module_mode)
          throw ParseDiagnostic("truncate statement inside a module definition", t.line, t.col);
        take();
        long n = expect_int();
        if (n < 0) throw ParseDiagnostic("truncation must be >= 0", t.line, t.col);
        truncation_ = n;
        end_statement();
      } else if (t.text == "bracket") {
        if (module_mode)
          throw ParseDiagnostic("bracket statement inside a module definition", t.line, t.col);
        raw_brackets_.push_back(scan_bracket());
      } else if (t.text == "module") {
        if (!module_mode)
          throw ParseDiagnostic("module statement inside an algebra definition", t.line, t.col);
        if (module_name_)
          throw ParseDiagnostic("duplicate module header", t.line, t.col);
        take();
        module_name_ = expect_ident().text;
        module_line_ = t.line;
        if (!at_ident("over"))
          throw ParseDiagnostic("expected 'over' in module header", peek().line, peek().col);
        take();
        module_algebra_ = expect_ident().text;
        if (at_ident("graded")) {
          take();
          graded_ = true;
        }
        end_statement();
      } else if (t.text == "action") {
        if (!module_mode)
          throw ParseDiagnostic("action statement inside an algebra definition", t.line, t.col);
        if (!module_name_)
          throw ParseDiagnostic("action statement before module header", t.line, t.col);
        raw_actions_.push_back(scan_action());
      } else {
        throw ParseDiagnostic("unknown statement keyword: " + t.text, t.line, t.col);
      }
      skip_newlines();
    }
  }

  RawBracket scan_bracket() {
    Token kw = take();  // 'bracket'
    RawBracket rb;
    rb.line = kw.line;
    rb.col = kw.col;
    rb.left_family = expect_ident().text;
    expect_punct("(");
    rb.left_var = expect_ident().text;
    expect_punct(")");
    rb.right_family = expect_ident().text;
    expect_punct("(");
    rb.right_var = expect_ident().text;
    expect_punct(")");
    expect_punct("=");
    rb.terms = scan_rhs_terms();
    rb.guard = scan_optional_guard();
    end_statement();
    return rb;
  }

  RawAction scan_action() {
    Token kw = take();  // 'action'
    RawAction ra;
    ra.line = kw.line;
    ra.col = kw.col;
    ra.family = expect_ident().text;
    expect_punct("(");
    if (peek().kind == Token::Kind::Int) {
      ra.concrete_index = expect_int();
    } else {
      ra.index_var = expect_ident().text;
    }
    expect_punct(")");
    if (peek().kind == Token::Kind::Ident && !at_ident("if") && !at_punct("=")) {
      // graded basis pattern: v(j)
      ra.basis_name = expect_ident().text;
      expect_punct("(");
      ra.basis_var = expect_ident().text;
      expect_punct(")");
    }
    expect_punct("=");
    if (!ra.basis_var.empty()) {
      ra.terms = scan_rhs_terms();
      for (auto& t : ra.terms)
        if (t.family != ra.basis_name)
          throw ParseDiagnostic("graded action target must be " + ra.basis_name + "(...)",
                                t.line, t.col);
    } else {
      // rank-one action: a plain scalar expression (possibly 0)
      ra.plain_coeff = scan_expr(0);
      if (ra.plain_coeff->kind == Expr::Kind::Num && ra.plain_coeff->value.is_zero())
        ra.plain_coeff.reset();
    }
    ra.guard = scan_optional_guard();
    end_statement();
    return ra;
  }

  std::vector<RawGuardAtom> scan_optional_guard() {
    std::vector<RawGuardAtom> atoms;
    if (!at_ident("if")) return atoms;
    take();
    while (true) {
      RawGuardAtom atom;
      atom.lhs = scan_expr(0);
      const Token& t = peek();
      CmpOp op;
      if (at_punct("==")) op = CmpOp::Eq;
      else if (at_punct("!=")) op = CmpOp::Ne;
      else if (at_punct("<=")) op = CmpOp::Le;
      else if (at_punct("<")) op = CmpOp::Lt;
      else if (at_punct(">=")) op = CmpOp::Ge;
      else if (at_punct(">")) op = CmpOp::Gt;
      else
        throw ParseDiagnostic("expected comparison operator in guard", t.line, t.col);
      take();
      atom.op = op;
      atom.rhs = scan_expr(0);
      atoms.push_back(std::move(atom));
      if (at_ident("and")) {
        take();
        continue;
      }
      break;
    }
    return atoms;
  }

  /// rhs := "0" | ["-"] term { ("+"|"-") term }
  /// term := { factor "*" } FAMILY "(" index-expr ")"
  std::vector<RawTerm> scan_rhs_terms() {
    std::vector<RawTerm> terms;
    if (peek().kind == Token::Kind::Int && peek().text == "0" &&
        (peek(1).kind == Token::Kind::Newline || peek(1).kind == Token::Kind::End ||
         (peek(1).kind == Token::Kind::Ident && peek(1).text == "if"))) {
      take();
      return terms;
    }
    bool negate = false;
    if (at_punct("-")) {
      take();
      negate = true;
    }
    while (true) {
      RawTerm term = scan_rhs_term();
      if (negate) {
        Expr neg;
        neg.kind = Expr::Kind::Neg;
        neg.line = term.line;
        neg.col = term.col;
        neg.kids.push_back(term.coeff ? *term.coeff : make_num(1, term.line, term.col));
        term.coeff = std::move(neg);
      }
      terms.push_back(std::move(term));
      if (at_punct("+")) {
        take();
        negate = false;
        continue;
      }
      if (at_punct("-")) {
        take();
        negate = true;
        continue;
      }
      break;
    }
    return terms;
  }

  RawTerm scan_rhs_term() {
    RawTerm term;
    term.line = peek().line;
    term.col = peek().col;
    std::vector<Expr> factors;
    while (true) {
      // a generator term is IDENT '(' ... ')' at the end of the factor chain
      if (peek().kind == Token::Kind::Ident && peek(1).kind == Token::Kind::Punct &&
          peek(1).text == "(" && is_generator_ident(peek().text)) {
        term.family = take().text;
        expect_punct("(");
        term.index = scan_expr(0);
        expect_punct(")");
        break;
      }
      factors.push_back(scan_pow());
      if (at_punct("*")) {
        take();
        continue;
      }
      throw ParseDiagnostic("expected '*' and a generator term", peek().line, peek().col);
    }
    if (!factors.empty()) {
      Expr coeff = std::move(factors.front());
      for (std::size_t i = 1; i < factors.size(); ++i) {
        Expr mul;
        mul.kind = Expr::Kind::Mul;
        mul.line = coeff.line;
        mul.col = coeff.col;
        mul.kids.push_back(std::move(coeff));
        mul.kids.push_back(std::move(factors[i]));
        coeff = std::move(mul);
      }
      term.coeff = std::move(coeff);
    }
    return term;
  }

  bool is_generator_ident(const std::string& name) const {
    for (auto& f : families_)
      if (f.name == name) return true;
    // module files reference the basis symbol, typically 'v'; treat any
    // ident immediately followed by '(' as a generator when inside a module
    return module_name_.has_value();
  }

  // ---- expression parsing (precedence climbing) ----
  static Expr make_num(long v, int line, int col) {
    Expr e;
    e.kind = Expr::Kind::Num;
    e.value = Rational(v);
    e.line = line;
    e.col = col;
    return e;
  }

  Expr scan_expr(int depth) {
    if (depth > 64) throw ParseDiagnostic("expression too deeply nested", peek().line, peek().col);
    bool neg = false;
    if (at_punct("-")) {
      take();
      neg = true;
    }
    Expr e = scan_term(depth);
    if (neg) {
      Expr n;
      n.kind = Expr::Kind::Neg;
      n.line = e.line;
      n.col = e.col;
      n.kids.push_back(std::move(e));
      e = std::move(n);
    }
    while (at_punct("+") || at_punct("-")) {
      bool sub = at_punct("-");
      take();
      Expr rhs = scan_term(depth);
      Expr node;
      node.kind = sub ? Expr::Kind::Sub : Expr::Kind::Add;
      node.line = e.line;
      node.col = e.col;
      node.kids.push_back(std::move(e));
      node.kids.push_back(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  Expr scan_term(int depth) {
    Expr e = scan_pow(depth);
    while (at_punct("*")) {
      take();
      Expr rhs = scan_pow(depth);
      Expr node;
      node.kind = Expr::Kind::Mul;
      node.line = e.line;
      node.col = e.col;
      node.kids.push_back(std::move(e));
      node.kids.push_back(std::move(rhs));
      e = std::move(node);
    }
    return e;
  }

  Expr scan_pow(int depth = 0) {
    Expr base = scan_primary(depth);
    if (at_punct("^")) {
      take();
      long e = expect_int();
      if (e < 0) throw ParseDiagnostic("negative exponent", peek().line, peek().col);
      Expr node;
      node.kind = Expr::Kind::Pow;
      node.exponent = static_cast<std::uint32_t>(e);
      node.line = base.line;
      node.col = base.col;
      node.kids.push_back(std::move(base));
      return node;
    }
    return base;
  }

  Expr scan_primary(int depth) {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      long num = expect_int();
      Expr e = make_num(num, t.line, t.col);
      if (at_punct("/")) {
        take();
        long den = expect_int();
        if (den == 0) throw ParseDiagnostic("zero denominator in rational literal", t.line, t.col);
        e.value = Rational(BigInt(num), BigInt(den));
      }
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      Token id = take();
      Expr e;
      e.kind = Expr::Kind::Var;
      e.name = id.text;
      e.line = id.line;
      e.col = id.col;
      return e;
    }
    if (at_punct("(")) {
      take();
      Expr e = scan_expr(depth + 1);
      expect_punct(")");
      return e;
    }
    if (at_punct("-")) {
      take();
      Expr inner = scan_primary(depth);
      Expr n;
      n.kind = Expr::Kind::Neg;
      n.line = t.line;
      n.col = t.col;
      n.kids.push_back(std::move(inner));
      return n;
    }
    throw ParseDiagnostic("expected expression, found '" + t.text + "'", t.line, t.col);
  }

  // ---- lowering ----
  void require_family(const AlgebraDef& def, const std::string& fam, int line, int col) const {
    if (!def.find_family(fam)) throw ParseDiagnostic("unknown family: " + fam, line, col);
  }

  Poly lower_scalar(const RingPtr& ring, const Expr& e, const std::set<std::string>& scope) const {
    switch (e.kind) {
      case Expr::Kind::Num:
        return Poly::constant(ring, e.value);
      case Expr::Kind::Var: {
        auto v = ring->find(e.name);
        if (!v) throw ParseDiagnostic("undeclared symbol: " + e.name, e.line, e.col);
        VarKind kind = ring->decl(*v).kind;
        if (kind == VarKind::Index && !scope.count(e.name))
          throw ParseDiagnostic("index variable '" + e.name + "' is not bound by this statement",
                                e.line, e.col);
        return Poly::variable(ring, *v);
      }
      case Expr::Kind::Add:
        return lower_scalar(ring, e.kids[0], scope) + lower_scalar(ring, e.kids[1], scope);
      case Expr::Kind::Sub:
        return lower_scalar(ring, e.kids[0], scope) - lower_scalar(ring, e.kids[1], scope);
      case Expr::Kind::Mul:
        return lower_scalar(ring, e.kids[0], scope) * lower_scalar(ring, e.kids[1], scope);
      case Expr::Kind::Pow:
        return lower_scalar(ring, e.kids[0], scope).pow(e.exponent);
      case Expr::Kind::Neg:
        return -lower_scalar(ring, e.kids[0], scope);
    }
    throw Error("unreachable");
  }

  IndexExpr lower_index(const Expr& e, const std::set<std::string>& scope) const {
    switch (e.kind) {
      case Expr::Kind::Num: {
        if (!e.value.is_integer())
          throw ParseDiagnostic("index expression must have integer coefficients", e.line, e.col);
        return IndexExpr::constant(static_cast<long>(e.value.numerator().convert_to<long long>()));
      }
      case Expr::Kind::Var:
        if (!scope.count(e.name))
          throw ParseDiagnostic("index expression may only use the statement's index variables; "
                                "found '" + e.name + "'",
                                e.line, e.col);
        return IndexExpr::variable(e.name);
      case Expr::Kind::Add:
        return lower_index(e.kids[0], scope) + lower_index(e.kids[1], scope);
      case Expr::Kind::Sub:
        return lower_index(e.kids[0], scope) - lower_index(e.kids[1], scope);
      case Expr::Kind::Neg:
        return lower_index(e.kids[0], scope).scaled(-1);
      case Expr::Kind::Mul: {
        const Expr& a = e.kids[0];
        const Expr& b = e.kids[1];
        if (a.kind == Expr::Kind::Num)
          return lower_index(b, scope).scaled(int_value(a));
        if (b.kind == Expr::Kind::Num)
          return lower_index(a, scope).scaled(int_value(b));
        throw ParseDiagnostic("nonlinear index expression", e.line, e.col);
      }
      case Expr::Kind::Pow:
        if (e.exponent == 1) return lower_index(e.kids[0], scope);
        throw ParseDiagnostic("nonlinear index expression", e.line, e.col);
    }
    throw Error("unreachable");
  }

  static long int_value(const Expr& e) {
    if (e.kind != Expr::Kind::Num || !e.value.is_integer())
      throw ParseDiagnostic("expected integer factor in index expression", e.line, e.col);
    return static_cast<long>(e.value.numerator().convert_to<long long>());
  }

  Guard lower_guard(const RingPtr& ring, const std::vector<RawGuardAtom>& raw,
                    const std::set<std::string>& scope) const {
    Guard g;
    for (auto& r : raw) {
      GuardAtom atom;
      // try index-comparison form first
      bool index_form = true;
      try {
        atom.ilhs = lower_index(r.lhs, scope);
        atom.irhs = lower_index(r.rhs, scope);
      } catch (const ParseDiagnostic&) {
        index_form = false;
      }
      if (index_form) {
        atom.kind = GuardAtom::Kind::IndexCmp;
        atom.op = r.op;
        g.atoms.push_back(std::move(atom));
        continue;
      }
      // parameter comparison: IDENT (==|!=) (IDENT | rational)
      if (r.op != CmpOp::Eq && r.op != CmpOp::Ne)
        throw ParseDiagnostic("parameter guards support only == and !=", r.lhs.line, r.lhs.col);
      if (r.lhs.kind != Expr::Kind::Var)
        throw ParseDiagnostic("guard must compare indices or a parameter", r.lhs.line, r.lhs.col);
      auto v = ring->find(r.lhs.name);
      if (!v || ring->decl(*v).kind != VarKind::Parameter)
        throw ParseDiagnostic("unknown parameter in guard: " + r.lhs.name, r.lhs.line, r.lhs.col);
      atom.kind = GuardAtom::Kind::ParamCmp;
      atom.op = r.op;
      atom.param = r.lhs.name;
      if (r.rhs.kind == Expr::Kind::Var) {
        auto w = ring->find(r.rhs.name);
        if (!w || ring->decl(*w).kind != VarKind::Parameter)
          throw ParseDiagnostic("unknown parameter in guard: " + r.rhs.name, r.rhs.line,
                                r.rhs.col);
        atom.rhs = r.rhs.name;
      } else if (r.rhs.kind == Expr::Kind::Num) {
        atom.rhs = r.rhs.value;
      } else if (r.rhs.kind == Expr::Kind::Neg && r.rhs.kids[0].kind == Expr::Kind::Num) {
        atom.rhs = -r.rhs.kids[0].value;
      } else {
        throw ParseDiagnostic("parameter guard right side must be a parameter or rational",
                              r.rhs.line, r.rhs.col);
      }
      g.atoms.push_back(std::move(atom));
    }
    return g;
  }

  RingPtr make_ring(const std::vector<std::string>& params,
                    const std::vector<std::string>& index_vars) const {
    try {
      return build_definition_ring(params, index_vars);
    } catch (const Error& e) {
      throw ParseDiagnostic(e.what(), 1, 1);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  std::vector<std::string> params_;
  std::vector<FamilyDecl> families_;
  std::optional<long> truncation_;
  std::vector<RawBracket> raw_brackets_;

  std::optional<std::string> module_name_;
  std::string module_algebra_;
  bool graded_ = false;
  int module_line_ = 1;
  std::vector<RawAction> raw_actions_;
};

}  // namespace

AlgebraDef parse_algebra(std::string_view text) { return Parser(text).algebra(); }

ModuleDef parse_module(std::string_view text, const AlgebraDef& algebra) {
  Parser parser(text);
  ModuleDef def = parser.module(algebra);
  if (!algebra.name.empty() && def.algebra_name != algebra.name)
    throw ParseDiagnostic("module is declared over '" + def.algebra_name +
                              "' but was parsed against '" + algebra.name + "'",
                          1, 1);
  return def;
}

}  // namespace lca
