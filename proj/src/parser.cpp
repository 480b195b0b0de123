#include <cctype>
#include <functional>

#include "cctt/surface.hpp"

namespace cctt {

namespace {

enum class T {
  Ident,    // text
  Num,      // text
  Sup,      // text = base, arg = superscript: comp^i, clockelim^2
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Langle, Rangle, Diamond,
  Comma, Dot, Proj1, Proj2, Colon, DefEq, Arrow, DArrow, Eq, Bar,
  Lambda, Meet, Join, Tilde, At, Star, Later,
  PragmaPass, PragmaFail, PragmaConv, PragmaNotConv,
  Eof,
};

const char* describe(T t) {
  switch (t) {
    case T::Ident: return "identifier";
    case T::Num: return "number";
    case T::Sup: return "superscripted keyword";
    case T::LParen: return "'('";
    case T::RParen: return "')'";
    case T::LBrack: return "'['";
    case T::RBrack: return "']'";
    case T::LBrace: return "'{'";
    case T::RBrace: return "'}'";
    case T::Langle: return "'<'";
    case T::Rangle: return "'>'";
    case T::Diamond: return "'<>'";
    case T::Comma: return "','";
    case T::Dot: return "'.'";
    case T::Proj1: return "'.1'";
    case T::Proj2: return "'.2'";
    case T::Colon: return "':'";
    case T::DefEq: return "':='";
    case T::Arrow: return "'->'";
    case T::DArrow: return "'=>'";
    case T::Eq: return "'='";
    case T::Bar: return "'|'";
    case T::Lambda: return "'\\'";
    case T::Meet: return "'/\\'";
    case T::Join: return "'\\/'";
    case T::Tilde: return "'~'";
    case T::At: return "'@'";
    case T::Star: return "'*'";
    case T::Later: return "'|>'";
    case T::PragmaPass: return "--expect-pass";
    case T::PragmaFail: return "--expect-fail";
    case T::PragmaConv: return "--expect-conv";
    case T::PragmaNotConv: return "--expect-not-conv";
    case T::Eof: return "end of input";
  }
  return "token";
}

struct Tok {
  T t = T::Eof;
  std::string text;
  std::string arg;
  Span span;
};

[[noreturn]] void parse_fail(Span s, const std::string& msg) {
  Diagnostic d;
  d.cls = ErrorClass::ParseError;
  d.span = s;
  d.message = msg;
  throw CheckError(d);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  size_t p = 0;
  int line = 1, col = 1;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n && p < s.size(); ++k, ++p) {
      if (s[p] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto starts = [&](const char* lit) { return s.compare(p, std::char_traits<char>::length(lit), lit) == 0; };
  while (p < s.size()) {
    char c = s[p];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    Span sp{line, col};
    if (starts("{-")) {
      int depth = 0;
      do {
        if (starts("{-")) {
          ++depth;
          adv(2);
        } else if (starts("-}")) {
          --depth;
          adv(2);
        } else if (p >= s.size()) {
          parse_fail(sp, "unterminated block comment");
        } else {
          adv(1);
        }
      } while (depth > 0);
      continue;
    }
    if (starts("--")) {
      static const std::pair<const char*, T> pragmas[] = {{"--expect-pass", T::PragmaPass},
                                                          {"--expect-fail", T::PragmaFail},
                                                          {"--expect-conv", T::PragmaConv},
                                                          {"--expect-not-conv", T::PragmaNotConv}};
      bool matched = false;
      for (auto& [lit, kind] : pragmas) {
        size_t n = std::char_traits<char>::length(lit);
        if (!starts(lit) || (p + n < s.size() && ident_char(s[p + n]) && s[p + n] != '\'')) continue;
        adv(n);
        Tok t{kind, lit, "", sp};
        if (kind == T::PragmaFail) {
          if (p >= s.size() || s[p] != '(') parse_fail({line, col}, "expected '(' after --expect-fail");
          adv(1);
          size_t b = p;
          while (p < s.size() && ident_char(s[p])) adv(1);
          t.arg = s.substr(b, p - b);
          if (p >= s.size() || s[p] != ')') parse_fail({line, col}, "expected ')' closing --expect-fail");
          adv(1);
        }
        out.push_back(t);
        matched = true;
        break;
      }
      if (matched) continue;
      while (p < s.size() && s[p] != '\n') adv(1);
      continue;
    }
    if (ident_start(c)) {
      size_t b = p;
      while (p < s.size() && ident_char(s[p])) adv(1);
      Tok t{T::Ident, s.substr(b, p - b), "", sp};
      if (p < s.size() && s[p] == '^') {
        adv(1);
        size_t a = p;
        while (p < s.size() && ident_char(s[p])) adv(1);
        if (a == p) parse_fail({line, col}, "expected a name or number after '^'");
        t.t = T::Sup;
        t.arg = s.substr(a, p - a);
      }
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t b = p;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) adv(1);
      out.push_back({T::Num, s.substr(b, p - b), "", sp});
      continue;
    }
    static const std::pair<const char*, T> syms[] = {
        {"<>", T::Diamond}, {":=", T::DefEq}, {"->", T::Arrow}, {"=>", T::DArrow}, {"|>", T::Later},
        {"/\\", T::Meet},   {"\\/", T::Join}, {"(", T::LParen}, {")", T::RParen}, {"[", T::LBrack},
        {"]", T::RBrack},   {"{", T::LBrace}, {"}", T::RBrace}, {"<", T::Langle}, {">", T::Rangle},
        {",", T::Comma},    {":", T::Colon},  {"=", T::Eq},     {"|", T::Bar},    {"\\", T::Lambda},
        {"~", T::Tilde},    {"@", T::At},     {"*", T::Star}};
    if (c == '.') {
      if (p + 1 < s.size() && (s[p + 1] == '1' || s[p + 1] == '2') &&
          (p + 2 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p + 2])))) {
        out.push_back({s[p + 1] == '1' ? T::Proj1 : T::Proj2, s.substr(p, 2), "", sp});
        adv(2);
      } else {
        out.push_back({T::Dot, ".", "", sp});
        adv(1);
      }
      continue;
    }
    bool found = false;
    for (auto& [lit, kind] : syms) {
      if (!starts(lit)) continue;
      out.push_back({kind, lit, "", sp});
      adv(std::char_traits<char>::length(lit));
      found = true;
      break;
    }
    if (!found) parse_fail(sp, std::string("unexpected character '") + c + "'");
  }
  out.push_back({T::Eof, "", "", {line, col}});
  return out;
}

bool is_keyword(const std::string& s) {
  static const char* kws[] = {"def",  "data", "where", "forall", "tick", "Path", "dfix", "pfix",
                              "into", "with", "on",    "clock",  "tirr", "I"};
  for (auto k : kws)
    if (s == k) return true;
  return false;
}

bool is_univ(const std::string& s, int& level) {
  if (s.size() < 2 || s[0] != 'U') return false;
  for (size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  level = std::stoi(s.substr(1));
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : ts_(std::move(toks)) {}

  Module module();
  RawP expr();
  bool at_end() const { return peek().t == T::Eof; }
  void expect_end() {
    if (!at_end()) error("end of input");
  }

 private:
  const Tok& peek(size_t k = 0) const { return ts_[std::min(pos_ + k, ts_.size() - 1)]; }
  bool is(T t, size_t k = 0) const { return peek(k).t == t; }
  bool is_kw(const char* kw, size_t k = 0) const { return is(T::Ident, k) && peek(k).text == kw; }
  Tok next() { return ts_[pos_ < ts_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void error(const std::string& expected) {
    const Tok& t = peek();
    std::string found = t.t == T::Eof ? "end of input" : "'" + t.text + (t.t == T::Sup ? "^" + t.arg : "") + "'";
    parse_fail(t.span, "expected " + expected + ", found " + found);
  }
  Tok expect(T t) {
    if (!is(t)) error(describe(t));
    return next();
  }
  void expect_kw(const char* kw) {
    if (!is_kw(kw)) error(std::string("'") + kw + "'");
    next();
  }
  std::string name() {
    if (!is(T::Ident) || is_keyword(peek().text)) error("a name");
    return next().text;
  }
  bool at_name(size_t k = 0) const { return is(T::Ident, k) && !is_keyword(peek(k).text); }

  std::vector<Pragma> pragmas();
  RawDecl decl();
  std::vector<RawBinder> binders();
  RawCtor ctor();

  RawP arrow();
  RawP prod();
  RawP operand();
  RawP app();
  RawP proj_atom();
  RawP atom();
  bool atom_start() const;
  bool pi_ahead() const;
  size_t skip_group(size_t k) const;

  RawIv iv_join();
  RawIv iv_meet();
  RawIv iv_unary();
  RawIv iv_atom();
  RawFace face();
  RawFace face_and();
  RawFace face_atom();
  RawTick tick();
  std::vector<std::pair<RawFace, RawP>> system();

  std::shared_ptr<Raw> node(RK k, Span s) {
    auto r = std::make_shared<Raw>();
    r->kind = k;
    r->span = s;
    return r;
  }

  std::vector<Tok> ts_;
  size_t pos_ = 0;
};

std::vector<Pragma> Parser::pragmas() {
  std::vector<Pragma> ps;
  for (;;) {
    Pragma p;
    p.span = peek().span;
    if (is(T::PragmaPass)) {
      next();
      p.k = Pragma::K::Pass;
    } else if (is(T::PragmaFail)) {
      Tok t = next();
      auto c = error_class_from_string(t.arg);
      if (!c) parse_fail(t.span, "unknown error class " + t.arg);
      p.k = Pragma::K::Fail;
      p.cls = *c;
    } else if (is(T::PragmaConv) || is(T::PragmaNotConv)) {
      p.k = next().t == T::PragmaConv ? Pragma::K::Conv : Pragma::K::NotConv;
      p.lhs = expr();
      expect(T::Eq);
      p.rhs = expr();
      expect(T::Colon);
      p.type = expr();
    } else {
      return ps;
    }
    ps.push_back(std::move(p));
  }
}

Module Parser::module() {
  Module m;
  while (!at_end()) {
    std::vector<Pragma> ps = pragmas();
    if (at_end()) {
      if (!ps.empty()) parse_fail(ps.back().span, "expectation pragma not followed by a declaration");
      break;
    }
    RawDecl d = decl();
    d.pragmas = std::move(ps);
    m.decls.push_back(std::move(d));
  }
  return m;
}

std::vector<RawBinder> Parser::binders() {
  std::vector<RawBinder> bs;
  while (is(T::LParen)) {
    Span sp = next().span;
    std::vector<std::string> ns;
    while (at_name()) ns.push_back(next().text);
    if (ns.empty()) error("a binder name");
    expect(T::Colon);
    RawBinder b;
    b.span = sp;
    if (is_kw("I") && is(T::RParen, 1)) {
      next();
      b.cls = RawBinder::Cls::Interval;
    } else if (is_kw("clock")) {
      next();
      b.cls = RawBinder::Cls::Clock;
    } else if (is_kw("tick")) {
      next();
      b.cls = RawBinder::Cls::Tick;
      b.clock = name();
    } else {
      b.type = expr();
    }
    expect(T::RParen);
    for (auto& n : ns) {
      b.name = n;
      bs.push_back(b);
    }
  }
  return bs;
}

RawCtor Parser::ctor() {
  RawCtor c;
  c.span = expect(T::Bar).span;
  c.label = name();
  c.binders = binders();
  if (is_kw("on")) {
    next();
    c.on = face();
  }
  if (is(T::LBrack)) c.sys = system();
  return c;
}

RawDecl Parser::decl() {
  RawDecl d;
  d.span = peek().span;
  if (is_kw("def")) {
    next();
    d.k = RawDecl::K::Def;
    d.name = name();
    d.params = binders();
    expect(T::Colon);
    d.type = expr();
    expect(T::DefEq);
    d.body = expr();
    return d;
  }
  if (is_kw("data")) {
    next();
    d.k = RawDecl::K::Data;
    d.name = name();
    d.params = binders();
    expect_kw("where");
    while (is(T::Bar)) d.ctors.push_back(ctor());
    return d;
  }
  error("'def' or 'data'");
}

// Index just past the parenthesized group starting at k.
size_t Parser::skip_group(size_t k) const {
  int depth = 0;
  for (;; ++k) {
    T t = peek(k).t;
    if (t == T::Eof) return k;
    if (t == T::LParen || t == T::LBrack || t == T::LBrace) ++depth;
    if (t == T::RParen || t == T::RBrack || t == T::RBrace) {
      if (--depth == 0) return k + 1;
    }
  }
}

// ( names : A ) followed by -> or *.
bool Parser::pi_ahead() const {
  if (!is(T::LParen)) return false;
  size_t k = 1;
  if (!at_name(k)) return false;
  while (at_name(k)) ++k;
  if (!is(T::Colon, k)) return false;
  size_t e = skip_group(0);
  return is(T::Arrow, e) || is(T::Star, e);
}

RawP Parser::expr() {
  Span sp = peek().span;
  auto bind_many = [&](RK k, T close) {
    next();
    auto r = node(k, sp);
    while (at_name()) r->binders.push_back(next().text);
    if (r->binders.empty()) error("a binder name");
    expect(close);
    r->kids.push_back(expr());
    return r;
  };
  if (is(T::Lambda)) return bind_many(RK::Lam, T::Dot);
  if (is(T::Langle)) return bind_many(RK::PLam, T::Rangle);
  if (is(T::Meet)) return bind_many(RK::CLam, T::Dot);
  if (is_kw("forall")) return bind_many(RK::Forall, T::Dot);
  if (is_kw("tick")) {
    next();
    auto r = node(RK::TLam, sp);
    r->binders.push_back(name());
    if (is(T::Colon)) {
      next();
      r->clock = name();
    }
    expect(T::Dot);
    r->kids.push_back(expr());
    return r;
  }
  if (is(T::Sup) && peek().text == "clockelim") {
    Tok t = next();
    auto r = node(RK::Elim, sp);
    for (char ch : t.arg)
      if (!std::isdigit(static_cast<unsigned char>(ch))) parse_fail(t.span, "expected a clock count after clockelim^");
    r->num = std::stoi(t.arg);
    r->kids.push_back(proj_atom());
    expect_kw("into");
    expect(T::LParen);
    r->binders.push_back(name());
    expect(T::Dot);
    r->kids.push_back(expr());
    expect(T::RParen);
    expect_kw("with");
    while (is(T::Bar)) {
      RawCase c;
      c.span = next().span;
      c.ctor = name();
      while (at_name()) c.names.push_back(next().text);
      if (is(T::Comma)) {
        next();
        while (at_name()) c.ihs.push_back(next().text);
        if (c.ihs.empty()) error("an induction hypothesis name");
      }
      expect(T::DArrow);
      c.body = expr();
      r->cases.push_back(std::move(c));
    }
    return r;
  }
  if (pi_ahead()) {
    next();
    std::vector<std::string> ns;
    while (at_name()) ns.push_back(next().text);
    expect(T::Colon);
    RawP a = expr();
    expect(T::RParen);
    bool sigma = is(T::Star);
    next();
    auto r = node(sigma ? RK::Sigma : RK::Pi, sp);
    r->binders = ns;
    r->kids = {a, expr()};
    return r;
  }
  return arrow();
}

RawP Parser::arrow() {
  Span sp = peek().span;
  RawP a = prod();
  if (!is(T::Arrow)) return a;
  next();
  auto r = node(RK::Arrow, sp);
  r->kids = {a, expr()};
  return r;
}

RawP Parser::prod() {
  Span sp = peek().span;
  RawP a = operand();
  if (!is(T::Star)) return a;
  next();
  auto r = node(RK::Prod, sp);
  r->kids = {a, prod()};
  return r;
}

RawP Parser::operand() {
  if (!is(T::Later)) return app();
  Span sp = next().span;
  auto r = node(RK::Later, sp);
  expect(T::LParen);
  r->binders.push_back(name());
  expect(T::Colon);
  r->clock = name();
  expect(T::RParen);
  r->kids.push_back(operand());
  return r;
}

bool Parser::atom_start() const {
  switch (peek().t) {
    case T::LParen: return true;
    case T::Ident: return !is_keyword(peek().text) || peek().text == "Path" || peek().text == "dfix" ||
                          peek().text == "pfix";
    case T::Sup: return peek().text != "clockelim";
    default: return false;
  }
}

RawP Parser::app() {
  Span sp = peek().span;
  RawP t = proj_atom();
  for (;;) {
    if (atom_start()) {
      auto r = node(RK::App, sp);
      r->kids = {t, proj_atom()};
      t = r;
    } else if (is(T::At)) {
      next();
      auto r = node(RK::PApp, sp);
      r->kids = {t};
      r->iv = iv_unary();
      t = r;
    } else if (is(T::LBrace)) {
      next();
      auto r = node(RK::CApp, sp);
      r->kids = {t};
      r->clock = name();
      expect(T::RBrace);
      t = r;
    } else if (is(T::LBrack)) {
      Span bs = next().span;
      if (at_name() && is(T::Comma, 1)) {
        if (t->kind != RK::Force || !t->clock.empty())
          parse_fail(bs, "forcing application needs a head of the form (k. t)");
        auto r = std::make_shared<Raw>(*t);
        r->clock = next().text;
        expect(T::Comma);
        r->tick = tick();
        expect(T::RBrack);
        t = r;
      } else {
        auto r = node(RK::TApp, sp);
        r->kids = {t};
        r->tick = tick();
        expect(T::RBrack);
        t = r;
      }
    } else {
      break;
    }
  }
  if (t->kind == RK::Force && t->clock.empty()) parse_fail(t->span, "expected a forcing application [k, u] after (k. t)");
  return t;
}

RawP Parser::proj_atom() {
  Span sp = peek().span;
  RawP t = atom();
  while (is(T::Proj1) || is(T::Proj2)) {
    auto r = node(next().t == T::Proj1 ? RK::Fst : RK::Snd, sp);
    r->kids = {t};
    t = r;
  }
  return t;
}

RawP Parser::atom() {
  Span sp = peek().span;
  if (is(T::LParen)) {
    next();
    if (at_name() && is(T::Dot, 1)) {
      auto r = node(RK::Force, sp);
      r->binders.push_back(next().text);
      next();
      r->kids.push_back(expr());
      expect(T::RParen);
      return r;
    }
    RawP e = expr();
    if (is(T::Comma)) {
      next();
      auto r = node(RK::Pair, sp);
      r->kids = {e, expr()};
      expect(T::RParen);
      return r;
    }
    if (is(T::Colon)) {
      next();
      auto r = node(RK::Ann, sp);
      r->kids = {e, expr()};
      expect(T::RParen);
      return r;
    }
    expect(T::RParen);
    return e;
  }
  if (is_kw("Path")) {
    next();
    auto r = node(RK::Path, sp);
    for (int k = 0; k < 3; ++k) r->kids.push_back(proj_atom());
    return r;
  }
  if (is_kw("dfix") || is_kw("pfix")) {
    auto r = node(next().text == "dfix" ? RK::Dfix : RK::Pfix, sp);
    r->clock = name();
    r->kids.push_back(proj_atom());
    return r;
  }
  if (is(T::Sup)) {
    Tok t = next();
    RK k;
    if (t.text == "comp")
      k = RK::Comp;
    else if (t.text == "hcomp")
      k = RK::HComp;
    else if (t.text == "hfill")
      k = RK::HFill;
    else if (t.text == "trans")
      k = RK::Trans;
    else
      parse_fail(t.span, "unknown keyword " + t.text + "^");
    if (!ident_start(t.arg[0]) || is_keyword(t.arg)) parse_fail(t.span, "expected an interval binder after " + t.text + "^");
    auto r = node(k, sp);
    r->binders.push_back(t.arg);
    r->kids.push_back(proj_atom());
    if (k == RK::Trans) {
      expect(T::LBrack);
      r->faces.push_back(face());
      expect(T::RBrack);
      r->kids.push_back(proj_atom());
      return r;
    }
    auto sys = system();
    r->kids.push_back(proj_atom());
    for (auto& [f, u] : sys) {
      r->faces.push_back(f);
      r->kids.push_back(u);
    }
    return r;
  }
  if (is(T::Ident) && !is_keyword(peek().text)) {
    Tok t = next();
    int level;
    if (is_univ(t.text, level)) {
      auto r = node(RK::Univ, sp);
      r->num = level;
      return r;
    }
    auto r = node(RK::Name, sp);
    r->name = t.text;
    return r;
  }
  error("an expression");
}

std::vector<std::pair<RawFace, RawP>> Parser::system() {
  std::vector<std::pair<RawFace, RawP>> sys;
  expect(T::LBrack);
  if (is(T::RBrack)) {
    next();
    return sys;
  }
  for (;;) {
    RawFace f = face();
    expect(T::Arrow);
    sys.push_back({f, expr()});
    if (is(T::Comma)) {
      next();
      continue;
    }
    expect(T::RBrack);
    return sys;
  }
}

RawIv Parser::iv_join() {
  RawIv a = iv_meet();
  while (is(T::Join)) {
    Span sp = next().span;
    RawIv r;
    r.k = RawIv::K::Join;
    r.span = sp;
    r.kids = {a, iv_meet()};
    a = r;
  }
  return a;
}

RawIv Parser::iv_meet() {
  RawIv a = iv_unary();
  while (is(T::Meet)) {
    Span sp = next().span;
    RawIv r;
    r.k = RawIv::K::Meet;
    r.span = sp;
    r.kids = {a, iv_unary()};
    a = r;
  }
  return a;
}

RawIv Parser::iv_unary() {
  if (!is(T::Tilde)) return iv_atom();
  RawIv r;
  r.k = RawIv::K::Neg;
  r.span = next().span;
  r.kids = {iv_unary()};
  return r;
}

RawIv Parser::iv_atom() {
  RawIv r;
  r.span = peek().span;
  if (is(T::Num)) {
    Tok t = next();
    if (t.text != "0" && t.text != "1") parse_fail(t.span, "interval endpoints are 0 and 1");
    r.k = t.text == "0" ? RawIv::K::Zero : RawIv::K::One;
    return r;
  }
  if (is(T::LParen)) {
    next();
    r = iv_join();
    expect(T::RParen);
    return r;
  }
  if (at_name()) {
    r.k = RawIv::K::Name;
    r.name = next().text;
    return r;
  }
  error("an interval");
}

RawFace Parser::face() {
  RawFace a = face_and();
  while (is(T::Join)) {
    Span sp = next().span;
    RawFace r;
    r.k = RawFace::K::Or;
    r.span = sp;
    r.kids = {a, face_and()};
    a = r;
  }
  return a;
}

RawFace Parser::face_and() {
  RawFace a = face_atom();
  while (is(T::Meet)) {
    Span sp = next().span;
    RawFace r;
    r.k = RawFace::K::And;
    r.span = sp;
    r.kids = {a, face_atom()};
    a = r;
  }
  return a;
}

RawFace Parser::face_atom() {
  RawFace r;
  r.span = peek().span;
  if (is(T::Num)) {
    Tok t = next();
    if (t.text != "0" && t.text != "1") parse_fail(t.span, "faces are 0, 1 or equations (r = 0), (r = 1)");
    r.k = t.text == "0" ? RawFace::K::Bot : RawFace::K::Top;
    return r;
  }
  if (!is(T::LParen)) error("a face such as (i = 0)");
  // An equation has '=' at depth one inside the parentheses.
  size_t end = skip_group(0);
  bool eq = false;
  int depth = 0;
  for (size_t k = 0; k < end; ++k) {
    T t = peek(k).t;
    if (t == T::LParen) ++depth;
    if (t == T::RParen) --depth;
    if (t == T::Eq && depth == 1) eq = true;
  }
  next();
  if (eq) {
    r.k = RawFace::K::Eq;
    r.iv = iv_join();
    expect(T::Eq);
    Tok b = expect(T::Num);
    if (b.text != "0" && b.text != "1") parse_fail(b.span, "expected 0 or 1");
    r.one = b.text == "1";
  } else {
    r = face();
  }
  expect(T::RParen);
  return r;
}

RawTick Parser::tick() {
  RawTick r;
  r.span = peek().span;
  if (is(T::Diamond)) {
    next();
    r.k = RawTick::K::Diamond;
    return r;
  }
  if (is_kw("tirr")) {
    next();
    expect(T::LParen);
    r.k = RawTick::K::Tirr;
    r.kids.push_back(tick());
    expect(T::Comma);
    r.kids.push_back(tick());
    expect(T::Comma);
    r.iv = iv_join();
    expect(T::RParen);
    return r;
  }
  r.k = RawTick::K::Name;
  r.name = name();
  return r;
}

}  // namespace

Module parse_module(const std::string& text) {
  Parser p(lex(text));
  return p.module();
}

RawP parse_expr(const std::string& text) {
  Parser p(lex(text));
  RawP e = p.expr();
  p.expect_end();
  return e;
}

}  // namespace cctt
