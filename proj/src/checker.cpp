#include "cctt/checker.hpp"

#include <algorithm>

#include "cctt/tick.hpp"

namespace cctt {

namespace {

struct Restore {
  Context& c;
  size_t n;
  explicit Restore(Context& c) : c(c), n(c.size()) {}
  ~Restore() { c.entries.resize(n); }
};

[[noreturn]] void fail(ErrorClass c, std::string msg) { throw CheckError(c, std::move(msg)); }

TermP wk_iv(const TermP& t, int n = 1, int cut = 0) {
  Shift by, c;
  by.ival = n;
  c.ival = cut;
  return weaken(t, by, c);
}

Face wk_face(const Face& f, int n = 1) {
  return f.rename([&](int v) { return v + n; });
}

TermP clams(TermP t, int n) {
  for (int k = 0; k < n; ++k) t = mk::clam("k", t);
  return t;
}

TermP capps(TermP t, int n) {
  for (int k = n - 1; k >= 0; --k) t = mk::capp(t, ClockRef{k});
  return t;
}

TermP foralls(TermP t, int n) {
  for (int k = 0; k < n; ++k) t = mk::forall("k", t);
  return t;
}

std::string name0(const TermP& t, const char* dflt) {
  return t->names.empty() ? std::string(dflt) : t->names[0];
}

TermP rebuild(const TermP& t, std::vector<TermP> kids) {
  auto r = std::make_shared<Term>(*t);
  r->kids = std::move(kids);
  return r;
}

// Instantiate a telescope-relative type at the given values, outermost first.
TermP inst_tele(const TermP& ty, const std::vector<TermP>& vals, Shift tail = {}) {
  Subst s;
  for (auto it = vals.rbegin(); it != vals.rend(); ++it) s.terms.push_back(*it);
  s.tail = tail;
  return subst(ty, s);
}

Face::Clause as_clause(const Assignment& a) { return a.gens; }

std::string face_str(const Context& ctx, const Face& f) {
  return to_string(f, [&](int v) { return ctx.name_of(Sort::Interval, v); });
}

std::string assumption_str(const Context& ctx) {
  Assignment a = ctx.assignment();
  if (a.gens.empty()) return "";
  return face_str(ctx, Face::of_clause(a.gens));
}

void elim_names(const Term& t, std::string& hname, std::vector<std::vector<std::string>>& cases) {
  size_t ni = static_cast<size_t>(t.counts[0]) * t.num;
  hname = ni < t.names.size() ? t.names[ni] : "h";
  ++ni;
  for (int c = 0; c < t.counts[1]; ++c) {
    const Shift& b = t.binds[t.counts[0] + 1 + c];
    std::vector<std::string> ns;
    for (int k = 0; k < b.term + b.ival; ++k) ns.push_back(ni < t.names.size() ? t.names[ni++] : "x");
    cases.push_back(std::move(ns));
  }
}

}  // namespace

void Checker::mismatch(const Context& ctx, ErrorClass c, const std::string& msg, const TermP& expected,
                       const TermP& actual) {
  Diagnostic d;
  d.cls = c;
  d.message = msg;
  if (expected) d.expected = print(expected, &ctx);
  if (actual) d.actual = print(actual, &ctx);
  d.face = assumption_str(ctx);
  throw CheckError(d);
}

TermP Checker::whnf(const Context& ctx, const TermP& t) {
  Assignment a = ctx.assignment();
  return ev_.whnf(a.gens.empty() ? t : restrict_to(t, as_clause(a)));
}

bool Checker::conv(const Context& ctx, const TermP& a, const TermP& b) {
  Assignment as = ctx.assignment();
  if (as.gens.empty()) return ev_.conv(a, b);
  Face::Clause c = as_clause(as);
  return ev_.conv(restrict_to(a, c), restrict_to(b, c));
}

bool Checker::sub(const Context& ctx, const TermP& a, const TermP& b) {
  if (conv(ctx, a, b)) return true;
  TermP x = whnf(ctx, a), y = whnf(ctx, b);
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Univ: return x->num <= y->num;
    case Kind::Pi: return conv(ctx, x->kids[0], y->kids[0]) && sub(ctx, x->kids[1], y->kids[1]);
    case Kind::Sigma: return sub(ctx, x->kids[0], y->kids[0]) && sub(ctx, x->kids[1], y->kids[1]);
    case Kind::Forall: return sub(ctx, x->kids[0], y->kids[0]);
    case Kind::Later: return x->clocks[0] == y->clocks[0] && sub(ctx, x->kids[0], y->kids[0]);
    default: return false;
  }
}

void Checker::check_interval(const Context& ctx, const Interval& r) {
  if (r.max_var() >= ctx.count(Sort::Interval)) fail(ErrorClass::UnboundVariable, "interval variable out of scope");
}

void Checker::check_face(const Context& ctx, const Face& f) {
  if (f.max_var() >= ctx.count(Sort::Interval)) fail(ErrorClass::UnboundVariable, "face mentions an unbound interval variable");
}

void Checker::check_clock(const Context& ctx, ClockRef k) {
  if (!k.is_const() && k.idx >= ctx.count(Sort::Clock)) fail(ErrorClass::UnboundVariable, "clock variable out of scope");
}

bool Checker::assume(Context& ctx, const Face::Clause& c) {
  Assignment a = ctx.assignment();
  for (auto& g : c)
    if (const Gen* h = a.find(g.var); h && h->one != g.one) return false;
  ctx.push_face(Face::of_clause(c));
  return true;
}

namespace {

[[noreturn]] void rethrow_at(const CheckError& e, const TermP& t) {
  if (e.diag().span.line == 0 && t->span.line > 0) {
    Diagnostic d = e.diag();
    d.span = t->span;
    throw CheckError(d);
  }
  throw e;
}

}  // namespace

TermP Checker::check(Context& ctx, const TermP& t, const TermP& type) {
  try {
    TermP r = check_(ctx, t, type);
    if (log) log->push_back({ctx, r, type});
    return r;
  } catch (const CheckError& e) {
    rethrow_at(e, t);
  }
}

std::pair<TermP, TermP> Checker::infer(Context& ctx, const TermP& t) {
  try {
    auto r = infer_(ctx, t);
    if (log) log->push_back({ctx, r.first, r.second});
    return r;
  } catch (const CheckError& e) {
    rethrow_at(e, t);
  }
}

std::pair<TermP, int> Checker::check_type(Context& ctx, const TermP& t) {
  std::pair<TermP, TermP> r;
  try {
    r = infer(ctx, t);
  } catch (const CheckError& e) {
    if (e.cls() != ErrorClass::CannotInfer) throw;
    Diagnostic d = e.diag();
    d.cls = ErrorClass::NotAType;
    d.message = "expected a type";
    throw CheckError(d);
  }
  TermP u = whnf(ctx, r.second);
  if (u->kind != Kind::Univ) mismatch(ctx, ErrorClass::NotAType, "expected a type", nullptr, r.second);
  return {r.first, u->num};
}

TermP Checker::check_(Context& ctx, const TermP& t, const TermP& type) {
  switch (t->kind) {
    case Kind::Lam: {
      TermP a = whnf(ctx, type);
      if (a->kind != Kind::Pi) mismatch(ctx, ErrorClass::TypeMismatch, "function checked against a non-function type", type, nullptr);
      Restore r(ctx);
      ctx.push_term(name0(t, "x"), a->kids[0]);
      return rebuild(t, {check(ctx, t->kids[0], a->kids[1])});
    }
    case Kind::Pair: {
      TermP a = whnf(ctx, type);
      if (a->kind != Kind::Sigma) mismatch(ctx, ErrorClass::TypeMismatch, "pair checked against a non-pair type", type, nullptr);
      TermP x = check(ctx, t->kids[0], a->kids[0]);
      TermP y = check(ctx, t->kids[1], inst_term(a->kids[1], x));
      return rebuild(t, {x, y});
    }
    case Kind::PLam: {
      TermP a = whnf(ctx, type);
      if (a->kind != Kind::Path) mismatch(ctx, ErrorClass::TypeMismatch, "path abstraction checked against a non-path type", type, nullptr);
      TermP body;
      {
        Restore r(ctx);
        ctx.push_interval(name0(t, "i"));
        body = check(ctx, t->kids[0], wk_iv(a->kids[0]));
      }
      for (int e = 0; e < 2; ++e) {
        TermP at = inst_ival(body, Interval::endpoint(e == 1));
        if (!conv(ctx, at, a->kids[1 + e]))
          mismatch(ctx, ErrorClass::EndpointMismatch, e == 0 ? "left endpoint mismatch" : "right endpoint mismatch",
                   a->kids[1 + e], at);
      }
      return rebuild(t, {body});
    }
    case Kind::ClockLam: {
      TermP a = whnf(ctx, type);
      if (a->kind != Kind::Forall) mismatch(ctx, ErrorClass::TypeMismatch, "clock abstraction checked against a non-forall type", type, nullptr);
      Restore r(ctx);
      ctx.push_clock(name0(t, "k"));
      return rebuild(t, {check(ctx, t->kids[0], a->kids[0])});
    }
    case Kind::TickLam: {
      TermP a = whnf(ctx, type);
      if (a->kind != Kind::Later) mismatch(ctx, ErrorClass::TypeMismatch, "tick abstraction checked against a non-later type", type, nullptr);
      ClockRef k = a->clocks[0];
      if (t->num == 1) {
        check_clock(ctx, t->clocks[0]);
        if (!(t->clocks[0] == k)) mismatch(ctx, ErrorClass::ClockMismatch, "tick abstraction on the wrong clock", type, nullptr);
      }
      Restore r(ctx);
      ctx.push_tick(name0(t, "a"), k);
      auto out = std::make_shared<Term>(*rebuild(t, {check(ctx, t->kids[0], a->kids[0])}));
      out->clocks = {k};
      out->num = 1;
      return out;
    }
    case Kind::Con: return check_con(ctx, t, type);
    case Kind::Dfix:
    case Kind::Pfix: {
      auto [e, ty] = infer_fix(ctx, t, &type);
      if (!sub(ctx, ty, type)) mismatch(ctx, ErrorClass::TypeMismatch, "type mismatch", type, ty);
      return e;
    }
    default: {
      auto [e, ty] = infer(ctx, t);
      if (!sub(ctx, ty, type)) mismatch(ctx, ErrorClass::TypeMismatch, "type mismatch", type, ty);
      return e;
    }
  }
}

std::pair<TermP, TermP> Checker::infer_(Context& ctx, const TermP& t) {
  switch (t->kind) {
    case Kind::Var: {
      int p = ctx.position(Sort::Term, t->num);
      if (p < 0) fail(ErrorClass::UnboundVariable, "unbound variable #" + std::to_string(t->num));
      if (ctx.entries[p].locked)
        fail(ErrorClass::TickEscape, "variable " + ctx.entries[p].name + " is not available under this tick");
      return {t, ctx.type_of(t->num)};
    }
    case Kind::Global: {
      const Definition* d = g_.def(t->name);
      if (!d) fail(ErrorClass::UnboundVariable, "unknown definition " + t->name);
      return {t, d->type};
    }
    case Kind::Univ: return {t, mk::univ(t->num + 1)};
    case Kind::Pi:
    case Kind::Sigma: {
      auto [a, la] = check_type(ctx, t->kids[0]);
      Restore r(ctx);
      ctx.push_term(name0(t, "x"), a);
      auto [b, lb] = check_type(ctx, t->kids[1]);
      return {rebuild(t, {a, b}), mk::univ(std::max(la, lb))};
    }
    case Kind::Path: {
      auto [a, l] = check_type(ctx, t->kids[0]);
      TermP x = check(ctx, t->kids[1], a);
      TermP y = check(ctx, t->kids[2], a);
      return {rebuild(t, {a, x, y}), mk::univ(l)};
    }
    case Kind::Forall: {
      Restore r(ctx);
      ctx.push_clock(name0(t, "k"));
      auto [b, l] = check_type(ctx, t->kids[0]);
      return {rebuild(t, {b}), mk::univ(l)};
    }
    case Kind::Later: {
      check_clock(ctx, t->clocks[0]);
      Restore r(ctx);
      ctx.push_tick(name0(t, "a"), t->clocks[0]);
      auto [b, l] = check_type(ctx, t->kids[0]);
      return {rebuild(t, {b}), mk::univ(l)};
    }
    case Kind::App: {
      // Head redexes arise in reducts of annotated terms; infer them from the argument.
      if (t->kids[0]->kind == Kind::Lam) {
        auto [a, at] = infer(ctx, t->kids[1]);
        Restore r(ctx);
        ctx.push_term(name0(t->kids[0], "x"), at);
        auto [b, bt] = infer(ctx, t->kids[0]->kids[0]);
        TermP f = mk::ann(rebuild(t->kids[0], {b}), mk::pi(name0(t->kids[0], "x"), at, bt));
        return {mk::app(f, a), inst_term(bt, a)};
      }
      auto [f, ft] = infer(ctx, t->kids[0]);
      TermP p = whnf(ctx, ft);
      if (p->kind != Kind::Pi) mismatch(ctx, ErrorClass::NotAFunction, "applied term is not a function", nullptr, ft);
      TermP a = check(ctx, t->kids[1], p->kids[0]);
      return {mk::app(f, a), inst_term(p->kids[1], a)};
    }
    case Kind::Fst:
    case Kind::Snd: {
      if (t->kids[0]->kind == Kind::Pair) {
        auto [a, at] = infer(ctx, t->kids[0]->kids[0]);
        auto [b, bt] = infer(ctx, t->kids[0]->kids[1]);
        TermP e = mk::pair(a, b);
        return t->kind == Kind::Fst ? std::pair{mk::fst(e), at} : std::pair{mk::snd(e), bt};
      }
      auto [e, et] = infer(ctx, t->kids[0]);
      TermP s = whnf(ctx, et);
      if (s->kind != Kind::Sigma) mismatch(ctx, ErrorClass::NotAPair, "projection from a non-pair", nullptr, et);
      if (t->kind == Kind::Fst) return {mk::fst(e), s->kids[0]};
      return {mk::snd(e), inst_term(s->kids[1], mk::fst(e))};
    }
    case Kind::PApp: {
      if (t->kids[0]->kind == Kind::PLam) {
        check_interval(ctx, t->ivs[0]);
        Restore r(ctx);
        ctx.push_interval(name0(t->kids[0], "i"));
        auto [b, bt] = infer(ctx, t->kids[0]->kids[0]);
        if (!occurs(bt, Sort::Interval, 0))
          return {mk::papp(rebuild(t->kids[0], {b}), t->ivs[0], inst_ival(b, Interval::zero()),
                           inst_ival(b, Interval::one())),
                  inst_ival(bt, Interval::zero())};
      }
      auto [p, pt] = infer(ctx, t->kids[0]);
      TermP s = whnf(ctx, pt);
      if (s->kind != Kind::Path) mismatch(ctx, ErrorClass::NotAPath, "path application of a non-path", nullptr, pt);
      check_interval(ctx, t->ivs[0]);
      return {mk::papp(p, t->ivs[0], s->kids[1], s->kids[2]), s->kids[0]};
    }
    case Kind::ClockApp: {
      check_clock(ctx, t->clocks[0]);
      if (t->kids[0]->kind == Kind::ClockLam) {
        Restore r(ctx);
        ctx.push_clock(name0(t->kids[0], "k"));
        auto [b, bt] = infer(ctx, t->kids[0]->kids[0]);
        return {mk::capp(mk::ann(rebuild(t->kids[0], {b}), mk::forall(name0(t->kids[0], "k"), bt)), t->clocks[0]),
                inst_clock(bt, t->clocks[0])};
      }
      auto [f, ft] = infer(ctx, t->kids[0]);
      TermP s = whnf(ctx, ft);
      if (s->kind != Kind::Forall) mismatch(ctx, ErrorClass::NotAForall, "clock application of a non-forall", nullptr, ft);
      return {mk::capp(f, t->clocks[0]), inst_clock(s->kids[0], t->clocks[0])};
    }
    case Kind::TickApp: return infer_tick_app(ctx, t);
    case Kind::ForceApp: return infer_force_app(ctx, t);
    case Kind::Dfix:
    case Kind::Pfix: return infer_fix(ctx, t, nullptr);
    case Kind::Comp: return infer_comp(ctx, t);
    case Kind::HComp: return infer_hcomp(ctx, t);
    case Kind::Trans: return infer_trans(ctx, t);
    case Kind::Data: {
      TermP d = check_data(ctx, t);
      return {d, mk::univ(g_.sig(t->name)->level)};
    }
    case Kind::Con: {
      const HitSignature* sig = g_.sig(t->name);
      if (!sig) fail(ErrorClass::UnknownConstructor, "unknown constructor " + t->label);
      if (t->counts[0] != static_cast<int>(sig->params.size()))
        fail(ErrorClass::CannotInfer, "cannot infer the parameters of constructor " + t->label + "; add an annotation");
      TermP d = check_data(ctx, mk::data(t->name, std::vector<TermP>(t->kids.begin(), t->kids.begin() + t->counts[0])));
      return {check_con(ctx, t, d), d};
    }
    case Kind::Elim: return infer_elim(ctx, t);
    case Kind::Ann: {
      auto [ty, l] = check_type(ctx, t->kids[1]);
      (void)l;
      return {mk::ann(check(ctx, t->kids[0], ty), ty), ty};
    }
    default:
      fail(ErrorClass::CannotInfer, std::string("cannot infer the type of a ") + to_string(t->kind) +
                                        "; add a type annotation");
  }
}

std::pair<TermP, TermP> Checker::infer_tick_app(Context& ctx, const TermP& t) {
  const Tick& u = t->ticks[0];
  if (u.has_diamond()) fail(ErrorClass::DiamondOutsideForcing, "<> may only be applied in a forcing application");
  std::vector<int> vs;
  u.vars(vs);
  for (int v : vs)
    if (ctx.position(Sort::Tick, v) < 0) fail(ErrorClass::NotATick, "tick variable out of scope");
  auto k = tick_clock(ctx, u);
  if (!k) fail(ErrorClass::NotATick, "tick has no variable");
  Context inner = tick_check_simple(ctx, u, *k);
  auto [f, ft] = infer(inner, t->kids[0]);
  TermP s = whnf(inner, ft);
  if (s->kind != Kind::Later) mismatch(inner, ErrorClass::NotALater, "tick application of a non-later", nullptr, ft);
  if (!(s->clocks[0] == *k))
    mismatch(inner, ErrorClass::ClockMismatch, "tick " + print(u, &ctx) + " is on a different clock than the later",
             nullptr, ft);
  return {mk::tapp(f, u), inst_tick(s->kids[0], u)};
}

std::pair<TermP, TermP> Checker::infer_force_app(Context& ctx, const TermP& t) {
  ClockRef k2 = t->clocks[0];
  const Tick& u = t->ticks[0];
  check_clock(ctx, k2);
  Context inner = tick_check_forcing(ctx, k2, u);
  inner.push_clock(name0(t, "k"));
  auto [b, bt] = infer(inner, t->kids[0]);
  TermP s = whnf(inner, bt);
  if (s->kind != Kind::Later) mismatch(inner, ErrorClass::NotALater, "forced term is not a later", nullptr, bt);
  if (!(s->clocks[0] == ClockRef{0}))
    mismatch(inner, ErrorClass::ClockMismatch, "forced later must be on the bound clock", nullptr, bt);
  return {mk::force(name0(t, "k"), b, k2, u), inst_force(s->kids[0], k2, u)};
}

std::pair<TermP, TermP> Checker::infer_fix(Context& ctx, const TermP& t, const TermP* expected) {
  ClockRef k = t->clocks[0];
  check_clock(ctx, k);
  TermP a, f;
  if (expected) {
    TermP e = whnf(ctx, *expected);
    if (e->kind == Kind::Later && e->clocks[0] == k) {
      TermP body = e->kids[0];
      if (t->kind == Kind::Pfix) {
        TermP pb = whnf(ctx, body);
        body = pb->kind == Kind::Path ? pb->kids[0] : nullptr;
      }
      if (body && !occurs(body, Sort::Tick, 0)) a = inst_tick(body, Tick::diamond());
    }
  }
  if (a) {
    TermP later = mk::later("a", k, weaken(a, Shift::of(Sort::Tick)));
    f = check(ctx, t->kids[0], mk::arrow(later, a));
  } else {
    auto [fe, ft] = infer(ctx, t->kids[0]);
    f = fe;
    TermP p = whnf(ctx, ft);
    if (p->kind != Kind::Pi) mismatch(ctx, ErrorClass::NotAFunction, "fixed point of a non-function", nullptr, ft);
    TermP d = whnf(ctx, p->kids[0]);
    if (d->kind != Kind::Later) mismatch(ctx, ErrorClass::TypeMismatch, "fixed point argument must have a later domain", nullptr, ft);
    if (!(d->clocks[0] == k)) mismatch(ctx, ErrorClass::ClockMismatch, "fixed point on the wrong clock", nullptr, ft);
    if (occurs(p->kids[1], Sort::Term, 0))
      mismatch(ctx, ErrorClass::TypeMismatch, "fixed point of a dependent function", nullptr, ft);
    a = inst_term(p->kids[1], mk::univ(0));
    if (!conv(ctx, d->kids[0], weaken(a, Shift::of(Sort::Tick))))
      mismatch(ctx, ErrorClass::TypeMismatch, "fixed point function must have type |> A -> A", nullptr, ft);
  }
  TermP aw = weaken(a, Shift::of(Sort::Tick));
  if (t->kind == Kind::Dfix) return {mk::dfix(k, f), mk::later("a", k, aw)};
  TermP dfx = mk::dfix(k, f);
  TermP left = mk::tapp(weaken(dfx, Shift::of(Sort::Tick)), Tick::var(0));
  TermP right = weaken(mk::app(f, dfx), Shift::of(Sort::Tick));
  return {mk::pfix(k, f), mk::later("a", k, mk::path(aw, left, right))};
}

Checker::SysResult Checker::check_system(Context& ctx, const Term& t, const TermP& line, bool line_binds,
                                         ErrorClass tube_error) {
  SysResult out;
  TermP a = line_binds ? line : wk_iv(line);
  std::string bound = t.names.size() > (line_binds ? 1u : 0u) ? t.names.back() : "i";
  for (int k = 0; k < comp_tube_count(t); ++k) {
    const Face& phi = t.faces[k];
    check_face(ctx, phi);
    for (auto& c : phi.clauses()) {
      Restore r(ctx);
      if (!assume(ctx, c)) continue;
      ctx.push_interval(bound);
      TermP u;
      try {
        u = check(ctx, t.kids[2 + k], a);
      } catch (const CheckError& e) {
        if (e.cls() != ErrorClass::TypeMismatch) throw;
        Diagnostic d = e.diag();
        d.cls = tube_error;
        d.message = "tube does not have the type of the line: " + d.message;
        throw CheckError(d);
      }
      out.tubes.push_back({Face::of_clause(c), u});
    }
  }
  for (size_t x = 0; x < out.tubes.size(); ++x)
    for (size_t y = x + 1; y < out.tubes.size(); ++y) {
      Face meet = out.tubes[x].face & out.tubes[y].face;
      for (auto& c : meet.clauses()) {
        Restore r(ctx);
        if (!assume(ctx, c)) continue;
        ctx.push_interval(bound);
        if (!conv(ctx, out.tubes[x].term, out.tubes[y].term))
          mismatch(ctx, ErrorClass::IncompatibleOverlap, "tubes disagree on their overlap", out.tubes[x].term,
                   out.tubes[y].term);
      }
    }
  return out;
}

void Checker::check_base(Context& ctx, const SysResult& sys, const TermP& base) {
  for (auto& tb : sys.tubes) {
    Restore r(ctx);
    if (!assume(ctx, tb.face.clauses()[0])) continue;
    TermP at0 = inst_ival(tb.term, Interval::zero());
    if (!conv(ctx, at0, base))
      mismatch(ctx, ErrorClass::BaseBoundaryMismatch, "tube at 0 does not agree with the base", base, at0);
  }
}

std::pair<TermP, TermP> Checker::infer_comp(Context& ctx, const TermP& t) {
  TermP a;
  {
    Restore r(ctx);
    ctx.push_interval(name0(t, "i"));
    a = check_type(ctx, t->kids[0]).first;
  }
  TermP base = check(ctx, t->kids[1], inst_ival(a, Interval::zero()));
  SysResult sys = check_system(ctx, *t, a, true, ErrorClass::TubeMismatch);
  check_base(ctx, sys, base);
  return {mk::comp(name0(t, "i"), a, sys.tubes, base), inst_ival(a, Interval::one())};
}

std::pair<TermP, TermP> Checker::infer_hcomp(Context& ctx, const TermP& t) {
  TermP a = check_type(ctx, t->kids[0]).first;
  TermP base = check(ctx, t->kids[1], a);
  SysResult sys = check_system(ctx, *t, a, false, ErrorClass::TubeMismatch);
  check_base(ctx, sys, base);
  return {mk::hcomp(t->names.empty() ? "j" : t->names[0], a, sys.tubes, base), a};
}

std::pair<TermP, TermP> Checker::infer_trans(Context& ctx, const TermP& t) {
  TermP a;
  {
    Restore r(ctx);
    ctx.push_interval(name0(t, "i"));
    a = check_type(ctx, t->kids[0]).first;
  }
  const Face& phi = t->faces[0];
  check_face(ctx, phi);
  TermP a0 = inst_ival(a, Interval::zero());
  for (auto& c : phi.clauses()) {
    Restore r(ctx);
    if (!assume(ctx, c)) continue;
    ctx.push_interval(name0(t, "i"));
    if (!conv(ctx, a, wk_iv(a0)))
      mismatch(ctx, ErrorClass::TransNotConstant, "transport line is not constant on its face", wk_iv(a0), a);
  }
  TermP base = check(ctx, t->kids[1], a0);
  return {mk::trans(name0(t, "i"), a, phi, base), inst_ival(a, Interval::one())};
}

TermP Checker::check_data(Context& ctx, const TermP& t) {
  const HitSignature* sig = g_.sig(t->name);
  if (!sig) fail(ErrorClass::UnboundVariable, "unknown type " + t->name);
  if (t->kids.size() != sig->params.size())
    fail(ErrorClass::ArityMismatch, t->name + " expects " + std::to_string(sig->params.size()) + " parameters");
  std::vector<TermP> ps;
  for (size_t k = 0; k < t->kids.size(); ++k) ps.push_back(check(ctx, t->kids[k], inst_tele(sig->params[k].type, ps)));
  auto r = std::make_shared<Term>(*mk::data(t->name, ps));
  r->span = t->span;
  return r;
}

TermP Checker::check_con(Context& ctx, const TermP& t, const TermP& expected) {
  TermP e = whnf(ctx, expected);
  auto owner = g_.ctor_owner.find(t->label);
  if (owner == g_.ctor_owner.end()) fail(ErrorClass::UnknownConstructor, "unknown constructor " + t->label);
  if (e->kind != Kind::Data || e->name != owner->second)
    mismatch(ctx, ErrorClass::TypeMismatch, "constructor " + t->label + " builds " + owner->second, expected, nullptr);
  const HitSignature* sig = g_.sig(e->name);
  const Constructor* c = sig->find(t->label);
  if (t->counts[1] != c->arg_count() || t->counts[2] != c->rec_count() ||
      static_cast<int>(t->ivs.size()) != c->ivar_count())
    fail(ErrorClass::ArityMismatch, "constructor " + t->label + " expects " + std::to_string(c->arg_count()) +
                                        " arguments, " + std::to_string(c->rec_count()) + " recursive arguments and " +
                                        std::to_string(c->ivar_count()) + " interval arguments");
  std::vector<TermP> vals = e->kids;
  std::vector<TermP> args, recs;
  for (int k = 0; k < c->arg_count(); ++k) {
    TermP a = check(ctx, con_arg(*t, k), inst_tele(c->gamma[k].type, vals));
    args.push_back(a);
    vals.push_back(a);
  }
  for (int k = 0; k < c->rec_count(); ++k) {
    std::vector<TermP> v = vals;
    for (int q = 0; q < k; ++q) v.push_back(mk::univ(0));
    recs.push_back(check(ctx, con_rec(*t, k), inst_tele(rec_arg_type(*sig, *c, k), v)));
  }
  for (auto& r : t->ivs) check_interval(ctx, r);
  auto r = std::make_shared<Term>(*mk::con(e->name, t->label, e->kids, args, recs, t->ivs));
  r->span = t->span;
  return r;
}

std::pair<TermP, TermP> Checker::infer_elim(Context& ctx, const TermP& t) {
  const HitSignature* sig = g_.sig(t->name);
  if (!sig) fail(ErrorClass::UnboundVariable, "unknown type " + t->name);
  int n = t->num;
  int nc = static_cast<int>(sig->ctors.size());
  if (t->counts[1] != nc) fail(ErrorClass::CaseMissing, "eliminator needs one case per constructor of " + t->name);
  TermP u, ut;
  if (elim_scrut(*t)->kind == Kind::ClockLam && t->counts[0] == static_cast<int>(sig->params.size())) {
    // Elaborated eliminators carry their parameters, so a clock abstraction
    // in scrutinee position (as left by reduction) can be checked.
    {
      Restore r(ctx);
      for (int k = 0; k < n; ++k) ctx.push_clock("k");
      ut = check_data(ctx, mk::data(sig->name, std::vector<TermP>(t->kids.begin(), t->kids.begin() + t->counts[0])));
    }
    ut = foralls(ut, n);
    u = check(ctx, elim_scrut(*t), ut);
  } else {
    std::tie(u, ut) = infer(ctx, elim_scrut(*t));
  }
  TermP s = ut;
  for (int k = 0; k < n; ++k) {
    TermP w = whnf(ctx, s);
    if (w->kind != Kind::Forall) mismatch(ctx, ErrorClass::NotAForall, "scrutinee must quantify over the eliminated clocks", nullptr, ut);
    s = w->kids[0];
  }
  TermP d = whnf(ctx, s);
  if (d->kind != Kind::Data || d->name != sig->name)
    mismatch(ctx, ErrorClass::TypeMismatch, "scrutinee is not of type " + sig->name, nullptr, ut);
  const std::vector<TermP>& delta = d->kids;
  int np = static_cast<int>(delta.size());

  std::string hname;
  std::vector<std::vector<std::string>> cnames;
  elim_names(*t, hname, cnames);

  TermP motive;
  {
    Restore r(ctx);
    ctx.push_term(hname, foralls(d, n));
    try {
      motive = check_type(ctx, elim_motive(*t)).first;
    } catch (const CheckError& e) {
      if (e.cls() != ErrorClass::NotAType) throw;
      Diagnostic dg = e.diag();
      dg.cls = ErrorClass::MotiveMismatch;
      throw CheckError(dg);
    }
  }

  ElimFrame frame;
  frame.sig = sig;
  frame.n = n;
  frame.params = delta;
  frame.motive = motive;

  // Values for params and gamma_<k in a scope where `pushed` term variables
  // follow the ambient context and gamma_q is the q-th of them.
  auto tele_vals = [&](int pushed, int ngamma) {
    std::vector<TermP> v;
    for (int p = 0; p < np; ++p) v.push_back(weaken(delta[p], Shift::of(Sort::Term, pushed)));
    for (int q = 0; q < ngamma; ++q) v.push_back(capps(mk::var(pushed - 1 - q), n));
    return v;
  };

  std::vector<mk::Case> cases;
  for (int ci = 0; ci < nc; ++ci) {
    const Constructor& c = sig->ctors[ci];
    int m = c.arg_count(), r = c.rec_count(), psi = c.ivar_count();
    const auto& names = cnames[ci];
    if (static_cast<int>(names.size()) != m + 2 * r + psi)
      fail(ErrorClass::ArityMismatch, "case for " + c.label + " binds the wrong number of variables");
    Restore rs(ctx);
    for (int k = 0; k < m; ++k) ctx.push_term(names[k], foralls(inst_tele(c.gamma[k].type, tele_vals(k, k)), n));
    for (int j = 0; j < r; ++j) {
      std::vector<TermP> v = tele_vals(m + j, m);
      for (int q = 0; q < j; ++q) v.push_back(mk::univ(0));
      ctx.push_term(names[m + j], foralls(inst_tele(rec_arg_type(*sig, c, j), v), n));
    }
    for (int j = 0; j < r; ++j) {
      int pushed = m + r + j;
      const Telescope& xi = c.recs[j].xi;
      int p = static_cast<int>(xi.size());
      std::vector<TermP> doms;
      for (int q = 0; q < p; ++q) {
        std::vector<TermP> v = tele_vals(pushed + q, m);
        for (int z = 0; z < q; ++z) v.push_back(capps(mk::var(q - 1 - z), n));
        doms.push_back(foralls(inst_tele(xi[q].type, v), n));
      }
      std::vector<TermP> xs;
      for (int q = 0; q < p; ++q) xs.push_back(capps(mk::var(p - 1 - q), n));
      TermP xj = capps(mk::var(pushed + p - 1 - (m + j)), n);
      TermP hv = clams(mk::apps(xj, xs), n);
      Subst sd;
      sd.terms = {hv};
      sd.tail.term = pushed + p;
      TermP ty = subst(motive, sd);
      for (int q = p - 1; q >= 0; --q) ty = mk::pi(xi[q].name, doms[q], ty);
      ctx.push_term(names[m + r + j], ty);
    }
    for (int k = 0; k < psi; ++k) ctx.push_interval(names[m + 2 * r + k]);

    Shift dw;
    dw.term = m + 2 * r;
    dw.ival = psi;
    std::vector<TermP> ps, as, xs;
    for (auto& p : delta) ps.push_back(weaken(p, dw));
    for (int q = 0; q < m; ++q) as.push_back(capps(mk::var(m + 2 * r - 1 - q), n));
    for (int j = 0; j < r; ++j) xs.push_back(capps(mk::var(2 * r - 1 - j), n));
    std::vector<Interval> ivs;
    for (int k = 0; k < psi; ++k) ivs.push_back(Interval::var(psi - 1 - k));
    TermP con = mk::con(sig->name, c.label, ps, as, xs, ivs);
    Subst sg;
    sg.terms = {clams(con, n)};
    sg.tail = dw;
    TermP goal = subst(motive, sg);
    TermP body = check(ctx, elim_case(*t, ci), goal);

    frame.m = m;
    frame.r = r;
    frame.psi = psi;
    for (auto& side : c.boundary) {
      TermP want = boundary_interpret(frame, side.term.term);
      for (auto& cl : side.face.clauses()) {
        Restore rc(ctx);
        if (!assume(ctx, cl)) continue;
        if (!conv(ctx, body, want))
          mismatch(ctx, ErrorClass::CaseBoundaryMismatch, "case for " + c.label + " does not respect its boundary",
                   want, body);
      }
    }
    frame.cases.push_back(body);
    cases.push_back({names, m + 2 * r, psi, body});
  }
  TermP e = mk::elim(sig->name, n, delta, hname, motive, std::move(cases), u);
  return {e, inst_term(motive, u)};
}

int Checker::check_telescope(Context& ctx, Telescope& tele) {
  int level = 0;
  for (auto& e : tele) {
    if (e.sort != EntrySort::TermVar)
      fail(ErrorClass::NonProperEntry, "telescope entry " + e.name + " must be a term variable");
    std::pair<TermP, int> r;
    try {
      r = check_type(ctx, e.type);
    } catch (const CheckError& err) {
      if (err.cls() != ErrorClass::NotAType) throw;
      Diagnostic d = err.diag();
      d.cls = ErrorClass::IllTypedEntry;
      d.message = "type of " + e.name + " is not a type";
      throw CheckError(d);
    }
    e.type = r.first;
    level = std::max(level, r.second);
    ctx.push_term(e.name, e.type);
  }
  return level;
}

TermP Checker::check_boundary(Context& ctx, const TermP& t, const HitSignature& sig, int li, int xbase, int nrec) {
  const HitSignature& part = g_.sigs.at(sig.name);
  int np = static_cast<int>(part.params.size());
  int nterms = ctx.count(Sort::Term);
  std::vector<TermP> delta;
  for (int p = 0; p < np; ++p) delta.push_back(mk::var(nterms - 1 - p));
  TermP self = mk::data(sig.name, delta);

  TermP head = t;
  while (head->kind == Kind::App) head = head->kids[0];
  if (head->kind == Kind::Var && head->num >= xbase && head->num < xbase + nrec) {
    auto [e, ty] = infer(ctx, t);
    if (whnf(ctx, ty)->kind != Kind::Data)
      mismatch(ctx, ErrorClass::NotABoundaryTerm, "recursive variable must be fully applied", self, ty);
    return e;
  }

  if (t->kind == Kind::Con) {
    if (t->name != sig.name) fail(ErrorClass::NotABoundaryTerm, "constructor of another type in a boundary");
    int idx = sig.index_of(t->label);
    if (idx < 0) fail(ErrorClass::UnknownConstructor, "unknown constructor " + t->label);
    if (idx >= li)
      fail(ErrorClass::ForwardConstructorReference,
           "boundary of " + sig.ctors[li].label + " refers to constructor " + t->label + " which is not declared before it");
    const Constructor& c = part.ctors[idx];
    if (t->counts[1] != c.arg_count() || t->counts[2] != c.rec_count() ||
        static_cast<int>(t->ivs.size()) != c.ivar_count())
      fail(ErrorClass::ArityMismatch, "constructor " + t->label + " applied to the wrong number of arguments");
    std::vector<TermP> vals = delta, args, recs;
    for (int k = 0; k < c.arg_count(); ++k) {
      TermP a = check(ctx, con_arg(*t, k), inst_tele(c.gamma[k].type, vals));
      args.push_back(a);
      vals.push_back(a);
    }
    for (int k = 0; k < c.rec_count(); ++k) {
      const Telescope& xi = c.recs[k].xi;
      TermP body = con_rec(*t, k);
      std::vector<std::string> names;
      for (size_t q = 0; q < xi.size(); ++q) {
        if (body->kind != Kind::Lam) {
          // Eta-expand a partially abstracted recursive argument.
          int rest = static_cast<int>(xi.size() - q);
          body = weaken(body, Shift::of(Sort::Term, rest));
          for (int z = 0; z < rest; ++z) {
            body = mk::app(body, mk::var(rest - 1 - z));
            names.push_back(xi[q + z].name);
          }
          break;
        }
        names.push_back(name0(body, "x"));
        body = body->kids[0];
      }
      Restore r(ctx);
      std::vector<TermP> v = vals;
      int p = static_cast<int>(xi.size());
      for (int q = 0; q < p; ++q) {
        std::vector<TermP> w;
        for (auto& x : v) w.push_back(weaken(x, Shift::of(Sort::Term, q)));
        for (int z = 0; z < q; ++z) w.push_back(mk::var(q - 1 - z));
        ctx.push_term(names[q], inst_tele(xi[q].type, w));
      }
      TermP m = check_boundary(ctx, body, sig, li, xbase + p, nrec);
      for (int q = p - 1; q >= 0; --q) m = mk::lam(names[q], m);
      recs.push_back(m);
    }
    for (auto& r : t->ivs) check_interval(ctx, r);
    return mk::con(sig.name, t->label, delta, args, recs, t->ivs);
  }

  if (t->kind == Kind::HComp) {
    TermP a = check_type(ctx, t->kids[0]).first;
    if (!conv(ctx, a, self)) mismatch(ctx, ErrorClass::NotABoundaryTerm, "boundary composition must be in the type being defined", self, a);
    TermP base = check_boundary(ctx, t->kids[1], sig, li, xbase, nrec);
    std::string bound = t->names.empty() ? "j" : t->names[0];
    std::vector<mk::Tube> tubes;
    for (int k = 0; k < comp_tube_count(*t); ++k) {
      check_face(ctx, t->faces[k]);
      Restore r(ctx);
      ctx.push_interval(bound);
      tubes.push_back({t->faces[k], check_boundary(ctx, t->kids[2 + k], sig, li, xbase, nrec)});
    }
    Assignment as = ctx.assignment();
    auto restrict_ctx = [&](const TermP& x, int under) {
      return as.gens.empty() ? x : restrict_to(x, as.gens, under);
    };
    for (auto& tb : tubes) {
      TermP at0 = inst_ival(tb.term, Interval::zero());
      if (!boundary_equal(ev_, {restrict_ctx(at0, 0)}, {restrict_ctx(base, 0)}, tb.face))
        mismatch(ctx, ErrorClass::BaseBoundaryMismatch, "tube at 0 does not agree with the base", base, at0);
    }
    for (size_t x = 0; x < tubes.size(); ++x)
      for (size_t y = x + 1; y < tubes.size(); ++y)
        if (!boundary_equal(ev_, {restrict_ctx(tubes[x].term, 1)}, {restrict_ctx(tubes[y].term, 1)},
                            wk_face(tubes[x].face & tubes[y].face)))
          mismatch(ctx, ErrorClass::IncompatibleOverlap, "tubes disagree on their overlap", tubes[x].term, tubes[y].term);
    return mk::hcomp(bound, self, std::move(tubes), base);
  }
  fail(ErrorClass::NotABoundaryTerm,
       "boundary terms are recursive variables, earlier constructors, or compositions of those");
}

void Checker::check_hit_signature(HitSignature& sig) {
  if (g_.sigs.count(sig.name) || g_.defs.count(sig.name)) fail(ErrorClass::DuplicateName, "duplicate name " + sig.name);
  for (size_t a = 0; a < sig.ctors.size(); ++a) {
    const std::string& l = sig.ctors[a].label;
    if (g_.ctor_owner.count(l)) fail(ErrorClass::DuplicateName, "constructor " + l + " is already declared");
    for (size_t b = 0; b < a; ++b)
      if (sig.ctors[b].label == l) fail(ErrorClass::DuplicateName, "constructor " + l + " declared twice");
  }
  Context ctx = Context::with_k0();
  check_telescope(ctx, sig.params);
  HitSignature part;
  part.name = sig.name;
  part.params = sig.params;
  g_.sigs[sig.name] = part;
  int level = 0;
  try {
    for (size_t li = 0; li < sig.ctors.size(); ++li) {
      Constructor c = sig.ctors[li];
      Restore r(ctx);
      level = std::max(level, check_telescope(ctx, c.gamma));
      for (auto& rec : c.recs) {
        Restore rr(ctx);
        level = std::max(level, check_telescope(ctx, rec.xi));
      }
      for (int j = 0; j < c.rec_count(); ++j) ctx.push_term(c.recs[j].name, rec_arg_type(part, c, j));
      if (c.ivars.empty() && !c.boundary.empty())
        fail(ErrorClass::PointConstructorBoundary, "point constructor " + c.label + " cannot have a boundary");
      for (auto& i : c.ivars) ctx.push_interval(i);
      check_face(ctx, c.phi);
      Face covered = Face::bot();
      for (auto& side : c.boundary) {
        check_face(ctx, side.face);
        side.term.term = check_boundary(ctx, side.term.term, sig, static_cast<int>(li), 0, c.rec_count());
        covered = covered | side.face;
      }
      if (!face_equal(covered, c.phi))
        fail(ErrorClass::BoundaryNotCovering, "boundary of " + c.label + " covers " + face_str(ctx, covered) +
                                                  " but the constructor is declared on " + face_str(ctx, c.phi));
      for (size_t x = 0; x < c.boundary.size(); ++x)
        for (size_t y = x + 1; y < c.boundary.size(); ++y) {
          Face meet = c.boundary[x].face & c.boundary[y].face;
          if (!boundary_equal(ev_, c.boundary[x].term, c.boundary[y].term, meet))
            mismatch(ctx, ErrorClass::BoundaryIncompatible, "boundary sides of " + c.label + " disagree on " + face_str(ctx, meet),
                     c.boundary[x].term.term, c.boundary[y].term.term);
        }
      part.ctors.push_back(c);
      g_.sigs[sig.name] = part;
      g_.ctor_owner[c.label] = sig.name;
    }
  } catch (...) {
    g_.sigs.erase(sig.name);
    for (auto& c : sig.ctors) {
      auto it = g_.ctor_owner.find(c.label);
      if (it != g_.ctor_owner.end() && it->second == sig.name) g_.ctor_owner.erase(it);
    }
    throw;
  }
  part.level = level;
  g_.sigs[sig.name] = part;
  sig = part;
}

namespace {

struct Interp {
  const ElimFrame& f;
  std::vector<Sort> hat;  // binders entered inside the boundary term, outermost first

  int hat_count(Sort s) const { return static_cast<int>(std::count(hat.begin(), hat.end(), s)); }

  int np() const { return static_cast<int>(f.params.size()); }

  // Boundary scope (params, gamma, x, ivars, hat) into case scope plus hat plus the clocks.
  Subst emb() const {
    int g = hat_count(Sort::Term), gi = hat_count(Sort::Interval);
    Subst s;
    for (int q = 0; q < g; ++q) s.terms.push_back(capps(mk::var(q), f.n));
    for (int j = f.r - 1; j >= 0; --j) s.terms.push_back(capps(mk::var(g + f.r + (f.r - 1 - j)), f.n));
    for (int q = f.m - 1; q >= 0; --q) s.terms.push_back(capps(mk::var(g + 2 * f.r + (f.m - 1 - q)), f.n));
    Shift dw;
    dw.term = g + 2 * f.r + f.m;
    dw.ival = f.psi + gi;
    for (int p = np() - 1; p >= 0; --p) s.terms.push_back(weaken(f.params[p], dw));
    s.tail.clock = f.n;
    return s;
  }

  TermP lift(const TermP& m) const { return clams(subst(m, emb()), f.n); }

  Shift out_tail() const {
    Shift t;
    t.term = f.m + 2 * f.r + hat_count(Sort::Term);
    t.ival = f.psi + hat_count(Sort::Interval);
    return t;
  }

  TermP run(const TermP& m) {
    int g = hat_count(Sort::Term);
    std::vector<TermP> args;
    TermP head = m;
    while (head->kind == Kind::App) {
      args.push_back(head->kids[1]);
      head = head->kids[0];
    }
    std::reverse(args.begin(), args.end());
    if (head->kind == Kind::Var && head->num >= g && head->num < g + f.r) {
      int j = f.r - 1 - (head->num - g);
      std::vector<TermP> as;
      for (auto& a : args) as.push_back(lift(a));
      return mk::apps(mk::var(g + (f.r - 1 - j)), as);
    }
    if (m->kind == Kind::Con) {
      int idx = f.sig->index_of(m->label);
      if (idx < 0 || idx >= static_cast<int>(f.cases.size()))
        fail(ErrorClass::NotABoundaryTerm, "boundary refers to a constructor without an earlier case");
      const Constructor& c = f.sig->ctors[idx];
      std::vector<TermP> ys, xs, gs;
      for (int k = 0; k < m->counts[1]; ++k) gs.push_back(lift(con_arg(*m, k)));
      for (int k = 0; k < m->counts[2]; ++k) {
        const TermP& rk = con_rec(*m, k);
        xs.push_back(lift(rk));
        int p = static_cast<int>(c.recs[k].xi.size());
        TermP body = rk;
        std::vector<std::string> names;
        for (int q = 0; q < p; ++q) {
          names.push_back(name0(body, "x"));
          body = body->kids[0];
        }
        for (int q = 0; q < p; ++q) hat.push_back(Sort::Term);
        TermP y = run(body);
        hat.resize(hat.size() - p);
        for (int q = p - 1; q >= 0; --q) y = mk::lam(names[q], y);
        ys.push_back(y);
      }
      Subst s;
      for (auto it = ys.rbegin(); it != ys.rend(); ++it) s.terms.push_back(*it);
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) s.terms.push_back(*it);
      for (auto it = gs.rbegin(); it != gs.rend(); ++it) s.terms.push_back(*it);
      for (auto it = m->ivs.rbegin(); it != m->ivs.rend(); ++it) s.ivals.push_back(*it);
      s.tail = out_tail();
      return subst(f.cases[idx], s);
    }
    if (m->kind == Kind::HComp) {
      Shift dw = out_tail();
      std::vector<TermP> ps;
      for (auto& p : f.params) ps.push_back(weaken(p, dw));
      TermP all = foralls(mk::data(f.sig->name, ps), f.n);
      std::vector<mk::Tube> vt, tubes;
      for (size_t k = 2; k < m->kids.size(); ++k) {
        const Face& psi = m->faces[k - 2];
        hat.push_back(Sort::Interval);
        TermP e = lift(m->kids[k]);
        TermP body = run(m->kids[k]);
        hat.pop_back();
        vt.push_back({wk_face(psi), wk_iv(e, 1, 1)});
        tubes.push_back({psi, body});
      }
      TermP v = hfill(wk_iv(all), vt, wk_iv(lift(m->kids[1])), Interval::var(0));
      Subst sd;
      sd.terms = {v};
      sd.tail = dw;
      sd.tail.ival += 1;
      TermP line = subst(f.motive, sd);
      return mk::comp("j", line, std::move(tubes), run(m->kids[1]));
    }
    fail(ErrorClass::NotABoundaryTerm, "not a boundary term");
  }
};

}  // namespace

TermP boundary_interpret(const ElimFrame& f, const TermP& bterm) {
  Interp in{f, {}};
  return in.run(bterm);
}

}  // namespace cctt
