#include "cctt/eval.hpp"

#include <algorithm>

namespace cctt {

const HitSignature* Globals::sig(const std::string& h) const {
  auto it = sigs.find(h);
  return it == sigs.end() ? nullptr : &it->second;
}

const Definition* Globals::def(const std::string& n) const {
  auto it = defs.find(n);
  return it == defs.end() ? nullptr : &it->second;
}

namespace {

Interval iv(int v) { return Interval::var(v); }

TermP wk_iv(const TermP& t, int n = 1, int cut = 0) {
  Shift by, c;
  by.ival = n;
  c.ival = cut;
  return weaken(t, by, c);
}

Face wk_face(const Face& f, int n = 1, int cut = 0) {
  if (n == 0) return f;
  return f.rename([&](int v) { return v >= cut ? v + n : v; });
}

// body in scope G,i; result in scope G,i,j with i replaced by e.
TermP line_reindex(const TermP& body, const Interval& e) {
  Subst s;
  s.ivals = {e};
  s.tail.ival = 2;
  return subst(body, s);
}

TermP clams(TermP t, int n) {
  for (int k = 0; k < n; ++k) t = mk::clam("k", t);
  return t;
}

// Apply t to the n innermost clock variables, outermost first.
TermP capps(TermP t, int n) {
  for (int k = n - 1; k >= 0; --k) t = mk::capp(t, ClockRef{k});
  return t;
}

std::shared_ptr<Term> copy(const TermP& t) { return std::make_shared<Term>(*t); }

TermP with_kid(const TermP& t, size_t k, TermP v) {
  if (t->kids[k] == v) return t;
  auto r = copy(t);
  r->kids[k] = std::move(v);
  return r;
}

Subst restrict_subst(const Face::Clause& c, int under) {
  Subst s;
  int top = under;
  for (auto& g : c) top = std::max(top, g.var + under + 1);
  for (int v = 0; v < top; ++v) s.ivals.push_back(iv(v));
  for (auto& g : c) s.ivals[g.var + under] = Interval::endpoint(g.one);
  s.tail.ival = top;
  return s;
}

}  // namespace

TermP restrict_to(const TermP& t, const Face::Clause& c, int under) {
  if (c.empty()) return t;
  return subst(t, restrict_subst(c, under));
}

Interval restrict_to(const Interval& r, const Face::Clause& c) {
  if (c.empty()) return r;
  return subst(r, restrict_subst(c, 0));
}

Face restrict_to(const Face& f, const Face::Clause& c) {
  if (c.empty()) return f;
  return subst(f, restrict_subst(c, 0));
}

std::vector<mk::Tube> tubes_of(const Term& t) {
  std::vector<mk::Tube> r;
  for (size_t k = 2; k < t.kids.size(); ++k) r.push_back({t.faces[k - 2], t.kids[k]});
  return r;
}

TermP hfill(TermP a, const std::vector<mk::Tube>& sys, TermP u0, const Interval& r) {
  std::vector<mk::Tube> tubes;
  Interval rk = r.rename([](int v) { return v + 1; }) & iv(0);
  for (auto& tb : sys) {
    Subst s;
    s.ivals = {rk};
    s.tail.ival = 1;
    tubes.push_back({tb.face, subst(tb.term, s)});
  }
  tubes.push_back({face_of_equation(r, false), wk_iv(u0)});
  return mk::hcomp("k", std::move(a), std::move(tubes), std::move(u0));
}

TermP hit_comp_decompose(const TermP& line, const std::vector<mk::Tube>& sys, const TermP& u0) {
  if (!occurs(line, Sort::Interval, 0)) return mk::hcomp("i", inst_ival(line, iv(0)), sys, u0);
  TermP a1 = inst_ival(line, Interval::one());
  TermP base = mk::trans("i", line, Face::bot(), u0);
  TermP ij = line_reindex(line, iv(1) | iv(0));
  std::vector<mk::Tube> tubes;
  for (auto& tb : sys) tubes.push_back({tb.face, mk::trans("j", ij, Face::gen(0, true), tb.term)});
  return mk::hcomp("i", a1, std::move(tubes), base);
}

Eval::Eval(const Globals& g, long max_steps, std::ostream* trace)
    : g_(g), max_steps_(max_steps), trace_(trace) {}

void Eval::tick() {
  if (++steps_ > max_steps_)
    throw CheckError(ErrorClass::FuelExhausted,
                     "evaluation exceeded " + std::to_string(max_steps_) + " steps");
}

TermP Eval::whnf(const TermP& t) {
  TermP cur = t;
  for (;;) {
    tick();
    TermP next = step(cur);
    if (!next) return cur;
    cur = next;
  }
}

TermP Eval::con_boundary(const Term& con) const {
  const HitSignature* sig = g_.sig(con.name);
  if (!sig) return nullptr;
  const Constructor* c = sig->find(con.label);
  if (!c || c->boundary.empty() || con.counts[0] != static_cast<int>(sig->params.size())) return nullptr;
  int m = c->ivar_count();
  if (static_cast<int>(con.ivs.size()) != m) return nullptr;
  auto at = [&](int v) { return con.ivs[m - 1 - v]; };
  for (auto& side : c->boundary) {
    if (!side.face.subst(at).is_top()) continue;
    std::vector<TermP> ps(con.kids.begin(), con.kids.begin() + con.counts[0]);
    std::vector<TermP> as, rs;
    for (int k = 0; k < con.counts[1]; ++k) as.push_back(con_arg(con, k));
    for (int k = 0; k < con.counts[2]; ++k) rs.push_back(con_rec(con, k));
    return boundary_subst(side.term, ps, as, rs, con.ivs).term;
  }
  return nullptr;
}

TermP Eval::step(const TermP& t) {
  switch (t->kind) {
    case Kind::Global: {
      const Definition* d = g_.def(t->name);
      return d ? d->body : nullptr;
    }
    case Kind::Ann: return t->kids[0];
    case Kind::App: {
      TermP f = whnf(t->kids[0]);
      if (f->kind == Kind::Lam) return inst_term(f->kids[0], t->kids[1]);
      return f == t->kids[0] ? nullptr : with_kid(t, 0, f);
    }
    case Kind::Fst:
    case Kind::Snd: {
      TermP p = whnf(t->kids[0]);
      if (p->kind == Kind::Pair) return p->kids[t->kind == Kind::Fst ? 0 : 1];
      return p == t->kids[0] ? nullptr : with_kid(t, 0, p);
    }
    case Kind::PApp: {
      const Interval& r = t->ivs[0];
      if (r.is_endpoint() && t->kids.size() == 3) return t->kids[r.is_one() ? 2 : 1];
      TermP p = whnf(t->kids[0]);
      if (p->kind == Kind::PLam) return inst_ival(p->kids[0], r);
      if (p->kind == Kind::ForceApp && p->ticks[0].is_diamond() && p->kids[0]->kind == Kind::Pfix &&
          p->kids[0]->clocks[0] == ClockRef{0}) {
        const TermP& f = p->kids[0]->kids[0];
        return inst_clock(mk::app(f, mk::dfix(ClockRef{0}, f)), p->clocks[0]);
      }
      return p == t->kids[0] ? nullptr : with_kid(t, 0, p);
    }
    case Kind::ClockApp: {
      TermP f = whnf(t->kids[0]);
      if (f->kind == Kind::ClockLam) return inst_clock(f->kids[0], t->clocks[0]);
      return f == t->kids[0] ? nullptr : with_kid(t, 0, f);
    }
    case Kind::TickApp: {
      Tick u = tick_normalize(t->ticks[0]);
      if (!(u == t->ticks[0])) return mk::tapp(t->kids[0], u);
      TermP f = whnf(t->kids[0]);
      if (f->kind == Kind::TickLam) return inst_tick(f->kids[0], u);
      return f == t->kids[0] ? nullptr : with_kid(t, 0, f);
    }
    case Kind::ForceApp: {
      Tick u = tick_normalize(t->ticks[0]);
      if (!u.has_diamond()) return mk::tapp(inst_clock(t->kids[0], t->clocks[0]), u);
      TermP b = whnf(t->kids[0]);
      if (b->kind == Kind::TickLam) return inst_force(b->kids[0], t->clocks[0], u);
      if (b->kind == Kind::Dfix && u.is_diamond() && b->clocks[0] == ClockRef{0}) {
        const TermP& f = b->kids[0];
        return inst_clock(mk::app(f, mk::dfix(ClockRef{0}, f)), t->clocks[0]);
      }
      if (b == t->kids[0] && u == t->ticks[0]) return nullptr;
      auto r = copy(t);
      r->kids[0] = b;
      r->ticks[0] = u;
      return r;
    }
    case Kind::Comp: return comp_eval(t);
    case Kind::HComp: return hcomp_eval(t);
    case Kind::Trans: return trans_eval(t);
    case Kind::Con: return con_boundary(*t);
    case Kind::Elim: {
      TermP s = whnf(elim_scrut(*t));
      TermP r = elim_reduce(t, s);
      if (r) return r;
      return s == elim_scrut(*t) ? nullptr : with_kid(t, t->kids.size() - 1, s);
    }
    default: return nullptr;
  }
}

namespace {

// Drops tubes whose face is 0; returns null when nothing was dropped.
TermP drop_empty_tubes(const TermP& t) {
  bool any = false;
  for (auto& f : t->faces) any = any || f.is_bot();
  if (!any) return nullptr;
  auto r = copy(t);
  r->kids.resize(2);
  r->binds.resize(2);
  r->faces.clear();
  r->names.resize(t->kind == Kind::Comp ? 1 : 0);
  for (size_t k = 2; k < t->kids.size(); ++k) {
    if (t->faces[k - 2].is_bot()) continue;
    r->kids.push_back(t->kids[k]);
    r->binds.push_back(t->binds[k]);
    r->faces.push_back(t->faces[k - 2]);
    r->names.push_back("i");
  }
  return r;
}

TermP first_total_tube(const TermP& t) {
  for (size_t k = 2; k < t->kids.size(); ++k)
    if (t->faces[k - 2].is_top()) return inst_ival(t->kids[k], Interval::one());
  return nullptr;
}

}  // namespace

TermP Eval::comp_eval(const TermP& t) {
  if (TermP r = first_total_tube(t)) return r;
  if (TermP r = drop_empty_tubes(t)) return r;
  TermP a = whnf(t->kids[0]);
  const TermP& u0 = t->kids[1];
  auto sys = tubes_of(*t);
  const std::string& nm = a->names.empty() ? std::string("x") : a->names[0];
  bool former = a->kind == Kind::Pi || a->kind == Kind::Sigma || a->kind == Kind::Path ||
                a->kind == Kind::Later || a->kind == Kind::Forall || a->kind == Kind::Data;
  if (sys.empty() && !former) return mk::trans(t->names.empty() ? std::string("i") : t->names[0], a, Face::bot(), u0);
  // A constant line composes homogeneously; Sigma and HIT lines have their
  // own rules that already reduce to hcomp on constant lines.
  if (a->kind != Kind::Sigma && a->kind != Kind::Data && !occurs(a, Sort::Interval, 0)) {
    std::string i = t->names.empty() ? std::string("i") : t->names[0];
    return mk::hcomp(i, inst_ival(a, Interval::zero()), std::move(sys), u0);
  }
  switch (a->kind) {
    case Kind::Pi: {
      const TermP& b = a->kids[0];
      const TermP& c = a->kids[1];
      Shift one_term = Shift::of(Sort::Term);
      // y(i) = comp^j_{B(i \/ ~j)} [(i=1) -> y] y, in scope G,y,i.
      Subst sb;
      sb.ivals = {iv(1) | ~iv(0)};
      sb.tail.ival = 2;
      sb.tail.term = 1;
      TermP ybar = mk::comp("j", subst(b, sb), {{Face::gen(0, true), mk::var(0)}}, mk::var(0));
      TermP ybar0 = inst_ival(ybar, Interval::zero());
      Subst sc;
      sc.terms = {ybar};
      sc.tail.term = 1;
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::app(weaken(tb.term, one_term), ybar)});
      TermP base = mk::app(weaken(u0, one_term), ybar0);
      return mk::lam(nm, mk::comp("i", subst(c, sc), std::move(tubes), base));
    }
    case Kind::Sigma: {
      const TermP& b = a->kids[0];
      const TermP& c = a->kids[1];
      // a(i) = comp^j_{B(i /\ j)} [phi -> fst u(i /\ j), (i=0) -> fst u0] (fst u0)
      std::vector<mk::Tube> fill_tubes;
      for (auto& tb : sys)
        fill_tubes.push_back({wk_face(tb.face), mk::fst(line_reindex(tb.term, iv(1) & iv(0)))});
      fill_tubes.push_back({Face::gen(0, false), mk::fst(wk_iv(u0, 2))});
      TermP fill = mk::comp("j", line_reindex(b, iv(1) & iv(0)), std::move(fill_tubes),
                            mk::fst(wk_iv(u0)));
      std::vector<mk::Tube> t1, t2;
      for (auto& tb : sys) {
        t1.push_back({tb.face, mk::fst(tb.term)});
        t2.push_back({tb.face, mk::snd(tb.term)});
      }
      TermP a1 = mk::comp("i", b, std::move(t1), mk::fst(u0));
      TermP b1 = mk::comp("i", inst_term(c, fill), std::move(t2), mk::snd(u0));
      return mk::pair(a1, b1);
    }
    case Kind::Path: {
      const TermP& b = a->kids[0];
      TermP l = wk_iv(a->kids[1], 1, 1);
      TermP r = wk_iv(a->kids[2], 1, 1);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys)
        tubes.push_back({wk_face(tb.face), mk::papp(wk_iv(tb.term, 1, 1), iv(1), l, r)});
      tubes.push_back({Face::gen(0, false), l});
      tubes.push_back({Face::gen(0, true), r});
      TermP l0 = wk_iv(inst_ival(a->kids[1], Interval::zero()));
      TermP r0 = wk_iv(inst_ival(a->kids[2], Interval::zero()));
      TermP base = mk::papp(wk_iv(u0), iv(0), l0, r0);
      return mk::plam("k", mk::comp("i", wk_iv(b, 1, 1), std::move(tubes), base));
    }
    case Kind::Later: {
      Shift one = Shift::of(Sort::Tick);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::tapp(weaken(tb.term, one), Tick::var(0))});
      TermP base = mk::tapp(weaken(u0, one), Tick::var(0));
      return mk::tlam(nm, a->clocks[0], mk::comp("i", a->kids[0], std::move(tubes), base));
    }
    case Kind::Forall: {
      Shift one = Shift::of(Sort::Clock);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::capp(weaken(tb.term, one), ClockRef{0})});
      TermP base = mk::capp(weaken(u0, one), ClockRef{0});
      return mk::clam(nm, mk::comp("i", a->kids[0], std::move(tubes), base));
    }
    case Kind::Data: return hit_comp_decompose(a, sys, u0);
    default: return a == t->kids[0] ? nullptr : with_kid(t, 0, a);
  }
}

TermP Eval::hcomp_eval(const TermP& t) {
  if (TermP r = first_total_tube(t)) return r;
  if (TermP r = drop_empty_tubes(t)) return r;
  TermP a = whnf(t->kids[0]);
  const TermP& u0 = t->kids[1];
  auto sys = tubes_of(*t);
  const std::string& nm = a->names.empty() ? std::string("x") : a->names[0];
  switch (a->kind) {
    case Kind::Pi: {
      Shift one = Shift::of(Sort::Term);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::app(weaken(tb.term, one), mk::var(0))});
      return mk::lam(nm, mk::hcomp("j", a->kids[1], std::move(tubes), mk::app(weaken(u0, one), mk::var(0))));
    }
    case Kind::Sigma: return mk::comp("i", wk_iv(a), std::move(sys), u0);
    case Kind::Path: {
      // <k> hcomp^j A [phi -> u j @ k, (k=0) -> l, (k=1) -> r] (u0 @ k), k outermost.
      TermP b = wk_iv(a->kids[0]);
      TermP l = wk_iv(a->kids[1], 2), r = wk_iv(a->kids[2], 2);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({wk_face(tb.face), mk::papp(wk_iv(tb.term, 1, 1), iv(1), l, r)});
      tubes.push_back({Face::gen(0, false), l});
      tubes.push_back({Face::gen(0, true), r});
      TermP base = mk::papp(wk_iv(u0), iv(0), wk_iv(a->kids[1]), wk_iv(a->kids[2]));
      return mk::plam("k", mk::hcomp("j", b, std::move(tubes), base));
    }
    case Kind::Later: {
      Shift one = Shift::of(Sort::Tick);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::tapp(weaken(tb.term, one), Tick::var(0))});
      TermP base = mk::tapp(weaken(u0, one), Tick::var(0));
      return mk::tlam(nm, a->clocks[0], mk::hcomp("j", a->kids[0], std::move(tubes), base));
    }
    case Kind::Forall: {
      Shift one = Shift::of(Sort::Clock);
      std::vector<mk::Tube> tubes;
      for (auto& tb : sys) tubes.push_back({tb.face, mk::capp(weaken(tb.term, one), ClockRef{0})});
      TermP base = mk::capp(weaken(u0, one), ClockRef{0});
      return mk::clam(nm, mk::hcomp("j", a->kids[0], std::move(tubes), base));
    }
    default: return a == t->kids[0] ? nullptr : with_kid(t, 0, a);
  }
}

TermP Eval::trans_eval(const TermP& t) {
  const Face& phi = t->faces[0];
  const TermP& u0 = t->kids[1];
  if (phi.is_top() || !occurs(t->kids[0], Sort::Interval, 0)) return u0;
  TermP a = whnf(t->kids[0]);
  if (!occurs(a, Sort::Interval, 0)) return u0;
  switch (a->kind) {
    case Kind::Pi:
    case Kind::Sigma:
    case Kind::Path:
    case Kind::Later:
    case Kind::Forall:
      return mk::comp("i", a, {{phi, wk_iv(u0)}}, u0);
    case Kind::Data: break;
    default: return a == t->kids[0] ? nullptr : with_kid(t, 0, a);
  }
  TermP w = whnf(u0);
  auto stuck = [&]() -> TermP {
    if (a == t->kids[0] && w == u0) return nullptr;
    auto r = copy(t);
    r->kids[0] = a;
    r->kids[1] = w;
    return r;
  };
  if (w->kind == Kind::HComp) {
    // trans commutes with hcomp.
    std::vector<mk::Tube> tubes;
    for (size_t k = 2; k < w->kids.size(); ++k)
      tubes.push_back({w->faces[k - 2], mk::trans("i", wk_iv(a, 1, 1), wk_face(phi), w->kids[k])});
    return mk::hcomp("j", inst_ival(a, Interval::one()), std::move(tubes),
                     mk::trans("i", a, phi, w->kids[1]));
  }
  if (w->kind != Kind::Con) return stuck();
  const HitSignature* sig = g_.sig(a->name);
  const Constructor* c = sig ? sig->find(w->label) : nullptr;
  if (!c || w->counts[0] != static_cast<int>(sig->params.size())) return stuck();
  int m = c->ivar_count();
  Face phil = c->phi.subst([&](int v) { return w->ivs[m - 1 - v]; });
  if (!phil.is_bot()) return stuck();
  int np = static_cast<int>(sig->params.size());
  const std::vector<TermP>& delta = a->kids;
  std::vector<TermP> delta_ij;
  for (auto& d : delta) delta_ij.push_back(line_reindex(d, iv(1) & iv(0)));
  // Fillers for the non-recursive arguments, each in scope G,i.
  std::vector<TermP> fills;
  Face phi_i0 = wk_face(phi) | Face::gen(0, false);
  for (int k = 0; k < c->arg_count(); ++k) {
    Subst s;
    for (int q = k - 1; q >= 0; --q) s.terms.push_back(line_reindex(fills[q], iv(1) & iv(0)));
    for (int q = np - 1; q >= 0; --q) s.terms.push_back(delta_ij[q]);
    TermP line = subst(c->gamma[k].type, s);
    fills.push_back(mk::trans("j", line, phi_i0, wk_iv(con_arg(*w, k))));
  }
  std::vector<TermP> params, args, recs;
  for (auto& d : delta) params.push_back(inst_ival(d, Interval::one()));
  for (auto& f : fills) args.push_back(inst_ival(f, Interval::one()));
  for (int k = 0; k < c->rec_count(); ++k) {
    Subst s;
    for (int q = 0; q < k; ++q) s.terms.push_back(mk::univ(0));
    for (int q = c->arg_count() - 1; q >= 0; --q) s.terms.push_back(fills[q]);
    for (int q = np - 1; q >= 0; --q) s.terms.push_back(delta[q]);
    TermP line = subst(rec_arg_type(*sig, *c, k), s);
    recs.push_back(mk::trans("i", line, phi, con_rec(*w, k)));
  }
  return mk::con(a->name, w->label, std::move(params), std::move(args), std::move(recs), w->ivs);
}

TermP Eval::elim_reduce(const TermP& t, const TermP& scrut) {
  int n = t->num;
  TermP b = scrut;
  for (int k = 0; k < n; ++k) {
    if (b->kind == Kind::ClockLam)
      b = b->kids[0];
    else
      b = mk::capp(weaken(b, Shift::of(Sort::Clock)), ClockRef{0});
    b = whnf(b);
  }
  const HitSignature* sig = g_.sig(t->name);
  if (!sig) return nullptr;
  if (b->kind == Kind::Con) {
    int ci = sig->index_of(b->label);
    if (ci < 0 || ci >= t->counts[1]) return nullptr;
    const Constructor& c = sig->ctors[ci];
    Subst s;
    for (int j = c.rec_count() - 1; j >= 0; --j) {
      int nx = static_cast<int>(c.recs[j].xi.size());
      TermP a = weaken(con_rec(*b, j), Shift::of(Sort::Term, nx));
      std::vector<TermP> xs;
      for (int q = 0; q < nx; ++q) xs.push_back(capps(mk::var(nx - 1 - q), n));
      auto e = copy(weaken(t, Shift::of(Sort::Term, nx)));
      e->kids.back() = clams(mk::apps(a, xs), n);
      TermP y = e;
      for (int q = nx - 1; q >= 0; --q) y = mk::lam(c.recs[j].xi[q].name, y);
      s.terms.push_back(y);
    }
    for (int j = c.rec_count() - 1; j >= 0; --j) s.terms.push_back(clams(con_rec(*b, j), n));
    for (int j = c.arg_count() - 1; j >= 0; --j) s.terms.push_back(clams(con_arg(*b, j), n));
    for (int j = static_cast<int>(b->ivs.size()) - 1; j >= 0; --j) s.ivals.push_back(b->ivs[j]);
    return subst(elim_case(*t, ci), s);
  }
  if (b->kind == Kind::HComp) {
    TermP all = b->kids[0];
    for (int k = 0; k < n; ++k) all = mk::forall("k", all);
    all = wk_iv(all);
    std::vector<mk::Tube> vt, tubes;
    TermP ti = wk_iv(t);
    for (size_t k = 2; k < b->kids.size(); ++k) {
      TermP u = clams(b->kids[k], n);
      vt.push_back({wk_face(b->faces[k - 2]), wk_iv(u, 1, 1)});
      auto e = copy(ti);
      e->kids.back() = u;
      tubes.push_back({b->faces[k - 2], e});
    }
    TermP base0 = clams(b->kids[1], n);
    TermP v = hfill(all, vt, wk_iv(base0), iv(0));
    Subst sd;
    sd.terms = {v};
    sd.tail.ival = 1;
    TermP line = subst(elim_motive(*t), sd);
    auto e0 = copy(t);
    e0->kids.back() = base0;
    return mk::comp("i", line, std::move(tubes), e0);
  }
  return nullptr;
}

namespace {

bool same_ticks(const Tick& a, const Tick& b) { return tick_normalize(a) == tick_normalize(b); }

}  // namespace

bool Eval::conv(const TermP& a, const TermP& b) {
  if (a == b || structural_equal(a, b)) return true;
  TermP x = whnf(a);
  TermP y = whnf(b);
  if (trace_) *trace_ << std::string(depth_ * 2, ' ') << "conv " << print(x) << " =?= " << print(y) << "\n";
  ++depth_;
  bool r = conv_whnf(x, y);
  --depth_;
  if (trace_ && !r) *trace_ << std::string(depth_ * 2, ' ') << "  -> not convertible\n";
  return r;
}

bool Eval::conv_system(const Term& a, const Term& b) {
  Face ua = Face::bot(), ub = Face::bot();
  for (auto& f : a.faces) ua = ua | f;
  for (auto& f : b.faces) ub = ub | f;
  if (!(ua == ub)) return false;
  for (size_t p = 2; p < a.kids.size(); ++p)
    for (size_t q = 2; q < b.kids.size(); ++q) {
      Face both = a.faces[p - 2] & b.faces[q - 2];
      for (auto& c : both.clauses())
        if (!conv(restrict_to(a.kids[p], c, 1), restrict_to(b.kids[q], c, 1))) return false;
    }
  return true;
}

bool Eval::conv_whnf(const TermP& x, const TermP& y) {
  if (structural_equal(x, y)) return true;
  Shift t1 = Shift::of(Sort::Term);
  if (x->kind == Kind::Lam || y->kind == Kind::Lam) {
    auto body = [&](const TermP& z) {
      return z->kind == Kind::Lam ? z->kids[0] : mk::app(weaken(z, t1), mk::var(0));
    };
    return conv(body(x), body(y));
  }
  if (x->kind == Kind::PLam || y->kind == Kind::PLam) {
    auto body = [&](const TermP& z) {
      return z->kind == Kind::PLam ? z->kids[0] : mk::papp(wk_iv(z), iv(0));
    };
    return conv(body(x), body(y));
  }
  if (x->kind == Kind::ClockLam || y->kind == Kind::ClockLam) {
    auto body = [&](const TermP& z) {
      return z->kind == Kind::ClockLam ? z->kids[0]
                                       : mk::capp(weaken(z, Shift::of(Sort::Clock)), ClockRef{0});
    };
    return conv(body(x), body(y));
  }
  if (x->kind == Kind::TickLam || y->kind == Kind::TickLam) {
    auto body = [&](const TermP& z) {
      return z->kind == Kind::TickLam ? z->kids[0]
                                      : mk::tapp(weaken(z, Shift::of(Sort::Tick)), Tick::var(0));
    };
    return conv(body(x), body(y));
  }
  if (x->kind == Kind::Pair || y->kind == Kind::Pair) {
    auto part = [&](const TermP& z, int k) {
      if (z->kind == Kind::Pair) return z->kids[k];
      return k == 0 ? mk::fst(z) : mk::snd(z);
    };
    return conv(part(x, 0), part(y, 0)) && conv(part(x, 1), part(y, 1));
  }
  if (x->kind != y->kind) return false;
  const Term& a = *x;
  const Term& b = *y;
  auto kids_conv = [&](size_t from, size_t to) {
    for (size_t k = from; k < to; ++k)
      if (!conv(a.kids[k], b.kids[k])) return false;
    return true;
  };
  switch (a.kind) {
    case Kind::Var: return a.num == b.num;
    case Kind::Global: return a.name == b.name;
    case Kind::Univ: return a.num == b.num;
    case Kind::Pi:
    case Kind::Sigma:
    case Kind::App:
    case Kind::Path:
    case Kind::Fst:
    case Kind::Snd:
    case Kind::Forall:
      return a.kids.size() == b.kids.size() && kids_conv(0, a.kids.size());
    case Kind::PApp: return a.ivs[0] == b.ivs[0] && conv(a.kids[0], b.kids[0]);
    case Kind::ClockApp:
    case Kind::Later:
    case Kind::Dfix:
    case Kind::Pfix:
      return a.clocks[0] == b.clocks[0] && conv(a.kids[0], b.kids[0]);
    case Kind::TickApp: return same_ticks(a.ticks[0], b.ticks[0]) && conv(a.kids[0], b.kids[0]);
    case Kind::ForceApp:
      return a.clocks[0] == b.clocks[0] && same_ticks(a.ticks[0], b.ticks[0]) &&
             conv(a.kids[0], b.kids[0]);
    case Kind::Comp:
    case Kind::HComp:
      return conv(a.kids[0], b.kids[0]) && conv(a.kids[1], b.kids[1]) && conv_system(a, b);
    case Kind::Trans:
      return a.faces[0] == b.faces[0] && conv(a.kids[0], b.kids[0]) && conv(a.kids[1], b.kids[1]);
    case Kind::Data:
      return a.name == b.name && a.kids.size() == b.kids.size() && kids_conv(0, a.kids.size());
    case Kind::Con: {
      if (a.label != b.label || a.counts[1] != b.counts[1] || a.counts[2] != b.counts[2] || a.ivs != b.ivs)
        return false;
      for (int k = 0; k < a.counts[1] + a.counts[2]; ++k)
        if (!conv(a.kids[a.counts[0] + k], b.kids[b.counts[0] + k])) return false;
      return true;
    }
    case Kind::Elim: {
      if (a.name != b.name || a.num != b.num || a.counts[1] != b.counts[1]) return false;
      for (int k = 0; k <= a.counts[1]; ++k)
        if (!conv(a.kids[a.counts[0] + k], b.kids[b.counts[0] + k])) return false;
      return conv(a.kids.back(), b.kids.back());
    }
    default: return false;
  }
}

namespace {

TermP beta_spines(const TermP& t);

TermP beta_app(const TermP& t) {
  std::vector<TermP> args;
  TermP h = t;
  while (h->kind == Kind::App) {
    args.push_back(h->kids[1]);
    h = h->kids[0];
  }
  std::reverse(args.begin(), args.end());
  size_t k = 0;
  while (k < args.size() && h->kind == Kind::Lam) h = inst_term(h->kids[0], args[k++]);
  if (k == 0) return t;
  std::vector<TermP> rest(args.begin() + k, args.end());
  return beta_spines(mk::apps(h, rest));
}

TermP under_lams(const TermP& t, const std::function<TermP(const TermP&)>& f) {
  if (t->kind != Kind::Lam) return f(t);
  return with_kid(t, 0, under_lams(t->kids[0], f));
}

TermP beta_spines(const TermP& t) {
  switch (t->kind) {
    case Kind::App: return beta_app(t);
    case Kind::Con: {
      auto r = copy(t);
      for (int k = 0; k < t->counts[2]; ++k) {
        size_t p = t->counts[0] + t->counts[1] + k;
        r->kids[p] = under_lams(t->kids[p], beta_spines);
      }
      return r;
    }
    case Kind::HComp: {
      auto r = copy(t);
      for (size_t k = 1; k < t->kids.size(); ++k) r->kids[k] = beta_spines(t->kids[k]);
      return r;
    }
    default: return t;
  }
}

TermP bnorm(const Eval& ev, const TermP& t) {
  if (t->kind == Kind::Con) {
    if (TermP r = ev.con_boundary(*t)) return bnorm(ev, beta_spines(r));
  }
  if (t->kind == Kind::HComp) {
    for (size_t k = 2; k < t->kids.size(); ++k)
      if (t->faces[k - 2].is_top()) return bnorm(ev, inst_ival(t->kids[k], Interval::one()));
  }
  return t;
}

bool beq(Eval& ev, const TermP& x, const TermP& y);

bool beq_lams(Eval& ev, TermP x, TermP y) {
  while (x->kind == Kind::Lam && y->kind == Kind::Lam) {
    x = x->kids[0];
    y = y->kids[0];
  }
  if (x->kind == Kind::Lam || y->kind == Kind::Lam) return false;
  return beq(ev, bnorm(ev, x), bnorm(ev, y));
}

bool beq(Eval& ev, const TermP& x, const TermP& y) {
  if (structural_equal(x, y)) return true;
  if (x->kind == Kind::Con && y->kind == Kind::Con) {
    if (x->label != y->label || x->ivs != y->ivs || x->counts[1] != y->counts[1] ||
        x->counts[2] != y->counts[2])
      return false;
    for (int k = 0; k < x->counts[1]; ++k)
      if (!ev.conv(con_arg(*x, k), con_arg(*y, k))) return false;
    for (int k = 0; k < x->counts[2]; ++k)
      if (!beq_lams(ev, con_rec(*x, k), con_rec(*y, k))) return false;
    return true;
  }
  if (x->kind == Kind::HComp && y->kind == Kind::HComp) {
    if (!ev.conv(x->kids[0], y->kids[0])) return false;
    if (!beq(ev, bnorm(ev, x->kids[1]), bnorm(ev, y->kids[1]))) return false;
    Face ux = Face::bot(), uy = Face::bot();
    for (auto& f : x->faces) ux = ux | f;
    for (auto& f : y->faces) uy = uy | f;
    if (!(ux == uy)) return false;
    for (size_t p = 2; p < x->kids.size(); ++p)
      for (size_t q = 2; q < y->kids.size(); ++q)
        for (auto& c : (x->faces[p - 2] & y->faces[q - 2]).clauses())
          if (!beq(ev, bnorm(ev, restrict_to(x->kids[p], c, 1)), bnorm(ev, restrict_to(y->kids[q], c, 1))))
            return false;
    return true;
  }
  auto spine = [](TermP t, std::vector<TermP>& args) {
    while (t->kind == Kind::App) {
      args.push_back(t->kids[1]);
      t = t->kids[0];
    }
    return t;
  };
  std::vector<TermP> ax, ay;
  TermP hx = spine(x, ax), hy = spine(y, ay);
  if (hx->kind == Kind::Var && hy->kind == Kind::Var) {
    if (hx->num != hy->num || ax.size() != ay.size()) return false;
    for (size_t k = 0; k < ax.size(); ++k)
      if (!ev.conv(ax[k], ay[k])) return false;
    return true;
  }
  return false;
}

}  // namespace

BoundaryTerm boundary_subst(const BoundaryTerm& n, const std::vector<TermP>& params,
                            const std::vector<TermP>& args, const std::vector<TermP>& recs,
                            const std::vector<Interval>& ivs) {
  Subst s;
  for (auto it = recs.rbegin(); it != recs.rend(); ++it) s.terms.push_back(*it);
  for (auto it = args.rbegin(); it != args.rend(); ++it) s.terms.push_back(*it);
  for (auto it = params.rbegin(); it != params.rend(); ++it) s.terms.push_back(*it);
  for (auto it = ivs.rbegin(); it != ivs.rend(); ++it) s.ivals.push_back(*it);
  Shift ext = free_extent(n.term);
  if (ext.term > static_cast<int>(s.terms.size()) || ext.ival > static_cast<int>(s.ivals.size()))
    throw CheckError(ErrorClass::ArityMismatch, "boundary term instantiated with too few arguments");
  return {beta_spines(subst(n.term, s))};
}

bool boundary_equal(Eval& ev, const BoundaryTerm& m, const BoundaryTerm& n, const Face& under) {
  for (auto& c : under.clauses()) {
    TermP x = bnorm(ev, beta_spines(restrict_to(m.term, c)));
    TermP y = bnorm(ev, beta_spines(restrict_to(n.term, c)));
    if (!beq(ev, x, y)) return false;
  }
  return true;
}

}  // namespace cctt
