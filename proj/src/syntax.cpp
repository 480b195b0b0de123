#include "cctt/syntax.hpp"

#include <algorithm>
#include <functional>

namespace cctt {

int Shift::get(Sort s) const {
  switch (s) {
    case Sort::Term: return term;
    case Sort::Clock: return clock;
    case Sort::Tick: return tick;
    case Sort::Interval: return ival;
  }
  return 0;
}

int& Shift::at(Sort s) {
  switch (s) {
    case Sort::Term: return term;
    case Sort::Clock: return clock;
    case Sort::Tick: return tick;
    case Sort::Interval: return ival;
  }
  return term;
}

Tick Tick::tirr(Tick u, Tick v, Interval r) {
  Tick t;
  t.k = K::Tirr;
  t.u = std::make_shared<const Tick>(std::move(u));
  t.v = std::make_shared<const Tick>(std::move(v));
  t.r = std::move(r);
  return t;
}

bool Tick::has_diamond() const {
  switch (k) {
    case K::Var: return false;
    case K::Diamond: return true;
    case K::Tirr: return u->has_diamond() || v->has_diamond();
  }
  return false;
}

int Tick::leftmost_var() const {
  switch (k) {
    case K::Var: return idx;
    case K::Diamond: return -1;
    case K::Tirr: return std::max(u->leftmost_var(), v->leftmost_var());
  }
  return -1;
}

void Tick::vars(std::vector<int>& out) const {
  if (k == K::Var) out.push_back(idx);
  if (k == K::Tirr) {
    u->vars(out);
    v->vars(out);
  }
}

bool operator==(const Tick& a, const Tick& b) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case Tick::K::Var: return a.idx == b.idx;
    case Tick::K::Diamond: return true;
    case Tick::K::Tirr: return a.r == b.r && *a.u == *b.u && *a.v == *b.v;
  }
  return false;
}

Tick tick_normalize(const Tick& t) {
  if (t.k != Tick::K::Tirr) return t;
  Tick u = tick_normalize(*t.u);
  Tick v = tick_normalize(*t.v);
  if (t.r.is_zero()) return u;
  if (t.r.is_one()) return v;
  if (u.is_diamond() && v.is_diamond()) return Tick::diamond();
  return Tick::tirr(std::move(u), std::move(v), t.r);
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Var: return "Var";
    case Kind::Global: return "Global";
    case Kind::Univ: return "Univ";
    case Kind::Pi: return "Pi";
    case Kind::Lam: return "Lam";
    case Kind::App: return "App";
    case Kind::Sigma: return "Sigma";
    case Kind::Pair: return "Pair";
    case Kind::Fst: return "Fst";
    case Kind::Snd: return "Snd";
    case Kind::Path: return "Path";
    case Kind::PLam: return "PLam";
    case Kind::PApp: return "PApp";
    case Kind::Forall: return "Forall";
    case Kind::ClockLam: return "ClockLam";
    case Kind::ClockApp: return "ClockApp";
    case Kind::Later: return "Later";
    case Kind::TickLam: return "TickLam";
    case Kind::TickApp: return "TickApp";
    case Kind::ForceApp: return "ForceApp";
    case Kind::Dfix: return "Dfix";
    case Kind::Pfix: return "Pfix";
    case Kind::Comp: return "Comp";
    case Kind::HComp: return "HComp";
    case Kind::Trans: return "Trans";
    case Kind::Data: return "Data";
    case Kind::Con: return "Con";
    case Kind::Elim: return "Elim";
    case Kind::Ann: return "Ann";
  }
  return "?";
}

namespace mk {

namespace {

std::shared_ptr<Term> node(Kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

void kid(Term& t, TermP k, Shift b = {}) {
  t.kids.push_back(std::move(k));
  t.binds.push_back(b);
}

}  // namespace

TermP var(int i) {
  auto t = node(Kind::Var);
  t->num = i;
  return t;
}

TermP global(const std::string& n) {
  auto t = node(Kind::Global);
  t->name = n;
  return t;
}

TermP univ(int level) {
  auto t = node(Kind::Univ);
  t->num = level;
  return t;
}

TermP pi(const std::string& x, TermP a, TermP b) {
  auto t = node(Kind::Pi);
  kid(*t, std::move(a));
  kid(*t, std::move(b), Shift::of(Sort::Term));
  t->names = {x};
  return t;
}

TermP arrow(TermP a, TermP b) { return pi("_", std::move(a), weaken(b, Shift::of(Sort::Term))); }

TermP lam(const std::string& x, TermP body) {
  auto t = node(Kind::Lam);
  kid(*t, std::move(body), Shift::of(Sort::Term));
  t->names = {x};
  return t;
}

TermP app(TermP f, TermP a) {
  auto t = node(Kind::App);
  kid(*t, std::move(f));
  kid(*t, std::move(a));
  return t;
}

TermP apps(TermP f, const std::vector<TermP>& as) {
  for (auto& a : as) f = app(f, a);
  return f;
}

TermP sigma(const std::string& x, TermP a, TermP b) {
  auto t = node(Kind::Sigma);
  kid(*t, std::move(a));
  kid(*t, std::move(b), Shift::of(Sort::Term));
  t->names = {x};
  return t;
}

TermP pair(TermP a, TermP b) {
  auto t = node(Kind::Pair);
  kid(*t, std::move(a));
  kid(*t, std::move(b));
  return t;
}

TermP fst(TermP p) {
  auto t = node(Kind::Fst);
  kid(*t, std::move(p));
  return t;
}

TermP snd(TermP p) {
  auto t = node(Kind::Snd);
  kid(*t, std::move(p));
  return t;
}

TermP path(TermP a, TermP x, TermP y) {
  auto t = node(Kind::Path);
  kid(*t, std::move(a));
  kid(*t, std::move(x));
  kid(*t, std::move(y));
  return t;
}

TermP plam(const std::string& i, TermP body) {
  auto t = node(Kind::PLam);
  kid(*t, std::move(body), Shift::of(Sort::Interval));
  t->names = {i};
  return t;
}

TermP papp(TermP p, Interval r, TermP left, TermP right) {
  auto t = node(Kind::PApp);
  kid(*t, std::move(p));
  if (left && right) {
    kid(*t, std::move(left));
    kid(*t, std::move(right));
  }
  t->ivs = {std::move(r)};
  return t;
}

TermP forall(const std::string& k, TermP body) {
  auto t = node(Kind::Forall);
  kid(*t, std::move(body), Shift::of(Sort::Clock));
  t->names = {k};
  return t;
}

TermP clam(const std::string& k, TermP body) {
  auto t = node(Kind::ClockLam);
  kid(*t, std::move(body), Shift::of(Sort::Clock));
  t->names = {k};
  return t;
}

TermP capp(TermP f, ClockRef k) {
  auto t = node(Kind::ClockApp);
  kid(*t, std::move(f));
  t->clocks = {k};
  return t;
}

TermP later(const std::string& a, ClockRef k, TermP body) {
  auto t = node(Kind::Later);
  kid(*t, std::move(body), Shift::of(Sort::Tick));
  t->names = {a};
  t->clocks = {k};
  return t;
}

TermP tlam(const std::string& a, ClockRef k, TermP body) {
  auto t = node(Kind::TickLam);
  kid(*t, std::move(body), Shift::of(Sort::Tick));
  t->names = {a};
  t->clocks = {k};
  return t;
}

TermP tapp(TermP f, Tick u) {
  auto t = node(Kind::TickApp);
  kid(*t, std::move(f));
  t->ticks = {std::move(u)};
  return t;
}

TermP force(const std::string& k, TermP body, ClockRef k2, Tick u) {
  auto t = node(Kind::ForceApp);
  kid(*t, std::move(body), Shift::of(Sort::Clock));
  t->names = {k};
  t->clocks = {k2};
  t->ticks = {std::move(u)};
  return t;
}

TermP dfix(ClockRef k, TermP f) {
  auto t = node(Kind::Dfix);
  kid(*t, std::move(f));
  t->clocks = {k};
  return t;
}

TermP pfix(ClockRef k, TermP f) {
  auto t = node(Kind::Pfix);
  kid(*t, std::move(f));
  t->clocks = {k};
  return t;
}

namespace {

TermP system_node(Kind k, const std::string& i, TermP a, Shift abind, std::vector<Tube> sys,
                  TermP base) {
  auto t = node(k);
  kid(*t, std::move(a), abind);
  kid(*t, std::move(base));
  if (!abind.is_zero()) t->names.push_back(i);
  for (auto& tb : sys) {
    kid(*t, std::move(tb.term), Shift::of(Sort::Interval));
    t->faces.push_back(std::move(tb.face));
    t->names.push_back(i);
  }
  return t;
}

}  // namespace

TermP comp(const std::string& i, TermP line, std::vector<Tube> sys, TermP base) {
  return system_node(Kind::Comp, i, std::move(line), Shift::of(Sort::Interval), std::move(sys),
                     std::move(base));
}

TermP hcomp(const std::string& i, TermP type, std::vector<Tube> sys, TermP base) {
  return system_node(Kind::HComp, i, std::move(type), {}, std::move(sys), std::move(base));
}

TermP trans(const std::string& i, TermP line, Face phi, TermP base) {
  auto t = node(Kind::Trans);
  kid(*t, std::move(line), Shift::of(Sort::Interval));
  kid(*t, std::move(base));
  t->names = {i};
  t->faces = {std::move(phi)};
  return t;
}

TermP data(const std::string& h, std::vector<TermP> params) {
  auto t = node(Kind::Data);
  t->name = h;
  for (auto& p : params) kid(*t, std::move(p));
  return t;
}

TermP con(const std::string& h, const std::string& label, std::vector<TermP> params,
          std::vector<TermP> args, std::vector<TermP> recs, std::vector<Interval> ivs) {
  auto t = node(Kind::Con);
  t->name = h;
  t->label = label;
  t->counts = {static_cast<int>(params.size()), static_cast<int>(args.size()),
               static_cast<int>(recs.size())};
  for (auto& p : params) kid(*t, std::move(p));
  for (auto& a : args) kid(*t, std::move(a));
  for (auto& r : recs) kid(*t, std::move(r));
  t->ivs = std::move(ivs);
  return t;
}

TermP elim(const std::string& h, int n, std::vector<TermP> params, const std::string& hname,
           TermP motive, std::vector<Case> cases, TermP scrut) {
  auto t = node(Kind::Elim);
  t->name = h;
  t->num = n;
  t->counts = {static_cast<int>(params.size()), static_cast<int>(cases.size()), 0};
  for (auto& p : params) {
    kid(*t, std::move(p), Shift::of(Sort::Clock, n));
    for (int j = 0; j < n; ++j) t->names.push_back("k");
  }
  kid(*t, std::move(motive), Shift::of(Sort::Term));
  t->names.push_back(hname);
  for (auto& c : cases) {
    Shift b;
    b.term = c.terms;
    b.ival = c.ivars;
    kid(*t, std::move(c.body), b);
    for (auto& nm : c.names) t->names.push_back(nm);
  }
  kid(*t, std::move(scrut));
  return t;
}

TermP ann(TermP x, TermP type) {
  auto t = node(Kind::Ann);
  kid(*t, std::move(x));
  kid(*t, std::move(type));
  return t;
}

}  // namespace mk

namespace {

int bump(int idx, int cut, int by) { return idx >= cut ? idx + by : idx; }

Interval weaken_iv(const Interval& r, int by, int cut) {
  if (by == 0) return r;
  return r.rename([&](int v) { return bump(v, cut, by); });
}

Face weaken_face(const Face& f, int by, int cut) {
  if (by == 0) return f;
  return f.rename([&](int v) { return bump(v, cut, by); });
}

}  // namespace

ClockRef weaken_clock(ClockRef k, Shift by, Shift cut) {
  if (k.is_const()) return k;
  return {bump(k.idx, cut.clock, by.clock)};
}

Tick weaken_tick(const Tick& u, Shift by, Shift cut) {
  switch (u.k) {
    case Tick::K::Var: return Tick::var(bump(u.idx, cut.tick, by.tick));
    case Tick::K::Diamond: return u;
    case Tick::K::Tirr:
      return Tick::tirr(weaken_tick(*u.u, by, cut), weaken_tick(*u.v, by, cut),
                        weaken_iv(u.r, by.ival, cut.ival));
  }
  return u;
}

TermP weaken(const TermP& t, Shift by, Shift cut) {
  if (by.is_zero()) return t;
  if (t->kind == Kind::Var) {
    if (t->num < cut.term) return t;
    auto r = std::make_shared<Term>(*t);
    r->num += by.term;
    return r;
  }
  auto r = std::make_shared<Term>(*t);
  for (size_t k = 0; k < r->kids.size(); ++k) r->kids[k] = weaken(r->kids[k], by, cut + r->binds[k]);
  for (auto& iv : r->ivs) iv = weaken_iv(iv, by.ival, cut.ival);
  for (auto& f : r->faces) f = weaken_face(f, by.ival, cut.ival);
  for (auto& u : r->ticks) u = weaken_tick(u, by, cut);
  for (auto& k : r->clocks) k = weaken_clock(k, by, cut);
  return r;
}

namespace {

bool eq_kids(const Term& a, const Term& b, size_t from, size_t to) {
  for (size_t k = from; k < to; ++k)
    if (!structural_equal(a.kids[k], b.kids[k])) return false;
  return true;
}

}  // namespace

bool structural_equal(const TermP& a, const TermP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  const Term& x = *a;
  const Term& y = *b;
  if (x.num != y.num || x.ivs != y.ivs || x.faces != y.faces || x.ticks != y.ticks ||
      x.clocks != y.clocks)
    return false;
  switch (x.kind) {
    case Kind::Global:
    case Kind::Data:
      if (x.name != y.name) return false;
      break;
    case Kind::PApp:
      return structural_equal(x.kids[0], y.kids[0]);
    case Kind::Con:
      if (x.name != y.name || x.label != y.label || x.counts[1] != y.counts[1] ||
          x.counts[2] != y.counts[2])
        return false;
      for (int k = 0; k < x.counts[1] + x.counts[2]; ++k)
        if (!structural_equal(x.kids[x.counts[0] + k], y.kids[y.counts[0] + k])) return false;
      return true;
    case Kind::Elim: {
      if (x.name != y.name || x.counts[1] != y.counts[1]) return false;
      for (int k = 0; k <= x.counts[1]; ++k)
        if (!structural_equal(x.kids[x.counts[0] + k], y.kids[y.counts[0] + k])) return false;
      return structural_equal(x.kids.back(), y.kids.back());
    }
    default:
      break;
  }
  if (x.kids.size() != y.kids.size() || x.binds != y.binds) return false;
  return eq_kids(x, y, 0, x.kids.size());
}

namespace {

using Visit = std::function<void(Sort, int)>;

void visit_tick(const Tick& u, Shift cut, const Visit& f) {
  switch (u.k) {
    case Tick::K::Var:
      if (u.idx >= cut.tick) f(Sort::Tick, u.idx - cut.tick);
      break;
    case Tick::K::Diamond: break;
    case Tick::K::Tirr:
      visit_tick(*u.u, cut, f);
      visit_tick(*u.v, cut, f);
      for (auto& c : u.r.clauses())
        for (auto& l : c)
          if (l.var >= cut.ival) f(Sort::Interval, l.var - cut.ival);
      break;
  }
}

void visit_free(const TermP& t, Shift cut, const Visit& f) {
  if (t->kind == Kind::Var) {
    if (t->num >= cut.term) f(Sort::Term, t->num - cut.term);
    return;
  }
  for (size_t k = 0; k < t->kids.size(); ++k) visit_free(t->kids[k], cut + t->binds[k], f);
  for (auto& iv : t->ivs)
    for (auto& c : iv.clauses())
      for (auto& l : c)
        if (l.var >= cut.ival) f(Sort::Interval, l.var - cut.ival);
  for (auto& fc : t->faces)
    for (auto& c : fc.clauses())
      for (auto& g : c)
        if (g.var >= cut.ival) f(Sort::Interval, g.var - cut.ival);
  for (auto& u : t->ticks) visit_tick(u, cut, f);
  for (auto& k : t->clocks)
    if (!k.is_const() && k.idx >= cut.clock) f(Sort::Clock, k.idx - cut.clock);
}

}  // namespace

bool occurs(const TermP& t, Sort s, int idx) {
  bool found = false;
  visit_free(t, {}, [&](Sort s2, int i) {
    if (s2 == s && i == idx) found = true;
  });
  return found;
}

Shift free_extent(const TermP& t) {
  Shift r;
  visit_free(t, {}, [&](Sort s, int i) { r.at(s) = std::max(r.at(s), i + 1); });
  return r;
}

const char* to_string(EntrySort s) {
  switch (s) {
    case EntrySort::TermVar: return "TermVar";
    case EntrySort::Clock: return "Clock";
    case EntrySort::Tick: return "Tick";
    case EntrySort::Interval: return "Interval";
    case EntrySort::Face: return "Face";
  }
  return "?";
}

bool entry_equal(const Entry& a, const Entry& b) {
  if (a.sort != b.sort || a.locked != b.locked || a.constant != b.constant) return false;
  switch (a.sort) {
    case EntrySort::TermVar: return structural_equal(a.type, b.type);
    case EntrySort::Tick: return a.clock == b.clock;
    case EntrySort::Face: return a.face == b.face;
    default: return true;
  }
}

namespace {

bool has_sort(const Entry& e, Sort s) {
  if (e.constant) return false;
  switch (e.sort) {
    case EntrySort::TermVar: return s == Sort::Term;
    case EntrySort::Clock: return s == Sort::Clock;
    case EntrySort::Tick: return s == Sort::Tick;
    case EntrySort::Interval: return s == Sort::Interval;
    case EntrySort::Face: return false;
  }
  return false;
}

}  // namespace

Context Context::with_k0() {
  Context c;
  Entry e;
  e.sort = EntrySort::Clock;
  e.name = "k0";
  e.constant = true;
  c.push(e);
  return c;
}

void Context::push_term(const std::string& n, TermP type) {
  Entry e;
  e.sort = EntrySort::TermVar;
  e.name = n;
  e.type = std::move(type);
  push(std::move(e));
}

void Context::push_clock(const std::string& n) {
  Entry e;
  e.sort = EntrySort::Clock;
  e.name = n;
  push(std::move(e));
}

void Context::push_tick(const std::string& n, ClockRef k) {
  Entry e;
  e.sort = EntrySort::Tick;
  e.name = n;
  e.clock = k;
  push(std::move(e));
}

void Context::push_interval(const std::string& n) {
  Entry e;
  e.sort = EntrySort::Interval;
  e.name = n;
  push(std::move(e));
}

void Context::push_face(Face phi) {
  Entry e;
  e.sort = EntrySort::Face;
  e.face = std::move(phi);
  push(std::move(e));
}

int Context::count(Sort s) const {
  int n = 0;
  for (auto& e : entries)
    if (has_sort(e, s)) ++n;
  return n;
}

int Context::position(Sort s, int idx) const {
  if (idx < 0) return -1;
  int seen = 0;
  for (int p = static_cast<int>(entries.size()) - 1; p >= 0; --p) {
    if (!has_sort(entries[p], s)) continue;
    if (seen == idx) return p;
    ++seen;
  }
  return -1;
}

Shift Context::after(int pos) const {
  Shift r;
  for (size_t p = pos + 1; p < entries.size(); ++p)
    for (Sort s : {Sort::Term, Sort::Clock, Sort::Tick, Sort::Interval})
      if (has_sort(entries[p], s)) ++r.at(s);
  return r;
}

TermP Context::type_of(int idx) const {
  int p = position(Sort::Term, idx);
  if (p < 0) return nullptr;
  return weaken(entries[p].type, after(p) + Shift::of(Sort::Term));
}

ClockRef Context::clock_of_tick(int idx) const {
  int p = position(Sort::Tick, idx);
  if (p < 0) return ClockRef::k0();
  return weaken_clock(entries[p].clock, after(p));
}

bool Context::visible(Sort s, int idx) const {
  int p = position(s, idx);
  return p >= 0 && !entries[p].locked;
}

const std::string& Context::name_of(Sort s, int idx) const {
  static const std::string unknown = "?";
  int p = position(s, idx);
  return p < 0 ? unknown : entries[p].name;
}

Assignment Context::assignment() const {
  Assignment a;
  for (size_t p = 0; p < entries.size(); ++p) {
    const Entry& e = entries[p];
    if (e.sort != EntrySort::Face || e.face.clauses().size() != 1) continue;
    int by = after(static_cast<int>(p)).ival;
    for (auto& g : e.face.clauses()[0]) a.gens.push_back(Gen{g.var + by, g.one});
  }
  std::sort(a.gens.begin(), a.gens.end());
  a.gens.erase(std::unique(a.gens.begin(), a.gens.end()), a.gens.end());
  return a;
}

std::vector<Entry> Context::visible_entries() const {
  std::vector<Entry> r;
  for (auto& e : entries)
    if (!e.locked) r.push_back(e);
  return r;
}

std::vector<std::string> Context::names(Sort s) const {
  std::vector<std::string> r;
  for (int p = static_cast<int>(entries.size()) - 1; p >= 0; --p)
    if (has_sort(entries[p], s)) r.push_back(entries[p].name);
  return r;
}

int HitSignature::index_of(const std::string& label) const {
  for (size_t k = 0; k < ctors.size(); ++k)
    if (ctors[k].label == label) return static_cast<int>(k);
  return -1;
}

const Constructor* HitSignature::find(const std::string& label) const {
  int k = index_of(label);
  return k < 0 ? nullptr : &ctors[k];
}

TermP rec_arg_type(const HitSignature& sig, const Constructor& c, int k) {
  const auto& xi = c.recs[k].xi;
  int nd = static_cast<int>(sig.params.size());
  int inner = c.arg_count() + static_cast<int>(xi.size());
  std::vector<TermP> ps;
  for (int j = 0; j < nd; ++j) ps.push_back(mk::var(inner + nd - 1 - j));
  TermP body = mk::data(sig.name, std::move(ps));
  for (int m = static_cast<int>(xi.size()) - 1; m >= 0; --m) body = mk::pi(xi[m].name, xi[m].type, body);
  return weaken(body, Shift::of(Sort::Term, k));
}

}  // namespace cctt
