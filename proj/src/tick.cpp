#include "cctt/tick.hpp"

#include <algorithm>

namespace cctt {

bool is_timeless(const Entry& e) {
  return e.sort == EntrySort::Clock || e.sort == EntrySort::Interval || e.sort == EntrySort::Face;
}

Context timeless(const Context& g) {
  Context r;
  for (auto& e : g.entries)
    if (is_timeless(e)) r.push(e);
  return r;
}

bool trim_check(const Context& g2, const Context& g) {
  for (size_t cut = 0; cut <= g.size(); ++cut) {
    std::vector<Entry> cand(g.entries.begin(), g.entries.begin() + cut);
    for (size_t p = cut; p < g.size(); ++p)
      if (is_timeless(g.entries[p])) cand.push_back(g.entries[p]);
    if (cand.size() != g2.size()) continue;
    bool same = true;
    for (size_t p = 0; p < cand.size() && same; ++p) same = entry_equal(cand[p], g2.entries[p]);
    if (same) return true;
  }
  return false;
}

namespace {

[[noreturn]] void fail(ErrorClass c, std::string msg) { throw CheckError(c, std::move(msg)); }

bool locks_include(const Context& a, const Context& b) {
  for (size_t p = 0; p < a.size(); ++p)
    if (b.entries[p].locked && !a.entries[p].locked) return false;
  return true;
}

Context common_residual(const Context& a, const Context& b) {
  if (locks_include(a, b)) return a;
  if (locks_include(b, a)) return b;
  fail(ErrorClass::NoCommonResidual, "tick operands have no common residual context");
}

void check_interval(const Context& g, const Interval& r) {
  if (r.max_var() >= g.count(Sort::Interval))
    fail(ErrorClass::UnboundVariable, "interval variable out of scope in tick");
}

void check_clock(const Context& g, ClockRef k) {
  if (!k.is_const() && k.idx >= g.count(Sort::Clock))
    fail(ErrorClass::UnboundVariable, "clock variable out of scope");
}

}  // namespace

Context tick_check_simple(const Context& g, const Tick& u, ClockRef k) {
  switch (u.k) {
    case Tick::K::Diamond:
      fail(ErrorClass::DiamondOutsideForcing, "<> used as a simple tick");
    case Tick::K::Var: {
      int pos = g.position(Sort::Tick, u.idx);
      if (pos < 0) fail(ErrorClass::NotATick, "tick variable out of scope");
      if (g.entries[pos].locked)
        fail(ErrorClass::TickEscape, "tick " + g.entries[pos].name + " is not available here");
      if (!(g.clock_of_tick(u.idx) == k))
        fail(ErrorClass::ClockMismatch, "tick " + g.entries[pos].name + " is on a different clock");
      Context r = g;
      r.entries[pos].locked = true;
      for (size_t p = pos + 1; p < r.size(); ++p)
        if (!is_timeless(r.entries[p])) r.entries[p].locked = true;
      return r;
    }
    case Tick::K::Tirr: {
      check_interval(g, u.r);
      return common_residual(tick_check_simple(g, *u.u, k), tick_check_simple(g, *u.v, k));
    }
  }
  return g;
}

Context tick_check_forcing(const Context& g, ClockRef k, const Tick& u) {
  check_clock(g, k);
  switch (u.k) {
    case Tick::K::Diamond: return g;
    case Tick::K::Var: return tick_check_simple(g, u, k);
    case Tick::K::Tirr:
      check_interval(g, u.r);
      return common_residual(tick_check_forcing(g, k, *u.u), tick_check_forcing(g, k, *u.v));
  }
  return g;
}

std::optional<ClockRef> tick_clock(const Context& g, const Tick& u) {
  std::vector<int> vs;
  u.vars(vs);
  for (int v : vs)
    if (g.position(Sort::Tick, v) >= 0) return g.clock_of_tick(v);
  return std::nullopt;
}

bool Subst::is_identity() const {
  return terms.empty() && clocks.empty() && ticks.empty() && ivals.empty() && tail.is_zero();
}

namespace {

int tail_index(int j, size_t n, int tail) {
  int r = j - static_cast<int>(n) + tail;
  if (r < 0) fail(ErrorClass::MalformedSubstitution, "substitution does not cover a free variable");
  return r;
}

TermP look_term(int idx, const Subst& s, Shift d) {
  if (idx < d.term) return mk::var(idx);
  int j = idx - d.term;
  if (j < static_cast<int>(s.terms.size())) return weaken(s.terms[j], d);
  return mk::var(tail_index(j, s.terms.size(), s.tail.term) + d.term);
}

ClockRef look_clock(ClockRef k, const Subst& s, Shift d) {
  if (k.is_const() || k.idx < d.clock) return k;
  int j = k.idx - d.clock;
  if (j < static_cast<int>(s.clocks.size())) return weaken_clock(s.clocks[j], d);
  return {tail_index(j, s.clocks.size(), s.tail.clock) + d.clock};
}

Interval look_iv(const Interval& r, const Subst& s, Shift d) {
  if (s.ivals.empty() && s.tail.ival == 0) return r;
  return r.subst([&](int v) {
    if (v < d.ival) return Interval::var(v);
    int j = v - d.ival;
    if (j < static_cast<int>(s.ivals.size()))
      return s.ivals[j].rename([&](int w) { return w + d.ival; });
    return Interval::var(tail_index(j, s.ivals.size(), s.tail.ival) + d.ival);
  });
}

Face look_face(const Face& f, const Subst& s, Shift d) {
  if (s.ivals.empty() && s.tail.ival == 0) return f;
  return f.subst([&](int v) {
    if (v < d.ival) return Interval::var(v);
    int j = v - d.ival;
    if (j < static_cast<int>(s.ivals.size()))
      return s.ivals[j].rename([&](int w) { return w + d.ival; });
    return Interval::var(tail_index(j, s.ivals.size(), s.tail.ival) + d.ival);
  });
}

// Records in forced_src the source clock (at depth d) of a forced component.
Tick look_tick(const Tick& u, const Subst& s, Shift d, std::optional<int>& forced_src) {
  switch (u.k) {
    case Tick::K::Diamond: return u;
    case Tick::K::Var: {
      if (u.idx < d.tick) return u;
      int j = u.idx - d.tick;
      if (j < static_cast<int>(s.ticks.size())) {
        const TickComp& c = s.ticks[j];
        if (c.forced && !forced_src) forced_src = c.src_clock + d.clock;
        return weaken_tick(c.tick, d);
      }
      return Tick::var(tail_index(j, s.ticks.size(), s.tail.tick) + d.tick);
    }
    case Tick::K::Tirr: {
      Tick a = look_tick(*u.u, s, d, forced_src);
      Tick b = look_tick(*u.v, s, d, forced_src);
      return tick_normalize(Tick::tirr(std::move(a), std::move(b), look_iv(u.r, s, d)));
    }
  }
  return u;
}

// Rebases s under d binders plus `extra` fresh innermost binders in the
// target, listing components explicitly for the bound variables.
Subst materialize(const Subst& s, Shift d, Shift extra) {
  Subst m;
  Shift w = d + extra;
  for (int i = 0; i < d.term; ++i) m.terms.push_back(mk::var(i + extra.term));
  for (auto& t : s.terms) m.terms.push_back(weaken(t, w));
  for (int i = 0; i < d.clock; ++i) m.clocks.push_back({i + extra.clock});
  for (auto& k : s.clocks) m.clocks.push_back(weaken_clock(k, w));
  for (int i = 0; i < d.tick; ++i) m.ticks.push_back({Tick::var(i + extra.tick), false, 0});
  for (auto& c : s.ticks) m.ticks.push_back({weaken_tick(c.tick, w), c.forced, c.src_clock + d.clock});
  for (int i = 0; i < d.ival; ++i) m.ivals.push_back(Interval::var(i + extra.ival));
  for (auto& r : s.ivals) m.ivals.push_back(r.rename([&](int v) { return v + w.ival; }));
  m.tail = s.tail + w;
  return m;
}

TermP apply(const TermP& t, const Subst& s, Shift d);

TermP apply_tick_app(const TermP& t, const Subst& s, Shift d) {
  std::optional<int> src;
  Tick u = look_tick(t->ticks[0], s, d, src);
  if (!src || !u.has_diamond()) return mk::tapp(apply(t->kids[0], s, d), std::move(u));
  if (*src < 0) fail(ErrorClass::MalformedSubstitution, "forcing tick paired with the constant clock");
  // t[a] with a sent to a forcing tick becomes (k''. t)[(k', u)].
  Subst m = materialize(s, d, Shift::of(Sort::Clock));
  while (static_cast<int>(m.clocks.size()) <= *src) {
    m.clocks.push_back({tail_index(static_cast<int>(m.clocks.size()), m.clocks.size(), m.tail.clock)});
    ++m.tail.clock;
  }
  m.clocks[*src] = {0};
  TermP body = apply(t->kids[0], m, {});
  ClockRef k = look_clock({*src}, s, d);
  return mk::force("k", std::move(body), k, std::move(u));
}

TermP apply(const TermP& t, const Subst& s, Shift d) {
  switch (t->kind) {
    case Kind::Var: return look_term(t->num, s, d);
    case Kind::Global:
    case Kind::Univ: return t;
    case Kind::TickApp: return apply_tick_app(t, s, d);
    default: break;
  }
  auto r = std::make_shared<Term>(*t);
  for (size_t k = 0; k < r->kids.size(); ++k) r->kids[k] = apply(r->kids[k], s, d + r->binds[k]);
  for (auto& iv : r->ivs) iv = look_iv(iv, s, d);
  for (auto& f : r->faces) f = look_face(f, s, d);
  for (auto& u : r->ticks) {
    std::optional<int> src;
    u = look_tick(u, s, d, src);
  }
  for (auto& k : r->clocks) k = look_clock(k, s, d);
  if (r->kind == Kind::ForceApp && !r->ticks[0].has_diamond())
    return mk::tapp(inst_clock(r->kids[0], r->clocks[0]), r->ticks[0]);
  return r;
}

}  // namespace

TermP subst(const TermP& t, const Subst& s) {
  if (s.is_identity()) return t;
  return apply(t, s, {});
}

Tick subst(const Tick& u, const Subst& s) {
  std::optional<int> src;
  return look_tick(u, s, {}, src);
}

ClockRef subst(ClockRef k, const Subst& s) { return look_clock(k, s, {}); }

Interval subst(const Interval& r, const Subst& s) { return look_iv(r, s, {}); }

Face subst(const Face& f, const Subst& s) { return look_face(f, s, {}); }

TermP inst_term(const TermP& body, const TermP& a) {
  Subst s;
  s.terms = {a};
  return subst(body, s);
}

TermP inst_clock(const TermP& body, ClockRef k) {
  Subst s;
  s.clocks = {k};
  return subst(body, s);
}

TermP inst_tick(const TermP& body, const Tick& u) {
  Subst s;
  s.ticks = {{u, false, 0}};
  return subst(body, s);
}

TermP inst_ival(const TermP& body, const Interval& r) {
  Subst s;
  s.ivals = {r};
  return subst(body, s);
}

Face inst_ival(const Face& f, const Interval& r) {
  Subst s;
  s.ivals = {r};
  return subst(f, s);
}

TermP inst_force(const TermP& body, ClockRef k2, const Tick& u) {
  Subst s;
  s.clocks = {k2};
  s.ticks = {{u, u.has_diamond(), 0}};
  return subst(body, s);
}

Substitution Substitution::identity(const Context& g) {
  Substitution s;
  s.dom = g;
  s.cod = g;
  for (size_t p = 0; p < g.size(); ++p) {
    const Entry& e = g.entries[p];
    Component c;
    c.sort = e.sort;
    Shift a = g.after(static_cast<int>(p));
    switch (e.sort) {
      case EntrySort::TermVar: c.term = mk::var(a.term); break;
      case EntrySort::Clock: c.clock = e.constant ? ClockRef::k0() : ClockRef{a.clock}; break;
      case EntrySort::Tick: c.tick = Tick::var(a.tick); break;
      case EntrySort::Interval: c.ival = Interval::var(a.ival); break;
      case EntrySort::Face: break;
    }
    s.comps.push_back(std::move(c));
  }
  return s;
}

void Substitution::validate() const {
  if (comps.size() != cod.size())
    fail(ErrorClass::MalformedSubstitution, "component count does not match the context");
  for (size_t p = 0; p < comps.size(); ++p) {
    const Component& c = comps[p];
    if (c.sort != cod.entries[p].sort)
      fail(ErrorClass::MalformedSubstitution, "component sort does not match entry " + cod.entries[p].name);
    if (c.sort == EntrySort::TermVar && !c.term)
      fail(ErrorClass::MalformedSubstitution, "missing term component");
    if (c.sort == EntrySort::Tick && c.tick.has_diamond() && !c.forced)
      fail(ErrorClass::MalformedSubstitution, "<> outside a clock-and-forcing-tick pair");
  }
}

Subst Substitution::raw() const {
  Subst s;
  for (int p = static_cast<int>(cod.size()) - 1; p >= 0; --p) {
    const Entry& e = cod.entries[p];
    const Component& c = comps[p];
    switch (e.sort) {
      case EntrySort::TermVar: s.terms.push_back(c.term); break;
      case EntrySort::Clock:
        if (!e.constant) s.clocks.push_back(c.clock);
        break;
      case EntrySort::Tick: {
        int idx = static_cast<int>(s.ticks.size());
        s.ticks.push_back({c.tick, c.forced, cod.clock_of_tick(idx).idx});
        break;
      }
      case EntrySort::Interval: s.ivals.push_back(c.ival); break;
      case EntrySort::Face: break;
    }
  }
  return s;
}

ResidualResult residual(const Substitution& s, const Tick& u) {
  s.validate();
  int a = u.leftmost_var();
  if (a < 0) fail(ErrorClass::MalformedSubstitution, "residual of a tick without variables");
  int pos = s.cod.position(Sort::Tick, a);
  if (pos < 0) fail(ErrorClass::MalformedSubstitution, "tick variable not in the context");
  ClockRef k = s.cod.clock_of_tick(a);
  Context gres = tick_check_simple(s.cod, u, k);
  Subst r = s.raw();
  Tick us = subst(u, r);
  ClockRef ks = subst(k, r);
  ResidualResult out;
  out.sub.cod = gres;
  out.sub.comps = s.comps;
  if (!s.comps[pos].forced) {
    out.ctx = tick_check_simple(s.dom, us, ks);
    out.sub.dom = out.ctx;
    return out;
  }
  out.forced = true;
  out.ctx = tick_check_forcing(s.dom, ks, us);
  out.ctx.push_clock("k''");
  out.sub.dom = out.ctx;
  Shift one = Shift::of(Sort::Clock);
  for (auto& c : out.sub.comps) {
    if (c.term) c.term = weaken(c.term, one);
    c.clock = weaken_clock(c.clock, one);
  }
  int kpos = k.is_const() ? -1 : s.cod.position(Sort::Clock, k.idx);
  if (kpos < 0) fail(ErrorClass::MalformedSubstitution, "forcing tick paired with the constant clock");
  out.sub.comps[kpos].clock = {0};
  return out;
}

std::pair<Context, Substitution> bresidual(const Substitution& s, ClockRef k, const Tick& u) {
  s.validate();
  Context gres = tick_check_forcing(s.cod, k, u);
  Subst r = s.raw();
  Context dres = tick_check_forcing(s.dom, subst(k, r), subst(u, r));
  Substitution out;
  out.dom = dres;
  out.cod = gres;
  out.comps = s.comps;
  return {dres, out};
}

TermP subst_apply(const Substitution& s, const TermP& t) {
  s.validate();
  return subst(t, s.raw());
}

}  // namespace cctt
