#include <doctest.h>

#include "cctt/tick.hpp"
#include "support.hpp"

using namespace cctt;

namespace {

Entry term(const std::string& n) { return Entry{EntrySort::TermVar, n, mk::univ(0)}; }
Entry clock(const std::string& n) { return Entry{EntrySort::Clock, n}; }
Entry tick(const std::string& n, int clock_idx) {
  Entry e{EntrySort::Tick, n};
  e.clock = {clock_idx};
  return e;
}
Entry ival(const std::string& n) { return Entry{EntrySort::Interval, n}; }
Entry face(Face f) {
  Entry e{EntrySort::Face, "phi"};
  e.face = std::move(f);
  return e;
}

Context ctx_of(std::vector<Entry> es) {
  Context c;
  c.entries = std::move(es);
  return c;
}

std::vector<std::string> visible_names(const Context& c) {
  std::vector<std::string> out;
  for (auto& e : c.visible_entries()) out.push_back(e.name);
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("timeless keeps clocks, intervals and faces") {
  CHECK(timeless(Context{}).size() == 0);
  Context c1 = ctx_of({term("x"), ival("i")});
  CHECK(visible_names(timeless(c1)) == Names{"i"});
  Context c2 = ctx_of({clock("k"), tick("a", 0), face(Face::gen(0, false))});
  CHECK(visible_names(timeless(c2)) == Names{"k", "phi"});
}

TEST_CASE("timeless is idempotent on every entry-sort string up to length 6") {
  const EntrySort sorts[] = {EntrySort::TermVar, EntrySort::Clock, EntrySort::Tick, EntrySort::Interval,
                             EntrySort::Face};
  int checked = 0;
  for (int len = 0; len <= 6; ++len) {
    int total = 1;
    for (int k = 0; k < len; ++k) total *= 5;
    for (int code = 0; code < total; ++code) {
      Context g;
      int c = code;
      for (int k = 0; k < len; ++k, c /= 5) g.push(Entry{sorts[c % 5], "e" + std::to_string(k)});
      Context once = timeless(g);
      Context twice = timeless(once);
      REQUIRE(once.size() == twice.size());
      for (size_t p = 0; p < once.size(); ++p) CHECK(entry_equal(once.entries[p], twice.entries[p]));
      for (auto& e : once.entries) CHECK(is_timeless(e));
      ++checked;
    }
  }
  CHECK(checked == 19531);
}

TEST_CASE("trim_check examples") {
  Context g = ctx_of({clock("k"), term("x")});
  CHECK(trim_check(g, g));
  CHECK(trim_check(ctx_of({clock("k")}), g));
  CHECK_FALSE(trim_check(ctx_of({term("x")}), ctx_of({term("x"), ival("i")})));
  CHECK(trim_check(ctx_of({ival("i")}), ctx_of({term("x"), ival("i")})));
}

TEST_CASE("trim_check agrees with the suffix enumeration on contexts up to length 4") {
  std::vector<Entry> pool{term("x"), clock("k"), tick("a", 0), ival("i"), face(Face::gen(0, true))};
  int n_ctx = 0;
  for (int len = 0; len <= 4; ++len) {
    int total = 1;
    for (int k = 0; k < len; ++k) total *= 5;
    for (int code = 0; code < total; ++code) {
      std::vector<Entry> es;
      int c = code;
      for (int k = 0; k < len; ++k, c /= 5) {
        Entry e = pool[c % 5];
        e.name += std::to_string(k);
        es.push_back(e);
      }
      Context g = ctx_of(es);
      // Valid trims: a prefix followed by the timeless part of the suffix.
      // Entries are compared up to their names, as the kernel does.
      std::vector<std::vector<Entry>> valid;
      for (size_t cut = 0; cut <= es.size(); ++cut) {
        std::vector<Entry> kept;
        for (size_t p = 0; p < es.size(); ++p)
          if (p < cut || is_timeless(es[p])) kept.push_back(es[p]);
        valid.push_back(kept);
      }
      auto is_valid = [&](const std::vector<Entry>& cand) {
        for (auto& v : valid) {
          if (v.size() != cand.size()) continue;
          bool same = true;
          for (size_t p = 0; p < v.size() && same; ++p) same = entry_equal(v[p], cand[p]);
          if (same) return true;
        }
        return false;
      };
      // Every subsequence is a candidate.
      for (int mask = 0; mask < (1 << len); ++mask) {
        std::vector<Entry> sub;
        for (int p = 0; p < len; ++p)
          if (mask & (1 << p)) sub.push_back(es[p]);
        CHECK(trim_check(ctx_of(sub), g) == is_valid(sub));
      }
      ++n_ctx;
    }
  }
  CHECK(n_ctx == 781);
}

TEST_CASE("tick_check_simple examples") {
  Context g1 = ctx_of({clock("k"), tick("a", 0)});
  CHECK(visible_names(tick_check_simple(g1, Tick::var(0), {0})) == Names{"k"});
  Context g2 = ctx_of({clock("k"), tick("a", 0), ival("i")});
  CHECK(visible_names(tick_check_simple(g2, Tick::var(0), {0})) == Names{"k", "i"});
  Context g3 = ctx_of({clock("k"), tick("a", 0), term("x")});
  CHECK(visible_names(tick_check_simple(g3, Tick::var(0), {0})) == Names{"k"});
  // A term variable left of the tick stays available.
  Context g4 = ctx_of({clock("k"), term("x"), tick("a", 0), term("y")});
  CHECK(visible_names(tick_check_simple(g4, Tick::var(0), {0})) == Names{"k", "x"});
}

TEST_CASE("tick_check_simple errors") {
  Context g = ctx_of({clock("k"), clock("k2"), tick("a", 1)});
  auto cls = [&](const Tick& u, ClockRef k) {
    try {
      tick_check_simple(g, u, k);
    } catch (const CheckError& e) {
      return e.cls();
    }
    return ErrorClass::IoError;
  };
  CHECK(cls(Tick::diamond(), {0}) == ErrorClass::DiamondOutsideForcing);
  CHECK(cls(Tick::var(0), {0}) == ErrorClass::ClockMismatch);
  CHECK(cls(Tick::var(3), {1}) == ErrorClass::NotATick);
  Context locked = tick_check_simple(g, Tick::var(0), {1});
  try {
    tick_check_simple(locked, Tick::var(0), {1});
    FAIL("a tick was used twice");
  } catch (const CheckError& e) {
    CHECK(e.cls() == ErrorClass::TickEscape);
  }
}

TEST_CASE("tick_check_forcing examples") {
  Context g1 = ctx_of({clock("k'")});
  CHECK(visible_names(tick_check_forcing(g1, {0}, Tick::diamond())) == Names{"k'"});
  Context g2 = ctx_of({clock("k'"), tick("a", 0)});
  CHECK(visible_names(tick_check_forcing(g2, {0}, Tick::var(0))) == Names{"k'"});
  Context g3 = ctx_of({clock("k'"), tick("a", 0), ival("i")});
  Tick u = Tick::tirr(Tick::diamond(), Tick::var(0), Interval::var(0));
  CHECK(visible_names(tick_check_forcing(g3, {0}, u)) == Names{"k'", "i"});
}

TEST_CASE("simple residuals are trims of the context without the tick") {
  testing::Rng rng(53);
  for (int n = 0; n < 500; ++n) {
    std::vector<Entry> es{clock("k")};
    int ticks = 0;
    for (int p = 0; p < 6; ++p) {
      switch (rng() % 4) {
        case 0: es.push_back(term("x" + std::to_string(p))); break;
        case 1: es.push_back(ival("i" + std::to_string(p))); break;
        case 2: es.push_back(clock("c" + std::to_string(p))); break;
        default:
          es.push_back(tick("a" + std::to_string(p), 0));
          ++ticks;
      }
    }
    // Tick entries refer to the outermost clock k by its index at that point.
    Context g;
    for (auto& e : es) {
      if (e.sort == EntrySort::Tick) e.clock = {g.count(Sort::Clock) - 1};
      g.push(e);
    }
    for (int t = 0; t < ticks; ++t) {
      Context r = tick_check_simple(g, Tick::var(t), g.clock_of_tick(t));
      Context without = g;
      without.entries.erase(without.entries.begin() + g.position(Sort::Tick, t));
      CHECK(trim_check(ctx_of(r.visible_entries()), without));
    }
  }
}

TEST_CASE("tick normalization applies the tick equations") {
  Tick a = Tick::var(0), b = Tick::var(1);
  CHECK(tick_normalize(Tick::tirr(a, b, Interval::zero())) == a);
  CHECK(tick_normalize(Tick::tirr(a, b, Interval::one())) == b);
  CHECK(tick_normalize(Tick::tirr(Tick::diamond(), Tick::diamond(), Interval::var(0))).is_diamond());
  CHECK_FALSE(tick_normalize(Tick::tirr(a, a, Interval::var(0))) == a);
}

TEST_CASE("residual: identity substitution") {
  Context g = ctx_of({clock("k"), term("x"), tick("a", 0), ival("i")});
  Substitution id = Substitution::identity(g);
  ResidualResult r = residual(id, Tick::var(0));
  CHECK_FALSE(r.forced);
  CHECK(visible_names(r.ctx) == Names{"k", "x", "i"});
  CHECK(visible_names(r.sub.cod) == Names{"k", "x", "i"});
  // sigma' agrees with sigma on the residual.
  for (size_t p = 0; p < g.size(); ++p)
    if (!r.sub.cod.entries[p].locked && r.sub.comps[p].term)
      CHECK(structural_equal(r.sub.comps[p].term, id.comps[p].term));
}

TEST_CASE("residual: a tick sent to another tick variable") {
  Context gamma = ctx_of({clock("k"), tick("a", 0)});
  Context delta = ctx_of({clock("k"), term("y"), tick("b", 0), term("z")});
  Substitution s;
  s.dom = delta;
  s.cod = gamma;
  s.comps = {Component{EntrySort::Clock, nullptr, {0}}, Component{EntrySort::Tick, nullptr, {}, Tick::var(0)}};
  ResidualResult r = residual(s, Tick::var(0));
  CHECK_FALSE(r.forced);
  CHECK(visible_names(r.ctx) == Names{"k", "y"});
}

TEST_CASE("residual: a clock and tick pair sent to a forcing tick") {
  Context gamma = ctx_of({clock("k"), tick("a", 0)});
  Context delta = ctx_of({clock("k'")});
  Substitution s;
  s.dom = delta;
  s.cod = gamma;
  Component ck{EntrySort::Clock, nullptr, {0}};
  Component tk{EntrySort::Tick, nullptr, {}, Tick::diamond(), true};
  s.comps = {ck, tk};
  ResidualResult r = residual(s, Tick::var(0));
  CHECK(r.forced);
  CHECK(visible_names(r.ctx) == Names{"k'", "k''"});
  // k sigma' is the fresh clock, and k sigma (moved under it) still names k'.
  CHECK(r.ctx.name_of(Sort::Clock, r.sub.comps[0].clock.idx) == "k''");
  ClockRef ks = weaken_clock(s.comps[0].clock, Shift::of(Sort::Clock));
  CHECK(r.ctx.name_of(Sort::Clock, ks.idx) == "k'");
  CHECK(r.sub.comps[1].tick.is_diamond());
}

TEST_CASE("bresidual") {
  Context gamma = ctx_of({clock("k"), tick("a", 0), tick("b", 0), ival("i")});
  Context delta = ctx_of({clock("k'"), ival("j")});
  Substitution s;
  s.dom = delta;
  s.cod = gamma;
  Component ck{EntrySort::Clock, nullptr, {0}};
  Component d{EntrySort::Tick, nullptr, {}, Tick::diamond(), true};
  Component iv{EntrySort::Interval};
  iv.ival = Interval::var(0);
  s.comps = {ck, d, d, iv};
  SUBCASE("diamond keeps the whole context") {
    auto [dres, sub] = bresidual(s, {0}, Tick::diamond());
    CHECK(visible_names(dres) == Names{"k'", "j"});
    CHECK(sub.comps.size() == s.comps.size());
  }
  SUBCASE("tirr of two forced ticks collapses before the residual") {
    Tick u = Tick::tirr(Tick::var(1), Tick::var(0), Interval::var(0));
    CHECK(subst(u, s.raw()).is_diamond());
    auto [dres, sub] = bresidual(s, {0}, u);
    CHECK(visible_names(dres) == Names{"k'", "j"});
  }
  SUBCASE("a tick sent to a simple tick behaves as the simple residual") {
    Context gamma1 = ctx_of({clock("k"), tick("a", 0)});
    Context delta1 = ctx_of({clock("k"), tick("b", 0), term("y")});
    Substitution s1;
    s1.dom = delta1;
    s1.cod = gamma1;
    s1.comps = {Component{EntrySort::Clock, nullptr, {0}}, Component{EntrySort::Tick, nullptr, {}, Tick::var(0)}};
    auto [dres, sub] = bresidual(s1, {0}, Tick::var(0));
    CHECK(visible_names(dres) == Names{"k"});
  }
}

TEST_CASE("subst_apply") {
  SUBCASE("a variable becomes its component") {
    Context gamma = ctx_of({term("x"), term("y")});
    Context delta = ctx_of({term("z")});
    Substitution s;
    s.dom = delta;
    s.cod = gamma;
    s.comps = {Component{EntrySort::TermVar, mk::univ(0)}, Component{EntrySort::TermVar, mk::var(0)}};
    CHECK(structural_equal(subst_apply(s, mk::var(0)), mk::var(0)));
    CHECK(structural_equal(subst_apply(s, mk::var(1)), mk::univ(0)));
  }
  SUBCASE("forcing substitution turns a simple application into a forcing one") {
    Context gamma = ctx_of({clock("k"), term("x"), tick("a", 0)});
    Context delta = ctx_of({clock("k'"), term("y")});
    Substitution s;
    s.dom = delta;
    s.cod = gamma;
    s.comps = {Component{EntrySort::Clock, nullptr, {0}}, Component{EntrySort::TermVar, mk::var(0)},
               Component{EntrySort::Tick, nullptr, {}, Tick::diamond(), true}};
    TermP t = mk::tapp(mk::var(0), Tick::var(0));
    TermP expect = mk::force("k", mk::var(0), {0}, Tick::diamond());
    CHECK(structural_equal(subst_apply(s, t), expect));
  }
  SUBCASE("substitution commutes with forcing application") {
    Context gamma = ctx_of({clock("k'"), term("x")});
    Context delta = ctx_of({term("y"), clock("c1"), clock("c2"), term("z")});
    Substitution s;
    s.dom = delta;
    s.cod = gamma;
    s.comps = {Component{EntrySort::Clock, nullptr, {1}}, Component{EntrySort::TermVar, mk::var(1)}};
    TermP t = mk::force("k", mk::var(0), {0}, Tick::diamond());
    CHECK(structural_equal(subst_apply(s, t), mk::force("k", mk::var(1), {1}, Tick::diamond())));
  }
  SUBCASE("a diamond-free forcing application becomes a simple one") {
    Context gamma = ctx_of({clock("k'"), term("x"), tick("a", 0)});
    Substitution id = Substitution::identity(gamma);
    TermP t = mk::force("k", mk::capp(mk::var(0), {0}), {0}, Tick::var(0));
    TermP out = subst_apply(id, t);
    // Identity substitution is the identity on terms.
    CHECK(structural_equal(subst(t, Subst{}), t));
    CHECK(out->kind == Kind::TickApp);
  }
  SUBCASE("malformed substitutions are rejected") {
    Context gamma = ctx_of({term("x")});
    Substitution s;
    s.cod = gamma;
    s.comps = {Component{EntrySort::Clock}};
    CHECK_THROWS_AS(subst_apply(s, mk::var(0)), CheckError);
  }
}
