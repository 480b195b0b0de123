#include <doctest.h>

#include "cctt/checker.hpp"
#include "cctt/driver.hpp"
#include "term_gen.hpp"

using namespace cctt;

namespace {

const Sort kSorts[] = {Sort::Term, Sort::Clock, Sort::Tick, Sort::Interval};

}  // namespace

TEST_CASE("weaken shifts free indices at or above the cut") {
  CHECK(structural_equal(weaken(mk::var(0), Shift::of(Sort::Term)), mk::var(1)));
  TermP lam = mk::lam("x", mk::var(0));
  CHECK(structural_equal(weaken(lam, Shift::of(Sort::Clock)), lam));
  CHECK(structural_equal(weaken(mk::lam("x", mk::var(1)), Shift::of(Sort::Term)), mk::lam("x", mk::var(2))));
  // Below the cut nothing moves.
  CHECK(structural_equal(weaken(mk::var(0), Shift::of(Sort::Term), Shift::of(Sort::Term)), mk::var(0)));
}

TEST_CASE("weaken over mixed sorts keeps other sorts' indices") {
  // A tick application of term 0 at tick 0; inserting an interval variable
  // between them changes neither index.
  TermP t = mk::tapp(mk::var(0), Tick::var(0));
  TermP w = weaken(t, Shift::of(Sort::Interval), Shift::of(Sort::Tick));
  CHECK(structural_equal(w, t));
  TermP p = mk::papp(mk::var(0), Interval::var(0));
  CHECK(structural_equal(weaken(p, Shift::of(Sort::Interval)), mk::papp(mk::var(0), Interval::var(1))));
}

TEST_CASE("weaken agrees with a single-namespace shift on random terms") {
  testing::Rng rng(41);
  for (int n = 0; n < 300; ++n) {
    std::vector<Sort> sorts;
    for (int k = 0; k < 6; ++k) sorts.push_back(kSorts[rng() % 4]);
    TermP t = testing::gen_term(rng, testing::count(sorts), 4);
    size_t p = rng() % (sorts.size() + 1);
    Sort s = kSorts[rng() % 4];
    TermP w = weaken(t, Shift::of(s), testing::count(sorts, p));
    std::vector<Sort> wider = sorts;
    wider.insert(wider.begin() + p, s);

    std::vector<testing::Occ> before, after;
    testing::free_occurrences(t, {}, before);
    testing::free_occurrences(w, {}, after);
    auto pb = testing::positions(before, sorts);
    auto pa = testing::positions(after, wider);
    REQUIRE(pb.size() == pa.size());
    for (size_t x = 0; x < pb.size(); ++x) {
      CHECK(pb[x] >= 0);
      CHECK(pa[x] == (pb[x] >= static_cast<int>(p) ? pb[x] + 1 : pb[x]));
    }
  }
}

TEST_CASE("weaken is compositional") {
  testing::Rng rng(43);
  for (int n = 0; n < 300; ++n) {
    Shift scope{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3),
                static_cast<int>(rng() % 3)};
    TermP t = testing::gen_term(rng, scope, 4);
    Shift cut{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2), 0, static_cast<int>(rng() % 2)};
    Shift a = Shift::of(kSorts[rng() % 4]), b = Shift::of(kSorts[rng() % 4], 2);
    CHECK(structural_equal(weaken(weaken(t, a, cut), b, cut), weaken(t, a + b, cut)));
  }
}

TEST_CASE("structural_equal examples") {
  TermP x = mk::var(0);
  CHECK(structural_equal(mk::tlam("a", ClockRef::k0(), x), mk::tlam("b", ClockRef::k0(), x)));
  TermP p = mk::var(0);
  Interval i = Interval::var(0);
  CHECK(structural_equal(mk::plam("i", mk::papp(p, ~~i)), mk::plam("j", mk::papp(p, i))));
  TermP f = mk::var(0);
  TermP fix = mk::app(mk::app(mk::capp(mk::global("fix"), ClockRef::k0()), mk::univ(0)), f);
  CHECK_FALSE(structural_equal(mk::dfix(ClockRef::k0(), f), fix));
  CHECK_FALSE(structural_equal(mk::var(0), mk::var(1)));
}

TEST_CASE("structural_equal is an equivalence on sampled terms") {
  testing::Rng rng(47);
  std::vector<TermP> pool;
  for (int n = 0; n < 120; ++n) {
    TermP t = testing::gen_term(rng, {2, 1, 1, 1}, 2);
    pool.push_back(t);
    pool.push_back(weaken(t, {}));  // a distinct copy of the same tree
  }
  for (auto& a : pool) CHECK(structural_equal(a, a));
  for (size_t x = 0; x < pool.size(); ++x)
    for (size_t y = 0; y < pool.size(); ++y) {
      bool xy = structural_equal(pool[x], pool[y]);
      CHECK(xy == structural_equal(pool[y], pool[x]));
      if (!xy) continue;
      for (size_t z = 0; z < pool.size(); z += 7)
        if (structural_equal(pool[y], pool[z])) CHECK(structural_equal(pool[x], pool[z]));
    }
}

TEST_CASE("telescope validation") {
  Session s;
  Checker& ch = s.checker();
  Context ctx = Context::with_k0();
  Telescope empty;
  CHECK(ch.check_telescope(ctx, empty) == 0);

  Context c2 = Context::with_k0();
  Telescope chain{Entry{EntrySort::TermVar, "A", mk::univ(0)}, Entry{EntrySort::TermVar, "a", mk::var(0)}};
  CHECK_NOTHROW(ch.check_telescope(c2, chain));
  CHECK(c2.count(Sort::Term) == 2);

  Context c3 = Context::with_k0();
  Telescope ivar{Entry{EntrySort::Interval, "i"}};
  try {
    ch.check_telescope(c3, ivar);
    FAIL("interval entry accepted");
  } catch (const CheckError& e) {
    CHECK(e.cls() == ErrorClass::NonProperEntry);
  }

  Context c4 = Context::with_k0();
  Telescope bad{Entry{EntrySort::TermVar, "A", mk::univ(0)}, Entry{EntrySort::TermVar, "a", mk::var(0)},
                Entry{EntrySort::TermVar, "b", mk::var(0)}};
  try {
    ch.check_telescope(c4, bad);
    FAIL("element used as a type");
  } catch (const CheckError& e) {
    CHECK(e.cls() == ErrorClass::IllTypedEntry);
  }
}

TEST_CASE("context positions and counts per sort") {
  Context ctx = Context::with_k0();
  ctx.push_clock("k");
  ctx.push_term("x", mk::univ(0));
  ctx.push_tick("a", {0});
  ctx.push_interval("i");
  ctx.push_term("y", mk::univ(0));
  CHECK(ctx.count(Sort::Term) == 2);
  CHECK(ctx.count(Sort::Clock) == 1);
  CHECK(ctx.position(Sort::Term, 0) == 5);
  CHECK(ctx.position(Sort::Term, 1) == 2);
  CHECK(ctx.position(Sort::Tick, 0) == 3);
  Shift after = ctx.after(2);
  CHECK(after == Shift{1, 0, 1, 1});
  CHECK(ctx.clock_of_tick(0) == ClockRef{0});
}
