#include <doctest.h>

#include "cctt/driver.hpp"
#include "equalities.hpp"
#include "support.hpp"

using namespace cctt;
using testing::Conv;
using testing::conv_in;

TEST_CASE("judgemental equalities hold and their perturbed twins do not") {
  for (auto& e : testing::equalities()) {
    CAPTURE(e.name);
    CHECK(conv_in(e.binders, e.lhs, e.rhs, e.type) == Conv::Equal);
    CHECK(conv_in(e.binders, e.twin_lhs, e.twin_rhs, e.type) == Conv::NotEqual);
  }
}

TEST_CASE("whnf examples") {
  Session s;
  Eval& ev = s.eval();
  SUBCASE("clock beta") {
    TermP t = mk::capp(mk::clam("k", mk::forall("k1", mk::later("a", {1}, mk::univ(0)))), ClockRef::k0());
    TermP w = ev.whnf(t);
    CHECK(w->kind == Kind::Forall);
    CHECK(w->kids[0]->clocks[0] == ClockRef::k0());
  }
  SUBCASE("dfix under a tick variable stays neutral") {
    TermP f = mk::var(0);
    TermP t = mk::tapp(mk::dfix({0}, f), Tick::var(0));
    CHECK(ev.step(t) == nullptr);
  }
  SUBCASE("dfix at the diamond unfolds") {
    TermP f = mk::var(0);
    TermP t = mk::force("k", mk::dfix({0}, mk::capp(f, {0})), {0}, Tick::diamond());
    TermP w = ev.whnf(t);
    CHECK(w->kind == Kind::App);
  }
}

TEST_CASE("conversion facts about forcing") {
  const std::string tel = "(A : U0) (x : forall k. |> (a : k) A)";
  // The two outer steps of force-inverse after force are judgemental ...
  CHECK(conv_in(tel, "unforce A (force A x)", "/\\k. tick a : k. (k1. x {k1}) [k, <>]", "forall k. |> (a : k) A") ==
        Conv::Equal);
  // ... but the middle step needs the tick-irrelevance path.
  CHECK(conv_in(tel, "unforce A (force A x)", "x", "forall k. |> (a : k) A") == Conv::NotEqual);
}

TEST_CASE("composition computes") {
  const std::string tel = "(A : U0) (a b c : A) (p : Path A a b) (q : Path A b c) (i : I)";
  SUBCASE("total face gives the lid") {
    CHECK(conv_in(tel, "comp^j A [1 -> q @ j] b", "c", "A") == Conv::Equal);
    CHECK(conv_in(tel, "hcomp^j A [1 -> q @ j] b", "c", "A") == Conv::Equal);
  }
  SUBCASE("path concatenation has the right endpoints") {
    std::string cat = "(<i> comp^j A [(i = 0) -> a, (i = 1) -> q @ j] (p @ i) : Path A a c)";
    CHECK(conv_in(tel, cat + " @ 0", "a", "A") == Conv::Equal);
    CHECK(conv_in(tel, cat + " @ 1", "c", "A") == Conv::Equal);
    CHECK(conv_in(tel, cat + " @ 1", "b", "A") == Conv::NotEqual);
  }
  SUBCASE("comp at a later type is componentwise") {
    std::string tl = "(k : clock) (A B : U0) (P : Path U0 A B) (x : |> (a : k) A)";
    CHECK(conv_in(tl, "comp^j (|> (a : k) (P @ j)) [] x", "tick a : k. comp^j (P @ j) [] (x [a])",
                  "|> (a : k) B") == Conv::Equal);
    CHECK(conv_in(tl, "comp^j (|> (a : k) (P @ j)) [] x", "tick a : k. comp^j (P @ ~j) [] (x [a])",
                  "|> (a : k) B") == Conv::IllTyped);
    // On a constant line the empty composition is an hcomp, not the identity.
    std::string tc = "(k : clock) (A : U0) (x : |> (a : k) A)";
    CHECK(conv_in(tc, "comp^j (|> (a : k) A) [] x", "tick a : k. hcomp^j A [] (x [a])", "|> (a : k) A") ==
          Conv::Equal);
    CHECK(conv_in(tc, "comp^j (|> (a : k) A) [] x", "x", "|> (a : k) A") == Conv::NotEqual);
  }
  SUBCASE("hfill endpoints and tube") {
    std::string fill = "(hfill^j A [(i = 0) -> a, (i = 1) -> q @ j] (p @ i))";
    std::string hc = "hcomp^j A [(i = 0) -> a, (i = 1) -> q @ j] (p @ i)";
    CHECK(conv_in(tel, fill + " @ 0", "p @ i", "A") == Conv::Equal);
    CHECK(conv_in(tel, fill + " @ 1", hc, "A") == Conv::Equal);
    // On a total face the filler at any j is the tube at j.
    std::string tel2 = tel + " (m : I)";
    CHECK(conv_in(tel2, "(hfill^j A [1 -> q @ j] b) @ m", "q @ m", "A") == Conv::Equal);
    CHECK(conv_in(tel2, "(hfill^j A [1 -> q @ j] b) @ m", "q @ (m /\\ m)", "A") == Conv::Equal);
    CHECK(conv_in(tel2, "(hfill^j A [1 -> q @ j] b) @ m", "q @ 1", "A") == Conv::NotEqual);
  }
}

TEST_CASE("transport in a higher inductive type") {
  const std::string data =
      "data S1 where\n| base\n| loop (i : I) [(i = 0) \\/ (i = 1) -> base]\n"
      "data Box (A : U0) where\n| box (a : A)\n"
      "data Susp (A : U0) where\n| north\n| south\n| merid (a : A) (i : I) [(i = 0) -> north, (i = 1) -> south]\n";
  auto run = [&](const std::string& pragma, const std::string& binders) {
    return testing::check_text(data + pragma + "\ndef probe " + binders + " : U1 := U0\n");
  };
  // A constant parameter line makes transport the identity.
  auto r1 = run("--expect-conv trans^i S1 [0] (loop @ j) = loop @ j : S1", "(j : I)");
  CHECK(testing::all_pass(r1));
  // Transport pushes inside constructor arguments.
  auto r2 = run("--expect-conv trans^i (Box (P @ i)) [0] (box a) = box (trans^i (P @ i) [0] a) : Box B",
                "(A B : U0) (P : Path U0 A B) (a : A)");
  CHECK(testing::all_pass(r2));
  auto r3 = run("--expect-conv trans^i (Susp (P @ i)) [0] north = north : Susp B", "(A B : U0) (P : Path U0 A B)");
  CHECK(testing::all_pass(r3));
}

TEST_CASE("boundaries of the finite powerset") {
  Session s;
  auto m = parse_module(
      "data S1 where\n| base\n| loop (i : I) [(i = 0) \\/ (i = 1) -> base]\n"
      "data Pf (A : U0) where\n| empty\n| single (a : A)\n| union (X Y : Pf A)\n"
      "| idem (X : Pf A) (i : I) [(i = 0) -> union X X, (i = 1) -> X]\n"
      "| hub (f : S1 -> Pf A)\n"
      "| spoke (s : S1) (f : S1 -> Pf A) (i : I) [(i = 0) -> f s, (i = 1) -> hub f]\n");
  for (auto& d : m.decls) s.declare(d);
  const HitSignature& pf = s.globals().sigs.at("Pf");
  Eval& ev = s.eval();
  const Constructor& idem = *pf.find("idem");
  const Constructor& spoke = *pf.find("spoke");

  SUBCASE("a constructor on a boundary face reduces to the boundary instance") {
    TermP a = mk::univ(0);
    TermP x = mk::var(0);
    TermP at0 = mk::con("Pf", "idem", {a}, {}, {x}, {Interval::zero()});
    TermP w = ev.whnf(at0);
    CHECK(w->kind == Kind::Con);
    CHECK(w->label == "union");
    TermP at1 = mk::con("Pf", "idem", {a}, {}, {x}, {Interval::one()});
    CHECK(structural_equal(ev.whnf(at1), x));
    TermP mid = mk::con("Pf", "idem", {a}, {}, {x}, {Interval::var(0)});
    CHECK(ev.whnf(mid)->label == "idem");
  }

  SUBCASE("recursive-variable spines beta-reduce under instantiation") {
    // spoke s f at 0 is f s; with f := \z. union z z the instance is a union.
    TermP a = mk::univ(0);
    TermP s0 = mk::var(1);
    TermP f = mk::lam("z", mk::con("Pf", "union", {weaken(a, Shift::of(Sort::Term))}, {},
                                   {mk::var(0), mk::var(0)}, {}));
    BoundaryTerm inst = boundary_subst(spoke.boundary[0].term, {a}, {s0}, {f}, {Interval::zero()});
    TermP want = mk::con("Pf", "union", {a}, {}, {mk::var(2), mk::var(2)}, {});
    CHECK(inst.term->kind == Kind::Con);
    CHECK(inst.term->label == "union");
    CHECK_FALSE(structural_equal(inst.term, want));  // the spine argument is s, not a rec
    CHECK(structural_equal(con_rec(*inst.term, 0), s0));
  }

  SUBCASE("too few arguments is an arity error") {
    CHECK_THROWS_AS(boundary_subst(idem.boundary[0].term, {}, {}, {}, {}), CheckError);
  }

  SUBCASE("boundary equality is reflexive and symmetric on boundary terms") {
    Face top = Face::top();
    for (auto& c : pf.ctors)
      for (auto& x : c.boundary)
        for (auto& y : c.boundary) {
          CHECK(boundary_equal(ev, x.term, x.term, top));
          CHECK(boundary_equal(ev, x.term, y.term, top) == boundary_equal(ev, y.term, x.term, top));
        }
  }
}

TEST_CASE("eliminators compute on constructors and hcomp") {
  const std::string src =
      "data S1 where\n| base\n| loop (i : I) [(i = 0) \\/ (i = 1) -> base]\n"
      "def flip (x : S1) : S1 := clockelim^0 x into (h. S1) with | base => base | loop i => loop @ ~i\n"
      "--expect-conv flip base = base : S1\n"
      "--expect-conv flip (loop @ i) = loop @ ~i : S1\n"
      "--expect-not-conv flip (loop @ i) = loop @ i : S1\n"
      "--expect-conv flip (hcomp^j S1 [(i = 0) -> loop @ j] base) = "
      "hcomp^j S1 [(i = 0) -> loop @ ~j] base : S1\n"
      "def probe (i : I) : U1 := U0\n";
  auto r = testing::check_text(src);
  for (auto& d : r.decls) {
    CAPTURE(d.decl);
    CAPTURE(d.detail);
    CHECK(d.verdict == Verdict::Pass);
  }
}

TEST_CASE("conversion is reflexive and symmetric on generated problems") {
  for (auto& e : testing::equalities()) {
    CAPTURE(e.name);
    CHECK(conv_in(e.binders, e.lhs, e.lhs, e.type) == Conv::Equal);
    CHECK(conv_in(e.binders, e.rhs, e.lhs, e.type) == Conv::Equal);
    CHECK(conv_in(e.binders, e.twin_rhs, e.twin_lhs, e.type) == Conv::NotEqual);
  }
}

TEST_CASE("fuel is a hard limit") {
  Options o;
  o.max_steps = 5;
  auto r = testing::check_text("--expect-conv fix {k} A (f {k}) = f {k} (dfix k (f {k})) : A\n"
                               "def probe (A : U0) (f : forall k. |> (a : k) A -> A) (k : clock) : U1 := U0\n",
                               o);
  REQUIRE(!r.decls.empty());
  CHECK(r.decls.back().verdict == Verdict::Fail);
  CHECK(r.decls.back().detail.find("FuelExhausted") != std::string::npos);
}
