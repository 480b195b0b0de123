#include <doctest.h>

#include "cctt/driver.hpp"
#include "support.hpp"

using namespace cctt;
using testing::all_pass;
using testing::check_text;

namespace {

// The error class a single failing definition raises, read off its detail.
std::string failure_of(const std::string& text) {
  auto r = check_text(text);
  if (r.decls.empty() || r.decls.back().verdict != Verdict::Fail) return "";
  return r.decls.back().detail;
}

bool fails_with(const std::string& text, ErrorClass c) {
  return failure_of(text).find(to_string(c)) != std::string::npos;
}

std::string numeral(int n) {
  std::string s = "zero";
  for (int k = 0; k < n; ++k) s = "suc (" + s + ")";
  return s;
}

const std::string kNat =
    "data Nat where\n| zero\n| suc (n : Nat)\n"
    "def plus (m n : Nat) : Nat := clockelim^0 m into (h. Nat) with | zero => n | suc p, ih => suc ih\n";

}  // namespace

TEST_CASE("inference in the empty context") {
  Session s;
  CHECK(structural_equal(s.infer("U0"), mk::univ(1)));
  CHECK(structural_equal(s.infer("(\\x. x : U0 -> U0)"), s.resolve("U0 -> U0")));
  CHECK(structural_equal(s.infer("(/\\k. U0 : forall k. U1) {k0}"), mk::univ(1)));
  CHECK_THROWS_AS(s.infer("\\x. x"), CheckError);
  try {
    s.infer("U0 U0");
    FAIL("application of a universe accepted");
  } catch (const CheckError& e) {
    CHECK(e.cls() == ErrorClass::NotAFunction);
  }
}

TEST_CASE("head redexes are inferred from their arguments") {
  Session s;
  CHECK(structural_equal(s.infer("(\\x. x) U0"), mk::univ(1)));
  CHECK(structural_equal(s.infer("(U0, U0 -> U0).2"), mk::univ(1)));
  CHECK(structural_equal(s.infer("(<i> U0) @ 0"), mk::univ(1)));
  CHECK(structural_equal(s.infer("(/\\k. U0) {k0}"), mk::univ(1)));
  CHECK_THROWS_AS(s.infer("(\\x. x) (\\y. y)"), CheckError);
}

TEST_CASE("checking against a type elaborates") {
  Session s;
  TermP t = s.elaborate("<i> U0", "Path U1 U0 U0");
  CHECK(t->kind == Kind::PLam);
  CHECK_THROWS_AS(s.elaborate("<i> U0", "Path U1 U0 (U0 -> U0)"), CheckError);
  CHECK(s.conv("(\\x. x : U1 -> U1) U0", "U0", "U1"));
  CHECK_FALSE(s.conv("U0 -> U0", "U0", "U1"));
}

TEST_CASE("applicative structure of later") {
  CHECK(all_pass(check_text(
      "def ap (k : clock) (A B : U0) (f : |> (a : k) (A -> B)) (x : |> (a : k) A) : |> (a : k) B := "
      "tick a : k. f [a] (x [a])\n"
      "def next (k : clock) (A : U0) (x : A) : |> (a : k) A := tick a : k. x\n")));
  // A variable bound before the tick is usable after it; one bound after is not.
  CHECK(fails_with("def late (k : clock) (A : U0) : |> (a : k) ((|> (b : k) A) -> A) := tick a : k. \\y. y [a]\n",
                   ErrorClass::TickEscape));
}

TEST_CASE("a dependent later type may mention its tick") {
  CHECK(all_pass(check_text("def dep (k : clock) (X : |> (a : k) U0) (t : |> (a : k) X [a]) : |> (a : k) X [a] := "
                            "tick b : k. t [b]\n")));
}

TEST_CASE("path checks compare endpoints") {
  CHECK(all_pass(check_text(
      "def funext (A B : U0) (f g : A -> B) (h : (x : A) -> Path B (f x) (g x)) : Path (A -> B) f g := "
      "<i> \\x. h x @ i\n")));
  CHECK(fails_with("def bad (A : U0) (a b : A) : Path A a b := <i> a\n", ErrorClass::EndpointMismatch));
}

TEST_CASE("systems and compositions") {
  std::string tel = "(A : U0) (a b c : A) (p : Path A a b) (q : Path A b c)";
  CHECK(all_pass(check_text("def cat " + tel + " : Path A a c := <i> hcomp^j A [(i = 0) -> a, (i = 1) -> q @ j] (p @ i)\n")));
  CHECK(fails_with("def bad " + tel + " : Path A a c := <i> hcomp^j A [(i = 0) -> b, (i = 1) -> q @ j] (p @ i)\n",
                   ErrorClass::BaseBoundaryMismatch));
  CHECK(fails_with("def bad " + tel + " (i : I) : A := hcomp^j A [(i = 0) -> p @ j, (i = 0) -> q @ j] a\n",
                   ErrorClass::IncompatibleOverlap));
  CHECK(fails_with("def bad (A B : U0) (P : Path U0 A B) (a : A) : B := trans^i (P @ i) [1] a\n",
                   ErrorClass::TransNotConstant));
}

TEST_CASE("higher inductive signatures") {
  CHECK(all_pass(check_text("data S2 where\n| base\n| surf (i j : I) [(i = 0) \\/ (i = 1) \\/ (j = 0) \\/ (j = 1) -> base]\n")));
  CHECK(fails_with("data F where\n| p (i : I) [(i = 0) -> q, (i = 1) -> q]\n| q\n",
                   ErrorClass::ForwardConstructorReference));
  CHECK(fails_with("data G where\n| b\n| p (i : I) on (i = 0) \\/ (i = 1) [(i = 0) -> b]\n",
                   ErrorClass::BoundaryNotCovering));
  CHECK(fails_with("data C where\n| c0\n| c1\n| sq (i j : I) [(i = 0) -> c0, (j = 0) -> c1]\n",
                   ErrorClass::BoundaryIncompatible));
}

TEST_CASE("eliminators check their boundary obligations") {
  const std::string tr =
      "data Tr (A : U0) where\n| in (a : A)\n"
      "| squash (x y : Tr A) (i : I) [(i = 0) -> x, (i = 1) -> y]\n";
  // Mapping into Tr B: the squash case must agree with the hypotheses at both ends.
  CHECK(all_pass(check_text(tr +
                            "def map (A B : U0) (f : A -> B) (t : Tr A) : Tr B := clockelim^0 t into (h. Tr B) with\n"
                            "| in a => in (f a)\n| squash x y i, ihx ihy => squash ihx ihy @ i\n")));
  CHECK(fails_with(tr + "def map (A B : U0) (f : A -> B) (t : Tr A) : Tr B := clockelim^0 t into (h. Tr B) with\n"
                        "| in a => in (f a)\n| squash x y i, ihx ihy => ihx\n",
                   ErrorClass::CaseBoundaryMismatch));
  CHECK(fails_with(tr + "def map (A B : U0) (f : A -> B) (t : Tr A) : Tr B := clockelim^0 t into (h. Tr B) with\n"
                        "| in a => in (f a)\n",
                   ErrorClass::CaseMissing));
}

TEST_CASE("addition on schema naturals agrees with unary arithmetic") {
  std::string src = kNat;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      src += "--expect-conv plus (" + numeral(m) + ") (" + numeral(n) + ") = " + numeral(m + n) + " : Nat\n";
      src += "--expect-not-conv plus (" + numeral(m) + ") (" + numeral(n) + ") = " + numeral(m + n + 1) + " : Nat\n";
    }
  src += "def sums : Nat := zero\n";
  auto r = check_text(src);
  for (auto& d : r.decls) {
    CAPTURE(d.decl);
    CAPTURE(d.detail);
    CHECK(d.verdict == Verdict::Pass);
  }
}

TEST_CASE("induction under a clock computes on clock-abstracted constructors") {
  const std::string src =
      "data Tr (A : U0) where\n| in (a : A)\n| squash (x y : Tr A) (i : I) [(i = 0) -> x, (i = 1) -> y]\n"
      "def alpha (A : forall k. U0) (t : forall k. Tr (A {k})) : Tr (forall k. A {k}) :=\n"
      "  clockelim^1 t into (h. Tr (forall k. A {k})) with\n"
      "  | in a => in a\n"
      "  | squash x y i, ihx ihy => squash ihx ihy @ i\n"
      "--expect-conv alpha A (/\\k. in (a {k})) = in a : Tr (forall k. A {k})\n"
      "--expect-not-conv alpha A (/\\k. in (a {k})) = in b : Tr (forall k. A {k})\n"
      "def beta (A : forall k. U0) (a b : forall k. A {k}) : U1 := U0\n";
  auto r = check_text(src);
  for (auto& d : r.decls) {
    CAPTURE(d.decl);
    CAPTURE(d.detail);
    CHECK(d.verdict == Verdict::Pass);
  }
}

TEST_CASE("a failing signature skips the declarations that follow it") {
  auto r = check_text("data F where\n| p (i : I) [(i = 0) -> q, (i = 1) -> q]\n| q\ndef use : F := q\n");
  REQUIRE(r.decls.size() >= 2);
  CHECK(r.decls[r.decls.size() - 2].verdict == Verdict::Fail);
  CHECK(r.decls.back().verdict == Verdict::Skip);
}
