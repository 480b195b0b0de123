#pragma once

// The judgemental equalities of the theory as surface-level conversion
// problems. Each has a perturbed twin that must not be convertible.

#include <string>
#include <vector>

namespace testing {

struct Equality {
  std::string name;
  std::string binders;
  std::string lhs, rhs, type;
  std::string twin_lhs, twin_rhs;  // the perturbed problem, same binders and type
};

inline const std::vector<Equality>& equalities() {
  static const std::string F = "(A B : U0) (f : A -> B) (x y : A) (p q : A * B)";
  static const std::string C = "(A : U0) (g : forall k. A) (k k2 : clock)";
  static const std::string T = "(k : clock) (A : U0) (x : |> (a : k) A) (y : A) (a b : tick k) (i : I)";
  static const std::string X =
      "(A : U0) (x : forall k. |> (a : k) A) (h : forall k. |> (a : k) A) (k : clock) (a : tick k) (i : I)";
  static const std::string D = "(A : U0) (f : forall k. |> (a : k) A -> A) (k : clock) (a : tick k) (i : I)";
  static const std::string P = "(A : U0) (x y : A) (p q : Path A x y)";
  static const std::string U = "(A : forall k. U0) (B : U0) (k k2 : clock)";
  static const std::vector<Equality> all = {
      {"function beta", F, "(\\z. f z : A -> B) x", "f x", "B", "(\\z. f z : A -> B) x", "f y"},
      {"function eta", F, "\\z. f z", "f", "A -> B", "\\z. f x", "f"},
      {"first projection", F, "((x, f x) : A * B).1", "x", "A", "((x, f x) : A * B).1", "y"},
      {"second projection", F, "((x, f x) : A * B).2", "f x", "B", "((x, f x) : A * B).2", "f y"},
      {"pair eta", F, "(p.1, p.2)", "p", "A * B", "(p.1, q.2)", "p"},
      {"clock beta", C, "(/\\k1. g {k1} : forall k. A) {k}", "g {k}", "A", "(/\\k1. g {k1} : forall k. A) {k}",
       "g {k2}"},
      {"clock eta", C, "/\\k1. g {k1}", "g", "forall k. A", "/\\k1. g {k}", "g"},
      {"tick beta", T, "(tick c : k. y : |> (c : k) A) [a]", "y", "A", "(tick c : k. x [a] : |> (c : k) A) [b]",
       "y"},
      {"tick eta", T, "tick c : k. x [c]", "x", "|> (c : k) A", "tick c : k. y", "x"},
      {"tick application ignores the residual context", T, "(tick c : k. x [c] : |> (c : k) A) [a]", "x [a]",
       "A", "(tick c : k. x [c] : |> (c : k) A) [a]", "x [b]"},
      {"forcing beta", X, "(k1. (tick c : k1. h {k1} [c] : |> (c : k1) A)) [k, a]", "h {k} [a]", "A",
       "(k1. (tick c : k1. h {k1} [c] : |> (c : k1) A)) [k, a]", "x {k} [a]"},
      {"forcing application ignores the residual context", X, "(k1. x {k1}) [k, <>]",
       "(k1. (tick c : k1. x {k1} [c] : |> (c : k1) A)) [k, <>]", "A", "(k1. x {k1}) [k, <>]",
       "(k1. h {k1}) [k, <>]"},
      {"forcing at a simple tick", X, "(k1. x {k1}) [k, a]", "x {k} [a]", "A", "(k1. x {k1}) [k, <>]",
       "x {k} [a]"},
      {"dfix unfolds at the diamond", D, "(k1. dfix k1 (f {k1})) [k, <>]", "f {k} (dfix k (f {k}))", "A",
       "dfix k (f {k}) [a]", "f {k} (dfix k (f {k}))"},
      {"pfix unfolds at the diamond", D, "(k1. pfix k1 (f {k1})) [k, <>] @ i", "f {k} (dfix k (f {k}))", "A",
       "pfix k (f {k}) [a] @ i", "f {k} (dfix k (f {k}))"},
      {"fix is its unfolding", D, "fix {k} A (f {k})", "f {k} (dfix k (f {k}))", "A", "fix {k} A (f {k})",
       "f {k} (tick c : k. fix {k} A (f {k}))"},
      {"path left endpoint", P, "p @ 0", "x", "A", "p @ 1", "x"},
      {"path right endpoint", P, "p @ 1", "y", "A", "p @ 0", "y"},
      {"path eta", P, "<i> p @ i", "p", "Path A x y", "<i> q @ i", "p"},
      {"tirr at 0", T, "x [tirr(a, b, 0)]", "x [a]", "A", "x [tirr(a, b, 1)]", "x [a]"},
      {"tirr at 1", T, "x [tirr(a, b, 1)]", "x [b]", "A", "x [tirr(a, b, i)]", "x [b]"},
      {"tirr of two diamonds", X, "(k1. x {k1}) [k, tirr(<>, <>, i)]", "(k1. x {k1}) [k, <>]", "A",
       "(k1. x {k1}) [k, tirr(<>, a, i)]", "(k1. x {k1}) [k, <>]"},
      {"El of the clock quantifier code", U, "(forall k. A {k} : U0)", "forall k. A {k}", "U1",
       "(forall k. A {k} : U0)", "forall k1. A {k2}"},
      {"El of the later code", U, "(|> (a : k) B : U0)", "|> (a : k) B", "U1", "(|> (a : k) B : U0)",
       "|> (a : k2) B"},
  };
  return all;
}

}  // namespace testing
