#pragma once

#include <compare>
#include <functional>
#include <string>
#include <vector>

namespace cctt {

// A literal of the free De Morgan algebra: an interval variable (de Bruijn
// index among interval entries) or its reversal.
struct Lit {
  int var = 0;
  bool neg = false;
  auto operator<=>(const Lit&) const = default;
};

// Canonical form: a join of meets of literals. Clauses are sorted, free of
// duplicates, and no clause contains another. The empty join is 0; a join
// containing the empty meet is 1.
class Interval {
 public:
  using Clause = std::vector<Lit>;

  Interval() = default;  // 0

  static Interval zero();
  static Interval one();
  static Interval var(int i);
  static Interval endpoint(bool b) { return b ? one() : zero(); }

  Interval operator~() const;
  Interval operator&(const Interval& o) const;
  Interval operator|(const Interval& o) const;

  bool is_zero() const { return clauses_.empty(); }
  bool is_one() const { return clauses_.size() == 1 && clauses_[0].empty(); }
  bool is_endpoint() const { return is_zero() || is_one(); }
  bool mentions(int var) const;
  int max_var() const;  // -1 when closed

  const std::vector<Clause>& clauses() const { return clauses_; }

  // Rename variables; f must be injective on the variables that occur.
  Interval rename(const std::function<int(int)>& f) const;
  // Substitute an interval expression for every variable.
  Interval subst(const std::function<Interval(int)>& f) const;

  bool operator==(const Interval& o) const { return clauses_ == o.clauses_; }
  auto operator<=>(const Interval& o) const { return clauses_ <=> o.clauses_; }

  static Interval from_clauses(std::vector<Clause> cs);

 private:
  std::vector<Clause> clauses_;
};

// Interval expression syntax tree, kept only for building and for oracles.
struct IntervalExpr {
  enum class Kind { Zero, One, Var, Rev, Meet, Join } kind = Kind::Zero;
  int var = 0;
  std::vector<IntervalExpr> kids;

  static IntervalExpr zero() { return {Kind::Zero, 0, {}}; }
  static IntervalExpr one() { return {Kind::One, 0, {}}; }
  static IntervalExpr v(int i) { return {Kind::Var, i, {}}; }
  static IntervalExpr rev(IntervalExpr r) { return {Kind::Rev, 0, {std::move(r)}}; }
  static IntervalExpr meet(IntervalExpr a, IntervalExpr b) {
    return {Kind::Meet, 0, {std::move(a), std::move(b)}};
  }
  static IntervalExpr join(IntervalExpr a, IntervalExpr b) {
    return {Kind::Join, 0, {std::move(a), std::move(b)}};
  }
};

Interval iv_normalize(const IntervalExpr& r);
bool iv_equal(const IntervalExpr& r, const IntervalExpr& s);

// A generator (i = 0) or (i = 1).
struct Gen {
  int var = 0;
  bool one = false;
  auto operator<=>(const Gen&) const = default;
};

// Element of the face lattice in canonical form: a disjunction of
// conjunctions of generators. No clause holds both (i=0) and (i=1) and no
// clause subsumes another.
class Face {
 public:
  using Clause = std::vector<Gen>;

  Face() = default;  // 0_F

  static Face bot();
  static Face top();
  static Face gen(int var, bool one);

  Face operator&(const Face& o) const;
  Face operator|(const Face& o) const;

  bool is_bot() const { return clauses_.empty(); }
  bool is_top() const { return clauses_.size() == 1 && clauses_[0].empty(); }
  int max_var() const;
  bool mentions(int var) const;

  const std::vector<Clause>& clauses() const { return clauses_; }

  Face rename(const std::function<int(int)>& f) const;
  // Substitute an interval expression for every variable.
  Face subst(const std::function<Interval(int)>& f) const;

  bool operator==(const Face& o) const { return clauses_ == o.clauses_; }
  auto operator<=>(const Face& o) const { return clauses_ <=> o.clauses_; }

  static Face from_clauses(std::vector<Clause> cs);
  static Face of_clause(const Clause& c) { return from_clauses({c}); }

 private:
  std::vector<Clause> clauses_;
};

struct FaceFormula {
  enum class Kind { Bot, Top, Gen, And, Or } kind = Kind::Bot;
  int var = 0;
  bool one = false;
  std::vector<FaceFormula> kids;

  static FaceFormula bot() { return {Kind::Bot, 0, false, {}}; }
  static FaceFormula top() { return {Kind::Top, 0, false, {}}; }
  static FaceFormula gen(int i, bool b) { return {Kind::Gen, i, b, {}}; }
  static FaceFormula conj(FaceFormula a, FaceFormula b) {
    return {Kind::And, 0, false, {std::move(a), std::move(b)}};
  }
  static FaceFormula disj(FaceFormula a, FaceFormula b) {
    return {Kind::Or, 0, false, {std::move(a), std::move(b)}};
  }
};

Face face_normalize(const FaceFormula& phi);
bool face_entails(const Face& phi, const Face& psi);
bool face_equal(const Face& phi, const Face& psi);
Face face_of_equation(const Interval& r, bool b);
Face face_substitute(const Face& phi, const std::function<Interval(int)>& sigma);

// An assignment of endpoints to some interval variables, as obtained from a
// consistent face clause.
struct Assignment {
  std::vector<Gen> gens;  // sorted by var
  const Gen* find(int var) const;
};

std::string to_string(const Interval& r, const std::function<std::string(int)>& name);
std::string to_string(const Face& phi, const std::function<std::string(int)>& name);

}  // namespace cctt
