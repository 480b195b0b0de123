#include "cctt/interval.hpp"

#include <algorithm>

namespace cctt {

namespace {

template <class C>
bool subset(const C& a, const C& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Sorts, deduplicates and removes absorbed clauses.
template <class C>
std::vector<C> canonical(std::vector<C> cs) {
  for (auto& c : cs) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(cs.begin(), cs.end(), [](const C& a, const C& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::vector<C> kept;
  for (auto& c : cs) {
    bool absorbed = false;
    for (auto& k : kept)
      if (subset(k, c)) {
        absorbed = true;
        break;
      }
    if (!absorbed) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

bool contradictory(const Face::Clause& c) {
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].var == c[i + 1].var && c[i].one != c[i + 1].one) return true;
  return false;
}

}  // namespace

Interval Interval::from_clauses(std::vector<Clause> cs) {
  Interval r;
  r.clauses_ = canonical(std::move(cs));
  return r;
}

Interval Interval::zero() { return Interval(); }

Interval Interval::one() { return from_clauses({Clause{}}); }

Interval Interval::var(int i) { return from_clauses({Clause{Lit{i, false}}}); }

Interval Interval::operator|(const Interval& o) const {
  std::vector<Clause> cs = clauses_;
  cs.insert(cs.end(), o.clauses_.begin(), o.clauses_.end());
  return from_clauses(std::move(cs));
}

Interval Interval::operator&(const Interval& o) const {
  std::vector<Clause> cs;
  for (auto& a : clauses_)
    for (auto& b : o.clauses_) {
      Clause c = a;
      c.insert(c.end(), b.begin(), b.end());
      cs.push_back(std::move(c));
    }
  return from_clauses(std::move(cs));
}

Interval Interval::operator~() const {
  Interval acc = one();
  for (auto& c : clauses_) {
    std::vector<Clause> d;
    for (auto& l : c) d.push_back(Clause{Lit{l.var, !l.neg}});
    acc = acc & from_clauses(std::move(d));
  }
  return acc;
}

bool Interval::mentions(int v) const {
  for (auto& c : clauses_)
    for (auto& l : c)
      if (l.var == v) return true;
  return false;
}

int Interval::max_var() const {
  int m = -1;
  for (auto& c : clauses_)
    for (auto& l : c) m = std::max(m, l.var);
  return m;
}

Interval Interval::rename(const std::function<int(int)>& f) const {
  std::vector<Clause> cs = clauses_;
  for (auto& c : cs)
    for (auto& l : c) l.var = f(l.var);
  return from_clauses(std::move(cs));
}

Interval Interval::subst(const std::function<Interval(int)>& f) const {
  Interval acc = zero();
  for (auto& c : clauses_) {
    Interval m = one();
    for (auto& l : c) {
      Interval x = f(l.var);
      m = m & (l.neg ? ~x : x);
    }
    acc = acc | m;
  }
  return acc;
}

Interval iv_normalize(const IntervalExpr& r) {
  using K = IntervalExpr::Kind;
  switch (r.kind) {
    case K::Zero: return Interval::zero();
    case K::One: return Interval::one();
    case K::Var: return Interval::var(r.var);
    case K::Rev: return ~iv_normalize(r.kids[0]);
    case K::Meet: return iv_normalize(r.kids[0]) & iv_normalize(r.kids[1]);
    case K::Join: return iv_normalize(r.kids[0]) | iv_normalize(r.kids[1]);
  }
  return Interval::zero();
}

bool iv_equal(const IntervalExpr& r, const IntervalExpr& s) {
  return iv_normalize(r) == iv_normalize(s);
}

Face Face::from_clauses(std::vector<Clause> cs) {
  for (auto& c : cs) std::sort(c.begin(), c.end());
  std::vector<Clause> ok;
  for (auto& c : cs) {
    Clause d = c;
    d.erase(std::unique(d.begin(), d.end()), d.end());
    if (!contradictory(d)) ok.push_back(std::move(d));
  }
  Face f;
  f.clauses_ = canonical(std::move(ok));
  return f;
}

Face Face::bot() { return Face(); }

Face Face::top() { return from_clauses({Clause{}}); }

Face Face::gen(int var, bool one) { return from_clauses({Clause{Gen{var, one}}}); }

Face Face::operator|(const Face& o) const {
  std::vector<Clause> cs = clauses_;
  cs.insert(cs.end(), o.clauses_.begin(), o.clauses_.end());
  return from_clauses(std::move(cs));
}

Face Face::operator&(const Face& o) const {
  std::vector<Clause> cs;
  for (auto& a : clauses_)
    for (auto& b : o.clauses_) {
      Clause c = a;
      c.insert(c.end(), b.begin(), b.end());
      cs.push_back(std::move(c));
    }
  return from_clauses(std::move(cs));
}

int Face::max_var() const {
  int m = -1;
  for (auto& c : clauses_)
    for (auto& g : c) m = std::max(m, g.var);
  return m;
}

bool Face::mentions(int v) const {
  for (auto& c : clauses_)
    for (auto& g : c)
      if (g.var == v) return true;
  return false;
}

Face Face::rename(const std::function<int(int)>& f) const {
  std::vector<Clause> cs = clauses_;
  for (auto& c : cs)
    for (auto& g : c) g.var = f(g.var);
  return from_clauses(std::move(cs));
}

Face Face::subst(const std::function<Interval(int)>& f) const {
  Face acc = bot();
  for (auto& c : clauses_) {
    Face m = top();
    for (auto& g : c) m = m & face_of_equation(f(g.var), g.one);
    acc = acc | m;
  }
  return acc;
}

Face face_normalize(const FaceFormula& phi) {
  using K = FaceFormula::Kind;
  switch (phi.kind) {
    case K::Bot: return Face::bot();
    case K::Top: return Face::top();
    case K::Gen: return Face::gen(phi.var, phi.one);
    case K::And: return face_normalize(phi.kids[0]) & face_normalize(phi.kids[1]);
    case K::Or: return face_normalize(phi.kids[0]) | face_normalize(phi.kids[1]);
  }
  return Face::bot();
}

// Each consistent clause is join-prime, so entailment reduces to clause
// containment.
bool face_entails(const Face& phi, const Face& psi) {
  for (auto& c : phi.clauses()) {
    bool found = false;
    for (auto& d : psi.clauses())
      if (subset(d, c)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool face_equal(const Face& phi, const Face& psi) { return phi == psi; }

Face face_of_equation(const Interval& r, bool b) {
  if (b) {
    Face acc = Face::bot();
    for (auto& c : r.clauses()) {
      Face m = Face::top();
      for (auto& l : c) m = m & Face::gen(l.var, !l.neg);
      acc = acc | m;
    }
    return acc;
  }
  Face acc = Face::top();
  for (auto& c : r.clauses()) {
    Face j = Face::bot();
    for (auto& l : c) j = j | Face::gen(l.var, l.neg);
    acc = acc & j;
  }
  return acc;
}

Face face_substitute(const Face& phi, const std::function<Interval(int)>& sigma) {
  return phi.subst(sigma);
}

const Gen* Assignment::find(int var) const {
  for (auto& g : gens)
    if (g.var == var) return &g;
  return nullptr;
}

std::string to_string(const Interval& r, const std::function<std::string(int)>& name) {
  if (r.is_zero()) return "0";
  if (r.is_one()) return "1";
  std::string out;
  bool first_c = true;
  for (auto& c : r.clauses()) {
    if (!first_c) out += " \\/ ";
    first_c = false;
    bool first_l = true;
    for (auto& l : c) {
      if (!first_l) out += " /\\ ";
      first_l = false;
      if (l.neg) out += "~";
      out += name(l.var);
    }
  }
  return out;
}

std::string to_string(const Face& phi, const std::function<std::string(int)>& name) {
  if (phi.is_bot()) return "0";
  if (phi.is_top()) return "1";
  std::string out;
  bool first_c = true;
  for (auto& c : phi.clauses()) {
    if (!first_c) out += " \\/ ";
    first_c = false;
    bool first_g = true;
    for (auto& g : c) {
      if (!first_g) out += " /\\ ";
      first_g = false;
      out += "(" + name(g.var) + (g.one ? "=1)" : "=0)");
    }
  }
  return out;
}

}  // namespace cctt
