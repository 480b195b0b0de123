#pragma once

// Brute-force semantics of the face lattice. A valuation gives each interval
// variable one of three states: (i=0) holds, (i=1) holds, or neither. A
// generator holds when its variable is in the matching state, so (i=0) and
// (i=1) never hold together. phi entails psi iff every valuation satisfying
// phi satisfies psi.

#include <vector>

#include "cctt/interval.hpp"

namespace oracle {

enum class V3 { Zero, One, Neither };

inline bool v3_holds(const cctt::FaceFormula& f, const std::vector<V3>& v) {
  using K = cctt::FaceFormula::Kind;
  switch (f.kind) {
    case K::Bot: return false;
    case K::Top: return true;
    case K::Gen: return v.at(f.var) == (f.one ? V3::One : V3::Zero);
    case K::And: return v3_holds(f.kids[0], v) && v3_holds(f.kids[1], v);
    case K::Or: return v3_holds(f.kids[0], v) || v3_holds(f.kids[1], v);
  }
  return false;
}

inline bool v3_holds(const cctt::Face& f, const std::vector<V3>& v) {
  for (auto& clause : f.clauses()) {
    bool all = true;
    for (auto& g : clause) all = all && v.at(g.var) == (g.one ? V3::One : V3::Zero);
    if (all) return true;
  }
  return false;
}

template <class F>
void v3_for_all(int nvars, F&& f) {
  std::vector<V3> v(nvars, V3::Zero);
  int total = 1;
  for (int k = 0; k < nvars; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int k = 0; k < nvars; ++k, c /= 3) v[k] = static_cast<V3>(c % 3);
    f(v);
  }
}

template <class A, class B>
bool v3_entails(const A& phi, const B& psi, int nvars) {
  bool ok = true;
  v3_for_all(nvars, [&](const std::vector<V3>& v) {
    if (v3_holds(phi, v) && !v3_holds(psi, v)) ok = false;
  });
  return ok;
}

// Endpoint semantics of an interval expression under a 0/1 valuation.
inline bool bool_eval(const cctt::IntervalExpr& r, const std::vector<bool>& env) {
  using K = cctt::IntervalExpr::Kind;
  switch (r.kind) {
    case K::Zero: return false;
    case K::One: return true;
    case K::Var: return env.at(r.var);
    case K::Rev: return !bool_eval(r.kids[0], env);
    case K::Meet: return bool_eval(r.kids[0], env) && bool_eval(r.kids[1], env);
    case K::Join: return bool_eval(r.kids[0], env) || bool_eval(r.kids[1], env);
  }
  return false;
}

// A face evaluated at a 0/1 point (every variable at an endpoint).
inline bool bool_holds(const cctt::Face& f, const std::vector<bool>& env) {
  std::vector<V3> v;
  for (bool b : env) v.push_back(b ? V3::One : V3::Zero);
  return v3_holds(f, v);
}

}  // namespace oracle
