#pragma once

// Shared helpers for the test binaries: hand-rolled generators over the
// interval and face syntax, and small drivers for checking source snippets.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cctt/driver.hpp"
#include "cctt/interval.hpp"
#include "cctt/surface.hpp"

#ifndef CCTT_SOURCE_DIR
#define CCTT_SOURCE_DIR "."
#endif

namespace testing {

inline std::filesystem::path source_dir() { return CCTT_SOURCE_DIR; }
inline std::filesystem::path corpus_dir() { return source_dir() / "corpus"; }

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (auto& e : std::filesystem::recursive_directory_iterator(corpus_dir()))
    if (e.is_regular_file() && e.path().extension() == ".cctt") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

using Rng = std::mt19937_64;

// Random interval expression of at most the given depth.
inline cctt::IntervalExpr gen_iv(Rng& rng, int nvars, int depth) {
  using E = cctt::IntervalExpr;
  int pick = depth == 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 6);
  switch (pick) {
    case 0: return rng() % 4 == 0 ? (rng() % 2 ? E::one() : E::zero()) : E::v(static_cast<int>(rng() % nvars));
    case 1: return E::v(static_cast<int>(rng() % nvars));
    case 2: return rng() % 2 ? E::rev(E::v(static_cast<int>(rng() % nvars))) : E::v(static_cast<int>(rng() % nvars));
    case 3: return E::rev(gen_iv(rng, nvars, depth - 1));
    case 4: return E::meet(gen_iv(rng, nvars, depth - 1), gen_iv(rng, nvars, depth - 1));
    default: return E::join(gen_iv(rng, nvars, depth - 1), gen_iv(rng, nvars, depth - 1));
  }
}

// Rewrites an expression by one De Morgan law at a random position, so the
// result is equal to the input in the free algebra.
inline cctt::IntervalExpr rewrite_iv(Rng& rng, const cctt::IntervalExpr& r) {
  using E = cctt::IntervalExpr;
  using K = E::Kind;
  if (!r.kids.empty() && rng() % 2) {
    E out = r;
    size_t k = rng() % r.kids.size();
    out.kids[k] = rewrite_iv(rng, r.kids[k]);
    return out;
  }
  switch (r.kind) {
    case K::Meet:
      switch (rng() % 3) {
        case 0: return E::meet(r.kids[1], r.kids[0]);
        case 1: return E::rev(E::join(E::rev(r.kids[0]), E::rev(r.kids[1])));
        default: return E::join(E::meet(r.kids[0], r.kids[1]), E::meet(r.kids[0], r.kids[1]));
      }
    case K::Join:
      switch (rng() % 3) {
        case 0: return E::join(r.kids[1], r.kids[0]);
        case 1: return E::rev(E::meet(E::rev(r.kids[0]), E::rev(r.kids[1])));
        default: return E::join(E::join(r.kids[0], r.kids[1]), E::meet(r.kids[0], r.kids[1]));
      }
    case K::Rev:
      if (r.kids[0].kind == K::Rev) return r.kids[0].kids[0];
      return E::rev(E::rev(r));
    default:
      return rng() % 2 ? E::rev(E::rev(r)) : E::meet(r, E::one());
  }
}

// Every expression over nvars variables of depth at most `depth`.
inline std::vector<cctt::IntervalExpr> all_iv(int nvars, int depth) {
  using E = cctt::IntervalExpr;
  std::vector<E> level{E::zero(), E::one()};
  for (int v = 0; v < nvars; ++v) level.push_back(E::v(v));
  for (int d = 0; d < depth; ++d) {
    std::vector<E> next = {E::zero(), E::one()};
    for (int v = 0; v < nvars; ++v) next.push_back(E::v(v));
    for (auto& a : level) next.push_back(E::rev(a));
    for (auto& a : level)
      for (auto& b : level) {
        next.push_back(E::meet(a, b));
        next.push_back(E::join(a, b));
      }
    level = std::move(next);
  }
  return level;
}

inline cctt::FaceFormula gen_face(Rng& rng, int nvars, int depth) {
  using F = cctt::FaceFormula;
  int pick = depth == 0 ? static_cast<int>(rng() % 5) : static_cast<int>(rng() % 7);
  switch (pick) {
    case 0: return rng() % 2 ? F::top() : F::bot();
    case 1:
    case 2:
    case 3:
    case 4: return F::gen(static_cast<int>(rng() % nvars), rng() % 2);
    case 5: return F::conj(gen_face(rng, nvars, depth - 1), gen_face(rng, nvars, depth - 1));
    default: return F::disj(gen_face(rng, nvars, depth - 1), gen_face(rng, nvars, depth - 1));
  }
}

// Every face formula over nvars variables of depth at most `depth`.
inline std::vector<cctt::FaceFormula> all_faces(int nvars, int depth) {
  using F = cctt::FaceFormula;
  auto leaves = [&] {
    std::vector<F> out{F::bot(), F::top()};
    for (int v = 0; v < nvars; ++v) {
      out.push_back(F::gen(v, false));
      out.push_back(F::gen(v, true));
    }
    return out;
  };
  std::vector<F> level = leaves();
  for (int d = 0; d < depth; ++d) {
    std::vector<F> next = leaves();
    for (auto& a : level)
      for (auto& b : level) {
        next.push_back(F::conj(a, b));
        next.push_back(F::disj(a, b));
      }
    level = std::move(next);
  }
  return level;
}

// Random canonical interval over nvars variables.
inline cctt::Interval gen_interval(Rng& rng, int nvars) { return cctt::iv_normalize(gen_iv(rng, nvars, 2)); }

// Checks a source text with the corpus prelude loaded.
inline cctt::Report check_text(const std::string& text, cctt::Options o = {}) {
  static const cctt::Module prelude = [] {
    std::ifstream in(corpus_dir() / "prelude.cctt");
    std::stringstream ss;
    ss << in.rdbuf();
    return cctt::parse_module(ss.str());
  }();
  return cctt::check_source("<test>", text, o, &prelude);
}

// Verdict of the single declaration in a checked snippet (the last one when
// there are several).
inline cctt::Verdict last_verdict(const cctt::Report& r) {
  return r.decls.empty() ? cctt::Verdict::Fail : r.decls.back().verdict;
}

enum class Conv { Equal, NotEqual, IllTyped };

// Decides lhs = rhs : type in the telescope `binders` through a conversion
// pragma. IllTyped means the probe itself failed to check, so a conv-false
// expectation cannot pass by accident.
inline Conv conv_in(const std::string& binders, const std::string& lhs, const std::string& rhs,
                    const std::string& type) {
  auto r = check_text("--expect-conv " + lhs + " = " + rhs + " : " + type + "\ndef probe " + binders +
                      " : U1 := U0\n");
  if (r.decls.size() != 1) return Conv::IllTyped;
  if (r.decls[0].verdict == cctt::Verdict::Pass) return Conv::Equal;
  if (r.decls[0].detail.rfind("expected convertible", 0) == 0) return Conv::NotEqual;
  return Conv::IllTyped;
}

inline bool all_pass(const cctt::Report& r) {
  for (auto& d : r.decls)
    if (d.verdict != cctt::Verdict::Pass) return false;
  return !r.decls.empty();
}

}  // namespace testing
