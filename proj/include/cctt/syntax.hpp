#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cctt/error.hpp"
#include "cctt/interval.hpp"

namespace cctt {

// Variables of each sort are counted separately, so binders of one sort never
// shift indices of another.
enum class Sort : uint8_t { Term, Clock, Tick, Interval };

struct Shift {
  int term = 0, clock = 0, tick = 0, ival = 0;

  int get(Sort s) const;
  int& at(Sort s);
  Shift operator+(const Shift& o) const {
    return {term + o.term, clock + o.clock, tick + o.tick, ival + o.ival};
  }
  bool is_zero() const { return term == 0 && clock == 0 && tick == 0 && ival == 0; }
  bool operator==(const Shift&) const = default;

  static Shift of(Sort s, int n = 1) {
    Shift r;
    r.at(s) = n;
    return r;
  }
};

// A clock variable, or the constant clock k0 (index -1).
struct ClockRef {
  int idx = 0;
  static ClockRef k0() { return {-1}; }
  bool is_const() const { return idx < 0; }
  bool operator==(const ClockRef&) const = default;
};

struct Tick {
  enum class K : uint8_t { Var, Diamond, Tirr };
  K k = K::Diamond;
  int idx = 0;
  std::shared_ptr<const Tick> u, v;
  Interval r;

  static Tick var(int i) { return Tick{K::Var, i, nullptr, nullptr, {}}; }
  static Tick diamond() { return Tick{}; }
  static Tick tirr(Tick u, Tick v, Interval r);

  bool is_var() const { return k == K::Var; }
  bool is_diamond() const { return k == K::Diamond; }
  bool has_diamond() const;
  // Index of the leftmost (outermost) tick variable, -1 when there is none.
  int leftmost_var() const;
  void vars(std::vector<int>& out) const;
};

bool operator==(const Tick& a, const Tick& b);

// Applies the tick equations tirr(u,v,0) = u, tirr(u,v,1) = v and
// tirr(<>,<>,r) = <> bottom-up.
Tick tick_normalize(const Tick& t);

enum class Kind : uint8_t {
  Var,       // num = index
  Global,    // name
  Univ,      // num = level
  Pi,        // kids: dom, cod[+1 term]
  Lam,       // kids: body[+1 term]
  App,       // kids: fun, arg
  Sigma,     // kids: dom, cod[+1 term]
  Pair,      // kids: fst, snd
  Fst,       // kids: pair
  Snd,       // kids: pair
  Path,      // kids: type, left, right
  PLam,      // kids: body[+1 interval]
  PApp,      // kids: path [, left, right]; ivs[0]
  Forall,    // kids: body[+1 clock]
  ClockLam,  // kids: body[+1 clock]
  ClockApp,  // kids: fun; clocks[0]
  Later,     // kids: body[+1 tick]; clocks[0]
  TickLam,   // kids: body[+1 tick]; clocks[0]
  TickApp,   // kids: fun; ticks[0]
  ForceApp,  // kids: fun[+1 clock]; clocks[0], ticks[0]
  Dfix,      // kids: f; clocks[0]
  Pfix,      // kids: f; clocks[0]
  Comp,      // kids: line[+1 i], base, tubes[+1 i]...; faces parallel to tubes
  HComp,     // kids: type, base, tubes[+1 i]...; faces parallel to tubes
  Trans,     // kids: line[+1 i], base; faces[0]
  Data,      // name; kids: params
  Con,       // name, label; kids: params, args, recs; ivs; counts = {params, args, recs}
  Elim,      // name, num = clock count; kids: params[+n clocks], motive[+1 term],
             // cases[+terms, +intervals]..., scrutinee; counts = {params, cases}
  Ann,       // kids: term, type
};

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  Kind kind = Kind::Var;
  int num = 0;
  std::string name;
  std::string label;
  std::vector<TermP> kids;
  std::vector<Shift> binds;
  std::vector<std::string> names;  // binder names in kid order; per kid term, clock, tick, ival
  std::vector<Interval> ivs;
  std::vector<Face> faces;
  std::vector<Tick> ticks;
  std::vector<ClockRef> clocks;
  std::array<int, 3> counts{};
  Span span;
};

const char* to_string(Kind k);

namespace mk {
TermP var(int i);
TermP global(const std::string& n);
TermP univ(int level);
TermP pi(const std::string& x, TermP a, TermP b);
TermP arrow(TermP a, TermP b);  // b is weakened
TermP lam(const std::string& x, TermP body);
TermP app(TermP f, TermP a);
TermP apps(TermP f, const std::vector<TermP>& as);
TermP sigma(const std::string& x, TermP a, TermP b);
TermP pair(TermP a, TermP b);
TermP fst(TermP p);
TermP snd(TermP p);
TermP path(TermP a, TermP x, TermP y);
TermP plam(const std::string& i, TermP body);
TermP papp(TermP p, Interval r, TermP left = nullptr, TermP right = nullptr);
TermP forall(const std::string& k, TermP body);
TermP clam(const std::string& k, TermP body);
TermP capp(TermP t, ClockRef k);
TermP later(const std::string& a, ClockRef k, TermP body);
TermP tlam(const std::string& a, ClockRef k, TermP body);
TermP tapp(TermP t, Tick u);
TermP force(const std::string& k, TermP body, ClockRef k2, Tick u);
TermP dfix(ClockRef k, TermP f);
TermP pfix(ClockRef k, TermP f);
struct Tube {
  Face face;
  TermP term;
};
TermP comp(const std::string& i, TermP line, std::vector<Tube> sys, TermP base);
TermP hcomp(const std::string& i, TermP type, std::vector<Tube> sys, TermP base);
TermP trans(const std::string& i, TermP line, Face phi, TermP base);
TermP data(const std::string& h, std::vector<TermP> params);
TermP con(const std::string& h, const std::string& label, std::vector<TermP> params,
          std::vector<TermP> args, std::vector<TermP> recs, std::vector<Interval> ivs);
// Cases are given in constructor order.
struct Case {
  std::vector<std::string> names;  // gamma, x, y, then intervals
  int terms = 0;
  int ivars = 0;
  TermP body;
};
TermP elim(const std::string& h, int n, std::vector<TermP> params, const std::string& hname,
           TermP motive, std::vector<Case> cases, TermP scrut);
TermP ann(TermP t, TermP type);
}  // namespace mk

// Accessors for the kid layout of composite nodes.
inline int comp_tube_count(const Term& t) { return static_cast<int>(t.kids.size()) - 2; }
inline const TermP& con_param(const Term& t, int k) { return t.kids[k]; }
inline const TermP& con_arg(const Term& t, int k) { return t.kids[t.counts[0] + k]; }
inline const TermP& con_rec(const Term& t, int k) { return t.kids[t.counts[0] + t.counts[1] + k]; }
inline const TermP& elim_motive(const Term& t) { return t.kids[t.counts[0]]; }
inline const TermP& elim_case(const Term& t, int k) { return t.kids[t.counts[0] + 1 + k]; }
inline const TermP& elim_scrut(const Term& t) { return t.kids.back(); }

// Shifts every free index at or above `cut` by `by`, per sort.
TermP weaken(const TermP& t, Shift by, Shift cut = {});
Tick weaken_tick(const Tick& u, Shift by, Shift cut = {});
ClockRef weaken_clock(ClockRef k, Shift by, Shift cut = {});

// Equality of trees up to binder names, spans and elaboration annotations.
bool structural_equal(const TermP& a, const TermP& b);

// Whether the term mentions the variable of sort s with the given index.
bool occurs(const TermP& t, Sort s, int idx);
// Maximum index + 1 per sort of the free variables.
Shift free_extent(const TermP& t);

enum class EntrySort : uint8_t { TermVar, Clock, Tick, Interval, Face };

const char* to_string(EntrySort s);

struct Entry {
  EntrySort sort = EntrySort::TermVar;
  std::string name;
  TermP type;            // TermVar
  ClockRef clock;        // Tick
  Face face;             // Face
  bool locked = false;   // hidden by a tick residual
  bool constant = false; // the clock constant k0
};

bool entry_equal(const Entry& a, const Entry& b);

// Entries are ordered oldest first; each payload lives in the prefix before it.
class Context {
 public:
  std::vector<Entry> entries;

  static Context with_k0();

  void push(Entry e) { entries.push_back(std::move(e)); }
  void push_term(const std::string& n, TermP type);
  void push_clock(const std::string& n);
  void push_tick(const std::string& n, ClockRef k);
  void push_interval(const std::string& n);
  void push_face(Face phi);

  size_t size() const { return entries.size(); }
  int count(Sort s) const;
  // Position in `entries` of the variable of sort s with de Bruijn index idx.
  int position(Sort s, int idx) const;
  // Number of binders of each sort strictly after position pos.
  Shift after(int pos) const;
  // Type of a term variable shifted into the full context.
  TermP type_of(int idx) const;
  ClockRef clock_of_tick(int idx) const;
  bool visible(Sort s, int idx) const;
  const std::string& name_of(Sort s, int idx) const;
  // Endpoint assignment implied by single-clause face entries, in current
  // interval indices.
  Assignment assignment() const;
  // Entries not hidden by residual locks.
  std::vector<Entry> visible_entries() const;
  std::vector<std::string> names(Sort s) const;  // innermost first
};

// Surface-like rendering. Free variables are named from ctx when given.
std::string print(const TermP& t, const Context* ctx = nullptr);
std::string print(const Tick& u, const Context* ctx = nullptr);

// Telescopes hold term-variable entries relative to an ambient context.
using Telescope = std::vector<Entry>;

// A boundary term: x u.. | con(t.., \xi. M.., r..) | hcomp^j [phi -> M] M0,
// stored as a core term of that restricted shape.
struct BoundaryTerm {
  TermP term;
};

struct RecArg {
  std::string name;
  Telescope xi;  // in params, gamma
};

struct Constructor {
  std::string label;
  Telescope gamma;                // in params
  std::vector<RecArg> recs;
  std::vector<std::string> ivars;
  Face phi;                       // over ivars
  struct Side {
    Face face;
    BoundaryTerm term;            // in params, gamma, recs, ivars
  };
  std::vector<Side> boundary;

  int arg_count() const { return static_cast<int>(gamma.size()); }
  int rec_count() const { return static_cast<int>(recs.size()); }
  int ivar_count() const { return static_cast<int>(ivars.size()); }
};

struct HitSignature {
  std::string name;
  Telescope params;
  int level = 0;
  std::vector<Constructor> ctors;

  int index_of(const std::string& label) const;
  const Constructor* find(const std::string& label) const;
};

// Type of recursive argument k of a constructor, in context params, gamma,
// recs before k.
TermP rec_arg_type(const HitSignature& sig, const Constructor& c, int k);

}  // namespace cctt
