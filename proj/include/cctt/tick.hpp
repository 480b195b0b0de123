#pragma once

#include <optional>
#include <vector>

#include "cctt/syntax.hpp"

namespace cctt {

// Clocks, intervals and faces survive crossing a tick.
bool is_timeless(const Entry& e);
Context timeless(const Context& g);
// Whether g2 arises from g by replacing a suffix with its timeless part.
bool trim_check(const Context& g2, const Context& g);

// Residual contexts keep every entry in place and mark the dropped ones as
// locked, so indices stay valid.
Context tick_check_simple(const Context& g, const Tick& u, ClockRef k);
Context tick_check_forcing(const Context& g, ClockRef k, const Tick& u);
// The clock a tick lives on, read from its variables; nullopt for a closed tick.
std::optional<ClockRef> tick_clock(const Context& g, const Tick& u);

// Untyped simultaneous substitution over sort-indexed variables. Index j of a
// sort with j < n (the number of components) maps to component j; larger
// indices map to variable j - n + tail.
struct TickComp {
  Tick tick;
  bool forced = false;  // part of a clock-and-forcing-tick pair
  int src_clock = 0;    // source clock of the paired tick variable
};

struct Subst {
  std::vector<TermP> terms;
  std::vector<ClockRef> clocks;
  std::vector<TickComp> ticks;
  std::vector<Interval> ivals;
  Shift tail;

  static Subst shift(Shift by) {
    Subst s;
    s.tail = by;
    return s;
  }
  bool is_identity() const;
};

TermP subst(const TermP& t, const Subst& s);
Tick subst(const Tick& u, const Subst& s);
ClockRef subst(ClockRef k, const Subst& s);
Interval subst(const Interval& r, const Subst& s);
Face subst(const Face& f, const Subst& s);

// Instantiate the innermost binder of a sort.
TermP inst_term(const TermP& body, const TermP& a);
TermP inst_clock(const TermP& body, ClockRef k);
TermP inst_tick(const TermP& body, const Tick& u);
TermP inst_ival(const TermP& body, const Interval& r);
Face inst_ival(const Face& f, const Interval& r);
// body lives under a clock k and a tick on k; substitutes (u : k2)/(a : k).
TermP inst_force(const TermP& body, ClockRef k2, const Tick& u);

// Typed substitution Delta -> Gamma with one component per entry of Gamma.
struct Component {
  EntrySort sort = EntrySort::TermVar;
  TermP term;
  ClockRef clock;
  Tick tick;
  bool forced = false;
  Interval ival;
};

struct Substitution {
  Context dom;  // Delta
  Context cod;  // Gamma
  std::vector<Component> comps;

  static Substitution identity(const Context& g);
  // Throws MalformedSubstitution when component sorts do not match Gamma.
  void validate() const;
  Subst raw() const;
};

struct ResidualResult {
  bool forced = false;
  Context ctx;      // Delta', extended by the fresh clock when forced
  Substitution sub;
};

ResidualResult residual(const Substitution& s, const Tick& u);
std::pair<Context, Substitution> bresidual(const Substitution& s, ClockRef k, const Tick& u);
TermP subst_apply(const Substitution& s, const TermP& t);

}  // namespace cctt
