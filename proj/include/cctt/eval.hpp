#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cctt/syntax.hpp"
#include "cctt/tick.hpp"

namespace cctt {

struct Definition {
  std::string name;
  TermP type;
  TermP body;  // null for declarations that cannot be unfolded
};

// Top-level definitions and HIT signatures known so far.
struct Globals {
  std::map<std::string, Definition> defs;
  std::map<std::string, HitSignature> sigs;
  std::map<std::string, std::string> ctor_owner;  // constructor label -> type name

  const HitSignature* sig(const std::string& h) const;
  const Definition* def(const std::string& n) const;
};

// Weak-head evaluation and conversion. Terms are closed over their free
// variables; evaluation never needs the typing context.
class Eval {
 public:
  explicit Eval(const Globals& g, long max_steps = 1000000, std::ostream* trace = nullptr);

  TermP whnf(const TermP& t);
  // One head step, or null when t is already in weak-head normal form.
  TermP step(const TermP& t);
  bool conv(const TermP& a, const TermP& b);

  // Composition for a whnf'd line; null when stuck.
  TermP comp_eval(const TermP& comp);
  TermP trans_eval(const TermP& trans);
  TermP hcomp_eval(const TermP& hcomp);
  TermP elim_reduce(const TermP& elim, const TermP& scrut_whnf);
  // Boundary instance of a constructor whose boundary face holds; else null.
  TermP con_boundary(const Term& con) const;

  const Globals& globals() const { return g_; }
  void reset_fuel() { steps_ = 0; }
  long steps() const { return steps_; }
  void set_trace(std::ostream* os) { trace_ = os; }

 private:
  bool conv_whnf(const TermP& a, const TermP& b);
  bool conv_system(const Term& a, const Term& b);
  void tick();

  const Globals& g_;
  long max_steps_;
  long steps_ = 0;
  int depth_ = 0;
  std::ostream* trace_;
};

// Restrict a term to a face clause by sending its interval variables to
// endpoints. `under` counts interval binders between the face and t.
TermP restrict_to(const TermP& t, const Face::Clause& c, int under = 0);
Interval restrict_to(const Interval& r, const Face::Clause& c);
Face restrict_to(const Face& f, const Face::Clause& c);

// hfill^k A [phi -> u] u0 at r: u lives under the binder k, r in the ambient scope.
TermP hfill(TermP a, const std::vector<mk::Tube>& sys, TermP u0, const Interval& r);

// comp for a HIT line via hcomp and trans.
TermP hit_comp_decompose(const TermP& line, const std::vector<mk::Tube>& sys, const TermP& u0);

// Instantiate a boundary term of a constructor (scope params, gamma, recs,
// ivars) at concrete arguments, beta-reducing recursive-variable spines.
BoundaryTerm boundary_subst(const BoundaryTerm& n, const std::vector<TermP>& params,
                            const std::vector<TermP>& args, const std::vector<TermP>& recs,
                            const std::vector<Interval>& ivs);
bool boundary_equal(Eval& ev, const BoundaryTerm& m, const BoundaryTerm& n, const Face& under);

std::vector<mk::Tube> tubes_of(const Term& t);

}  // namespace cctt
