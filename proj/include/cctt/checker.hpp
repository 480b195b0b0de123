#pragma once

#include <utility>
#include <vector>

#include "cctt/eval.hpp"
#include "cctt/syntax.hpp"

namespace cctt {

// A derivable judgement ctx |- term : type recorded during checking.
struct Judgement {
  Context ctx;
  TermP term;
  TermP type;
};

// Bidirectional checker. Checking returns the elaborated term: constructor
// parameters, path-application endpoints, eliminator parameters and tick
// abstraction clocks are filled in.
class Checker {
 public:
  Checker(Globals& g, Eval& ev) : g_(g), ev_(ev) {}

  TermP check(Context& ctx, const TermP& t, const TermP& type);
  std::pair<TermP, TermP> infer(Context& ctx, const TermP& t);
  // Checks that t is a type; returns it elaborated together with its level.
  std::pair<TermP, int> check_type(Context& ctx, const TermP& t);

  // Conversion and head normalization under the face assumptions of ctx.
  bool conv(const Context& ctx, const TermP& a, const TermP& b);
  TermP whnf(const Context& ctx, const TermP& t);
  // Type inclusion: conversion plus universe cumulativity.
  bool sub(const Context& ctx, const TermP& a, const TermP& b);

  // Validates and elaborates a signature, then registers it.
  void check_hit_signature(HitSignature& sig);
  // Elaborates a telescope in place, pushing its entries onto ctx; returns
  // the maximal level of its types.
  int check_telescope(Context& ctx, Telescope& tele);

  Eval& eval() { return ev_; }
  Globals& globals() { return g_; }

  std::vector<Judgement>* log = nullptr;

 private:
  TermP check_(Context& ctx, const TermP& t, const TermP& type);
  std::pair<TermP, TermP> infer_(Context& ctx, const TermP& t);

  struct SysResult {
    std::vector<mk::Tube> tubes;
  };
  // Elaborates the tubes of a system over a line (constant when !line_binds).
  SysResult check_system(Context& ctx, const Term& t, const TermP& line, bool line_binds,
                         ErrorClass tube_error);
  void check_base(Context& ctx, const SysResult& sys, const TermP& base);
  std::pair<TermP, TermP> infer_comp(Context& ctx, const TermP& t);
  std::pair<TermP, TermP> infer_hcomp(Context& ctx, const TermP& t);
  std::pair<TermP, TermP> infer_trans(Context& ctx, const TermP& t);
  std::pair<TermP, TermP> infer_tick_app(Context& ctx, const TermP& t);
  std::pair<TermP, TermP> infer_force_app(Context& ctx, const TermP& t);
  std::pair<TermP, TermP> infer_fix(Context& ctx, const TermP& t, const TermP* expected);
  std::pair<TermP, TermP> infer_elim(Context& ctx, const TermP& t);
  TermP check_con(Context& ctx, const TermP& t, const TermP& expected);
  TermP check_data(Context& ctx, const TermP& t);

  // Boundary terms of signatures.
  TermP check_boundary(Context& ctx, const TermP& t, const HitSignature& sig, int label_index,
                       int xbase, int nrec);

  void check_interval(const Context& ctx, const Interval& r);
  void check_face(const Context& ctx, const Face& f);
  void check_clock(const Context& ctx, ClockRef k);
  // Pushes the clause as a face entry; false when it contradicts ctx.
  bool assume(Context& ctx, const Face::Clause& c);

  [[noreturn]] void mismatch(const Context& ctx, ErrorClass c, const std::string& msg,
                             const TermP& expected, const TermP& actual);

  Globals& g_;
  Eval& ev_;
};

// Case-boundary interpretation for induction under clocks.
struct ElimFrame {
  const HitSignature* sig = nullptr;
  int n = 0;                      // clock count
  std::vector<TermP> params;      // in the ambient scope under n clocks
  TermP motive;                   // in the ambient scope plus h
  std::vector<TermP> cases;       // elaborated cases so far
  int m = 0, r = 0, psi = 0;      // shape of the current case scope
};

// Interprets a boundary term of the current constructor into the case scope
// (ambient, gamma, x, y, ivars).
TermP boundary_interpret(const ElimFrame& f, const TermP& bterm);

}  // namespace cctt
