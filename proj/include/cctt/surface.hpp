#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cctt/error.hpp"

namespace cctt {

// Surface interval expression.
struct RawIv {
  enum class K { Zero, One, Name, Neg, Meet, Join } k = K::Zero;
  std::string name;
  std::vector<RawIv> kids;
  Span span;
};

// Surface face formula.
struct RawFace {
  enum class K { Bot, Top, Eq, And, Or } k = K::Bot;
  RawIv iv;        // Eq
  bool one = false;
  std::vector<RawFace> kids;
  Span span;
};

struct RawTick {
  enum class K { Name, Diamond, Tirr } k = K::Diamond;
  std::string name;
  std::vector<RawTick> kids;  // Tirr
  RawIv iv;                   // Tirr
  Span span;
};

struct Raw;
using RawP = std::shared_ptr<const Raw>;

enum class RK {
  Name,     // name
  Univ,     // num
  Pi,       // binders : kids[0] -> kids[1]
  Sigma,    // binders : kids[0] * kids[1]
  Arrow,    // kids[0] -> kids[1]
  Prod,     // kids[0] * kids[1]
  Lam,      // \binders. kids[0]
  App,      // kids[0] kids[1]
  Pair,     // (kids[0], kids[1])
  Fst,      // kids[0].1
  Snd,      // kids[0].2
  Ann,      // (kids[0] : kids[1])
  Path,     // Path kids[0] kids[1] kids[2]
  PLam,     // <binders> kids[0]
  PApp,     // kids[0] @ iv
  Forall,   // forall binders. kids[0]
  CLam,     // /\binders. kids[0]
  CApp,     // kids[0] {clock}
  Later,    // |> (binders[0] : clock) kids[0]
  TLam,     // tick binders[0] [: clock]. kids[0]
  TApp,     // kids[0] [tick]
  Force,    // (binders[0]. kids[0]) [clock, tick]
  Dfix,     // dfix clock kids[0]
  Pfix,     // pfix clock kids[0]
  Comp,     // comp^binders[0] kids[0] [faces -> kids[2..]] kids[1]
  HComp,    // hcomp^binders[0] kids[0] [faces -> kids[2..]] kids[1]
  HFill,    // hfill^binders[0] kids[0] [faces -> kids[2..]] kids[1]
  Trans,    // trans^binders[0] kids[0] [faces[0]] kids[1]
  Elim,     // clockelim^num kids[0] into (binders[0]. kids[1]) with cases
};

struct RawCase {
  std::string ctor;
  std::vector<std::string> names;  // arguments, recursive arguments, intervals
  std::vector<std::string> ihs;    // induction hypotheses
  RawP body;
  Span span;
};

struct Raw {
  RK kind = RK::Name;
  Span span;
  std::string name;
  int num = 0;
  std::vector<std::string> binders;
  std::vector<RawP> kids;
  RawIv iv;
  std::vector<RawFace> faces;
  RawTick tick;
  std::string clock;  // empty when omitted
  std::vector<RawCase> cases;
};

struct RawBinder {
  enum class Cls { Term, Interval, Clock, Tick } cls = Cls::Term;
  std::string name;
  RawP type;          // Term
  std::string clock;  // Tick
  Span span;
};

struct Pragma {
  enum class K { Pass, Fail, Conv, NotConv } k = K::Pass;
  ErrorClass cls = ErrorClass::TypeMismatch;
  RawP lhs, rhs, type;
  Span span;
};

struct RawCtor {
  std::string label;
  std::vector<RawBinder> binders;
  std::optional<RawFace> on;
  std::vector<std::pair<RawFace, RawP>> sys;
  Span span;
};

struct RawDecl {
  enum class K { Def, Data } k = K::Def;
  std::string name;
  std::vector<RawBinder> params;
  RawP type, body;             // Def
  std::vector<RawCtor> ctors;  // Data
  std::vector<Pragma> pragmas;
  Span span;
};

struct Module {
  std::vector<RawDecl> decls;
};

// Throws CheckError(ParseError) with the position and the expected token class.
Module parse_module(const std::string& text);
// Parses a single expression (used by tests and the Python bindings).
RawP parse_expr(const std::string& text);

std::string print_module(const Module& m);
std::string print_raw(const RawP& t);

// Structural equality ignoring source positions.
bool raw_equal(const Module& a, const Module& b);
bool raw_equal(const RawP& a, const RawP& b);

}  // namespace cctt
