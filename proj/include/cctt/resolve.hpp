#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cctt/eval.hpp"
#include "cctt/surface.hpp"
#include "cctt/syntax.hpp"

namespace cctt {

// Turns surface syntax into core terms: names become sort-separated de
// Bruijn indices, constructor and type applications become saturated nodes.
class Resolver {
 public:
  explicit Resolver(const Globals& g) : g_(g) {}

  void push(const std::string& name, Sort s) { env_.push_back({name, s}); }
  void pop(size_t n = 1) { env_.resize(env_.size() - n); }
  size_t depth() const { return env_.size(); }
  void truncate(size_t d) { env_.resize(d); }

  TermP term(const RawP& t);
  Interval interval(const RawIv& r);
  Face face(const RawFace& f);
  Tick tick(const RawTick& u);
  ClockRef clock(const std::string& name, Span sp);

  HitSignature signature(const RawDecl& d);

  // Definitions that were checked but cannot be referenced.
  std::set<std::string> judgement_only;

 private:
  struct CtorInfo {
    std::string type;
    int args = 0, recs = 0, ivars = 0;
  };
  struct Found {
    Sort sort;
    int idx;
  };
  bool lookup(const std::string& name, Found& out) const;
  std::optional<CtorInfo> ctor(const std::string& label) const;
  bool is_type(const std::string& name) const;
  TermP spine(const RawP& t);
  TermP term_(const RawP& t);
  std::vector<Entry> rec_xi(const RawP& type, const std::string& data, int nparams, Span sp);

  const Globals& g_;
  std::vector<std::pair<std::string, Sort>> env_;
  std::map<std::string, CtorInfo> local_ctors_;
  std::string local_type_;
};

}  // namespace cctt
