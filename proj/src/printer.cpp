#include <algorithm>
#include <functional>

#include "cctt/syntax.hpp"

namespace cctt {

namespace {

struct Names {
  std::vector<std::string> st[4];  // per sort, innermost last

  std::vector<std::string>& of(Sort s) { return st[static_cast<int>(s)]; }

  std::string get(Sort s, int idx) {
    auto& v = of(s);
    if (idx < 0) return s == Sort::Clock ? "k0" : "#?";
    if (idx >= static_cast<int>(v.size())) return "#" + std::to_string(idx);
    return v[v.size() - 1 - idx];
  }

  bool used(const std::string& n) const {
    for (auto& v : st)
      if (std::find(v.begin(), v.end(), n) != v.end()) return true;
    return n == "k0";
  }

  std::string fresh(std::string base) {
    if (base.empty() || base == "_") base = "x";
    std::string n = base;
    for (int k = 1; used(n); ++k) n = base + std::to_string(k);
    return n;
  }

  std::string bind(Sort s, const std::string& base) {
    std::string n = fresh(base);
    of(s).push_back(n);
    return n;
  }
  void unbind(Sort s, int n = 1) { of(s).resize(of(s).size() - n); }
};

class Printer {
 public:
  explicit Printer(Names n) : nm_(std::move(n)) {}

  std::string term(const TermP& t, int prec = 0);
  std::string tick(const Tick& u);

 private:
  std::string iv(const Interval& r, bool atom) {
    std::string s = to_string(r, [&](int v) { return nm_.get(Sort::Interval, v); });
    if (atom && s.find(' ') != std::string::npos) return "(" + s + ")";
    return s;
  }
  std::string face(const Face& f) {
    return to_string(f, [&](int v) { return nm_.get(Sort::Interval, v); });
  }
  std::string clock(ClockRef k) { return nm_.get(Sort::Clock, k.idx); }
  std::string paren(bool p, const std::string& s) { return p ? "(" + s + ")" : s; }
  std::string system(const Term& t, size_t from, const std::string& bound);
  Names nm_;
};

std::string Printer::tick(const Tick& u) {
  switch (u.k) {
    case Tick::K::Var: return nm_.get(Sort::Tick, u.idx);
    case Tick::K::Diamond: return "<>";
    case Tick::K::Tirr: return "tirr(" + tick(*u.u) + ", " + tick(*u.v) + ", " + iv(u.r, false) + ")";
  }
  return "?";
}

std::string Printer::system(const Term& t, size_t from, const std::string& bound) {
  std::string out = "[";
  for (size_t k = from; k < t.kids.size(); ++k) {
    if (k > from) out += ", ";
    std::string f = face(t.faces[k - from]);
    nm_.bind(Sort::Interval, bound);
    out += f + " -> " + term(t.kids[k]);
    nm_.unbind(Sort::Interval);
  }
  return out + "]";
}

std::string Printer::term(const TermP& t, int prec) {
  const Term& x = *t;
  auto name0 = [&](const char* dflt) { return x.names.empty() ? std::string(dflt) : x.names[0]; };
  switch (x.kind) {
    case Kind::Var: return nm_.get(Sort::Term, x.num);
    case Kind::Global: return x.name;
    case Kind::Univ: return "U" + std::to_string(x.num);
    case Kind::Pi:
    case Kind::Sigma: {
      std::string a = term(x.kids[0], 2);
      bool dep = occurs(x.kids[1], Sort::Term, 0);
      std::string n = nm_.bind(Sort::Term, name0("x"));
      std::string b = term(x.kids[1], 1);
      nm_.unbind(Sort::Term);
      std::string op = x.kind == Kind::Pi ? " -> " : " * ";
      std::string dom = dep || x.kind == Kind::Sigma ? "(" + n + " : " + term(x.kids[0]) + ")" : a;
      return paren(prec > 1, dom + op + b);
    }
    case Kind::Lam: {
      std::string n = nm_.bind(Sort::Term, name0("x"));
      std::string b = term(x.kids[0]);
      nm_.unbind(Sort::Term);
      return paren(prec > 0, "\\" + n + ". " + b);
    }
    case Kind::App: return paren(prec > 2, term(x.kids[0], 2) + " " + term(x.kids[1], 3));
    case Kind::Pair: return "(" + term(x.kids[0]) + ", " + term(x.kids[1]) + ")";
    case Kind::Fst: return term(x.kids[0], 3) + ".1";
    case Kind::Snd: return term(x.kids[0], 3) + ".2";
    case Kind::Path:
      return paren(prec > 2, "Path " + term(x.kids[0], 3) + " " + term(x.kids[1], 3) + " " +
                                 term(x.kids[2], 3));
    case Kind::PLam: {
      std::string n = nm_.bind(Sort::Interval, name0("i"));
      std::string b = term(x.kids[0]);
      nm_.unbind(Sort::Interval);
      return paren(prec > 0, "<" + n + "> " + b);
    }
    case Kind::PApp: return paren(prec > 2, term(x.kids[0], 2) + " @ " + iv(x.ivs[0], true));
    case Kind::Forall:
    case Kind::ClockLam: {
      std::string n = nm_.bind(Sort::Clock, name0("k"));
      std::string b = term(x.kids[0]);
      nm_.unbind(Sort::Clock);
      return paren(prec > 0, (x.kind == Kind::Forall ? "forall " : "/\\") + n + ". " + b);
    }
    case Kind::ClockApp: return paren(prec > 2, term(x.kids[0], 2) + " {" + clock(x.clocks[0]) + "}");
    case Kind::Later:
    case Kind::TickLam: {
      std::string k = clock(x.clocks[0]);
      std::string n = nm_.bind(Sort::Tick, name0("a"));
      std::string b = term(x.kids[0], x.kind == Kind::Later ? 3 : 0);
      nm_.unbind(Sort::Tick);
      if (x.kind == Kind::Later) return paren(prec > 2, "|> (" + n + " : " + k + ") " + b);
      return paren(prec > 0, "tick " + n + " : " + k + ". " + b);
    }
    case Kind::TickApp: return paren(prec > 2, term(x.kids[0], 2) + " [" + tick(x.ticks[0]) + "]");
    case Kind::ForceApp: {
      std::string k2 = clock(x.clocks[0]);
      std::string u = tick(x.ticks[0]);
      std::string n = nm_.bind(Sort::Clock, name0("k"));
      std::string b = term(x.kids[0]);
      nm_.unbind(Sort::Clock);
      return paren(prec > 2, "(" + n + ". " + b + ") [" + k2 + ", " + u + "]");
    }
    case Kind::Dfix:
    case Kind::Pfix:
      return paren(prec > 2, std::string(x.kind == Kind::Dfix ? "dfix " : "pfix ") + clock(x.clocks[0]) +
                                 " " + term(x.kids[0], 3));
    case Kind::Comp:
    case Kind::HComp: {
      std::string bound = x.kind == Kind::Comp ? name0("i") : (x.names.empty() ? "j" : x.names[0]);
      std::string a;
      if (x.kind == Kind::Comp) {
        nm_.bind(Sort::Interval, bound);
        a = term(x.kids[0], 3);
        bound = nm_.of(Sort::Interval).back();
        nm_.unbind(Sort::Interval);
      } else {
        a = term(x.kids[0], 3);
        bound = nm_.fresh(bound);
      }
      std::string sys = system(x, 2, bound);
      std::string head = x.kind == Kind::Comp ? "comp^" : "hcomp^";
      return paren(prec > 2, head + bound + " " + a + " " + sys + " " + term(x.kids[1], 3));
    }
    case Kind::Trans: {
      std::string n = nm_.bind(Sort::Interval, name0("i"));
      std::string a = term(x.kids[0], 3);
      nm_.unbind(Sort::Interval);
      return paren(prec > 2, "trans^" + n + " " + a + " [" + face(x.faces[0]) + "] " + term(x.kids[1], 3));
    }
    case Kind::Data: {
      std::string out = x.name;
      for (auto& k : x.kids) out += " " + term(k, 3);
      return paren(prec > 2 && !x.kids.empty(), out);
    }
    case Kind::Con: {
      std::string out = x.label;
      for (int k = 0; k < x.counts[1] + x.counts[2]; ++k) out += " " + term(x.kids[x.counts[0] + k], 3);
      for (auto& r : x.ivs) out += " " + iv(r, true);
      bool bare = x.counts[1] + x.counts[2] == 0 && x.ivs.empty();
      return paren(prec > 2 && !bare, out);
    }
    case Kind::Elim: {
      std::string out = "clockelim^" + std::to_string(x.num) + " " + term(x.kids.back(), 3) + " into (";
      size_t ni = x.counts[0] * x.num;
      std::string h = nm_.bind(Sort::Term, x.names.size() > ni ? x.names[ni] : "h");
      out += h + ". " + term(elim_motive(x)) + ") with";
      nm_.unbind(Sort::Term);
      ++ni;
      for (int c = 0; c < x.counts[1]; ++c) {
        const Shift& b = x.binds[x.counts[0] + 1 + c];
        std::vector<std::string> ns;
        for (int k = 0; k < b.term + b.ival; ++k) ns.push_back(ni < x.names.size() ? x.names[ni++] : "x");
        std::vector<std::string> bound;
        for (int k = 0; k < b.term; ++k) bound.push_back(nm_.bind(Sort::Term, ns[k]));
        for (int k = 0; k < b.ival; ++k) bound.push_back(nm_.bind(Sort::Interval, ns[b.term + k]));
        out += " | #" + std::to_string(c);
        for (auto& n : bound) out += " " + n;
        out += " => " + term(elim_case(x, c));
        nm_.unbind(Sort::Term, b.term);
        nm_.unbind(Sort::Interval, b.ival);
      }
      return paren(prec > 0, out);
    }
    case Kind::Ann: return "(" + term(x.kids[0]) + " : " + term(x.kids[1]) + ")";
  }
  return "?";
}

Names names_of(const Context* ctx) {
  Names n;
  if (!ctx) return n;
  for (auto& e : ctx->entries) {
    if (e.constant) continue;
    switch (e.sort) {
      case EntrySort::TermVar: n.of(Sort::Term).push_back(e.name); break;
      case EntrySort::Clock: n.of(Sort::Clock).push_back(e.name); break;
      case EntrySort::Tick: n.of(Sort::Tick).push_back(e.name); break;
      case EntrySort::Interval: n.of(Sort::Interval).push_back(e.name); break;
      case EntrySort::Face: break;
    }
  }
  return n;
}

}  // namespace

std::string print(const TermP& t, const Context* ctx) { return Printer(names_of(ctx)).term(t); }

std::string print(const Tick& u, const Context* ctx) { return Printer(names_of(ctx)).tick(u); }

}  // namespace cctt
