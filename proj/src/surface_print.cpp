#include <sstream>

#include "cctt/surface.hpp"

namespace cctt {

namespace {

// Precedence levels: 0 binder forms and arrows, 1 products, 2 later,
// 3 applications, 4 atoms.
int level(RK k) {
  switch (k) {
    case RK::Lam:
    case RK::PLam:
    case RK::CLam:
    case RK::Forall:
    case RK::TLam:
    case RK::Pi:
    case RK::Sigma:
    case RK::Arrow:
    case RK::Elim: return 0;
    case RK::Prod: return 1;
    case RK::Later: return 2;
    case RK::App:
    case RK::PApp:
    case RK::CApp:
    case RK::TApp:
    case RK::Path:
    case RK::Dfix:
    case RK::Pfix:
    case RK::Comp:
    case RK::HComp:
    case RK::HFill:
    case RK::Trans:
    case RK::Force: return 3;
    case RK::Name:
    case RK::Univ:
    case RK::Pair:
    case RK::Ann:
    case RK::Fst:
    case RK::Snd: return 4;
  }
  return 4;
}

std::string iv(const RawIv& r, int prec) {
  auto wrap = [&](int own, std::string s) { return own < prec ? "(" + s + ")" : s; };
  switch (r.k) {
    case RawIv::K::Zero: return "0";
    case RawIv::K::One: return "1";
    case RawIv::K::Name: return r.name;
    case RawIv::K::Neg: return wrap(2, "~" + iv(r.kids[0], 2));
    case RawIv::K::Meet: return wrap(1, iv(r.kids[0], 1) + " /\\ " + iv(r.kids[1], 2));
    case RawIv::K::Join: return wrap(0, iv(r.kids[0], 0) + " \\/ " + iv(r.kids[1], 1));
  }
  return "?";
}

std::string face(const RawFace& f, int prec) {
  auto wrap = [&](int own, std::string s) { return own < prec ? "(" + s + ")" : s; };
  switch (f.k) {
    case RawFace::K::Bot: return "0";
    case RawFace::K::Top: return "1";
    case RawFace::K::Eq: return "(" + iv(f.iv, 0) + " = " + (f.one ? "1" : "0") + ")";
    case RawFace::K::And: return wrap(1, face(f.kids[0], 1) + " /\\ " + face(f.kids[1], 2));
    case RawFace::K::Or: return wrap(0, face(f.kids[0], 0) + " \\/ " + face(f.kids[1], 1));
  }
  return "?";
}

std::string tick(const RawTick& u) {
  switch (u.k) {
    case RawTick::K::Name: return u.name;
    case RawTick::K::Diamond: return "<>";
    case RawTick::K::Tirr: return "tirr(" + tick(u.kids[0]) + ", " + tick(u.kids[1]) + ", " + iv(u.iv, 0) + ")";
  }
  return "?";
}

std::string names(const std::vector<std::string>& ns) {
  std::string s;
  for (size_t k = 0; k < ns.size(); ++k) s += (k ? " " : "") + ns[k];
  return s;
}

std::string term(const RawP& t, int prec);

std::string system(const Raw& t, size_t from) {
  std::string s = "[";
  for (size_t k = from; k < t.kids.size(); ++k) {
    if (k > from) s += ", ";
    s += face(t.faces[k - from], 0) + " -> " + term(t.kids[k], 0);
  }
  return s + "]";
}

std::string term(const RawP& t, int prec) {
  const Raw& x = *t;
  std::string s;
  switch (x.kind) {
    case RK::Name: s = x.name; break;
    case RK::Univ: s = "U" + std::to_string(x.num); break;
    case RK::Pi:
    case RK::Sigma:
      s = "(" + names(x.binders) + " : " + term(x.kids[0], 0) + ")" + (x.kind == RK::Pi ? " -> " : " * ") +
          term(x.kids[1], 0);
      break;
    case RK::Arrow: s = term(x.kids[0], 1) + " -> " + term(x.kids[1], 0); break;
    case RK::Prod: s = term(x.kids[0], 2) + " * " + term(x.kids[1], 1); break;
    case RK::Lam: s = "\\" + names(x.binders) + ". " + term(x.kids[0], 0); break;
    case RK::PLam: s = "<" + names(x.binders) + "> " + term(x.kids[0], 0); break;
    case RK::CLam: s = "/\\" + names(x.binders) + ". " + term(x.kids[0], 0); break;
    case RK::Forall: s = "forall " + names(x.binders) + ". " + term(x.kids[0], 0); break;
    case RK::TLam:
      s = "tick " + x.binders[0] + (x.clock.empty() ? "" : " : " + x.clock) + ". " + term(x.kids[0], 0);
      break;
    case RK::App: s = term(x.kids[0], 3) + " " + term(x.kids[1], 4); break;
    case RK::Pair: s = "(" + term(x.kids[0], 0) + ", " + term(x.kids[1], 0) + ")"; break;
    case RK::Fst: s = term(x.kids[0], 4) + ".1"; break;
    case RK::Snd: s = term(x.kids[0], 4) + ".2"; break;
    case RK::Ann: s = "(" + term(x.kids[0], 0) + " : " + term(x.kids[1], 0) + ")"; break;
    case RK::Path:
      s = "Path " + term(x.kids[0], 4) + " " + term(x.kids[1], 4) + " " + term(x.kids[2], 4);
      break;
    case RK::PApp: s = term(x.kids[0], 3) + " @ " + iv(x.iv, 2); break;
    case RK::CApp: s = term(x.kids[0], 3) + " {" + x.clock + "}"; break;
    case RK::Later: s = "|> (" + x.binders[0] + " : " + x.clock + ") " + term(x.kids[0], 2); break;
    case RK::TApp: s = term(x.kids[0], 3) + " [" + tick(x.tick) + "]"; break;
    case RK::Force:
      s = "(" + x.binders[0] + ". " + term(x.kids[0], 0) + ") [" + x.clock + ", " + tick(x.tick) + "]";
      break;
    case RK::Dfix:
    case RK::Pfix:
      s = std::string(x.kind == RK::Dfix ? "dfix " : "pfix ") + x.clock + " " + term(x.kids[0], 4);
      break;
    case RK::Comp:
    case RK::HComp:
    case RK::HFill: {
      const char* kw = x.kind == RK::Comp ? "comp^" : x.kind == RK::HComp ? "hcomp^" : "hfill^";
      s = kw + x.binders[0] + " " + term(x.kids[0], 4) + " " + system(x, 2) + " " + term(x.kids[1], 4);
      break;
    }
    case RK::Trans:
      s = "trans^" + x.binders[0] + " " + term(x.kids[0], 4) + " [" + face(x.faces[0], 0) + "] " +
          term(x.kids[1], 4);
      break;
    case RK::Elim: {
      s = "clockelim^" + std::to_string(x.num) + " " + term(x.kids[0], 4) + " into (" + x.binders[0] + ". " +
          term(x.kids[1], 0) + ") with";
      for (auto& c : x.cases) {
        s += "\n    | " + c.ctor;
        if (!c.names.empty()) s += " " + names(c.names);
        if (!c.ihs.empty()) s += ", " + names(c.ihs);
        // Bodies are parenthesized so that a trailing binder form cannot
        // capture the next case.
        s += " => " + term(c.body, 4);
      }
      break;
    }
  }
  return level(x.kind) < prec ? "(" + s + ")" : s;
}

std::string binder(const RawBinder& b) {
  switch (b.cls) {
    case RawBinder::Cls::Term: return "(" + b.name + " : " + term(b.type, 0) + ")";
    case RawBinder::Cls::Interval: return "(" + b.name + " : I)";
    case RawBinder::Cls::Clock: return "(" + b.name + " : clock)";
    case RawBinder::Cls::Tick: return "(" + b.name + " : tick " + b.clock + ")";
  }
  return "";
}

std::string pragma(const Pragma& p) {
  switch (p.k) {
    case Pragma::K::Pass: return "--expect-pass";
    case Pragma::K::Fail: return std::string("--expect-fail(") + to_string(p.cls) + ")";
    case Pragma::K::Conv:
    case Pragma::K::NotConv:
      return std::string(p.k == Pragma::K::Conv ? "--expect-conv " : "--expect-not-conv ") + term(p.lhs, 0) +
             " = " + term(p.rhs, 0) + " : " + term(p.type, 0);
  }
  return "";
}

bool eq(const RawIv& a, const RawIv& b) {
  if (a.k != b.k || a.name != b.name || a.kids.size() != b.kids.size()) return false;
  for (size_t k = 0; k < a.kids.size(); ++k)
    if (!eq(a.kids[k], b.kids[k])) return false;
  return true;
}

bool eq(const RawFace& a, const RawFace& b) {
  if (a.k != b.k || a.one != b.one || a.kids.size() != b.kids.size()) return false;
  if (a.k == RawFace::K::Eq && !eq(a.iv, b.iv)) return false;
  for (size_t k = 0; k < a.kids.size(); ++k)
    if (!eq(a.kids[k], b.kids[k])) return false;
  return true;
}

bool eq(const RawTick& a, const RawTick& b) {
  if (a.k != b.k || a.name != b.name || a.kids.size() != b.kids.size()) return false;
  if (a.k == RawTick::K::Tirr && !eq(a.iv, b.iv)) return false;
  for (size_t k = 0; k < a.kids.size(); ++k)
    if (!eq(a.kids[k], b.kids[k])) return false;
  return true;
}

bool eq_binder(const RawBinder& a, const RawBinder& b) {
  if (a.cls != b.cls || a.name != b.name || a.clock != b.clock) return false;
  return a.cls != RawBinder::Cls::Term || raw_equal(a.type, b.type);
}

bool eq_binders(const std::vector<RawBinder>& a, const std::vector<RawBinder>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!eq_binder(a[k], b[k])) return false;
  return true;
}

}  // namespace

std::string print_raw(const RawP& t) { return term(t, 0); }

std::string print_module(const Module& m) {
  std::ostringstream out;
  for (size_t k = 0; k < m.decls.size(); ++k) {
    const RawDecl& d = m.decls[k];
    if (k) out << "\n";
    for (auto& p : d.pragmas) out << pragma(p) << "\n";
    if (d.k == RawDecl::K::Def) {
      out << "def " << d.name;
      for (auto& b : d.params) out << " " << binder(b);
      out << " : " << term(d.type, 0) << " :=\n  " << term(d.body, 0) << "\n";
    } else {
      out << "data " << d.name;
      for (auto& b : d.params) out << " " << binder(b);
      out << " where\n";
      for (auto& c : d.ctors) {
        out << "  | " << c.label;
        for (auto& b : c.binders) out << " " << binder(b);
        if (c.on) out << " on " << face(*c.on, 0);
        if (!c.sys.empty()) {
          out << " [";
          for (size_t s = 0; s < c.sys.size(); ++s)
            out << (s ? ", " : "") << face(c.sys[s].first, 0) << " -> " << term(c.sys[s].second, 0);
          out << "]";
        }
        out << "\n";
      }
    }
  }
  return out.str();
}

bool raw_equal(const RawP& a, const RawP& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->num != b->num || a->binders != b->binders ||
      a->clock != b->clock || a->kids.size() != b->kids.size() || a->faces.size() != b->faces.size() ||
      a->cases.size() != b->cases.size())
    return false;
  for (size_t k = 0; k < a->kids.size(); ++k)
    if (!raw_equal(a->kids[k], b->kids[k])) return false;
  for (size_t k = 0; k < a->faces.size(); ++k)
    if (!eq(a->faces[k], b->faces[k])) return false;
  if (a->kind == RK::PApp && !eq(a->iv, b->iv)) return false;
  if ((a->kind == RK::TApp || a->kind == RK::Force) && !eq(a->tick, b->tick)) return false;
  for (size_t k = 0; k < a->cases.size(); ++k) {
    const RawCase &x = a->cases[k], &y = b->cases[k];
    if (x.ctor != y.ctor || x.names != y.names || x.ihs != y.ihs || !raw_equal(x.body, y.body)) return false;
  }
  return true;
}

bool raw_equal(const Module& a, const Module& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t k = 0; k < a.decls.size(); ++k) {
    const RawDecl &x = a.decls[k], &y = b.decls[k];
    if (x.k != y.k || x.name != y.name || !eq_binders(x.params, y.params) || !raw_equal(x.type, y.type) ||
        !raw_equal(x.body, y.body) || x.ctors.size() != y.ctors.size() || x.pragmas.size() != y.pragmas.size())
      return false;
    for (size_t p = 0; p < x.pragmas.size(); ++p) {
      const Pragma &u = x.pragmas[p], &v = y.pragmas[p];
      if (u.k != v.k || (u.k == Pragma::K::Fail && u.cls != v.cls) || !raw_equal(u.lhs, v.lhs) ||
          !raw_equal(u.rhs, v.rhs) || !raw_equal(u.type, v.type))
        return false;
    }
    for (size_t c = 0; c < x.ctors.size(); ++c) {
      const RawCtor &u = x.ctors[c], &v = y.ctors[c];
      if (u.label != v.label || !eq_binders(u.binders, v.binders) || u.on.has_value() != v.on.has_value() ||
          (u.on && !eq(*u.on, *v.on)) || u.sys.size() != v.sys.size())
        return false;
      for (size_t s = 0; s < u.sys.size(); ++s)
        if (!eq(u.sys[s].first, v.sys[s].first) || !raw_equal(u.sys[s].second, v.sys[s].second)) return false;
    }
  }
  return true;
}

}  // namespace cctt
