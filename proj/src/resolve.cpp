#include "cctt/resolve.hpp"

#include <algorithm>

namespace cctt {

namespace {

[[noreturn]] void fail(ErrorClass c, Span sp, std::string msg) {
  Diagnostic d;
  d.cls = c;
  d.span = sp;
  d.message = std::move(msg);
  throw CheckError(d);
}

TermP at(TermP t, Span sp) {
  std::const_pointer_cast<Term>(t)->span = sp;
  return t;
}

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Term: return "a term variable";
    case Sort::Clock: return "a clock";
    case Sort::Tick: return "a tick";
    case Sort::Interval: return "an interval variable";
  }
  return "?";
}

// Head name of the final codomain of a Pi/arrow type.
const Raw* codomain_head(const Raw* t) {
  while (t->kind == RK::Pi || t->kind == RK::Arrow) t = t->kids[1].get();
  while (t->kind == RK::App) t = t->kids[0].get();
  return t;
}

}  // namespace

bool Resolver::lookup(const std::string& name, Found& out) const {
  for (int p = static_cast<int>(env_.size()) - 1; p >= 0; --p) {
    if (env_[p].first != name) continue;
    Sort s = env_[p].second;
    int idx = 0;
    for (size_t q = p + 1; q < env_.size(); ++q)
      if (env_[q].second == s) ++idx;
    out = {s, idx};
    return true;
  }
  return false;
}

std::optional<Resolver::CtorInfo> Resolver::ctor(const std::string& label) const {
  if (auto it = local_ctors_.find(label); it != local_ctors_.end()) return it->second;
  auto it = g_.ctor_owner.find(label);
  if (it == g_.ctor_owner.end()) return std::nullopt;
  const HitSignature* sig = g_.sig(it->second);
  if (!sig) return std::nullopt;
  const Constructor* c = sig->find(label);
  if (!c) return std::nullopt;
  return CtorInfo{sig->name, c->arg_count(), c->rec_count(), c->ivar_count()};
}

bool Resolver::is_type(const std::string& name) const {
  return name == local_type_ || g_.sig(name) != nullptr;
}

Interval Resolver::interval(const RawIv& r) {
  switch (r.k) {
    case RawIv::K::Zero: return Interval::zero();
    case RawIv::K::One: return Interval::one();
    case RawIv::K::Name: {
      Found f;
      if (!lookup(r.name, f)) fail(ErrorClass::UnboundVariable, r.span, "unbound interval variable " + r.name);
      if (f.sort != Sort::Interval)
        fail(ErrorClass::UnboundVariable, r.span, r.name + " is " + sort_name(f.sort) + ", not an interval variable");
      return Interval::var(f.idx);
    }
    case RawIv::K::Neg: return ~interval(r.kids[0]);
    case RawIv::K::Meet: return interval(r.kids[0]) & interval(r.kids[1]);
    case RawIv::K::Join: return interval(r.kids[0]) | interval(r.kids[1]);
  }
  return Interval::zero();
}

Face Resolver::face(const RawFace& f) {
  switch (f.k) {
    case RawFace::K::Bot: return Face::bot();
    case RawFace::K::Top: return Face::top();
    case RawFace::K::Eq: return face_of_equation(interval(f.iv), f.one);
    case RawFace::K::And: return face(f.kids[0]) & face(f.kids[1]);
    case RawFace::K::Or: return face(f.kids[0]) | face(f.kids[1]);
  }
  return Face::bot();
}

Tick Resolver::tick(const RawTick& u) {
  switch (u.k) {
    case RawTick::K::Diamond: return Tick::diamond();
    case RawTick::K::Name: {
      Found f;
      if (!lookup(u.name, f)) fail(ErrorClass::NotATick, u.span, "unbound tick " + u.name);
      if (f.sort != Sort::Tick) fail(ErrorClass::NotATick, u.span, u.name + " is " + sort_name(f.sort) + ", not a tick");
      return Tick::var(f.idx);
    }
    case RawTick::K::Tirr: return Tick::tirr(tick(u.kids[0]), tick(u.kids[1]), interval(u.iv));
  }
  return Tick::diamond();
}

ClockRef Resolver::clock(const std::string& name, Span sp) {
  Found f;
  if (!lookup(name, f)) {
    if (name == "k0") return ClockRef::k0();
    fail(ErrorClass::UnboundVariable, sp, "unbound clock " + name);
  }
  if (f.sort != Sort::Clock) fail(ErrorClass::ClockMismatch, sp, name + " is " + sort_name(f.sort) + ", not a clock");
  return ClockRef{f.idx};
}

TermP Resolver::term(const RawP& t) { return at(term_(t), t->span); }

TermP Resolver::spine(const RawP& t) {
  std::vector<const Raw*> items;
  const Raw* h = t.get();
  while (h->kind == RK::App || h->kind == RK::PApp) {
    items.push_back(h);
    h = h->kids[0].get();
  }
  std::reverse(items.begin(), items.end());
  Found f;
  if (h->kind == RK::Name && !lookup(h->name, f)) {
    if (auto ci = ctor(h->name)) {
      std::vector<TermP> args;
      std::vector<Interval> ivs;
      bool ordered = true;
      for (auto* it : items) {
        if (it->kind == RK::App) {
          ordered = ordered && ivs.empty();
          args.push_back(term(it->kids[1]));
        } else {
          ivs.push_back(interval(it->iv));
        }
      }
      if (!ordered || static_cast<int>(args.size()) != ci->args + ci->recs || static_cast<int>(ivs.size()) != ci->ivars)
        fail(ErrorClass::ArityMismatch, t->span,
             "constructor " + h->name + " takes " + std::to_string(ci->args + ci->recs) + " arguments followed by " +
                 std::to_string(ci->ivars) + " interval arguments (@ r)");
      std::vector<TermP> as(args.begin(), args.begin() + ci->args), rs(args.begin() + ci->args, args.end());
      return mk::con(ci->type, h->name, {}, as, rs, ivs);
    }
    if (is_type(h->name)) {
      std::vector<TermP> args;
      for (auto* it : items) {
        if (it->kind != RK::App) fail(ErrorClass::TypeMismatch, it->span, "type " + h->name + " is not a path");
        args.push_back(term(it->kids[1]));
      }
      return mk::data(h->name, args);
    }
  }
  TermP r;
  if (h->kind == RK::Name) {
    if (lookup(h->name, f)) {
      if (f.sort != Sort::Term)
        fail(ErrorClass::UnboundVariable, h->span, h->name + " is " + sort_name(f.sort) + ", not a term");
      r = mk::var(f.idx);
    } else if (g_.def(h->name)) {
      r = mk::global(h->name);
    } else if (judgement_only.count(h->name)) {
      fail(ErrorClass::UnboundVariable, h->span,
           h->name + " binds interval or tick variables and cannot be referenced");
    } else {
      fail(ErrorClass::UnboundVariable, h->span, "unbound name " + h->name);
    }
    r = at(r, h->span);
  } else {
    r = at(term_(std::shared_ptr<const Raw>(t, h)), h->span);
  }
  for (auto* it : items) {
    if (it->kind == RK::App)
      r = at(mk::app(r, term(it->kids[1])), it->span);
    else
      r = at(mk::papp(r, interval(it->iv)), it->span);
  }
  return r;
}

TermP Resolver::term_(const RawP& t) {
  const Raw& x = *t;
  auto scoped = [&](Sort s, const std::vector<std::string>& ns, const RawP& body) {
    for (auto& n : ns) push(n, s);
    TermP b = term(body);
    pop(ns.size());
    return b;
  };
  switch (x.kind) {
    case RK::Name:
    case RK::App:
    case RK::PApp: return spine(t);
    case RK::Univ: return mk::univ(x.num);
    case RK::Pi:
    case RK::Sigma: {
      std::vector<TermP> doms;
      for (auto& n : x.binders) {
        doms.push_back(term(x.kids[0]));
        push(n, Sort::Term);
      }
      TermP r = term(x.kids[1]);
      pop(x.binders.size());
      for (int k = static_cast<int>(doms.size()) - 1; k >= 0; --k)
        r = x.kind == RK::Pi ? mk::pi(x.binders[k], doms[k], r) : mk::sigma(x.binders[k], doms[k], r);
      return r;
    }
    case RK::Arrow: return mk::arrow(term(x.kids[0]), term(x.kids[1]));
    case RK::Prod: return mk::sigma("_", term(x.kids[0]), weaken(term(x.kids[1]), Shift::of(Sort::Term)));
    case RK::Lam: {
      TermP r = scoped(Sort::Term, x.binders, x.kids[0]);
      for (int k = static_cast<int>(x.binders.size()) - 1; k >= 0; --k) r = mk::lam(x.binders[k], r);
      return r;
    }
    case RK::PLam: {
      TermP r = scoped(Sort::Interval, x.binders, x.kids[0]);
      for (int k = static_cast<int>(x.binders.size()) - 1; k >= 0; --k) r = mk::plam(x.binders[k], r);
      return r;
    }
    case RK::CLam:
    case RK::Forall: {
      TermP r = scoped(Sort::Clock, x.binders, x.kids[0]);
      for (int k = static_cast<int>(x.binders.size()) - 1; k >= 0; --k)
        r = x.kind == RK::CLam ? mk::clam(x.binders[k], r) : mk::forall(x.binders[k], r);
      return r;
    }
    case RK::Pair: return mk::pair(term(x.kids[0]), term(x.kids[1]));
    case RK::Fst: return mk::fst(term(x.kids[0]));
    case RK::Snd: return mk::snd(term(x.kids[0]));
    case RK::Ann: return mk::ann(term(x.kids[0]), term(x.kids[1]));
    case RK::Path: return mk::path(term(x.kids[0]), term(x.kids[1]), term(x.kids[2]));
    case RK::CApp: return mk::capp(term(x.kids[0]), clock(x.clock, x.span));
    case RK::Later: {
      ClockRef k = clock(x.clock, x.span);
      return mk::later(x.binders[0], k, scoped(Sort::Tick, x.binders, x.kids[0]));
    }
    case RK::TLam: {
      ClockRef k = x.clock.empty() ? ClockRef::k0() : clock(x.clock, x.span);
      TermP r = mk::tlam(x.binders[0], k, scoped(Sort::Tick, x.binders, x.kids[0]));
      if (!x.clock.empty()) std::const_pointer_cast<Term>(r)->num = 1;
      return r;
    }
    case RK::TApp: return mk::tapp(term(x.kids[0]), tick(x.tick));
    case RK::Force: {
      ClockRef k2 = clock(x.clock, x.span);
      Tick u = tick(x.tick);
      return mk::force(x.binders[0], scoped(Sort::Clock, x.binders, x.kids[0]), k2, u);
    }
    case RK::Dfix: return mk::dfix(clock(x.clock, x.span), term(x.kids[0]));
    case RK::Pfix: return mk::pfix(clock(x.clock, x.span), term(x.kids[0]));
    case RK::Comp:
    case RK::HComp: {
      const std::string& i = x.binders[0];
      TermP a = x.kind == RK::Comp ? scoped(Sort::Interval, {i}, x.kids[0]) : term(x.kids[0]);
      TermP base = term(x.kids[1]);
      std::vector<mk::Tube> tubes;
      for (size_t k = 2; k < x.kids.size(); ++k) tubes.push_back({face(x.faces[k - 2]), scoped(Sort::Interval, {i}, x.kids[k])});
      if (x.kind == RK::Comp) return mk::comp(i, a, std::move(tubes), base);
      return mk::hcomp(i, a, std::move(tubes), base);
    }
    case RK::HFill: {
      // A path from the base to the hcomp lid, annotated so that it can be
      // applied in inference position.
      auto parts = [&] {
        TermP a = term(x.kids[0]);
        TermP base = term(x.kids[1]);
        std::vector<mk::Tube> tubes;
        for (size_t k = 2; k < x.kids.size(); ++k)
          tubes.push_back({face(x.faces[k - 2]), scoped(Sort::Interval, {x.binders[0]}, x.kids[k])});
        return std::make_tuple(a, base, tubes);
      };
      auto [a, base, tubes] = parts();
      push("", Sort::Interval);
      auto [ar, baser, tubesr] = parts();
      pop();
      TermP fill = mk::plam("r", hfill(ar, tubesr, baser, Interval::var(0)));
      return mk::ann(fill, mk::path(a, base, mk::hcomp(x.binders[0], a, std::move(tubes), base)));
    }
    case RK::Trans: {
      TermP a = scoped(Sort::Interval, x.binders, x.kids[0]);
      return mk::trans(x.binders[0], a, face(x.faces[0]), term(x.kids[1]));
    }
    case RK::Elim: {
      TermP scrut = term(x.kids[0]);
      if (x.cases.empty()) fail(ErrorClass::CannotInfer, x.span, "eliminator without cases");
      auto owner = ctor(x.cases[0].ctor);
      if (!owner) fail(ErrorClass::UnknownConstructor, x.cases[0].span, "unknown constructor " + x.cases[0].ctor);
      const HitSignature* sig = g_.sig(owner->type);
      if (!sig) fail(ErrorClass::UnboundVariable, x.span, "type " + owner->type + " is not declared yet");
      int nc = static_cast<int>(sig->ctors.size());
      std::vector<int> slot(nc, -1);
      for (size_t k = 0; k < x.cases.size(); ++k) {
        int idx = sig->index_of(x.cases[k].ctor);
        if (idx < 0)
          fail(ErrorClass::UnknownConstructor, x.cases[k].span, x.cases[k].ctor + " is not a constructor of " + sig->name);
        if (slot[idx] >= 0) fail(ErrorClass::DuplicateName, x.cases[k].span, "second case for " + x.cases[k].ctor);
        slot[idx] = static_cast<int>(k);
      }
      for (int c = 0; c < nc; ++c)
        if (slot[c] < 0) fail(ErrorClass::CaseMissing, x.span, "no case for constructor " + sig->ctors[c].label);
      TermP motive = scoped(Sort::Term, {x.binders[0]}, x.kids[1]);
      std::vector<mk::Case> cases;
      for (int c = 0; c < nc; ++c) {
        const RawCase& rc = x.cases[slot[c]];
        const Constructor& k = sig->ctors[c];
        int m = k.arg_count(), r = k.rec_count(), psi = k.ivar_count();
        if (static_cast<int>(rc.names.size()) != m + r + psi || static_cast<int>(rc.ihs.size()) != r)
          fail(ErrorClass::ArityMismatch, rc.span,
               "case " + rc.ctor + " binds " + std::to_string(m + r + psi) + " variables and " + std::to_string(r) +
                   " induction hypotheses");
        mk::Case out;
        for (int q = 0; q < m + r; ++q) out.names.push_back(rc.names[q]);
        for (auto& y : rc.ihs) out.names.push_back(y);
        for (int q = 0; q < psi; ++q) out.names.push_back(rc.names[m + r + q]);
        size_t d = depth();
        for (int q = 0; q < m + 2 * r; ++q) push(out.names[q], Sort::Term);
        for (int q = 0; q < psi; ++q) push(out.names[m + 2 * r + q], Sort::Interval);
        out.body = term(rc.body);
        truncate(d);
        out.terms = m + 2 * r;
        out.ivars = psi;
        cases.push_back(std::move(out));
      }
      return mk::elim(sig->name, x.num, {}, x.binders[0], motive, std::move(cases), scrut);
    }
  }
  fail(ErrorClass::ParseError, x.span, "unsupported expression");
}

std::vector<Entry> Resolver::rec_xi(const RawP& type, const std::string& data, int nparams, Span sp) {
  std::vector<Entry> xi;
  size_t d0 = depth();
  const Raw* cur = type.get();
  RawP keep = type;
  for (;;) {
    if (cur->kind == RK::Pi) {
      for (auto& n : cur->binders) {
        Entry e;
        e.name = n;
        e.type = term(cur->kids[0]);
        xi.push_back(e);
        push(n, Sort::Term);
      }
    } else if (cur->kind == RK::Arrow) {
      Entry e;
      e.name = "_";
      e.type = term(cur->kids[0]);
      xi.push_back(e);
      push("_", Sort::Term);
    } else {
      break;
    }
    keep = cur->kids[1];
    cur = keep.get();
  }
  TermP cod = term(keep);
  int nterms = 0;
  for (auto& e : env_)
    if (e.second == Sort::Term) ++nterms;
  bool ok = cod->kind == Kind::Data && cod->name == data && static_cast<int>(cod->kids.size()) == nparams;
  for (int p = 0; ok && p < nparams; ++p)
    ok = cod->kids[p]->kind == Kind::Var && cod->kids[p]->num == nterms - 1 - p;
  if (!ok)
    fail(ErrorClass::IllTypedEntry, sp, "recursive argument must end in " + data + " applied to its parameters");
  truncate(d0);
  return xi;
}

HitSignature Resolver::signature(const RawDecl& d) {
  HitSignature sig;
  sig.name = d.name;
  size_t d0 = depth();
  local_type_ = d.name;
  local_ctors_.clear();
  struct Reset {
    Resolver& r;
    size_t d;
    ~Reset() {
      r.truncate(d);
      r.local_type_.clear();
      r.local_ctors_.clear();
    }
  } reset{*this, d0};

  auto entry_of = [&](const RawBinder& b) {
    Entry e;
    e.name = b.name;
    switch (b.cls) {
      case RawBinder::Cls::Term:
        e.sort = EntrySort::TermVar;
        e.type = term(b.type);
        break;
      case RawBinder::Cls::Interval: e.sort = EntrySort::Interval; break;
      case RawBinder::Cls::Clock: e.sort = EntrySort::Clock; break;
      case RawBinder::Cls::Tick:
        e.sort = EntrySort::Tick;
        e.clock = clock(b.clock, b.span);
        break;
    }
    return e;
  };
  auto sort_of = [](const RawBinder& b) {
    switch (b.cls) {
      case RawBinder::Cls::Term: return Sort::Term;
      case RawBinder::Cls::Interval: return Sort::Interval;
      case RawBinder::Cls::Clock: return Sort::Clock;
      case RawBinder::Cls::Tick: return Sort::Tick;
    }
    return Sort::Term;
  };

  for (auto& b : d.params) {
    sig.params.push_back(entry_of(b));
    push(b.name, sort_of(b));
  }
  int np = static_cast<int>(sig.params.size());

  // 0 = argument, 1 = recursive argument, 2 = interval
  auto classify = [&](const RawBinder& b) {
    if (b.cls == RawBinder::Cls::Interval) return 2;
    if (b.cls != RawBinder::Cls::Term)
      fail(ErrorClass::NonProperEntry, b.span, "constructor binder " + b.name + " must be a term or interval variable");
    const Raw* h = codomain_head(b.type.get());
    return h->kind == RK::Name && h->name == d.name ? 1 : 0;
  };
  for (auto& c : d.ctors) {
    CtorInfo info{d.name, 0, 0, 0};
    int last = 0;
    for (auto& b : c.binders) {
      int k = classify(b);
      if (k < last)
        fail(ErrorClass::NonProperEntry, b.span,
             "constructor binders must list arguments, then recursive arguments, then intervals");
      last = k;
      (k == 0 ? info.args : k == 1 ? info.recs : info.ivars)++;
    }
    if (local_ctors_.count(c.label)) fail(ErrorClass::DuplicateName, c.span, "constructor " + c.label + " declared twice");
    local_ctors_[c.label] = info;
  }

  for (auto& c : d.ctors) {
    Constructor k;
    k.label = c.label;
    size_t dc = depth();
    std::vector<const RawBinder*> recs;
    for (auto& b : c.binders) {
      int cls = classify(b);
      if (cls == 0) {
        k.gamma.push_back(entry_of(b));
        push(b.name, Sort::Term);
      } else if (cls == 1) {
        recs.push_back(&b);
      } else {
        k.ivars.push_back(b.name);
      }
    }
    for (auto* b : recs) k.recs.push_back({b->name, rec_xi(b->type, d.name, np, b->span)});
    for (auto* b : recs) push(b->name, Sort::Term);
    for (auto& i : k.ivars) push(i, Sort::Interval);
    Face covered = Face::bot();
    for (auto& [f, body] : c.sys) {
      Constructor::Side side;
      side.face = face(f);
      side.term.term = term(body);
      covered = covered | side.face;
      k.boundary.push_back(std::move(side));
    }
    k.phi = c.on ? face(*c.on) : covered;
    truncate(dc);
    sig.ctors.push_back(std::move(k));
  }
  return sig;
}

}  // namespace cctt
