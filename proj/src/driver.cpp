#include "cctt/driver.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

namespace cctt {

namespace fs = std::filesystem;

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

std::string indent(const std::string& s) {
  std::string out = "  ";
  for (char c : s) {
    out += c;
    if (c == '\n') out += "  ";
  }
  return out;
}

const Pragma* find_pragma(const RawDecl& d, Pragma::K k) {
  for (auto& p : d.pragmas)
    if (p.k == k) return &p;
  return nullptr;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

}  // namespace

bool Report::ok() const {
  if (io_error) return false;
  return std::none_of(decls.begin(), decls.end(), [](const DeclResult& r) { return r.verdict == Verdict::Fail; });
}

std::string Report::render() const {
  std::string out;
  for (auto& r : decls) {
    out += std::string(verdict_name(r.verdict)) + " " + file + ":" + r.decl + "\n";
    if (r.verdict == Verdict::Fail && !r.detail.empty()) out += indent(r.detail) + "\n";
  }
  if (!trace.empty()) out += "-- conversion trace for " + file + "\n" + trace;
  return out;
}

std::string Summary::render() const {
  std::string out;
  for (auto& r : reports) out += r.render();
  out += std::to_string(reports.size()) + " files: " + std::to_string(pass) + " passed, " + std::to_string(fail) +
         " failed, " + std::to_string(skip) + " skipped\n";
  return out;
}

Session::Session(const Options& o)
    : opt_(o), ev_(g_, o.max_steps, o.trace_conv ? &trace : nullptr), ch_(g_, ev_), rs_(g_) {
  if (o.record) ch_.log = &log;
}

void Session::telescope(Context& ctx, const std::vector<RawBinder>& bs) {
  for (auto& b : bs) {
    switch (b.cls) {
      case RawBinder::Cls::Term: {
        TermP a = ch_.check_type(ctx, rs_.term(b.type)).first;
        ctx.push_term(b.name, a);
        rs_.push(b.name, Sort::Term);
        break;
      }
      case RawBinder::Cls::Interval:
        ctx.push_interval(b.name);
        rs_.push(b.name, Sort::Interval);
        break;
      case RawBinder::Cls::Clock:
        ctx.push_clock(b.name);
        rs_.push(b.name, Sort::Clock);
        break;
      case RawBinder::Cls::Tick: {
        ClockRef k = rs_.clock(b.clock, b.span);
        ctx.push_tick(b.name, k);
        rs_.push(b.name, Sort::Tick);
        break;
      }
    }
  }
}

void Session::declare_(const RawDecl& d, Context& ctx) {
  if (g_.def(d.name) || g_.sig(d.name) || rs_.judgement_only.count(d.name) || g_.ctor_owner.count(d.name)) {
    Diagnostic diag;
    diag.cls = ErrorClass::DuplicateName;
    diag.span = d.span;
    diag.message = d.name + " is already declared";
    throw CheckError(diag);
  }
  if (d.k == RawDecl::K::Data) {
    HitSignature sig = rs_.signature(d);
    ch_.check_hit_signature(sig);
    return;
  }
  telescope(ctx, d.params);
  TermP type = ch_.check_type(ctx, rs_.term(d.type)).first;
  TermP body = ch_.check(ctx, rs_.term(d.body), type);
  bool closable = std::all_of(d.params.begin(), d.params.end(), [](const RawBinder& b) {
    return b.cls == RawBinder::Cls::Term || b.cls == RawBinder::Cls::Clock;
  });
  if (!closable) {
    rs_.judgement_only.insert(d.name);
    return;
  }
  for (auto it = ctx.entries.rbegin(); it != ctx.entries.rend(); ++it) {
    if (it->constant) continue;
    if (it->sort == EntrySort::TermVar) {
      type = mk::pi(it->name, it->type, type);
      body = mk::lam(it->name, body);
    } else {
      type = mk::forall(it->name, type);
      body = mk::clam(it->name, body);
    }
  }
  g_.defs[d.name] = Definition{d.name, type, body};
}

void Session::declare(const RawDecl& d) {
  rs_.truncate(0);
  ev_.reset_fuel();
  Context ctx = Context::with_k0();
  try {
    declare_(d, ctx);
  } catch (...) {
    rs_.truncate(0);
    throw;
  }
  rs_.truncate(0);
}

bool Session::eval_pragma(Context& ctx, const Pragma& p, std::string& detail) {
  ev_.reset_fuel();
  TermP type = ch_.check_type(ctx, rs_.term(p.type)).first;
  TermP l = ch_.check(ctx, rs_.term(p.lhs), type);
  TermP r = ch_.check(ctx, rs_.term(p.rhs), type);
  bool eq = ch_.conv(ctx, l, r);
  bool want = p.k == Pragma::K::Conv;
  if (eq == want) return true;
  detail = std::string(want ? "expected convertible" : "expected not convertible") + " at " +
           std::to_string(p.span.line) + ":" + std::to_string(p.span.col) + "\n  lhs: " + print(l, &ctx) +
           "\n  rhs: " + print(r, &ctx);
  return false;
}

std::vector<DeclResult> Session::run(const Module& m) {
  std::vector<DeclResult> out;
  bool skipping = false;
  for (auto& d : m.decls) {
    DeclResult r{d.name, Verdict::Pass, {}};
    if (skipping) {
      r.verdict = Verdict::Skip;
      out.push_back(r);
      continue;
    }
    rs_.truncate(0);
    ev_.reset_fuel();
    Context ctx = Context::with_k0();
    std::optional<Diagnostic> err;
    try {
      declare_(d, ctx);
    } catch (const CheckError& e) {
      err = e.diag();
    } catch (const std::exception& e) {
      Diagnostic diag;
      diag.cls = ErrorClass::IllFormedRedex;
      diag.message = std::string("internal error: ") + e.what();
      err = diag;
    }
    if (const Pragma* f = find_pragma(d, Pragma::K::Fail)) {
      if (!err) {
        r.verdict = Verdict::Fail;
        r.detail = std::string("expected ") + to_string(f->cls) + ", but the declaration checked";
      } else if (err->cls != f->cls) {
        r.verdict = Verdict::Fail;
        r.detail = std::string("expected ") + to_string(f->cls) + ", got " + err->render();
      }
    } else if (err) {
      r.verdict = Verdict::Fail;
      r.detail = err->render();
      if (d.k == RawDecl::K::Data) skipping = true;
    } else {
      for (auto& p : d.pragmas) {
        if (p.k != Pragma::K::Conv && p.k != Pragma::K::NotConv) continue;
        std::string detail;
        bool ok = false;
        try {
          ok = eval_pragma(ctx, p, detail);
        } catch (const CheckError& e) {
          detail = "in conversion expectation: " + e.diag().render();
        }
        if (!ok) {
          r.verdict = Verdict::Fail;
          r.detail = detail;
          break;
        }
      }
    }
    rs_.truncate(0);
    out.push_back(std::move(r));
  }
  return out;
}

TermP Session::resolve(const std::string& expr) {
  rs_.truncate(0);
  return rs_.term(parse_expr(expr));
}

TermP Session::elaborate(const std::string& expr, const std::string& type) {
  ev_.reset_fuel();
  Context ctx = Context::with_k0();
  TermP ty = ch_.check_type(ctx, resolve(type)).first;
  return ch_.check(ctx, resolve(expr), ty);
}

TermP Session::infer(const std::string& expr) {
  ev_.reset_fuel();
  Context ctx = Context::with_k0();
  return ch_.infer(ctx, resolve(expr)).second;
}

bool Session::conv(const std::string& lhs, const std::string& rhs, const std::string& type) {
  ev_.reset_fuel();
  Context ctx = Context::with_k0();
  TermP ty = ch_.check_type(ctx, resolve(type)).first;
  TermP l = ch_.check(ctx, resolve(lhs), ty);
  TermP r = ch_.check(ctx, resolve(rhs), ty);
  return ch_.conv(ctx, l, r);
}

Report check_source(const std::string& file, const std::string& text, const Options& o, const Module* prelude) {
  Report rep;
  rep.file = file;
  Module m;
  try {
    m = parse_module(text);
  } catch (const CheckError& e) {
    bool expected = text.find("--expect-fail(ParseError)") != std::string::npos;
    rep.decls.push_back({"<module>", expected ? Verdict::Pass : Verdict::Fail, expected ? "" : e.diag().render()});
    return rep;
  }
  Session s(o);
  if (prelude) {
    for (auto& r : s.run(*prelude)) {
      if (r.verdict == Verdict::Pass) continue;
      rep.decls.push_back({"<prelude>." + r.decl, Verdict::Fail, r.detail});
    }
  }
  for (auto& r : s.run(m)) rep.decls.push_back(std::move(r));
  rep.trace = s.trace.str();
  return rep;
}

namespace {

Report check_path(const std::string& path, const Options& o, const Module* prelude) {
  auto text = read_file(path);
  if (!text) {
    Report rep;
    rep.file = path;
    rep.io_error = true;
    rep.decls.push_back({"<file>", Verdict::Fail, "IoError: cannot read " + path});
    return rep;
  }
  return check_source(path, *text, o, prelude);
}

}  // namespace

Report check_file(const std::string& path, const Options& o) { return run_files({path}, o).reports.at(0); }

Summary run_files(const std::vector<std::string>& paths, const Options& o) {
  Summary sum;
  std::optional<Module> prelude;
  std::string prelude_path;
  if (o.prelude) {
    prelude_path = fs::weakly_canonical(*o.prelude).string();
    auto text = read_file(*o.prelude);
    Report rep;
    rep.file = *o.prelude;
    if (!text) {
      rep.io_error = true;
      rep.decls.push_back({"<file>", Verdict::Fail, "IoError: cannot read prelude " + *o.prelude});
    } else {
      try {
        prelude = parse_module(*text);
      } catch (const CheckError& e) {
        rep.decls.push_back({"<module>", Verdict::Fail, e.diag().render()});
      }
    }
    if (!prelude) {
      sum.io_error = rep.io_error;
      sum.fail = 1;
      sum.reports.push_back(rep);
      return sum;
    }
  }

  std::vector<Report> out(paths.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < paths.size();) {
      bool is_prelude = prelude && fs::weakly_canonical(paths[k]).string() == prelude_path;
      out[k] = check_path(paths[k], o, is_prelude || !prelude ? nullptr : &*prelude);
    }
  };
  unsigned n = o.jobs > 0 ? static_cast<unsigned>(o.jobs) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(paths.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : out) {
    sum.io_error = sum.io_error || r.io_error;
    for (auto& d : r.decls) {
      if (d.verdict == Verdict::Pass) ++sum.pass;
      else if (d.verdict == Verdict::Fail) ++sum.fail;
      else ++sum.skip;
    }
  }
  sum.reports = std::move(out);
  return sum;
}

Summary run_corpus(const std::string& dir, Options o) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    Summary sum;
    sum.io_error = true;
    Report rep;
    rep.file = dir;
    rep.io_error = true;
    rep.decls.push_back({"<dir>", Verdict::Fail, "IoError: not a directory: " + dir});
    sum.reports.push_back(rep);
    return sum;
  }
  std::vector<std::string> paths;
  for (auto& e : fs::recursive_directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".cctt") paths.push_back(e.path().generic_string());
  std::sort(paths.begin(), paths.end());
  fs::path pre = fs::path(dir) / "prelude.cctt";
  if (!o.prelude && fs::is_regular_file(pre, ec)) o.prelude = pre.generic_string();
  return run_files(paths, o);
}

}  // namespace cctt
