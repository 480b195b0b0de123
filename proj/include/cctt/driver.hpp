#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cctt/checker.hpp"
#include "cctt/eval.hpp"
#include "cctt/resolve.hpp"
#include "cctt/surface.hpp"

namespace cctt {

struct Options {
  long max_steps = 1000000;
  bool trace_conv = false;
  // Declarations checked before every file (not reported per file).
  std::optional<std::string> prelude;
  // Worker threads for multi-file runs; 0 picks the hardware concurrency.
  int jobs = 0;
  // Record every derived judgement in Session::log.
  bool record = false;
};

enum class Verdict { Pass, Fail, Skip };

struct DeclResult {
  std::string decl;
  Verdict verdict = Verdict::Pass;
  std::string detail;  // diagnostic for failures
};

struct Report {
  std::string file;
  std::vector<DeclResult> decls;
  std::string trace;
  bool io_error = false;

  bool ok() const;
  // PASS|FAIL|SKIP lines, failure diagnostics indented below their line.
  std::string render() const;
};

struct Summary {
  std::vector<Report> reports;
  int pass = 0, fail = 0, skip = 0;
  bool io_error = false;

  int exit_code() const { return io_error ? 2 : fail > 0 ? 1 : 0; }
  std::string render() const;
};

// One checking state: globals, evaluator, checker and name resolution.
class Session {
 public:
  explicit Session(const Options& o = {});
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  // Checks a declaration and registers it; throws CheckError on failure.
  void declare(const RawDecl& d);
  // Checks declarations in order against their expectations.
  std::vector<DeclResult> run(const Module& m);

  // Expression-level entry points in the context holding only k0.
  TermP elaborate(const std::string& expr, const std::string& type);
  TermP infer(const std::string& expr);
  bool conv(const std::string& lhs, const std::string& rhs, const std::string& type);
  TermP resolve(const std::string& expr);

  Globals& globals() { return g_; }
  Eval& eval() { return ev_; }
  Checker& checker() { return ch_; }
  Resolver& resolver() { return rs_; }

  std::vector<Judgement> log;
  std::ostringstream trace;

 private:
  // Resolves and checks the binders of d, pushing them onto ctx and the resolver.
  void telescope(Context& ctx, const std::vector<RawBinder>& bs);
  // Leaves the binders of a definition in ctx and the resolver for pragmas.
  void declare_(const RawDecl& d, Context& ctx);
  bool eval_pragma(Context& ctx, const Pragma& p, std::string& detail);

  Options opt_;
  Globals g_;
  Eval ev_;
  Checker ch_;
  Resolver rs_;
};

Report check_source(const std::string& file, const std::string& text, const Options& o,
                    const Module* prelude = nullptr);
Report check_file(const std::string& path, const Options& o);
// Checks files concurrently; reports come back in the given order.
Summary run_files(const std::vector<std::string>& paths, const Options& o);
// All .cctt files below dir in path order. A top-level prelude.cctt is used
// as the prelude of every other file.
Summary run_corpus(const std::string& dir, Options o);

}  // namespace cctt
