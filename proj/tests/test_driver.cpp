#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cctt/driver.hpp"
#include "support.hpp"

using namespace cctt;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("cctt-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const {
    fs::create_directories((path / name).parent_path());
    std::ofstream(path / name) << text;
  }
};

}  // namespace

TEST_CASE("parsing examples") {
  Module m = parse_module("def id (A : U0) (x : A) : A := x");
  REQUIRE(m.decls.size() == 1);
  CHECK(m.decls[0].name == "id");

  Module f = parse_module("def force (A : U0) (x : forall k. |> (a : k) A) : forall k. A := /\\k. (k. x {k}) [k, <>]");
  REQUIRE(f.decls.size() == 1);
  CHECK(raw_equal(f, parse_module(print_module(f))));

  try {
    parse_module("def bad (A : U0) (a : A) : A := hcomp^j A [1 -> a a\n");
    FAIL("unclosed system accepted");
  } catch (const CheckError& e) {
    CHECK(e.cls() == ErrorClass::ParseError);
    CHECK(e.diag().render().find("1:") != std::string::npos);
  }
}

TEST_CASE("parse, print, parse is stable on every corpus file") {
  auto files = testing::corpus_files();
  REQUIRE(files.size() >= 15);
  for (auto& p : files) {
    CAPTURE(p);
    std::string text = slurp(p);
    Module m;
    try {
      m = parse_module(text);
    } catch (const CheckError&) {
      // The parse-error negative is expected not to parse.
      CHECK(fs::path(p).filename() == "parse.cctt");
      continue;
    }
    std::string printed = print_module(m);
    Module again = parse_module(printed);
    CHECK(raw_equal(m, again));
    CHECK(print_module(again) == printed);
  }
}

TEST_CASE("check_file on the prelude and on a missing file") {
  Options o;
  Report r = check_file((testing::corpus_dir() / "prelude.cctt").string(), o);
  CHECK(r.ok());
  CHECK_FALSE(r.io_error);
  CHECK(r.decls.size() >= 7);
  for (auto& d : r.decls) CHECK(d.verdict == Verdict::Pass);

  Report miss = check_file("/nonexistent/none.cctt", o);
  CHECK(miss.io_error);
  CHECK_FALSE(miss.ok());
}

TEST_CASE("run_corpus exit codes") {
  SUBCASE("empty directory") {
    TempDir d;
    Summary s = run_corpus(d.path.string(), {});
    CHECK(s.reports.empty());
    CHECK(s.exit_code() == 0);
  }
  SUBCASE("one violated expectation") {
    TempDir d;
    d.write("a.cctt", "--expect-pass\ndef ok (A : U0) (x : A) : A := x\n");
    d.write("sub/b.cctt", "--expect-pass\ndef wrong (A : U0) (x : A) : U0 := x\n");
    Summary s = run_corpus(d.path.string(), {});
    CHECK(s.exit_code() == 1);
    CHECK(s.fail == 1);
    CHECK(s.pass == 1);
    std::string out = s.render();
    size_t first = out.find("FAIL ");
    REQUIRE(first != std::string::npos);
    CHECK(out.find("FAIL ", first + 1) == std::string::npos);
    CHECK(out.find(":wrong", first) != std::string::npos);
  }
  SUBCASE("a missing directory is an IO error") {
    Summary s = run_corpus("/nonexistent/corpus", {});
    CHECK(s.exit_code() == 2);
  }
}

TEST_CASE("reports are deterministic across runs and worker counts") {
  Options one;
  one.jobs = 1;
  Options many;
  many.jobs = 8;
  std::string dir = testing::corpus_dir().string();
  std::string a = run_corpus(dir, one).render();
  std::string b = run_corpus(dir, many).render();
  std::string c = run_corpus(dir, many).render();
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a.find("FAIL") == std::string::npos);
}

TEST_CASE("the shipped corpus meets every expectation") {
  Summary s = run_corpus(testing::corpus_dir().string(), {});
  CHECK(s.exit_code() == 0);
  CHECK(s.fail == 0);
  CHECK(s.skip == 0);
  CHECK(s.pass > 150);
}
