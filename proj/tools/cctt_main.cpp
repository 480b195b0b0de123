#include <iostream>

#include <CLI11.hpp>

#include "cctt/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Batch checker for clocked cubical type theory"};
  app.require_subcommand(0, 1);

  cctt::Options opt;
  std::string corpus;
  std::string prelude;
  app.add_option("--corpus", corpus, "Check every .cctt file below a directory");
  app.add_flag("--trace-conv", opt.trace_conv, "Print conversion steps");
  app.add_option("--max-steps", opt.max_steps, "Evaluation fuel per declaration")->check(CLI::PositiveNumber);
  app.add_option("--prelude", prelude, "File checked before every input file");
  app.add_option("-j,--jobs", opt.jobs, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

  std::vector<std::string> files;
  auto* check = app.add_subcommand("check", "Check the given files");
  check->fallthrough();
  check->add_option("files", files, "Source files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!prelude.empty()) opt.prelude = prelude;

  cctt::Summary sum;
  if (!corpus.empty() && !check->parsed()) {
    sum = cctt::run_corpus(corpus, opt);
  } else if (check->parsed() && corpus.empty()) {
    sum = cctt::run_files(files, opt);
  } else {
    std::cerr << "usage: cctt check <files...> | cctt --corpus <dir>\n";
    return 2;
  }
  std::cout << sum.render();
  return sum.exit_code();
}
