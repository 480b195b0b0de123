#include <doctest.h>

#include "meta.hpp"

using namespace cctt;

namespace {

const std::vector<testing::Recorded>& recorded() {
  static const auto rs = testing::record_corpus();
  return rs;
}

void report(const testing::MetaResult& m, int at_least) {
  CHECK(m.instances >= at_least);
  for (size_t k = 0; k < m.violations.size() && k < 5; ++k) MESSAGE(m.violations[k]);
  CHECK(m.violations.empty());
}

}  // namespace

TEST_CASE("the corpus yields judgements to check") { CHECK(recorded().size() > 1000); }

TEST_CASE("subject reduction") { report(testing::subject_reduction(recorded()), 200); }

TEST_CASE("weakening by an unused entry of every sort") {
  testing::Rng rng(7);
  report(testing::weakening(recorded(), rng), 200);
}

TEST_CASE("the identity substitution is idempotent and conversion-preserving") {
  report(testing::identity_substitution(recorded()), 200);
}

TEST_CASE("substituting an endpoint for an interval variable preserves typing") {
  testing::Rng rng(11);
  report(testing::endpoint_substitution(recorded(), rng), 200);
}

TEST_CASE("insert_entry shifts later payloads") {
  Context ctx = Context::with_k0();
  ctx.push_term("A", mk::univ(0));
  ctx.push_term("x", mk::var(0));
  Entry e;
  e.sort = EntrySort::TermVar;
  e.name = "w";
  e.type = mk::univ(0);
  Context wide = testing::insert_entry(ctx, 2, e);
  REQUIRE(wide.size() == 4);
  CHECK(structural_equal(wide.entries[3].type, mk::var(1)));
  Context front = testing::insert_entry(ctx, 1, e);
  CHECK(structural_equal(front.entries[2].type, mk::univ(0)));
  CHECK(structural_equal(front.entries[3].type, mk::var(0)));
}
