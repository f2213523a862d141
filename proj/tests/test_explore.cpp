#include "doctest.h"
#include "rcalc/explore.hpp"
#include "rcalc/generate.hpp"
#include "support.hpp"

using namespace rcalc;
using support::T;

namespace {

void require_same(const NdGraph& a, const NdGraph& b) {
  REQUIRE(a.root == b.root);
  REQUIRE(a.closed == b.closed);
  REQUIRE(a.levels == b.levels);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (const auto& [k, n] : a.nodes) {
    const NdNode& m = b.at(k);
    REQUIRE(n.depth == m.depth);
    REQUIRE(n.parent == m.parent);
    REQUIRE(n.succ == m.succ);
    REQUIRE(n.expanded == m.expanded);
  }
}

}  // namespace

TEST_CASE("parallel exploration matches the serial reference") {
  TermGenerator gen(51);
  for (int i = 0; i < 300; ++i) {
    Term m = gen.term();
    for (StepFilter f : {StepFilter::All, StepFilter::Outer, StepFilter::Leftmost}) {
      require_same(explore_nd_serial(m, 4, f), explore_nd(m, 4, f));
    }
  }
}

TEST_CASE("exploration of a small graph") {
  Term m = T("(\\x.y[x][x])[F,I]");
  NdGraph g = explore_nd(m, 5);
  CHECK(g.closed);
  CHECK(g.nodes.size() == 3);
  CHECK(g.levels.size() == 2);
  Trace t = chain_to(g, canonical_key(T("y[I][F]")));
  CHECK(t.length() == 1);
  CHECK_FALSE(has_cycle(g));
}

TEST_CASE("cycles and open graphs") {
  Term omega = T("(\\x.x[!x])[!\\x.x[!x]]");
  NdGraph g = explore_nd(omega, 3);
  CHECK(g.nodes.size() == 1);
  CHECK(has_cycle(g));

  Term grow = T("(\\x.x[!x][!x])[!\\x.x[!x][!x]]");
  NdGraph h = explore_nd(grow, 2);
  CHECK_FALSE(h.closed);
}

TEST_CASE("filters") {
  Term m = T("x[(\\y.y)[a]][!((\\z.z)[b])]");
  CHECK(filtered_successors(m, StepFilter::All).size() == 2);
  CHECK(filtered_successors(m, StepFilter::Outer).size() == 1);
  CHECK(filtered_successors(m, StepFilter::Inner).size() == 1);
  CHECK(filtered_successors(m, StepFilter::Leftmost).size() == 1);
  CHECK(filtered_successors(m, StepFilter::NotLeftmost).empty());
  CHECK(filtered_successors(m, StepFilter::NotLeftmostAny).size() == 1);
}

TEST_CASE("sum exploration") {
  TermSum s(T("(\\w.w)[(\\w.w)[!x,!y]]"));
  SumGraph g = explore_sums(s, Mode::Giant, 4);
  CHECK(g.closed);
  CHECK(g.nodes.contains(sum_state_key(support::S("x + y"))));
  CHECK(g.nodes.contains(sum_state_key(support::S("x + (\\w.w)[y]"))));
}
