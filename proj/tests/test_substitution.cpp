#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "rcalc/generate.hpp"
#include "rcalc/substitution.hpp"
#include "support.hpp"

using namespace rcalc;
using support::B;
using support::S;
using support::same;
using support::T;

TEST_CASE("classical substitution") {
  CHECK(classical_subst(T("x"), "x", TermSum()).is_zero());
  BagSum b = classical_subst(B("[!x]"), "x", TermSum());
  REQUIRE(b.count() == 1);
  CHECK(b.support().front().empty());
  CHECK(same(classical_subst(T("x[!x]"), "x", S("a + b")), "a[!a,!b] + b[!a,!b]"));
  CHECK(same(classical_subst(T("\\y.x[y]"), "x", S("y")), "\\z.y[z]"));
  CHECK(same(classical_subst(T("\\x.x"), "x", S("a")), "\\x.x"));
}

TEST_CASE("partial substitution") {
  CHECK(same(partial_subst(T("x"), "x", T("N")), "N + x"));
  BagSum b = partial_subst(B("[!x]"), "x", T("N"));
  REQUIRE(b.count() == 1);
  CHECK(alpha_eq(b.support().front(), B("[!N,!x]")));
  CHECK(same(partial_subst(T("y"), "x", T("N")), "y"));
}

TEST_CASE("linear substitution") {
  CHECK(same(linear_subst(T("y[x][x]"), "x", T("N")), "y[N][x] + y[x][N]"));
  CHECK(linear_subst(T("\\y.y"), "x", T("N")).is_zero());
  BagSum b = linear_subst(B("[!x]"), "x", T("N"));
  REQUIRE(b.count() == 1);
  CHECK(alpha_eq(b.support().front(), B("[N,!x]")));
  CHECK(same(linear_subst(T("\\y.x[y]"), "x", T("y")), "\\z.y[z]"));
}

TEST_CASE("resource and bag substitution") {
  CHECK(same(resource_subst(T("x"), "x", Resource::linear(T("z"))), "z"));
  CHECK(same(resource_subst(T("x"), "x", Resource::bang(T("z"))), "z + x"));
  CHECK(same(resource_subst(T("y[x]"), "x", Resource::bang(T("z"))), "y[z] + y[x]"));
  CHECK(same(bag_subst(T("x"), "x", B("[z]")), "z"));
  CHECK(same(bag_subst(T("x"), "x", B("1")), "x"));
  CHECK(same(bag_subst(T("x[x]"), "x", B("[a,b]")), "a[b] + b[a]"));
  CHECK_THROWS_AS(bag_subst(T("x"), "x", B("[x]")), FreshnessViolation);
}

namespace {

Name pick_var(const Term& t, std::mt19937_64& rng) {
  auto fv = free_vars(t);
  if (fv.empty()) return "x";
  auto it = fv.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, fv.size() - 1)(rng));
  return *it;
}

std::size_t occurrences(const Term& t, const Name& x) {
  switch (t.kind()) {
    case Kind::Var: return t.name() == x ? 1 : 0;
    case Kind::Abs: return t.name() == x ? 0 : occurrences(t.body(), x);
    case Kind::App: {
      std::size_t n = occurrences(t.fun(), x);
      for (const auto& r : t.arg().elements()) n += occurrences(r.content, x);
      return n;
    }
  }
  return 0;
}

bool binders_avoid(const Term& a, const Term& n) {
  auto fv = free_vars(n);
  for (const auto& b : oracle::binders(a))
    if (fv.contains(b)) return false;
  return true;
}

}  // namespace

TEST_CASE("linear substitution agrees with the occurrence oracle") {
  GenConfig cfg;
  cfg.max_size = 10;
  TermGenerator gen(31, cfg);
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 3000) {
    Term a = gen.term();
    Term n = gen.term(4);
    Name x = pick_var(a, rng);
    if (!binders_avoid(a, n) || free_vars(n).contains(x)) continue;
    TermSum got = linear_subst(a, x, n);
    REQUIRE(alpha_eq(got, oracle::linear_subst(a, x, n)));
    REQUIRE(got.count() == occurrences(a, x));
    ++checked;
  }
}

TEST_CASE("linear substitution vanishes without free occurrences") {
  TermGenerator gen(32);
  for (int i = 0; i < 1000; ++i) {
    Term a = gen.term();
    if (occurs_free(a, "w")) continue;
    REQUIRE(linear_subst(a, "w", gen.term(4)).is_zero());
  }
}

TEST_CASE("linear substitution is bilinear") {
  TermGenerator gen(33);
  for (int i = 0; i < 300; ++i) {
    TermSum a, n;
    a.add(gen.term(8));
    a.add(gen.term(8));
    n.add(gen.term(3));
    n.add(gen.term(3));
    TermSum expected;
    for (const auto& ai : a.expanded())
      for (const auto& nj : n.expanded()) expected.add(linear_subst(ai, "x", nj));
    REQUIRE(alpha_eq(linear_subst(a, "x", n), expected));
  }
}

TEST_CASE("partial substitution then erasure is classical substitution") {
  TermGenerator gen(34);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    Term a = gen.term(8);
    Term n = gen.term(3);
    Name x = pick_var(a, rng);
    if (free_vars(n).contains(x)) continue;
    TermSum lhs = classical_subst(partial_subst(a, x, n), x, TermSum());
    REQUIRE(alpha_eq(lhs, classical_subst(a, x, TermSum(n))));
  }
}

TEST_CASE("bag substitution does not depend on element order") {
  TermGenerator gen(35);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    Term a = gen.term(9);
    Bag p = gen.bag(9);
    Name x = pick_var(a, rng);
    if (occurs_free(p, x)) continue;
    TermSum want = bag_subst(a, x, p);
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      TermSum got(a);
      for (std::size_t k : order) got = resource_subst(got, x, p.elements()[k]);
      REQUIRE(alpha_eq(got, want));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}
