#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "rcalc/explore.hpp"
#include "rcalc/generate.hpp"
#include "rcalc/lambda.hpp"
#include "support.hpp"

using namespace rcalc;
using support::locate;
using support::redex;
using support::same;
using support::T;

namespace {

const std::string I = "(\\w.w)";

std::vector<Path> all_positions(const Term& m) {
  std::vector<Path> out;
  std::function<void(const Term&, Path&)> walk = [&](const Term& t, Path& at) {
    out.push_back(at);
    if (t.is_abs()) {
      at.push_back({PathTag::AbsBody});
      walk(t.body(), at);
      at.pop_back();
    } else if (t.is_app()) {
      at.push_back({PathTag::AppFun});
      walk(t.fun(), at);
      at.pop_back();
      for (const auto& r : t.arg().elements()) {
        at.push_back({PathTag::AppArg});
        at.push_back({PathTag::BagElem, r.id});
        at.push_back({PathTag::ResourceContent});
        walk(r.content, at);
        at.resize(at.size() - 3);
      }
    }
  };
  Path at;
  walk(m, at);
  return out;
}

bool in_sibling_elements(const Path& a, const Path& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i < a.size() && i < b.size() && a[i].tag == PathTag::BagElem && b[i].tag == PathTag::BagElem;
}

std::set<std::string> plain_keys(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(canonical_key(t));
  return out;
}

}  // namespace

TEST_CASE("redex classification") {
  auto rs = find_redexes(T("(\\x.x)[z]"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].outer);
  CHECK(rs[0].leftmost);

  rs = find_redexes(T("y[!((\\x.x)[z])]"));
  REQUIRE(rs.size() == 1);
  CHECK_FALSE(rs[0].outer);
  CHECK_FALSE(rs[0].leftmost);

  Term m = T(I + "[" + I + "[!x,!y]]");
  rs = find_redexes(m);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].outer);
  CHECK(rs[1].outer);
  CHECK(rs[0].leftmost);
  CHECK(rs[0].path.empty());
  CHECK_FALSE(rs[1].leftmost);
}

TEST_CASE("leftmost sets") {
  CHECK(leftmost_set(T("y[!((\\x.x)[z])]")).empty());
  CHECK(is_outer_normal(T("y[!((\\x.x)[z])]")));
  CHECK(leftmost_set(T("(\\x.x[a])[b]")) == std::vector<Path>{Path{}});
  // A linear element joins the rest of its bag.
  Term same_bag = T("x[(\\y.y)[a], (\\z.z)[b]]");
  CHECK(leftmost_set(same_bag).size() == 2);
  // In separate applications the function side is taken first.
  Term separate = T("x[(\\y.y)[a]][(\\z.z)[b]]");
  auto lm = leftmost_set(separate);
  REQUIRE(lm.size() == 1);
  CHECK(alpha_eq(checked_subterm(separate, lm[0]), T("(\\y.y)[a]")));
  // Reusable elements are skipped.
  CHECK(leftmost_set(T("x[!((\\y.y)[a]), (\\z.z)[b]]")).size() == 1);
}

TEST_CASE("linear left-to-right order") {
  const std::string s1 = "(\\u.u)[c]", s2 = "(\\v.v)[d]";
  Term a = T("\\x.x[!" + s2 + "][" + s1 + "]");
  CHECK(precedes(locate(a, s1), locate(a, s2), a) == Order::Before);
  CHECK(precedes(locate(a, s2), locate(a, s1), a) == Order::After);
  Term b = T("\\x.x[" + s1 + "][" + s2 + "]");
  CHECK(precedes(locate(b, s1), locate(b, s2), b) == Order::Before);
  Term c = T("\\x.x[" + s1 + "," + s2 + "]");
  CHECK(precedes(locate(c, s1), locate(c, s2), c) == Order::Incomparable);
  // A subterm follows the term containing it.
  CHECK(precedes(Path{}, locate(c, s1), c) == Order::Before);
  CHECK_THROWS_AS(precedes(Path{{PathTag::AppFun}}, Path{}, c), InvalidPath);
}

TEST_CASE("the order is a strict partial order") {
  auto terms = terms_up_to(7, {"x", "y"});
  for (std::size_t i = 0; i < terms.size(); i += 3) {
    const Term& m = terms[i];
    auto ps = all_positions(m);
    for (const auto& p : ps) {
      REQUIRE(precedes(p, p, m) == Order::Incomparable);
      for (const auto& q : ps) {
        Order o = precedes(p, q, m);
        Order back = precedes(q, p, m);
        REQUIRE((o == Order::Before) == (back == Order::After));
        if (o != Order::Before) continue;
        for (const auto& r : ps)
          if (precedes(q, r, m) == Order::Before) REQUIRE(precedes(p, r, m) == Order::Before);
      }
    }
  }
}

TEST_CASE("outer redexes are incomparable exactly in sibling elements") {
  for (const auto& m : terms_up_to(9, {"x", "y"})) {
    std::vector<Path> outer;
    for (const auto& r : find_redexes(m))
      if (r.outer) outer.push_back(r.path);
    for (std::size_t i = 0; i < outer.size(); ++i)
      for (std::size_t j = i + 1; j < outer.size(); ++j) {
        bool incomparable = precedes(outer[i], outer[j], m) == Order::Incomparable;
        INFO(print(m));
        REQUIRE(incomparable == in_sibling_elements(outer[i], outer[j]));
      }
  }
}

TEST_CASE("giant steps") {
  Term a = T("(\\x.x)[z]");
  CHECK(same(giant_step(a, redex(a, "(\\x.x)[z]")), "z"));
  Term b = T("(\\x.x)1");
  CHECK(giant_step(b, redex(b, "(\\x.x)1")).is_zero());
  Term m = T(I + "[" + I + "[!x,!y]]");
  CHECK(same(giant_step(m, redex(m, I + "[!x,!y]")), I + "[x] + " + I + "[y]"));
  Term c = T("(\\x.x[x])[a,b]");
  CHECK(same(giant_step(c, redex(c, "(\\x.x[x])[a,b]")), "a[b] + b[a]"));
  CHECK_THROWS_AS(giant_step(c, Redex{Path{{PathTag::AppFun}}}), InvalidRedex);
}

TEST_CASE("baby steps") {
  Term a = T("(\\x.x)[N]");
  CHECK(same(baby_step(a, redex(a, "(\\x.x)[N]")), "(\\x.N)1"));
  Term b = T("(\\x.x)[!N]");
  CHECK(same(baby_step(b, redex(b, "(\\x.x)[!N]")), "(\\x.N)1 + (\\x.x)1"));
  Term c = T("(\\x.x)1");
  CHECK(baby_step(c, redex(c, "(\\x.x)1")).is_zero());
  // Inside a context the sum is distributed.
  Term d = T("y[(\\x.x[x])[a,b]]");
  CHECK(baby_step(d, redex(d, "(\\x.x[x])[a,b]")).count() == 2);
}

TEST_CASE("nd steps") {
  Term a = T("(\\x.y[x][x])[F,I]");
  auto out = nd_step(a, redex(a, "(\\x.y[x][x])[F,I]"));
  CHECK(plain_keys(out) == plain_keys({T("y[F][I]"), T("y[I][F]")}));
  Term b = T("(\\x.x)[z]");
  CHECK(plain_keys(nd_step(b, redex(b, "(\\x.x)[z]"))) == plain_keys({T("z")}));
  Term c = T("(\\x.x)1");
  CHECK(nd_step(c, redex(c, "(\\x.x)1")).empty());
}

TEST_CASE("baby expansion") {
  Term a = T("(\\x.x[x])[a,b]");
  CHECK(same(baby_expand(a, redex(a, "(\\x.x[x])[a,b]")), "a[b] + b[a]"));
  Term b = T("(\\x.x)1");
  CHECK(baby_expand(b, redex(b, "(\\x.x)1")).is_zero());
  Term c = T("(\\x.y[!x])[!\\x.x,!\\x y.y]");
  CHECK(same(baby_expand(c, redex(c, "(\\x.y[!x])[!\\x.x,!\\x y.y]")), "y[!\\x.x,!\\x y.y]"));
}

TEST_CASE("baby expansion agrees with giant steps") {
  TermGenerator gen(41);
  int checked = 0;
  while (checked < 1000) {
    Term m = gen.term();
    for (const auto& r : find_redexes(m)) {
      REQUIRE(alpha_eq(baby_expand(m, r), giant_step(m, r)));
      ++checked;
    }
  }
}

TEST_CASE("nd support equals giant support at outer redexes") {
  TermGenerator gen(42);
  for (int i = 0; i < 1000; ++i) {
    Term m = gen.term();
    for (const auto& r : find_redexes(m)) {
      if (!r.outer) continue;
      REQUIRE(plain_keys(nd_step(m, r)) == plain_keys(giant_step(m, r).support()));
    }
  }
}

TEST_CASE("onf iff no leftmost redex, against the scanner") {
  for (const auto& m : terms_up_to(8, {"x", "y"})) {
    REQUIRE(is_outer_normal(m) == !oracle::has_outer_redex(m));
    REQUIRE(leftmost_set(m).empty() == !oracle::has_outer_redex(m));
  }
}

TEST_CASE("paths") {
  Term m = T("\\x.x[!y, (\\z.z)[a]]");
  Path p = locate(m, "(\\z.z)[a]");
  CHECK(is_linear_position(m, p));
  CHECK_FALSE(is_linear_position(m, locate(m, "y")));
  CHECK(path_from_canonical(m, canonical_path(m, p)) == p);
  CHECK(same(replace_at(m, p, T("q")), "\\x.x[!y,q]"));
  CHECK_FALSE(subterm_at(m, Path{{PathTag::AppFun}}).has_value());
  CHECK_THROWS_AS(checked_subterm(m, Path{{PathTag::AppFun}}), InvalidPath);
  CHECK(same(plug(m, p, support::S("a + b")), "\\x.x[!y,a] + \\x.x[!y,b]"));
  CHECK(plug(m, p, TermSum()).is_zero());
  CHECK(same(plug(m, locate(m, "y"), TermSum()), "\\x.x[(\\z.z)[a]]"));
}

TEST_CASE("residuals") {
  Term a = T("(\\x.x)[z]");
  LabeledTerm la = label(a, {Path{}});
  Step s = nd_successors(a).front();
  auto none = residuals(la, s);
  REQUIRE(none.size() == 1);
  CHECK(none.begin()->second.empty());

  const std::string r = "(\\u.u)[c]";
  Term b = T("(\\x.y[x][x])[" + r + ", w]");
  LabeledTerm lb = label(b, {locate(b, r)});
  for (const auto& st : nd_successors(b)) {
    if (!st.redex.path.empty()) continue;
    auto res = residuals(lb, st);
    REQUIRE(res.size() == 1);
    CHECK(res.begin()->second.size() == 1);
    for (const auto& p : res.begin()->second) CHECK(alpha_eq(checked_subterm(st.after_term(), p), T(r)));
  }

  Term c = T("((\\u.u)[a])[!(\\v.v)[b]]");
  LabeledTerm lc = label(c, {locate(c, "(\\v.v)[b]")});
  Redex fun = redex(c, "(\\u.u)[a]");
  Step st = make_nd_step(c, fun, T("a[!(\\v.v)[b]]"));
  auto res = residuals(lc, st);
  REQUIRE(res.size() == 1);
  CHECK(res.begin()->second.size() == 1);
}

TEST_CASE("strategies") {
  Strategy giant;
  auto tr = strategy_run(from_lambda(parse_lambda("(\\x.x) y")), giant, 100);
  REQUIRE(tr.size() == 1);
  CHECK(tr[0].length() == 1);
  CHECK(same(tr[0].final_sum(), "y"));
  CHECK(tr[0].end == TraceEnd::Normal);

  Strategy nd{Mode::Nd, Pick::LeftmostFirst, {}};
  Term omega = T("(\\x.x[!x])[!\\x.x[!x]]");
  tr = strategy_run(omega, nd, 10);
  CHECK(tr[0].end == TraceEnd::BudgetExhausted);
  Strategy all{Mode::Nd, Pick::Exhaustive, {}};
  tr = strategy_run(omega, all, 10);
  for (const auto& t : tr) CHECK(t.end != TraceEnd::Normal);
  CHECK(std::any_of(tr.begin(), tr.end(), [](const Trace& t) { return t.end == TraceEnd::BudgetExhausted; }));

  tr = strategy_run(T("x[!((\\y.y)[a])]"), nd, 10);
  CHECK(tr[0].length() == 0);
  CHECK(tr[0].end == TraceEnd::Normal);

  tr = strategy_run(T("(\\x.x)1"), giant, 10);
  CHECK(tr[0].end == TraceEnd::Crashed);

  Strategy given{Mode::Giant, Pick::GivenPaths, {{-2, 0, -4}}};
  Term m = T(I + "[" + I + "[!x,!y]]");
  tr = strategy_run(m, given, 10);
  REQUIRE(tr[0].length() == 1);
  CHECK(same(tr[0].final_sum(), I + "[x] + " + I + "[y]"));
}

TEST_CASE("steps inside sums") {
  TermSum s = support::S("(\\x.x)[a] + b");
  Term addend = support::T("(\\x.x)[a]");
  CHECK(same(step_in_sum(s, addend, redex(addend, "(\\x.x)[a]"), Mode::Giant), "a + b"));
}

TEST_CASE("lambda images use singleton reusable bags") {
  TermGenerator gen(43);
  for (int i = 0; i < 500; ++i) {
    Term t = from_lambda(gen.lambda(10));
    for (const auto& r : find_redexes(t)) {
      const Bag& arg = checked_subterm(t, r.path).arg();
      REQUIRE(arg.size() == 1);
      REQUIRE(arg.elements().front().reusable);
    }
    REQUIRE(leftmost_set(t).size() <= 1);
  }
}

TEST_CASE("traces validate, rebase and lift") {
  Term m = T("x[(\\y.y)[a]][!((\\z.z)[b])]");
  Strategy all{Mode::Nd, Pick::Exhaustive, {}};
  for (const auto& t : strategy_run(m, all, 5)) {
    CHECK_NOTHROW(validate_nd_trace(t));
    Trace r = rebase(t, T("x[(\\q.q)[a]][!((\\z.z)[b])]"));
    CHECK(alpha_eq(r.final_term(), t.final_term()));
  }
  Term inner = T("(\\y.y)[a]");
  Trace sub{inner, Mode::Nd, {nd_successors(inner).front()}, {}, TraceEnd::Open};
  Path prefix = locate(m, "(\\y.y)[a]");
  Trace lifted = lift(sub, m, prefix);
  CHECK(same(lifted.final_term(), "x[a][!((\\z.z)[b])]"));
  Trace broken = lifted;
  broken.initial = T("q");
  CHECK_THROWS(validate_nd_trace(broken));
}
