#include "doctest.h"
#include "rcalc/generate.hpp"
#include "rcalc/lambda.hpp"
#include "support.hpp"

using namespace rcalc;
using support::T;

TEST_CASE("parse shapes") {
  Term t = T("\\x. x [!x]");
  REQUIRE(t.is_abs());
  CHECK(t.name() == "x");
  REQUIRE(t.body().is_app());
  CHECK(t.body().fun().is_var());
  REQUIRE(t.body().arg().size() == 1);
  CHECK(t.body().arg().elements()[0].reusable);

  ParsedSum ps = parse_sum_spans("y [F] [I] + y [I] [F]");
  CHECK(ps.addends.size() == 2);
  CHECK(ps.sum.distinct() == 2);
  CHECK(ps.spans[0].start == 0);
  CHECK(ps.spans[1].end == 21);

  Term e = T("(\\x.x) 1");
  REQUIRE(e.is_redex());
  CHECK(e.arg().empty());
  CHECK(T("x []").arg().empty());
  CHECK(parse_sum("0").is_zero());
}

TEST_CASE("lambda and multi-binder sugar") {
  CHECK(alpha_eq(T("λx y.x"), T("\\x.\\y.x")));
  CHECK(alpha_eq(T("\\x.x[y] [z]"), T("\\x.(x[y])[z]")));
  CHECK(alpha_eq(T("x[!a, b]"), T("x[b, !a]")));
}

TEST_CASE("printer") {
  CHECK(print(T("\\x.x")) == "\\x.x");
  CHECK(print(Bag()) == "1");
  CHECK(print(TermSum()) == "0");
  CHECK(print(T("(\\x.x)[y]")) == "(\\x.x)[y]");
  CHECK(print(T("x[\\y.y]")) == "x[\\y.y]");
  CHECK(print(T("x[b,a]")) == print(T("x[a,b]")));
  CHECK(print(T("(\\x.x) 1")) == "(\\x.x)1");
}

TEST_CASE("parse errors carry spans and expectations") {
  auto fails = [](const char* text, std::size_t start) {
    try {
      parse_sum(text);
    } catch (const ParseError& e) {
      CHECK(e.span().start == start);
      CHECK_FALSE(e.expected().empty());
      return true;
    }
    return false;
  };
  CHECK(fails("(\\x.x", 5));
  CHECK(fails("x[", 2));
  CHECK(fails("\\.x", 1));
  CHECK(fails("x + ", 4));
  CHECK(fails("x ]", 2));
  CHECK_THROWS_AS(parse_term("a + b"), ParseError);
  CHECK_THROWS_AS(parse_lambda("\\x"), ParseError);
}

TEST_CASE("round trip on generated terms") {
  TermGenerator gen(21);
  for (int i = 0; i < 3000; ++i) {
    Term t = gen.term();
    std::string s = print(t);
    Term u = parse_term(s);
    REQUIRE(alpha_eq(t, u));
    REQUIRE(print(u) == s);
  }
}

TEST_CASE("round trip on sums and bags") {
  TermGenerator gen(22);
  for (int i = 0; i < 500; ++i) {
    TermSum s;
    for (int k = 0; k < 3; ++k) s.add(gen.term(8));
    REQUIRE(alpha_eq(parse_sum(print(s)), s));
    Bag b = gen.bag(10);
    REQUIRE(alpha_eq(parse_bag(print(b)), b));
  }
}

TEST_CASE("printer is deterministic across alpha variants") {
  CHECK(print(T("\\x.x[!y]")) != print(T("\\z.z[!y]")));  // names are kept
  CHECK(print(T("x[!(\\a.a), b, c]")) == print(T("x[c, b, !(\\a.a)]")));
}

TEST_CASE("lambda round trip") {
  TermGenerator gen(23);
  for (int i = 0; i < 500; ++i) {
    LambdaTerm l = gen.lambda(10);
    REQUIRE(alpha_eq(from_lambda(parse_lambda(print_lambda(l))), from_lambda(l)));
  }
}
