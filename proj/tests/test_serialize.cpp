#include "doctest.h"
#include "rcalc/explore.hpp"
#include "rcalc/generate.hpp"
#include "rcalc/serialize.hpp"
#include "support.hpp"

using namespace rcalc;
using support::T;

TEST_CASE("step records") {
  Term m = T("x[(\\y.y)[a]]");
  Step s = nd_successors(m).front();
  Json j = step_to_json(s, 1);
  CHECK(j["index"] == 1);
  CHECK(j["rule"] == "giant");
  CHECK(j["mode"] == "nd");
  CHECK(j["redex_path"] == Json::array({"arg", "elem:0", "content"}));
  CHECK(j["term_before"] == "x[(\\y.y)[a]]");
  CHECK(j["term_after"] == "x[a]");
  CHECK(j["chosen_addend"].is_string());

  Strategy giant;
  Trace g = strategy_run(T("(\\x.x[x])[a,b]"), giant, 10).front();
  Json gj = trace_to_json(g);
  REQUIRE(gj.size() == 1);
  CHECK(gj[0]["chosen_addend"].is_null());
  CHECK(gj[0]["term_after"] == "a[b] + b[a]");
}

TEST_CASE("paths round trip") {
  TermGenerator gen(81);
  for (int i = 0; i < 300; ++i) {
    Term m = gen.term();
    for (const auto& r : find_redexes(m)) {
      Json j = path_to_json(m, r.path);
      REQUIRE(path_from_json(m, j) == r.path);
    }
  }
  CHECK_THROWS_AS(path_code_from_json(Json::array({"sideways"})), std::invalid_argument);
}

TEST_CASE("nd traces round trip through records") {
  TermGenerator gen(82);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Term m = gen.term();
    NdGraph g = explore_nd(m, 3);
    for (const auto& key : g.levels.back()) {
      Trace t = chain_to(g, key);
      if (t.length() == 0) continue;
      Json j = Json::parse(trace_to_json(t).dump());
      Trace back = trace_from_json(j);
      REQUIRE(back.length() == t.length());
      REQUIRE(alpha_eq(back.final_term(), t.final_term()));
      for (std::size_t k = 0; k < t.length(); ++k) {
        REQUIRE(canonical_path(back.steps[k].before, back.steps[k].redex.path) ==
                canonical_path(t.steps[k].before, t.steps[k].redex.path));
      }
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("broken records are rejected") {
  Trace t{T("(\\x.x)[a]"), Mode::Nd, {nd_successors(T("(\\x.x)[a]")).front()}, {}, TraceEnd::Open};
  Json j = trace_to_json(t);
  Json wrong = j;
  wrong[0]["term_after"] = "b";
  CHECK_THROWS(trace_from_json(wrong));
  Json gap = j;
  gap.push_back(j[0]);
  CHECK_THROWS(trace_from_json(gap));
  CHECK_THROWS(trace_from_json(Json::array()));
}

TEST_CASE("machine trees round trip") {
  TermGenerator gen(83);
  MachineConfig c;
  c.policy = Policy::EnumerateAll;
  c.budget = 2000;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    for (const auto& o : machine_step_run(gen.term(), c)) {
      if (!o.tree) continue;
      Json j = tree_to_json(*o.tree);
      NodePtr back = tree_from_json(Json::parse(j.dump()));
      REQUIRE(tree_to_json(*back) == j);
      Trace a = reconstruct_trace(*o.tree);
      Trace b = reconstruct_trace(*back);
      REQUIRE(alpha_eq(a.final_term(), b.final_term()));
      ++checked;
    }
  }
  CHECK(checked > 50);
  Json o = outcome_to_json(machine_step_run(T("(\\z.\\y.y)[x]"), MachineConfig{}).front());
  CHECK(o["status"] == "undefined");
}

TEST_CASE("verdicts and reports") {
  Json v = verdict_to_json(may_solvable(T("(\\z.\\y.y)[x]")));
  CHECK(v["status"] == "not-within-budget");
  CHECK(v["exhaustive"] == true);
  CHECK_FALSE(v.contains("witness"));
  Json w = verdict_to_json(may_solvable(T("(\\x.x)[!y]")));
  CHECK(w["status"] == "may-solvable");
  CHECK(w.contains("witness"));

  StdReport ok{true, std::nullopt};
  CHECK(report_to_json(ok) == Json{{"standard", true}});
}
