#include <set>

#include "doctest.h"
#include "rcalc/generate.hpp"
#include "support.hpp"

using namespace rcalc;

TEST_CASE("small enumeration counts") {
  // Size 1: x, y. Size 2: two abstractions over each variable, plus x 1 and y 1.
  CHECK(terms_of_size(1, {"x", "y"}).size() == 2);
  CHECK(terms_of_size(2, {"x", "y"}).size() == 5);
  CHECK(terms_of_size(1, {"x"}).size() == 1);
  CHECK(terms_of_size(0, {"x"}).empty());
  // Size 3 with one name: \x.\x.x, \x.x1, (\x.x)1, x11.
  CHECK(terms_of_size(3, {"x"}).size() == 4);
}

TEST_CASE("enumerated terms have the requested size and are distinct") {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::set<std::string> keys;
    for (const auto& t : terms_of_size(n, {"x", "y"})) {
      REQUIRE(size(t) == n);
      REQUIRE(keys.insert(canonical_key(t)).second);
    }
  }
}

TEST_CASE("enumeration is complete against generated terms") {
  std::set<std::string> all;
  for (const auto& t : terms_up_to(8, {"x", "y"})) all.insert(canonical_key(t));
  GenConfig cfg;
  cfg.names = {"x", "y"};
  cfg.max_size = 8;
  TermGenerator gen(91, cfg);
  for (int i = 0; i < 2000; ++i) {
    Term t = gen.term();
    if (size(t) > 8) continue;
    REQUIRE(all.contains(canonical_key(t)));
  }
}

TEST_CASE("generators respect bounds and seeds") {
  GenConfig cfg;
  cfg.max_size = 12;
  TermGenerator a(7, cfg), b(7, cfg);
  for (int i = 0; i < 500; ++i) {
    Term s = a.term(), t = b.term();
    REQUIRE(size(s) <= 12);
    REQUIRE(print(s) == print(t));
    REQUIRE(lambda_size(a.lambda(10)) <= 10);
    b.lambda(10);
  }
}
