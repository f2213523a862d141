#pragma once

// Exhaustive enumeration of small terms and seeded random generators.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rcalc/lambda.hpp"
#include "rcalc/syntax.hpp"

namespace rcalc {

/// Every term of exactly the given size over `names` (binders included),
/// one per alpha class, in canonical-key order. Bags are multisets, so
/// permutations of one bag are enumerated once.
std::vector<Term> terms_of_size(std::size_t n, const std::vector<Name>& names);
/// Sizes 1..n, concatenated by size.
std::vector<Term> terms_up_to(std::size_t n, const std::vector<Name>& names);

struct GenConfig {
  std::vector<Name> names = {"x", "y", "z"};
  std::size_t max_size = 12;
  std::size_t max_bag = 3;
  /// Probability that an application gets an abstraction as function.
  double redex_bias = 0.4;
  double reusable_bias = 0.4;
};

class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed, GenConfig cfg = {});

  /// Random term of size at most cfg.max_size.
  Term term();
  Term term(std::size_t budget);
  /// Random bag of at most cfg.max_bag elements.
  Bag bag(std::size_t budget);
  /// Random pure λ-term of size at most `budget` (var, abs, app count 1).
  LambdaTerm lambda(std::size_t budget);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi);
  bool coin(double p);
  const Name& name();

  std::mt19937_64 rng_;
  GenConfig cfg_;
};

std::size_t lambda_size(const LambdaTerm& t);

}  // namespace rcalc
