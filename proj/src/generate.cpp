#include "rcalc/generate.hpp"

#include <algorithm>
#include <map>

namespace rcalc {

namespace {

class Enumerator {
 public:
  explicit Enumerator(std::vector<Name> names) : names_(std::move(names)) {}

  const std::vector<Term>& terms(std::size_t n) {
    if (auto it = terms_.find(n); it != terms_.end()) return it->second;
    std::map<std::string, Term> found;
    auto keep = [&](Term t) { found.emplace(canonical_key(t), std::move(t)); };
    if (n == 1) {
      for (const auto& x : names_) keep(Term::var(x));
    } else {
      for (const auto& x : names_)
        for (const auto& b : terms(n - 1)) keep(Term::abs(x, b));
      for (std::size_t f = 1; f < n; ++f)
        for (const auto& fun : terms(f))
          for (const auto& bag : bags(n - 1 - f)) keep(Term::app(fun, bag));
    }
    std::vector<Term> out;
    out.reserve(found.size());
    for (auto& [k, t] : found) out.push_back(std::move(t));
    return terms_.emplace(n, std::move(out)).first->second;
  }

 private:
  // Resources listed by element cost (cons + wrapper + content).
  const std::vector<std::pair<std::size_t, Resource>>& resources(std::size_t max_cost) {
    while (res_cost_ < max_cost) {
      ++res_cost_;
      if (res_cost_ < 3) continue;
      for (const auto& t : terms(res_cost_ - 2)) {
        res_.emplace_back(res_cost_, Resource::linear(t));
        res_.emplace_back(res_cost_, Resource::bang(t));
      }
    }
    return res_;
  }

  // Bags of exact size b: the empty bag costs 0, each element adds its cost.
  std::vector<Bag> bags(std::size_t b) {
    std::vector<Bag> out;
    const auto& res = resources(b);
    std::vector<Resource> cur;
    extend(res, 0, b, cur, out);
    return out;
  }

  void extend(const std::vector<std::pair<std::size_t, Resource>>& res, std::size_t from,
              std::size_t left, std::vector<Resource>& cur, std::vector<Bag>& out) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t i = from; i < res.size() && res[i].first <= left; ++i) {
      cur.push_back(res[i].second);
      extend(res, i, left - res[i].first, cur, out);
      cur.pop_back();
    }
  }

  std::vector<Name> names_;
  std::map<std::size_t, std::vector<Term>> terms_;
  std::vector<std::pair<std::size_t, Resource>> res_;
  std::size_t res_cost_ = 0;
};

}  // namespace

std::vector<Term> terms_of_size(std::size_t n, const std::vector<Name>& names) {
  if (n == 0) return {};
  Enumerator e(names);
  return e.terms(n);
}

std::vector<Term> terms_up_to(std::size_t n, const std::vector<Name>& names) {
  Enumerator e(names);
  std::vector<Term> out;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& ts = e.terms(k);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

TermGenerator::TermGenerator(std::uint64_t seed, GenConfig cfg) : rng_(seed), cfg_(std::move(cfg)) {}

std::size_t TermGenerator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool TermGenerator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

const Name& TermGenerator::name() { return cfg_.names[uniform(0, cfg_.names.size() - 1)]; }

Term TermGenerator::term() { return term(cfg_.max_size); }

Term TermGenerator::term(std::size_t budget) {
  if (budget <= 2 || coin(0.15)) return Term::var(name());
  if (budget < 4 || coin(0.3)) return Term::abs(name(), term(budget - 1));
  std::size_t fun_budget = uniform(1, std::max<std::size_t>(1, (budget - 1) / 2));
  Term fun = coin(cfg_.redex_bias) && fun_budget >= 2 ? Term::abs(name(), term(fun_budget - 1))
                                                       : term(fun_budget);
  return Term::app(fun, bag(budget - 1 - size(fun)));
}

Bag TermGenerator::bag(std::size_t budget) {
  std::vector<Resource> elems;
  std::size_t left = budget;
  const std::size_t want = uniform(0, cfg_.max_bag);
  while (elems.size() < want && left >= 3) {
    std::size_t content = uniform(1, std::min<std::size_t>(left - 2, 1 + left / 2));
    Term t = term(content);
    const std::size_t cost = 2 + size(t);
    if (cost > left) break;
    left -= cost;
    elems.push_back(coin(cfg_.reusable_bias) ? Resource::bang(t) : Resource::linear(t));
  }
  return Bag(std::move(elems));
}

LambdaTerm TermGenerator::lambda(std::size_t budget) {
  if (budget <= 1 || coin(0.2)) return LambdaTerm::var(name());
  if (budget < 3 || coin(0.35)) return LambdaTerm::abs(name(), lambda(budget - 1));
  std::size_t f = uniform(1, budget - 2);
  LambdaTerm fun = coin(cfg_.redex_bias) && f >= 2 ? LambdaTerm::abs(name(), lambda(f - 1)) : lambda(f);
  return LambdaTerm::app(fun, lambda(budget - 1 - lambda_size(fun)));
}

std::size_t lambda_size(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var: return 1;
    case LambdaTerm::Kind::Abs: return 1 + lambda_size(t.body());
    case LambdaTerm::Kind::App: return 1 + lambda_size(t.fun()) + lambda_size(t.arg());
  }
  return 0;
}

}  // namespace rcalc
