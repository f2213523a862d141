#pragma once

// Pure λ-terms and their injection into the resource calculus:
//   x* = x,  (λx.M)* = λx.M*,  (M N)* = M* [N*!]

#include <memory>
#include <string>
#include <string_view>

#include "rcalc/syntax.hpp"

namespace rcalc {

class LambdaTerm {
 public:
  enum class Kind { Var, Abs, App };

  static LambdaTerm var(Name name);
  static LambdaTerm abs(Name binder, LambdaTerm body);
  static LambdaTerm app(LambdaTerm fun, LambdaTerm arg);

  Kind kind() const { return node_->kind; }
  const Name& name() const { return node_->name; }
  const LambdaTerm& body() const { return *node_->left; }
  const LambdaTerm& fun() const { return *node_->left; }
  const LambdaTerm& arg() const { return *node_->right; }

 private:
  struct Node {
    Kind kind;
    Name name;
    std::shared_ptr<const LambdaTerm> left;
    std::shared_ptr<const LambdaTerm> right;
  };
  explicit LambdaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Term from_lambda(const LambdaTerm& t);

/// Parses `\x y.M`, juxtaposition application, parentheses. `λ` is accepted
/// for `\`. Throws ParseError.
LambdaTerm parse_lambda(std::string_view text);
std::string print_lambda(const LambdaTerm& t);

}  // namespace rcalc
