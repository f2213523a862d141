#pragma once

// Shared tokenizer for the resource-term and pure λ-term grammars.

#include <string>
#include <string_view>
#include <vector>

#include "rcalc/parser.hpp"

namespace rcalc::detail {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, LBrack, RBrack, Comma, Bang, Plus, Zero, One, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(Tok t);
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  Token expect(Tok t);
  [[noreturn]] void fail(std::vector<Tok> expected) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace rcalc::detail
