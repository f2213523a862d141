#pragma once

// Concrete syntax.
//
//   sum      := "0" | term { "+" term } ;
//   term     := lam | app ;
//   lam      := "\" ident { ident } "." term ;
//   app      := atom { bag } ;
//   atom     := ident | "(" term ")" ;
//   bag      := "1" | "[" [ resource { "," resource } ] "]" ;
//   resource := [ "!" ] term ;
//   ident    := letter { letter | digit | "_" } ;
//
// Whitespace is insignificant and `λ` may replace `\`.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rcalc/syntax.hpp"

namespace rcalc {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, SourceSpan span, std::vector<std::string> expected)
      : std::runtime_error(what), span_(span), expected_(std::move(expected)) {}

  SourceSpan span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

/// Parsed sum together with the source span of every top-level addend.
struct ParsedSum {
  TermSum sum;
  std::vector<Term> addends;  // in source order
  std::vector<SourceSpan> spans;
};

ParsedSum parse_sum_spans(std::string_view text);
TermSum parse_sum(std::string_view text);
/// Parses a sum that must consist of exactly one addend.
Term parse_term(std::string_view text);
Bag parse_bag(std::string_view text);

/// Minimal parentheses; bag elements and sum addends in canonical order.
std::string print(const Term& t);
std::string print(const Bag& b);
std::string print(const Resource& r);
std::string print(const TermSum& s);
std::string print(const BagSum& s);
std::string print(const Expression& e);

}  // namespace rcalc
