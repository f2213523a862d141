#include "rcalc/parser.hpp"

#include <algorithm>
#include <cctype>

#include "lexer.hpp"

namespace rcalc {

namespace detail {

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::Zero: return "'0'";
    case Tok::One: return "'1'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto single = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), {i, i + len}});
    i += len;
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      single(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string_view num = text.substr(i, j - i);
      if (num == "0") {
        single(Tok::Zero, 1);
      } else if (num == "1") {
        single(Tok::One, 1);
      } else {
        throw ParseError("unexpected number '" + std::string(num) + "'", {i, j},
                         {"'0'", "'1'"});
      }
      continue;
    }
    // UTF-8 λ (U+03BB)
    if (c == 0xCE && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0xBB) {
      single(Tok::Lambda, 2);
      continue;
    }
    switch (c) {
      case '\\': single(Tok::Lambda, 1); continue;
      case '.': single(Tok::Dot, 1); continue;
      case '(': single(Tok::LParen, 1); continue;
      case ')': single(Tok::RParen, 1); continue;
      case '[': single(Tok::LBrack, 1); continue;
      case ']': single(Tok::RBrack, 1); continue;
      case ',': single(Tok::Comma, 1); continue;
      case '!': single(Tok::Bang, 1); continue;
      case '+': single(Tok::Plus, 1); continue;
      default:
        throw ParseError("unexpected character '" + std::string(1, static_cast<char>(c)) + "'",
                         {i, i + 1}, {});
    }
  }
  out.push_back({Tok::End, "", {text.size(), text.size()}});
  return out;
}

Token TokenStream::expect(Tok t) {
  if (!at(t)) fail({t});
  return next();
}

void TokenStream::fail(std::vector<Tok> expected) const {
  std::vector<std::string> names;
  for (Tok t : expected) names.push_back(describe(t));
  std::string msg = "expected ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) msg += i + 1 == names.size() ? " or " : ", ";
    msg += names[i];
  }
  msg += " but found " + (peek().kind == Tok::End ? describe(Tok::End) : "'" + peek().text + "'");
  msg += " at offset " + std::to_string(peek().span.start);
  throw ParseError(msg, peek().span, std::move(names));
}

}  // namespace detail

namespace {

using detail::Tok;
using detail::TokenStream;

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  ParsedSum sum() {
    ParsedSum out;
    if (ts_.at(Tok::Zero)) {
      ts_.next();
      ts_.expect(Tok::End);
      return out;
    }
    for (;;) {
      std::size_t start = ts_.peek().span.start;
      Term t = term();
      out.spans.push_back({start, last_end_});
      out.addends.push_back(t);
      out.sum.add(t);
      if (!ts_.at(Tok::Plus)) break;
      ts_.next();
    }
    if (!ts_.at(Tok::End)) ts_.fail({Tok::Plus, Tok::End});
    return out;
  }

  Bag standalone_bag() {
    Bag b = bag();
    ts_.expect(Tok::End);
    return b;
  }

 private:
  Term term() {
    if (ts_.at(Tok::Lambda)) return lam();
    return app();
  }

  Term lam() {
    ts_.expect(Tok::Lambda);
    std::vector<Name> binders;
    binders.push_back(ts_.expect(Tok::Ident).text);
    while (ts_.at(Tok::Ident)) binders.push_back(ts_.next().text);
    ts_.expect(Tok::Dot);
    Term body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, body);
    return body;
  }

  Term app() {
    Term head = atom();
    while (ts_.at(Tok::LBrack) || ts_.at(Tok::One)) head = Term::app(head, bag());
    return head;
  }

  Term atom() {
    if (ts_.at(Tok::Ident)) {
      auto tok = ts_.next();
      last_end_ = tok.span.end;
      return Term::var(tok.text);
    }
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      Term t = term();
      last_end_ = ts_.expect(Tok::RParen).span.end;
      return t;
    }
    ts_.fail({Tok::Ident, Tok::LParen, Tok::Lambda});
  }

  Bag bag() {
    if (ts_.at(Tok::One)) {
      last_end_ = ts_.next().span.end;
      return Bag{};
    }
    ts_.expect(Tok::LBrack);
    std::vector<Resource> elems;
    if (!ts_.at(Tok::RBrack)) {
      for (;;) {
        bool reusable = false;
        if (ts_.at(Tok::Bang)) {
          ts_.next();
          reusable = true;
        }
        elems.push_back(Resource{term(), reusable, 0});
        if (!ts_.at(Tok::Comma)) break;
        ts_.next();
      }
    }
    if (!ts_.at(Tok::RBrack)) ts_.fail({Tok::Comma, Tok::RBrack});
    last_end_ = ts_.next().span.end;
    return Bag(std::move(elems));
  }

  TokenStream ts_;
  std::size_t last_end_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

void print_term(const Term& t, std::string& out);

std::string print_resource(const Resource& r) {
  std::string s = r.reusable ? "!" : "";
  print_term(r.content, s);
  return s;
}

void print_bag(const Bag& b, std::string& out) {
  if (b.empty()) {
    // "x1" would lex as one identifier.
    if (!out.empty() && (std::isalnum(static_cast<unsigned char>(out.back())) || out.back() == '_')) out += ' ';
    out += '1';
    return;
  }
  std::vector<std::pair<std::string, std::string>> elems;
  for (const auto& r : b.elements()) elems.emplace_back(canonical_key(r), print_resource(r));
  std::sort(elems.begin(), elems.end());
  out += '[';
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ',';
    out += elems[i].second;
  }
  out += ']';
}

void print_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Var:
      out += t.name();
      return;
    case Kind::Abs: {
      out += '\\';
      out += t.name();
      const Term* body = &t.body();
      while (body->is_abs()) {
        out += ' ';
        out += body->name();
        body = &body->body();
      }
      out += '.';
      print_term(*body, out);
      return;
    }
    case Kind::App:
      if (t.fun().is_abs()) {
        out += '(';
        print_term(t.fun(), out);
        out += ')';
      } else {
        print_term(t.fun(), out);
      }
      print_bag(t.arg(), out);
      return;
  }
}

template <class T>
std::string print_sum(const Sum<T>& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [k, e] : s) {
    std::string addend = print(e.value);
    for (std::size_t i = 0; i < e.mult; ++i) {
      if (!out.empty()) out += " + ";
      out += addend;
    }
  }
  return out;
}

}  // namespace

ParsedSum parse_sum_spans(std::string_view text) { return Parser(text).sum(); }

TermSum parse_sum(std::string_view text) { return parse_sum_spans(text).sum; }

Term parse_term(std::string_view text) {
  ParsedSum p = parse_sum_spans(text);
  if (p.addends.size() != 1) {
    throw ParseError("expected a single term, found a sum of " +
                         std::to_string(p.addends.size()) + " addends",
                     {0, text.size()}, {"term"});
  }
  return p.addends.front();
}

Bag parse_bag(std::string_view text) { return Parser(text).standalone_bag(); }

std::string print(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string print(const Bag& b) {
  std::string out;
  print_bag(b, out);
  return out;
}

std::string print(const Resource& r) { return print_resource(r); }
std::string print(const TermSum& s) { return print_sum(s); }
std::string print(const BagSum& s) { return print_sum(s); }

std::string print(const Expression& e) {
  return std::visit([](const auto& v) { return print(v); }, e);
}

}  // namespace rcalc
