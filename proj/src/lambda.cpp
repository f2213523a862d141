#include "rcalc/lambda.hpp"

#include "lexer.hpp"

namespace rcalc {

LambdaTerm LambdaTerm::var(Name name) {
  return LambdaTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}}));
}

LambdaTerm LambdaTerm::abs(Name binder, LambdaTerm body) {
  return LambdaTerm(std::make_shared<const Node>(
      Node{Kind::Abs, std::move(binder), std::make_shared<const LambdaTerm>(std::move(body)), {}}));
}

LambdaTerm LambdaTerm::app(LambdaTerm fun, LambdaTerm arg) {
  return LambdaTerm(std::make_shared<const Node>(
      Node{Kind::App, {}, std::make_shared<const LambdaTerm>(std::move(fun)),
           std::make_shared<const LambdaTerm>(std::move(arg))}));
}

Term from_lambda(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return Term::var(t.name());
    case LambdaTerm::Kind::Abs:
      return Term::abs(t.name(), from_lambda(t.body()));
    case LambdaTerm::Kind::App:
      return Term::app(from_lambda(t.fun()), Bag({Resource::bang(from_lambda(t.arg()))}));
  }
  return {};
}

namespace {

using detail::Tok;

class LambdaParser {
 public:
  explicit LambdaParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  LambdaTerm parse() {
    LambdaTerm t = term();
    ts_.expect(Tok::End);
    return t;
  }

 private:
  LambdaTerm term() {
    if (ts_.at(Tok::Lambda)) {
      ts_.next();
      std::vector<Name> binders{ts_.expect(Tok::Ident).text};
      while (ts_.at(Tok::Ident)) binders.push_back(ts_.next().text);
      ts_.expect(Tok::Dot);
      LambdaTerm body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = LambdaTerm::abs(*it, body);
      return body;
    }
    LambdaTerm head = atom();
    for (;;) {
      if (ts_.at(Tok::Ident) || ts_.at(Tok::LParen)) {
        head = LambdaTerm::app(head, atom());
      } else if (ts_.at(Tok::Lambda)) {
        // A trailing abstraction argument extends to the right.
        head = LambdaTerm::app(head, term());
      } else {
        return head;
      }
    }
  }

  LambdaTerm atom() {
    if (ts_.at(Tok::Ident)) return LambdaTerm::var(ts_.next().text);
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      LambdaTerm t = term();
      ts_.expect(Tok::RParen);
      return t;
    }
    ts_.fail({Tok::Ident, Tok::LParen, Tok::Lambda});
  }

  detail::TokenStream ts_;
};

void print_into(const LambdaTerm& t, std::string& out) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      out += t.name();
      return;
    case LambdaTerm::Kind::Abs: {
      out += '\\';
      out += t.name();
      const LambdaTerm* body = &t.body();
      while (body->kind() == LambdaTerm::Kind::Abs) {
        out += ' ';
        out += body->name();
        body = &body->body();
      }
      out += '.';
      print_into(*body, out);
      return;
    }
    case LambdaTerm::Kind::App:
      if (t.fun().kind() == LambdaTerm::Kind::Abs) {
        out += '(';
        print_into(t.fun(), out);
        out += ')';
      } else {
        print_into(t.fun(), out);
      }
      out += ' ';
      if (t.arg().kind() == LambdaTerm::Kind::Var) {
        print_into(t.arg(), out);
      } else {
        out += '(';
        print_into(t.arg(), out);
        out += ')';
      }
      return;
  }
}

}  // namespace

LambdaTerm parse_lambda(std::string_view text) { return LambdaParser(text).parse(); }

std::string print_lambda(const LambdaTerm& t) {
  std::string out;
  print_into(t, out);
  return out;
}

}  // namespace rcalc
