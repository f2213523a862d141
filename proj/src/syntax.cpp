#include "rcalc/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cctype>
#include <stdexcept>

namespace rcalc {

namespace {
std::atomic<ElemId> next_elem_id{1};
}

ElemId fresh_elem_id() { return next_elem_id.fetch_add(1, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// Term / Bag

Term Term::var(Name name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, 0}));
}

Term Term::abs(Name binder, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Abs, std::move(binder), std::move(body), {}, 0}));
}

Term Term::app(Term fun, Bag arg, Label label) {
  return Term(std::make_shared<const Node>(
      Node{Kind::App, {}, std::move(fun), std::move(arg), label}));
}

Kind Term::kind() const { return node_->kind; }
bool Term::is_redex() const { return is_app() && fun().is_abs(); }
const Name& Term::name() const { return node_->name; }
const Term& Term::body() const { return node_->child; }
const Term& Term::fun() const { return node_->child; }
const Bag& Term::arg() const { return node_->arg; }
Label Term::label() const { return node_->label; }

Term Term::with_label(Label label) const {
  if (!is_app()) throw std::logic_error("labels only attach to applications");
  return app(fun(), arg(), label);
}

Bag::Bag(std::vector<Resource> elems) : elems_(std::move(elems)) {
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    bool clash = elems_[i].id == 0;
    for (std::size_t j = 0; j < i && !clash; ++j) clash = elems_[j].id == elems_[i].id;
    if (clash) elems_[i].id = fresh_elem_id();
  }
}

const Resource* Bag::find(ElemId id) const {
  for (const auto& r : elems_)
    if (r.id == id) return &r;
  return nullptr;
}

Bag Bag::prepend(Resource r) const {
  std::vector<Resource> v;
  v.reserve(elems_.size() + 1);
  v.push_back(std::move(r));
  v.insert(v.end(), elems_.begin(), elems_.end());
  return Bag(std::move(v));
}

Bag Bag::concat(const Bag& other) const {
  std::vector<Resource> v = elems_;
  v.insert(v.end(), other.elems_.begin(), other.elems_.end());
  return Bag(std::move(v));
}

Bag Bag::without(ElemId id) const {
  std::vector<Resource> v;
  v.reserve(elems_.size());
  for (const auto& r : elems_)
    if (r.id != id) v.push_back(r);
  return Bag(std::move(v));
}

Bag Bag::with_content(ElemId id, Term content) const {
  std::vector<Resource> v = elems_;
  for (auto& r : v)
    if (r.id == id) r.content = content;
  return Bag(std::move(v));
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

struct KeyWriter {
  bool labels;
  std::vector<const Name*> binders;

  void term(const Term& t, std::string& out) {
    switch (t.kind()) {
      case Kind::Var: {
        for (std::size_t i = binders.size(); i-- > 0;) {
          if (*binders[i] == t.name()) {
            out += '#';
            out += std::to_string(binders.size() - 1 - i);
            out += ';';
            return;
          }
        }
        out += '$';
        out += t.name();
        out += ';';
        return;
      }
      case Kind::Abs:
        out += '\\';
        binders.push_back(&t.name());
        term(t.body(), out);
        binders.pop_back();
        return;
      case Kind::App:
        out += '@';
        if (labels && t.label() != 0) {
          out += '{';
          out += std::to_string(t.label());
          out += '}';
        }
        term(t.fun(), out);
        bag(t.arg(), out);
        return;
    }
  }

  void resource(const Resource& r, std::string& out) {
    out += r.reusable ? '!' : '*';
    term(r.content, out);
  }

  void bag(const Bag& b, std::string& out) {
    std::vector<std::string> keys;
    keys.reserve(b.size());
    for (const auto& r : b.elements()) {
      std::string k;
      resource(r, k);
      keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    out += '[';
    for (const auto& k : keys) out += k;
    out += ']';
  }
};

}  // namespace

std::string canonical_key(const Term& t) {
  std::string out;
  KeyWriter{false, {}}.term(t, out);
  return out;
}

std::string canonical_key(const Bag& b) {
  std::string out;
  KeyWriter{false, {}}.bag(b, out);
  return out;
}

std::string canonical_key(const Resource& r) {
  std::string out;
  KeyWriter{false, {}}.resource(r, out);
  return out;
}

std::string contextual_key(const Resource& r, const std::vector<Name>& binders) {
  KeyWriter w{false, {}};
  for (const auto& b : binders) w.binders.push_back(&b);
  std::string out;
  w.resource(r, out);
  return out;
}

std::string labeled_key(const Term& t) {
  std::string out;
  KeyWriter{true, {}}.term(t, out);
  return out;
}

std::string labeled_key(const Bag& b) {
  std::string out;
  KeyWriter{true, {}}.bag(b, out);
  return out;
}

CanonicalForm canonicalize(const Expression& e) {
  // The leading tag keeps the term and bag sorts apart.
  if (const auto* t = std::get_if<Term>(&e)) return {"T" + canonical_key(*t)};
  return {"B" + canonical_key(std::get<Bag>(e))};
}

bool alpha_eq(const Term& a, const Term& b) { return canonical_key(a) == canonical_key(b); }
bool alpha_eq(const Bag& a, const Bag& b) { return canonical_key(a) == canonical_key(b); }
bool alpha_eq(const Expression& a, const Expression& b) {
  return canonicalize(a) == canonicalize(b);
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Term& t, std::vector<const Name*>& bound, std::set<Name>& out);

void collect_free(const Bag& b, std::vector<const Name*>& bound, std::set<Name>& out) {
  for (const auto& r : b.elements()) collect_free(r.content, bound, out);
}

void collect_free(const Term& t, std::vector<const Name*>& bound, std::set<Name>& out) {
  switch (t.kind()) {
    case Kind::Var:
      for (const Name* n : bound)
        if (*n == t.name()) return;
      out.insert(t.name());
      return;
    case Kind::Abs:
      bound.push_back(&t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Kind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
  }
}

bool occurs(const Term& t, const Name& x);

bool occurs(const Bag& b, const Name& x) {
  for (const auto& r : b.elements())
    if (occurs(r.content, x)) return true;
  return false;
}

bool occurs(const Term& t, const Name& x) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name() == x;
    case Kind::Abs:
      return t.name() != x && occurs(t.body(), x);
    case Kind::App:
      return occurs(t.fun(), x) || occurs(t.arg(), x);
  }
  return false;
}

void collect_names(const Term& t, std::set<Name>& out) {
  switch (t.kind()) {
    case Kind::Var:
      out.insert(t.name());
      return;
    case Kind::Abs:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
    case Kind::App:
      collect_names(t.fun(), out);
      for (const auto& r : t.arg().elements()) collect_names(r.content, out);
      return;
  }
}

}  // namespace

std::set<Name> free_vars(const Term& t) {
  std::vector<const Name*> bound;
  std::set<Name> out;
  collect_free(t, bound, out);
  return out;
}

std::set<Name> free_vars(const Bag& b) {
  std::vector<const Name*> bound;
  std::set<Name> out;
  collect_free(b, bound, out);
  return out;
}

std::set<Name> free_vars(const Expression& e) {
  return std::visit([](const auto& v) { return free_vars(v); }, e);
}

bool occurs_free(const Term& t, const Name& x) { return occurs(t, x); }
bool occurs_free(const Bag& b, const Name& x) { return occurs(b, x); }

std::set<Name> all_names(const Term& t) {
  std::set<Name> out;
  collect_names(t, out);
  return out;
}

std::size_t size(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return 1;
    case Kind::Abs:
      return 1 + size(t.body());
    case Kind::App:
      return 1 + size(t.fun()) + size(t.arg());
  }
  return 0;
}

std::size_t size(const Bag& b) {
  std::size_t n = 0;
  for (const auto& r : b.elements()) n += 2 + size(r.content);
  return n;
}

std::size_t size(const Expression& e) {
  return std::visit([](const auto& v) { return size(v); }, e);
}

Term erase_labels(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
      return t;
    case Kind::Abs:
      return Term::abs(t.name(), erase_labels(t.body()));
    case Kind::App:
      return Term::app(erase_labels(t.fun()), erase_labels(t.arg()), 0);
  }
  return t;
}

Bag erase_labels(const Bag& b) {
  std::vector<Resource> v = b.elements();
  for (auto& r : v) r.content = erase_labels(r.content);
  return Bag(std::move(v));
}

Name fresh_name(const Name& base, const std::set<Name>& avoid) {
  std::size_t end = base.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
  Name stem = base.substr(0, end);
  if (stem.empty()) stem = "v";
  for (std::size_t i = 1;; ++i) {
    Name candidate = stem + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

Term rename_free(const Term& t, const Name& from, const Name& to) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name() == from ? Term::var(to) : t;
    case Kind::Abs:
      if (t.name() == from) return t;
      return Term::abs(t.name(), rename_free(t.body(), from, to));
    case Kind::App:
      return Term::app(rename_free(t.fun(), from, to), rename_free(t.arg(), from, to),
                       t.label());
  }
  return t;
}

Bag rename_free(const Bag& b, const Name& from, const Name& to) {
  std::vector<Resource> v = b.elements();
  for (auto& r : v) r.content = rename_free(r.content, from, to);
  return Bag(std::move(v));
}

// ---------------------------------------------------------------------------
// Sums

std::map<std::string, std::size_t> plain_multiset(const TermSum& s) {
  std::map<std::string, std::size_t> out;
  for (const auto& [k, e] : s) out[canonical_key(e.value)] += e.mult;
  return out;
}

std::map<std::string, std::size_t> plain_multiset(const BagSum& s) {
  std::map<std::string, std::size_t> out;
  for (const auto& [k, e] : s) out[canonical_key(e.value)] += e.mult;
  return out;
}

bool alpha_eq(const TermSum& a, const TermSum& b) {
  return plain_multiset(a) == plain_multiset(b);
}

bool alpha_eq(const BagSum& a, const BagSum& b) {
  return plain_multiset(a) == plain_multiset(b);
}

TermSum sum_abs(const Name& x, const TermSum& body) {
  TermSum out;
  for (const auto& [k, e] : body) out.add(Term::abs(x, e.value), e.mult);
  return out;
}

TermSum sum_app(const TermSum& fun, const BagSum& arg, Label label) {
  TermSum out;
  for (const auto& [kf, f] : fun)
    for (const auto& [ka, a] : arg) out.add(Term::app(f.value, a.value, label), f.mult * a.mult);
  return out;
}

BagSum sum_bag_linear(const TermSum& content, const BagSum& rest, ElemId id) {
  BagSum out;
  for (const auto& [kc, c] : content)
    for (const auto& [kr, r] : rest)
      out.add(r.value.prepend(Resource{c.value, false, id}), c.mult * r.mult);
  return out;
}

BagSum sum_bag_reusable(const TermSum& content, const BagSum& rest, ElemId id) {
  // One bag per addend of `rest`, holding every addend of `content` (with
  // multiplicity) as a reusable resource.
  std::vector<Resource> copies;
  for (const auto& [kc, c] : content) {
    for (std::size_t i = 0; i < c.mult; ++i) {
      copies.push_back(Resource{c.value, true, copies.empty() ? id : 0});
    }
  }
  BagSum out;
  for (const auto& [kr, r] : rest) {
    std::vector<Resource> v = copies;
    v.insert(v.end(), r.value.elements().begin(), r.value.elements().end());
    out.add(Bag(std::move(v)), r.mult);
  }
  return out;
}

}  // namespace rcalc
