#pragma once

// Terms, resources, bags and formal sums of the resource calculus.
//
// All values are immutable once built. Terms are cheap handles onto shared
// nodes, so copying a Term never copies the tree.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace rcalc {

using Name = std::string;
using ElemId = std::uint64_t;
/// Residual-tracking tag carried by application nodes; 0 means unlabeled.
using Label = std::uint32_t;

enum class Kind { Var, Abs, App };

/// Returns a process-unique bag element id. Thread-safe.
ElemId fresh_elem_id();

struct Node;
class Bag;

class Term {
 public:
  Term() = default;

  static Term var(Name name);
  static Term abs(Name binder, Term body);
  static Term app(Term fun, Bag arg, Label label = 0);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }
  /// App whose function is an abstraction.
  bool is_redex() const;

  /// Variable name, or the binder of an abstraction.
  const Name& name() const;
  const Term& body() const;
  const Term& fun() const;
  const Bag& arg() const;
  Label label() const;

  Term with_label(Label label) const;

  bool valid() const { return node_ != nullptr; }
  const Node* node() const { return node_.get(); }

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Resource {
  Term content;
  bool reusable = false;
  ElemId id = 0;

  static Resource linear(Term t) { return {std::move(t), false, 0}; }
  static Resource bang(Term t) { return {std::move(t), true, 0}; }
};

/// Finite multiset of resources. Element order inside the vector carries no
/// meaning; each element owns an id that is unique within its bag so that
/// positions into the multiset stay addressable.
class Bag {
 public:
  Bag() = default;
  /// Elements with id 0, or an id already used in this bag, get a fresh id.
  explicit Bag(std::vector<Resource> elems);

  const std::vector<Resource>& elements() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }

  const Resource* find(ElemId id) const;
  /// [r]·this
  Bag prepend(Resource r) const;
  /// this·other
  Bag concat(const Bag& other) const;
  Bag without(ElemId id) const;
  Bag with_content(ElemId id, Term content) const;

 private:
  std::vector<Resource> elems_;
};

struct Node {
  Kind kind;
  Name name;   // Var name or Abs binder
  Term child;  // Abs body or App function
  Bag arg;     // App argument
  Label label = 0;
};

using Expression = std::variant<Term, Bag>;

// ---------------------------------------------------------------------------
// Canonical forms
//
// Keys are nameless: bound variables become binder indices, free variables
// keep their name, bag elements are sorted. Two terms are alpha-equivalent
// (up to bag permutation) iff their plain keys are equal.

std::string canonical_key(const Term& t);
std::string canonical_key(const Bag& b);
std::string canonical_key(const Resource& r);
/// Key of a resource sitting under the given binders (outermost first), so
/// that variables bound outside the resource are keyed by binder index.
std::string contextual_key(const Resource& r, const std::vector<Name>& binders);
/// Like canonical_key, but application labels are part of the key.
std::string labeled_key(const Term& t);
std::string labeled_key(const Bag& b);

struct CanonicalForm {
  std::string key;
  auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonicalize(const Expression& e);

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Bag& a, const Bag& b);
bool alpha_eq(const Expression& a, const Expression& b);

std::set<Name> free_vars(const Term& t);
std::set<Name> free_vars(const Bag& b);
std::set<Name> free_vars(const Expression& e);
bool occurs_free(const Term& t, const Name& x);
bool occurs_free(const Bag& b, const Name& x);
/// Every name appearing in t, bound or free.
std::set<Name> all_names(const Term& t);

/// Symbol count: Var, Abs, App, resource wrapper and bag cons count 1 each.
std::size_t size(const Term& t);
std::size_t size(const Bag& b);
std::size_t size(const Expression& e);

/// Drops every application label.
Term erase_labels(const Term& t);
Bag erase_labels(const Bag& b);

/// Deterministic fresh name derived from `base`: the trailing digits of base
/// are stripped and a counter appended until the name is not in `avoid`.
Name fresh_name(const Name& base, const std::set<Name>& avoid);

/// Renames free occurrences of `from` to `to`. `to` must not be captured,
/// which holds when it is absent from all_names(t).
Term rename_free(const Term& t, const Name& from, const Name& to);
Bag rename_free(const Bag& b, const Name& from, const Name& to);

// ---------------------------------------------------------------------------
// Sums

inline std::string sum_key(const Term& t) { return labeled_key(t); }
inline std::string sum_key(const Bag& b) { return labeled_key(b); }

/// Finite formal sum with natural multiplicities. Addends are keyed by their
/// (labeled) canonical form, so alpha-equivalent addends merge.
template <class T>
class Sum {
 public:
  struct Entry {
    T value;
    std::size_t mult;
  };
  using Map = std::map<std::string, Entry>;

  Sum() = default;
  Sum(T value) { add(std::move(value)); }  // NOLINT: a single addend is a sum

  void add(T value, std::size_t mult = 1) {
    if (mult == 0) return;
    auto key = sum_key(value);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      entries_.emplace(std::move(key), Entry{std::move(value), mult});
    } else {
      it->second.mult += mult;
    }
  }
  void add(const Sum& other, std::size_t scale = 1) {
    for (const auto& [key, e] : other.entries_) {
      auto it = entries_.find(key);
      if (it == entries_.end()) {
        entries_.emplace(key, Entry{e.value, e.mult * scale});
      } else {
        it->second.mult += e.mult * scale;
      }
    }
  }

  bool is_zero() const { return entries_.empty(); }
  /// Number of addends counted with multiplicity.
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& [k, e] : entries_) n += e.mult;
    return n;
  }
  std::size_t distinct() const { return entries_.size(); }

  const Map& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Addends in canonical order, each listed once.
  std::vector<T> support() const {
    std::vector<T> out;
    out.reserve(entries_.size());
    for (const auto& [k, e] : entries_) out.push_back(e.value);
    return out;
  }
  /// Addends in canonical order, repeated by multiplicity.
  std::vector<T> expanded() const {
    std::vector<T> out;
    for (const auto& [k, e] : entries_)
      for (std::size_t i = 0; i < e.mult; ++i) out.push_back(e.value);
    return out;
  }

  /// Removes one copy of the addend with the given key; false if absent.
  bool remove_one(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return false;
    if (--it->second.mult == 0) entries_.erase(it);
    return true;
  }

  friend Sum operator+(Sum a, const Sum& b) {
    a.add(b);
    return a;
  }

 private:
  Map entries_;
};

using TermSum = Sum<Term>;
using BagSum = Sum<Bag>;

/// Multiset of plain canonical keys, ignoring labels.
std::map<std::string, std::size_t> plain_multiset(const TermSum& s);
std::map<std::string, std::size_t> plain_multiset(const BagSum& s);
bool alpha_eq(const TermSum& a, const TermSum& b);
bool alpha_eq(const BagSum& a, const BagSum& b);

// Constructors extended to sums.
//   λx.(Σ Mi)           = Σ λx.Mi
//   (Σ Mi)(Σ Pj)        = Σ Mi Pj
//   [Σ Mi]·(Σ Pj)       = Σ [Mi]·Pj
//   [(Σ^k Mi)!]·(Σ Pj)  = Σ [M1!,...,Mk!]·Pj      (so [0!]·P = P)

TermSum sum_abs(const Name& x, const TermSum& body);
TermSum sum_app(const TermSum& fun, const BagSum& arg, Label label = 0);
BagSum sum_bag_linear(const TermSum& content, const BagSum& rest, ElemId id = 0);
BagSum sum_bag_reusable(const TermSum& content, const BagSum& rest,
                        ElemId id = 0);

}  // namespace rcalc
