#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "rcalc/parser.hpp"
#include "rcalc/syntax.hpp"

namespace support {

inline rcalc::Term T(const std::string& s) { return rcalc::parse_term(s); }
inline rcalc::TermSum S(const std::string& s) { return rcalc::parse_sum(s); }
inline rcalc::Bag B(const std::string& s) { return rcalc::parse_bag(s); }

inline bool same(const rcalc::TermSum& a, const std::string& b) { return rcalc::alpha_eq(a, S(b)); }
inline bool same(const rcalc::Term& a, const std::string& b) { return rcalc::alpha_eq(a, T(b)); }

}  // namespace support

#include "rcalc/reduction.hpp"

namespace support {

/// The redex of m whose subterm is alpha-equal to `sub` (first in canonical order).
inline rcalc::Redex redex(const rcalc::Term& m, const std::string& sub) {
  for (const auto& r : rcalc::find_redexes(m)) {
    if (rcalc::alpha_eq(rcalc::checked_subterm(m, r.path), T(sub))) return r;
  }
  throw std::invalid_argument("no redex " + sub);
}

/// Position of the first subterm alpha-equal to `sub`, in canonical order.
inline rcalc::Path locate(const rcalc::Term& m, const std::string& sub) {
  rcalc::Term want = T(sub);
  std::optional<std::pair<std::vector<int>, rcalc::Path>> best;
  std::function<void(const rcalc::Term&, rcalc::Path&)> walk = [&](const rcalc::Term& t, rcalc::Path& at) {
    if (rcalc::alpha_eq(t, want)) {
      auto code = rcalc::canonical_path(m, at);
      if (!best || code < best->first) best.emplace(code, at);
    }
    if (t.is_abs()) {
      at.push_back({rcalc::PathTag::AbsBody});
      walk(t.body(), at);
      at.pop_back();
    } else if (t.is_app()) {
      at.push_back({rcalc::PathTag::AppFun});
      walk(t.fun(), at);
      at.pop_back();
      for (const auto& r : t.arg().elements()) {
        at.push_back({rcalc::PathTag::AppArg});
        at.push_back({rcalc::PathTag::BagElem, r.id});
        at.push_back({rcalc::PathTag::ResourceContent});
        walk(r.content, at);
        at.resize(at.size() - 3);
      }
    }
  };
  rcalc::Path at;
  walk(m, at);
  if (!best) throw std::invalid_argument("no subterm " + sub);
  return best->second;
}

}  // namespace support
