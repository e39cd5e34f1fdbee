#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posh/error.hpp"

namespace posh {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// A binary relation on {0..n-1} read as "i <= j". Construction does not
/// enforce the partial-order laws; `first_violation` reports which one fails.
class Poset {
 public:
  Poset() = default;

  /// Discrete order on n elements.
  explicit Poset(std::size_t n) : n_(n), rel_(n * n, 0) {
    for (std::size_t i = 0; i < n; ++i) rel_[i * n + i] = 1;
  }

  /// Reflexive closure of the given pairs, without transitive closure.
  static Poset from_pairs(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    Poset p(n);
    for (auto [lo, hi] : pairs) p.set(lo, hi);
    return p;
  }

  /// Reflexive-transitive closure; throws NotAPoset with a cycle witness.
  static Poset closure_of(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    Poset p = from_pairs(n, pairs);
    p.close_transitively();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (p.leq(i, j) && p.leq(j, i)) {
          throw Error(ErrorKind::NotAPoset, "cycle between elements " + std::to_string(i) +
                                                " and " + std::to_string(j),
                      {i, j});
        }
      }
    }
    return p;
  }

  template <typename Leq>
  static Poset from_predicate(std::size_t n, Leq&& leq) {
    Poset p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq(i, j)) p.set(i, j);
    return p;
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool leq(std::size_t i, std::size_t j) const { return rel_[i * n_ + j] != 0; }
  [[nodiscard]] bool lt(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  void set(std::size_t i, std::size_t j, bool v = true) { rel_[i * n_ + j] = v ? 1 : 0; }

  void close_transitively() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (leq(i, k))
          for (std::size_t j = 0; j < n_; ++j)
            if (leq(k, j)) set(i, j);
  }

  [[nodiscard]] Poset opposite() const {
    Poset p(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) p.set(i, j, leq(j, i));
    return p;
  }

  /// First failing law among reflexivity, antisymmetry, transitivity, with
  /// the offending elements.
  [[nodiscard]] std::optional<std::pair<std::string, std::vector<std::size_t>>> first_violation() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!leq(i, i)) return std::pair{std::string("reflexivity"), std::vector<std::size_t>{i}};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (leq(i, j) && leq(j, i))
          return std::pair{std::string("antisymmetry"), std::vector<std::size_t>{i, j}};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (leq(i, j))
          for (std::size_t k = 0; k < n_; ++k)
            if (leq(j, k) && !leq(i, k))
              return std::pair{std::string("transitivity"), std::vector<std::size_t>{i, j, k}};
    return std::nullopt;
  }

  /// The unique least element of `candidates`, if one exists.
  [[nodiscard]] std::optional<std::size_t> least_of(std::span<const std::size_t> candidates) const {
    for (std::size_t c : candidates) {
      bool least = true;
      for (std::size_t d : candidates) {
        if (!leq(c, d)) {
          least = false;
          break;
        }
      }
      if (least) return c;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::optional<std::size_t> greatest_of(std::span<const std::size_t> candidates) const {
    for (std::size_t c : candidates) {
      bool greatest = true;
      for (std::size_t d : candidates) {
        if (!leq(d, c)) {
          greatest = false;
          break;
        }
      }
      if (greatest) return c;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::vector<std::size_t> upper_bounds(std::span<const std::size_t> xs) const {
    std::vector<std::size_t> ub;
    for (std::size_t c = 0; c < n_; ++c) {
      bool ok = true;
      for (std::size_t x : xs) {
        if (!leq(x, c)) {
          ok = false;
          break;
        }
      }
      if (ok) ub.push_back(c);
    }
    return ub;
  }

  [[nodiscard]] std::vector<std::size_t> lower_bounds(std::span<const std::size_t> xs) const {
    std::vector<std::size_t> lb;
    for (std::size_t c = 0; c < n_; ++c) {
      bool ok = true;
      for (std::size_t x : xs) {
        if (!leq(c, x)) {
          ok = false;
          break;
        }
      }
      if (ok) lb.push_back(c);
    }
    return lb;
  }

  [[nodiscard]] std::optional<std::size_t> join_of(std::span<const std::size_t> xs) const {
    const auto ub = upper_bounds(xs);
    return least_of(ub);
  }
  [[nodiscard]] std::optional<std::size_t> meet_of(std::span<const std::size_t> xs) const {
    const auto lb = lower_bounds(xs);
    return greatest_of(lb);
  }
  [[nodiscard]] std::optional<std::size_t> join(std::size_t a, std::size_t b) const {
    const std::size_t xs[] = {a, b};
    return join_of(xs);
  }
  [[nodiscard]] std::optional<std::size_t> meet(std::size_t a, std::size_t b) const {
    const std::size_t xs[] = {a, b};
    return meet_of(xs);
  }
  [[nodiscard]] std::optional<std::size_t> bottom() const { return join_of({}); }
  [[nodiscard]] std::optional<std::size_t> top() const { return meet_of({}); }

  /// A finite poset is a complete lattice iff it has a bottom and all binary joins.
  [[nodiscard]] bool is_complete_lattice() const {
    if (!bottom()) return false;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!join(i, j)) return false;
    return true;
  }

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<char> rel_;
};

/// Join and meet tables of a finite poset that is a complete lattice.
struct LatticeTables {
  std::size_t n = 0;
  std::vector<std::size_t> join_, meet_;
  std::size_t bottom = 0, top = 0;

  [[nodiscard]] std::size_t join(std::size_t a, std::size_t b) const { return join_[a * n + b]; }
  [[nodiscard]] std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * n + b]; }
  template <typename Range>
  [[nodiscard]] std::size_t join_all(const Range& xs) const {
    std::size_t r = bottom;
    for (auto x : xs) r = join(r, x);
    return r;
  }
  template <typename Range>
  [[nodiscard]] std::size_t meet_all(const Range& xs) const {
    std::size_t r = top;
    for (auto x : xs) r = meet(r, x);
    return r;
  }
};

/// The tables when `p` is a nonempty complete lattice. A least upper bound
/// is the upper bound with the fewest elements below it, so each pair
/// costs one pass to pick the candidate and one to confirm it.
inline std::optional<LatticeTables> lattice_tables(const Poset& p) {
  const std::size_t n = p.size();
  if (n == 0) return std::nullopt;
  LatticeTables t;
  t.n = n;
  t.join_.assign(n * n, kNone);
  t.meet_.assign(n * n, kNone);
  std::vector<std::size_t> down(n, 0), up(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(i, j)) {
        ++down[j];
        ++up[i];
      }
  auto extremum = [&](std::size_t a, std::size_t b, bool upper) -> std::size_t {
    auto bound = [&](std::size_t c) { return upper ? (p.leq(a, c) && p.leq(b, c)) : (p.leq(c, a) && p.leq(c, b)); };
    const auto& cnt = upper ? down : up;
    std::size_t best = kNone;
    for (std::size_t c = 0; c < n; ++c)
      if (bound(c) && (best == kNone || cnt[c] < cnt[best])) best = c;
    if (best == kNone) return kNone;
    for (std::size_t c = 0; c < n; ++c)
      if (bound(c) && !(upper ? p.leq(best, c) : p.leq(c, best))) return kNone;
    return best;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const std::size_t j = extremum(a, b, true), m = extremum(a, b, false);
      if (j == kNone || m == kNone) return std::nullopt;
      t.join_[a * n + b] = t.join_[b * n + a] = j;
      t.meet_[a * n + b] = t.meet_[b * n + a] = m;
    }
  std::size_t bot = 0, top = 0;
  for (std::size_t i = 1; i < n; ++i) {
    bot = t.meet(bot, i);
    top = t.join(top, i);
  }
  t.bottom = bot;
  t.top = top;
  return t;
}

/// A map between finite posets, given by its table.
struct MonotoneMap {
  Poset source;
  Poset target;
  std::vector<std::size_t> table;

  [[nodiscard]] std::size_t operator()(std::size_t x) const { return table[x]; }

  [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> monotonicity_violation() const {
    for (std::size_t a = 0; a < source.size(); ++a)
      for (std::size_t b = 0; b < source.size(); ++b)
        if (source.leq(a, b) && !target.leq(table[a], table[b])) return std::pair{a, b};
    return std::nullopt;
  }

  [[nodiscard]] MonotoneMap opposite() const { return {source.opposite(), target.opposite(), table}; }
};

/// Either the adjoint, or the target element at which the defining
/// extremum fails to exist.
struct AdjointResult {
  std::optional<MonotoneMap> adjoint;
  std::size_t witness = kNone;

  explicit operator bool() const { return adjoint.has_value(); }
};

/// g(b) = min{a : b <= f(a)} for every b, verified against
/// g(b) <= a  <=>  b <= f(a).
inline AdjointResult left_adjoint(const MonotoneMap& f) {
  if (f.table.size() != f.source.size()) {
    throw Error(ErrorKind::DomainMismatch, "map table does not cover the source");
  }
  if (auto bad = f.monotonicity_violation()) {
    throw Error(ErrorKind::NotMonotone, "map is not monotone", {bad->first, bad->second});
  }
  MonotoneMap g{f.target, f.source, std::vector<std::size_t>(f.target.size(), kNone)};
  std::vector<std::size_t> candidates;
  for (std::size_t b = 0; b < f.target.size(); ++b) {
    candidates.clear();
    for (std::size_t a = 0; a < f.source.size(); ++a)
      if (f.target.leq(b, f.table[a])) candidates.push_back(a);
    auto m = f.source.least_of(candidates);
    if (!m) return {std::nullopt, b};
    g.table[b] = *m;
  }
  for (std::size_t b = 0; b < f.target.size(); ++b)
    for (std::size_t a = 0; a < f.source.size(); ++a)
      if (f.source.leq(g.table[b], a) != f.target.leq(b, f.table[a])) return {std::nullopt, b};
  return {std::move(g), kNone};
}

/// Dual of left_adjoint, computed on the order-opposites.
inline AdjointResult right_adjoint(const MonotoneMap& f) {
  auto r = left_adjoint(f.opposite());
  if (r.adjoint) r.adjoint = r.adjoint->opposite();
  return r;
}

}  // namespace posh
