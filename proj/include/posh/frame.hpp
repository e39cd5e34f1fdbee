#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/error.hpp"
#include "posh/poset.hpp"
#include "posh/report.hpp"

namespace posh {

/// A finite distributive lattice of opens. Every finite distributive lattice
/// is a frame, so this plays O(X) for a finite locale X. Elements keep their
/// input order, which fixes every iteration order downstream.
class FiniteFrame {
 public:
  FiniteFrame() = default;

  /// Closes the generating relation reflexively and transitively, then checks
  /// the poset, lattice and distributive laws in that order.
  static FiniteFrame build(std::vector<std::string> names,
                           std::span<const std::pair<std::size_t, std::size_t>> generators) {
    check_names(names);
    Poset order = Poset::closure_of(names.size(), generators);
    return from_poset(std::move(names), std::move(order));
  }

  static FiniteFrame build(std::vector<std::string> names,
                           std::span<const std::pair<std::string, std::string>> generators) {
    check_names(names);
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(generators.size());
    for (const auto& [lo, hi] : generators) {
      auto l = idx.find(lo);
      auto h = idx.find(hi);
      if (l == idx.end() || h == idx.end()) {
        throw Error(ErrorKind::MalformedInput, "relation mentions unknown element '" +
                                                   (l == idx.end() ? lo : hi) + "'");
      }
      pairs.emplace_back(l->second, h->second);
    }
    return build(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>(pairs));
  }

  /// Takes an order that is already a partial order.
  static FiniteFrame from_poset(std::vector<std::string> names, Poset order) {
    check_names(names);
    if (order.size() != names.size()) throw Error(ErrorKind::DomainMismatch, "order size mismatch");
    if (auto bad = order.first_violation()) {
      Json w = Json::array();
      for (auto i : bad->second) w.push_back(names[i]);
      throw Error(ErrorKind::NotAPoset, bad->first + " fails", w);
    }
    FiniteFrame f;
    const std::size_t n = names.size();
    f.names_ = std::move(names);
    f.order_ = std::move(order);
    for (std::size_t i = 0; i < n; ++i) f.index_.emplace(f.names_[i], i);
    f.join_.assign(n * n, kNone);
    f.meet_.assign(n * n, kNone);
    // A least upper bound, when it exists, is the upper bound with the
    // fewest elements below it; the candidate is then checked against all.
    std::vector<std::size_t> down_count(n, 0), up_count(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        down_count[j] += f.order_.leq(i, j);
        up_count[i] += f.order_.leq(i, j);
      }
    auto extremum = [&](std::size_t a, std::size_t b, bool upper) -> std::optional<std::size_t> {
      std::size_t best = kNone;
      for (std::size_t c = 0; c < n; ++c) {
        const bool bound = upper ? (f.order_.leq(a, c) && f.order_.leq(b, c))
                                 : (f.order_.leq(c, a) && f.order_.leq(c, b));
        if (!bound) continue;
        const auto& cnt = upper ? down_count : up_count;
        if (best == kNone || cnt[c] < cnt[best]) best = c;
      }
      if (best == kNone) return std::nullopt;
      for (std::size_t c = 0; c < n; ++c) {
        const bool bound = upper ? (f.order_.leq(a, c) && f.order_.leq(b, c))
                                 : (f.order_.leq(c, a) && f.order_.leq(c, b));
        if (bound && !(upper ? f.order_.leq(best, c) : f.order_.leq(c, best))) return std::nullopt;
      }
      return best;
    };
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto j = extremum(a, b, true);
        auto m = extremum(a, b, false);
        if (!j || !m) {
          throw Error(ErrorKind::NotALattice,
                      std::string("pair lacks a ") + (!j ? "join" : "meet") + ": " + f.names_[a] +
                          ", " + f.names_[b],
                      {f.names_[a], f.names_[b]});
        }
        f.join_[a * n + b] = *j;
        f.meet_[a * n + b] = *m;
      }
    }
    f.bottom_ = *f.order_.bottom();
    f.top_ = *f.order_.top();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (f.meet(x, f.join(y, z)) != f.join(f.meet(x, y), f.meet(x, z))) {
            throw Error(ErrorKind::NotDistributive,
                        "x∧(y∨z) ≠ (x∧y)∨(x∧z) at (" + f.names_[x] + ", " + f.names_[y] + ", " +
                            f.names_[z] + ")",
                        {f.names_[x], f.names_[y], f.names_[z]});
          }
    f.imp_.assign(n * n, kNone);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t best = f.bottom_;
        for (std::size_t z = 0; z < n; ++z)
          if (f.order_.leq(f.meet(z, x), y)) best = f.join(best, z);
        f.imp_[x * n + y] = best;
      }
    }
    f.covers_ = std::make_shared<CoverCache>(n);
    return f;
  }

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const Poset& order() const noexcept { return order_; }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index(const std::string& n) const {
    auto i = find(n);
    if (!i) throw Error(ErrorKind::MalformedInput, "unknown open '" + n + "'");
    return *i;
  }

  [[nodiscard]] bool leq(std::size_t a, std::size_t b) const { return order_.leq(a, b); }
  [[nodiscard]] bool lt(std::size_t a, std::size_t b) const { return order_.lt(a, b); }
  [[nodiscard]] std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  [[nodiscard]] std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  [[nodiscard]] std::size_t heyting(std::size_t x, std::size_t y) const { return imp_[x * size() + y]; }
  [[nodiscard]] std::size_t bottom() const noexcept { return bottom_; }
  [[nodiscard]] std::size_t top() const noexcept { return top_; }

  [[nodiscard]] std::size_t join_of(std::span<const std::size_t> xs) const {
    std::size_t r = bottom_;
    for (auto x : xs) r = join(r, x);
    return r;
  }
  [[nodiscard]] std::size_t meet_of(std::span<const std::size_t> xs) const {
    std::size_t r = top_;
    for (auto x : xs) r = meet(r, x);
    return r;
  }

  [[nodiscard]] std::vector<std::size_t> below(std::size_t u) const {
    std::vector<std::size_t> r;
    for (std::size_t v = 0; v < size(); ++v)
      if (leq(v, u)) r.push_back(v);
    return r;
  }

  /// Opens listed so that v comes before u whenever v < u.
  [[nodiscard]] std::vector<std::size_t> bottom_up() const {
    std::vector<std::size_t> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = i;
    std::vector<std::size_t> height(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) height[i] = below(i).size();
    std::stable_sort(r.begin(), r.end(), [&](auto a, auto b) { return height[a] < height[b]; });
    return r;
  }

  /// j is join-irreducible when j is not bottom and not the join of the opens strictly below it.
  [[nodiscard]] bool is_join_irreducible(std::size_t j) const {
    if (j == bottom_) return false;
    std::size_t r = bottom_;
    for (std::size_t v = 0; v < size(); ++v)
      if (order_.lt(v, j)) r = join(r, v);
    return r != j;
  }

  [[nodiscard]] std::vector<std::size_t> join_irreducibles() const {
    std::vector<std::size_t> r;
    for (auto j : bottom_up())
      if (is_join_irreducible(j)) r.push_back(j);
    return r;
  }

  /// Every subset S of the opens below u with ⋁S = u, the empty set included
  /// for u = bottom. Computed once per open on first use.
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& covers(std::size_t u) const {
    auto& cache = *covers_;
    std::call_once(cache.flags[u], [&] {
      const auto elems = below(u);
      if (elems.size() > 22) {
        throw Error(ErrorKind::ResourceLimit,
                    "cover enumeration below '" + names_[u] + "' has 2^" +
                        std::to_string(elems.size()) + " subsets");
      }
      std::vector<std::vector<std::size_t>> out;
      const std::size_t total = std::size_t{1} << elems.size();
      for (std::size_t mask = 0; mask < total; ++mask) {
        std::size_t j = bottom_;
        std::vector<std::size_t> members;
        for (std::size_t b = 0; b < elems.size(); ++b) {
          if (mask & (std::size_t{1} << b)) {
            j = join(j, elems[b]);
            members.push_back(elems[b]);
          }
        }
        if (j == u) out.push_back(std::move(members));
      }
      cache.covers[u] = std::move(out);
    });
    return cache.covers[u];
  }

  /// The principal downset ↓u as a frame; element i of the result is
  /// below(u)[i].
  [[nodiscard]] FiniteFrame down(std::size_t u) const {
    const auto elems = below(u);
    std::vector<std::string> ns;
    for (auto e : elems) ns.push_back(names_[e]);
    Poset p = Poset::from_predicate(elems.size(), [&](auto a, auto b) { return leq(elems[a], elems[b]); });
    return from_poset(std::move(ns), std::move(p));
  }

 private:
  struct CoverCache {
    explicit CoverCache(std::size_t n) : flags(n), covers(n) {}
    std::vector<std::once_flag> flags;
    std::vector<std::vector<std::vector<std::size_t>>> covers;
  };

  static void check_names(const std::vector<std::string>& names) {
    if (names.empty()) throw Error(ErrorKind::MalformedInput, "frame has no elements");
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!seen.emplace(names[i], i).second) {
        throw Error(ErrorKind::MalformedInput, "duplicate element '" + names[i] + "'");
      }
    }
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  Poset order_;
  std::vector<std::size_t> join_, meet_, imp_;
  std::size_t bottom_ = 0, top_ = 0;
  std::shared_ptr<CoverCache> covers_;
};

using FramePtr = std::shared_ptr<const FiniteFrame>;

inline FramePtr share(FiniteFrame f) { return std::make_shared<const FiniteFrame>(std::move(f)); }

/// close_and_verify_frame as a report: pass, or the violated law with its witness.
inline CheckReport verify_frame(std::vector<std::string> names,
                                std::span<const std::pair<std::string, std::string>> generators) {
  try {
    auto f = FiniteFrame::build(std::move(names), generators);
    auto r = CheckReport::pass("frame");
    r.details = {{"elements", f.size()}, {"bottom", f.name(f.bottom())}, {"top", f.name(f.top())}};
    return r;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedInput || e.kind() == ErrorKind::DomainMismatch) throw;
    return CheckReport::fail("frame", std::string(to_string(e.kind())), e.witness());
  }
}

/// A map between finite frames given by its table; being a frame
/// homomorphism is checked by verify_frame_hom.
struct FrameHom {
  FramePtr source;
  FramePtr target;
  std::vector<std::size_t> map;

  [[nodiscard]] std::size_t operator()(std::size_t x) const { return map[x]; }
};

inline FrameHom identity_hom(const FramePtr& f) {
  FrameHom h{f, f, std::vector<std::size_t>(f->size())};
  for (std::size_t i = 0; i < f->size(); ++i) h.map[i] = i;
  return h;
}

/// g ∘ f
inline FrameHom compose(const FrameHom& g, const FrameHom& f) {
  FrameHom h{f.source, g.target, std::vector<std::size_t>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

/// Checks finite meets (top, then binary) and joins (bottom, then binary).
/// Binary plus nullary preservation is equivalent to preserving arbitrary
/// joins and finite meets on finite lattices.
inline CheckReport verify_frame_hom(const FrameHom& h) {
  if (!h.source || !h.target || h.map.size() != h.source->size()) {
    throw Error(ErrorKind::DomainMismatch, "map is not total on the source frame");
  }
  for (auto y : h.map)
    if (y >= h.target->size()) throw Error(ErrorKind::DomainMismatch, "map leaves the target frame");
  const auto& s = *h.source;
  const auto& t = *h.target;
  const std::string name = "frame_hom";
  if (h(s.top()) != t.top()) return CheckReport::fail(name, "finite meet", {{"meet_of", Json::array()}});
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (h(s.meet(a, b)) != t.meet(h(a), h(b)))
        return CheckReport::fail(name, "finite meet", {{"meet_of", {s.name(a), s.name(b)}}});
  if (h(s.bottom()) != t.bottom()) return CheckReport::fail(name, "arbitrary join", {{"join_of", Json::array()}});
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (h(s.join(a, b)) != t.join(h(a), h(b)))
        return CheckReport::fail(name, "arbitrary join", {{"join_of", {s.name(a), s.name(b)}}});
  return CheckReport::pass(name);
}

/// Searches for an order isomorphism A → B. When `over` is given as (fa, fb)
/// the isomorphism must also satisfy iso ∘ fa = fb.
inline std::optional<std::vector<std::size_t>> find_frame_iso(
    const FiniteFrame& a, const FiniteFrame& b,
    const std::pair<const FrameHom*, const FrameHom*>& over = {nullptr, nullptr},
    std::size_t budget = 2'000'000) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;
  std::vector<std::size_t> down_a(n), down_b(n), up_a(n), up_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      down_a[i] += a.leq(j, i);
      up_a[i] += a.leq(i, j);
      down_b[i] += b.leq(j, i);
      up_b[i] += b.leq(i, j);
    }
  }
  std::vector<std::size_t> iso(n, kNone);
  if (over.first && over.second) {
    const auto& fa = *over.first;
    const auto& fb = *over.second;
    for (std::size_t x = 0; x < fa.map.size(); ++x) {
      auto& slot = iso[fa.map[x]];
      if (slot != kNone && slot != fb.map[x]) return std::nullopt;
      slot = fb.map[x];
    }
  }
  std::vector<char> used(n, 0);
  for (auto v : iso)
    if (v != kNone) {
      if (used[v]) return std::nullopt;
      used[v] = 1;
    }
  std::vector<std::size_t> order = a.bottom_up();
  std::size_t steps = 0;
  auto consistent = [&](std::size_t x, std::size_t y) {
    if (down_a[x] != down_b[y] || up_a[x] != up_b[y]) return false;
    for (std::size_t z = 0; z < n; ++z) {
      if (iso[z] == kNone || z == x) continue;
      if (a.leq(z, x) != b.leq(iso[z], y) || a.leq(x, z) != b.leq(y, iso[z])) return false;
    }
    return true;
  };
  for (std::size_t x = 0; x < n; ++x)
    if (iso[x] != kNone && !consistent(x, iso[x])) return std::nullopt;
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return true;
    const std::size_t x = order[k];
    if (iso[x] != kNone) return self(self, k + 1);
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || !consistent(x, y)) continue;
      charge(steps, budget, "frame isomorphism search");
      iso[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      iso[x] = kNone;
      used[y] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return iso;
}

/// Product frame with componentwise order; element (i, j) sits at i * |M| + j.
inline FiniteFrame product(const FiniteFrame& l, const FiniteFrame& m) {
  std::vector<std::string> ns;
  const std::size_t nm = m.size();
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < nm; ++j) ns.push_back("(" + l.name(i) + "," + m.name(j) + ")");
  Poset p = Poset::from_predicate(ns.size(), [&](auto x, auto y) {
    return l.leq(x / nm, y / nm) && m.leq(x % nm, y % nm);
  });
  return FiniteFrame::from_poset(std::move(ns), std::move(p));
}

/// The chain 0 < 1 < ... < n-1 with the given names.
inline FiniteFrame chain(std::vector<std::string> names) {
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) rel.emplace_back(i, i + 1);
  return FiniteFrame::build(std::move(names), std::span<const std::pair<std::size_t, std::size_t>>(rel));
}

}  // namespace posh
