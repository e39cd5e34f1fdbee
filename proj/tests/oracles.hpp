#pragma once

// Brute-force references used by the tests. They avoid the library's
// algorithms and only read raw tables.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "posh/frame.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/sheaf_locale.hpp"

namespace oracle {

using posh::FiniteFrame;
using posh::Presheaf;

/// Largest z with z ∧ x ≤ y, by scan.
inline std::size_t heyting(const FiniteFrame& f, std::size_t x, std::size_t y) {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < f.size(); ++z) {
    if (!f.leq(f.meet(z, x), y)) continue;
    if (!best || f.leq(*best, z)) best = z;
  }
  return *best;
}

/// All subsets of ↓u joining to u.
inline std::vector<std::vector<std::size_t>> all_covers(const FiniteFrame& f, std::size_t u) {
  std::vector<std::size_t> below;
  for (std::size_t v = 0; v < f.size(); ++v)
    if (f.leq(v, u)) below.push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << below.size()); ++mask) {
    std::vector<std::size_t> c;
    std::size_t j = f.bottom();
    for (std::size_t i = 0; i < below.size(); ++i)
      if (mask >> i & 1) {
        c.push_back(below[i]);
        j = f.join(j, below[i]);
      }
    if (j == u) out.push_back(c);
  }
  return out;
}

/// Every compatible family over every cover has exactly one amalgamation.
inline bool is_sheaf(const Presheaf& p) {
  const auto& X = *p.frame;
  for (std::size_t u = 0; u < X.size(); ++u)
    for (const auto& cover : all_covers(X, u)) {
      std::vector<std::size_t> fam(cover.size(), 0);
      bool empty_part = false;
      for (auto c : cover) empty_part = empty_part || p.size(c) == 0;
      auto count = [&] {
        std::size_t n = 0;
        for (std::size_t x = 0; x < p.size(u); ++x) {
          bool ok = true;
          for (std::size_t i = 0; i < cover.size() && ok; ++i) ok = p.restrict(u, x, cover[i]) == fam[i];
          n += ok;
        }
        return n;
      };
      if (empty_part) continue;  // no families at all
      while (true) {
        bool compatible = true;
        for (std::size_t i = 0; i < cover.size() && compatible; ++i)
          for (std::size_t k = 0; k < cover.size() && compatible; ++k) {
            const std::size_t m = X.meet(cover[i], cover[k]);
            compatible = p.restrict(cover[i], fam[i], m) == p.restrict(cover[k], fam[k], m);
          }
        if (compatible && count() != 1) return false;
        std::size_t i = 0;
        while (i < cover.size() && ++fam[i] == p.size(cover[i])) fam[i++] = 0;
        if (i == cover.size()) break;
      }
    }
  return true;
}

/// Subsheaves by scanning every subset of the disjoint union.
inline std::size_t count_subsheaves(const Presheaf& p) {
  const auto pts = posh::enumerate_points(p);
  std::size_t n = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pts.size()); ++mask) {
    posh::Subsheaf s = posh::empty_subset(p);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (mask >> i & 1) s.in[pts[i].dom][pts[i].value] = 1;
    bool closed = true;
    for (std::size_t i = 0; i < pts.size() && closed; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t v = 0; v < p.opens(); ++v)
        if (p.frame->leq(v, pts[i].dom) && !s.in[v][p.restrict(pts[i].dom, pts[i].value, v)]) closed = false;
    }
    if (!closed) continue;
    // the subset as a presheaf must itself be a sheaf
    Presheaf sub{p.frame, std::vector<std::vector<std::string>>(p.opens()), {}};
    std::vector<std::vector<std::size_t>> idx(p.opens());
    for (std::size_t u = 0; u < p.opens(); ++u)
      for (std::size_t x = 0; x < p.size(u); ++x)
        if (s.in[u][x]) {
          idx[u].push_back(x);
          sub.carriers[u].push_back(p.name(u, x));
        }
    sub.res.assign(p.opens(), std::vector<std::vector<std::size_t>>(p.opens()));
    for (std::size_t u = 0; u < p.opens(); ++u)
      for (std::size_t v = 0; v < p.opens(); ++v) {
        if (!p.frame->leq(v, u)) continue;
        for (auto x : idx[u]) {
          const std::size_t y = p.restrict(u, x, v);
          sub.res[u][v].push_back(static_cast<std::size_t>(std::find(idx[v].begin(), idx[v].end(), y) - idx[v].begin()));
        }
      }
    n += oracle::is_sheaf(sub);
  }
  return n;
}

/// (dom p ≥ dom q and p|dom q ≤ q): the point order p ≤ q, read off raw tables.
inline bool point_leq(const posh::PoSheaf& f, posh::Point p, posh::Point q) {
  const auto& X = f.X();
  if (!X.leq(p.dom, q.dom)) return false;
  return f.leq(p.dom, p.value, f.F().restrict(q.dom, q.value, p.dom));
}

/// Λ(P) by scanning every assignment f(s) ≤ dom s and checking every pair.
inline std::size_t count_lambda(const Presheaf& p) {
  const auto& X = *p.frame;
  const auto pts = posh::enumerate_points(p);
  std::vector<std::size_t> f(pts.size(), 0);
  std::vector<std::vector<std::size_t>> choices;
  for (const auto& s : pts) choices.push_back(X.below(s.dom));
  std::size_t n = 0;
  std::vector<std::size_t> pick(pts.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i)
      for (std::size_t j = 0; j < pts.size() && ok; ++j) {
        const std::size_t e = posh::epsilon(p, pts[i], pts[j]);
        ok = X.meet(choices[i][pick[i]], e) == X.meet(choices[j][pick[j]], e);
      }
    n += ok;
    std::size_t i = 0;
    while (i < pts.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pts.size()) break;
  }
  return n;
}

/// Sections over u: all maps O(Y) → ↓u that are frame homomorphisms and
/// satisfy s*(f*(x)) = x ∧ u.
inline std::size_t count_sections(const posh::LocaleOverX& f, std::size_t u) {
  const auto& X = f.X();
  const auto& Y = f.Y();
  const auto targets = X.below(u);
  std::vector<std::size_t> pick(Y.size(), 0);
  std::size_t n = 0;
  while (true) {
    auto s = [&](std::size_t y) { return targets[pick[y]]; };
    bool ok = s(Y.bottom()) == X.bottom() && s(Y.top()) == u;
    for (std::size_t a = 0; a < Y.size() && ok; ++a)
      for (std::size_t b = 0; b < Y.size() && ok; ++b)
        ok = s(Y.join(a, b)) == X.join(s(a), s(b)) && s(Y.meet(a, b)) == X.meet(s(a), s(b));
    for (std::size_t x = 0; x < X.size() && ok; ++x) ok = s(f.fstar(x)) == X.meet(x, u);
    n += ok;
    std::size_t i = 0;
    while (i < Y.size() && ++pick[i] == targets.size()) pick[i++] = 0;
    if (i == Y.size()) break;
  }
  return n;
}

}  // namespace oracle
