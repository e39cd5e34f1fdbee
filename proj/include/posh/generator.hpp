#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/frame_equiv.hpp"

namespace posh {

enum class Mutation { BreakPos3, BreakNaturality, BreakDistributivity, RemoveAmalgamation, BreakMeetSquare };

inline std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::BreakPos3: return "break-POS3";
    case Mutation::BreakNaturality: return "break-naturality";
    case Mutation::BreakDistributivity: return "break-distributivity";
    case Mutation::RemoveAmalgamation: return "remove-amalgamation";
    case Mutation::BreakMeetSquare: return "break-meet-square";
  }
  return "unknown";
}

inline std::optional<Mutation> mutation_from_string(std::string_view s) {
  for (auto m : {Mutation::BreakPos3, Mutation::BreakNaturality, Mutation::BreakDistributivity,
                 Mutation::RemoveAmalgamation, Mutation::BreakMeetSquare})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_opens = 6;
  std::size_t max_carrier = 3;
  std::optional<Mutation> mutation;
};

/// mt19937_64 with modulo draws, so sequences do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(g_() % n); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 g_;
};

// ---------------------------------------------------------------------------
// frames

/// Down-sets of a poset on letters a, b, ..., named by their members; the
/// empty set is "0" and the whole set "1".
inline FiniteFrame downset_frame(std::size_t m, const std::vector<std::pair<std::size_t, std::size_t>>& lt) {
  Poset base = Poset::closure_of(m, lt);
  std::vector<std::uint32_t> sets;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool down = true;
    for (std::size_t i = 0; i < m && down; ++i)
      if (mask & (1u << i))
        for (std::size_t j = 0; j < m && down; ++j)
          if (base.leq(j, i) && !(mask & (1u << j))) down = false;
    if (down) sets.push_back(mask);
  }
  std::stable_sort(sets.begin(), sets.end(), [](auto a, auto b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  const std::uint32_t full = m == 0 ? 0 : (1u << m) - 1;
  std::vector<std::string> names;
  for (auto s : sets) {
    if (s == 0) names.emplace_back("0");
    else if (s == full) names.emplace_back("1");
    else {
      std::string n;
      for (std::size_t i = 0; i < m; ++i)
        if (s & (1u << i)) n += static_cast<char>('a' + i);
      names.push_back(n);
    }
  }
  return FiniteFrame::from_poset(std::move(names), Poset::from_predicate(sets.size(), [&](auto a, auto b) {
    return (sets[a] & ~sets[b]) == 0;
  }));
}

inline std::size_t downset_count(std::size_t m, const std::vector<std::pair<std::size_t, std::size_t>>& lt) {
  Poset base = Poset::closure_of(m, lt);
  std::size_t c = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool down = true;
    for (std::size_t i = 0; i < m && down; ++i)
      if (mask & (1u << i))
        for (std::size_t j = 0; j < m && down; ++j)
          if (base.leq(j, i) && !(mask & (1u << j))) down = false;
    c += down;
  }
  return c;
}

/// A random down-set lattice with at most max_opens elements; trivial only
/// when max_opens is 1.
inline FiniteFrame gen_frame(Rng& rng, std::size_t max_opens) {
  if (max_opens == 0) throw Error(ErrorKind::MalformedInput, "max_opens must be at least 1");
  if (max_opens == 1) return downset_frame(0, {});
  while (true) {
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(max_opens - 1, 5));
    std::vector<std::pair<std::size_t, std::size_t>> lt;
    const std::size_t density = 1 + rng.below(3);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (rng.chance(density, 4)) lt.emplace_back(i, j);
    if (downset_count(m, lt) <= max_opens) return downset_frame(m, lt);
  }
}

inline FiniteFrame gen_frame(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_frame(rng, cfg.max_opens);
}

/// A frame homomorphism X → L: a monotone map g from the join-irreducibles
/// of L to those of X, read as h(x) = ⋁{k : g(k) ≤ x}.
inline FrameHom gen_frame_hom(Rng& rng, const FramePtr& x, std::size_t max_opens) {
  auto target = share(gen_frame(rng, max_opens));
  const auto& X = *x;
  const auto& L = *target;
  const auto jx = X.join_irreducibles();
  auto jl = L.join_irreducibles();
  {
    const auto bu = L.bottom_up();
    std::vector<std::size_t> rank(L.size());
    for (std::size_t i = 0; i < bu.size(); ++i) rank[bu[i]] = i;
    std::stable_sort(jl.begin(), jl.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
  }
  if (jx.empty() && !jl.empty()) return gen_frame_hom(rng, x, 1);
  // Bottom-up choices can paint themselves into a corner when the images
  // below k have no common upper bound; retry, then fall back to a constant.
  std::map<std::size_t, std::size_t> g;
  for (std::size_t attempt = 0; attempt < 16 && g.size() != jl.size(); ++attempt) {
    g.clear();
    for (auto k : jl) {
      std::vector<std::size_t> ok;
      for (auto j : jx) {
        bool mono = true;
        for (const auto& [k2, j2] : g)
          if (L.leq(k2, k) && !X.leq(j2, j)) mono = false;
        if (mono) ok.push_back(j);
      }
      if (ok.empty()) break;
      g[k] = ok[rng.below(ok.size())];
    }
  }
  if (g.size() != jl.size()) {
    g.clear();
    for (auto k : jl) g[k] = jx.front();
  }
  FrameHom h{x, target, std::vector<std::size_t>(X.size(), L.bottom())};
  for (std::size_t u = 0; u < X.size(); ++u)
    for (const auto& [k, j] : g)
      if (X.leq(j, u)) h.map[u] = L.join(h.map[u], k);
  return h;
}

// ---------------------------------------------------------------------------
// sheaves and posheaves

/// A sheaf is fixed by its sections over join-irreducibles j and the maps
/// F(j) → F(j⁻) to the open just below j; F(u) is then the set of
/// compatible families over the join-irreducibles below u.
struct JoinIrreducibleData {
  std::vector<std::size_t> jis;                   // bottom-up
  std::vector<std::vector<std::size_t>> below;    // per open: positions in jis of join-irreducibles ≤ u
};

inline JoinIrreducibleData ji_data(const FiniteFrame& X) {
  JoinIrreducibleData d;
  d.jis = X.join_irreducibles();
  const auto bu = X.bottom_up();
  std::vector<std::size_t> rank(X.size());
  for (std::size_t i = 0; i < bu.size(); ++i) rank[bu[i]] = i;
  std::stable_sort(d.jis.begin(), d.jis.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
  d.below.resize(X.size());
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t i = 0; i < d.jis.size(); ++i)
      if (X.leq(d.jis[i], u)) d.below[u].push_back(i);
  return d;
}

/// Random fibres at join-irreducibles with random restrictions to j⁻,
/// completed to a sheaf by taking all compatible families. A fibre is
/// empty when F(j⁻) is; otherwise it has 1..max_carrier sections.
inline PresheafPtr gen_sheaf(Rng& rng, const FramePtr& x, std::size_t max_carrier) {
  const auto& X = *x;
  auto d = ji_data(X);
  const std::size_t nj = d.jis.size();
  // restriction of section k over jis[i] to jis[i'] for i' with jis[i'] < jis[i]
  std::vector<std::vector<std::vector<std::size_t>>> down(nj);
  std::vector<std::size_t> fibre(nj, 0);
  // compatible families over the positions in `pos`, each a vector indexed by position
  auto families = [&](const std::vector<std::size_t>& pos) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(nj, kNone);
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == pos.size()) {
        out.push_back(cur);
        return;
      }
      const std::size_t i = pos[k];
      for (std::size_t s = 0; s < fibre[i]; ++s) {
        bool ok = true;
        for (std::size_t t = 0; t < k && ok; ++t) {
          const std::size_t i2 = pos[t];
          if (X.lt(d.jis[i2], d.jis[i])) ok = down[i][s][i2] == cur[i2];
        }
        if (!ok) continue;
        cur[i] = s;
        self(self, k + 1);
      }
      cur[i] = kNone;
    };
    rec(rec, 0);
    return out;
  };
  for (std::size_t i = 0; i < nj; ++i) {
    std::vector<std::size_t> lower;
    for (auto i2 : d.below[d.jis[i]])
      if (i2 != i) lower.push_back(i2);
    const auto fam = families(lower);
    fibre[i] = fam.empty() ? 0 : 1 + rng.below(std::max<std::size_t>(max_carrier, 1));
    for (std::size_t s = 0; s < fibre[i]; ++s) down[i].push_back(fam[rng.below(fam.size())]);
  }
  std::vector<std::string> jnames(nj);
  for (std::size_t i = 0; i < nj; ++i) jnames[i] = std::string(1, static_cast<char>('p' + i % 10));
  std::vector<std::vector<std::vector<std::size_t>>> fam(X.size());
  std::vector<std::vector<std::string>> carriers(X.size());
  for (std::size_t u = 0; u < X.size(); ++u) {
    fam[u] = families(d.below[u]);
    std::vector<std::size_t> maximal;
    for (auto i : d.below[u]) {
      bool top = true;
      for (auto i2 : d.below[u]) top = top && !X.lt(d.jis[i], d.jis[i2]);
      if (top) maximal.push_back(i);
    }
    for (const auto& f : fam[u]) {
      std::string n;
      for (auto i : maximal) {
        if (!n.empty()) n += '|';
        n += jnames[i] + std::to_string(f[i]);
      }
      carriers[u].push_back(n.empty() ? "*" : n);
    }
  }
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(X.size());
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t k = 0; k < fam[u].size(); ++k) index[u].emplace(fam[u][k], k);
  return share(make_presheaf(x, std::move(carriers), [&](std::size_t u, std::size_t k, std::size_t v) {
    std::vector<std::size_t> r(nj, kNone);
    for (auto i : d.below[v]) r[i] = fam[u][k][i];
    return index[v].at(r);
  }));
}

/// Random orders at join-irreducibles pushed down along restrictions and
/// closed transitively, then read pointwise at every open. A repair that
/// breaks antisymmetry is re-sampled; after `attempts` the order is discrete.
inline PoSheaf gen_order(Rng& rng, const PresheafPtr& f, std::size_t attempts = 8) {
  const auto& F = *f;
  const auto& X = *F.frame;
  auto d = ji_data(X);
  const std::size_t nj = d.jis.size();
  for (std::size_t attempt = 0; attempt <= attempts; ++attempt) {
    std::vector<Poset> at(nj);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(nj);
    if (attempt < attempts)
      for (std::size_t i = 0; i < nj; ++i) {
        const std::size_t n = F.size(d.jis[i]);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (a != b && rng.chance(1, 3)) pairs[i].emplace_back(a, b);
      }
    bool ok = true;
    for (std::size_t ii = nj; ii-- > 0 && ok;) {
      const std::size_t j = d.jis[ii];
      try {
        at[ii] = Poset::closure_of(F.size(j), pairs[ii]);
      } catch (const Error&) {
        ok = false;
        break;
      }
      for (auto i2 : d.below[j]) {
        if (i2 == ii) continue;
        const std::size_t j2 = d.jis[i2];
        for (std::size_t a = 0; a < F.size(j); ++a)
          for (std::size_t b = 0; b < F.size(j); ++b)
            if (a != b && at[ii].leq(a, b)) pairs[i2].emplace_back(F.restrict(j, a, j2), F.restrict(j, b, j2));
      }
    }
    if (!ok) continue;
    PoSheaf p{f, {}};
    for (std::size_t u = 0; u < X.size(); ++u)
      p.order.push_back(Poset::from_predicate(F.size(u), [&](auto a, auto b) {
        for (auto i : d.below[u])
          if (!at[i].leq(F.restrict(u, a, d.jis[i]), F.restrict(u, b, d.jis[i]))) return false;
        return true;
      }));
    return p;
  }
  throw Error(ErrorKind::NotAPoset, "order repair failed");
}

inline PoSheaf gen_posheaf(Rng& rng, const FramePtr& x, std::size_t max_carrier) {
  return gen_order(rng, gen_sheaf(rng, x, max_carrier));
}

inline PoSheaf gen_posheaf(const FramePtr& x, const GenConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_posheaf(rng, x, cfg.max_carrier);
}

// ---------------------------------------------------------------------------
// mutations; each returns nullopt when the instance offers no place for it

/// Drops a covering pair x ⋖ y from ≤_u at a join-reducible u where no pair
/// above restricts onto (x, y). POS1 and POS2 survive; POS3 fails on the
/// cover of u by its join-irreducibles.
inline std::optional<PoSheaf> break_pos3(Rng& rng, const PoSheaf& p) {
  const auto& F = p.F();
  const auto& X = p.X();
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> spots;
  for (std::size_t u = 0; u < X.size(); ++u) {
    if (u == X.bottom() || X.is_join_irreducible(u)) continue;
    for (std::size_t a = 0; a < F.size(u); ++a)
      for (std::size_t b = 0; b < F.size(u); ++b) {
        if (!p.order[u].lt(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < F.size(u) && cover; ++c) cover = !(p.order[u].lt(a, c) && p.order[u].lt(c, b));
        if (!cover) continue;
        bool hit = false;
        for (std::size_t w = 0; w < X.size() && !hit; ++w) {
          if (!X.lt(u, w)) continue;
          for (std::size_t s = 0; s < F.size(w) && !hit; ++s)
            for (std::size_t t = 0; t < F.size(w) && !hit; ++t)
              hit = p.order[w].leq(s, t) && F.restrict(w, s, u) == a && F.restrict(w, t, u) == b;
        }
        if (!hit) spots.push_back({u, {a, b}});
      }
  }
  if (spots.empty()) return std::nullopt;
  const auto [u, ab] = spots[rng.below(spots.size())];
  PoSheaf q = p;
  q.order[u] = Poset::from_predicate(F.size(u), [&](auto a, auto b) {
    return p.order[u].leq(a, b) && !(a == ab.first && b == ab.second);
  });
  return q;
}

/// Removes one section over a non-bottom open u whose restrictions to a
/// cover of u not containing u come from nothing else, together with every
/// section above that restricts to it. The family it leaves behind has no
/// amalgamation.
inline std::optional<Presheaf> remove_amalgamation(Rng& rng, const Presheaf& p) {
  const auto& X = *p.frame;
  std::vector<std::pair<std::size_t, std::size_t>> spots;
  for (std::size_t u = 0; u < X.size(); ++u)
    if (u != X.bottom() && !X.is_join_irreducible(u))
      for (std::size_t x = 0; x < p.size(u); ++x) spots.emplace_back(u, x);
  if (spots.empty()) return std::nullopt;
  const auto [u, x] = spots[rng.below(spots.size())];
  std::vector<std::vector<char>> keep(X.size());
  for (std::size_t w = 0; w < X.size(); ++w) {
    keep[w].assign(p.size(w), 1);
    if (X.leq(u, w))
      for (std::size_t s = 0; s < p.size(w); ++s)
        if (p.restrict(w, s, u) == x) keep[w][s] = 0;
  }
  std::vector<std::vector<std::size_t>> newidx(X.size());
  std::vector<std::vector<std::string>> carriers(X.size());
  for (std::size_t w = 0; w < X.size(); ++w) {
    newidx[w].assign(p.size(w), kNone);
    for (std::size_t s = 0; s < p.size(w); ++s)
      if (keep[w][s]) {
        newidx[w][s] = carriers[w].size();
        carriers[w].push_back(p.name(w, s));
      }
  }
  std::vector<std::vector<std::size_t>> oldidx(X.size());
  for (std::size_t w = 0; w < X.size(); ++w)
    for (std::size_t s = 0; s < p.size(w); ++s)
      if (keep[w][s]) oldidx[w].push_back(s);
  return make_presheaf(p.frame, std::move(carriers), [&](std::size_t w, std::size_t k, std::size_t v) {
    return newidx[v][p.restrict(w, oldidx[w][k], v)];
  });
}

/// Redirects one component value so that some naturality square fails.
inline std::optional<SheafMorphism> break_naturality(Rng& rng, const SheafMorphism& a) {
  const auto& F = *a.source;
  const auto& G = *a.target;
  std::vector<std::pair<std::size_t, std::size_t>> spots;
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x) spots.emplace_back(u, x);
  rng.shuffle(spots);
  for (auto [u, x] : spots) {
    std::vector<std::size_t> alts;
    for (std::size_t y = 0; y < G.size(u); ++y)
      if (y != a.map[u][x]) alts.push_back(y);
    rng.shuffle(alts);
    for (auto y : alts) {
      SheafMorphism b = a;
      b.map[u][x] = y;
      if (!verify_morphism(b).passed) return b;
    }
  }
  return std::nullopt;
}

/// An order with a new element inserted into a covering pair, chosen so the
/// result is a lattice that is not distributive.
struct RawFrame {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> leq;
};

inline std::optional<RawFrame> break_distributivity(Rng& rng, const FiniteFrame& f) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (!f.lt(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < f.size() && cover; ++c) cover = !(f.lt(a, c) && f.lt(c, b));
      if (cover) edges.emplace_back(a, b);
    }
  rng.shuffle(edges);
  std::string fresh = "n";
  while (f.find(fresh)) fresh += "'";
  for (auto [a, b] : edges) {
    RawFrame r{f.names(), {}};
    r.names.push_back(fresh);
    for (std::size_t x = 0; x < f.size(); ++x)
      for (std::size_t y = 0; y < f.size(); ++y)
        if (f.lt(x, y)) r.leq.emplace_back(f.name(x), f.name(y));
    r.leq.emplace_back(f.name(a), fresh);
    r.leq.emplace_back(fresh, f.name(b));
    const auto rep = verify_frame(r.names, r.leq);
    if (!rep.passed && rep.violation == "NotDistributive") return r;
  }
  return std::nullopt;
}

/// F = Φ(⟨g,g⟩) and G = Φ(g) with two maps F → G: the first projection, a
/// frame morphism, and the pointwise join, which keeps sups and the top but
/// not binary meets.
struct MeetSquareCase {
  PoSheaf source, target;
  SheafMorphism control, mutated;
};

inline MeetSquareCase meet_square_case(const FrameHom& g) {
  const auto& L = *g.target;
  const std::size_t n = L.size();
  auto LL = share(product(L, L));
  FrameHom pair{g.source, LL, std::vector<std::size_t>(g.map.size())};
  for (std::size_t x = 0; x < g.map.size(); ++x) pair.map[x] = g(x) * n + g(x);
  MeetSquareCase c{phi(pair), phi(g), {}, {}};
  c.control = SheafMorphism{c.source.sheaf, c.target.sheaf, {}};
  c.mutated = c.control;
  const auto& X = *g.source;
  for (std::size_t u = 0; u < X.size(); ++u) {
    const auto below = L.below(g(u));
    auto pos = [&](std::size_t y) { return static_cast<std::size_t>(std::find(below.begin(), below.end(), y) - below.begin()); };
    c.control.map.emplace_back();
    c.mutated.map.emplace_back();
    for (std::size_t i = 0; i < c.source.F().size(u); ++i) {
      const std::size_t e = phi_element(pair, u, i);
      c.control.map[u].push_back(pos(e / n));
      c.mutated.map[u].push_back(pos(L.join(e / n, e % n)));
    }
  }
  return c;
}

}  // namespace posh
