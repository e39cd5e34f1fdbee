#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/completeness.hpp"
#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/report.hpp"

namespace posh {

/// A locale f: Y → X given by its frame map f*: O(X) → O(Y).
struct LocaleOverX {
  FramePtr OY;
  FrameHom fstar;

  [[nodiscard]] const FiniteFrame& X() const { return *fstar.source; }
  [[nodiscard]] const FiniteFrame& Y() const { return *OY; }
  [[nodiscard]] FramePtr base() const { return fstar.source; }
};

inline CheckReport verify_locale(const LocaleOverX& f) {
  if (!f.OY || f.fstar.target != f.OY) throw Error(ErrorKind::DomainMismatch, "f* does not land in O(Y)");
  auto r = verify_frame_hom(f.fstar);
  r.check = "locale_over_x";
  return r;
}

inline LocaleOverX identity_locale(const FramePtr& x) { return {x, identity_hom(x)}; }

/// The open sublocale ↓u ↣ X, with frame map x ↦ x ∧ u.
inline LocaleOverX open_inclusion(const FramePtr& x, std::size_t u) {
  auto down = share(x->down(u));
  FrameHom h{x, down, std::vector<std::size_t>(x->size())};
  for (std::size_t v = 0; v < x->size(); ++v) h.map[v] = down->index(x->name(x->meet(v, u)));
  return {down, std::move(h)};
}

// ---------------------------------------------------------------------------
// ε and Λ

namespace detail {

inline std::vector<std::size_t> point_offsets(const Presheaf& p) {
  std::vector<std::size_t> off(p.opens() + 1, 0);
  for (std::size_t u = 0; u < p.opens(); ++u) off[u + 1] = off[u] + p.size(u);
  return off;
}

inline std::vector<std::vector<std::size_t>> epsilon_table(const Presheaf& p, const std::vector<Point>& pts) {
  std::vector<std::vector<std::size_t>> e(pts.size(), std::vector<std::size_t>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) e[i][j] = e[j][i] = epsilon(p, pts[i], pts[j]);
  return e;
}

inline std::string tuple_name(const FiniteFrame& x, const std::vector<std::size_t>& v, const char* open = "(",
                              const char* close = ")") {
  std::string s = open;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += x.name(v[i]);
  }
  return s + close;
}

}  // namespace detail

/// Λ(P) with its bookkeeping: element e of O(Λ(P)) is the assignment
/// elements[e], one open per point (in enumerate_points order).
struct SheafLocale {
  PresheafPtr presheaf;
  std::vector<Point> points;
  std::vector<std::size_t> offsets;
  std::vector<std::vector<std::size_t>> eps;
  std::vector<std::vector<std::size_t>> elements;
  std::map<std::vector<std::size_t>, std::size_t> lookup;
  LocaleOverX locale;

  [[nodiscard]] std::size_t point_index(Point s) const { return offsets[s.dom] + s.value; }
  [[nodiscard]] std::size_t element(const std::vector<std::size_t>& values) const {
    auto it = lookup.find(values);
    return it == lookup.end() ? kNone : it->second;
  }
  /// p_s*: O(Λ(P)) → ↓u_s.
  [[nodiscard]] std::size_t project(std::size_t s, std::size_t e) const { return elements[e][s]; }
};

namespace detail {

inline bool lambda_constraints_hold(const FiniteFrame& X, const std::vector<Point>& pts,
                                    const std::vector<std::vector<std::size_t>>& eps,
                                    const std::vector<std::size_t>& f) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!X.leq(f[i], pts[i].dom)) return false;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (X.meet(f[i], eps[i][j]) != X.meet(f[j], eps[i][j])) return false;
  }
  return true;
}

}  // namespace detail

/// Elements of Λ(P), sorted. An assignment satisfies f(s|v) = f(s) ∧ v and
/// f(s) = ⋁ f(s|j) over join-irreducible j ≤ u_s, so it is fixed by whether
/// f(x) = j at each section x over a join-irreducible j. Those bits are
/// searched bottom-up with the pairwise constraints as pruning; every
/// extension is then checked against (1_Λ) and (2_Λ) in full.
inline std::vector<std::vector<std::size_t>> lambda_elements(const Presheaf& p, const Budget& budget = {}) {
  const auto& X = *p.frame;
  const auto pts = enumerate_points(p);
  const auto off = detail::point_offsets(p);
  const auto eps = detail::epsilon_table(p, pts);
  const auto ji = X.join_irreducibles();
  std::vector<std::size_t> rank(X.size());
  {
    const auto bu = X.bottom_up();
    for (std::size_t i = 0; i < bu.size(); ++i) rank[bu[i]] = i;
  }
  std::vector<std::size_t> jis(ji.begin(), ji.end());
  std::stable_sort(jis.begin(), jis.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
  std::vector<std::size_t> order;  // point indices over join-irreducibles, bottom-up
  for (auto j : jis)
    for (std::size_t x = 0; x < p.size(j); ++x) order.push_back(off[j] + x);

  std::vector<std::size_t> val(pts.size(), kNone);
  std::vector<std::vector<std::size_t>> out;
  std::size_t steps = 0;
  auto below_ji = [&](std::size_t u) {
    std::vector<std::size_t> r;
    for (auto j : jis)
      if (X.leq(j, u)) r.push_back(j);
    return r;
  };
  std::vector<std::vector<std::size_t>> ji_below(X.size());
  for (std::size_t u = 0; u < X.size(); ++u) ji_below[u] = below_ji(u);

  auto rec = [&](auto&& self, std::size_t k) -> void {
    charge(steps, budget.lambda_assignments, "lambda enumeration");
    if (k == order.size()) {
      std::vector<std::size_t> f(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t m = X.bottom();
        for (auto j : ji_below[pts[i].dom]) m = X.join(m, val[off[j] + p.restrict(pts[i].dom, pts[i].value, j)]);
        f[i] = m;
      }
      if (detail::lambda_constraints_hold(X, pts, eps, f)) out.push_back(std::move(f));
      return;
    }
    const std::size_t q = order[k];
    const std::size_t j = pts[q].dom;
    std::size_t lower = X.bottom();
    bool all_full = true;
    for (auto i : ji_below[j]) {
      if (i == j) continue;
      const std::size_t r = off[i] + p.restrict(j, pts[q].value, i);
      lower = X.join(lower, val[r]);
      if (val[r] != i) all_full = false;
    }
    std::vector<std::size_t> options{lower};
    if (all_full) options.push_back(j);
    for (auto c : options) {
      bool ok = true;
      for (std::size_t t = 0; t < k && ok; ++t) {
        const std::size_t r = order[t];
        ok = X.meet(c, eps[q][r]) == X.meet(val[r], eps[q][r]);
      }
      if (!ok) continue;
      val[q] = c;
      self(self, k + 1);
      val[q] = kNone;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Every assignment in ∏ ↓u_s, filtered by (1_Λ) and (2_Λ).
inline std::vector<std::vector<std::size_t>> lambda_elements_oracle(const Presheaf& p, const Budget& budget = {}) {
  const auto& X = *p.frame;
  const auto pts = enumerate_points(p);
  const auto eps = detail::epsilon_table(p, pts);
  std::vector<std::vector<std::size_t>> choices;
  for (const auto& s : pts) choices.push_back(X.below(s.dom));
  std::vector<std::size_t> idx(pts.size(), 0), f(pts.size());
  std::vector<std::vector<std::size_t>> out;
  std::size_t steps = 0;
  while (true) {
    charge(steps, budget.lambda_assignments, "lambda brute force");
    for (std::size_t i = 0; i < pts.size(); ++i) f[i] = choices[i][idx[i]];
    if (detail::lambda_constraints_hold(X, pts, eps, f)) out.push_back(f);
    std::size_t i = 0;
    while (i < pts.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == pts.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Λ(P) ordered pointwise, with p*: x ↦ (x ∧ u_s).
inline SheafLocale lambda(const PresheafPtr& p, const Budget& budget = {}) {
  const auto& X = *p->frame;
  SheafLocale L;
  L.presheaf = p;
  L.points = enumerate_points(*p);
  L.offsets = detail::point_offsets(*p);
  L.eps = detail::epsilon_table(*p, L.points);
  L.elements = lambda_elements(*p, budget);
  const std::size_t n = L.elements.size();
  std::vector<std::string> names;
  for (std::size_t e = 0; e < n; ++e) {
    L.lookup.emplace(L.elements[e], e);
    names.push_back(detail::tuple_name(X, L.elements[e]));
  }
  Poset order = Poset::from_predicate(n, [&](auto a, auto b) {
    for (std::size_t s = 0; s < L.points.size(); ++s)
      if (!X.leq(L.elements[a][s], L.elements[b][s])) return false;
    return true;
  });
  L.locale.OY = share(FiniteFrame::from_poset(std::move(names), std::move(order)));
  L.locale.fstar = FrameHom{p->frame, L.locale.OY, std::vector<std::size_t>(X.size())};
  for (std::size_t x = 0; x < X.size(); ++x) {
    std::vector<std::size_t> v(L.points.size());
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = X.meet(x, L.points[s].dom);
    L.locale.fstar.map[x] = L.element(v);
    if (L.locale.fstar.map[x] == kNone) throw Error(ErrorKind::DomainMismatch, "p*(x) is not an element of Λ(P)");
  }
  return L;
}

/// Re-checks Λ(P): pointwise meets and joins stay inside and are the frame
/// operations, p* is a frame homomorphism, each projection is onto ↓u_s, and
/// the brute-force enumeration finds the same elements when it fits the budget.
inline CheckReport verify_lambda(const SheafLocale& L, const Budget& budget = {}) {
  const auto& X = *L.presheaf->frame;
  const auto& Y = L.locale.Y();
  const std::string name = "lambda";
  const std::size_t n = L.elements.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> m(L.points.size()), j(L.points.size());
      for (std::size_t s = 0; s < L.points.size(); ++s) {
        m[s] = X.meet(L.elements[a][s], L.elements[b][s]);
        j[s] = X.join(L.elements[a][s], L.elements[b][s]);
      }
      if (L.element(m) != Y.meet(a, b))
        return CheckReport::fail(name, "meets are not pointwise", {{"pair", {Y.name(a), Y.name(b)}}});
      if (L.element(j) != Y.join(a, b))
        return CheckReport::fail(name, "joins are not pointwise", {{"pair", {Y.name(a), Y.name(b)}}});
    }
  if (auto h = verify_frame_hom(L.locale.fstar); !h.passed)
    return CheckReport::fail(name, "p* is not a frame homomorphism", h.witness);
  for (std::size_t s = 0; s < L.points.size(); ++s) {
    std::vector<char> hit(X.size(), 0);
    for (std::size_t e = 0; e < n; ++e) hit[L.project(s, e)] = 1;
    for (auto v : X.below(L.points[s].dom))
      if (!hit[v])
        return CheckReport::fail(name, "projection is not onto", {{"point", point_json(*L.presheaf, L.points[s])}});
  }
  CheckReport r = CheckReport::pass(name);
  r.details = {{"elements", n}, {"points", L.points.size()}};
  try {
    const auto brute = lambda_elements_oracle(*L.presheaf, budget);
    if (brute != L.elements)
      return CheckReport::fail(name, "constraint search and brute force disagree",
                               {{"search", n}, {"brute_force", brute.size()}});
    r.details["brute_force"] = "agree";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceLimit) throw;
    r.details["brute_force"] = "skipped";
  }
  return r;
}

/// Λ(α)*: O(Λ(Q)) → O(Λ(P)), (x_t) ↦ (x_{α(s)})_s.
inline FrameHom lambda_on_morphism(const SheafMorphism& a, const SheafLocale& lp, const SheafLocale& lq) {
  FrameHom h{lq.locale.OY, lp.locale.OY, std::vector<std::size_t>(lq.elements.size())};
  for (std::size_t e = 0; e < lq.elements.size(); ++e) {
    std::vector<std::size_t> v(lp.points.size());
    for (std::size_t s = 0; s < lp.points.size(); ++s) {
      const auto& pt = lp.points[s];
      v[s] = lq.project(lq.point_index({pt.dom, a.map[pt.dom][pt.value]}), e);
    }
    h.map[e] = lp.element(v);
    if (h.map[e] == kNone) throw Error(ErrorKind::DomainMismatch, "reindexed assignment leaves Λ(P)");
  }
  return h;
}

/// Λ(α)* is a frame homomorphism and Λ(α)* q* = p*.
inline CheckReport verify_lambda_morphism(const FrameHom& h, const SheafLocale& lp, const SheafLocale& lq) {
  const std::string name = "lambda_morphism";
  if (auto r = verify_frame_hom(h); !r.passed) return CheckReport::fail(name, "not a frame homomorphism", r.witness);
  const auto& X = *lp.presheaf->frame;
  for (std::size_t x = 0; x < X.size(); ++x)
    if (h(lq.locale.fstar(x)) != lp.locale.fstar(x))
      return CheckReport::fail(name, "does not commute over X", {{"open", X.name(x)}});
  return CheckReport::pass(name);
}

/// The cover {(ε(s,t))_t : s} of Λ(P).
inline std::vector<std::size_t> lambda_cover(const SheafLocale& L) {
  std::vector<std::size_t> c;
  for (std::size_t s = 0; s < L.points.size(); ++s) {
    const auto e = L.element(L.eps[s]);
    if (e == kNone) throw Error(ErrorKind::DomainMismatch, "(ε(s,t))_t is not an element of Λ(P)");
    c.push_back(e);
  }
  return c;
}

// ---------------------------------------------------------------------------
// local homeomorphisms

/// Whether ↓y ↣ Y → X is isomorphic to an open inclusion: x ↦ f*(x) ∧ y must
/// be onto ↓y with the kernel of x ↦ x ∧ u, u the least x sent to y.
inline std::optional<std::size_t> open_inclusion_part(const LocaleOverX& f, std::size_t y) {
  const auto& X = f.X();
  const auto& Y = f.Y();
  std::vector<std::size_t> phi(X.size());
  std::vector<char> hit(Y.size(), 0);
  std::size_t u = X.top();
  for (std::size_t x = 0; x < X.size(); ++x) {
    phi[x] = Y.meet(f.fstar(x), y);
    hit[phi[x]] = 1;
    if (phi[x] == y) u = X.meet(u, x);
  }
  for (auto z : Y.below(y))
    if (!hit[z]) return std::nullopt;
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = a + 1; b < X.size(); ++b)
      if ((phi[a] == phi[b]) != (X.meet(a, u) == X.meet(b, u))) return std::nullopt;
  return u;
}

/// Witness: the maximal opens of Y on which f is an open inclusion, and the
/// opens of X they land on; on failure their join falls short of the top.
inline CheckReport is_local_homeomorphism(const LocaleOverX& f) {
  const auto& Y = f.Y();
  const auto& X = f.X();
  std::vector<std::size_t> good;
  std::vector<std::size_t> part(Y.size(), kNone);
  for (std::size_t y = 0; y < Y.size(); ++y)
    if (auto u = open_inclusion_part(f, y)) {
      good.push_back(y);
      part[y] = *u;
    }
  std::size_t j = Y.bottom();
  for (auto y : good) j = Y.join(j, y);
  Json cover = Json::array();
  for (auto y : good) {
    bool maximal = true;
    for (auto z : good) maximal = maximal && !Y.lt(y, z);
    if (maximal) cover.push_back({{"open", Y.name(y)}, {"over", X.name(part[y])}});
  }
  if (j != Y.top()) {
    Json g = Json::array();
    for (auto y : good) g.push_back(Y.name(y));
    return CheckReport::fail("local_homeomorphism", "opens that are open inclusions do not cover Y",
                             {{"good", g}, {"join", Y.name(j)}, {"searched", Y.size()}});
  }
  CheckReport r = CheckReport::pass("local_homeomorphism");
  r.witness = {{"cover", cover}};
  return r;
}

// ---------------------------------------------------------------------------
// Γ

/// A section over u, given by s*: O(Y) → ↓u ⊆ O(X).
struct Section {
  std::size_t over = 0;
  std::vector<std::size_t> sstar;
};

struct CrossSections {
  LocaleOverX base;
  PresheafPtr sheaf;
  std::vector<std::vector<Section>> sections;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> lookup;

  [[nodiscard]] std::size_t index_of(std::size_t u, const std::vector<std::size_t>& sstar) const {
    auto it = lookup[u].find(sstar);
    return it == lookup[u].end() ? kNone : it->second;
  }
};

/// The frame homomorphisms s*: O(Y) → ↓u with s* f* = (x ↦ x ∧ u). Values are
/// chosen on join-irreducibles of O(Y) inside the bounds the composite
/// condition forces, then every candidate is checked in full.
inline std::vector<Section> sections_over(const LocaleOverX& f, std::size_t u, const Budget& budget,
                                          std::size_t& steps) {
  const auto& X = f.X();
  const auto& Y = f.Y();
  std::vector<std::size_t> jis = Y.join_irreducibles();
  {
    const auto bu = Y.bottom_up();
    std::vector<std::size_t> rank(Y.size());
    for (std::size_t i = 0; i < bu.size(); ++i) rank[bu[i]] = i;
    std::stable_sort(jis.begin(), jis.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
  }
  std::vector<std::size_t> lb(jis.size(), X.bottom()), ub(jis.size(), u);
  for (std::size_t k = 0; k < jis.size(); ++k)
    for (std::size_t x = 0; x < X.size(); ++x) {
      if (Y.leq(jis[k], f.fstar(x))) ub[k] = X.meet(ub[k], X.meet(x, u));
      if (Y.leq(f.fstar(x), jis[k])) lb[k] = X.join(lb[k], X.meet(x, u));
    }
  const auto cands = X.below(u);
  std::vector<std::size_t> val(jis.size(), kNone);
  std::vector<Section> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    charge(steps, budget.section_search, "section search");
    if (k == jis.size()) {
      Section s{u, std::vector<std::size_t>(Y.size(), X.bottom())};
      for (std::size_t y = 0; y < Y.size(); ++y)
        for (std::size_t i = 0; i < jis.size(); ++i)
          if (Y.leq(jis[i], y)) s.sstar[y] = X.join(s.sstar[y], val[i]);
      FrameHom h{f.OY, f.base(), s.sstar};
      if (h(Y.top()) != u) return;
      for (std::size_t a = 0; a < Y.size(); ++a)
        for (std::size_t b = 0; b < Y.size(); ++b)
          if (h(Y.meet(a, b)) != X.meet(h(a), h(b)) || h(Y.join(a, b)) != X.join(h(a), h(b))) return;
      for (std::size_t x = 0; x < X.size(); ++x)
        if (h(f.fstar(x)) != X.meet(x, u)) return;
      out.push_back(std::move(s));
      return;
    }
    for (auto c : cands) {
      if (!X.leq(lb[k], c) || !X.leq(c, ub[k])) continue;
      bool mono = true;
      for (std::size_t i = 0; i < k && mono; ++i) {
        if (Y.leq(jis[i], jis[k])) mono = X.leq(val[i], c);
        if (mono && Y.leq(jis[k], jis[i])) mono = X.leq(c, val[i]);
      }
      if (!mono) continue;
      val[k] = c;
      self(self, k + 1);
    }
    val[k] = kNone;
  };
  rec(rec, 0);
  return out;
}

/// Γ(f)(u) = sections over u, restriction s ↦ (y ↦ s*(y) ∧ v). Section
/// names list s* over O(Y) in order.
inline CrossSections gamma(const LocaleOverX& f, const Budget& budget = {}) {
  const auto& X = f.X();
  CrossSections g;
  g.base = f;
  std::size_t steps = 0;
  std::vector<std::vector<std::string>> carriers(X.size());
  g.lookup.resize(X.size());
  for (std::size_t u = 0; u < X.size(); ++u) {
    g.sections.push_back(sections_over(f, u, budget, steps));
    for (std::size_t i = 0; i < g.sections[u].size(); ++i) {
      g.lookup[u].emplace(g.sections[u][i].sstar, i);
      carriers[u].push_back(detail::tuple_name(X, g.sections[u][i].sstar, "s[", "]"));
    }
  }
  g.sheaf = share(make_presheaf(f.base(), std::move(carriers), [&](std::size_t u, std::size_t i, std::size_t v) {
    std::vector<std::size_t> r = g.sections[u][i].sstar;
    for (auto& y : r) y = X.meet(y, v);
    const auto k = g.index_of(v, r);
    if (k == kNone) throw Error(ErrorKind::DomainMismatch, "restricted section is not a section");
    return k;
  }));
  return g;
}

/// Carriers are singletons exactly below u (so the sheaf is ≅ subterminal(u)).
inline bool is_subterminal_shape(const Presheaf& p, std::size_t u) {
  for (std::size_t v = 0; v < p.opens(); ++v)
    if (p.size(v) != (p.frame->leq(v, u) ? 1u : 0u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// unit and counit

/// η_P: s ↦ p_s, landing in Γ(Λ(P)).
inline SheafMorphism unit(const SheafLocale& L, const CrossSections& gl) {
  const auto& P = *L.presheaf;
  SheafMorphism m{L.presheaf, gl.sheaf, {}};
  for (std::size_t u = 0; u < P.opens(); ++u) {
    m.map.emplace_back();
    for (std::size_t x = 0; x < P.size(u); ++x) {
      const std::size_t s = L.point_index({u, x});
      std::vector<std::size_t> ps(L.elements.size());
      for (std::size_t e = 0; e < ps.size(); ++e) ps[e] = L.project(s, e);
      const auto k = gl.index_of(u, ps);
      if (k == kNone) throw Error(ErrorKind::DomainMismatch, "p_s is not a section of Λ(P)");
      m.map[u].push_back(k);
    }
  }
  return m;
}

/// ε_f*: O(Y) → O(Λ(Γ(f))), y ↦ (s*(y))_s.
inline FrameHom counit(const CrossSections& g, const SheafLocale& lg) {
  const auto& Y = g.base.Y();
  FrameHom h{g.base.OY, lg.locale.OY, std::vector<std::size_t>(Y.size())};
  for (std::size_t y = 0; y < Y.size(); ++y) {
    std::vector<std::size_t> v(lg.points.size());
    for (std::size_t s = 0; s < v.size(); ++s) v[s] = g.sections[lg.points[s].dom][lg.points[s].value].sstar[y];
    h.map[y] = lg.element(v);
    if (h.map[y] == kNone) throw Error(ErrorKind::DomainMismatch, "(s*(y))_s is not an element of Λ(Γ(f))");
  }
  return h;
}

/// Γ(f) → ΓΛΓ(f) → Γ(f) is the identity: (p_s ∘ ε_f)* = s* for every section.
inline CheckReport verify_gamma_triangle(const LocaleOverX& f, const Budget& budget = {}) {
  const std::string name = "triangle_gamma";
  const auto g = gamma(f, budget);
  const auto lg = lambda(g.sheaf, budget);
  const auto g2 = gamma(lg.locale, budget);
  const auto eta = unit(lg, g2);
  const auto eps = counit(g, lg);
  if (auto r = verify_frame_hom(eps); !r.passed) return CheckReport::fail(name, "ε* is not a frame homomorphism", r.witness);
  for (std::size_t x = 0; x < f.X().size(); ++x)
    if (eps(f.fstar(x)) != lg.locale.fstar(x))
      return CheckReport::fail(name, "ε does not commute over X", {{"open", f.X().name(x)}});
  for (std::size_t u = 0; u < g.sections.size(); ++u)
    for (std::size_t i = 0; i < g.sections[u].size(); ++i) {
      const auto& t = g2.sections[u][eta.map[u][i]];
      for (std::size_t y = 0; y < f.Y().size(); ++y)
        if (t.sstar[eps(y)] != g.sections[u][i].sstar[y])
          return CheckReport::fail(name, "Γ(ε) η_Γ ≠ id",
                                   {{"open", f.X().name(u)}, {"section", g.sheaf->name(u, i)}, {"at", f.Y().name(y)}});
    }
  return CheckReport::pass(name);
}

/// Λ(P) → ΛΓΛ(P) → Λ(P) is the identity: Λ(η_P)* ε*_{Λ(P)} = id.
inline CheckReport verify_lambda_triangle(const PresheafPtr& p, const Budget& budget = {}) {
  const std::string name = "triangle_lambda";
  const auto L = lambda(p, budget);
  const auto G = gamma(L.locale, budget);
  const auto eta = unit(L, G);
  if (auto n = verify_morphism(eta); !n.passed) return CheckReport::fail(name, "η is not natural", n.witness);
  const auto L2 = lambda(G.sheaf, budget);
  const auto eps = counit(G, L2);
  const auto back = lambda_on_morphism(eta, L, L2);
  if (auto r = verify_lambda_morphism(back, L, L2); !r.passed) return CheckReport::fail(name, "Λ(η) is not a map over X", r.witness);
  for (std::size_t e = 0; e < L.elements.size(); ++e)
    if (back(eps(e)) != e)
      return CheckReport::fail(name, "Λ(η)* ε*_Λ ≠ id", {{"element", L.locale.Y().name(e)}});
  return CheckReport::pass(name);
}

inline CheckReport verify_triangle_identities(const PresheafPtr& p, const LocaleOverX& f, const Budget& budget = {}) {
  CheckReport r = CheckReport::pass("triangle_identities");
  auto a = verify_lambda_triangle(p, budget);
  auto b = verify_gamma_triangle(f, budget);
  r.details = {{"lambda", a.to_json()}, {"gamma", b.to_json()}};
  if (!a.passed) return CheckReport::fail(r.check, a.violation, a.witness);
  if (!b.passed) return CheckReport::fail(r.check, b.violation, b.witness);
  return r;
}

/// First witness that the per-open maps are not bijections.
inline std::optional<Json> bijection_failure(const SheafMorphism& m) {
  const auto& X = *m.source->frame;
  for (std::size_t u = 0; u < m.map.size(); ++u) {
    std::vector<char> hit(m.target->size(u), 0);
    for (std::size_t x = 0; x < m.map[u].size(); ++x) {
      if (hit[m.map[u][x]]) return Json{{"open", X.name(u)}, {"collision", m.target->name(u, m.map[u][x])}};
      hit[m.map[u][x]] = 1;
    }
    for (std::size_t y = 0; y < hit.size(); ++y)
      if (!hit[y]) return Json{{"open", X.name(u)}, {"missed", m.target->name(u, y)}};
  }
  return std::nullopt;
}

/// For a sheaf F: η_F is a natural bijection, and Λ is stable under ΓΛ
/// (Λ(ΓΛ(F)) ≅ Λ(F) over X).
inline CheckReport verify_sh_lh_equivalence(const PresheafPtr& p, const Budget& budget = {}) {
  const std::string name = "sh_lh_equivalence";
  const auto L = lambda(p, budget);
  const auto G = gamma(L.locale, budget);
  const auto eta = unit(L, G);
  if (auto n = verify_morphism(eta); !n.passed) return CheckReport::fail(name, "η is not natural", n.witness);
  if (auto w = bijection_failure(eta)) return CheckReport::fail(name, "η is not a bijection", *w);
  const auto L2 = lambda(G.sheaf, budget);
  if (!find_frame_iso(L2.locale.Y(), L.locale.Y(), {&L2.locale.fstar, &L.locale.fstar}, budget.iso_search))
    return CheckReport::fail(name, "ΛΓΛ(F) is not isomorphic to Λ(F) over X");
  CheckReport r = CheckReport::pass(name);
  r.details = {{"sheaf", is_sheaf(*p)}, {"lambda_size", L.elements.size()}};
  return r;
}

/// For a locale over X: ε_f* is a bijection. A failure carries the
/// collision or the missed element; the LH verdict is recorded alongside.
inline CheckReport verify_sh_lh_equivalence(const LocaleOverX& f, const Budget& budget = {}) {
  const std::string name = "sh_lh_equivalence";
  const auto lh = is_local_homeomorphism(f);
  const auto g = gamma(f, budget);
  const auto lg = lambda(g.sheaf, budget);
  const auto eps = counit(g, lg);
  const auto& Y = f.Y();
  const auto& L = lg.locale.Y();
  CheckReport r = CheckReport::pass(name);
  std::vector<std::size_t> pre(L.size(), kNone);
  for (std::size_t y = 0; y < Y.size() && r.passed; ++y) {
    if (pre[eps(y)] != kNone)
      r = CheckReport::fail(name, "ε* is not injective", {{"pair", {Y.name(pre[eps(y)]), Y.name(y)}}});
    else
      pre[eps(y)] = y;
  }
  for (std::size_t e = 0; e < L.size() && r.passed; ++e)
    if (pre[e] == kNone) r = CheckReport::fail(name, "ε* is not surjective", {{"missed", L.name(e)}});
  if (r.passed) {
    const auto g2 = gamma(lg.locale, budget);
    const auto lg2 = lambda(g2.sheaf, budget);
    if (!find_frame_iso(lg2.locale.Y(), L, {&lg2.locale.fstar, &lg.locale.fstar}, budget.iso_search))
      r = CheckReport::fail(name, "ΛΓ(ΛΓ(f)) is not isomorphic to ΛΓ(f) over X");
  }
  r.details = {{"local_homeomorphism", lh.passed}, {"sections", g.sheaf->total_sections()}};
  return r;
}

// ---------------------------------------------------------------------------
// spatiality

/// Sections separate the opens of Y; equivalently ε_f* is injective.
inline CheckReport is_spatial(const LocaleOverX& f, const Budget& budget = {}) {
  const auto& Y = f.Y();
  const auto g = gamma(f, budget);
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("separation");
    for (std::size_t y = 0; y < Y.size() && r.passed; ++y)
      for (std::size_t z = y + 1; z < Y.size(); ++z) {
        bool sep = false;
        for (const auto& per : g.sections) {
          for (const auto& s : per)
            if (s.sstar[y] != s.sstar[z]) {
              sep = true;
              break;
            }
          if (sep) break;
        }
        if (!sep) {
          r = CheckReport::fail("separation", "no section separates the pair", {{"pair", {Y.name(y), Y.name(z)}}});
          break;
        }
      }
    forms.push_back(std::move(r));
  }
  {
    const auto lg = lambda(g.sheaf, budget);
    const auto eps = counit(g, lg);
    CheckReport r = CheckReport::pass("epimorphism");
    std::vector<std::size_t> pre(lg.elements.size(), kNone);
    for (std::size_t y = 0; y < Y.size(); ++y) {
      if (pre[eps(y)] != kNone) {
        r = CheckReport::fail("epimorphism", "ε* is not injective", {{"pair", {Y.name(pre[eps(y)]), Y.name(y)}}});
        break;
      }
      pre[eps(y)] = y;
    }
    forms.push_back(std::move(r));
  }
  return with_forms("spatial", std::move(forms));
}

// ---------------------------------------------------------------------------
// POSL / CPOSL

namespace detail {

inline void check_section_orders(const CrossSections& g, const std::vector<Poset>& orders) {
  if (orders.size() != g.sheaf->opens())
    throw Error(ErrorKind::OrderNotProvided, "one order per open of X is required");
  for (std::size_t u = 0; u < orders.size(); ++u)
    if (orders[u].size() != g.sheaf->size(u))
      throw Error(ErrorKind::OrderNotProvided, "order on sections over '" + g.sheaf->frame->name(u) + "' has the wrong size");
  if (!is_local_homeomorphism(g.base).passed)
    throw Error(ErrorKind::NotALocalHomeomorphism, "POSL needs a local homeomorphism");
}

/// s|v computed from s* rather than from the restriction table.
inline std::size_t restrict_section(const CrossSections& g, std::size_t u, std::size_t i, std::size_t v) {
  const auto& X = g.base.X();
  std::vector<std::size_t> r = g.sections[u][i].sstar;
  for (auto& y : r) y = X.meet(y, v);
  return g.index_of(v, r);
}

/// (POSL3): s ≤ t whenever s|w ≤ t|w on a cover; the opens where the
/// restrictions compare form the largest candidate cover.
inline std::optional<CheckReport> gluing_violation(const CrossSections& g, const std::vector<Poset>& o,
                                                   const std::string& name, const std::string& law) {
  const auto& X = g.base.X();
  const auto& F = *g.sheaf;
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t s = 0; s < F.size(u); ++s)
      for (std::size_t t = 0; t < F.size(u); ++t) {
        if (o[u].leq(s, t)) continue;
        std::size_t j = X.bottom();
        Json cover = Json::array();
        for (auto w : X.below(u)) {
          if (w == u) continue;
          if (o[w].leq(restrict_section(g, u, s, w), restrict_section(g, u, t, w))) {
            j = X.join(j, w);
            cover.push_back(X.name(w));
          }
        }
        if (j == u)
          return CheckReport::fail(name, law,
                                   {{"open", X.name(u)}, {"cover", cover}, {"pair", {F.name(u, s), F.name(u, t)}}});
      }
  return std::nullopt;
}

}  // namespace detail

/// POSL1–3 on the orders of Γ(f), cross-checked against verify_posheaf.
inline CheckReport check_posl(const CrossSections& g, const std::vector<Poset>& orders) {
  detail::check_section_orders(g, orders);
  const auto& X = g.base.X();
  const auto& F = *g.sheaf;
  std::vector<CheckReport> forms;
  auto direct = [&]() -> CheckReport {
    const std::string name = "direct";
    for (std::size_t u = 0; u < X.size(); ++u)
      if (auto bad = orders[u].first_violation())
        return CheckReport::fail(name, "POSL1 " + bad->first, {{"open", X.name(u)}, {"sections", detail::names_of(F, u, bad->second)}});
    for (std::size_t u = 0; u < X.size(); ++u)
      for (auto v : X.below(u))
        for (std::size_t s = 0; s < F.size(u); ++s)
          for (std::size_t t = 0; t < F.size(u); ++t)
            if (orders[u].leq(s, t) &&
                !orders[v].leq(detail::restrict_section(g, u, s, v), detail::restrict_section(g, u, t, v)))
              return CheckReport::fail(name, "POSL2", {{"from", X.name(u)}, {"to", X.name(v)}, {"pair", {F.name(u, s), F.name(u, t)}}});
    if (auto r = detail::gluing_violation(g, orders, name, "POSL3")) return *r;
    return CheckReport::pass(name);
  };
  forms.push_back(direct());
  {
    auto r = verify_posheaf(PoSheaf{g.sheaf, orders});
    r.check = "posheaf";
    forms.push_back(std::move(r));
  }
  return with_forms("posl", std::move(forms));
}

/// CPOSL1–3 on the orders of Γ(f), cross-checked against is_complete.
inline CheckReport check_cposl(const CrossSections& g, const std::vector<Poset>& orders, const Budget& budget = {}) {
  detail::check_section_orders(g, orders);
  const auto& X = g.base.X();
  const auto& F = *g.sheaf;
  std::vector<CheckReport> forms;
  auto direct = [&]() -> CheckReport {
    const std::string name = "direct";
    std::vector<LatticeTables> lat;
    for (std::size_t u = 0; u < X.size(); ++u) {
      auto t = orders[u].first_violation() ? std::nullopt : lattice_tables(orders[u]);
      if (!t) return CheckReport::fail(name, "CPOSL1", {{"open", X.name(u)}});
      lat.push_back(std::move(*t));
    }
    for (std::size_t u = 0; u < X.size(); ++u)
      for (auto v : X.below(u)) {
        std::vector<std::size_t> r(F.size(u));
        std::vector<char> hit(F.size(v), 0);
        for (std::size_t s = 0; s < r.size(); ++s) hit[r[s] = detail::restrict_section(g, u, s, v)] = 1;
        const Json at{{"from", X.name(u)}, {"to", X.name(v)}};
        if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return CheckReport::fail(name, "CPOSL2 surjectivity", at);
        if (r[lat[u].bottom] != lat[v].bottom || r[lat[u].top] != lat[v].top)
          return CheckReport::fail(name, "CPOSL2 empty join or meet", at);
        for (std::size_t s = 0; s < r.size(); ++s)
          for (std::size_t t = 0; t < r.size(); ++t)
            if (r[lat[u].join(s, t)] != lat[v].join(r[s], r[t]) || r[lat[u].meet(s, t)] != lat[v].meet(r[s], r[t]))
              return CheckReport::fail(name, "CPOSL2 joins and meets", at);
      }
    if (auto r = detail::gluing_violation(g, orders, name, "CPOSL3")) return *r;
    return CheckReport::pass(name);
  };
  forms.push_back(direct());
  {
    const PoSheaf p{g.sheaf, orders};
    auto pos = verify_posheaf(p);
    if (!pos.passed) {
      forms.push_back(CheckReport::fail("complete", "not a posheaf: " + pos.violation, pos.witness));
    } else {
      auto r = is_complete(p, budget).report;
      r.check = "complete";
      forms.push_back(std::move(r));
    }
  }
  return with_forms("cposl", std::move(forms));
}

/// Orders on the target of a per-open bijection, carried across it.
inline std::vector<Poset> transport_orders(const SheafMorphism& iso, const std::vector<Poset>& orders) {
  if (bijection_failure(iso)) throw Error(ErrorKind::DomainMismatch, "orders can only be transported along a bijection");
  std::vector<Poset> out;
  for (std::size_t u = 0; u < iso.map.size(); ++u) {
    std::vector<std::size_t> inv(iso.map[u].size());
    for (std::size_t x = 0; x < inv.size(); ++x) inv[iso.map[u][x]] = x;
    out.push_back(Poset::from_predicate(inv.size(), [&](auto a, auto b) { return orders[u].leq(inv[a], inv[b]); }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ε inequalities

namespace detail {

inline std::vector<std::vector<Point>> point_tuples(const Presheaf& p, std::size_t max_len) {
  const auto pts = enumerate_points(p);
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  auto gen = [&](auto&& self) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (const auto& s : pts) {
      cur.push_back(s);
      self(self);
      cur.pop_back();
    }
  };
  gen(gen);
  return out;
}

/// First split (s⃗, t⃗) where `holds`(ε(s⃗,t⃗), ε(s⃗) ∧ ε(t⃗)) fails.
template <typename Rel>
std::optional<Json> epsilon_split_failure(const Presheaf& p, std::size_t max_len, Rel holds, std::size_t& checked) {
  const auto& X = *p.frame;
  const auto tuples = point_tuples(p, max_len);
  std::vector<std::size_t> e(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) e[i] = epsilon(p, tuples[i]);
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (std::size_t j = 0; j < tuples.size(); ++j) {
      auto both = tuples[i];
      both.insert(both.end(), tuples[j].begin(), tuples[j].end());
      ++checked;
      if (!holds(epsilon(p, both), X.meet(e[i], e[j]))) {
        Json w = Json::array();
        for (const auto& s : both) w.push_back(point_json(p, s));
        return Json{{"tuple", w}, {"split", tuples[i].size()}};
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// ε(s⃗, t⃗) ≤ ε(s⃗) ∧ ε(t⃗) over all tuples with 1 ≤ |s⃗|, |t⃗| ≤ max_len.
inline CheckReport verify_epsilon_inequality(const Presheaf& p, std::size_t max_len = 2) {
  const auto& X = *p.frame;
  std::size_t checked = 0;
  if (auto w = detail::epsilon_split_failure(p, max_len, [&](auto a, auto b) { return X.leq(a, b); }, checked))
    return CheckReport::fail("epsilon_inequality", "ε(s,t) exceeds ε(s) ∧ ε(t)", *w);
  CheckReport r = CheckReport::pass("epsilon_inequality");
  r.details = {{"tuple_pairs", checked}};
  return r;
}

/// Whether ε(s⃗, t⃗) = ε(s⃗) ∧ ε(t⃗) for all tuples up to max_len, next to
/// whether P is terminal. Reported only.
inline CheckReport epsilon_equality(const Presheaf& p, std::size_t max_len = 2) {
  std::size_t checked = 0;
  auto w = detail::epsilon_split_failure(p, max_len, [](auto a, auto b) { return a == b; }, checked);
  CheckReport r = w ? CheckReport::fail("epsilon_equality", "ε(s,t) < ε(s) ∧ ε(t)", *w) : CheckReport::pass("epsilon_equality");
  r.details = {{"terminal", is_subterminal_shape(p, p.frame->top())}};
  return r;
}

}  // namespace posh
