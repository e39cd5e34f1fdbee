#pragma once

#include <cstddef>
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

/// Φ(h)(u) = ↓h(u) in L, restriction x ↦ x ∧ h(v), order from L. Section i
/// of Φ(h)(u) is the element L.below(h(u))[i].
inline PoSheaf phi(const FrameHom& h) {
  const auto& X = *h.source;
  const auto& L = *h.target;
  std::vector<std::vector<std::size_t>> elems(X.size());
  std::vector<std::vector<std::string>> carriers(X.size());
  for (std::size_t u = 0; u < X.size(); ++u) {
    elems[u] = L.below(h(u));
    for (auto x : elems[u]) carriers[u].push_back(L.name(x));
  }
  auto pos = [&](std::size_t v, std::size_t y) {
    return static_cast<std::size_t>(std::find(elems[v].begin(), elems[v].end(), y) - elems[v].begin());
  };
  auto sh = share(make_presheaf(h.source, std::move(carriers), [&](std::size_t u, std::size_t i, std::size_t v) {
    return pos(v, L.meet(elems[u][i], h(v)));
  }));
  PoSheaf p{sh, {}};
  for (std::size_t u = 0; u < X.size(); ++u)
    p.order.push_back(Poset::from_predicate(elems[u].size(), [&](auto i, auto j) { return L.leq(elems[u][i], elems[u][j]); }));
  return p;
}

/// Element of L standing for section i of Φ(h)(u).
inline std::size_t phi_element(const FrameHom& h, std::size_t u, std::size_t i) { return h.target->below(h(u))[i]; }

/// Φ on a triangle k ∘ f = g of frame homomorphisms under O(X).
inline SheafMorphism phi_on_morphism(const FrameHom& f, const FrameHom& g, const FrameHom& k, const PoSheaf& pf,
                                     const PoSheaf& pg) {
  for (std::size_t x = 0; x < f.map.size(); ++x)
    if (k(f(x)) != g(x)) throw Error(ErrorKind::DomainMismatch, "triangle under O(X) does not commute");
  SheafMorphism m{pf.sheaf, pg.sheaf, {}};
  const auto& X = *f.source;
  for (std::size_t u = 0; u < X.size(); ++u) {
    m.map.emplace_back();
    const auto below_g = g.target->below(g(u));
    for (std::size_t i = 0; i < pf.F().size(u); ++i) {
      const std::size_t y = k(phi_element(f, u, i));
      m.map[u].push_back(static_cast<std::size_t>(std::find(below_g.begin(), below_g.end(), y) - below_g.begin()));
    }
  }
  return m;
}

/// Ψ(F): the frame F(1) with u ↦ l_{u,1}(top of F(u)).
inline FrameHom psi(const PoSheaf& f, const Budget& budget = {}, bool verify = true) {
  if (verify) {
    auto r = is_frame_sheaf(f, budget);
    if (!r.passed) throw Error(ErrorKind::NotFrameSheaf, "not a frame sheaf: " + r.violation, r.witness);
  }
  const auto cs = complete_structure(f);
  const auto& X = f.X();
  const std::size_t top = X.top();
  FrameHom h{f.sheaf->frame, share(section_frame(f, top)), std::vector<std::size_t>(X.size())};
  for (std::size_t u = 0; u < X.size(); ++u) h.map[u] = cs.left(top, u, cs.lattice[u].top);
  return h;
}

/// An order isomorphism of complete posheaves is fixed by its top
/// component, since restrictions from the top are onto; the top component
/// is found by search and the rest induced.
inline std::optional<SheafMorphism> find_complete_posheaf_iso(const PoSheaf& f, const PoSheaf& g,
                                                              const Budget& budget = {}) {
  const auto& X = f.X();
  const std::size_t top = X.top();
  const auto ff = section_frame(f, top);
  const auto gf = section_frame(g, top);
  const std::size_t n = ff.size();
  if (n != gf.size()) return std::nullopt;
  // Enumerate order isomorphisms of the top components until one induces a
  // natural family of order isomorphisms.
  std::vector<std::size_t> iso(n, kNone);
  std::vector<char> used(n, 0);
  std::size_t steps = 0;
  std::optional<SheafMorphism> found;
  const auto order = ff.bottom_up();
  auto induced = [&]() -> std::optional<SheafMorphism> {
    SheafMorphism m{f.sheaf, g.sheaf, {}};
    for (std::size_t u = 0; u < X.size(); ++u) {
      std::vector<std::size_t> t(f.F().size(u), kNone);
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t a = f.F().restrict(top, x, u), b = g.F().restrict(top, iso[x], u);
        if (t[a] != kNone && t[a] != b) return std::nullopt;
        t[a] = b;
      }
      if (f.F().size(u) != g.F().size(u)) return std::nullopt;
      std::vector<char> hit(g.F().size(u), 0);
      for (auto b : t) {
        if (b == kNone || hit[b]) return std::nullopt;
        hit[b] = 1;
      }
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t c = 0; c < t.size(); ++c)
          if (f.leq(u, a, c) != g.leq(u, t[a], t[c])) return std::nullopt;
      m.map.push_back(std::move(t));
    }
    if (!verify_morphism(m).passed) return std::nullopt;
    return m;
  };
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) {
      found = induced();
      return found.has_value();
    }
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t z = 0; z < n && ok; ++z)
        if (iso[z] != kNone) ok = ff.leq(z, x) == gf.leq(iso[z], y) && ff.leq(x, z) == gf.leq(y, iso[z]);
      if (!ok) continue;
      charge(steps, budget.iso_search, "posheaf isomorphism search");
      iso[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      iso[x] = kNone;
      used[y] = 0;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

/// Φ(Ψ(F)) ≅ F through the maps l_{u,1}: F(u) → ↓l_{u,1}(⊤), checked as
/// natural order isomorphisms; a blind search confirms independently.
inline CheckReport verify_frame_equivalence(const PoSheaf& f, const Budget& budget = {}) {
  const auto& F = f.F();
  const auto& X = f.X();
  const auto cs = complete_structure(f);
  const FrameHom h = psi(f, budget);
  const PoSheaf g = phi(h);
  const std::size_t top = X.top();
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("explicit");
    SheafMorphism theta{f.sheaf, g.sheaf, {}};
    for (std::size_t u = 0; u < X.size() && r.passed; ++u) {
      const auto below = h.target->below(h(u));
      std::vector<std::size_t> t;
      for (std::size_t x = 0; x < F.size(u); ++x) {
        const std::size_t y = cs.left(top, u, x);
        auto it = std::find(below.begin(), below.end(), y);
        if (it == below.end()) {
          r = CheckReport::fail("explicit", "l_{u,1}(x) not below l_{u,1}(⊤)", {{"open", X.name(u)}, {"section", F.name(u, x)}});
          break;
        }
        t.push_back(static_cast<std::size_t>(it - below.begin()));
      }
      if (!r.passed) break;
      std::vector<char> hit(below.size(), 0);
      for (auto y : t) hit[y] = 1;
      if (t.size() != below.size() || std::find(hit.begin(), hit.end(), 0) != hit.end()) {
        r = CheckReport::fail("explicit", "l_{u,1} is not a bijection onto ↓l_{u,1}(⊤)", {{"open", X.name(u)}});
        break;
      }
      for (std::size_t a = 0; a < t.size() && r.passed; ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
          if (f.leq(u, a, b) != g.leq(u, t[a], t[b])) {
            r = CheckReport::fail("explicit", "l_{u,1} does not preserve and reflect order",
                                  {{"open", X.name(u)}, {"pair", detail::names_of(F, u, {a, b})}});
            break;
          }
      theta.map.push_back(std::move(t));
    }
    if (r.passed) {
      const auto& L = *h.target;
      for (std::size_t u = 0; u < X.size() && r.passed; ++u)
        for (std::size_t v = 0; v < X.size() && r.passed; ++v) {
          if (!X.leq(v, u)) continue;
          for (std::size_t x = 0; x < F.size(u); ++x)
            if (L.meet(cs.left(top, u, x), h(v)) != cs.left(top, v, F.restrict(u, x, v))) {
              r = CheckReport::fail("explicit", "l_{u,1}(x) ∧ h(v) ≠ l_{v,1}(x|v)",
                                    {{"from", X.name(u)}, {"to", X.name(v)}, {"section", F.name(u, x)}});
              break;
            }
        }
    }
    if (r.passed) {
      auto nat = verify_morphism(theta);
      if (!nat.passed) r = CheckReport::fail("explicit", "isomorphism family not natural", nat.witness);
    }
    forms.push_back(std::move(r));
  }
  {
    auto iso = find_complete_posheaf_iso(f, g, budget);
    forms.push_back(iso ? CheckReport::pass("search")
                        : CheckReport::fail("search", "no isomorphism Φ(Ψ(F)) ≅ F found by exhaustive search"));
  }
  auto rep = with_forms("frame_equivalence", std::move(forms));
  rep.details = {{"frame_size", h.target->size()}};
  return rep;
}

/// Ψ(Φ(h)) ≅ h: the relabeling Φ(h)(1) → L commutes under O(X) and is a
/// frame isomorphism; a constrained search confirms independently.
inline CheckReport verify_frame_equivalence(const FrameHom& h, const Budget& budget = {}) {
  if (auto r = verify_frame_hom(h); !r.passed) throw Error(ErrorKind::MalformedInput, "not a frame homomorphism: " + r.violation);
  const auto& X = *h.source;
  const PoSheaf g = phi(h);
  const FrameHom back = psi(g, budget);
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("explicit");
    FrameHom k{back.target, h.target, std::vector<std::size_t>(back.target->size())};
    for (std::size_t i = 0; i < k.map.size(); ++i) k.map[i] = phi_element(h, X.top(), i);
    auto hom = verify_frame_hom(k);
    std::vector<char> hit(h.target->size(), 0);
    for (auto y : k.map) hit[y] = 1;
    if (!hom.passed) r = CheckReport::fail("explicit", "relabeling is not a frame homomorphism", hom.witness);
    else if (k.map.size() != h.target->size() || std::find(hit.begin(), hit.end(), 0) != hit.end())
      r = CheckReport::fail("explicit", "relabeling is not bijective");
    else
      for (std::size_t u = 0; u < X.size(); ++u)
        if (k(back(u)) != h(u)) {
          r = CheckReport::fail("explicit", "relabeling does not commute under O(X)", {{"open", X.name(u)}});
          break;
        }
    forms.push_back(std::move(r));
  }
  {
    auto iso = find_frame_iso(*back.target, *h.target, {&back, &h}, budget.iso_search);
    forms.push_back(iso ? CheckReport::pass("search")
                        : CheckReport::fail("search", "no frame isomorphism under O(X) found by exhaustive search"));
  }
  return with_forms("frame_equivalence", std::move(forms));
}

}  // namespace posh
