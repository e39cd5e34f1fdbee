#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/poset.hpp"
#include "posh/presheaf.hpp"
#include "posh/report.hpp"

namespace posh {

/// A sheaf with one order per open. POS1–3 are verified, not assumed.
struct PoSheaf {
  PresheafPtr sheaf;
  std::vector<Poset> order;

  [[nodiscard]] const Presheaf& F() const { return *sheaf; }
  [[nodiscard]] const FiniteFrame& X() const { return *sheaf->frame; }
  [[nodiscard]] bool leq(std::size_t u, std::size_t x, std::size_t y) const { return order[u].leq(x, y); }
};

inline PoSheaf discrete(const PresheafPtr& f) {
  PoSheaf p{f, {}};
  for (std::size_t u = 0; u < f->opens(); ++u) p.order.emplace_back(f->size(u));
  return p;
}

/// Same carriers, every order reversed.
inline PoSheaf opposite(const PoSheaf& p) {
  PoSheaf q{p.sheaf, {}};
  for (const auto& o : p.order) q.order.push_back(o.opposite());
  return q;
}

inline void check_order_tables(const PoSheaf& p) {
  if (!p.sheaf) throw Error(ErrorKind::MalformedInput, "posheaf has no sheaf");
  if (p.order.size() != p.F().opens()) throw Error(ErrorKind::DomainMismatch, "order tables do not match the opens");
  for (std::size_t u = 0; u < p.order.size(); ++u)
    if (p.order[u].size() != p.F().size(u)) throw Error(ErrorKind::DomainMismatch, "order table size mismatch");
}

/// F × G with the componentwise order.
inline PoSheaf product(const PoSheaf& f, const PoSheaf& g) {
  auto fg = share(product(f.F(), g.F()));
  PoSheaf p{fg, {}};
  for (std::size_t u = 0; u < fg->opens(); ++u) {
    const std::size_t n = g.F().size(u);
    p.order.push_back(Poset::from_predicate(fg->size(u), [&](auto a, auto b) {
      return f.leq(u, a / n, b / n) && g.leq(u, a % n, b % n);
    }));
  }
  return p;
}

/// ≤_F as a subset of F × F, where (x, y) sits at x * |F(u)| + y.
inline Subsheaf order_subsheaf(const PoSheaf& p, const Presheaf& ff) {
  Subsheaf s = empty_subset(ff);
  for (std::size_t u = 0; u < p.F().opens(); ++u) {
    const std::size_t n = p.F().size(u);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (p.leq(u, x, y)) s.in[u][x * n + y] = 1;
  }
  return s;
}

namespace detail {

inline Json names_of(const Presheaf& f, std::size_t u, std::span<const std::size_t> xs) {
  Json a = Json::array();
  for (auto x : xs) a.push_back(f.name(u, x));
  return a;
}

inline Json names_of(const Presheaf& f, std::size_t u, std::initializer_list<std::size_t> xs) {
  return names_of(f, u, std::span<const std::size_t>(xs.begin(), xs.size()));
}

/// POS1–3 read off the per-open orders.
inline CheckReport posheaf_definition(const PoSheaf& p) {
  const auto& F = p.F();
  const auto& X = p.X();
  const std::string name = "definition";
  for (std::size_t u = 0; u < F.opens(); ++u)
    if (auto bad = p.order[u].first_violation()) {
      Json secs = Json::array();
      for (auto x : bad->second) secs.push_back(F.name(u, x));
      return CheckReport::fail(name, "POS1 " + bad->first, {{"open", X.name(u)}, {"sections", secs}});
    }
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t v = 0; v < F.opens(); ++v) {
      if (!X.lt(v, u)) continue;
      for (std::size_t x = 0; x < F.size(u); ++x)
        for (std::size_t y = 0; y < F.size(u); ++y)
          if (p.leq(u, x, y) && !p.leq(v, F.restrict(u, x, v), F.restrict(u, y, v)))
            return CheckReport::fail(name, "POS2",
                                     {{"from", X.name(u)}, {"to", X.name(v)},
                                      {"lower", F.name(u, x)}, {"upper", F.name(u, y)}});
    }
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (const auto& cover : X.covers(u)) {
      if (std::find(cover.begin(), cover.end(), u) != cover.end()) continue;
      for (std::size_t x = 0; x < F.size(u); ++x)
        for (std::size_t y = 0; y < F.size(u); ++y) {
          if (p.leq(u, x, y)) continue;
          bool ordered = true;
          for (auto ui : cover)
            if (!p.leq(ui, F.restrict(u, x, ui), F.restrict(u, y, ui))) {
              ordered = false;
              break;
            }
          if (!ordered) continue;
          Json c = Json::array(), lo = Json::array(), hi = Json::array();
          for (auto ui : cover) {
            c.push_back(X.name(ui));
            lo.push_back(F.name(ui, F.restrict(u, x, ui)));
            hi.push_back(F.name(ui, F.restrict(u, y, ui)));
          }
          return CheckReport::fail(name, "POS3",
                                   {{"open", X.name(u)}, {"cover", c}, {"lower", lo}, {"upper", hi}});
        }
    }
  return CheckReport::pass(name);
}

/// ≤_F as a subobject of F × F: a subsheaf that is internally reflexive,
/// antisymmetric and transitive.
inline CheckReport posheaf_internal(const PoSheaf& p) {
  const auto& F = p.F();
  const auto& X = p.X();
  const std::string name = "internal";
  const Presheaf ff = product(F, F);
  const Subsheaf le = order_subsheaf(p, ff);
  auto in = [&](std::size_t u, std::size_t x, std::size_t y) { return le.in[u][x * F.size(u) + y] != 0; };
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x)
      if (!in(u, x, x))
        return CheckReport::fail(name, "diagonal not contained in the order", {{"open", X.name(u)}, {"section", F.name(u, x)}});
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x)
      for (std::size_t y = 0; y < F.size(u); ++y)
        if (x != y && in(u, x, y) && in(u, y, x))
          return CheckReport::fail(name, "order meets its twist outside the diagonal",
                                   {{"open", X.name(u)}, {"pair", names_of(F, u, {x, y})}});
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x)
      for (std::size_t y = 0; y < F.size(u); ++y) {
        if (!in(u, x, y)) continue;
        for (std::size_t z = 0; z < F.size(u); ++z)
          if (in(u, y, z) && !in(u, x, z))
            return CheckReport::fail(name, "composite not contained in the order",
                                     {{"open", X.name(u)}, {"chain", names_of(F, u, {x, y, z})}});
      }
  if (auto leak = restriction_leak(ff, le)) {
    return CheckReport::fail(name, "not a sub-presheaf of F×F",
                             {{"open", X.name(leak->first)}, {"pair", ff.name(leak->first, leak->second)}});
  }
  const Subsheaf gen = generate_subsheaf(ff, le);
  for (std::size_t u = 0; u < ff.opens(); ++u)
    for (std::size_t x = 0; x < ff.size(u); ++x)
      if (gen.in[u][x] && !le.in[u][x])
        return CheckReport::fail(name, "not a subsheaf of F×F", {{"open", X.name(u)}, {"pair", ff.name(u, x)}});
  return CheckReport::pass(name);
}

}  // namespace detail

/// POS1–3 directly, and ≤_F ⊆ F × F as an internal partial order; the two
/// verdicts must coincide.
inline CheckReport verify_posheaf(const PoSheaf& p) {
  check_order_tables(p);
  return with_forms("posheaf", {detail::posheaf_definition(p), detail::posheaf_internal(p)});
}

struct PointOrderWitness {
  Point lower, upper;
  bool holds = false;
  std::optional<std::size_t> via;  // upper's value restricted to dom(lower)
  bool agree = true;
};

/// dom(p) ≤ dom(q) and p ≤ q|dom(p); cross-checked against the factoring
/// of ⟨p, q|dom p⟩ through ≤_F at every open below dom(p).
inline PointOrderWitness point_leq(const PoSheaf& f, Point p, Point q) {
  const auto& F = f.F();
  const auto& X = f.X();
  PointOrderWitness w;
  w.lower = p;
  w.upper = q;
  if (X.leq(p.dom, q.dom)) {
    w.via = F.restrict(q.dom, q.value, p.dom);
    w.holds = f.leq(p.dom, p.value, *w.via);
  }
  bool factors = X.leq(p.dom, q.dom);
  for (std::size_t v = 0; v < F.opens() && factors; ++v)
    if (X.leq(v, p.dom)) factors = f.leq(v, F.restrict(p.dom, p.value, v), F.restrict(q.dom, q.value, v));
  w.agree = factors == w.holds;
  return w;
}

/// The point order on enumerate_points(F).
inline Poset point_order(const PoSheaf& f, const std::vector<Point>& pts) {
  return Poset::from_predicate(pts.size(), [&](auto i, auto j) { return point_leq(f, pts[i], pts[j]).holds; });
}

inline void check_shapes(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a) {
  check_morphism_tables(a);
  if (a.source->opens() != f.F().opens() || a.target->opens() != g.F().opens())
    throw Error(ErrorKind::DomainMismatch, "morphism does not connect the given posheaves");
  for (std::size_t u = 0; u < f.F().opens(); ++u)
    if (a.source->size(u) != f.F().size(u) || a.target->size(u) != g.F().size(u))
      throw Error(ErrorKind::DomainMismatch, "morphism does not connect the given posheaves");
}

/// Point order preserved, per-open monotone, and α × α carrying ≤_F into ≤_G.
inline CheckReport verify_order_preserving(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a) {
  check_shapes(f, g, a);
  const auto& F = f.F();
  const auto& X = f.X();
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("points");
    const auto pts = enumerate_points(F);
    for (std::size_t i = 0; i < pts.size() && r.passed; ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const auto w = point_leq(f, pts[i], pts[j]);
        if (!w.holds || point_leq(g, a(pts[i]), a(pts[j])).holds) continue;
        r = CheckReport::fail("points", "order not preserved",
                              {{"lower", point_json(F, pts[i])}, {"upper", point_json(F, pts[j])},
                               {"open", X.name(pts[i].dom)},
                               {"pair", detail::names_of(F, pts[i].dom, {pts[i].value, *w.via})}});
        break;
      }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
        for (std::size_t y = 0; y < F.size(u); ++y)
          if (f.leq(u, x, y) && !g.leq(u, a(u, x), a(u, y))) {
            r = CheckReport::fail("per-open", "not monotone",
                                  {{"open", X.name(u)}, {"pair", detail::names_of(F, u, {x, y})}});
            break;
          }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("factoring");
    const Presheaf ff = product(F, F), gg = product(g.F(), g.F());
    const Subsheaf lf = order_subsheaf(f, ff), lg = order_subsheaf(g, gg);
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u) {
      const std::size_t n = F.size(u), m = g.F().size(u);
      for (std::size_t k = 0; k < ff.size(u); ++k) {
        if (!lf.in[u][k]) continue;
        const std::size_t x = k / n, y = k % n;
        if (!lg.in[u][a(u, x) * m + a(u, y)]) {
          r = CheckReport::fail("factoring", "α×α does not factor through ≤_G",
                                {{"open", X.name(u)}, {"pair", detail::names_of(F, u, {x, y})}});
          break;
        }
      }
    }
    forms.push_back(std::move(r));
  }
  return with_forms("order_preserving", std::move(forms));
}

/// α ≤ β on points, per open and element, and as ⟨α, β⟩ factoring through ≤_G.
inline CheckReport morphism_leq(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a, const SheafMorphism& b) {
  check_shapes(f, g, a);
  check_shapes(f, g, b);
  const auto& F = f.F();
  const auto& X = f.X();
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("points");
    for (const auto& p : enumerate_points(F))
      if (!point_leq(g, a(p), b(p)).holds) {
        r = CheckReport::fail("points", "αp ≰ βp", {{"point", point_json(F, p)}});
        break;
      }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t x = 0; x < F.size(u); ++x)
        if (!g.leq(u, a(u, x), b(u, x))) {
          r = CheckReport::fail("per-open", "α_u(x) ≰ β_u(x)", {{"open", X.name(u)}, {"section", F.name(u, x)}});
          break;
        }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("factoring");
    const Presheaf gg = product(g.F(), g.F());
    const Subsheaf lg = order_subsheaf(g, gg);
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t x = 0; x < F.size(u); ++x)
        if (!lg.in[u][a(u, x) * g.F().size(u) + b(u, x)]) {
          r = CheckReport::fail("factoring", "⟨α,β⟩ does not factor through ≤_G",
                                {{"open", X.name(u)}, {"section", F.name(u, x)}});
          break;
        }
    forms.push_back(std::move(r));
  }
  return with_forms("morphism_leq", std::move(forms));
}

/// Ω(u) = ↓u, restriction v ↦ v ∧ w, inclusion order. Section i of Ω(u)
/// is the open below(u)[i], named as in the frame.
inline PoSheaf omega(const FramePtr& x) {
  std::vector<std::vector<std::string>> carriers(x->size());
  std::vector<std::vector<std::size_t>> elems(x->size());
  for (std::size_t u = 0; u < x->size(); ++u) {
    elems[u] = x->below(u);
    for (auto v : elems[u]) carriers[u].push_back(x->name(v));
  }
  auto pos = [&](std::size_t u, std::size_t v) {
    return static_cast<std::size_t>(std::find(elems[u].begin(), elems[u].end(), v) - elems[u].begin());
  };
  auto sh = share(make_presheaf(x, std::move(carriers), [&](std::size_t u, std::size_t i, std::size_t w) {
    return pos(w, x->meet(elems[u][i], w));
  }));
  PoSheaf p{sh, {}};
  for (std::size_t u = 0; u < x->size(); ++u)
    p.order.push_back(Poset::from_predicate(elems[u].size(), [&](auto i, auto j) {
      return x->leq(elems[u][i], elems[u][j]);
    }));
  return p;
}

/// Index of the open v inside Ω(u), for v ≤ u.
inline std::size_t omega_index(const FiniteFrame& x, std::size_t u, std::size_t v) {
  std::size_t i = 0;
  for (std::size_t w = 0; w < v; ++w)
    if (x.leq(w, u)) ++i;
  return i;
}

/// The open of X that the section i of Ω(u) stands for.
inline std::size_t omega_open(const FiniteFrame& x, std::size_t u, std::size_t i) { return x.below(u)[i]; }

/// φ_u(x) = ⋁{v ≤ u : x|v ∈ S(v)} as a morphism F → Ω.
inline SheafMorphism classifier(const PresheafPtr& f, const Subsheaf& s, const PresheafPtr& om) {
  const auto& X = *f->frame;
  SheafMorphism phi{f, om, {}};
  for (std::size_t u = 0; u < f->opens(); ++u) {
    phi.map.emplace_back(f->size(u));
    for (std::size_t x = 0; x < f->size(u); ++x) {
      std::size_t j = X.bottom();
      for (std::size_t v = 0; v < f->opens(); ++v)
        if (X.leq(v, u) && s.in[v][f->restrict(u, x, v)]) j = X.join(j, v);
      phi.map[u][x] = omega_index(X, u, j);
    }
  }
  return phi;
}

/// Naturality of φ and the pullback of truth: S(u) = {x : φ_u(x) = u}.
inline CheckReport verify_classifier(const SheafMorphism& phi, const Subsheaf& s) {
  auto r = verify_morphism(phi);
  if (!r.passed) return r;
  const auto& F = *phi.source;
  const auto& X = *F.frame;
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x)
      if ((omega_open(X, u, phi(u, x)) == u) != s.contains(u, x))
        return CheckReport::fail("classifier", "pullback of truth differs from the subsheaf",
                                 {{"open", X.name(u)}, {"section", F.name(u, x)}});
  return CheckReport::pass("classifier");
}

/// Downward closure under the point order, per-open downsets, and φ order
/// preserving from F^op into Ω.
inline CheckReport is_downsheaf(const PoSheaf& f, const Subsheaf& s) {
  const auto& F = f.F();
  const auto& X = f.X();
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("points");
    const auto pts = enumerate_points(F);
    for (const auto& q : pts) {
      if (!s.contains(q.dom, q.value)) continue;
      for (const auto& p : pts)
        if (!s.contains(p.dom, p.value) && point_leq(f, p, q).holds) {
          r = CheckReport::fail("points", "not closed downward",
                                {{"lower", point_json(F, p)}, {"upper", point_json(F, q)}});
          break;
        }
      if (!r.passed) break;
    }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t y = 0; y < F.size(u) && r.passed; ++y) {
        if (!s.contains(u, y)) continue;
        for (std::size_t x = 0; x < F.size(u); ++x)
          if (!s.contains(u, x) && f.leq(u, x, y)) {
            r = CheckReport::fail("per-open", "not a downset",
                                  {{"open", X.name(u)}, {"lower", F.name(u, x)}, {"upper", F.name(u, y)}});
            break;
          }
      }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("classifier");
    const auto om = omega(f.sheaf->frame);
    const auto phi = classifier(f.sheaf, s, om.sheaf);
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
        for (std::size_t y = 0; y < F.size(u); ++y)
          if (f.leq(u, x, y) && !om.leq(u, phi(u, y), phi(u, x))) {
            r = CheckReport::fail("classifier", "φ not order-preserving on F^op",
                                  {{"open", X.name(u)}, {"lower", F.name(u, x)}, {"upper", F.name(u, y)}});
            break;
          }
    forms.push_back(std::move(r));
  }
  return with_forms("downsheaf", std::move(forms));
}

inline CheckReport is_uppersheaf(const PoSheaf& f, const Subsheaf& s) {
  auto r = is_downsheaf(opposite(f), s);
  r.check = "uppersheaf";
  return r;
}

enum class Direction { Ideal, Filter };

/// ↓p(u) = {x ≤ p|u} for u ≤ dom p and empty otherwise; ↑p dually.
inline Subsheaf principal(const PoSheaf& f, Point p, Direction d = Direction::Ideal) {
  const auto& F = f.F();
  Subsheaf s = empty_subset(F);
  for (std::size_t u = 0; u < F.opens(); ++u) {
    if (!f.X().leq(u, p.dom)) continue;
    const std::size_t pu = F.restrict(p.dom, p.value, u);
    for (std::size_t x = 0; x < F.size(u); ++x)
      s.in[u][x] = d == Direction::Ideal ? f.leq(u, x, pu) : f.leq(u, pu, x);
  }
  return s;
}

/// ↓S(u) = {x : some cover {u_i} of u and x_i ∈ S(u_i) have x|u_i ≤ x_i}.
inline Subsheaf down_closure(const PoSheaf& f, const Subsheaf& s) {
  const auto& F = f.F();
  const auto& X = f.X();
  Subsheaf r = empty_subset(F);
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t x = 0; x < F.size(u); ++x)
      for (const auto& cover : X.covers(u)) {
        bool ok = true;
        for (auto ui : cover) {
          const std::size_t xi = F.restrict(u, x, ui);
          bool found = false;
          for (std::size_t t = 0; t < F.size(ui) && !found; ++t) found = s.in[ui][t] && f.leq(ui, xi, t);
          if (!found) {
            ok = false;
            break;
          }
        }
        if (ok) {
          r.in[u][x] = 1;
          break;
        }
      }
  return r;
}

/// ℙF or 𝔻F: the subsheaves (downsheaves) of each F^u, ordered by inclusion.
struct PowerSheaf {
  PresheafPtr base;
  PoSheaf posheaf;
  std::vector<std::vector<Subsheaf>> members;
  std::vector<std::map<Subsheaf, std::size_t>> lookup;

  [[nodiscard]] std::size_t index_of(std::size_t u, const Subsheaf& s) const {
    auto it = lookup[u].find(s);
    if (it == lookup[u].end()) {
      throw Error(ErrorKind::SectionNotInCarrier,
                  "subset " + describe(*base, s) + " is not a member over '" + base->frame->name(u) + "'");
    }
    return it->second;
  }
};

namespace detail {

inline PowerSheaf assemble_power(const PresheafPtr& f, std::vector<std::vector<Subsheaf>> members) {
  PowerSheaf ps;
  ps.base = f;
  const auto& X = *f->frame;
  ps.lookup.resize(X.size());
  std::vector<std::vector<std::string>> carriers(X.size());
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t i = 0; i < members[u].size(); ++i) {
      ps.lookup[u].emplace(members[u][i], i);
      carriers[u].push_back(describe(*f, members[u][i]));
    }
  ps.members = std::move(members);
  auto sh = make_presheaf(f->frame, std::move(carriers), [&](std::size_t u, std::size_t i, std::size_t v) {
    return ps.index_of(v, restrict_support(*f, ps.members[u][i], v));
  });
  ps.posheaf.sheaf = share(std::move(sh));
  for (std::size_t u = 0; u < X.size(); ++u) {
    const auto& ms = ps.members[u];
    ps.posheaf.order.push_back(Poset::from_predicate(ms.size(), [&](auto a, auto b) { return ms[a].subset_of(ms[b]); }));
  }
  return ps;
}

}  // namespace detail

/// ℙF(u) = Sub(F^u), restriction S ↦ S^v, inclusion order.
inline PowerSheaf power_sheaf(const PresheafPtr& f, const Budget& budget = {}) {
  std::size_t used = 0;
  std::vector<std::vector<Subsheaf>> members;
  for (std::size_t u = 0; u < f->opens(); ++u) members.push_back(enumerate_subsheaves(*f, u, budget, {}, &used));
  return detail::assemble_power(f, std::move(members));
}

/// 𝔻F(u) = the downsheaves of F^u.
inline PowerSheaf down_power_sheaf(const PoSheaf& f, const Budget& budget = {}) {
  std::size_t used = 0;
  std::vector<std::vector<Subsheaf>> members;
  auto downset = [&](std::size_t w, const std::vector<char>& in) {
    for (std::size_t y = 0; y < in.size(); ++y)
      if (in[y])
        for (std::size_t x = 0; x < in.size(); ++x)
          if (!in[x] && f.leq(w, x, y)) return false;
    return true;
  };
  for (std::size_t u = 0; u < f.F().opens(); ++u)
    members.push_back(enumerate_subsheaves(f.F(), u, budget, downset, &used));
  return detail::assemble_power(f.sheaf, std::move(members));
}

/// x ∈ F(u) ↦ ↓(u, x), landing in ℙF or 𝔻F.
inline SheafMorphism down_embedding(const PoSheaf& f, const PowerSheaf& target) {
  SheafMorphism m{f.sheaf, target.posheaf.sheaf, {}};
  for (std::size_t u = 0; u < f.F().opens(); ++u) {
    m.map.emplace_back(f.F().size(u));
    for (std::size_t x = 0; x < f.F().size(u); ++x) m.map[u][x] = target.index_of(u, principal(f, {u, x}));
  }
  return m;
}

/// The inclusion 𝔻F ↣ ℙF.
inline SheafMorphism power_inclusion(const PowerSheaf& down, const PowerSheaf& power) {
  SheafMorphism m{down.posheaf.sheaf, power.posheaf.sheaf, {}};
  for (std::size_t u = 0; u < down.members.size(); ++u) {
    m.map.emplace_back();
    for (const auto& s : down.members[u]) m.map[u].push_back(power.index_of(u, s));
  }
  return m;
}

/// S ↦ ↓S, from ℙF to 𝔻F.
inline SheafMorphism down_closure_morphism(const PoSheaf& f, const PowerSheaf& power, const PowerSheaf& down) {
  SheafMorphism m{power.posheaf.sheaf, down.posheaf.sheaf, {}};
  for (std::size_t u = 0; u < power.members.size(); ++u) {
    m.map.emplace_back();
    for (const auto& s : power.members[u]) m.map[u].push_back(down.index_of(u, down_closure(f, s)));
  }
  return m;
}

/// α_*: ℙF → ℙG, S ↦ the subsheaf generated by the per-open image of S.
inline SheafMorphism direct_image(const SheafMorphism& a, const PowerSheaf& pf, const PowerSheaf& pg) {
  SheafMorphism m{pf.posheaf.sheaf, pg.posheaf.sheaf, {}};
  for (std::size_t u = 0; u < pf.members.size(); ++u) {
    m.map.emplace_back();
    for (const auto& s : pf.members[u])
      m.map[u].push_back(pg.index_of(u, generate_subsheaf(*a.target, image_of(a, s))));
  }
  return m;
}

inline MonotoneMap component(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a, std::size_t u) {
  return MonotoneMap{f.order[u], g.order[u], a.map[u]};
}

/// α ⊣ β on points, as monotone maps with 1 ≤ βα and αβ ≤ 1, and per open
/// with β natural.
inline CheckReport verify_galois(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a, const SheafMorphism& b) {
  check_shapes(f, g, a);
  check_shapes(g, f, b);
  const auto& F = f.F();
  const auto& G = g.F();
  const auto& X = f.X();
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("points");
    const auto pf = enumerate_points(F), pg = enumerate_points(G);
    for (std::size_t i = 0; i < pf.size() && r.passed; ++i)
      for (const auto& q : pg)
        if (point_leq(g, a(pf[i]), q).holds != point_leq(f, pf[i], b(q)).holds) {
          r = CheckReport::fail("points", "αp ≤ q and p ≤ βq differ",
                                {{"p", point_json(F, pf[i])}, {"q", point_json(G, q)}});
          break;
        }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("unit-counit");
    auto unit = morphism_leq(f, f, identity_morphism(f.sheaf), compose(b, a));
    auto counit = morphism_leq(g, g, compose(a, b), identity_morphism(g.sheaf));
    auto ma = verify_order_preserving(f, g, a), mb = verify_order_preserving(g, f, b);
    if (!ma.passed) r = CheckReport::fail("unit-counit", "α not order-preserving", ma.witness);
    else if (!mb.passed) r = CheckReport::fail("unit-counit", "β not order-preserving", mb.witness);
    else if (!unit.passed) r = CheckReport::fail("unit-counit", "1_F ≰ βα", unit.witness);
    else if (!counit.passed) r = CheckReport::fail("unit-counit", "αβ ≰ 1_G", counit.witness);
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
        for (std::size_t y = 0; y < G.size(u); ++y)
          if (g.leq(u, a(u, x), y) != f.leq(u, x, b(u, y))) {
            r = CheckReport::fail("per-open", "α_u not left adjoint to β_u",
                                  {{"open", X.name(u)}, {"x", F.name(u, x)}, {"y", G.name(u, y)}});
            break;
          }
    if (r.passed) {
      auto nat = verify_morphism(b);
      if (!nat.passed) r = CheckReport::fail("per-open", "β not natural", nat.witness);
    }
    forms.push_back(std::move(r));
  }
  return with_forms("galois", std::move(forms));
}

/// Per-open right (left) adjoints of α assembled into a morphism, when each
/// exists and the result is natural.
inline std::optional<SheafMorphism> find_adjoint(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a, bool right) {
  check_shapes(f, g, a);
  SheafMorphism b{a.target, a.source, {}};
  for (std::size_t u = 0; u < f.F().opens(); ++u) {
    auto c = component(f, g, a, u);
    if (c.monotonicity_violation()) return std::nullopt;
    auto adj = right ? right_adjoint(c) : left_adjoint(c);
    if (!adj) return std::nullopt;
    b.map.push_back(adj.adjoint->table);
  }
  if (!verify_morphism(b).passed) return std::nullopt;
  return b;
}

}  // namespace posh
