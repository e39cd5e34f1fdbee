#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/poset.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/report.hpp"

namespace posh {

/// Upper and lower bounds of a subsheaf over the whole point set.
struct BoundReport {
  std::vector<Point> upper_bounds;
  std::optional<Point> sup;
  std::vector<Point> minimal_upper;  // the antichain when no sup exists
  std::vector<Point> lower_bounds;
  std::optional<Point> inf;
  std::vector<Point> maximal_lower;

  [[nodiscard]] Json to_json(const Presheaf& f) const {
    auto list = [&](const std::vector<Point>& ps) {
      Json a = Json::array();
      for (const auto& p : ps) a.push_back(point_json(f, p));
      return a;
    };
    Json j;
    j["upper_bounds"] = list(upper_bounds);
    j["sup"] = sup ? point_json(f, *sup) : Json();
    if (!sup) j["minimal_upper_bounds"] = list(minimal_upper);
    j["lower_bounds"] = list(lower_bounds);
    j["inf"] = inf ? point_json(f, *inf) : Json();
    if (!inf) j["maximal_lower_bounds"] = list(maximal_lower);
    return j;
  }
};

namespace detail {

inline void extremal(const std::vector<Point>& pts, const Poset& ord, const std::vector<std::size_t>& cand, bool least,
                     std::optional<Point>& best, std::vector<Point>& antichain) {
  if (auto m = least ? ord.least_of(cand) : ord.greatest_of(cand)) {
    best = pts[*m];
    return;
  }
  for (auto c : cand) {
    bool ext = true;
    for (auto d : cand)
      if (d != c && (least ? ord.leq(d, c) : ord.leq(c, d))) ext = false;
    if (ext) antichain.push_back(pts[c]);
  }
}

}  // namespace detail

/// Exhaustive bound scan over the points of F. A subset that is only
/// restriction-closed is replaced by the subsheaf it generates, which has
/// the same bounds.
inline BoundReport bounds(const PoSheaf& f, const Subsheaf& a) {
  const auto& F = f.F();
  const Subsheaf s = generate_subsheaf(F, restriction_closure(F, a));
  const auto pts = enumerate_points(F);
  const Poset ord = point_order(f, pts);
  std::vector<std::size_t> members, ub, lb;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (s.contains(pts[i].dom, pts[i].value)) members.push_back(i);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool up = true, lo = true;
    for (auto m : members) {
      up = up && ord.leq(m, i);
      lo = lo && ord.leq(i, m);
    }
    if (up) ub.push_back(i);
    if (lo) lb.push_back(i);
  }
  BoundReport r;
  for (auto i : ub) r.upper_bounds.push_back(pts[i]);
  for (auto i : lb) r.lower_bounds.push_back(pts[i]);
  detail::extremal(pts, ord, ub, true, r.sup, r.minimal_upper);
  detail::extremal(pts, ord, lb, false, r.inf, r.maximal_lower);
  return r;
}

/// The restriction F(u) → F(v) as a monotone map.
inline MonotoneMap restriction_map(const PoSheaf& f, std::size_t u, std::size_t v) {
  return MonotoneMap{f.order[u], f.order[v], f.F().res[u][v]};
}

/// left[u][v] and right[u][v] (v ≤ u) are the adjoints F(v) → F(u) of the
/// restriction F(u) → F(v), absent when they do not exist.
struct RestrictionAdjoints {
  std::vector<std::vector<std::optional<std::vector<std::size_t>>>> left, right;
};

inline RestrictionAdjoints restriction_adjoints(const PoSheaf& f) {
  const auto& X = f.X();
  RestrictionAdjoints a;
  a.left.assign(X.size(), std::vector<std::optional<std::vector<std::size_t>>>(X.size()));
  a.right = a.left;
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t v = 0; v < X.size(); ++v) {
      if (!X.leq(v, u)) continue;
      const auto r = restriction_map(f, u, v);
      if (auto l = left_adjoint(r)) a.left[u][v] = l.adjoint->table;
      if (auto g = right_adjoint(r)) a.right[u][v] = g.adjoint->table;
    }
  return a;
}

/// Lattice tables and restriction adjoints of a posheaf meeting the
/// per-open completeness conditions.
struct CompleteStructure {
  std::vector<LatticeTables> lattice;
  RestrictionAdjoints adjoints;

  [[nodiscard]] std::size_t left(std::size_t u, std::size_t v, std::size_t x) const { return (*adjoints.left[u][v])[x]; }
  [[nodiscard]] std::size_t right(std::size_t u, std::size_t v, std::size_t x) const { return (*adjoints.right[u][v])[x]; }
};

namespace detail {

/// Complete lattices per open, restrictions onto with both adjoints.
inline CheckReport per_open_completeness(const PoSheaf& f, std::vector<std::optional<LatticeTables>>& lat,
                                         const RestrictionAdjoints& adj) {
  const auto& F = f.F();
  const auto& X = f.X();
  const std::string name = "per-open";
  lat.clear();
  for (std::size_t u = 0; u < F.opens(); ++u) lat.push_back(lattice_tables(f.order[u]));
  for (std::size_t u = 0; u < F.opens(); ++u)
    if (!lat[u]) return CheckReport::fail(name, "not a complete lattice", {{"open", X.name(u)}});
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t v = 0; v < F.opens(); ++v) {
      if (!X.lt(v, u)) continue;
      std::vector<char> hit(F.size(v), 0);
      for (auto y : F.res[u][v]) hit[y] = 1;
      for (std::size_t y = 0; y < F.size(v); ++y)
        if (!hit[y])
          return CheckReport::fail(name, "restriction not surjective",
                                   {{"from", X.name(u)}, {"to", X.name(v)}, {"missed", F.name(v, y)}});
      if (!adj.left[u][v])
        return CheckReport::fail(name, "restriction has no left adjoint", {{"from", X.name(u)}, {"to", X.name(v)}});
      if (!adj.right[u][v])
        return CheckReport::fail(name, "restriction has no right adjoint", {{"from", X.name(u)}, {"to", X.name(v)}});
    }
  return CheckReport::pass(name);
}

/// Least y ∈ F(u) with every point of S over opens below u under (u, y).
inline std::optional<std::size_t> least_above(const PoSheaf& f, const Subsheaf& s, std::size_t u) {
  const auto& F = f.F();
  std::vector<std::size_t> cand;
  for (std::size_t y = 0; y < F.size(u); ++y) {
    bool ok = true;
    for (std::size_t v = 0; v < F.opens() && ok; ++v) {
      if (!f.X().leq(v, u)) continue;
      const std::size_t yv = F.restrict(u, y, v);
      for (std::size_t x = 0; x < F.size(v) && ok; ++x)
        if (s.in[v][x]) ok = f.leq(v, x, yv);
    }
    if (ok) cand.push_back(y);
  }
  return f.order[u].least_of(cand);
}

/// ⋁S exists and extends to a global point p with p|u least above S^u for every u.
inline std::optional<CheckReport> global_sup_violation(const PoSheaf& f, const Subsheaf& s, const std::string& form) {
  const auto& F = f.F();
  const auto& X = f.X();
  const auto b = bounds(f, s);
  if (!b.sup)
    return CheckReport::fail(form, "no supremum", {{"subsheaf", describe(F, s)}});
  std::vector<std::size_t> m(F.opens(), kNone);
  for (std::size_t u = 0; u < F.opens(); ++u) {
    auto y = least_above(f, s, u);
    if (!y)
      return CheckReport::fail(form, "no least element above the restricted subsheaf",
                               {{"subsheaf", describe(F, s)}, {"open", X.name(u)}});
    m[u] = *y;
  }
  const std::size_t top = X.top();
  for (std::size_t u = 0; u < F.opens(); ++u)
    if (F.restrict(top, m[top], u) != m[u])
      return CheckReport::fail(form, "least elements do not form a global point",
                               {{"subsheaf", describe(F, s)}, {"open", X.name(u)}});
  if (F.restrict(top, m[top], b.sup->dom) != b.sup->value)
    return CheckReport::fail(form, "global point does not extend the supremum", {{"subsheaf", describe(F, s)}});
  return std::nullopt;
}

}  // namespace detail

/// Throws NotComplete (with the failing condition) unless the per-open
/// completeness conditions hold.
inline CompleteStructure complete_structure(const PoSheaf& f) {
  std::vector<std::optional<LatticeTables>> lat;
  auto adj = restriction_adjoints(f);
  auto r = detail::per_open_completeness(f, lat, adj);
  if (!r.passed) throw Error(ErrorKind::NotComplete, r.violation, r.witness);
  CompleteStructure cs;
  for (auto& l : lat) cs.lattice.push_back(std::move(*l));
  cs.adjoints = std::move(adj);
  return cs;
}

/// sup_u(S) = l_{u,w}(⋁_{v ≤ w} l_{w,v}(⋁S(v))) where w = ⋁{v : S(v) ≠ ∅}.
inline std::size_t sup_formula(const PoSheaf& f, const CompleteStructure& cs, const Subsheaf& s, std::size_t u) {
  const auto& X = f.X();
  std::size_t w = X.bottom();
  for (std::size_t v = 0; v < X.size(); ++v)
    if (X.leq(v, u) && !s.empty_at(v)) w = X.join(w, v);
  std::size_t acc = cs.lattice[w].bottom;
  for (std::size_t v = 0; v < X.size(); ++v) {
    if (!X.leq(v, w)) continue;
    const std::size_t jv = cs.lattice[v].join_all(s.members(v));
    acc = cs.lattice[w].join(acc, cs.left(w, v, jv));
  }
  return cs.left(u, w, acc);
}

/// The sup morphism ℙF → F (or 𝔻F → F) by the adjoint formula.
inline SheafMorphism sup_morphism(const PoSheaf& f, const CompleteStructure& cs, const PowerSheaf& source) {
  SheafMorphism m{source.posheaf.sheaf, f.sheaf, {}};
  for (std::size_t u = 0; u < source.members.size(); ++u) {
    m.map.emplace_back();
    for (const auto& s : source.members[u]) m.map[u].push_back(sup_formula(f, cs, s, u));
  }
  return m;
}

inline SheafMorphism sup_morphism(const PoSheaf& f, const PowerSheaf& source) {
  return sup_morphism(f, complete_structure(f), source);
}

/// The same morphism found by brute force: least y with S ⊆ ↓y.
inline SheafMorphism sup_morphism_oracle(const PoSheaf& f, const PowerSheaf& source) {
  SheafMorphism m{source.posheaf.sheaf, f.sheaf, {}};
  for (std::size_t u = 0; u < source.members.size(); ++u) {
    m.map.emplace_back();
    for (const auto& s : source.members[u]) {
      auto y = detail::least_above(f, s, u);
      if (!y) throw Error(ErrorKind::NotComplete, "no least element above " + describe(f.F(), s));
      m.map[u].push_back(*y);
    }
  }
  return m;
}

struct CompletenessCertificate {
  CheckReport report;             // the equivalent forms
  CheckReport adjoint_square;     // l_{u∧v,u}(x|u∧v) = l_{v,u∨v}(x)|u
  CheckReport opposite_symmetry;  // agrees with the verdict for F^op
  CheckReport scl_reading;        // complete lattices, onto restrictions preserving all sups and infs, POS3
  std::optional<CompleteStructure> structure;

  [[nodiscard]] bool complete() const { return report.passed; }
  [[nodiscard]] bool consistent() const {
    return report.all_forms_agree() && adjoint_square.passed && opposite_symmetry.passed && scl_reading.passed;
  }
  [[nodiscard]] CheckReport to_report() const {
    CheckReport r = report;
    r.details = Json::object();
    r.details["adjoint_square"] = adjoint_square.to_json();
    r.details["opposite"] = opposite_symmetry.to_json();
    r.details["scl"] = scl_reading.to_json();
    if (!consistent()) r.agree = false;
    return r;
  }
};

namespace detail {

inline CheckReport scl_form(const PoSheaf& f, const std::vector<std::optional<LatticeTables>>& lat) {
  const auto& F = f.F();
  const auto& X = f.X();
  const std::string name = "scl";
  for (std::size_t u = 0; u < F.opens(); ++u)
    if (!lat[u]) return CheckReport::fail(name, "not a complete lattice", {{"open", X.name(u)}});
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t v = 0; v < F.opens(); ++v) {
      if (!X.lt(v, u)) continue;
      const auto& lu = *lat[u];
      const auto& lv = *lat[v];
      auto r = [&](std::size_t x) { return F.restrict(u, x, v); };
      std::vector<char> hit(F.size(v), 0);
      for (std::size_t x = 0; x < F.size(u); ++x) hit[r(x)] = 1;
      for (std::size_t y = 0; y < F.size(v); ++y)
        if (!hit[y]) return CheckReport::fail(name, "restriction not surjective", {{"from", X.name(u)}, {"to", X.name(v)}});
      if (r(lu.bottom) != lv.bottom || r(lu.top) != lv.top)
        return CheckReport::fail(name, "restriction misses an empty sup or inf", {{"from", X.name(u)}, {"to", X.name(v)}});
      for (std::size_t a = 0; a < F.size(u); ++a)
        for (std::size_t b = 0; b < F.size(u); ++b)
          if (r(lu.join(a, b)) != lv.join(r(a), r(b)) || r(lu.meet(a, b)) != lv.meet(r(a), r(b)))
            return CheckReport::fail(name, "restriction breaks a binary sup or inf",
                                     {{"from", X.name(u)}, {"to", X.name(v)}, {"pair", names_of(F, u, {a, b})}});
    }
  auto def = posheaf_definition(f);
  if (!def.passed && def.violation == "POS3") return CheckReport::fail(name, "POS3", def.witness);
  return CheckReport::pass(name);
}

}  // namespace detail

/// Completeness as a left adjoint of ↓: F → 𝔻F, as sups of downsheaves, as
/// sups of subsheaves, and as the per-open conditions; checked
/// independently and reconciled.
inline CompletenessCertificate is_complete(const PoSheaf& f, const Budget& budget = {}, bool with_opposite = true) {
  const auto& F = f.F();
  const auto& X = f.X();
  CompletenessCertificate cert;
  std::vector<CheckReport> forms;
  const PowerSheaf down = down_power_sheaf(f, budget);
  {
    CheckReport r = CheckReport::pass("left-adjoint");
    SheafMorphism sup{down.posheaf.sheaf, f.sheaf, {}};
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u) {
      sup.map.emplace_back();
      for (const auto& s : down.members[u]) {
        auto y = detail::least_above(f, s, u);
        if (!y) {
          r = CheckReport::fail("left-adjoint", "no least element above a downsheaf",
                                {{"open", X.name(u)}, {"downsheaf", describe(F, s)}});
          break;
        }
        sup.map[u].push_back(*y);
      }
    }
    if (r.passed) {
      auto nat = verify_morphism(sup);
      if (!nat.passed) r = CheckReport::fail("left-adjoint", "candidate sup is not natural", nat.witness);
    }
    if (r.passed) {
      auto g = verify_galois(down.posheaf, f, sup, down_embedding(f, down));
      if (!g.passed) r = CheckReport::fail("left-adjoint", "candidate sup is not left adjoint to ↓", g.witness);
    }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("downsheaves");
    for (const auto& s : down.members[X.top()])
      if (auto bad = detail::global_sup_violation(f, s, "downsheaves")) {
        r = std::move(*bad);
        break;
      }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("subsheaves");
    for (const auto& s : enumerate_subsheaves(F, X.top(), budget))
      if (auto bad = detail::global_sup_violation(f, s, "subsheaves")) {
        r = std::move(*bad);
        break;
      }
    forms.push_back(std::move(r));
  }
  std::vector<std::optional<LatticeTables>> lat;
  const auto adj = restriction_adjoints(f);
  forms.push_back(detail::per_open_completeness(f, lat, adj));
  cert.report = with_forms("complete", std::move(forms));

  if (cert.report.forms.back().passed) {
    CompleteStructure cs;
    for (auto& l : lat) cs.lattice.push_back(*l);
    cs.adjoints = adj;
    cert.adjoint_square = CheckReport::pass("adjoint_square");
    for (std::size_t u = 0; u < F.opens() && cert.adjoint_square.passed; ++u)
      for (std::size_t v = 0; v < F.opens() && cert.adjoint_square.passed; ++v) {
        const std::size_t m = X.meet(u, v), j = X.join(u, v);
        for (std::size_t x = 0; x < F.size(v); ++x)
          if (cs.left(u, m, F.restrict(v, x, m)) != F.restrict(j, cs.left(j, v, x), u)) {
            cert.adjoint_square = CheckReport::fail("adjoint_square", "square does not commute",
                                                    {{"u", X.name(u)}, {"v", X.name(v)}, {"section", F.name(v, x)}});
            break;
          }
      }
    cert.structure = std::move(cs);
  } else {
    cert.adjoint_square = CheckReport::pass("adjoint_square");
    cert.adjoint_square.details = {{"applicable", false}};
  }

  if (with_opposite) {
    const auto op = is_complete(opposite(f), budget, false);
    cert.opposite_symmetry = op.report.passed == cert.report.passed
                                 ? CheckReport::pass("opposite")
                                 : CheckReport::fail("opposite", "F and F^op disagree on completeness");
    cert.opposite_symmetry.details = {{"opposite_complete", op.report.passed}};
  } else {
    cert.opposite_symmetry = CheckReport::pass("opposite");
  }

  const auto scl = detail::scl_form(f, lat);
  cert.scl_reading = scl.passed == cert.report.passed ? CheckReport::pass("scl")
                                                      : CheckReport::fail("scl", "sheaf-over-SCL reading disagrees", scl.witness);
  cert.scl_reading.details = {{"scl_sheaf", scl.passed}};
  if (!scl.passed) cert.scl_reading.details["reason"] = scl.violation;
  return cert;
}

namespace detail {

/// Per-open preservation of binary and empty joins (or meets).
inline std::optional<CheckReport> per_open_bound_violation(const PoSheaf& f, const SheafMorphism& a,
                                                           const CompleteStructure& cf, const CompleteStructure& cg,
                                                           bool joins, const std::string& form) {
  const auto& F = f.F();
  const auto& X = f.X();
  for (std::size_t u = 0; u < F.opens(); ++u) {
    const auto& lf = cf.lattice[u];
    const auto& lg = cg.lattice[u];
    if (a(u, joins ? lf.bottom : lf.top) != (joins ? lg.bottom : lg.top))
      return CheckReport::fail(form, joins ? "empty join not preserved" : "empty meet not preserved", {{"open", X.name(u)}});
    for (std::size_t x = 0; x < F.size(u); ++x)
      for (std::size_t y = 0; y < F.size(u); ++y) {
        const std::size_t lhs = a(u, joins ? lf.join(x, y) : lf.meet(x, y));
        const std::size_t rhs = joins ? lg.join(a(u, x), a(u, y)) : lg.meet(a(u, x), a(u, y));
        if (lhs != rhs)
          return CheckReport::fail(form, joins ? "binary join not preserved" : "binary meet not preserved",
                                   {{"open", X.name(u)}, {"pair", names_of(F, u, {x, y})}});
      }
  }
  return std::nullopt;
}

inline std::optional<CheckReport> left_square_violation(const PoSheaf& f, const SheafMorphism& a,
                                                        const CompleteStructure& cf, const CompleteStructure& cg,
                                                        const std::string& form) {
  const auto& F = f.F();
  const auto& X = f.X();
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t v = 0; v < F.opens(); ++v) {
      if (!X.lt(v, u)) continue;
      for (std::size_t x = 0; x < F.size(v); ++x)
        if (a(u, cf.left(u, v, x)) != cg.left(u, v, a(v, x)))
          return CheckReport::fail(form, "left-adjoint square does not commute",
                                   {{"from", X.name(v)}, {"to", X.name(u)}, {"section", F.name(v, x)}});
    }
  return std::nullopt;
}

inline std::optional<CheckReport> sup_square_violation(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a,
                                                       const CompleteStructure& cf, const CompleteStructure& cg,
                                                       const PowerSheaf& pf, const PowerSheaf& pg, const std::string& form) {
  const auto& X = f.X();
  const auto img = direct_image(a, pf, pg);
  for (std::size_t u = 0; u < pf.members.size(); ++u)
    for (std::size_t i = 0; i < pf.members[u].size(); ++i) {
      const std::size_t lhs = a(u, sup_formula(f, cf, pf.members[u][i], u));
      const std::size_t rhs = sup_formula(g, cg, pg.members[u][img(u, i)], u);
      if (lhs != rhs)
        return CheckReport::fail(form, "sup square does not commute",
                                 {{"open", X.name(u)}, {"subsheaf", describe(f.F(), pf.members[u][i])}});
    }
  return std::nullopt;
}

}  // namespace detail

/// The sup square over ℙF, per-open joins with left-adjoint squares, and the
/// existence of a right adjoint.
inline CheckReport verify_sup_preserving(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a,
                                         const Budget& budget = {}) {
  check_shapes(f, g, a);
  const auto cf = complete_structure(f);
  const auto cg = complete_structure(g);
  const auto pf = power_sheaf(f.sheaf, budget);
  const auto pg = power_sheaf(g.sheaf, budget);
  std::vector<CheckReport> forms;
  {
    auto bad = detail::sup_square_violation(f, g, a, cf, cg, pf, pg, "square");
    forms.push_back(bad ? *bad : CheckReport::pass("square"));
  }
  {
    auto bad = detail::per_open_bound_violation(f, a, cf, cg, true, "per-open");
    if (!bad) bad = detail::left_square_violation(f, a, cf, cg, "per-open");
    forms.push_back(bad ? *bad : CheckReport::pass("per-open"));
  }
  {
    CheckReport r = CheckReport::pass("right-adjoint");
    auto b = find_adjoint(f, g, a, true);
    if (!b) r = CheckReport::fail("right-adjoint", "no right adjoint");
    else if (auto gal = verify_galois(f, g, a, *b); !gal.passed)
      r = CheckReport::fail("right-adjoint", "candidate right adjoint fails the adjunction", gal.witness);
    forms.push_back(std::move(r));
  }
  return with_forms("sup_preserving", std::move(forms));
}

/// For α ⊣ β: α carries every existing sup of a subsheaf of F to the sup of
/// the image, and β every existing inf of a subsheaf of G to the inf of its image.
inline CheckReport check_adjoint_bounds(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a,
                                        const SheafMorphism& b, const Budget& budget = {}) {
  auto side = [&](const PoSheaf& src, const PoSheaf& dst, const SheafMorphism& m, bool sups) -> std::optional<CheckReport> {
    const auto& S = src.F();
    for (const auto& s : enumerate_subsheaves(S, S.frame->top(), budget)) {
      const auto bs = bounds(src, s);
      const auto& e = sups ? bs.sup : bs.inf;
      if (!e) continue;
      const auto bi = bounds(dst, generate_subsheaf(dst.F(), image_of(m, s)));
      const auto& ei = sups ? bi.sup : bi.inf;
      if (!ei || *ei != m(*e))
        return CheckReport::fail("adjoint_bounds", sups ? "left adjoint loses a sup" : "right adjoint loses an inf",
                                 {{"subsheaf", describe(S, s)}});
    }
    return std::nullopt;
  };
  if (auto bad = side(f, g, a, true)) return *bad;
  if (auto bad = side(g, f, b, false)) return *bad;
  return CheckReport::pass("adjoint_bounds");
}

enum class FiniteMode { Sup, Inf, Both };

inline SheafMorphism diagonal(const PoSheaf& f, const PoSheaf& ff) {
  SheafMorphism d{f.sheaf, ff.sheaf, {}};
  for (std::size_t u = 0; u < f.F().opens(); ++u) {
    const std::size_t n = f.F().size(u);
    d.map.emplace_back(n);
    for (std::size_t x = 0; x < n; ++x) d.map[u][x] = x * n + x;
  }
  return d;
}

/// Adjoints of F → 1 and of the diagonal, against per-open semilattices with
/// restrictions preserving the finite joins (meets).
inline CheckReport check_finite_completeness(const PoSheaf& f, FiniteMode mode = FiniteMode::Both) {
  const auto& F = f.F();
  const auto& X = f.X();
  const PoSheaf one = discrete(share(terminal(f.sheaf->frame)));
  const PoSheaf ff = product(f, f);
  const auto bang = to_terminal(f.sheaf, one.sheaf);
  const auto diag = diagonal(f, ff);
  std::vector<bool> sides;
  if (mode != FiniteMode::Inf) sides.push_back(true);
  if (mode != FiniteMode::Sup) sides.push_back(false);
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("adjoint");
    for (bool joins : sides) {
      if (!find_adjoint(f, one, bang, !joins)) {
        r = CheckReport::fail("adjoint", joins ? "F → 1 has no left adjoint" : "F → 1 has no right adjoint");
        break;
      }
      if (!find_adjoint(f, ff, diag, !joins)) {
        r = CheckReport::fail("adjoint", joins ? "diagonal has no left adjoint" : "diagonal has no right adjoint");
        break;
      }
    }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (bool joins : sides) {
      for (std::size_t u = 0; u < F.opens() && r.passed; ++u) {
        const auto& o = f.order[u];
        if (!(joins ? o.bottom() : o.top())) {
          r = CheckReport::fail("per-open", joins ? "no bottom" : "no top", {{"open", X.name(u)}});
          break;
        }
        for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
          for (std::size_t y = 0; y < F.size(u); ++y)
            if (!(joins ? o.join(x, y) : o.meet(x, y))) {
              r = CheckReport::fail("per-open", joins ? "binary join missing" : "binary meet missing",
                                    {{"open", X.name(u)}, {"pair", detail::names_of(F, u, {x, y})}});
              break;
            }
      }
      for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
        for (std::size_t v = 0; v < F.opens() && r.passed; ++v) {
          if (!X.lt(v, u)) continue;
          const auto& ou = f.order[u];
          const auto& ov = f.order[v];
          auto res = [&](std::size_t x) { return F.restrict(u, x, v); };
          if (res(*(joins ? ou.bottom() : ou.top())) != *(joins ? ov.bottom() : ov.top())) {
            r = CheckReport::fail("per-open", joins ? "restriction loses the bottom" : "restriction loses the top",
                                  {{"from", X.name(u)}, {"to", X.name(v)}});
            break;
          }
          for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
            for (std::size_t y = 0; y < F.size(u); ++y) {
              const auto xy = joins ? *ou.join(x, y) : *ou.meet(x, y);
              const auto rxy = joins ? *ov.join(res(x), res(y)) : *ov.meet(res(x), res(y));
              if (res(xy) != rxy) {
                r = CheckReport::fail("per-open", joins ? "restriction breaks a join" : "restriction breaks a meet",
                                      {{"from", X.name(u)}, {"to", X.name(v)}, {"pair", detail::names_of(F, u, {x, y})}});
                break;
              }
            }
        }
      if (!r.passed) break;
    }
    forms.push_back(std::move(r));
  }
  return with_forms("finite_complete", std::move(forms));
}

/// μ_u(x, S): the subsheaf of F^u generated by {x|v ∧ y : y ∈ S(v)}.
inline Subsheaf meet_morphism(const PoSheaf& f, const CompleteStructure& cs, std::size_t u, std::size_t x, const Subsheaf& s) {
  const auto& F = f.F();
  Subsheaf r = empty_subset(F);
  for (std::size_t v = 0; v < F.opens(); ++v) {
    if (!f.X().leq(v, u)) continue;
    const std::size_t xv = F.restrict(u, x, v);
    for (auto y : s.members(v)) r.in[v][cs.lattice[v].meet(xv, y)] = 1;
  }
  return generate_subsheaf(F, restriction_closure(F, r));
}

/// The frame-sheaf square sup ∘ μ = m ∘ (1 × sup) over F × ℙF, against
/// per-open Heyting algebras with x ∧ l(y) = l(x|v ∧ y).
inline CheckReport is_frame_sheaf(const PoSheaf& f, const Budget& budget = {}) {
  const auto& F = f.F();
  const auto& X = f.X();
  const auto cs = complete_structure(f);
  std::vector<CheckReport> forms;
  {
    CheckReport r = CheckReport::pass("square");
    const PoSheaf ff = product(f, f);
    const auto m = find_adjoint(f, ff, diagonal(f, ff), true);
    if (!m) {
      r = CheckReport::fail("square", "diagonal has no right adjoint");
    } else {
      const auto pf = power_sheaf(f.sheaf, budget);
      for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
        for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
          for (const auto& s : pf.members[u]) {
            const std::size_t lhs = sup_formula(f, cs, meet_morphism(f, cs, u, x, s), u);
            const std::size_t rhs = (*m)(u, x * F.size(u) + sup_formula(f, cs, s, u));
            if (lhs != rhs) {
              r = CheckReport::fail("square", "meet does not distribute over sup",
                                    {{"open", X.name(u)}, {"section", F.name(u, x)}, {"subsheaf", describe(F, s)}});
              break;
            }
          }
    }
    forms.push_back(std::move(r));
  }
  {
    CheckReport r = CheckReport::pass("per-open");
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u) {
      const auto& l = cs.lattice[u];
      for (std::size_t a = 0; a < F.size(u) && r.passed; ++a)
        for (std::size_t b = 0; b < F.size(u) && r.passed; ++b)
          for (std::size_t c = 0; c < F.size(u); ++c)
            if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) {
              r = CheckReport::fail("per-open", "not a Heyting algebra",
                                    {{"open", X.name(u)}, {"triple", detail::names_of(F, u, {a, b, c})}});
              break;
            }
    }
    for (std::size_t u = 0; u < F.opens() && r.passed; ++u)
      for (std::size_t v = 0; v < F.opens() && r.passed; ++v) {
        if (!X.lt(v, u)) continue;
        for (std::size_t x = 0; x < F.size(u) && r.passed; ++x)
          for (std::size_t y = 0; y < F.size(v); ++y)
            if (cs.lattice[u].meet(x, cs.left(u, v, y)) != cs.left(u, v, cs.lattice[v].meet(F.restrict(u, x, v), y))) {
              r = CheckReport::fail("per-open", "x ∧ l(y) ≠ l(x|v ∧ y)",
                                    {{"from", X.name(v)}, {"to", X.name(u)}, {"x", F.name(u, x)}, {"y", F.name(v, y)}});
              break;
            }
      }
    forms.push_back(std::move(r));
  }
  return with_forms("frame_sheaf", std::move(forms));
}

/// F(u) with its order as a finite frame, names taken from the carrier.
inline FiniteFrame section_frame(const PoSheaf& f, std::size_t u) { return FiniteFrame::from_poset(f.F().carriers[u], f.order[u]); }

/// The sup, binary-meet and top squares, against per-open frame
/// homomorphisms with commuting left-adjoint squares.
inline CheckReport verify_frame_morphism(const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a,
                                         const Budget& budget = {}) {
  check_shapes(f, g, a);
  const auto& F = f.F();
  const auto& X = f.X();
  const auto cf = complete_structure(f);
  const auto cg = complete_structure(g);
  std::vector<CheckReport> forms;
  {
    const auto pf = power_sheaf(f.sheaf, budget);
    const auto pg = power_sheaf(g.sheaf, budget);
    auto bad = detail::sup_square_violation(f, g, a, cf, cg, pf, pg, "squares");
    if (!bad) {
      const PoSheaf ff = product(f, f), gg = product(g, g);
      const auto mf = find_adjoint(f, ff, diagonal(f, ff), true);
      const auto mg = find_adjoint(g, gg, diagonal(g, gg), true);
      if (!mf || !mg) throw Error(ErrorKind::NotFrameSheaf, "diagonal lacks a right adjoint");
      for (std::size_t u = 0; u < F.opens() && !bad; ++u) {
        const std::size_t n = F.size(u), m = g.F().size(u);
        for (std::size_t x = 0; x < n && !bad; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (a(u, (*mf)(u, x * n + y)) != (*mg)(u, a(u, x) * m + a(u, y))) {
              bad = CheckReport::fail("squares", "meet square does not commute",
                                      {{"open", X.name(u)}, {"pair", detail::names_of(F, u, {x, y})}});
              break;
            }
      }
      for (std::size_t u = 0; u < F.opens() && !bad; ++u)
        if (a(u, cf.lattice[u].top) != cg.lattice[u].top)
          bad = CheckReport::fail("squares", "top square does not commute", {{"open", X.name(u)}});
    }
    forms.push_back(bad ? *bad : CheckReport::pass("squares"));
  }
  {
    std::optional<CheckReport> bad;
    for (std::size_t u = 0; u < F.opens() && !bad; ++u) {
      FrameHom h{share(section_frame(f, u)), share(section_frame(g, u)), a.map[u]};
      auto r = verify_frame_hom(h);
      if (!r.passed) {
        Json w = r.witness;
        w["open"] = X.name(u);
        bad = CheckReport::fail("per-open", r.violation, w);
      }
    }
    if (!bad) bad = detail::left_square_violation(f, a, cf, cg, "per-open");
    forms.push_back(bad ? *bad : CheckReport::pass("per-open"));
  }
  return with_forms("frame_morphism", std::move(forms));
}

/// Š: S extended by empty sets above v. Members of ℙF(v) already vanish
/// outside ↓v, so the subset is unchanged.
inline Subsheaf power_left_extension(const PowerSheaf&, const Subsheaf& s) { return s; }

/// Ŝ: the subsheaf of F^u generated by S̄(w) = {x ∈ F(w) : x|w∧v ∈ S(w∧v)}.
inline Subsheaf power_right_extension(const PowerSheaf& p, std::size_t u, std::size_t v, const Subsheaf& s) {
  const auto& F = *p.base;
  const auto& X = *F.frame;
  Subsheaf bar = empty_subset(F);
  for (std::size_t w = 0; w < X.size(); ++w) {
    if (!X.leq(w, u)) continue;
    const std::size_t wv = X.meet(w, v);
    for (std::size_t x = 0; x < F.size(w); ++x)
      if (s.contains(wv, F.restrict(w, x, wv))) bar.in[w][x] = 1;
  }
  return generate_subsheaf(F, bar);
}

/// Compares the computed adjoints of ℙF's restrictions with Š and Ŝ.
inline CheckReport check_power_adjoints(const PowerSheaf& p) {
  const auto cs = complete_structure(p.posheaf);
  const auto& X = *p.base->frame;
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t v = 0; v < X.size(); ++v) {
      if (!X.leq(v, u)) continue;
      for (std::size_t i = 0; i < p.members[v].size(); ++i) {
        const auto& s = p.members[v][i];
        Json w = {{"from", X.name(v)}, {"to", X.name(u)}, {"subsheaf", describe(*p.base, s)}};
        if (cs.left(u, v, i) != p.index_of(u, power_left_extension(p, s)))
          return CheckReport::fail("power_adjoints", "left adjoint differs from the extension by empty sets", w);
        if (cs.right(u, v, i) != p.index_of(u, power_right_extension(p, u, v, s)))
          return CheckReport::fail("power_adjoints", "right adjoint differs from the generated pullback", w);
      }
    }
  return CheckReport::pass("power_adjoints");
}

}  // namespace posh
