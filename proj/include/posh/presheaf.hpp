#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/report.hpp"

namespace posh {

/// A presheaf of finite sets on a finite frame. Sections of F(u) are the
/// indices 0..|F(u)|-1 with display names in `carriers[u]`; `res[u][v]` is
/// the restriction table F(u) → F(v) for v ≤ u and empty otherwise.
/// Whether it is a sheaf is a verified property, not a type distinction.
struct Presheaf {
  FramePtr frame;
  std::vector<std::vector<std::string>> carriers;
  std::vector<std::vector<std::vector<std::size_t>>> res;

  [[nodiscard]] std::size_t opens() const { return frame->size(); }
  [[nodiscard]] std::size_t size(std::size_t u) const { return carriers[u].size(); }
  [[nodiscard]] std::size_t restrict(std::size_t u, std::size_t x, std::size_t v) const { return res[u][v][x]; }
  [[nodiscard]] const std::string& name(std::size_t u, std::size_t x) const { return carriers[u][x]; }

  [[nodiscard]] std::optional<std::size_t> find(std::size_t u, const std::string& n) const {
    for (std::size_t i = 0; i < carriers[u].size(); ++i)
      if (carriers[u][i] == n) return i;
    return std::nullopt;
  }
  [[nodiscard]] std::size_t index(std::size_t u, const std::string& n) const {
    auto i = find(u, n);
    if (!i) {
      throw Error(ErrorKind::SectionNotInCarrier,
                  "'" + n + "' is not a section over '" + frame->name(u) + "'");
    }
    return *i;
  }
  [[nodiscard]] std::size_t total_sections() const {
    std::size_t t = 0;
    for (const auto& c : carriers) t += c.size();
    return t;
  }
};

using Sheaf = Presheaf;
using PresheafPtr = std::shared_ptr<const Presheaf>;

inline PresheafPtr share(Presheaf p) { return std::make_shared<const Presheaf>(std::move(p)); }

/// Builds the restriction tables from a function (u, x, v) -> section of F(v).
template <typename Restrict>
Presheaf make_presheaf(FramePtr frame, std::vector<std::vector<std::string>> carriers, Restrict&& restrict) {
  Presheaf p{std::move(frame), std::move(carriers), {}};
  const std::size_t n = p.opens();
  p.res.assign(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (p.frame->leq(v, u)) {
        auto& t = p.res[u][v];
        t.resize(p.size(u));
        for (std::size_t x = 0; x < p.size(u); ++x) t[x] = restrict(u, x, v);
      }
  return p;
}

inline void check_tables(const Presheaf& p) {
  if (!p.frame) throw Error(ErrorKind::MalformedInput, "presheaf has no frame");
  const std::size_t n = p.opens();
  if (p.carriers.size() != n || p.res.size() != n) {
    throw Error(ErrorKind::MissingRestriction, "carrier or restriction table missing for some open");
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (p.res[u].size() != n) throw Error(ErrorKind::MissingRestriction, "restriction row missing");
    for (std::size_t v = 0; v < n; ++v) {
      if (!p.frame->leq(v, u)) continue;
      const auto& t = p.res[u][v];
      if (t.size() != p.size(u)) {
        throw Error(ErrorKind::MissingRestriction,
                    "restriction " + p.frame->name(u) + "->" + p.frame->name(v) + " is not total",
                    {{"from", p.frame->name(u)}, {"to", p.frame->name(v)}});
      }
      for (auto y : t)
        if (y >= p.size(v)) {
          throw Error(ErrorKind::MissingRestriction,
                      "restriction " + p.frame->name(u) + "->" + p.frame->name(v) + " leaves F(v)");
        }
    }
  }
}

/// Identity and composition laws of the restriction tables.
inline CheckReport verify_presheaf(const Presheaf& p) {
  check_tables(p);
  const auto& X = *p.frame;
  const std::string name = "presheaf";
  for (std::size_t u = 0; u < p.opens(); ++u)
    for (std::size_t x = 0; x < p.size(u); ++x)
      if (p.restrict(u, x, u) != x)
        return CheckReport::fail(name, "identity", {{"open", X.name(u)}, {"section", p.name(u, x)}});
  for (std::size_t u = 0; u < p.opens(); ++u)
    for (std::size_t v = 0; v < p.opens(); ++v) {
      if (!X.leq(v, u)) continue;
      for (std::size_t w = 0; w < p.opens(); ++w) {
        if (!X.leq(w, v)) continue;
        for (std::size_t x = 0; x < p.size(u); ++x)
          if (p.restrict(v, p.restrict(u, x, v), w) != p.restrict(u, x, w))
            return CheckReport::fail(name, "composition",
                                     {{"u", X.name(u)}, {"v", X.name(v)}, {"w", X.name(w)},
                                      {"section", p.name(u, x)}});
      }
    }
  return CheckReport::pass(name);
}

/// Per-open membership flags for a subset of the sections of a presheaf.
struct Subsheaf {
  std::vector<std::vector<char>> in;

  [[nodiscard]] bool contains(std::size_t u, std::size_t x) const { return in[u][x] != 0; }
  [[nodiscard]] bool empty_at(std::size_t u) const {
    return std::none_of(in[u].begin(), in[u].end(), [](char c) { return c != 0; });
  }
  [[nodiscard]] std::vector<std::size_t> members(std::size_t u) const {
    std::vector<std::size_t> r;
    for (std::size_t x = 0; x < in[u].size(); ++x)
      if (in[u][x]) r.push_back(x);
    return r;
  }
  [[nodiscard]] bool subset_of(const Subsheaf& o) const {
    for (std::size_t u = 0; u < in.size(); ++u)
      for (std::size_t x = 0; x < in[u].size(); ++x)
        if (in[u][x] && !o.in[u][x]) return false;
    return true;
  }
  friend bool operator==(const Subsheaf&, const Subsheaf&) = default;
  friend auto operator<=>(const Subsheaf&, const Subsheaf&) = default;
};

inline Subsheaf empty_subset(const Presheaf& p) {
  Subsheaf s;
  for (std::size_t u = 0; u < p.opens(); ++u) s.in.emplace_back(p.size(u), 0);
  return s;
}

inline Subsheaf full_subset(const Presheaf& p) {
  Subsheaf s;
  for (std::size_t u = 0; u < p.opens(); ++u) s.in.emplace_back(p.size(u), 1);
  return s;
}

/// S^v: the part of S over opens below v.
inline Subsheaf restrict_support(const Presheaf& p, const Subsheaf& s, std::size_t v) {
  Subsheaf r = s;
  for (std::size_t w = 0; w < p.opens(); ++w)
    if (!p.frame->leq(w, v)) std::fill(r.in[w].begin(), r.in[w].end(), 0);
  return r;
}

inline Subsheaf unite(const Subsheaf& a, const Subsheaf& b) {
  Subsheaf r = a;
  for (std::size_t u = 0; u < r.in.size(); ++u)
    for (std::size_t x = 0; x < r.in[u].size(); ++x) r.in[u][x] = a.in[u][x] || b.in[u][x];
  return r;
}

inline Subsheaf intersect(const Subsheaf& a, const Subsheaf& b) {
  Subsheaf r = a;
  for (std::size_t u = 0; u < r.in.size(); ++u)
    for (std::size_t x = 0; x < r.in[u].size(); ++x) r.in[u][x] = a.in[u][x] && b.in[u][x];
  return r;
}

/// Canonical text form, e.g. "{0:*;a:x,y}". Opens with no members are omitted.
inline std::string describe(const Presheaf& p, const Subsheaf& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t u = 0; u < p.opens(); ++u) {
    if (s.empty_at(u)) continue;
    if (!first) out += ";";
    first = false;
    out += p.frame->name(u) + ":";
    bool f2 = true;
    for (std::size_t x = 0; x < p.size(u); ++x) {
      if (!s.in[u][x]) continue;
      if (!f2) out += ",";
      f2 = false;
      out += p.name(u, x);
    }
  }
  return out + "}";
}

inline Json subset_json(const Presheaf& p, const Subsheaf& s) {
  Json j = Json::object();
  for (std::size_t u = 0; u < p.opens(); ++u) {
    Json arr = Json::array();
    for (std::size_t x = 0; x < p.size(u); ++x)
      if (s.in[u][x]) arr.push_back(p.name(u, x));
    j[p.frame->name(u)] = std::move(arr);
  }
  return j;
}

/// First (open, section) whose restriction leaves the subset, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> restriction_leak(const Presheaf& p, const Subsheaf& s) {
  for (std::size_t u = 0; u < p.opens(); ++u)
    for (std::size_t x = 0; x < p.size(u); ++x) {
      if (!s.in[u][x]) continue;
      for (std::size_t v = 0; v < p.opens(); ++v)
        if (p.frame->leq(v, u) && !s.in[v][p.restrict(u, x, v)]) return std::pair{u, x};
    }
  return std::nullopt;
}

/// Visits every compatible family over `cover` drawn from `pool` (all
/// sections when null). Members are assigned tallest first so pairwise
/// agreement at meets prunes early; the callback sees the family in cover
/// order and returns false to stop.
template <typename Visit>
void for_each_compatible_family(const Presheaf& p, std::span<const std::size_t> cover, const Subsheaf* pool,
                                Visit&& visit) {
  const auto& X = *p.frame;
  const std::size_t k = cover.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> height(k);
  for (std::size_t i = 0; i < k; ++i) height[i] = X.below(cover[i]).size();
  std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return height[a] > height[b]; });
  std::vector<std::size_t> family(k, kNone);
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == k) {
      if (!visit(std::as_const(family))) stop = true;
      return;
    }
    const std::size_t i = perm[depth];
    const std::size_t ui = cover[i];
    for (std::size_t x = 0; x < p.size(ui); ++x) {
      if (pool && !pool->in[ui][x]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t j = perm[d];
        const std::size_t m = X.meet(ui, cover[j]);
        ok = p.restrict(ui, x, m) == p.restrict(cover[j], family[j], m);
      }
      if (!ok) continue;
      family[i] = x;
      self(self, depth + 1);
      if (stop) return;
    }
    family[i] = kNone;
  };
  rec(rec, 0);
}

/// Sections of F(u) whose restrictions to the cover are the given family.
inline std::vector<std::size_t> amalgamations(const Presheaf& p, std::size_t u, std::span<const std::size_t> cover,
                                              std::span<const std::size_t> family) {
  std::vector<std::size_t> r;
  for (std::size_t s = 0; s < p.size(u); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < cover.size() && ok; ++i) ok = p.restrict(u, s, cover[i]) == family[i];
    if (ok) r.push_back(s);
  }
  return r;
}

struct SheafViolation {
  std::size_t open = 0;
  std::vector<std::size_t> cover;
  std::vector<std::size_t> family;
  std::size_t amalgamation_count = 0;
};

/// Outcome of the exhaustive gluing check over every (open, cover) pair.
struct SheafCertificate {
  bool passed = true;
  std::optional<SheafViolation> violation;
  std::size_t covers_checked = 0;
  std::size_t families_checked = 0;

  [[nodiscard]] CheckReport to_report(const Presheaf& p) const {
    CheckReport r = CheckReport::pass("sheaf");
    if (violation) {
      const auto& X = *p.frame;
      Json cover = Json::array(), family = Json::array();
      for (std::size_t i = 0; i < violation->cover.size(); ++i) {
        cover.push_back(X.name(violation->cover[i]));
        family.push_back(p.name(violation->cover[i], violation->family[i]));
      }
      r = CheckReport::fail("sheaf", violation->amalgamation_count == 0 ? "no amalgamation" : "several amalgamations",
                            {{"open", X.name(violation->open)},
                             {"cover", cover},
                             {"family", family},
                             {"amalgamations", violation->amalgamation_count}});
    }
    r.details = {{"covers", covers_checked}, {"families", families_checked}};
    return r;
  }
};

/// Every compatible family over every cover must have exactly one amalgamation.
inline SheafCertificate verify_sheaf(const Presheaf& p) {
  SheafCertificate cert;
  const auto& X = *p.frame;
  for (std::size_t u = 0; u < p.opens() && cert.passed; ++u) {
    for (const auto& cover : X.covers(u)) {
      ++cert.covers_checked;
      for_each_compatible_family(p, cover, nullptr, [&](const std::vector<std::size_t>& fam) {
        ++cert.families_checked;
        const auto am = amalgamations(p, u, cover, fam);
        if (am.size() != 1) {
          cert.passed = false;
          cert.violation = SheafViolation{u, cover, fam, am.size()};
          return false;
        }
        return true;
      });
      if (!cert.passed) break;
    }
  }
  return cert;
}

inline bool is_sheaf(const Presheaf& p) { return verify_presheaf(p).passed && verify_sheaf(p).passed; }

/// Down-closes B under restriction.
inline Subsheaf restriction_closure(const Presheaf& p, Subsheaf b) {
  for (auto u : [&] { auto o = p.frame->bottom_up(); std::reverse(o.begin(), o.end()); return o; }()) {
    for (std::size_t x = 0; x < p.size(u); ++x) {
      if (!b.in[u][x]) continue;
      for (std::size_t v = 0; v < p.opens(); ++v)
        if (p.frame->leq(v, u)) b.in[v][p.restrict(u, x, v)] = 1;
    }
  }
  return b;
}

/// Smallest subsheaf of F containing the sub-presheaf B: amalgamations of
/// compatible families in B are added until nothing changes.
inline Subsheaf generate_subsheaf(const Presheaf& f, Subsheaf b) {
  if (b.in.size() != f.opens()) throw Error(ErrorKind::DomainMismatch, "subset does not match the presheaf");
  if (auto leak = restriction_leak(f, b)) {
    throw Error(ErrorKind::NotRestrictionClosed, "subset is not closed under restriction",
                {{"open", f.frame->name(leak->first)}, {"section", f.name(leak->first, leak->second)}});
  }
  const auto& X = *f.frame;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto u : X.bottom_up()) {
      for (const auto& cover : X.covers(u)) {
        if (std::find(cover.begin(), cover.end(), u) != cover.end()) continue;
        for_each_compatible_family(f, cover, &b, [&](const std::vector<std::size_t>& fam) {
          for (auto s : amalgamations(f, u, cover, fam)) {
            if (!b.in[u][s]) {
              b.in[u][s] = 1;
              changed = true;
            }
          }
          return true;
        });
      }
    }
  }
  return b;
}

/// True when S is restriction-closed and closed under amalgamation.
inline bool is_subsheaf(const Presheaf& f, const Subsheaf& s) {
  if (restriction_leak(f, s)) return false;
  return generate_subsheaf(f, s) == s;
}

/// All subsheaves of F supported below `support`, optionally filtered per
/// open (the filter sees the open and the chosen membership there). Opens
/// are decided bottom-up: sections forced by amalgamation over proper
/// covers are always in, the remaining restriction-compatible sections are
/// free choices.
inline std::vector<Subsheaf> enumerate_subsheaves(
    const Presheaf& f, std::size_t support, const Budget& budget = {},
    const std::function<bool(std::size_t, const std::vector<char>&)>& level_filter = {},
    std::size_t* shared_used = nullptr) {
  const auto& X = *f.frame;
  std::vector<std::size_t> order;
  for (auto u : X.bottom_up())
    if (X.leq(u, support)) order.push_back(u);
  std::vector<Subsheaf> out;
  std::size_t local_used = 0;
  std::size_t& used = shared_used ? *shared_used : local_used;
  Subsheaf cur = empty_subset(f);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      charge(used, budget.subsheaves, "subsheaf enumeration");
      out.push_back(cur);
      return;
    }
    const std::size_t w = order[k];
    std::vector<char> forced(f.size(w), 0), allowed(f.size(w), 0);
    for (std::size_t x = 0; x < f.size(w); ++x) {
      bool ok = true;
      for (std::size_t v = 0; v < f.opens() && ok; ++v)
        if (X.lt(v, w)) ok = cur.in[v][f.restrict(w, x, v)] != 0;
      allowed[x] = ok;
    }
    for (const auto& cover : X.covers(w)) {
      if (std::find(cover.begin(), cover.end(), w) != cover.end()) continue;
      for_each_compatible_family(f, cover, &cur, [&](const std::vector<std::size_t>& fam) {
        for (auto s : amalgamations(f, w, cover, fam)) forced[s] = 1;
        return true;
      });
    }
    std::vector<std::size_t> free;
    for (std::size_t x = 0; x < f.size(w); ++x) {
      if (forced[x] && !allowed[x]) return;  // cannot happen in a sheaf
      if (allowed[x] && !forced[x]) free.push_back(x);
    }
    if (free.size() > 20) throw Error(ErrorKind::ResourceLimit, "too many free sections at one open");
    const std::size_t total = std::size_t{1} << free.size();
    for (std::size_t mask = 0; mask < total; ++mask) {
      std::vector<char> choice = forced;
      for (std::size_t b = 0; b < free.size(); ++b)
        if (mask & (std::size_t{1} << b)) choice[free[b]] = 1;
      if (level_filter && !level_filter(w, choice)) continue;
      cur.in[w] = choice;
      self(self, k + 1);
    }
    cur.in[w].assign(f.size(w), 0);
  };
  rec(rec, 0);
  return out;
}

/// F^u as a presheaf on the frame ↓u; open i of the result is below(u)[i].
inline Presheaf restrict_to_frame(const Presheaf& f, std::size_t u) {
  const auto elems = f.frame->below(u);
  auto sub = share(f.frame->down(u));
  std::vector<std::vector<std::string>> carriers;
  for (auto e : elems) carriers.push_back(f.carriers[e]);
  return make_presheaf(sub, std::move(carriers), [&](std::size_t a, std::size_t x, std::size_t b) {
    return f.restrict(elems[a], x, elems[b]);
  });
}

/// A point, stored extensionally as its domain and the section over it.
struct Point {
  std::size_t dom = 0;
  std::size_t value = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline std::vector<Point> enumerate_points(const Presheaf& f) {
  std::vector<Point> pts;
  for (std::size_t u = 0; u < f.opens(); ++u)
    for (std::size_t x = 0; x < f.size(u); ++x) pts.push_back({u, x});
  return pts;
}

inline std::vector<Point> points_of(const Presheaf& f, const Subsheaf& s) {
  std::vector<Point> pts;
  for (std::size_t u = 0; u < f.opens(); ++u)
    for (std::size_t x = 0; x < f.size(u); ++x)
      if (s.in[u][x]) pts.push_back({u, x});
  return pts;
}

inline Json point_json(const Presheaf& f, const Point& p) {
  return {{"dom", f.frame->name(p.dom)}, {"value", f.name(p.dom, p.value)}};
}

/// The join of all opens below the sections' common domain on which they agree.
inline std::size_t epsilon(const Presheaf& p, std::span<const Point> sections) {
  if (sections.empty()) throw Error(ErrorKind::DomainMismatch, "epsilon needs at least one section");
  const auto& X = *p.frame;
  std::size_t m = X.top();
  for (const auto& s : sections) {
    if (s.dom >= p.opens() || s.value >= p.size(s.dom)) {
      throw Error(ErrorKind::SectionNotInCarrier, "section outside the carrier");
    }
    m = X.meet(m, s.dom);
  }
  std::size_t r = X.bottom();
  for (std::size_t v = 0; v < p.opens(); ++v) {
    if (!X.leq(v, m)) continue;
    const std::size_t first = p.restrict(sections[0].dom, sections[0].value, v);
    bool agree = true;
    for (const auto& s : sections)
      if (p.restrict(s.dom, s.value, v) != first) {
        agree = false;
        break;
      }
    if (agree) r = X.join(r, v);
  }
  return r;
}

inline std::size_t epsilon(const Presheaf& p, Point a, Point b) {
  const Point xs[] = {a, b};
  return epsilon(p, xs);
}

/// Singleton carriers over the opens below u, empty elsewhere.
inline Presheaf subterminal(const FramePtr& x, std::size_t u) {
  std::vector<std::vector<std::string>> carriers(x->size());
  for (std::size_t v = 0; v < x->size(); ++v)
    if (x->leq(v, u)) carriers[v] = {"*"};
  return make_presheaf(x, std::move(carriers), [](auto, auto, auto) { return std::size_t{0}; });
}

inline Presheaf terminal(const FramePtr& x) { return subterminal(x, x->top()); }

/// Per-open maps F(u) → G(u); naturality is checked by verify_morphism.
struct SheafMorphism {
  PresheafPtr source;
  PresheafPtr target;
  std::vector<std::vector<std::size_t>> map;

  [[nodiscard]] std::size_t operator()(std::size_t u, std::size_t x) const { return map[u][x]; }
  [[nodiscard]] Point operator()(Point p) const { return {p.dom, map[p.dom][p.value]}; }
};

inline void check_morphism_tables(const SheafMorphism& a) {
  if (!a.source || !a.target || a.source->frame.get() == nullptr ||
      a.source->opens() != a.target->opens() || a.map.size() != a.source->opens()) {
    throw Error(ErrorKind::DomainMismatch, "morphism does not match its source and target");
  }
  for (std::size_t u = 0; u < a.map.size(); ++u) {
    if (a.map[u].size() != a.source->size(u)) throw Error(ErrorKind::DomainMismatch, "morphism map not total");
    for (auto y : a.map[u])
      if (y >= a.target->size(u)) throw Error(ErrorKind::DomainMismatch, "morphism leaves the target");
  }
}

inline CheckReport verify_morphism(const SheafMorphism& a) {
  check_morphism_tables(a);
  const auto& F = *a.source;
  const auto& G = *a.target;
  const auto& X = *F.frame;
  for (std::size_t u = 0; u < F.opens(); ++u)
    for (std::size_t v = 0; v < F.opens(); ++v) {
      if (!X.leq(v, u)) continue;
      for (std::size_t x = 0; x < F.size(u); ++x)
        if (a(v, F.restrict(u, x, v)) != G.restrict(u, a(u, x), v))
          return CheckReport::fail("morphism", "naturality",
                                   {{"from", X.name(u)}, {"to", X.name(v)}, {"section", F.name(u, x)}});
    }
  return CheckReport::pass("morphism");
}

inline SheafMorphism identity_morphism(const PresheafPtr& f) {
  SheafMorphism m{f, f, {}};
  for (std::size_t u = 0; u < f->opens(); ++u) {
    m.map.emplace_back(f->size(u));
    std::iota(m.map.back().begin(), m.map.back().end(), 0);
  }
  return m;
}

/// b ∘ a
inline SheafMorphism compose(const SheafMorphism& b, const SheafMorphism& a) {
  SheafMorphism m{a.source, b.target, a.map};
  for (std::size_t u = 0; u < m.map.size(); ++u)
    for (auto& y : m.map[u]) y = b.map[u][y];
  return m;
}

/// The unique morphism into a presheaf with singleton carriers.
inline SheafMorphism to_terminal(const PresheafPtr& f, const PresheafPtr& one) {
  SheafMorphism m{f, one, {}};
  for (std::size_t u = 0; u < f->opens(); ++u) m.map.emplace_back(f->size(u), 0);
  return m;
}

/// F × G with section (i, j) of F(u) × G(u) at index i * |G(u)| + j.
inline Presheaf product(const Presheaf& f, const Presheaf& g) {
  std::vector<std::vector<std::string>> carriers(f.opens());
  for (std::size_t u = 0; u < f.opens(); ++u)
    for (std::size_t i = 0; i < f.size(u); ++i)
      for (std::size_t j = 0; j < g.size(u); ++j) carriers[u].push_back("(" + f.name(u, i) + "," + g.name(u, j) + ")");
  return make_presheaf(f.frame, std::move(carriers), [&](std::size_t u, std::size_t x, std::size_t v) {
    const std::size_t gu = g.size(u);
    const std::size_t i = x / gu, j = x % gu;
    return f.restrict(u, i, v) * g.size(v) + g.restrict(u, j, v);
  });
}

/// The image of a subset under a morphism, open by open (a sub-presheaf of
/// the target when S is restriction-closed).
inline Subsheaf image_of(const SheafMorphism& a, const Subsheaf& s) {
  Subsheaf r = empty_subset(*a.target);
  for (std::size_t u = 0; u < a.map.size(); ++u)
    for (std::size_t x = 0; x < a.map[u].size(); ++x)
      if (s.in[u][x]) r.in[u][a.map[u][x]] = 1;
  return r;
}

}  // namespace posh
