#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "posh/error.hpp"
#include "posh/frame.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/report.hpp"
#include "posh/sheaf_locale.hpp"

namespace posh::io {

inline Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedInput, "'" + path.string() + "' is not JSON: " + e.what());
  }
}

inline void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorKind::MalformedInput, std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t lookup(const std::vector<std::string>& names, const std::string& n, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n) return i;
  throw Error(ErrorKind::SectionNotInCarrier, "'" + n + "' is not in " + where);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// frames

/// Elements in index order and the covering pairs.
inline Json frame_to_json(const FiniteFrame& f) {
  Json j;
  j["elements"] = f.names();
  Json leq = Json::array();
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (!f.lt(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < f.size() && cover; ++c) cover = !(f.lt(a, c) && f.lt(c, b));
      if (cover) leq.push_back({f.name(a), f.name(b)});
    }
  j["leq"] = std::move(leq);
  return j;
}

struct FrameDoc {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> leq;
};

inline FrameDoc frame_doc(const Json& j) {
  FrameDoc d;
  const auto& el = detail::field(j, "elements");
  if (!el.is_array()) throw Error(ErrorKind::MalformedInput, "'elements' must be an array");
  for (const auto& e : el) d.names.push_back(detail::str(e, "element"));
  if (j.contains("leq")) {
    for (const auto& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::MalformedInput, "'leq' entries are [lo, hi] pairs");
      d.leq.emplace_back(detail::str(p[0], "leq entry"), detail::str(p[1], "leq entry"));
    }
  }
  return d;
}

/// A frame document, given inline or as a path relative to `base`.
inline Json resolve(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_json(base / j.get<std::string>());
  return j;
}

inline FramePtr frame_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto d = frame_doc(resolve(j, base));
  return share(FiniteFrame::build(std::move(d.names), std::span<const std::pair<std::string, std::string>>(d.leq)));
}

// ---------------------------------------------------------------------------
// presheaves, orders, morphisms

inline Json presheaf_to_json(const Presheaf& p, bool with_frame = true) {
  const auto& X = *p.frame;
  Json j;
  if (with_frame) j["frame"] = frame_to_json(X);
  Json car = Json::object();
  for (std::size_t u = 0; u < p.opens(); ++u) car[X.name(u)] = p.carriers[u];
  j["carriers"] = std::move(car);
  Json res = Json::object();
  for (std::size_t u = 0; u < p.opens(); ++u)
    for (std::size_t v = 0; v < p.opens(); ++v) {
      if (!X.lt(v, u) || p.size(u) == 0) continue;
      Json t = Json::object();
      for (std::size_t x = 0; x < p.size(u); ++x) t[p.name(u, x)] = p.name(v, p.restrict(u, x, v));
      res[X.name(u) + "->" + X.name(v)] = std::move(t);
    }
  j["res"] = std::move(res);
  return j;
}

/// Restrictions left out of the document are filled when forced: the
/// identity, maps into a singleton or out of the empty set, and composites
/// through given tables. Anything else is MissingRestriction.
inline PresheafPtr presheaf_from_json(const Json& j, const std::filesystem::path& base = {},
                                      FramePtr frame = nullptr) {
  if (!frame) frame = frame_from_json(detail::field(j, "frame"), base);
  const auto& X = *frame;
  const std::size_t n = X.size();
  Presheaf p{frame, std::vector<std::vector<std::string>>(n), {}};
  const auto& car = detail::field(j, "carriers");
  if (!car.is_object()) throw Error(ErrorKind::MalformedInput, "'carriers' must be an object");
  for (const auto& [k, v] : car.items()) {
    const auto u = X.find(k);
    if (!u) throw Error(ErrorKind::MalformedInput, "carrier for unknown open '" + k + "'");
    for (const auto& x : v) {
      auto name = detail::str(x, "section");
      if (std::find(p.carriers[*u].begin(), p.carriers[*u].end(), name) != p.carriers[*u].end())
        throw Error(ErrorKind::MalformedInput, "section '" + name + "' repeated over '" + k + "'");
      p.carriers[*u].push_back(std::move(name));
    }
  }
  std::vector<std::vector<std::optional<std::vector<std::size_t>>>> given(n, std::vector<std::optional<std::vector<std::size_t>>>(n));
  if (j.contains("res")) {
    for (const auto& [k, t] : j.at("res").items()) {
      const auto arrow = k.find("->");
      if (arrow == std::string::npos) throw Error(ErrorKind::MalformedInput, "restriction key '" + k + "' is not 'u->v'");
      const auto u = X.find(k.substr(0, arrow));
      const auto v = X.find(k.substr(arrow + 2));
      if (!u || !v) throw Error(ErrorKind::MalformedInput, "restriction '" + k + "' names an unknown open");
      if (!X.leq(*v, *u)) throw Error(ErrorKind::MalformedInput, "restriction '" + k + "' goes upward");
      std::vector<std::size_t> tab(p.size(*u), kNone);
      for (const auto& [x, y] : t.items())
        tab[detail::lookup(p.carriers[*u], x, "F(" + X.name(*u) + ")")] =
            detail::lookup(p.carriers[*v], detail::str(y, "section"), "F(" + X.name(*v) + ")");
      for (std::size_t x = 0; x < tab.size(); ++x)
        if (tab[x] == kNone)
          throw Error(ErrorKind::MissingRestriction, "restriction '" + k + "' omits '" + p.carriers[*u][x] + "'",
                      {{"from", X.name(*u)}, {"to", X.name(*v)}});
      given[*u][*v] = std::move(tab);
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (given[u][v] || !X.leq(v, u)) continue;
      if (u == v) {
        std::vector<std::size_t> id(p.size(u));
        for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
        given[u][v] = std::move(id);
      } else if (p.size(u) == 0 || p.size(v) == 1) {
        given[u][v] = std::vector<std::size_t>(p.size(u), 0);
      }
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (given[u][v] || !X.leq(v, u)) continue;
        for (std::size_t w = 0; w < n; ++w) {
          if (w == u || w == v || !X.leq(v, w) || !X.leq(w, u) || !given[u][w] || !given[w][v]) continue;
          std::vector<std::size_t> t(p.size(u));
          for (std::size_t x = 0; x < t.size(); ++x) t[x] = (*given[w][v])[(*given[u][w])[x]];
          given[u][v] = std::move(t);
          changed = true;
          break;
        }
      }
  }
  p.res.assign(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      if (!X.leq(v, u)) continue;
      if (!given[u][v])
        throw Error(ErrorKind::MissingRestriction, "restriction " + X.name(u) + "->" + X.name(v) + " is missing",
                    {{"from", X.name(u)}, {"to", X.name(v)}});
      p.res[u][v] = std::move(*given[u][v]);
    }
  return share(std::move(p));
}

inline Json order_to_json(const Presheaf& p, const std::vector<Poset>& order) {
  Json o = Json::object();
  for (std::size_t u = 0; u < p.opens(); ++u) {
    Json pairs = Json::array();
    for (std::size_t x = 0; x < p.size(u); ++x)
      for (std::size_t y = 0; y < p.size(u); ++y)
        if (x != y && order[u].leq(x, y)) pairs.push_back({p.name(u, x), p.name(u, y)});
    o[p.frame->name(u)] = std::move(pairs);
  }
  return o;
}

/// Pairs as listed plus reflexivity; transitivity is left to the posheaf check.
inline std::vector<Poset> order_from_json(const Json& j, const Presheaf& p) {
  const auto& X = *p.frame;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(p.opens());
  for (const auto& [k, v] : j.items()) {
    const auto u = X.find(k);
    if (!u) throw Error(ErrorKind::MalformedInput, "order for unknown open '" + k + "'");
    for (const auto& pr : v) {
      if (!pr.is_array() || pr.size() != 2) throw Error(ErrorKind::MalformedInput, "order entries are [x, y] pairs");
      const std::string where = "F(" + k + ")";
      pairs[*u].emplace_back(detail::lookup(p.carriers[*u], detail::str(pr[0], "section"), where),
                             detail::lookup(p.carriers[*u], detail::str(pr[1], "section"), where));
    }
  }
  std::vector<Poset> out;
  for (std::size_t u = 0; u < p.opens(); ++u)
    out.push_back(Poset::from_pairs(p.size(u), std::span<const std::pair<std::size_t, std::size_t>>(pairs[u])));
  return out;
}

inline Json posheaf_to_json(const PoSheaf& f, bool with_frame = true) {
  Json j = presheaf_to_json(f.F(), with_frame);
  j["order"] = order_to_json(f.F(), f.order);
  return j;
}

inline PoSheaf posheaf_from_json(const Json& j, const std::filesystem::path& base = {}, FramePtr frame = nullptr) {
  auto p = presheaf_from_json(j, base, std::move(frame));
  if (!j.contains("order")) throw Error(ErrorKind::OrderNotProvided, "document has no 'order'");
  return PoSheaf{p, order_from_json(j.at("order"), *p)};
}

inline Json morphism_to_json(const SheafMorphism& a) {
  const auto& X = *a.source->frame;
  Json m = Json::object();
  for (std::size_t u = 0; u < a.map.size(); ++u) {
    Json t = Json::object();
    for (std::size_t x = 0; x < a.map[u].size(); ++x) t[a.source->name(u, x)] = a.target->name(u, a.map[u][x]);
    m[X.name(u)] = std::move(t);
  }
  return m;
}

inline SheafMorphism morphism_from_json(const Json& maps, const PresheafPtr& source, const PresheafPtr& target) {
  const auto& X = *source->frame;
  SheafMorphism a{source, target, std::vector<std::vector<std::size_t>>(X.size())};
  for (std::size_t u = 0; u < X.size(); ++u) a.map[u].assign(source->size(u), kNone);
  for (const auto& [k, t] : maps.items()) {
    const auto u = X.find(k);
    if (!u) throw Error(ErrorKind::MalformedInput, "map for unknown open '" + k + "'");
    for (const auto& [x, y] : t.items())
      a.map[*u][detail::lookup(source->carriers[*u], x, "F(" + k + ")")] =
          detail::lookup(target->carriers[*u], detail::str(y, "section"), "G(" + k + ")");
  }
  for (std::size_t u = 0; u < X.size(); ++u)
    for (std::size_t x = 0; x < a.map[u].size(); ++x)
      if (a.map[u][x] == kNone)
        throw Error(ErrorKind::MissingRestriction, "morphism undefined on '" + source->name(u, x) + "' over '" + X.name(u) + "'");
  return a;
}

inline Json frame_map_to_json(const FrameHom& h) {
  Json m = Json::object();
  for (std::size_t x = 0; x < h.map.size(); ++x) m[h.source->name(x)] = h.target->name(h(x));
  return m;
}

inline FrameHom frame_map_from_json(const Json& m, const FramePtr& source, const FramePtr& target) {
  FrameHom h{source, target, std::vector<std::size_t>(source->size(), kNone)};
  for (const auto& [k, v] : m.items()) {
    const auto x = source->find(k);
    const auto y = target->find(detail::str(v, "map value"));
    if (!x || !y) throw Error(ErrorKind::MalformedInput, "map entry '" + k + "' names an unknown element");
    h.map[*x] = *y;
  }
  for (std::size_t x = 0; x < h.map.size(); ++x)
    if (h.map[x] == kNone) throw Error(ErrorKind::MalformedInput, "map undefined on '" + source->name(x) + "'");
  return h;
}

/// FrameUnderX: {"source", "target", "map"}.
inline Json frame_hom_to_json(const FrameHom& h) {
  return {{"source", frame_to_json(*h.source)}, {"target", frame_to_json(*h.target)}, {"map", frame_map_to_json(h)}};
}

inline FrameHom frame_hom_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto s = frame_from_json(detail::field(j, "source"), base);
  auto t = frame_from_json(detail::field(j, "target"), base);
  return frame_map_from_json(detail::field(j, "map"), s, t);
}

/// LocaleOverX: {"X", "OY", "fstar"}; X is needed to read f*.
inline Json locale_to_json(const LocaleOverX& f) {
  return {{"X", frame_to_json(f.X())}, {"OY", frame_to_json(f.Y())}, {"fstar", frame_map_to_json(f.fstar)}};
}

inline LocaleOverX locale_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto x = frame_from_json(detail::field(j, "X"), base);
  auto y = frame_from_json(detail::field(j, "OY"), base);
  return {y, frame_map_from_json(detail::field(j, "fstar"), x, y)};
}

inline std::filesystem::path base_of(const std::filesystem::path& file) { return file.parent_path(); }

}  // namespace posh::io
