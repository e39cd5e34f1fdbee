#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "posh/frame.hpp"
#include "posh/frame_equiv.hpp"
#include "posh/posheaf.hpp"
#include "posh/presheaf.hpp"
#include "posh/sheaf_locale.hpp"

/// Hand-built instances shared by the tests, the suite and demo/.
namespace posh::fixtures {

inline const FramePtr& frame_2() {
  static const FramePtr f = share(chain({"0", "1"}));
  return f;
}

inline const FramePtr& frame_3() {
  static const FramePtr f = share(chain({"0", "a", "1"}));
  return f;
}

/// The powerset of a two-point set: 0 < a, b < 1 with a ∧ b = 0.
inline const FramePtr& frame_d() {
  static const FramePtr f = [] {
    const std::vector<std::pair<std::string, std::string>> rel{{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
    return share(FiniteFrame::build({"0", "a", "b", "1"}, std::span<const std::pair<std::string, std::string>>(rel)));
  }();
  return f;
}

inline const FramePtr& frame_2x3() {
  static const FramePtr f = share(product(*frame_2(), *frame_3()));
  return f;
}

struct NamedFrame {
  std::string name;
  FramePtr frame;
};

inline std::vector<NamedFrame> frames() {
  return {{"FRAME_2", frame_2()}, {"FRAME_3", frame_3()}, {"FRAME_D", frame_d()}, {"FRAME_2x3", frame_2x3()}};
}

/// F(a) = {x, y}, F(b) = {z}, F(1) = F(a) × F(b) with projections.
inline const PresheafPtr& sheaf_ab() {
  static const PresheafPtr p = share(make_presheaf(frame_d(), {{"*"}, {"x", "y"}, {"z"}, {"(x,z)", "(y,z)"}},
                                                   [](std::size_t u, std::size_t i, std::size_t v) -> std::size_t {
                                                     if (v == 0 || v == 2) return 0;
                                                     return u == v || u == 3 ? i : 0;
                                                   }));
  return p;
}

/// SHEAF_AB with F(1) = {(x,z)}: the family (y, z) over a ∨ b has no amalgamation.
inline const PresheafPtr& broken_ab() {
  static const PresheafPtr p = share(make_presheaf(frame_d(), {{"*"}, {"x", "y"}, {"z"}, {"(x,z)"}},
                                                   [](std::size_t u, std::size_t i, std::size_t v) -> std::size_t {
                                                     if (v == 0 || v == 2 || u == 3) return 0;
                                                     return i;
                                                   }));
  return p;
}

inline PoSheaf with_chain_at_a(bool ordered_top) {
  PoSheaf p = discrete(sheaf_ab());
  p.order[1] = Poset::from_predicate(2, [](auto i, auto j) { return i <= j; });
  if (ordered_top) p.order[3] = p.order[1];
  return p;
}

/// x < y at a and (x,z) < (y,z) at 1.
inline PoSheaf posheaf_ab() { return with_chain_at_a(true); }

/// x < y at a with a discrete top: a sheaf of posets failing POS3.
inline PoSheaf sheaf_of_posets_ab() { return with_chain_at_a(false); }

inline PoSheaf sheaf_ab_discrete() { return discrete(sheaf_ab()); }

/// F(0) = F(a) = {*} and F(1) the diamond M3 on FRAME_3: complete but not a frame sheaf.
inline PoSheaf m3_posheaf() {
  auto p = share(make_presheaf(frame_3(), {{"*"}, {"*"}, {"0", "p", "q", "r", "1"}},
                               [](std::size_t, std::size_t i, std::size_t v) { return v == 2 ? i : std::size_t{0}; }));
  PoSheaf f = discrete(p);
  f.order[2] = Poset::from_predicate(5, [](auto i, auto j) { return i == j || i == 0 || j == 4; });
  return f;
}

/// x ↦ x ∧ a : FRAME_D → ↓a.
inline FrameHom meet_a() {
  static const FramePtr down = share(frame_d()->down(1));
  return FrameHom{frame_d(), down, {0, 1, 0, 1}};
}

/// O(Y) = 0 < m < 1 over FRAME_2 with f*(1) = 1: not locally an open inclusion.
inline LocaleOverX non_lh_chain() {
  static const FramePtr y = share(chain({"0", "m", "1"}));
  return {y, FrameHom{frame_2(), y, {0, 2}}};
}

/// O(Y) = FRAME_2 over FRAME_3 with f*(a) = 0: no section over any u > 0.
inline LocaleOverX non_spatial() { return {frame_2(), FrameHom{frame_3(), frame_2(), {0, 0, 1}}}; }

struct NamedPresheaf {
  std::string name;
  PresheafPtr presheaf;
};

struct NamedPosheaf {
  std::string name;
  PoSheaf posheaf;
};

struct NamedLocale {
  std::string name;
  LocaleOverX locale;
};

inline std::vector<NamedPresheaf> sheaves() {
  std::vector<NamedPresheaf> r;
  for (const auto& [n, x] : frames()) r.push_back({"terminal(" + n + ")", share(terminal(x))});
  r.push_back({"subterminal(FRAME_D,a)", share(subterminal(frame_d(), 1))});
  r.push_back({"SHEAF_AB", sheaf_ab()});
  r.push_back({"omega(FRAME_D)", omega(frame_d()).sheaf});
  r.push_back({"omega(FRAME_3)", omega(frame_3()).sheaf});
  return r;
}

/// The sheaves followed by presheaves that are not sheaves.
inline std::vector<NamedPresheaf> presheaves() {
  auto r = sheaves();
  r.push_back({"broken_AB", broken_ab()});
  return r;
}

/// Complete posheaves: Ω, ℙ1 and 𝔻1 per frame, ℙ(SHEAF_AB), 𝔻(POSHEAF_AB),
/// POSHEAF_AB, M3 and Φ(x ↦ x ∧ a).
inline std::vector<NamedPosheaf> complete_posheaves() {
  std::vector<NamedPosheaf> r;
  for (const auto& [n, x] : frames()) {
    r.push_back({"omega(" + n + ")", omega(x)});
    auto one = share(terminal(x));
    r.push_back({"power(terminal(" + n + "))", power_sheaf(one).posheaf});
    r.push_back({"down(terminal(" + n + "))", down_power_sheaf(discrete(one)).posheaf});
  }
  r.push_back({"power(SHEAF_AB)", power_sheaf(sheaf_ab()).posheaf});
  r.push_back({"down(POSHEAF_AB)", down_power_sheaf(posheaf_ab()).posheaf});
  r.push_back({"POSHEAF_AB", posheaf_ab()});
  r.push_back({"M3", m3_posheaf()});
  r.push_back({"phi(meet_a)", phi(meet_a())});
  return r;
}

inline std::vector<NamedPosheaf> posheaves() {
  auto r = complete_posheaves();
  r.push_back({"SHEAF_AB_discrete", sheaf_ab_discrete()});
  r.push_back({"sheaf_of_posets_AB", sheaf_of_posets_ab()});
  return r;
}

/// Locales over their bases, local homeomorphisms first.
inline std::vector<NamedLocale> locales() {
  std::vector<NamedLocale> r;
  for (const auto& [n, x] : frames()) r.push_back({"identity(" + n + ")", identity_locale(x)});
  r.push_back({"open_inclusion(FRAME_D,a)", open_inclusion(frame_d(), 1)});
  r.push_back({"open_inclusion(FRAME_3,a)", open_inclusion(frame_3(), 1)});
  r.push_back({"lambda(SHEAF_AB)", lambda(sheaf_ab()).locale});
  r.push_back({"lambda(omega(FRAME_D))", lambda(omega(frame_d()).sheaf).locale});
  r.push_back({"non_lh_chain", non_lh_chain()});
  r.push_back({"non_spatial", non_spatial()});
  return r;
}

}  // namespace posh::fixtures
