#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posh/budget.hpp"
#include "posh/completeness.hpp"
#include "posh/fixtures.hpp"
#include "posh/frame_equiv.hpp"
#include "posh/generator.hpp"
#include "posh/io.hpp"
#include "posh/sheaf_locale.hpp"

/// The acceptance battery: twelve criteria over the fixtures and a seeded
/// generated corpus, reported as deterministic JSON.
namespace posh::suite {

struct Options {
  std::uint64_t seed = 42;
  std::size_t instances = 200;
  std::size_t mutation_rounds = 120;
  bool timing = false;
  Budget budget;
};

/// Counts checks and keeps the first few failures.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  Json failed = Json::array();
  Json skips = Json::array();

  void expect(bool ok, const std::string& what, const Json& witness = {}) {
    ++checks;
    if (ok) return;
    ++failures;
    if (failed.size() < 8) failed.push_back({{"case", what}, {"witness", witness}});
  }

  void expect_agree(const CheckReport& r, const std::string& what) { expect(r.all_forms_agree(), what + ": forms disagree", r.to_json()); }

  void skip(const std::string& what, const Error& e) {
    ++skipped;
    if (skips.size() < 8) skips.push_back({{"case", what}, {"reason", e.what()}});
  }

  [[nodiscard]] Json to_json() const {
    Json j{{"checks", checks}, {"failures", failures}, {"skipped", skipped}};
    if (!failed.empty()) j["failed"] = failed;
    if (!skips.empty()) j["skips"] = skips;
    return j;
  }
};

struct Criterion {
  std::size_t id = 0;
  std::string name;
  bool passed = false;
  Json details = Json::object();
  std::optional<double> elapsed_ms;

  [[nodiscard]] Json to_json() const {
    Json j{{"id", id}, {"name", name}, {"verdict", passed ? "pass" : "fail"}, {"details", details}};
    if (elapsed_ms) j["timing_ms"] = *elapsed_ms;
    return j;
  }
};

struct Result {
  std::uint64_t seed = 0;
  std::vector<Criterion> criteria;

  [[nodiscard]] bool passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return true;
  }

  [[nodiscard]] Json to_json() const {
    Json cs = Json::array();
    for (const auto& c : criteria) cs.push_back(c.to_json());
    return {{"suite", "posh"}, {"seed", seed}, {"verdict", passed() ? "pass" : "fail"}, {"criteria", cs}};
  }
};

/// One generated base: a frame, a posheaf on it and a frame homomorphism out of it.
struct Item {
  std::uint64_t seed = 0;
  FramePtr frame;
  PoSheaf posheaf;
  FrameHom hom;
};

inline std::uint64_t item_seed(std::uint64_t seed, std::size_t i) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(i) * 0xBF58476D1CE4E5B9ull + 1;
}

inline Item make_item(std::uint64_t seed) {
  Rng rng(seed);
  Item it;
  it.seed = seed;
  it.frame = share(gen_frame(rng, 6));
  it.posheaf = gen_posheaf(rng, it.frame, 3);
  it.hom = gen_frame_hom(rng, it.frame, 4);
  return it;
}

inline std::vector<Item> corpus(const Options& o) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < o.instances; ++i) items.push_back(make_item(item_seed(o.seed, i)));
  return items;
}

/// Byte-stable serialization of the corpus.
inline Json corpus_json(const std::vector<Item>& items) {
  Json a = Json::array();
  for (const auto& it : items)
    a.push_back({{"seed", it.seed}, {"posheaf", io::posheaf_to_json(it.posheaf)}, {"hom", io::frame_hom_to_json(it.hom)}});
  return a;
}

namespace detail {

/// Runs `body`, turning ResourceLimit into a recorded skip.
template <typename Body>
bool guarded(Tally& t, const std::string& what, Body&& body) {
  try {
    body();
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceLimit) throw;
    t.skip(what, e);
    return false;
  }
}

inline Criterion finish(std::size_t id, std::string name, const Tally& t, Json extra = Json::object()) {
  Criterion c;
  c.id = id;
  c.name = std::move(name);
  c.details = t.to_json();
  for (auto& [k, v] : extra.items()) c.details[k] = v;
  c.passed = t.failures == 0;
  return c;
}

inline Subsheaf generated_by(const Presheaf& f, Point p) {
  Subsheaf s = empty_subset(f);
  s.in[p.dom][p.value] = 1;
  return generate_subsheaf(f, restriction_closure(f, s));
}

/// u ↦ top of F(u), natural whenever restrictions keep tops.
inline SheafMorphism constant_top(const PoSheaf& f, const CompleteStructure& cs) {
  SheafMorphism m{f.sheaf, f.sheaf, {}};
  for (std::size_t u = 0; u < f.F().opens(); ++u) m.map.emplace_back(f.F().size(u), cs.lattice[u].top);
  return m;
}

inline bool fails_at_pos3(const CheckReport& r) {
  return !r.passed && !r.forms.empty() && r.forms.front().violation.rfind("POS3", 0) == 0;
}

}  // namespace detail

/// Multi-form characterizations agree on the generated corpus and its mutants.
inline Criterion equivalence_batteries(const std::vector<Item>& items, const Options& o) {
  Tally t;
  std::size_t positives = 0, negatives = 0, complete = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    const auto& p = it.posheaf;
    const auto& F = p.F();
    const std::string tag = "item " + std::to_string(i);
    Rng rng(it.seed ^ 0x5bd1e995ull);
    const auto id = identity_morphism(p.sheaf);
    const PoSheaf op = opposite(p);

    auto def = verify_posheaf(p);
    t.expect_agree(def, tag + " posheaf");
    t.expect(def.passed, tag + " generated posheaf rejected", def.to_json());
    ++positives;

    t.expect_agree(verify_order_preserving(p, p, id), tag + " order_preserving id");
    t.expect_agree(verify_order_preserving(p, op, id), tag + " order_preserving op");
    t.expect_agree(morphism_leq(p, p, id, id), tag + " morphism_leq id");

    const auto pts = enumerate_points(F);
    const Point pt = pts[rng.below(pts.size())];
    const Subsheaf small = detail::generated_by(F, pt);
    const Subsheaf closed = down_closure(p, small);
    const PoSheaf om = omega(p.sheaf->frame);
    const auto chi_small = classifier(p.sheaf, small, om.sheaf), chi_closed = classifier(p.sheaf, closed, om.sheaf);
    t.expect_agree(morphism_leq(p, om, chi_small, chi_closed), tag + " morphism_leq classifiers");
    t.expect_agree(morphism_leq(p, om, chi_closed, chi_small), tag + " morphism_leq classifiers reversed");
    t.expect_agree(is_downsheaf(p, small), tag + " downsheaf generated");
    auto dc = is_downsheaf(p, closed);
    t.expect_agree(dc, tag + " downsheaf closure");
    t.expect(dc.passed, tag + " down closure is not a downsheaf", dc.to_json());
    t.expect_agree(is_downsheaf(p, principal(p, pt)), tag + " downsheaf principal");

    t.expect_agree(verify_galois(p, p, id, id), tag + " galois id");
    t.expect_agree(verify_galois(p, op, id, id), tag + " galois op");

    detail::guarded(t, tag + " completeness", [&] {
      auto c = is_complete(p, o.budget);
      t.expect(c.consistent(), tag + " completeness forms disagree", c.to_report().to_json());
    });
    t.expect_agree(check_finite_completeness(p), tag + " finite completeness");

    // a complete instance from the same base
    detail::guarded(t, tag + " phi", [&] {
      const PoSheaf c = phi(it.hom);
      const auto cert = is_complete(c, o.budget);
      t.expect(cert.consistent() && cert.complete(), tag + " phi(h) completeness", cert.to_report().to_json());
      const auto fs = is_frame_sheaf(c, o.budget);
      t.expect_agree(fs, tag + " frame sheaf");
      t.expect(fs.passed, tag + " phi(h) is not a frame sheaf", fs.to_json());
      const auto cs = complete_structure(c);
      const auto cid = identity_morphism(c.sheaf);
      t.expect_agree(verify_sup_preserving(c, c, cid, o.budget), tag + " sup_preserving id");
      t.expect_agree(verify_sup_preserving(c, c, detail::constant_top(c, cs), o.budget), tag + " sup_preserving top");
      t.expect_agree(check_finite_completeness(c), tag + " finite completeness phi");
      t.expect_agree(verify_frame_morphism(c, c, cid, o.budget), tag + " frame_morphism id");
      ++complete;
      ++positives;
    });

    // a mutated negative
    if (i % 2 == 0) {
      if (auto q = break_pos3(rng, p)) {
        auto r = verify_posheaf(*q);
        t.expect_agree(r, tag + " posheaf mutant");
        t.expect(detail::fails_at_pos3(r), tag + " POS3 mutant not caught", r.to_json());
        ++negatives;
      }
    } else {
      detail::guarded(t, tag + " meet square", [&] {
        Rng hr(it.seed ^ 0x27d4eb2full);
        const FrameHom g = gen_frame_hom(hr, it.frame, 3);
        if (g.target->size() < 2) return;
        const auto c = meet_square_case(g);
        auto good = verify_frame_morphism(c.source, c.target, c.control, o.budget);
        auto bad = verify_frame_morphism(c.source, c.target, c.mutated, o.budget);
        t.expect_agree(good, tag + " frame_morphism control");
        t.expect_agree(bad, tag + " frame_morphism mutant");
        t.expect(good.passed && !bad.passed, tag + " meet-square mutant not separated", bad.to_json());
        ++negatives;
      });
    }
  }
  Tally gate;
  gate.expect(positives + negatives >= 200, "fewer than 200 instances");
  gate.expect(negatives >= 50, "fewer than 50 mutated negatives");
  auto c = detail::finish(1, "equivalence_batteries", t,
                          {{"instances", positives + negatives}, {"positives", positives}, {"negatives", negatives},
                           {"complete_instances", complete}, {"gate", gate.to_json()}});
  c.passed = c.passed && gate.failures == 0;
  return c;
}

/// Ω, ℙF and 𝔻F are complete frame sheaves; ℙF's adjoints are Š and Ŝ.
inline Criterion canonical_objects(const Options& o) {
  Tally t;
  Json names = Json::array();
  auto both = [&](const std::string& n, const PoSheaf& p) {
    detail::guarded(t, n, [&] {
      auto c = is_complete(p, o.budget);
      t.expect(c.complete() && c.consistent(), n + " is_complete", c.to_report().to_json());
      auto fs = is_frame_sheaf(p, o.budget);
      t.expect(fs.passed && fs.all_forms_agree(), n + " is_frame_sheaf", fs.to_json());
      names.push_back(n);
    });
  };
  std::vector<std::pair<std::string, PresheafPtr>> bases;
  for (const auto& [n, x] : fixtures::frames()) bases.emplace_back("terminal(" + n + ")", share(terminal(x)));
  bases.emplace_back("SHEAF_AB", fixtures::sheaf_ab());
  bases.emplace_back("omega(FRAME_2)", omega(fixtures::frame_2()).sheaf);
  for (const auto& [n, x] : fixtures::frames()) {
    both("omega(" + n + ")", omega(x));
    both("down(omega(" + n + "))", down_power_sheaf(omega(x), o.budget).posheaf);
  }
  both("down(POSHEAF_AB)", down_power_sheaf(fixtures::posheaf_ab(), o.budget).posheaf);
  for (const auto& [n, f] : bases) {
    const auto pw = power_sheaf(f, o.budget);
    both("power(" + n + ")", pw.posheaf);
    const auto adj = check_power_adjoints(pw);
    t.expect(adj.passed, "power(" + n + ") adjoints", adj.to_json());
  }
  return detail::finish(2, "canonical_objects", t, {{"objects", names}});
}

/// ↓ ⊣ inclusion between 𝔻F and ℙF, and sup ⊣ ↓ on every complete fixture.
inline Criterion down_adjunctions(const Options& o) {
  Tally t;
  for (const auto& [n, f] : fixtures::complete_posheaves()) {
    detail::guarded(t, n, [&] {
      const auto pw = power_sheaf(f.sheaf, o.budget);
      const auto dn = down_power_sheaf(f, o.budget);
      auto closure = verify_galois(pw.posheaf, dn.posheaf, down_closure_morphism(f, pw, dn), power_inclusion(dn, pw));
      t.expect(closure.passed && closure.all_forms_agree(), n + " down-closure ⊣ inclusion", closure.to_json());
      auto sup = verify_galois(dn.posheaf, f, sup_morphism(f, dn), down_embedding(f, dn));
      t.expect(sup.passed && sup.all_forms_agree(), n + " sup ⊣ down-embedding", sup.to_json());
      const auto oracle = sup_morphism_oracle(f, dn);
      t.expect(oracle.map == sup_morphism(f, dn).map, n + " sup formula differs from the brute-force sup");
    });
  }
  return detail::finish(3, "down_adjunctions", t);
}

/// Left adjoints keep existing sups, right adjoints existing infs.
inline Criterion adjoints_preserve_bounds(const std::vector<Item>& items, const Options& o) {
  Tally t;
  std::size_t pairs = 0;
  auto check = [&](const std::string& n, const PoSheaf& f, const PoSheaf& g, const SheafMorphism& a, const SheafMorphism& b) {
    detail::guarded(t, n, [&] {
      auto gal = verify_galois(f, g, a, b);
      if (!gal.passed) return;
      ++pairs;
      auto r = check_adjoint_bounds(f, g, a, b, o.budget);
      t.expect(r.passed, n, r.to_json());
    });
  };
  auto complete_pairs = [&](const std::string& n, const PoSheaf& f) {
    const PoSheaf ff = product(f, f);
    const auto diag = diagonal(f, ff);
    if (auto m = find_adjoint(f, ff, diag, true)) check(n + " diagonal ⊣ meet", f, ff, diag, *m);
    if (auto j = find_adjoint(f, ff, diag, false)) check(n + " join ⊣ diagonal", ff, f, *j, diag);
    detail::guarded(t, n, [&] {
      const auto dn = down_power_sheaf(f, o.budget);
      check(n + " sup ⊣ down-embedding", dn.posheaf, f, sup_morphism(f, dn), down_embedding(f, dn));
    });
  };
  for (const auto& [n, f] : fixtures::complete_posheaves()) {
    detail::guarded(t, n, [&] {
      if (f.F().total_sections() <= 12) complete_pairs(n, f);
      const auto pw = power_sheaf(f.sheaf, o.budget);
      const auto dn = down_power_sheaf(f, o.budget);
      if (pw.posheaf.F().total_sections() <= 40)
        check(n + " down-closure ⊣ inclusion", pw.posheaf, dn.posheaf, down_closure_morphism(f, pw, dn), power_inclusion(dn, pw));
    });
  }
  for (std::size_t i = 0; i < items.size() && i < 40; ++i) {
    const auto& p = items[i].posheaf;
    const auto id = identity_morphism(p.sheaf);
    const std::string tag = "item " + std::to_string(i);
    check(tag + " id ⊣ id", p, p, id, id);
    detail::guarded(t, tag, [&] {
      const PoSheaf c = phi(items[i].hom);
      if (c.F().total_sections() <= 12) complete_pairs(tag + " phi", c);
    });
  }
  Tally gate;
  gate.expect(pairs >= 20, "fewer than 20 adjoint pairs");
  auto c = detail::finish(4, "adjoints_preserve_bounds", t, {{"pairs", pairs}, {"gate", gate.to_json()}});
  c.passed = c.passed && gate.failures == 0;
  return c;
}

/// The adjoint square on complete fixtures; F complete iff F^op complete.
inline Criterion adjoint_square_and_opposite(const std::vector<Item>& items, const Options& o) {
  Tally t;
  for (const auto& [n, f] : fixtures::posheaves()) {
    if (!verify_posheaf(f).passed) continue;
    detail::guarded(t, n, [&] {
      auto c = is_complete(f, o.budget);
      if (c.complete()) t.expect(c.adjoint_square.passed, n + " adjoint square", c.adjoint_square.to_json());
      t.expect(c.opposite_symmetry.passed, n + " opposite", c.opposite_symmetry.to_json());
    });
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string tag = "item " + std::to_string(i);
    detail::guarded(t, tag, [&] {
      auto c = is_complete(items[i].posheaf, o.budget);
      t.expect(c.opposite_symmetry.passed, tag + " opposite", c.opposite_symmetry.to_json());
      if (c.complete()) t.expect(c.adjoint_square.passed, tag + " adjoint square", c.adjoint_square.to_json());
    });
    if (i % 4 == 0)
      detail::guarded(t, tag + " phi", [&] {
        auto c = is_complete(phi(items[i].hom), o.budget);
        t.expect(c.adjoint_square.passed && c.opposite_symmetry.passed, tag + " phi square/opposite", c.to_report().to_json());
      });
  }
  return detail::finish(5, "adjoint_square_and_opposite", t);
}

/// Φ∘Ψ ≅ id on frame-sheaf fixtures and Ψ∘Φ ≅ id on homomorphisms.
inline Criterion frame_equivalence(const std::vector<Item>& items, const Options& o) {
  Tally t;
  std::size_t sheaves = 0, homs = 0;
  for (const auto& [n, f] : fixtures::complete_posheaves()) {
    if (!is_frame_sheaf(f, o.budget).passed) continue;
    detail::guarded(t, n, [&] {
      auto r = verify_frame_equivalence(f, o.budget);
      t.expect(r.passed && r.all_forms_agree(), n, r.to_json());
      ++sheaves;
    });
  }
  std::vector<std::pair<std::string, FrameHom>> hs{{"meet_a", fixtures::meet_a()}};
  for (const auto& [n, x] : fixtures::frames()) hs.emplace_back("identity(" + n + ")", identity_hom(x));
  for (std::size_t i = 0; i < items.size() && i < 30; ++i) hs.emplace_back("item " + std::to_string(i), items[i].hom);
  for (const auto& [n, h] : hs) {
    detail::guarded(t, n, [&] {
      auto a = verify_frame_equivalence(h, o.budget);
      t.expect(a.passed && a.all_forms_agree(), n + " Ψ∘Φ", a.to_json());
      auto b = verify_frame_equivalence(phi(h), o.budget);
      t.expect(b.passed && b.all_forms_agree(), n + " Φ∘Ψ on phi", b.to_json());
      ++homs;
    });
  }
  Tally gate;
  gate.expect(homs >= 20, "fewer than 20 homomorphisms");
  auto c = detail::finish(6, "frame_equivalence", t, {{"frame_sheaves", sheaves}, {"homomorphisms", homs}, {"gate", gate.to_json()}});
  c.passed = c.passed && gate.failures == 0;
  return c;
}

/// Triangle identities, η bijective on sheaves, ε iso exactly on local homeomorphisms.
inline Criterion sh_lh_adjunction(const Options& o) {
  Tally t;
  for (const auto& [n, p] : fixtures::presheaves()) {
    detail::guarded(t, n, [&] {
      auto tri = verify_lambda_triangle(p, o.budget);
      t.expect(tri.passed, n + " triangle at Λ", tri.to_json());
      if (!is_sheaf(*p)) return;
      auto eq = verify_sh_lh_equivalence(p, o.budget);
      t.expect(eq.passed, n + " η bijective", eq.to_json());
    });
  }
  bool non_lh_seen = false;
  for (const auto& [n, f] : fixtures::locales()) {
    detail::guarded(t, n, [&] {
      auto tri = verify_gamma_triangle(f, o.budget);
      t.expect(tri.passed, n + " triangle at Γ", tri.to_json());
      const bool lh = is_local_homeomorphism(f).passed;
      auto eq = verify_sh_lh_equivalence(f, o.budget);
      t.expect(eq.passed == lh, n + (lh ? " ε not an isomorphism" : " ε an isomorphism off LH"), eq.to_json());
      if (n == "non_lh_chain") non_lh_seen = !lh && !eq.passed;
    });
  }
  t.expect(non_lh_seen, "designated non-LH fixture");
  return detail::finish(7, "sh_lh_adjunction", t);
}

/// Λ(1) ≅ O(X) over X, Γ(id) = 1, Γ(↓u ↪ X) = subterminal(u).
inline Criterion lambda_gamma_basics(const Options& o) {
  Tally t;
  for (const auto& [n, x] : fixtures::frames()) {
    detail::guarded(t, n, [&] {
      const auto L = lambda(share(terminal(x)), o.budget);
      const FrameHom id = identity_hom(x);
      auto iso = find_frame_iso(*L.locale.OY, *x, {&L.locale.fstar, &id}, o.budget.iso_search);
      t.expect(iso.has_value(), n + " Λ(1) ≇ O(X) over X");
      t.expect(is_subterminal_shape(*gamma(identity_locale(x), o.budget).sheaf, x->top()), n + " Γ(id) not terminal");
      for (std::size_t u = 0; u < x->size(); ++u)
        t.expect(is_subterminal_shape(*gamma(open_inclusion(x, u), o.budget).sheaf, u),
                 n + " Γ(↓" + x->name(u) + ") not subterminal");
    });
  }
  return detail::finish(8, "lambda_gamma_basics", t);
}

/// ε(s⃗,t⃗) ≤ ε(s⃗) ∧ ε(t⃗) on all fixture presheaves.
inline Criterion epsilon_inequality(const std::vector<Item>& items) {
  Tally t;
  std::size_t pairs = 0;
  auto run = [&](const std::string& n, const Presheaf& p) {
    const std::size_t len = p.total_sections() <= 6 ? 3 : 2;
    auto r = verify_epsilon_inequality(p, len);
    t.expect(r.passed, n, r.to_json());
    if (r.passed) pairs += r.details["tuple_pairs"].get<std::size_t>();
  };
  for (const auto& [n, p] : fixtures::presheaves()) run(n, *p);
  for (std::size_t i = 0; i < items.size() && i < 20; ++i) run("item " + std::to_string(i), items[i].posheaf.F());
  return detail::finish(9, "epsilon_inequality", t, {{"tuple_pairs", pairs}});
}

/// check_posl/check_cposl agree with verify_posheaf/is_complete through Λ and Γ.
inline Criterion posl_cposl(const Options& o) {
  Tally t;
  std::size_t cases = 0;
  for (const auto& [n, f] : fixtures::posheaves()) {
    detail::guarded(t, n, [&] {
      const auto L = lambda(f.sheaf, o.budget);
      const auto G = gamma(L.locale, o.budget);
      const auto eta = unit(L, G);
      const auto orders = transport_orders(eta, f.order);
      const bool pos = verify_posheaf(f).passed;
      auto posl = check_posl(G, orders);
      t.expect(posl.all_forms_agree() && posl.passed == pos, n + " POSL", posl.to_json());
      if (pos) {
        auto cposl = check_cposl(G, orders, o.budget);
        const bool comp = is_complete(f, o.budget).complete();
        t.expect(cposl.all_forms_agree() && cposl.passed == comp, n + " CPOSL", cposl.to_json());
      }
      ++cases;
    });
  }
  for (const auto& [n, f] : fixtures::locales()) {
    if (!is_local_homeomorphism(f).passed) continue;
    detail::guarded(t, n, [&] {
      const auto G = gamma(f, o.budget);
      const auto d = discrete(G.sheaf);
      auto posl = check_posl(G, d.order);
      auto cposl = check_cposl(G, d.order, o.budget);
      t.expect(posl.all_forms_agree() && posl.passed, n + " POSL discrete", posl.to_json());
      t.expect(cposl.all_forms_agree() && cposl.passed == is_complete(d, o.budget).complete(), n + " CPOSL discrete",
               cposl.to_json());
      ++cases;
    });
  }
  return detail::finish(10, "posl_cposl", t, {{"cases", cases}});
}

/// Each mutation kind fails exactly its targeted check.
inline Criterion mutation_soundness(const Options& o) {
  Tally t;
  std::map<std::string, std::size_t> applied;
  for (std::size_t i = 0; i < o.mutation_rounds; ++i) {
    const std::uint64_t seed = item_seed(o.seed ^ 0xA5A5A5A5ull, i);
    Rng rng(seed);
    const auto x = share(gen_frame(rng, 6));
    const PoSheaf p = gen_posheaf(rng, x, 3);
    const std::string tag = "round " + std::to_string(i);
    switch (static_cast<Mutation>(i % 5)) {
      case Mutation::BreakPos3:
        if (auto q = break_pos3(rng, p)) {
          ++applied["break-POS3"];
          const bool sheaf_ok = verify_presheaf(q->F()).passed && verify_sheaf(q->F()).passed;
          auto r = verify_posheaf(*q);
          t.expect(sheaf_ok && detail::fails_at_pos3(r) && r.all_forms_agree(), tag + " break-POS3", r.to_json());
        }
        break;
      case Mutation::RemoveAmalgamation:
        if (auto q = remove_amalgamation(rng, p.F())) {
          ++applied["remove-amalgamation"];
          auto c = verify_sheaf(*q);
          t.expect(verify_presheaf(*q).passed && !c.passed && c.violation->amalgamation_count == 0,
                   tag + " remove-amalgamation", c.to_report(*q).to_json());
        }
        break;
      case Mutation::BreakNaturality:
        if (auto m = break_naturality(rng, identity_morphism(p.sheaf))) {
          ++applied["break-naturality"];
          bool tables = true;
          try {
            check_morphism_tables(*m);
          } catch (const Error&) {
            tables = false;
          }
          auto r = verify_morphism(*m);
          t.expect(tables && !r.passed, tag + " break-naturality", r.to_json());
        }
        break;
      case Mutation::BreakDistributivity:
        if (auto raw = break_distributivity(rng, *x)) {
          ++applied["break-distributivity"];
          auto r = verify_frame(raw->names, raw->leq);
          t.expect(!r.passed && r.violation == "NotDistributive", tag + " break-distributivity", r.to_json());
        }
        break;
      case Mutation::BreakMeetSquare:
        detail::guarded(t, tag, [&] {
          const FrameHom g = gen_frame_hom(rng, x, 3);
          if (g.target->size() < 2) return;
          const auto c = meet_square_case(g);
          ++applied["break-meet-square"];
          auto good = verify_frame_morphism(c.source, c.target, c.control, o.budget);
          auto bad = verify_frame_morphism(c.source, c.target, c.mutated, o.budget);
          auto sup = verify_sup_preserving(c.source, c.target, c.mutated, o.budget);
          const bool only_meet = !bad.passed && bad.forms.front().violation == "meet square does not commute";
          t.expect(verify_morphism(c.mutated).passed && good.passed && sup.passed && only_meet && bad.all_forms_agree(),
                   tag + " break-meet-square", bad.to_json());
        });
        break;
    }
  }
  Json counts = Json::object();
  Tally gate;
  for (auto m : {Mutation::BreakPos3, Mutation::BreakNaturality, Mutation::BreakDistributivity, Mutation::RemoveAmalgamation,
                 Mutation::BreakMeetSquare}) {
    const std::string k(to_string(m));
    counts[k] = applied[k];
    gate.expect(applied[k] >= 5, k + " applied fewer than 5 times");
  }
  auto c = detail::finish(11, "mutation_soundness", t, {{"applied", counts}, {"gate", gate.to_json()}});
  c.passed = c.passed && gate.failures == 0;
  return c;
}

/// The corpus and a corpus-driven criterion regenerate byte-identically.
inline Criterion determinism(const Options& o) {
  Tally t;
  Options small = o;
  small.instances = 20;
  small.mutation_rounds = 30;
  const auto a = corpus(small), b = corpus(small);
  t.expect(corpus_json(a).dump() == corpus_json(b).dump(), "corpus differs between runs");
  t.expect(equivalence_batteries(a, small).to_json().dump() == equivalence_batteries(b, small).to_json().dump(),
           "equivalence battery report differs between runs");
  t.expect(mutation_soundness(small).to_json().dump() == mutation_soundness(small).to_json().dump(),
           "mutation report differs between runs");
  return detail::finish(12, "determinism", t);
}

inline constexpr std::size_t kCriteria = 12;

/// Runs the selected criteria (all when `only` is empty).
inline Result run(const Options& o, const std::vector<std::size_t>& only = {}) {
  Result res;
  res.seed = o.seed;
  auto wanted = [&](std::size_t id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  const auto items = corpus(o);
  struct Entry {
    std::size_t id;
    const char* name;
    std::function<Criterion()> fn;
  };
  const std::vector<Entry> all{
      {1, "equivalence_batteries", [&] { return equivalence_batteries(items, o); }},
      {2, "canonical_objects", [&] { return canonical_objects(o); }},
      {3, "down_adjunctions", [&] { return down_adjunctions(o); }},
      {4, "adjoints_preserve_bounds", [&] { return adjoints_preserve_bounds(items, o); }},
      {5, "adjoint_square_and_opposite", [&] { return adjoint_square_and_opposite(items, o); }},
      {6, "frame_equivalence", [&] { return frame_equivalence(items, o); }},
      {7, "sh_lh_adjunction", [&] { return sh_lh_adjunction(o); }},
      {8, "lambda_gamma_basics", [&] { return lambda_gamma_basics(o); }},
      {9, "epsilon_inequality", [&] { return epsilon_inequality(items); }},
      {10, "posl_cposl", [&] { return posl_cposl(o); }},
      {11, "mutation_soundness", [&] { return mutation_soundness(o); }},
      {12, "determinism", [&] { return determinism(o); }},
  };
  for (const auto& [id, name, fn] : all) {
    if (!wanted(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = fn();
    } catch (const Error& e) {
      c.id = id;
      c.name = name;
      c.passed = false;
      c.details = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    }
    if (o.timing)
      c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    res.criteria.push_back(std::move(c));
  }
  return res;
}

}  // namespace posh::suite
