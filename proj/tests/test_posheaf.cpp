#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posh/fixtures.hpp"

using namespace posh;
namespace fx = posh::fixtures;

namespace {

std::vector<std::size_t> sizes(const Presheaf& p) {
  std::vector<std::size_t> s;
  for (std::size_t u = 0; u < p.opens(); ++u) s.push_back(p.size(u));
  return s;
}

/// x ↔ y at a and (x,z) ↔ (y,z) at 1: natural, but reverses x < y.
SheafMorphism swap_ab(const PresheafPtr& f) {
  auto m = identity_morphism(f);
  m.map[1] = {1, 0};
  m.map[3] = {1, 0};
  return m;
}

}  // namespace

TEST(Posheaf, OmegaOnSquare) {
  const auto om = omega(fx::frame_d());
  EXPECT_EQ(sizes(om.F()), (std::vector<std::size_t>{1, 2, 2, 4}));
  const auto r = verify_posheaf(om);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(Posheaf, FixturesPassBothForms) {
  for (const auto& [name, p] : fx::posheaves()) {
    const auto r = verify_posheaf(p);
    EXPECT_TRUE(r.all_forms_agree()) << name;
    EXPECT_EQ(r.passed, name != "sheaf_of_posets_AB") << name;
  }
}

TEST(Posheaf, SheafOfPosetsFailsPos3) {
  const auto r = verify_posheaf(fx::sheaf_of_posets_ab());
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "definition: POS3");
  EXPECT_EQ(r.witness["lower"], Json({"x", "z"}));
  EXPECT_EQ(r.witness["upper"], Json({"y", "z"}));
  EXPECT_FALSE(r.forms.at(1).passed);
}

TEST(Posheaf, DiscreteIsPosheaf) {
  for (const auto& [name, p] : fx::sheaves()) EXPECT_TRUE(verify_posheaf(discrete(p)).passed) << name;
}

TEST(Posheaf, NonMonotoneRestrictionFailsPos2) {
  // (y,z) < (x,z) at 1 restricts to y < x at a, against x < y
  PoSheaf p = fx::posheaf_ab();
  p.order[3] = p.order[1].opposite();
  const auto r = verify_posheaf(p);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(PointOrder, MatchesRawTables) {
  for (const auto& [name, p] : fx::posheaves()) {
    const auto pts = enumerate_points(p.F());
    for (auto a : pts)
      for (auto b : pts) {
        const auto w = point_leq(p, a, b);
        EXPECT_EQ(w.holds, oracle::point_leq(p, a, b)) << name;
        EXPECT_TRUE(w.agree) << name;
      }
  }
}

TEST(OrderPreserving, IdentityAndConstantTop) {
  const auto f = fx::posheaf_ab();
  EXPECT_TRUE(verify_order_preserving(f, f, identity_morphism(f.sheaf)).passed);
  const auto om = omega(fx::frame_d());
  const auto top = classifier(f.sheaf, full_subset(f.F()), om.sheaf);
  const auto r = verify_order_preserving(f, om, top);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(OrderPreserving, SwapBreaksAllThreeForms) {
  const auto f = fx::posheaf_ab();
  const auto m = swap_ab(f.sheaf);
  ASSERT_TRUE(verify_morphism(m).passed);
  const auto r = verify_order_preserving(f, f, m);
  ASSERT_FALSE(r.passed);
  ASSERT_EQ(r.forms.size(), 3u);
  for (const auto& form : r.forms) {
    EXPECT_FALSE(form.passed) << form.check;
    EXPECT_EQ(form.witness["open"], "a") << form.check;
    EXPECT_EQ(form.witness["pair"], Json({"x", "y"})) << form.check;
  }
}

TEST(MorphismLeq, ThreeForms) {
  const auto f = fx::posheaf_ab();
  const auto id = identity_morphism(f.sheaf);
  const auto sw = swap_ab(f.sheaf);
  const auto lt = morphism_leq(f, f, id, id);
  EXPECT_TRUE(lt.passed);
  const auto r = morphism_leq(f, f, sw, id);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
  EXPECT_FALSE(morphism_leq(f, f, id, sw).passed);
  const auto om = omega(fx::frame_d());
  const auto bot = classifier(f.sheaf, generate_subsheaf(f.F(), empty_subset(f.F())), om.sheaf);
  const auto top = classifier(f.sheaf, full_subset(f.F()), om.sheaf);
  EXPECT_TRUE(morphism_leq(f, om, bot, top).passed);
  const auto rev = morphism_leq(f, om, top, bot);
  EXPECT_FALSE(rev.passed);
  EXPECT_TRUE(rev.all_forms_agree());
}

TEST(Downsheaf, MissingLowerElement) {
  const auto f = fx::posheaf_ab();
  Subsheaf g = empty_subset(f.F());
  g.in[1][1] = 1;
  g = generate_subsheaf(f.F(), restriction_closure(f.F(), g));
  const auto r = is_downsheaf(f, g);
  ASSERT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
  ASSERT_EQ(r.forms.size(), 3u);
  EXPECT_EQ(r.forms[1].witness, Json({{"open", "a"}, {"lower", "x"}, {"upper", "y"}}));
  EXPECT_EQ(r.forms[2].witness, r.forms[1].witness);
}

TEST(Downsheaf, LeastSubsheafIsBottom) {
  const auto f = fx::posheaf_ab();
  const auto least = generate_subsheaf(f.F(), empty_subset(f.F()));
  EXPECT_TRUE(is_downsheaf(f, least).passed);
  const auto om = omega(fx::frame_d());
  const auto phi = classifier(f.sheaf, least, om.sheaf);
  EXPECT_TRUE(verify_classifier(phi, least).passed);
  for (std::size_t u = 0; u < f.F().opens(); ++u)
    for (std::size_t x = 0; x < f.F().size(u); ++x) EXPECT_EQ(omega_open(f.X(), u, phi(u, x)), f.X().bottom());
}

TEST(Downsheaf, PrincipalIdealsAreDownsheaves) {
  for (const auto& [name, p] : fx::posheaves()) {
    if (!verify_posheaf(p).passed) continue;
    for (const auto& q : enumerate_points(p.F())) {
      EXPECT_TRUE(is_downsheaf(p, principal(p, q)).passed) << name;
      EXPECT_TRUE(is_uppersheaf(p, principal(p, q, Direction::Filter)).passed) << name;
    }
  }
}

TEST(PowerSheaf, SheafAB) {
  const auto ps = power_sheaf(fx::sheaf_ab());
  EXPECT_EQ(sizes(ps.posheaf.F()), (std::vector<std::size_t>{1, 4, 2, 8}));
  EXPECT_TRUE(verify_posheaf(ps.posheaf).passed);
  const auto full = full_subset(*fx::sheaf_ab());
  const std::size_t i = ps.index_of(3, full);
  const std::size_t j = ps.posheaf.F().restrict(3, i, 1);
  EXPECT_EQ(describe(*fx::sheaf_ab(), ps.members[1][j]), "{0:*;a:x,y}");
}

TEST(PowerSheaf, DownEmbeddingFactorsThroughDownsets) {
  const auto f = fx::posheaf_ab();
  const auto d = down_power_sheaf(f);
  const auto p = power_sheaf(f.sheaf);
  const auto e = down_embedding(f, d);
  EXPECT_TRUE(verify_morphism(e).passed);
  EXPECT_TRUE(verify_order_preserving(f, d.posheaf, e).passed);
  const auto composite = compose(power_inclusion(d, p), e);
  EXPECT_TRUE(verify_morphism(composite).passed);
  // injective on points
  const auto pts = enumerate_points(f.F());
  for (auto a : pts)
    for (auto b : pts)
      if (a.dom == b.dom && a.value != b.value) EXPECT_NE(e(a.dom, a.value), e(b.dom, b.value));
}

TEST(Galois, IdentityPair) {
  const auto f = fx::posheaf_ab();
  const auto id = identity_morphism(f.sheaf);
  const auto r = verify_galois(f, f, id, id);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(Galois, DownClosureLeftOfInclusion) {
  for (const auto& f : {fx::posheaf_ab(), omega(fx::frame_3()), fx::sheaf_ab_discrete()}) {
    const auto p = power_sheaf(f.sheaf);
    const auto d = down_power_sheaf(f);
    const auto r = verify_galois(p.posheaf, d.posheaf, down_closure_morphism(f, p, d), power_inclusion(d, p));
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.all_forms_agree());
    // inclusion is not left adjoint to ↓(); the forms still have to agree
    const auto q = verify_galois(d.posheaf, p.posheaf, power_inclusion(d, p), down_closure_morphism(f, p, d));
    EXPECT_TRUE(q.all_forms_agree());
  }
}

TEST(Galois, NoRightAdjointForJoinBreakingMap) {
  // v ↦ (a ⇒ v) ∧ u on Ω(FRAME_D) keeps meets but sends 0 to b
  const auto om = omega(fx::frame_d());
  const auto& X = om.X();
  SheafMorphism a{om.sheaf, om.sheaf, {}};
  for (std::size_t u = 0; u < X.size(); ++u) {
    a.map.emplace_back();
    for (std::size_t i = 0; i < om.F().size(u); ++i)
      a.map[u].push_back(omega_index(X, u, X.meet(X.heyting(1, omega_open(X, u, i)), u)));
  }
  ASSERT_TRUE(verify_morphism(a).passed);
  ASSERT_TRUE(verify_order_preserving(om, om, a).passed);
  EXPECT_FALSE(find_adjoint(om, om, a, true));
  EXPECT_TRUE(find_adjoint(om, om, a, false));
  const auto id = identity_morphism(om.sheaf);
  const auto r = verify_galois(om, om, a, id);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(Galois, OrderReversalIsNotAnAdjunction) {
  const auto f = fx::posheaf_ab();
  const auto op = opposite(f);
  const auto id = identity_morphism(f.sheaf);
  const auto r = verify_galois(f, op, id, id);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}
