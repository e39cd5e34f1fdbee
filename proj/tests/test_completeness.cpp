#include <gtest/gtest.h>

#include "posh/completeness.hpp"
#include "posh/fixtures.hpp"
#include "posh/frame_equiv.hpp"
#include "posh/generator.hpp"

using namespace posh;
namespace fx = posh::fixtures;

TEST(Bounds, OmegaExtremes) {
  const auto om = omega(fx::frame_d());
  const auto least = generate_subsheaf(om.F(), empty_subset(om.F()));
  const auto b = bounds(om, least);
  ASSERT_TRUE(b.sup && b.inf);
  EXPECT_EQ(*b.sup, (Point{0, 0}));
  EXPECT_EQ(*b.inf, (Point{0, 0}));
  const auto all = bounds(om, full_subset(om.F()));
  ASSERT_TRUE(all.sup);
  EXPECT_EQ(*all.sup, (Point{3, omega_index(om.X(), 3, 3)}));
}

TEST(Bounds, DiscreteHasNoSupOfTwoPoints) {
  const auto f = fx::sheaf_ab_discrete();
  Subsheaf s = empty_subset(f.F());
  s.in[1][0] = s.in[1][1] = 1;
  const auto b = bounds(f, s);
  EXPECT_FALSE(b.sup);
  EXPECT_TRUE(b.upper_bounds.empty());
}

TEST(Complete, FixturesAreCompleteAndConsistent) {
  for (const auto& [name, p] : fx::complete_posheaves()) {
    const auto c = is_complete(p);
    EXPECT_TRUE(c.complete()) << name;
    EXPECT_TRUE(c.consistent()) << name << " " << c.to_report().to_json().dump();
    EXPECT_TRUE(c.adjoint_square.passed) << name;
  }
}

TEST(Complete, DiscreteIsNot) {
  const auto c = is_complete(fx::sheaf_ab_discrete());
  EXPECT_FALSE(c.complete());
  EXPECT_TRUE(c.consistent());
  EXPECT_EQ(c.report.forms.size(), 4u);
}

TEST(Complete, OppositeSymmetry) {
  for (const auto& [name, p] : fx::posheaves()) {
    if (!verify_posheaf(p).passed) continue;
    EXPECT_EQ(is_complete(p).complete(), is_complete(opposite(p)).complete()) << name;
  }
}

TEST(Complete, PowerAdjointsMatchMinimalAndMaximalExtensions) {
  for (const auto& [name, x] : fx::frames()) {
    const auto one = share(terminal(x));
    EXPECT_TRUE(check_power_adjoints(power_sheaf(one)).passed) << name;
  }
  EXPECT_TRUE(check_power_adjoints(power_sheaf(fx::sheaf_ab())).passed);
  EXPECT_TRUE(check_power_adjoints(power_sheaf(omega(fx::frame_d()).sheaf)).passed);
}

TEST(Complete, PowerLeftAdjointOnSheafAB) {
  // l_{a,1} sends {x at a} to itself; r_{a,1} to everything over b with x over a
  const auto f = fx::sheaf_ab();
  const auto p = power_sheaf(f);
  const auto cs = complete_structure(p.posheaf);
  Subsheaf s = empty_subset(*f);
  s.in[0][0] = s.in[1][0] = 1;
  const std::size_t i = p.index_of(1, s);
  EXPECT_EQ(describe(*f, p.members[3][cs.left(3, 1, i)]), "{0:*;a:x}");
  EXPECT_EQ(describe(*f, p.members[3][cs.right(3, 1, i)]), "{0:*;a:x;b:z;1:(x,z)}");
}

TEST(SupMorphism, MatchesOracle) {
  for (const auto& [name, p] : fx::complete_posheaves()) {
    if (p.F().total_sections() > 12) continue;
    const auto d = down_power_sheaf(p);
    EXPECT_EQ(sup_morphism(p, d).map, sup_morphism_oracle(p, d).map) << name;
  }
}

TEST(SupPreserving, Identity) {
  const auto om = omega(fx::frame_d());
  const auto r = verify_sup_preserving(om, om, identity_morphism(om.sheaf));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(SupPreserving, DirectImage) {
  const auto f = fx::sheaf_ab();
  const auto one = share(terminal(fx::frame_d()));
  const auto pf = power_sheaf(f), p1 = power_sheaf(one);
  const auto r = verify_sup_preserving(pf.posheaf, p1.posheaf, direct_image(to_terminal(f, one), pf, p1));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(SupPreserving, DownsetInclusionKeepsSups) {
  // downsheaves are closed under joins of subsheaves, so 𝔻F ↣ ℙF keeps sups too
  const auto f = fx::posheaf_ab();
  const auto p = power_sheaf(f.sheaf);
  const auto d = down_power_sheaf(f);
  const auto r = verify_sup_preserving(d.posheaf, p.posheaf, power_inclusion(d, p));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(SupPreserving, ConstantTopFails) {
  const auto om = omega(fx::frame_d());
  const auto top = classifier(om.sheaf, full_subset(om.F()), om.sheaf);
  const auto r = verify_sup_preserving(om, om, top);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(FiniteComplete, OmegaAndTwoPoints) {
  const auto r = check_finite_completeness(omega(fx::frame_d()));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
  auto two = share(make_presheaf(fx::frame_2(), {{"*"}, {"p", "q"}}, [](auto, auto, auto) { return std::size_t{0}; }));
  for (auto mode : {FiniteMode::Sup, FiniteMode::Inf}) {
    const auto s = check_finite_completeness(discrete(two), mode);
    EXPECT_FALSE(s.passed);
    EXPECT_TRUE(s.all_forms_agree());
  }
}

TEST(FiniteComplete, CompleteImpliesFinite) {
  for (const auto& [name, p] : fx::complete_posheaves()) {
    const auto r = check_finite_completeness(p);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_TRUE(r.all_forms_agree()) << name;
  }
}

TEST(FrameSheaf, CanonicalObjects) {
  for (const auto& [name, x] : fx::frames()) {
    EXPECT_TRUE(is_frame_sheaf(omega(x)).passed) << name;
    const auto one = share(terminal(x));
    EXPECT_TRUE(is_frame_sheaf(power_sheaf(one).posheaf).passed) << name;
    EXPECT_TRUE(is_frame_sheaf(down_power_sheaf(discrete(one)).posheaf).passed) << name;
  }
  EXPECT_TRUE(is_frame_sheaf(power_sheaf(fx::sheaf_ab()).posheaf).passed);
}

TEST(FrameSheaf, DiamondFailsBothForms) {
  const auto m3 = fx::m3_posheaf();
  ASSERT_TRUE(is_complete(m3).complete());
  const auto r = is_frame_sheaf(m3);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
  EXPECT_EQ(r.forms[0].witness["open"], "1");
  EXPECT_EQ(r.forms[1].witness["open"], "1");
  EXPECT_EQ(r.forms[1].violation, "not a Heyting algebra");
}

TEST(FrameMorphism, IdentityAndPhiMaps) {
  const auto om = omega(fx::frame_d());
  EXPECT_TRUE(verify_frame_morphism(om, om, identity_morphism(om.sheaf)).passed);
  const auto h = fx::meet_a();
  const auto f = phi(h);
  const auto r = verify_frame_morphism(f, f, identity_morphism(f.sheaf));
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(FrameMorphism, MeetSquareBreaker) {
  Rng rng(3);
  int checked = 0;
  for (int k = 0; k < 80 && checked < 5; ++k) {
    const auto x = share(gen_frame(rng, 3));
    const auto g = gen_frame_hom(rng, x, 3);
    if (g.target->size() < 2) continue;
    const auto c = meet_square_case(g);
    try {
      EXPECT_TRUE(verify_sup_preserving(c.source, c.target, c.mutated).passed);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::ResourceLimit);
      continue;
    }
    EXPECT_TRUE(verify_frame_morphism(c.source, c.target, c.control).passed);
    const auto r = verify_frame_morphism(c.source, c.target, c.mutated);
    EXPECT_FALSE(r.passed);
    EXPECT_TRUE(r.all_forms_agree());
    EXPECT_EQ(r.forms[0].violation, "meet square does not commute");
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(AdjointBounds, StandardPairs) {
  const auto f = fx::posheaf_ab();
  const auto p = power_sheaf(f.sheaf);
  const auto d = down_power_sheaf(f);
  EXPECT_TRUE(check_adjoint_bounds(p.posheaf, d.posheaf, down_closure_morphism(f, p, d), power_inclusion(d, p)).passed);
  EXPECT_TRUE(check_adjoint_bounds(d.posheaf, f, sup_morphism(f, d), down_embedding(f, d)).passed);
}
