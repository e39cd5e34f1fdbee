#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posh/fixtures.hpp"

using namespace posh;
namespace fx = posh::fixtures;

TEST(Presheaf, FixturesAreFunctorial) {
  for (const auto& [name, p] : fx::presheaves()) EXPECT_TRUE(verify_presheaf(*p).passed) << name;
}

TEST(Presheaf, BrokenCompositionNamesTheTriple) {
  // on the chain 0 < a < 1: 1→a→0 sends p to p, the direct 1→0 sends it to q
  auto p = make_presheaf(fx::frame_3(), {{"p", "q"}, {"p", "q"}, {"p"}},
                         [](std::size_t u, std::size_t i, std::size_t v) -> std::size_t { return u == 2 && v == 0 ? 1 : i; });
  const auto r = verify_presheaf(p);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "composition");
  EXPECT_EQ(r.witness, Json({{"u", "1"}, {"v", "a"}, {"w", "0"}, {"section", "p"}}));
}

TEST(Presheaf, IdentityLaw) {
  Presheaf p = *fx::sheaf_ab();
  p.res[1][1] = {1, 0};
  const auto r = verify_presheaf(p);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "identity");
}

TEST(Presheaf, OutOfRangeTableThrows) {
  Presheaf p = *fx::sheaf_ab();
  p.res[3][1] = {0, 7};
  EXPECT_THROW((void)verify_presheaf(p), Error);
}

TEST(Sheaf, ProductOverDisjointCover) {
  const auto c = verify_sheaf(*fx::sheaf_ab());
  EXPECT_TRUE(c.passed);
  const std::size_t cover[] = {1, 2};
  for (std::size_t x = 0; x < 2; ++x) {
    const std::size_t fam[] = {x, 0};
    const auto a = amalgamations(*fx::sheaf_ab(), 3, cover, fam);
    EXPECT_EQ(a, (std::vector<std::size_t>{x}));
  }
}

TEST(Sheaf, MissingAmalgamation) {
  const auto c = verify_sheaf(*fx::broken_ab());
  ASSERT_FALSE(c.passed);
  ASSERT_TRUE(c.violation);
  EXPECT_EQ(c.violation->open, 3u);
  EXPECT_EQ(c.violation->amalgamation_count, 0u);
  EXPECT_EQ(c.violation->family, (std::vector<std::size_t>{1, 0}));
}

TEST(Sheaf, TwoSectionsAtBottomFail) {
  auto p = make_presheaf(fx::frame_2(), {{"p", "q"}, {"p", "q"}}, [](auto, auto i, auto) { return i; });
  const auto c = verify_sheaf(p);
  ASSERT_FALSE(c.passed);
  EXPECT_EQ(c.violation->open, 0u);
  EXPECT_TRUE(c.violation->cover.empty());
}

TEST(Sheaf, AgreesWithBruteForce) {
  for (const auto& [name, p] : fx::presheaves()) EXPECT_EQ(is_sheaf(*p), oracle::is_sheaf(*p)) << name;
}

TEST(Subsheaf, GeneratedFromBasis) {
  const auto& f = *fx::sheaf_ab();
  Subsheaf b = empty_subset(f);
  b.in[1][0] = 1;
  b.in[2][0] = 1;
  const auto s = generate_subsheaf(f, restriction_closure(f, b));
  EXPECT_THROW((void)generate_subsheaf(f, b), Error);
  EXPECT_EQ(describe(f, s), "{0:*;a:x;b:z;1:(x,z)}");
  EXPECT_EQ(generate_subsheaf(f, full_subset(f)), full_subset(f));
  const auto least = generate_subsheaf(f, empty_subset(f));
  EXPECT_EQ(describe(f, least), "{0:*}");
}

TEST(Subsheaf, GenerationIsClosure) {
  for (const auto& [name, p] : fx::sheaves()) {
    for (const auto& s : enumerate_subsheaves(*p, p->frame->top())) {
      EXPECT_TRUE(is_subsheaf(*p, s)) << name;
      EXPECT_EQ(generate_subsheaf(*p, s), s) << name;
    }
  }
}

TEST(Subsheaf, CountsMatchBruteForce) {
  for (const auto& [name, p] : fx::sheaves()) {
    if (enumerate_points(*p).size() > 16) continue;
    EXPECT_EQ(enumerate_subsheaves(*p, p->frame->top()).size(), oracle::count_subsheaves(*p)) << name;
  }
}

TEST(Points, Counts) {
  EXPECT_EQ(enumerate_points(terminal(fx::frame_d())).size(), 4u);
  EXPECT_EQ(enumerate_points(*fx::sheaf_ab()).size(), 6u);
  const auto sub = subterminal(fx::frame_d(), 1);
  const auto pts = enumerate_points(sub);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], (Point{0, 0}));
  EXPECT_EQ(pts[1], (Point{1, 0}));
}

TEST(Epsilon, SheafAB) {
  const auto& f = *fx::sheaf_ab();
  EXPECT_EQ(epsilon(f, Point{1, 0}, Point{1, 1}), 0u);
  EXPECT_EQ(epsilon(f, Point{1, 0}, Point{1, 0}), 1u);
  EXPECT_EQ(epsilon(f, Point{3, 0}, Point{3, 1}), 2u);
  EXPECT_EQ(epsilon(f, Point{3, 0}, Point{1, 0}), 1u);
}

TEST(Morphism, Basics) {
  const auto f = fx::sheaf_ab();
  const auto one = share(terminal(fx::frame_d()));
  EXPECT_TRUE(verify_morphism(to_terminal(f, one)).passed);
  EXPECT_TRUE(verify_morphism(identity_morphism(f)).passed);
  auto sw = identity_morphism(f);
  sw.map[1] = {1, 0};
  const auto r = verify_morphism(sw);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness["from"], "1");
  EXPECT_EQ(r.witness["to"], "a");
}

TEST(Morphism, ShapeMismatchThrows) {
  auto m = identity_morphism(fx::sheaf_ab());
  m.map[1].pop_back();
  EXPECT_THROW((void)verify_morphism(m), Error);
}
