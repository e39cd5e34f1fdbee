#include <gtest/gtest.h>

#include "posh/fixtures.hpp"
#include "posh/generator.hpp"
#include "posh/io.hpp"

using namespace posh;

TEST(GenFrame, OneOpen) {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.max_opens = 1;
  EXPECT_EQ(gen_frame(cfg).size(), 1u);
}

TEST(GenFrame, AlwaysAFrame) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    GenConfig cfg;
    cfg.seed = k;
    const auto f = gen_frame(cfg);
    EXPECT_LE(f.size(), 6u);
    const auto j = io::frame_to_json(f);
    const auto d = io::frame_doc(j);
    EXPECT_TRUE(verify_frame(d.names, d.leq).passed) << k;
  }
}

TEST(GenFrame, NoPentagonOrDiamond) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    GenConfig cfg;
    cfg.seed = k;
    const auto f = gen_frame(cfg);
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = 0; b < f.size(); ++b)
        for (std::size_t c = 0; c < f.size(); ++c)
          ASSERT_EQ(f.meet(a, f.join(b, c)), f.join(f.meet(a, b), f.meet(a, c)));
  }
}

TEST(GenFrame, Deterministic) {
  GenConfig cfg;
  cfg.seed = 99;
  const auto a = share(gen_frame(cfg)), b = share(gen_frame(cfg));
  EXPECT_EQ(io::frame_to_json(*a).dump(), io::frame_to_json(*b).dump());
  EXPECT_EQ(io::posheaf_to_json(gen_posheaf(a, cfg)).dump(), io::posheaf_to_json(gen_posheaf(b, cfg)).dump());
}

TEST(GenHom, AlwaysAHom) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto x = share(gen_frame(rng, 6));
    EXPECT_TRUE(verify_frame_hom(gen_frame_hom(rng, x, 4)).passed);
  }
}

TEST(GenPosheaf, AlwaysAPosheaf) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    GenConfig cfg;
    cfg.seed = k;
    const auto x = share(gen_frame(cfg));
    const auto p = gen_posheaf(x, cfg);
    EXPECT_TRUE(verify_presheaf(p.F()).passed) << k;
    EXPECT_TRUE(verify_sheaf(p.F()).passed) << k;
    const auto r = verify_posheaf(p);
    EXPECT_TRUE(r.passed) << k;
    EXPECT_TRUE(r.all_forms_agree()) << k;
  }
}

TEST(Mutation, BreakPos3) {
  int applied = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(k);
    const auto x = share(gen_frame(rng, 6));
    const auto p = gen_posheaf(rng, x, 3);
    const auto q = break_pos3(rng, p);
    if (!q) continue;
    ++applied;
    EXPECT_TRUE(is_sheaf(q->F()));
    const auto r = verify_posheaf(*q);
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.violation, "definition: POS3") << k;
  }
  EXPECT_GE(applied, 10);
}

TEST(Mutation, RemoveAmalgamation) {
  int applied = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(k);
    const auto x = share(gen_frame(rng, 6));
    const auto p = gen_posheaf(rng, x, 3);
    const auto q = remove_amalgamation(rng, p.F());
    if (!q) continue;
    ++applied;
    EXPECT_TRUE(verify_presheaf(*q).passed);
    const auto c = verify_sheaf(*q);
    ASSERT_FALSE(c.passed);
    EXPECT_EQ(c.violation->amalgamation_count, 0u);
  }
  EXPECT_GE(applied, 10);
}

TEST(Mutation, BreakNaturality) {
  int applied = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(k);
    const auto x = share(gen_frame(rng, 6));
    const auto p = gen_posheaf(rng, x, 3);
    const auto m = break_naturality(rng, identity_morphism(p.sheaf));
    if (!m) continue;
    ++applied;
    EXPECT_FALSE(verify_morphism(*m).passed);
  }
  EXPECT_GE(applied, 10);
}

TEST(Mutation, BreakDistributivity) {
  int applied = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(k);
    const auto x = gen_frame(rng, 6);
    const auto raw = break_distributivity(rng, x);
    if (!raw) continue;
    ++applied;
    const auto r = verify_frame(raw->names, raw->leq);
    EXPECT_EQ(r.violation, "NotDistributive");
  }
  EXPECT_GE(applied, 10);
}

TEST(Mutation, NotApplicableOnTrivialFrame) {
  Rng rng(0);
  const auto one = chain({"0"});
  EXPECT_FALSE(break_distributivity(rng, one));
  const auto t = share(terminal(share(chain({"0"}))));
  EXPECT_FALSE(remove_amalgamation(rng, *t));
}

TEST(Mutation, NamesRoundTrip) {
  for (auto m : {Mutation::BreakPos3, Mutation::BreakNaturality, Mutation::BreakDistributivity,
                 Mutation::RemoveAmalgamation, Mutation::BreakMeetSquare})
    EXPECT_EQ(mutation_from_string(to_string(m)), m);
  EXPECT_FALSE(mutation_from_string("nope"));
}
