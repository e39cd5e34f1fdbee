// Invariants checked over a seeded corpus against the brute-force oracles.

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posh/completeness.hpp"
#include "posh/fixtures.hpp"
#include "posh/generator.hpp"
#include "posh/io.hpp"
#include "posh/suite.hpp"

using namespace posh;

namespace {

struct Sample {
  FramePtr frame;
  PoSheaf posheaf;
};

std::vector<Sample> corpus(std::uint64_t seed, std::size_t n, std::size_t max_opens = 5, std::size_t max_carrier = 2) {
  std::vector<Sample> out;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto x = share(gen_frame(rng, max_opens));
    out.push_back({x, gen_posheaf(rng, x, max_carrier)});
  }
  return out;
}

}  // namespace

TEST(Properties, HeytingIsTheLargestSolution) {
  for (const auto& s : corpus(1, 60)) {
    const auto& X = *s.frame;
    for (std::size_t x = 0; x < X.size(); ++x)
      for (std::size_t y = 0; y < X.size(); ++y) ASSERT_EQ(X.heyting(x, y), oracle::heyting(X, x, y));
  }
}

TEST(Properties, SheafAxiomAgreesWithBruteForce) {
  Rng rng(2);
  for (const auto& s : corpus(2, 60)) {
    ASSERT_TRUE(oracle::is_sheaf(s.posheaf.F()));
    if (auto q = remove_amalgamation(rng, s.posheaf.F())) EXPECT_FALSE(oracle::is_sheaf(*q));
  }
}

TEST(Properties, SubsheafCountsAgree) {
  for (const auto& s : corpus(3, 40)) {
    const auto& F = s.posheaf.F();
    if (enumerate_points(F).size() > 14) continue;
    EXPECT_EQ(enumerate_subsheaves(F, F.frame->top()).size(), oracle::count_subsheaves(F));
  }
}

TEST(Properties, LambdaCountsAgree) {
  for (const auto& s : corpus(4, 40)) {
    const auto& F = s.posheaf.F();
    if (enumerate_points(F).size() > 8) continue;
    EXPECT_EQ(lambda(s.posheaf.sheaf).elements.size(), oracle::count_lambda(F));
  }
}

TEST(Properties, GammaSectionCountsAgree) {
  for (const auto& s : corpus(5, 30, 4, 2)) {
    const auto L = lambda(s.posheaf.sheaf);
    if (L.locale.Y().size() > 8) continue;
    const auto g = gamma(L.locale);
    for (std::size_t u = 0; u < s.frame->size(); ++u) {
      EXPECT_EQ(g.sheaf->size(u), oracle::count_sections(L.locale, u));
      EXPECT_EQ(g.sheaf->size(u), s.posheaf.F().size(u));
    }
  }
}

TEST(Properties, PointOrderAgrees) {
  for (const auto& s : corpus(6, 40)) {
    const auto pts = enumerate_points(s.posheaf.F());
    for (auto a : pts)
      for (auto b : pts) ASSERT_EQ(point_leq(s.posheaf, a, b).holds, oracle::point_leq(s.posheaf, a, b));
  }
}

TEST(Properties, CompletenessFormsAgree) {
  for (const auto& s : corpus(7, 60)) {
    try {
      const auto c = is_complete(s.posheaf);
      EXPECT_TRUE(c.consistent());
      if (c.complete()) EXPECT_TRUE(check_finite_completeness(s.posheaf).passed);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
    }
  }
}

TEST(Properties, EpsilonInequality) {
  for (const auto& s : corpus(8, 40)) EXPECT_TRUE(verify_epsilon_inequality(s.posheaf.F(), 2).passed);
}

TEST(Properties, SerializationIsStable) {
  for (const auto& s : corpus(9, 30)) {
    const auto j = io::posheaf_to_json(s.posheaf);
    EXPECT_EQ(io::posheaf_to_json(io::posheaf_from_json(j)).dump(), j.dump());
  }
}

TEST(Properties, SuiteCorpusIsDeterministic) {
  suite::Options o;
  o.instances = 10;
  EXPECT_EQ(suite::corpus_json(suite::corpus(o)).dump(), suite::corpus_json(suite::corpus(o)).dump());
}
