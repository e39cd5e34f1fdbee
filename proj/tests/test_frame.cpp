#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posh/fixtures.hpp"
#include "posh/generator.hpp"

using namespace posh;
namespace fx = posh::fixtures;

namespace {

using Rel = std::vector<std::pair<std::string, std::string>>;

Error build_error(std::vector<std::string> names, const Rel& rel) {
  try {
    FiniteFrame::build(std::move(names), std::span<const std::pair<std::string, std::string>>(rel));
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  return Error(ErrorKind::MalformedInput, "none");
}

}  // namespace

TEST(Frame, PowersetOfTwoPoints) {
  const auto& d = *fx::frame_d();
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.meet(1, 2), d.bottom());
  EXPECT_EQ(d.join(1, 2), d.top());
  EXPECT_EQ(d.join_irreducibles(), (std::vector<std::size_t>{1, 2}));
}

TEST(Frame, PentagonIsNotDistributive) {
  const auto e = build_error({"0", "x", "y", "z", "1"}, {{"0", "x"}, {"x", "z"}, {"z", "1"}, {"0", "y"}, {"y", "1"}});
  EXPECT_EQ(e.kind(), ErrorKind::NotDistributive);
  EXPECT_EQ(e.witness(), Json({"z", "x", "y"}));
  const Rel rel{{"0", "x"}, {"x", "z"}, {"z", "1"}, {"0", "y"}, {"y", "1"}};
  const auto r = verify_frame({"0", "x", "y", "z", "1"}, rel);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "NotDistributive");
}

TEST(Frame, DiamondIsNotDistributive) {
  const auto e = build_error({"0", "p", "q", "r", "1"},
                             {{"0", "p"}, {"0", "q"}, {"0", "r"}, {"p", "1"}, {"q", "1"}, {"r", "1"}});
  EXPECT_EQ(e.kind(), ErrorKind::NotDistributive);
}

TEST(Frame, CycleIsNotAPoset) {
  EXPECT_EQ(build_error({"a", "b"}, {{"a", "b"}, {"b", "a"}}).kind(), ErrorKind::NotAPoset);
}

TEST(Frame, AntichainIsNotALattice) {
  EXPECT_EQ(build_error({"a", "b"}, {}).kind(), ErrorKind::NotALattice);
}

TEST(Frame, DuplicateAndUnknownNames) {
  EXPECT_EQ(build_error({"a", "a"}, {}).kind(), ErrorKind::MalformedInput);
  EXPECT_EQ(build_error({"a"}, {{"a", "b"}}).kind(), ErrorKind::MalformedInput);
}

TEST(Frame, HeytingOnChainAndSquare) {
  const auto& c = *fx::frame_3();
  EXPECT_EQ(c.heyting(1, 0), 0u);
  EXPECT_EQ(c.heyting(2, 1), 1u);
  const auto& d = *fx::frame_d();
  EXPECT_EQ(d.heyting(1, 2), 2u);
}

TEST(Frame, HeytingMatchesScan) {
  for (const auto& [name, f] : fx::frames()) {
    for (std::size_t x = 0; x < f->size(); ++x) {
      EXPECT_EQ(f->heyting(f->bottom(), x), f->top()) << name;
      EXPECT_EQ(f->heyting(x, x), f->top()) << name;
      for (std::size_t y = 0; y < f->size(); ++y) {
        EXPECT_EQ(f->heyting(x, y), oracle::heyting(*f, x, y)) << name;
        EXPECT_TRUE(f->leq(f->meet(f->heyting(x, y), x), y));
      }
    }
  }
}

TEST(Frame, CoversAreAllJoinsToU) {
  for (const auto& [name, f] : fx::frames())
    for (std::size_t u = 0; u < f->size(); ++u) {
      auto mine = f->covers(u);
      auto ref = oracle::all_covers(*f, u);
      for (auto& c : mine) std::sort(c.begin(), c.end());
      for (auto& c : ref) std::sort(c.begin(), c.end());
      std::sort(mine.begin(), mine.end());
      std::sort(ref.begin(), ref.end());
      EXPECT_EQ(mine, ref) << name << " u=" << u;
    }
}

TEST(Frame, EmptyCoverOfBottom) {
  const auto& cs = fx::frame_d()->covers(0);
  EXPECT_NE(std::find(cs.begin(), cs.end(), std::vector<std::size_t>{}), cs.end());
}

TEST(Frame, ProductHasSixElements) {
  const auto& p = *fx::frame_2x3();
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(p.join_irreducibles().size(), 3u);
}

TEST(FrameHom, Laws) {
  EXPECT_TRUE(verify_frame_hom(identity_hom(fx::frame_d())).passed);
  EXPECT_TRUE(verify_frame_hom(fx::meet_a()).passed);
  const FrameHom top{fx::frame_3(), fx::frame_3(), {2, 2, 2}};
  const auto r = verify_frame_hom(top);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "arbitrary join");
  EXPECT_EQ(r.witness, Json({{"join_of", Json::array()}}));
}

TEST(FrameHom, MeetFailure) {
  // on FRAME_D, a ↦ 1, b ↦ 1 keeps joins but not a ∧ b = 0
  const FrameHom h{fx::frame_d(), fx::frame_2(), {0, 1, 1, 1}};
  const auto r = verify_frame_hom(h);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "finite meet");
}

TEST(FrameHom, IsoSearch) {
  const auto sw = find_frame_iso(*fx::frame_d(), *fx::frame_d());
  ASSERT_TRUE(sw);
  EXPECT_FALSE(find_frame_iso(*fx::frame_d(), *fx::frame_3()));
}

TEST(Adjoint, MeetWithAHasInclusionAsLeftAdjoint) {
  const auto& d = *fx::frame_d();
  const auto down_a = d.down(1);
  const MonotoneMap f{d.order(), down_a.order(), {0, 1, 0, 1}};
  const auto g = left_adjoint(f);
  ASSERT_TRUE(g);
  EXPECT_EQ(g.adjoint->table, (std::vector<std::size_t>{0, 1}));
}

TEST(Adjoint, Identity) {
  const auto& c = *fx::frame_3();
  const MonotoneMap id{c.order(), c.order(), {0, 1, 2}};
  EXPECT_EQ(left_adjoint(id).adjoint->table, id.table);
  EXPECT_EQ(right_adjoint(id).adjoint->table, id.table);
}

TEST(Adjoint, EndpointInclusion) {
  const MonotoneMap f{fx::frame_2()->order(), fx::frame_3()->order(), {0, 2}};
  const auto g = left_adjoint(f);
  ASSERT_TRUE(g);
  EXPECT_EQ(g.adjoint->table, (std::vector<std::size_t>{0, 1, 1}));
}

TEST(Adjoint, AbsentWithWitness) {
  // keeps joins but not a ∧ b: a right adjoint and no left adjoint
  const auto& d = *fx::frame_d();
  const MonotoneMap f{d.order(), fx::frame_2()->order(), {0, 1, 1, 1}};
  const auto g = right_adjoint(f);
  const auto l = left_adjoint(f);
  EXPECT_FALSE(l);
  EXPECT_NE(l.witness, kNone);
  EXPECT_TRUE(g);
}

TEST(Adjoint, NotMonotone) {
  const MonotoneMap f{fx::frame_2()->order(), fx::frame_2()->order(), {1, 0}};
  try {
    (void)left_adjoint(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMonotone);
  }
}

TEST(Adjoint, LeftAdjointIffMeetsPreserved) {
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto x = share(gen_frame(rng, 5));
    const auto y = share(gen_frame(rng, 5));
    std::vector<std::size_t> t(x->size());
    for (auto& v : t) v = rng.below(y->size());
    const MonotoneMap f{x->order(), y->order(), t};
    if (f.monotonicity_violation()) continue;
    bool meets = f(x->top()) == y->top();
    for (std::size_t a = 0; a < x->size(); ++a)
      for (std::size_t b = 0; b < x->size(); ++b) meets = meets && f(x->meet(a, b)) == y->meet(f(a), f(b));
    const auto g = left_adjoint(f);
    EXPECT_EQ(static_cast<bool>(g), meets);
    if (!g) continue;
    for (std::size_t a = 0; a < x->size(); ++a)
      for (std::size_t b = 0; b < y->size(); ++b) EXPECT_EQ(x->leq((*g.adjoint)(b), a), y->leq(b, f(a)));
  }
}
