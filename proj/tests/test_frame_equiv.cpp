#include <gtest/gtest.h>

#include "posh/fixtures.hpp"
#include "posh/frame_equiv.hpp"
#include "posh/generator.hpp"

using namespace posh;
namespace fx = posh::fixtures;

namespace {

std::vector<std::size_t> sizes(const Presheaf& p) {
  std::vector<std::size_t> s;
  for (std::size_t u = 0; u < p.opens(); ++u) s.push_back(p.size(u));
  return s;
}

}  // namespace

TEST(Phi, MeetWithA) {
  const auto f = phi(fx::meet_a());
  EXPECT_EQ(sizes(f.F()), (std::vector<std::size_t>{1, 2, 1, 2}));
  EXPECT_TRUE(verify_posheaf(f).passed);
  EXPECT_TRUE(is_frame_sheaf(f).passed);
}

TEST(Phi, IntoTrivialFrameIsTerminal) {
  const auto triv = share(chain({"0"}));
  for (const auto& [name, x] : fx::frames()) {
    const FrameHom h{x, triv, std::vector<std::size_t>(x->size(), 0)};
    ASSERT_TRUE(verify_frame_hom(h).passed);
    const auto f = phi(h);
    EXPECT_EQ(sizes(f.F()), std::vector<std::size_t>(x->size(), 1)) << name;
  }
}

TEST(Phi, IdentityIsOmega) {
  for (const auto& [name, x] : fx::frames()) {
    const auto f = phi(identity_hom(x));
    EXPECT_EQ(sizes(f.F()), sizes(omega(x).F())) << name;
    EXPECT_TRUE(find_complete_posheaf_iso(f, omega(x))) << name;
  }
}

TEST(Psi, OmegaRoundTrip) {
  const auto om = omega(fx::frame_d());
  const auto h = psi(om);
  EXPECT_EQ(h.target->size(), 4u);
  for (std::size_t u = 0; u < 4; ++u) EXPECT_EQ(h.target->name(h(u)), fx::frame_d()->name(u));
  const auto r = verify_frame_equivalence(om);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(Psi, PowerSheafGivesSubobjects) {
  const auto p = power_sheaf(fx::sheaf_ab());
  const auto h = psi(p.posheaf);
  EXPECT_EQ(h.target->size(), p.posheaf.F().size(3));
  // h(a) is the full subsheaf of F^a, extended by nothing above a
  EXPECT_EQ(h.target->name(h(1)), "{0:*;a:x,y}");
  EXPECT_EQ(h.target->name(h(3)), describe(*fx::sheaf_ab(), full_subset(*fx::sheaf_ab())));
  EXPECT_TRUE(verify_frame_equivalence(p.posheaf).passed);
}

TEST(Psi, RejectsNonFrameSheaf) {
  try {
    (void)psi(fx::m3_posheaf());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFrameSheaf);
  }
}

TEST(Equivalence, Homs) {
  EXPECT_TRUE(verify_frame_equivalence(fx::meet_a()).passed);
  for (const auto& [name, x] : fx::frames()) EXPECT_TRUE(verify_frame_equivalence(identity_hom(x)).passed) << name;
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const auto x = share(gen_frame(rng, 5));
    const auto h = gen_frame_hom(rng, x, 4);
    ASSERT_TRUE(verify_frame_hom(h).passed);
    const auto r = verify_frame_equivalence(h);
    EXPECT_TRUE(r.passed) << k;
    EXPECT_TRUE(r.all_forms_agree()) << k;
  }
}

TEST(Equivalence, FrameSheafFixtures) {
  for (const auto& [name, p] : fx::complete_posheaves()) {
    if (!is_frame_sheaf(p).passed) continue;
    const auto r = verify_frame_equivalence(p);
    EXPECT_TRUE(r.passed) << name;
    EXPECT_TRUE(r.all_forms_agree()) << name;
  }
}

TEST(PhiOnMorphism, TriangleUnderX) {
  // identity_hom(D) followed by meet_a: Φ(id) → Φ(meet_a) is a frame morphism
  const auto id = identity_hom(fx::frame_d());
  const auto g = fx::meet_a();
  const FrameHom k{fx::frame_d(), g.target, g.map};
  const auto pf = phi(id), pg = phi(g);
  const auto m = phi_on_morphism(id, g, k, pf, pg);
  EXPECT_TRUE(verify_morphism(m).passed);
  const auto r = verify_frame_morphism(pf, pg, m);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
}

TEST(PhiOnMorphism, NonCommutingTriangleThrows) {
  const auto id = identity_hom(fx::frame_d());
  const auto g = fx::meet_a();
  const FrameHom k{fx::frame_d(), g.target, {0, 0, 0, 1}};
  EXPECT_THROW((void)phi_on_morphism(id, g, k, phi(id), phi(g)), Error);
}
