#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posh/completeness.hpp"
#include "posh/fixtures.hpp"
#include "posh/sheaf_locale.hpp"

using namespace posh;
namespace fx = posh::fixtures;

namespace {

std::vector<std::size_t> sizes(const Presheaf& p) {
  std::vector<std::size_t> s;
  for (std::size_t u = 0; u < p.opens(); ++u) s.push_back(p.size(u));
  return s;
}

bool iso_over_x(const LocaleOverX& a, const LocaleOverX& b) {
  const auto iso = find_frame_iso(a.Y(), b.Y());
  if (!iso) return false;
  for (std::size_t x = 0; x < a.X().size(); ++x)
    if ((*iso)[a.fstar(x)] != b.fstar(x)) return false;
  return true;
}

}  // namespace

TEST(Lambda, TerminalIsTheBase) {
  for (const auto& [name, x] : fx::frames()) {
    const auto L = lambda(share(terminal(x)));
    EXPECT_EQ(L.locale.Y().size(), x->size()) << name;
    EXPECT_TRUE(find_frame_iso(L.locale.Y(), *x)) << name;
    EXPECT_TRUE(verify_lambda(L).passed) << name;
  }
  EXPECT_EQ(lambda(share(terminal(fx::frame_d()))).elements.size(), 4u);
}

TEST(Lambda, SheafABIsThreeDiscretePoints) {
  const auto L = lambda(fx::sheaf_ab());
  ASSERT_EQ(L.elements.size(), 8u);
  const auto cube = product(*fx::frame_2(), product(*fx::frame_2(), *fx::frame_2()));
  EXPECT_TRUE(find_frame_iso(L.locale.Y(), cube));
  EXPECT_TRUE(verify_lambda(L).passed);
}

TEST(Lambda, EmptyAboveBottomIsTheEmptyLocale) {
  const auto L = lambda(share(subterminal(fx::frame_d(), 0)));
  EXPECT_EQ(L.locale.Y().size(), 1u);
}

TEST(Lambda, CountsMatchBruteForce) {
  for (const auto& [name, p] : fx::presheaves()) {
    if (enumerate_points(*p).size() > 9) continue;
    EXPECT_EQ(lambda(p).elements.size(), oracle::count_lambda(*p)) << name;
    EXPECT_EQ(lambda_elements(*p), lambda_elements_oracle(*p)) << name;
  }
}

TEST(Lambda, MapToTerminal) {
  const auto f = fx::sheaf_ab();
  const auto one = share(terminal(fx::frame_d()));
  const auto lf = lambda(f), l1 = lambda(one);
  const auto h = lambda_on_morphism(to_terminal(f, one), lf, l1);
  EXPECT_TRUE(verify_lambda_morphism(h, lf, l1).passed);
  // Λ(1) = O(X), so the reindexing is f* itself
  for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(h(l1.locale.fstar(x)), lf.locale.fstar(x));
}

TEST(Lambda, CoverIsLocalHomeomorphism) {
  for (const auto& [name, p] : fx::sheaves()) {
    const auto L = lambda(p);
    const auto cover = lambda_cover(L);
    std::size_t j = L.locale.Y().bottom();
    for (auto c : cover) {
      j = L.locale.Y().join(j, c);
      EXPECT_TRUE(open_inclusion_part(L.locale, c)) << name;
    }
    EXPECT_EQ(j, L.locale.Y().top()) << name;
    EXPECT_TRUE(is_local_homeomorphism(L.locale).passed) << name;
  }
}

TEST(LocalHomeomorphism, Fixtures) {
  EXPECT_TRUE(is_local_homeomorphism(open_inclusion(fx::frame_d(), 1)).passed);
  EXPECT_TRUE(is_local_homeomorphism(identity_locale(fx::frame_3())).passed);
  const auto r = is_local_homeomorphism(fx::non_lh_chain());
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witness["join"], "m");
}

TEST(Gamma, IdentityAndOpenInclusion) {
  for (const auto& [name, x] : fx::frames()) {
    const auto g = gamma(identity_locale(x));
    EXPECT_EQ(sizes(*g.sheaf), std::vector<std::size_t>(x->size(), 1)) << name;
  }
  const auto g = gamma(open_inclusion(fx::frame_d(), 1));
  EXPECT_TRUE(is_subterminal_shape(*g.sheaf, 1));
  EXPECT_EQ(g.sheaf->size(2), 0u);
  EXPECT_TRUE(is_sheaf(*g.sheaf));
}

TEST(Gamma, SectionsMatchBruteForce) {
  for (const auto& [name, f] : fx::locales()) {
    if (f.Y().size() > 8) continue;
    const auto g = gamma(f);
    for (std::size_t u = 0; u < f.X().size(); ++u) EXPECT_EQ(g.sheaf->size(u), oracle::count_sections(f, u)) << name;
    EXPECT_TRUE(is_sheaf(*g.sheaf)) << name;
  }
}

TEST(Unit, IsoOnSheaves) {
  for (const auto& [name, p] : fx::sheaves()) {
    const auto r = verify_sh_lh_equivalence(p);
    EXPECT_TRUE(r.passed) << name;
  }
  const auto L = lambda(share(terminal(fx::frame_d())));
  const auto eta = unit(L, gamma(L.locale));
  EXPECT_FALSE(bijection_failure(eta));
}

TEST(Unit, NotIsoOnBrokenPresheaf) {
  const auto r = verify_sh_lh_equivalence(fx::broken_ab());
  EXPECT_FALSE(r.passed);
}

TEST(Counit, IsoExactlyOnLocalHomeomorphisms) {
  for (const auto& [name, f] : fx::locales()) {
    const bool lh = is_local_homeomorphism(f).passed;
    EXPECT_EQ(verify_sh_lh_equivalence(f).passed, lh) << name;
  }
  const auto r = verify_sh_lh_equivalence(fx::non_lh_chain());
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witness.is_null());
}

TEST(Triangles, AllFixtures) {
  for (const auto& [name, p] : fx::presheaves()) EXPECT_TRUE(verify_lambda_triangle(p).passed) << name;
  for (const auto& [name, f] : fx::locales()) EXPECT_TRUE(verify_gamma_triangle(f).passed) << name;
}

TEST(Spatial, Fixtures) {
  EXPECT_TRUE(is_spatial(identity_locale(fx::frame_d())).passed);
  for (const auto& [name, f] : fx::locales())
    if (is_local_homeomorphism(f).passed) EXPECT_TRUE(is_spatial(f).passed) << name;
  const auto r = is_spatial(fx::non_spatial());
  ASSERT_FALSE(r.passed);
  EXPECT_TRUE(r.all_forms_agree());
  EXPECT_EQ(r.witness["pair"], Json({"0", "1"}));
}

TEST(EpsilonInequality, Fixtures) {
  for (const auto& [name, p] : fx::presheaves()) EXPECT_TRUE(verify_epsilon_inequality(*p, 3).passed) << name;
}

TEST(EpsilonInequality, EqualityOnTerminal) {
  EXPECT_TRUE(epsilon_equality(terminal(fx::frame_d()), 3).passed);
  EXPECT_FALSE(epsilon_equality(*fx::sheaf_ab(), 3).passed);
}

TEST(Posl, GammaOfIdentity) {
  const auto g = gamma(identity_locale(fx::frame_d()));
  const auto orders = discrete(g.sheaf).order;
  EXPECT_TRUE(check_posl(g, orders).passed);
  EXPECT_TRUE(check_cposl(g, orders).passed);
}

TEST(Posl, TransportedOmega) {
  const auto om = omega(fx::frame_d());
  const auto L = lambda(om.sheaf);
  const auto g = gamma(L.locale);
  const auto orders = transport_orders(unit(L, g), om.order);
  EXPECT_TRUE(check_posl(g, orders).passed);
  EXPECT_EQ(check_cposl(g, orders).passed, is_complete(om).complete());
  EXPECT_TRUE(check_cposl(g, orders).passed);
}

TEST(Posl, DiscreteSheafABFailsCposl1) {
  const auto f = fx::sheaf_ab_discrete();
  const auto L = lambda(f.sheaf);
  const auto g = gamma(L.locale);
  const auto orders = transport_orders(unit(L, g), f.order);
  EXPECT_TRUE(check_posl(g, orders).passed);
  const auto r = check_cposl(g, orders);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.violation, "direct: CPOSL1");
}

TEST(Posl, Pos3BreakFailsPosl) {
  const auto f = fx::sheaf_of_posets_ab();
  const auto L = lambda(f.sheaf);
  const auto g = gamma(L.locale);
  const auto orders = transport_orders(unit(L, g), f.order);
  EXPECT_FALSE(check_posl(g, orders).passed);
}

TEST(Posl, NonLocalHomeomorphismThrows) {
  const auto f = fx::non_lh_chain();
  const auto g = gamma(f);
  EXPECT_THROW((void)check_posl(g, discrete(g.sheaf).order), Error);
}

TEST(LocaleIso, LambdaGammaOfOpenInclusion) {
  const auto f = open_inclusion(fx::frame_d(), 1);
  EXPECT_TRUE(iso_over_x(lambda(gamma(f).sheaf).locale, f));
}
