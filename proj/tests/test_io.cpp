#include <gtest/gtest.h>

#include "posh/fixtures.hpp"
#include "posh/io.hpp"

using namespace posh;
namespace fx = posh::fixtures;

namespace {

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::MalformedInput;
}

}  // namespace

TEST(Io, FrameRoundTrip) {
  for (const auto& [name, x] : fx::frames()) {
    const auto j = io::frame_to_json(*x);
    const auto y = io::frame_from_json(j);
    EXPECT_EQ(y->names(), x->names()) << name;
    EXPECT_EQ(io::frame_to_json(*y), j) << name;
  }
}

TEST(Io, PresheafRoundTrip) {
  for (const auto& [name, p] : fx::presheaves()) {
    const auto j = io::presheaf_to_json(*p);
    const auto q = io::presheaf_from_json(j);
    EXPECT_EQ(q->carriers, p->carriers) << name;
    EXPECT_EQ(q->res, p->res) << name;
  }
}

TEST(Io, PosheafRoundTrip) {
  for (const auto& [name, p] : fx::posheaves()) {
    const auto j = io::posheaf_to_json(p);
    const auto q = io::posheaf_from_json(j);
    EXPECT_EQ(io::posheaf_to_json(q), j) << name;
  }
}

TEST(Io, LocaleAndHomRoundTrip) {
  for (const auto& [name, f] : fx::locales()) {
    const auto j = io::locale_to_json(f);
    EXPECT_EQ(io::locale_to_json(io::locale_from_json(j)), j) << name;
  }
  const auto h = io::frame_hom_to_json(fx::meet_a());
  EXPECT_EQ(io::frame_hom_to_json(io::frame_hom_from_json(h)), h);
}

TEST(Io, ForcedRestrictionsAreFilled) {
  // only the 1→a and 1→b tables are given; the rest are forced
  const Json j = {{"frame", io::frame_to_json(*fx::frame_d())},
                  {"carriers", {{"0", {"*"}}, {"a", {"x", "y"}}, {"b", {"z"}}, {"1", {"(x,z)", "(y,z)"}}}},
                  {"res", {{"1->a", {{"(x,z)", "x"}, {"(y,z)", "y"}}}}}};
  const auto p = io::presheaf_from_json(j);
  EXPECT_EQ(p->res, fx::sheaf_ab()->res);
}

TEST(Io, MissingRestriction) {
  const Json j = {{"frame", io::frame_to_json(*fx::frame_d())},
                  {"carriers", {{"0", {"*"}}, {"a", {"x", "y"}}, {"b", {"z"}}, {"1", {"(x,z)", "(y,z)"}}}}};
  EXPECT_EQ(error_of([&] { (void)io::presheaf_from_json(j); }), ErrorKind::MissingRestriction);
}

TEST(Io, MalformedDocuments) {
  EXPECT_EQ(error_of([] { (void)io::frame_from_json(Json{{"leq", Json::array()}}); }), ErrorKind::MalformedInput);
  EXPECT_EQ(error_of([] { (void)io::frame_from_json(Json{{"elements", "0"}}); }), ErrorKind::MalformedInput);
  const Json bad_open = {{"frame", io::frame_to_json(*fx::frame_2())}, {"carriers", {{"q", {"*"}}}}};
  EXPECT_EQ(error_of([&] { (void)io::presheaf_from_json(bad_open); }), ErrorKind::MalformedInput);
  const Json upward = {{"frame", io::frame_to_json(*fx::frame_2())},
                       {"carriers", {{"0", {"*"}}, {"1", {"*"}}}},
                       {"res", {{"0->1", {{"*", "*"}}}}}};
  EXPECT_EQ(error_of([&] { (void)io::presheaf_from_json(upward); }), ErrorKind::MalformedInput);
}

TEST(Io, PosheafWithoutOrder) {
  const auto j = io::presheaf_to_json(*fx::sheaf_ab());
  EXPECT_EQ(error_of([&] { (void)io::posheaf_from_json(j); }), ErrorKind::OrderNotProvided);
}

TEST(Io, MorphismRoundTrip) {
  const auto f = fx::sheaf_ab();
  const auto m = identity_morphism(f);
  const auto j = io::morphism_to_json(m);
  EXPECT_EQ(io::morphism_from_json(j, f, f).map, m.map);
}
