#include <catch_amalgamated.hpp>

#include "crushkit/enumerate.hpp"
#include "crushkit/isomorphism.hpp"
#include "crushkit/io.hpp"
#include "crushkit/random_tri.hpp"
#include "crushkit/transport.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

namespace {
NormalSurface fig8_link() { return NormalSurface::from_ints({1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0}); }
}  // namespace

TEST_CASE("decompose: fig8 along its vertex link") {
  auto f8 = fixture("fig8");
  auto dec = decompose(f8, fig8_link());
  REQUIRE(std::holds_alternative<Decomposition>(dec));
  const auto& d = std::get<Decomposition>(dec);
  CHECK(d.count_in_x(RegionKind::TruncTet) == 2);
  CHECK(d.count_in_x(RegionKind::Prism) == 0);
  CHECK(d.count_in_x(RegionKind::TriBlock) == 0);
  CHECK(prism_chains(d).chains.empty());
  auto pr = product_region(d);
  CHECK(!pr.x_equals_p);
  CHECK(pr.trivial());
  for (const auto& c : pr.components) {
    CHECK(c.vertical_edges == 1);
    CHECK(c.trapezoids == 0);
    CHECK(c.blocks == 0);
  }
  CHECK(pr.components.size() == 2);
}

TEST_CASE("decompose: empty surface has no vertex-free component") {
  auto dec = decompose(fixture("fig8"), NormalSurface(2));
  REQUIRE(std::holds_alternative<Rejection>(dec));
  CHECK(std::get<Rejection>(dec).reason == CrushFailure::NoVertexFreeComponent);
}

TEST_CASE("decompose: doubled link") {
  auto f8 = fixture("fig8");
  auto s = fig8_link() + fig8_link();
  auto dec = decompose(f8, s);
  REQUIRE(std::holds_alternative<Decomposition>(dec));
  const auto& d = std::get<Decomposition>(dec);
  CHECK(d.count_in_x(RegionKind::TruncTet) == 2);
  CHECK(d.count_in_x(RegionKind::TriBlock) == 0);
  CHECK(d.cells.vertex_free_components().size() == 2);

  // The slab between the copies, taken as X, is all product.
  RegionKey slab{0, RegionKind::TriBlock, 0, 0};
  auto res = crush_along(f8, s, slab);
  REQUIRE(std::holds_alternative<CrushObstruction>(res));
  CHECK(std::get<CrushObstruction>(res).reason == CrushFailure::XEqualsProduct);
  auto pd = std::get<Decomposition>(decompose(f8, s, slab));
  auto pr = product_region(pd);
  CHECK(pr.x_equals_p);
  // The slab is a torus times an interval: not a trivial product.
  CHECK(!pr.trivial());
}

TEST_CASE("crush: identity crush of fig8") {
  auto f8 = fixture("fig8");
  auto res = crush_along(f8, fig8_link());
  REQUIRE(std::holds_alternative<CrushOutcome>(res));
  const auto& out = std::get<CrushOutcome>(res);
  CHECK(out.crushed.size() == 2);
  CHECK(validate(out.crushed).ok());
  CHECK(isomorphic(out.crushed, f8).has_value());
  for (const auto& s : surfaces_up_to(f8, 2).surfaces) {
    if (!is_closed(f8, s)) continue;
    auto pr = place_in_blocks(out, s);
    REQUIRE(std::holds_alternative<Placement>(pr));
    auto star = push_forward(out, std::get<Placement>(pr));
    CHECK(star == s);
    CHECK(lift(out, star) == s);
  }
  for (const auto& s : surfaces_up_to(out.crushed, 2).surfaces) CHECK(push_forward(out, lift(out, s)) == s);
}

namespace {
NormalSurface seeded_surface(const std::string& role) {
  auto text = test_support::read_file(std::string(CRUSHKIT_FIXTURE_DIR) + "/generated/" + role + ".surf");
  auto file = parse_surfaces(text);
  REQUIRE(file.surfaces.size() == 1);
  return file.surfaces.front();
}
}  // namespace

TEST_CASE("crush: seeded instances with quads and prism chains") {
  for (int k = 1; k <= 5; ++k) {
    const std::string role = "crush_ok_" + std::to_string(k);
    CAPTURE(role);
    auto tri = fixture("generated/" + role);
    auto s = seeded_surface(role);
    auto res = crush_along(tri, s);
    REQUIRE(std::holds_alternative<CrushOutcome>(res));
    const auto& out = std::get<CrushOutcome>(res);
    CHECK(!out.chains.chains.empty());
    CHECK(validate(out.crushed).ok());
    for (const auto& f : surfaces_up_to(tri, 2).surfaces) {
      if (!is_closed(tri, f)) continue;
      auto pl = place_in_blocks(out, f);
      if (!std::holds_alternative<Placement>(pl)) continue;
      auto star = push_forward(out, std::get<Placement>(pl));
      CHECK(is_admissible(out.crushed, star));
      CHECK(lift(out, star) == f);
      auto a = surface_topology(tri, f), b = surface_topology(out.crushed, star);
      CHECK(a.euler == b.euler);
      CHECK(a.orientable == b.orientable);
      CHECK(a.components == b.components);
      CHECK(a.per_component == b.per_component);
    }
    for (const auto& g : surfaces_up_to(out.crushed, 2).surfaces) CHECK(push_forward(out, lift(out, g)) == g);
  }
}

TEST_CASE("crush: seeded obstructions") {
  for (auto [role, reason] : {std::pair{"crush_XEqualsProduct", CrushFailure::XEqualsProduct},
                              std::pair{"crush_NontrivialProduct", CrushFailure::NontrivialProduct},
                              std::pair{"crush_CycleOfTruncatedPrisms", CrushFailure::CycleOfTruncatedPrisms}}) {
    CAPTURE(role);
    auto res = crush_along(fixture(std::string("generated/") + role), seeded_surface(role));
    REQUIRE(std::holds_alternative<CrushObstruction>(res));
    CHECK(std::get<CrushObstruction>(res).reason == reason);
  }
}

TEST_CASE("crush: random closed triangulations never break the bijection") {
  std::mt19937_64 rng(20261016);
  for (int round = 0; round < 40; ++round) {
    auto tri = random_manifold(2, 0, rng);
    for (const auto& s : vertex_surfaces(tri).surfaces) {
      if (!is_closed(tri, s)) continue;
      auto res = crush_along(tri, s);
      if (!std::holds_alternative<CrushOutcome>(res)) continue;
      const auto& out = std::get<CrushOutcome>(res);
      REQUIRE(validate(out.crushed).ok());
      for (const auto& g : surfaces_up_to(out.crushed, 2).surfaces) {
        auto f = lift(out, g);
        CHECK(is_closed(tri, f));
        CHECK(push_forward(out, f) == g);
      }
    }
  }
}
