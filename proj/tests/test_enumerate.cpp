#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "crushkit/enumerate.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

namespace {
const std::vector<std::string> kSmall{"unglued", "fig8", "solid_torus", "layered"};

std::vector<NormalSurface> units(std::size_t n) {
  std::vector<NormalSurface> out;
  for (std::size_t i = 0; i < 7 * n; ++i) {
    NormalSurface s(n);
    s.coords[i] = 1;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

TEST_CASE("vertex surfaces: unglued tetrahedron gives the unit vectors") {
  CHECK(vertex_surfaces(fixture("unglued")).surfaces == units(1));
  CHECK(fundamental_surfaces(fixture("unglued")).surfaces == units(1));
}

TEST_CASE("vertex surfaces: fig8 contains the vertex link") {
  auto f8 = fixture("fig8");
  auto vs = vertex_surfaces(f8);
  CHECK(vs.contains(NormalSurface::from_ints({1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0})));
  CHECK(vs.faces == 9);
}

TEST_CASE("vertex surfaces agree with the support oracle") {
  for (const auto& name : kSmall) {
    INFO(name);
    auto tri = fixture(name);
    auto vs = vertex_surfaces(tri);
    auto bounded = surfaces_up_to(tri, 6);
    CHECK(vs.surfaces == oracles::vertex_oracle(bounded.surfaces));
    CHECK(oracles::max_entry(vs.surfaces) <= 6);
    for (const auto& s : vs.surfaces) {
      CHECK(is_admissible(tri, s));
      CHECK(coord_gcd(s) == 1);
    }
    CHECK(std::is_sorted(vs.surfaces.begin(), vs.surfaces.end()));
  }
}

TEST_CASE("fundamental surfaces agree with the indecomposability oracle") {
  for (const auto& name : kSmall) {
    INFO(name);
    auto tri = fixture(name);
    auto fs = fundamental_surfaces(tri);
    auto m = oracles::max_entry(fs.surfaces);
    REQUIRE(m <= 6);
    int bound = static_cast<int>(m);
    // The oracle needs every fundamental coordinate inside the bound.
    auto bounded = surfaces_up_to(tri, bound);
    CHECK(fs.surfaces == oracles::fundamental_oracle(bounded.surfaces));
    auto vs = vertex_surfaces(tri);
    for (const auto& v : vs.surfaces) CHECK(fs.contains(v));
    for (const auto& s : fs.surfaces) CHECK(is_admissible(tri, s));
  }
}

TEST_CASE("bounded surfaces decompose over fundamentals") {
  for (const auto& name : kSmall) {
    INFO(name);
    auto tri = fixture(name);
    auto fs = fundamental_surfaces(tri);
    for (const auto& s : surfaces_up_to(tri, 3).surfaces) {
      if (s.is_zero()) continue;
      auto d = decompose_over(s, fs.surfaces);
      REQUIRE(d);
      NormalSurface sum(tri.size());
      for (auto [i, k] : *d) sum = sum + k * fs.surfaces[i];
      CHECK(sum == s);
    }
  }
}

TEST_CASE("bounded enumeration") {
  auto f8 = fixture("fig8");
  auto zero = surfaces_up_to(f8, 0);
  REQUIRE(zero.surfaces.size() == 1);
  CHECK(zero.surfaces[0].is_zero());
  auto one = surfaces_up_to(f8, 1);
  CHECK(one.contains(NormalSurface::from_ints({1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0})));
  for (const auto& name : kSmall) {
    auto tri = fixture(name);
    for (int b = 0; b < 4; ++b) {
      auto lo = surfaces_up_to(tri, b), hi = surfaces_up_to(tri, b + 1);
      for (const auto& s : lo.surfaces) CHECK(hi.contains(s));
      for (const auto& s : hi.surfaces) CHECK(is_admissible(tri, s));
    }
  }
}

TEST_CASE("fundamental enumeration honours the candidate cap") {
  ::setenv("CRUSHKIT_MAX_CANDIDATES", "3", 1);
  CHECK_THROWS_AS(fundamental_surfaces(fixture("fig8")), SizeExceeded);
  ::unsetenv("CRUSHKIT_MAX_CANDIDATES");
  CHECK_NOTHROW(fundamental_surfaces(fixture("fig8")));
}
