#include <catch_amalgamated.hpp>

#include "crushkit/efficiency.hpp"
#include "crushkit/io.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

namespace {

NormalSurface seeded_surface(const std::string& role) {
  auto file = parse_surfaces(test_support::read_file(std::string(CRUSHKIT_FIXTURE_DIR) + "/generated/" + role + ".surf"));
  REQUIRE(file.surfaces.size() == 1);
  return file.surfaces.front();
}

}  // namespace

TEST_CASE("zero-efficiency: fig8 holds") {
  auto r = check_zero_efficient(fixture("fig8"));
  CHECK(r.setting == Setting::Ideal);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(!r.witness);
  CHECK(r.provenance == "vertex");
}

TEST_CASE("zero-efficiency: bounded fixtures with a non-vertex-linking disk") {
  auto lay = check_zero_efficient(fixture("layered"));
  CHECK(lay.setting == Setting::Bounded);
  REQUIRE(lay.verdict == Verdict::Fails);
  CHECK(lay.witness->surface == NormalSurface::from_ints({1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 2}));
  CHECK(is_connected_disk(lay.witness->topology));
  CHECK(lay.witness->special.kind != Special::Kind::VertexLinking);

  auto st = check_zero_efficient(fixture("solid_torus"));
  REQUIRE(st.verdict == Verdict::Fails);
  CHECK(st.witness->surface == NormalSurface::from_ints({1, 1, 0, 0, 0, 0, 1}));
  CHECK(st.witness->slopes.size() == 1);
}

TEST_CASE("zero-efficiency: an interior vertex fails a bounded triangulation") {
  auto cone = fixture("cone");
  auto r = check_zero_efficient(cone);
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.reason.find("interior vertex") != std::string::npos);
  CHECK(r.witness->special.kind == Special::Kind::VertexLinking);
  CHECK(is_connected_sphere(r.witness->topology));
}

TEST_CASE("zero-efficiency: closed triangulation with a non-vertex-linking sphere") {
  auto tri = fixture("generated/zero_fails_sphere");
  auto r = check_zero_efficient(tri);
  CHECK(r.setting == Setting::ClosedMaterial);
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.witness->surface == seeded_surface("zero_fails_sphere"));
  CHECK(is_connected_sphere(r.witness->topology));
  CHECK(r.witness->special.kind != Special::Kind::VertexLinking);
}

TEST_CASE("annular-efficiency: out of scope without material boundary") {
  auto r = check_annular_efficient(fixture("fig8"));
  CHECK(r.verdict == Verdict::Undetermined);
  CHECK(!r.witness);
}

TEST_CASE("annular-efficiency: solid torus is never Holds") {
  auto r = check_annular_efficient(fixture("solid_torus"));
  CHECK(r.verdict == Verdict::Fails);
  CHECK(r.reason.rfind("not 0-efficient", 0) == 0);
}

TEST_CASE("annular-efficiency: seeded Holds instances") {
  for (const char* role : {"generated/annular_holds_2", "generated/annular_holds_3"}) {
    auto tri = fixture(role);
    auto sk = build_skeleton(tri);
    auto r = check_annular_efficient(tri);
    REQUIRE(r.verdict == Verdict::Holds);
    CHECK(!r.witness);
    for (const auto& s : vertex_surfaces(tri).surfaces) {
      auto top = surface_topology(tri, s);
      CHECK(!is_connected_sphere(top));
      if (is_connected_disk(top)) CHECK(recognize_special(tri, sk, s).kind == Special::Kind::VertexLinking);
    }
  }
}

TEST_CASE("annular-efficiency: seeded Fails instance has an essential annulus") {
  auto tri = fixture("generated/annular_fails");
  auto sk = build_skeleton(tri);
  auto r = check_annular_efficient(tri);
  REQUIRE(r.verdict == Verdict::Fails);
  CHECK(r.witness->surface == seeded_surface("annular_fails"));
  CHECK(is_connected_annulus(r.witness->topology));
  CHECK(r.witness->special.kind != Special::Kind::ThinEdgeLinking);
  bool essential = false;
  for (const auto& c : boundary_curves(tri, sk, r.witness->surface).curves) essential |= !c.homology.empty();
  CHECK(essential);
}

TEST_CASE("boundary-efficiency: layered fixture has no normal boundary") {
  auto r = boundary_efficiency_candidates(fixture("layered"));
  CHECK(std::holds_alternative<NoNormalBoundary>(r));
}

TEST_CASE("boundary-efficiency: cone candidates") {
  auto r = boundary_efficiency_candidates(fixture("cone"));
  REQUIRE(std::holds_alternative<EfficiencyReport>(r));
  const auto& rep = std::get<EfficiencyReport>(r);
  CHECK(rep.verdict == Verdict::Undetermined);
  REQUIRE(!rep.candidates.empty());
  CHECK(rep.assumed.size() == 3);
  for (const auto& w : rep.candidates) {
    CHECK(w.topology.components == 1);
    CHECK(w.topology.orientable);
    CHECK(w.special.kind != Special::Kind::BoundaryLinking);
  }
}

TEST_CASE("boundary-efficiency: closed input is rejected") {
  auto fig8 = fixture("fig8");
  CHECK_THROWS_AS(boundary_efficiency_candidates(fig8, vertex_surfaces(fig8)), std::invalid_argument);
}
