#include <catch_amalgamated.hpp>

#include "crushkit/disk_complex.hpp"
#include "crushkit/peripheral.hpp"
#include "crushkit/special.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

TEST_CASE("matching_system shapes") {
  CHECK(matching_system(fixture("unglued")).equations.size() == 0);
  auto f8 = matching_system(fixture("fig8"));
  CHECK(f8.equations.size() == 12);
  CHECK(f8.unknowns == 14);
  CHECK(matching_system(fixture("solid_torus")).equations.size() == 3);
}

TEST_CASE("vertex links") {
  auto f8 = fixture("fig8");
  auto sk = build_skeleton(f8);
  auto link = vertex_linking(f8, sk, 0);
  CHECK(link == NormalSurface::from_ints({1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0}));
  CHECK(is_admissible(f8, link));
  DiskComplex dc(f8, link);
  CHECK(dc.num_faces() == 8);
  CHECK(dc.euler() == 0);
  auto top = dc.topology();
  CHECK(top.components == 1);
  CHECK(top.orientable);
  CHECK(top.boundary_curves == 0);
  CHECK(top.per_component[0].genus == 1);

  auto doubled = NormalSurface(2) + link + link;
  auto dtop = surface_topology(f8, doubled);
  CHECK(dtop.components == 2);
  CHECK(dtop.euler == 0);
  auto comps = connected_components(f8, doubled);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == link);
  CHECK(comps[1] == link);

  auto st = fixture("solid_torus");
  auto stl = vertex_linking(st, build_skeleton(st), 0);
  CHECK(stl == NormalSurface::from_ints({1, 1, 1, 1, 0, 0, 0}));
  auto stt = surface_topology(st, stl);
  CHECK(stt.is_disk());

  auto u = fixture("unglued");
  CHECK(vertex_linking(u, build_skeleton(u), 2) == NormalSurface::from_ints({0, 0, 1, 0, 0, 0, 0}));
}

TEST_CASE("empty surface") {
  auto f8 = fixture("fig8");
  DiskComplex dc(f8, NormalSurface(2));
  CHECK(dc.num_faces() == 0);
  CHECK(dc.euler() == 0);
  CHECK(dc.num_components() == 0);
}

TEST_CASE("euler characteristic matches the coordinate count") {
  for (const char* name : {"unglued", "fig8", "solid_torus", "layered", "cone", "generated/crush_ok_1",
                           "generated/thin_sums", "generated/annular_holds_3"}) {
    auto tri = fixture(name);
    auto sk = build_skeleton(tri);
    const int B = tri.size() > 3 ? 1 : 3;
    for (const auto& s : surfaces_up_to(tri, B).surfaces) CHECK(surface_topology(tri, s).euler == oracles::euler_oracle(tri, sk, s));
  }
}

TEST_CASE("haken sums add euler characteristic") {
  for (const char* name : {"fig8", "solid_torus", "layered", "generated/crush_ok_2", "generated/thin_sums"}) {
    auto tri = fixture(name);
    auto list = surfaces_up_to(tri, 2).surfaces;
    for (const auto& a : list)
      for (const auto& b : list) {
        auto ab = haken_sum(a, b);
        auto ba = haken_sum(b, a);
        REQUIRE(ab.index() == ba.index());
        if (std::holds_alternative<IncompatibleQuads>(ab)) {
          bool clash = false;
          for (std::size_t t = 0; t < tri.size(); ++t) {
            int ja = a.quad_type_in(static_cast<int>(t)), jb = b.quad_type_in(static_cast<int>(t));
            clash |= ja >= 0 && jb >= 0 && ja != jb;
          }
          CHECK(clash);
          continue;
        }
        const auto& sum = std::get<NormalSurface>(ab);
        CHECK(sum == std::get<NormalSurface>(ba));
        CHECK(is_admissible(tri, sum));
        CHECK(surface_topology(tri, sum).euler == surface_topology(tri, a).euler + surface_topology(tri, b).euler);
      }
  }
}

TEST_CASE("recognize_special") {
  for (const char* name : {"fig8", "solid_torus", "layered", "cone", "generated/thin_sums"}) {
    auto tri = fixture(name);
    auto sk = build_skeleton(tri);
    for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
      auto sp = recognize_special(tri, sk, vertex_linking(tri, sk, static_cast<int>(v)));
      CHECK(sp.kind == Special::Kind::VertexLinking);
      CHECK(sp.index == static_cast<int>(v));
    }
    for (std::size_t e = 0; e < sk.edges.size(); ++e)
      if (auto thin = thin_edge_linking(tri, sk, static_cast<int>(e))) {
        auto sp = recognize_special(tri, sk, *thin);
        CHECK(sp.kind == Special::Kind::ThinEdgeLinking);
        CHECK(is_admissible(tri, *thin));
      }
  }
  auto f8 = fixture("fig8");
  CHECK(recognize_special(f8, build_skeleton(f8), NormalSurface(2)).kind == Special::Kind::None);
}

TEST_CASE("peripheral surfaces") {
  auto lay = fixture("layered");
  CHECK(std::holds_alternative<NotNormalBoundary>(peripheral_surface(lay, build_skeleton(lay))));
  auto st = fixture("solid_torus");
  CHECK(std::holds_alternative<NotNormalBoundary>(peripheral_surface(st, build_skeleton(st))));

  auto cone = fixture("cone");
  auto sk = build_skeleton(cone);
  auto per = peripheral_surface(cone, sk);
  REQUIRE(std::holds_alternative<std::vector<NormalSurface>>(per));
  const auto& comps = std::get<std::vector<NormalSurface>>(per);
  REQUIRE(comps.size() == static_cast<std::size_t>(sk.num_boundary_components));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto top = surface_topology(cone, comps[c]);
    CHECK(top.components == 1);
    CHECK(top.boundary_curves == 0);
    CHECK(top.euler == sk.boundary_euler(static_cast<int>(c)));
    // The cone is a ball: its cone-point link is also parallel to the boundary,
    // and vertex-linking takes precedence.
    auto kind = recognize_special(cone, sk, comps[c]).kind;
    CHECK((kind == Special::Kind::VertexLinking || kind == Special::Kind::BoundaryLinking));
  }
}
