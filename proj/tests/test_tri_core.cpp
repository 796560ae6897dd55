#include <catch_amalgamated.hpp>

#include "crushkit/isomorphism.hpp"
#include "crushkit/vertex_kind.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

namespace {
const std::vector<std::string> kFixtures{"unglued", "fig8", "fig8_relabelled", "solid_torus", "cone"};
}

TEST_CASE("parse: unglued tetrahedron") {
  auto tri = parse_triangulation("tets 1\n0: - - - -\n");
  CHECK(tri.size() == 1);
  CHECK(tri.num_boundary_faces() == 4);
}

TEST_CASE("parse: fixture shapes") {
  auto st = fixture("solid_torus");
  CHECK(st.size() == 1);
  CHECK(st.num_boundary_faces() == 2);
  CHECK(st.num_internal_face_pairs() == 1);
  auto f8 = fixture("fig8");
  CHECK(f8.size() == 2);
  CHECK(f8.num_boundary_faces() == 0);
  CHECK(f8.ideal());
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse_triangulation("tets 2\n0: - - - -\n1: 5:0123 - - -\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(parse_triangulation("tets 1\n0: 0:0124 - - -\n"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\n0: 0:012 - - -\n"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\n0: - - -\n"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("tetz 1\n"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("tets 2\n0: - - - -\n"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("tets 1\n0: - - - -\n0: - - - -\n"), ParseError);
}

TEST_CASE("parse: format round trip") {
  for (const auto& name : kFixtures) {
    auto tri = fixture(name);
    CHECK(parse_triangulation(format_triangulation(tri)) == tri);
  }
}

TEST_CASE("validate: fixtures pass") {
  for (const auto& name : kFixtures) {
    INFO(name);
    auto rep = validate(fixture(name));
    CHECK(rep.ok());
    CHECK(rep.oriented);
  }
}

TEST_CASE("validate: involution failure") {
  auto tri = parse_triangulation("tets 2\n0: 1:1023 - - -\n1: - 0:0132 - -\n");
  auto rep = validate(tri);
  REQUIRE(!rep.ok());
  REQUIRE(!rep.involution_failures.empty());
  CHECK(rep.involution_failures[0].find("tet 1") == 0);
}

TEST_CASE("validate: orientation-preserving gluing") {
  Triangulation tri(2);
  tri.join(0, 0, 1, Perm(0, 1, 2, 3));
  tri.join(0, 1, 1, Perm(0, 1, 3, 2));
  auto rep = validate(tri);
  CHECK(!rep.orientable);
  CHECK(!rep.ok());
}

TEST_CASE("validate: self gluing") {
  Triangulation tri(1);
  tri.set_gluing(0, 0, Gluing{0, Perm(0, 2, 1, 3)});
  CHECK(!validate(tri).self_gluings.empty());
}

TEST_CASE("skeleton: unglued") {
  auto sk = build_skeleton(fixture("unglued"));
  CHECK(sk.num_edges() == 6);
  CHECK(sk.num_vertices() == 4);
  CHECK(sk.boundary_faces.size() == 4);
  for (int e = 0; e < 6; ++e) CHECK(sk.edge_index(e) == 1);
}

TEST_CASE("skeleton: fig8") {
  auto sk = build_skeleton(fixture("fig8"));
  REQUIRE(sk.num_edges() == 2);
  CHECK(sk.edge_index(0) == 6);
  CHECK(sk.edge_index(1) == 6);
  CHECK(sk.num_vertices() == 1);
  CHECK(sk.num_boundary_components == 0);
}

TEST_CASE("skeleton: solid torus boundary") {
  auto sk = build_skeleton(fixture("solid_torus"));
  CHECK(sk.num_vertices() == 1);
  CHECK(sk.num_boundary_components == 1);
  CHECK(sk.boundary_faces.size() == 2);
  int boundary_edges = 0;
  for (std::size_t e = 0; e < sk.num_edges(); ++e) boundary_edges += sk.edge_boundary[e];
  CHECK(boundary_edges == 3);
  CHECK(sk.boundary_euler(0) == 0);
}

TEST_CASE("skeleton: counting identities") {
  for (const auto& name : kFixtures) {
    auto tri = fixture(name);
    auto sk = build_skeleton(tri);
    std::size_t sum_e = 0, sum_v = 0;
    for (const auto& e : sk.edges) sum_e += e.size();
    for (const auto& v : sk.vertices) sum_v += v.size();
    CHECK(sum_e == 6 * tri.size());
    CHECK(sum_v == 4 * tri.size());
    for (auto [t, f] : sk.boundary_faces)
      for (int v = 0; v < 4; ++v)
        if (v != f) CHECK(sk.vertex_boundary[sk.vertex_of[t][v]]);
  }
}

TEST_CASE("classify_vertices") {
  auto st = fixture("solid_torus");
  CHECK(classify_vertices(st, build_skeleton(st)) == std::vector{VertexKind::boundary()});
  auto f8 = fixture("fig8");
  CHECK(classify_vertices(f8, build_skeleton(f8)) == std::vector{VertexKind::ideal(1)});
  auto cone = fixture("cone");
  auto ck = classify_vertices(cone, build_skeleton(cone));
  CHECK(std::count(ck.begin(), ck.end(), VertexKind::interior()) == 1);
  CHECK(std::count(ck.begin(), ck.end(), VertexKind::boundary()) == 4);
}

TEST_CASE("isomorphic: reflexive, relabelled, distinct") {
  auto f8 = fixture("fig8");
  auto id = isomorphic(f8, f8);
  REQUIRE(id);
  CHECK(is_isomorphism(f8, f8, *id));
  auto rel = fixture("fig8_relabelled");
  auto w = isomorphic(rel, f8);
  REQUIRE(w);
  CHECK(!w->is_identity());
  CHECK(is_isomorphism(rel, f8, *w));
  CHECK(!isomorphic(f8, fixture("solid_torus")));
}

TEST_CASE("isomorphic: equivalence relation on fixtures") {
  for (const auto& a : kFixtures)
    for (const auto& b : kFixtures) {
      auto ta = fixture(a), tb = fixture(b);
      auto ab = isomorphic(ta, tb);
      auto ba = isomorphic(tb, ta);
      CHECK(ab.has_value() == ba.has_value());
      if (ab) CHECK(is_isomorphism(tb, ta, ab->inverse()));
      for (const auto& c : kFixtures) {
        auto tc = fixture(c);
        auto bc = isomorphic(tb, tc);
        if (ab && bc) CHECK(is_isomorphism(ta, tc, ab->then(*bc)));
      }
    }
}
