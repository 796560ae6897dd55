#include <catch_amalgamated.hpp>

#include "crushkit/enumerate.hpp"
#include "crushkit/slopes.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

namespace {

std::set<std::vector<int>> census_weights(const SlopeCensus& c) {
  std::set<std::vector<int>> out;
  for (const auto& cls : c.classes()) {
    std::vector<int> w;
    for (const auto& x : cls.weights) w.push_back(static_cast<int>(x));
    out.insert(w);
  }
  return out;
}

// On a one-vertex torus with three edges, a simple curve crosses one edge as
// often as the other two together.
bool torus_triangle_identity(const std::vector<Coord>& w) {
  if (w.size() != 3) return false;
  return w[0] == w[1] + w[2] || w[1] == w[0] + w[2] || w[2] == w[0] + w[1];
}

}  // namespace

TEST_CASE("slope_class: primitive reduction on a one-vertex torus") {
  auto st = fixture("solid_torus");
  auto sk = build_skeleton(st);
  auto edges = boundary_edges_of(sk, 0);
  REQUIRE(edges.size() == 3);
  std::map<int, Coord> w{{edges[0], 2}, {edges[1], 4}, {edges[2], 6}};
  auto r = slope_class(sk, 0, w);
  REQUIRE(std::holds_alternative<SlopeClass>(r));
  const auto& cls = std::get<SlopeClass>(r);
  CHECK(cls.weights == std::vector<Coord>{1, 2, 3});
  CHECK(cls.weights_str() == "1,2,3");
  CHECK(cls.long_edge == edges[2]);
}

TEST_CASE("slope_class: trivial curves") {
  auto st = fixture("solid_torus");
  auto sk = build_skeleton(st);
  CHECK(std::holds_alternative<TrivialSlope>(slope_class(sk, 0, {})));
  CHECK(std::holds_alternative<TrivialSlope>(slope_class(sk, 0, vertex_link_weights(sk, 0))));

  // Every curve on a sphere bounds.
  auto ug = fixture("unglued");
  auto usk = build_skeleton(ug);
  auto edges = boundary_edges_of(usk, 0);
  std::map<int, Coord> w{{edges[0], 1}, {edges[1], 1}};
  CHECK(std::holds_alternative<TrivialSlope>(slope_class(usk, 0, w)));
}

TEST_CASE("boundary_curves: weights and homology agree on a one-vertex torus") {
  auto st = fixture("solid_torus");
  auto sk = build_skeleton(st);
  for (const auto& s : surfaces_up_to(st, 4).surfaces) {
    auto sys = boundary_curves(st, sk, s);
    Coord total_arcs = 0;
    for (const auto& a : sys.arc_counts)
      for (const auto& c : a) total_arcs += c;
    std::size_t arcs_in_curves = 0;
    for (const auto& c : sys.curves) {
      arcs_in_curves += c.arcs.size();
      CHECK(c.component == 0);
      if (c.homology.empty()) {
        CHECK(std::holds_alternative<TrivialSlope>(slope_class(sk, c)));
        continue;
      }
      REQUIRE(c.homology.size() == 3);
      auto edges = boundary_edges_of(sk, 0);
      for (std::size_t i = 0; i < 3; ++i) {
        auto it = c.weights.find(edges[i]);
        Coord w = it == c.weights.end() ? Coord(0) : it->second;
        CHECK(Coord(std::llabs(c.homology[i])) == w);
      }
    }
    CHECK(Coord(arcs_in_curves) == total_arcs);
  }
}

TEST_CASE("slope census: solid torus") {
  auto st = fixture("solid_torus");
  auto c6 = slope_census(st, -2, 6);
  CHECK(census_weights(c6) == std::set<std::vector<int>>{{0, 1, 1}, {1, 0, 1}, {3, 2, 1}});
  for (const auto& cls : c6.classes()) CHECK(torus_triangle_identity(cls.weights));
  for (const auto& e : c6.entries) {
    CHECK(e.count >= 1);
    auto top = surface_topology(st, e.representative);
    CHECK(top.components == 1);
    CHECK(top.euler >= -2);
  }
}

TEST_CASE("slope census: layered fixture") {
  auto lay = fixture("layered");
  auto c = slope_census(lay, -2, 4);
  CHECK(census_weights(c) == std::set<std::vector<int>>{{0, 1, 1}, {1, 1, 0}, {1, 1, 2}, {3, 1, 4}});
  for (const auto& cls : c.classes()) CHECK(torus_triangle_identity(cls.weights));
}

TEST_CASE("slope census: monotone in the bound") {
  for (const char* name : {"solid_torus", "layered"}) {
    auto tri = fixture(name);
    auto prev = slope_census(tri, -2, 0).classes();
    for (int B = 1; B <= 5; ++B) {
      auto cur = slope_census(tri, -2, B).classes();
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }
}

TEST_CASE("format_census: header and entry lines") {
  auto st = fixture("solid_torus");
  auto text = format_census(slope_census(st, -2, 2));
  CHECK(text.rfind("ncoord-v1 name=solid_torus census chi_min=-2 bound=2\n", 0) == 0);
  CHECK(text.find("component=0 weights=") != std::string::npos);
}

TEST_CASE("thin annulus sums: every case on the seeded instance") {
  auto tri = fixture("generated/thin_sums");
  auto sk = build_skeleton(tri);
  auto annuli = thin_boundary_annuli(tri, sk);
  REQUIRE(!annuli.empty());
  std::map<SumCase, int> tally;
  for (const auto& A : annuli) {
    CHECK(surface_topology(tri, A).euler == 0);
    for (const auto& f : surfaces_up_to(tri, 2).surfaces) {
      if (std::holds_alternative<IncompatibleQuads>(haken_sum(f, A))) continue;
      auto r = classify_thin_annulus_sum(tri, sk, f, A);
      CHECK(r.euler_after == r.euler_before);
      CHECK(r.sum == f + A);
      if (r.which == SumCase::VertexDiskSplit) {
        REQUIRE(r.vertex_disk);
        REQUIRE(r.remainder);
        CHECK(*r.vertex_disk + *r.remainder == r.sum);
      }
      ++tally[r.which];
    }
  }
  CHECK(tally.count(SumCase::DisjointUnion));
  CHECK(tally.count(SumCase::VertexDiskSplit));
  CHECK(tally.count(SumCase::IsotopicReplacement));
  CHECK(!tally.count(SumCase::NotApplicable));
}

TEST_CASE("thin annulus sums: rejects a non-thin summand") {
  auto st = fixture("solid_torus");
  auto sk = build_skeleton(st);
  auto f = NormalSurface(st.size());
  CHECK_THROWS_AS(classify_thin_annulus_sum(st, sk, f, vertex_linking(st, sk, 0)), std::invalid_argument);
}
