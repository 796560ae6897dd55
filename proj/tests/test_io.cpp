#include <catch_amalgamated.hpp>

#include "crushkit/enumerate.hpp"
#include "crushkit/io.hpp"
#include "support.hpp"

using namespace crushkit;
using test_support::fixture;

TEST_CASE("surface files round-trip") {
  auto fig8 = fixture("fig8");
  auto list = vertex_surfaces(fig8);
  auto text = format_surfaces("fig8", fig8.size(), {{"provenance", "vertex"}}, list.surfaces);
  auto file = parse_surfaces(text, fig8.size());
  CHECK(file.name() == "fig8");
  CHECK(file.meta.at("provenance") == "vertex");
  CHECK(file.surfaces == list.surfaces);
  CHECK(format_surfaces("fig8", fig8.size(), {{"provenance", "vertex"}}, file.surfaces) == text);
}

TEST_CASE("surface files: comments, bare lines and big coordinates") {
  auto file = parse_surfaces("# no header\n1 0 0 0 0 0 123456789012345678901234567890  # trailing\n\n");
  REQUIRE(file.surfaces.size() == 1);
  CHECK(file.surfaces[0].coords[6] == Coord("123456789012345678901234567890"));
  CHECK(file.name().empty());
}

TEST_CASE("surface files: malformed input reports the line") {
  auto line_of = [](std::string_view text, std::size_t tets) {
    try {
      parse_surfaces(text, tets);
    } catch (const SurfaceParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 0 0 0 0 0 0\n1 0 0\n", 0) == 2);
  CHECK(line_of("1 0 0 0 0 0 0\n", 2) == 1);
  CHECK(line_of("ncoord-v1 tets=1\n1 0 0 0 0 0 x\n", 0) == 2);
  CHECK(line_of("ncoord-v9 tets=1\n", 0) == 1);
  CHECK(line_of("ncoord-v1 tets=2\n", 1) == 1);
  CHECK(line_of("1 0 0 0 0 0 0\nncoord-v1 tets=1\n", 0) == 2);
  CHECK(line_of("1 0 0 0 0 0 -1\n", 0) == 1);
}
