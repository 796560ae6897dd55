// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact;
// the bounds below are the only tunables.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "artifacts.hpp"
#include "crushkit/io.hpp"
#include "crushkit/isomorphism.hpp"
#include "oracles.hpp"
#include "search.hpp"

namespace fs = std::filesystem;
using namespace crushkit;

namespace {

constexpr int kVertexOracleBound = 6;
constexpr std::size_t kVertexOracleMaxTets = 3;
constexpr int kIdentityBound = 2;
constexpr int kBijectionBound = 3;
constexpr int kLayeredBound = 6;
constexpr int kSumBound = 4;
constexpr int kCensusChiMin = -2;
constexpr int kCensusStableLow = 6;
constexpr int kCensusStableHigh = 8;
constexpr std::uint64_t kGeneratorSeeds = 2000;

// Largest B with census(B) compared against census(B + 2), by fixture size.
int census_top(std::size_t tets) { return tets <= 2 ? 6 : tets == 3 ? 4 : 2; }

struct Fixture {
  std::string name;
  fs::path path;
  Triangulation tri;
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<Fixture> load_fixtures(const fs::path& dir) {
  std::vector<Fixture> out;
  for (const auto& sub : {dir, dir / "generated"}) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(sub))
      if (e.path().extension() == ".tri") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) {
      auto rel = fs::relative(p, dir).replace_extension().generic_string();
      out.push_back({rel, p, parse_triangulation(tools::read_file(p.string()), p.stem().string())});
    }
  }
  return out;
}

const Fixture& find(const std::vector<Fixture>& fx, const std::string& name) {
  for (const auto& f : fx)
    if (f.name == name) return f;
  throw std::runtime_error("missing fixture " + name);
}

NormalSurface seeded_surface(const fs::path& dir, const std::string& role) {
  return parse_surfaces(tools::read_file((dir / "generated" / (role + ".surf")).string())).surfaces.at(0);
}

std::vector<NormalSurface> closed_nonzero(const Triangulation& tri, const std::vector<NormalSurface>& list) {
  std::vector<NormalSurface> out;
  for (const auto& s : list)
    if (!s.is_zero() && is_closed(tri, s)) out.push_back(s);
  return out;
}

bool same_topology(const SurfaceTopology& a, const SurfaceTopology& b) {
  return a.euler == b.euler && a.orientable == b.orientable && a.components == b.components &&
         a.per_component == b.per_component;
}

// Both directions of the surface correspondence up to `B`.
// Returns the number of surfaces compared.
long check_bijection(const std::string& name, const Triangulation& tri, const CrushOutcome& out, int B, Outcome& o) {
  long n = 0;
  for (const auto& f : closed_nonzero(tri, surfaces_up_to(tri, B).surfaces)) {
    auto pl = place_in_blocks(out, f);
    if (!std::holds_alternative<Placement>(pl)) continue;
    auto star = push_forward(out, std::get<Placement>(pl));
    ++n;
    if (lift(out, star) != f) o.fail(name + ": lift(push_forward(" + f.str() + ")) differs");
    if (!same_topology(surface_topology(tri, f), surface_topology(out.crushed, star)))
      o.fail(name + ": topology changes for " + f.str());
  }
  for (const auto& g : surfaces_up_to(out.crushed, B).surfaces) {
    ++n;
    if (push_forward(out, lift(out, g)) != g) o.fail(name + ": push_forward(lift(" + g.str() + ")) differs");
  }
  return n;
}

Outcome criterion1(const std::vector<Fixture>& fx) {
  Outcome o;
  for (const auto& f : fx) {
    std::size_t glued = 4 * f.tri.size() - build_skeleton(f.tri).boundary_faces.size();
    auto ms = matching_system(f.tri);
    if (ms.equations.size() != 3 * (glued / 2))
      o.fail(f.name + ": " + std::to_string(ms.equations.size()) + " equations for " + std::to_string(glued / 2) +
             " face pairs");
  }
  o.detail = o.pass ? std::to_string(fx.size()) + " fixtures" : o.detail;
  return o;
}

Outcome criterion2(const std::vector<Fixture>& fx) {
  Outcome o;
  int checked = 0;
  for (const auto& f : fx) {
    if (f.tri.size() > kVertexOracleMaxTets) continue;
    ++checked;
    auto vs = vertex_surfaces(f.tri).surfaces;
    auto oracle = oracles::vertex_oracle(surfaces_up_to(f.tri, kVertexOracleBound).surfaces);
    if (vs != oracle)
      o.fail(f.name + ": " + std::to_string(vs.size()) + " vertex surfaces, oracle " + std::to_string(oracle.size()));
  }
  if (o.pass) o.detail = std::to_string(checked) + " fixtures, B=" + std::to_string(kVertexOracleBound);
  return o;
}

Outcome criterion3(const std::vector<Fixture>& fx) {
  Outcome o;
  const auto& f8 = find(fx, "fig8").tri;
  auto link = vertex_linking(f8, build_skeleton(f8), 0);
  auto res = crush_along(f8, link);
  if (!std::holds_alternative<CrushOutcome>(res)) {
    o.fail("crush of fig8 along its vertex link obstructed");
    return o;
  }
  const auto& out = std::get<CrushOutcome>(res);
  if (!isomorphic(out.crushed, f8).has_value()) o.fail("crushed fig8 not isomorphic to fig8");
  for (const auto& s : closed_nonzero(f8, surfaces_up_to(f8, kIdentityBound).surfaces)) {
    auto pl = place_in_blocks(out, s);
    if (!std::holds_alternative<Placement>(pl)) {
      o.fail("no placement for " + s.str());
      continue;
    }
    if (lift(out, push_forward(out, std::get<Placement>(pl))) != s) o.fail("lift∘push_forward differs on " + s.str());
  }
  for (const auto& g : surfaces_up_to(out.crushed, kIdentityBound).surfaces)
    if (push_forward(out, lift(out, g)) != g) o.fail("push_forward∘lift differs on " + g.str());
  if (o.pass) o.detail = "isomorphic; B=" + std::to_string(kIdentityBound);
  return o;
}

Outcome criterion4(const std::vector<Fixture>& fx, const fs::path& dir) {
  Outcome o;
  long compared = 0;
  std::vector<std::pair<std::string, NormalSurface>> cases;
  const auto& f8 = find(fx, "fig8").tri;
  cases.emplace_back("fig8", vertex_linking(f8, build_skeleton(f8), 0));
  for (int k = 1; k <= 5; ++k) {
    auto role = "crush_ok_" + std::to_string(k);
    cases.emplace_back("generated/" + role, seeded_surface(dir, role));
  }
  for (const auto& [name, s] : cases) {
    const auto& tri = find(fx, name).tri;
    auto res = crush_along(tri, s);
    if (!std::holds_alternative<CrushOutcome>(res)) {
      o.fail(name + ": crush obstructed");
      continue;
    }
    for (int B = 0; B <= kBijectionBound; ++B) compared += check_bijection(name, tri, std::get<CrushOutcome>(res), B, o);
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " crushes, B<=" + std::to_string(kBijectionBound) + ", " +
                          std::to_string(compared) + " surfaces compared";
  return o;
}

std::string unnamed(Triangulation tri) {
  tri.set_name("");
  return format_triangulation(tri);
}

Outcome criterion5(const std::vector<Fixture>& fx, const fs::path& dir) {
  Outcome o;
  const std::vector<std::pair<std::string, CrushFailure>> want = {
      {"XEqualsProduct", CrushFailure::XEqualsProduct},
      {"NontrivialProduct", CrushFailure::NontrivialProduct},
      {"CycleOfTruncatedPrisms", CrushFailure::CycleOfTruncatedPrisms}};
  std::vector<std::string> names;
  for (const auto& [n, r] : want) names.push_back(n);
  auto regenerated = search::find_crush_instances(5, names, kGeneratorSeeds);
  for (const auto& [n, reason] : want) {
    const auto role = "crush_" + n;
    const auto& archived = find(fx, "generated/" + role).tri;
    auto s = seeded_surface(dir, role);
    auto res = crush_along(archived, s);
    auto* ob = std::get_if<CrushObstruction>(&res);
    if (!ob || ob->reason != reason) o.fail(role + ": archived instance does not reproduce the obstruction");
    auto it = regenerated.obstructions.find(n);
    if (it == regenerated.obstructions.end())
      o.fail(role + ": generator finds none within " + std::to_string(kGeneratorSeeds) + " seeds");
    else if (unnamed(it->second.tri) != unnamed(archived) || it->second.surfaces.front() != s)
      o.fail(role + ": generator output differs from the archive");
  }
  if (o.pass) o.detail = "3 obstructions archived and regenerated";
  return o;
}

Outcome criterion6(const std::vector<Fixture>& fx) {
  Outcome o;
  const auto& lay = find(fx, "layered").tri;
  if (!closed_nonzero(lay, vertex_surfaces(lay).surfaces).empty()) o.fail("closed vertex surface in layered");
  for (int B = 0; B <= kLayeredBound; ++B)
    if (!closed_nonzero(lay, surfaces_up_to(lay, B).surfaces).empty())
      o.fail("closed surface in layered at B=" + std::to_string(B));
  if (!std::holds_alternative<NoNormalBoundary>(boundary_efficiency_candidates(lay)))
    o.fail("layered boundary check did not return NoNormalBoundary");
  if (o.pass) o.detail = "no closed surfaces, B<=" + std::to_string(kLayeredBound) + "; NoNormalBoundary";
  return o;
}

Outcome criterion7(const std::vector<Fixture>& fx) {
  Outcome o;
  std::map<SumCase, long> tally;
  int fixtures = 0;
  for (const auto& f : fx) {
    auto sk = build_skeleton(f.tri);
    if (sk.boundary_faces.empty()) continue;
    auto annuli = thin_boundary_annuli(f.tri, sk);
    if (annuli.empty()) continue;
    ++fixtures;
    const auto pool = surfaces_up_to(f.tri, kSumBound).surfaces;
    for (const auto& A : annuli)
      for (const auto& fp : pool) {
        if (std::holds_alternative<IncompatibleQuads>(haken_sum(fp, A))) continue;
        auto r = classify_thin_annulus_sum(f.tri, sk, fp, A);
        ++tally[r.which];
        if (r.which == SumCase::NotApplicable) o.fail(f.name + ": NotApplicable for " + fp.str() + "; " + r.diagnostics);
        if (r.euler_after != r.euler_before) o.fail(f.name + ": euler not additive for " + fp.str());
      }
  }
  if (o.pass) {
    std::ostringstream ss;
    ss << fixtures << " fixtures, B=" << kSumBound;
    for (const auto& [k, v] : tally) ss << " " << sum_case_name(k) << "=" << v;
    o.detail = ss.str();
  }
  return o;
}

Outcome criterion8(const std::vector<Fixture>& fx) {
  Outcome o;
  int stable = 0;
  for (const auto& f : fx) {
    std::set<SlopeClass> prev = slope_census(f.tri, kCensusChiMin, 0).classes();
    for (int B = 2; B <= census_top(f.tri.size()) + 2; B += 2) {
      auto cur = slope_census(f.tri, kCensusChiMin, B).classes();
      if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
        o.fail(f.name + ": census(" + std::to_string(B - 2) + ") not within census(" + std::to_string(B) + ")");
      prev = std::move(cur);
    }
    auto sk = build_skeleton(f.tri);
    if (sk.boundary_faces.empty() || check_annular_efficient(f.tri).verdict != Verdict::Holds) continue;
    ++stable;
    if (slope_census(f.tri, kCensusChiMin, kCensusStableLow).classes() !=
        slope_census(f.tri, kCensusChiMin, kCensusStableHigh).classes())
      o.fail(f.name + ": census changes between B=6 and B=8");
  }
  if (o.pass) o.detail = "monotone on " + std::to_string(fx.size()) + " fixtures; stable on " + std::to_string(stable);
  return o;
}

Outcome criterion9(const std::vector<Fixture>& fx) {
  Outcome o;
  int holds = 0;
  for (const auto& f : fx) {
    auto sk = build_skeleton(f.tri);
    if (sk.boundary_faces.empty()) continue;
    auto vs = vertex_surfaces(f.tri);
    if (check_annular_efficient(f.tri, vs).verdict != Verdict::Holds) continue;
    ++holds;
    for (const auto& s : vs.surfaces) {
      auto top = surface_topology(f.tri, s);
      if (is_connected_sphere(top)) o.fail(f.name + ": normal sphere " + s.str());
      if (is_connected_disk(top) && recognize_special(f.tri, sk, s).kind != Special::Kind::VertexLinking)
        o.fail(f.name + ": non-vertex-linking disk " + s.str());
    }
  }
  if (check_annular_efficient(find(fx, "solid_torus").tri).verdict == Verdict::Holds)
    o.fail("solid_torus annular verdict is Holds");
  if (holds == 0) o.fail("no fixture with annular verdict Holds");
  if (o.pass) o.detail = std::to_string(holds) + " Holds fixtures; solid_torus not Holds";
  return o;
}

std::map<std::string, std::string> digest_dir(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).generic_string()] = tools::sha256_hex(tools::read_file(e.path().string()));
  return out;
}

Outcome criterion10(const fs::path& cli, const fs::path& fixtures, const fs::path& work) {
  Outcome o;
  const std::string f8 = (fixtures / "fig8.tri").string();
  const std::string st = (fixtures / "solid_torus.tri").string();
  const std::string lay = (fixtures / "layered.tri").string();
  const std::string ok1 = (fixtures / "generated" / "crush_ok_1.tri").string();
  const std::string ok1s = (fixtures / "generated" / "crush_ok_1.surf").string();
  const std::vector<std::string> commands = {
      "--manifest m_info info " + f8 + " " + st + " " + lay + " > info.txt",
      "--manifest m_vertex enumerate " + f8 + " --mode vertex -o vertex.surf",
      "--manifest m_fund enumerate " + st + " --mode fundamental -o fund.surf",
      "--manifest m_bounded enumerate " + lay + " --mode bounded -B 3 -o bounded.surf",
      "--manifest m_check --json check " + st + " --zero --annular --witness-dir . > check.json",
      "--manifest m_crush crush " + f8 + " vertex.surf -o crushed.tri > crush.txt",
      "--manifest m_crush2 crush " + ok1 + " " + ok1s + " -o crushed_ok1.tri > crush_ok1.txt",
      "--manifest m_slopes slopes " + st + " --bound 4 -o census.txt",
  };
  std::map<std::string, std::string> first;
  for (int run = 0; run < 2; ++run) {
    fs::remove_all(work);
    fs::create_directories(work);
    for (const auto& c : commands) {
      std::string line = "cd '" + work.string() + "' && '" + fs::absolute(cli).string() + "' " + c + " 2>>stderr.txt";
      int rc = std::system(line.c_str());
      if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) > 1) o.fail("command failed: " + c);
    }
    auto digests = digest_dir(work);
    if (run == 0)
      first = std::move(digests);
    else if (digests != first)
      o.fail("outputs differ between runs");
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands, " + std::to_string(first.size()) + " files identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string fixture_dir = CRUSHKIT_FIXTURE_DIR, cli, work = "acceptance_work";
  std::vector<int> only;
  app.add_option("--fixtures", fixture_dir);
  app.add_option("--cli", cli, "crushkit executable")->required();
  app.add_option("--work", work, "Scratch directory for the determinism run");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const fs::path dir(fixture_dir);
  const auto fx = load_fixtures(dir);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"matching-system shape", [&] { return criterion1(fx); }},
      {"vertex enumeration oracle", [&] { return criterion2(fx); }},
      {"identity crush", [&] { return criterion3(fx); }},
      {"surface bijection", [&] { return criterion4(fx, dir); }},
      {"obstruction trichotomy", [&] { return criterion5(fx, dir); }},
      {"layered fixture", [&] { return criterion6(fx); }},
      {"thin annulus sums", [&] { return criterion7(fx); }},
      {"slope census", [&] { return criterion8(fx); }},
      {"efficiency consistency", [&] { return criterion9(fx); }},
      {"determinism", [&] { return criterion10(cli, dir, work); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2d %-26s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
