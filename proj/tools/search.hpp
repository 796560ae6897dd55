#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crushkit/efficiency.hpp"
#include "crushkit/random_tri.hpp"
#include "crushkit/transport.hpp"

namespace crushkit::search {

/// A seeded random instance: `random_manifold(tets, boundary, mt19937_64(seed))`.
struct Instance {
  std::string role;
  std::size_t tets = 0;
  std::size_t boundary = 0;
  std::uint64_t seed = 0;
  Triangulation tri;
  std::vector<NormalSurface> surfaces;
  std::string outcome;
};

inline Triangulation seeded_manifold(std::size_t tets, std::size_t boundary, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_manifold(tets, boundary, rng);
}

/// Closed nonzero surfaces from the vertex enumeration and surfaces_up_to(2), in sorted order.
inline std::vector<NormalSurface> crush_candidates(const Triangulation& tri) {
  std::set<NormalSurface> out;
  for (auto& s : vertex_surfaces(tri).surfaces)
    if (is_closed(tri, s)) out.insert(s);
  for (auto& s : surfaces_up_to(tri, 2).surfaces)
    if (!s.is_zero() && is_closed(tri, s)) out.insert(s);
  return {out.begin(), out.end()};
}

inline bool has_quads(const NormalSurface& s, std::size_t tets) {
  for (std::size_t t = 0; t < tets; ++t)
    if (s.quad_type_in(t) >= 0) return true;
  return false;
}

inline std::string crush_outcome(const Triangulation& tri, const NormalSurface& s) {
  auto r = crush_along(tri, s);
  if (auto* o = std::get_if<CrushObstruction>(&r)) return crush_failure_name(o->reason);
  const auto& out = std::get<CrushOutcome>(r);
  std::string key = "OK";
  if (has_quads(s, tri.size())) key += "+quads";
  if (!out.chains.chains.empty()) key += "+chains";
  return key;
}

struct CrushSearch {
  std::vector<Instance> successes;
  std::map<std::string, Instance> obstructions;  // keyed by failure name
  std::uint64_t seeds_scanned = 0;
};

/// Closed 2-tetrahedron instances. Successes must involve quads and chains;
/// one instance per seed.
inline CrushSearch find_crush_instances(std::size_t want_ok, const std::vector<std::string>& want_obstructions,
                                        std::uint64_t max_seed) {
  CrushSearch found;
  for (std::uint64_t seed = 0; seed < max_seed; ++seed) {
    bool done = found.successes.size() >= want_ok;
    for (const auto& w : want_obstructions) done = done && found.obstructions.count(w);
    if (done) break;
    found.seeds_scanned = seed + 1;
    auto tri = seeded_manifold(2, 0, seed);
    bool took_ok = false;
    for (const auto& s : crush_candidates(tri)) {
      auto key = crush_outcome(tri, s);
      Instance inst{"", 2, 0, seed, tri, {s}, key};
      if (key == "OK+quads+chains") {
        if (!took_ok && found.successes.size() < want_ok) {
          inst.role = "crush_ok_" + std::to_string(found.successes.size() + 1);
          found.successes.push_back(std::move(inst));
          took_ok = true;
        }
      } else if (key.rfind("OK", 0) != 0 && !found.obstructions.count(key)) {
        inst.role = "crush_" + key;
        found.obstructions.emplace(key, std::move(inst));
      }
    }
  }
  return found;
}

/// First seed whose instance satisfies `pred`.
inline std::optional<Instance> first_instance(const std::string& role, std::size_t tets, std::size_t boundary,
                                              std::uint64_t max_seed,
                                              const std::function<bool(const Triangulation&, Instance&)>& pred) {
  for (std::uint64_t seed = 0; seed < max_seed; ++seed) {
    Instance inst{role, tets, boundary, seed, seeded_manifold(tets, boundary, seed), {}, ""};
    if (pred(inst.tri, inst)) return inst;
  }
  return std::nullopt;
}

/// Closed material triangulation carrying a normal sphere that is not vertex-linking.
inline std::optional<Instance> find_sphere_witness(std::uint64_t max_seed) {
  return first_instance("zero_fails_sphere", 2, 0, max_seed, [](const Triangulation& tri, Instance& inst) {
    auto r = check_zero_efficient(tri);
    if (r.setting != Setting::ClosedMaterial || r.verdict != Verdict::Fails) return false;
    inst.surfaces = {r.witness->surface};
    inst.outcome = r.reason;
    return true;
  });
}

inline std::optional<Instance> find_annular(const std::string& role, std::size_t tets, Verdict want,
                                            std::uint64_t max_seed) {
  return first_instance(role, tets, 2, max_seed, [want](const Triangulation& tri, Instance& inst) {
    auto r = check_annular_efficient(tri);
    if (r.verdict != want) return false;
    // Fails must come from an annulus rather than from 0-efficiency.
    if (want == Verdict::Fails && !is_connected_annulus(r.witness->topology)) return false;
    if (r.witness) inst.surfaces = {r.witness->surface};
    inst.outcome = verdict_name(r.verdict);
    return true;
  });
}

/// Case tally of thin-annulus sums over surfaces_up_to(B).
inline std::map<SumCase, int> sum_case_tally(const Triangulation& tri, int B) {
  const auto sk = build_skeleton(tri);
  std::map<SumCase, int> tally;
  const auto pool = surfaces_up_to(tri, B).surfaces;
  for (const auto& A : thin_boundary_annuli(tri, sk))
    for (const auto& f : pool) {
      if (std::holds_alternative<IncompatibleQuads>(haken_sum(f, A))) continue;
      ++tally[classify_thin_annulus_sum(tri, sk, f, A).which];
    }
  return tally;
}

/// Bounded instance whose thin-annulus sums at bound 2 reach every lemma case.
inline std::optional<Instance> find_sum_cases(std::uint64_t max_seed) {
  return first_instance("thin_sums", 3, 4, max_seed, [](const Triangulation& tri, Instance& inst) {
    const auto sk = build_skeleton(tri);
    if (thin_boundary_annuli(tri, sk).empty()) return false;
    auto tally = sum_case_tally(tri, 2);
    if (!tally.count(SumCase::DisjointUnion) || !tally.count(SumCase::VertexDiskSplit) ||
        !tally.count(SumCase::IsotopicReplacement))
      return false;
    inst.surfaces = thin_boundary_annuli(tri, sk);
    inst.outcome = "all-cases";
    return true;
  });
}

}  // namespace crushkit::search
