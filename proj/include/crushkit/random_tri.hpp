#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "crushkit/vertex_kind.hpp"

namespace crushkit {

/// A random oriented triangulation: n tetrahedra, `boundary` faces left
/// unglued, the rest paired at random by odd permutations. May be
/// disconnected or fail vertex classification; see random_manifold().
inline Triangulation random_triangulation(std::size_t n, std::size_t boundary, std::mt19937_64& rng) {
  Triangulation tri(n);
  std::vector<std::pair<int, int>> faces;
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) faces.emplace_back(static_cast<int>(t), f);
  std::shuffle(faces.begin(), faces.end(), rng);
  faces.resize(faces.size() - boundary);
  std::vector<Perm> odd;
  for (const Perm& p : Perm::all())
    if (p.sign() == -1) odd.push_back(p);
  for (std::size_t i = 0; i + 1 < faces.size(); i += 2) {
    auto [t, f] = faces[i];
    auto [u, g] = faces[i + 1];
    std::vector<Perm> fit;
    for (const Perm& p : odd)
      if (p[f] == g) fit.push_back(p);
    tri.join(t, f, u, fit[std::uniform_int_distribution<std::size_t>(0, fit.size() - 1)(rng)]);
  }
  return tri;
}

inline bool is_connected(const Triangulation& tri) {
  UnionFind uf(tri.size());
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (const auto& g = tri.gluing(static_cast<int>(t), f)) uf.unite(t, g->tet);
  int k = 0;
  uf.labels(&k);
  return k <= 1;
}

/// Draws random triangulations until one is connected, valid, and has
/// surface vertex links. `boundary` must be even.
inline Triangulation random_manifold(std::size_t n, std::size_t boundary, std::mt19937_64& rng,
                                     std::size_t max_tries = 100000) {
  for (std::size_t i = 0; i < max_tries; ++i) {
    auto tri = random_triangulation(n, boundary, rng);
    if (!is_connected(tri) || !validate(tri).ok()) continue;
    auto sk = build_skeleton(tri);
    try {
      classify_vertices(tri, sk);
    } catch (const VertexLinkNotSurface&) {
      continue;
    }
    return tri;
  }
  throw std::runtime_error("random_manifold: no valid triangulation found");
}

}  // namespace crushkit
