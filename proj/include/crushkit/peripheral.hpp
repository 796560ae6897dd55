#pragma once

#include <string>
#include <variant>
#include <vector>

#include "crushkit/normal_surface.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

/// The boundary pattern inside one tetrahedron is not a union of pieces whose
/// frontier is a normal disk.
struct NotNormalBoundary {
  int tet;
  std::string pattern;
};

namespace detail {

struct LocalBoundary {
  std::array<bool, 4> vertex{};
  std::array<bool, 6> edge{};
  std::array<bool, 4> face{};
  int boundary_component = -1;

  std::string str() const {
    std::string s = "vertices{";
    for (int v = 0; v < 4; ++v)
      if (vertex[v]) s += std::to_string(v);
    s += "} edges{";
    bool first = true;
    for (int e = 0; e < 6; ++e)
      if (edge[e]) {
        if (!first) s += ",";
        first = false;
        s += std::to_string(kEdgeVertices[e][0]) + std::to_string(kEdgeVertices[e][1]);
      }
    s += "} faces{";
    for (int f = 0; f < 4; ++f)
      if (face[f]) s += std::to_string(f);
    return s + "}";
  }
};

inline LocalBoundary local_boundary(const Triangulation& tri, const Skeleton& sk, int t) {
  LocalBoundary lb;
  for (int v = 0; v < 4; ++v) lb.vertex[v] = sk.vertex_boundary[sk.vertex_of[t][v]];
  for (int e = 0; e < 6; ++e) lb.edge[e] = sk.edge_boundary[sk.edge_of[t][e]];
  for (int f = 0; f < 4; ++f) lb.face[f] = tri.is_boundary(t, f);
  return lb;
}

}  // namespace detail

/// The boundary-linking surface, one normal surface per boundary component,
/// built tetrahedron by tetrahedron from the frontier of a neighbourhood of
/// the boundary cells meeting it.
inline std::variant<std::vector<NormalSurface>, NotNormalBoundary> peripheral_surface(const Triangulation& tri,
                                                                                       const Skeleton& sk) {
  const int n = static_cast<int>(tri.size());
  std::vector<NormalSurface> out(sk.num_boundary_components, NormalSurface(tri.size()));
  for (int t = 0; t < n; ++t) {
    auto lb = detail::local_boundary(tri, sk, t);
    UnionFind uf(4);
    for (int e = 0; e < 6; ++e)
      if (lb.edge[e]) uf.unite(kEdgeVertices[e][0], kEdgeVertices[e][1]);
    std::array<bool, 4> done{};
    for (int v = 0; v < 4; ++v) {
      if (!lb.vertex[v] || done[uf.find(v)]) continue;
      done[uf.find(v)] = true;
      std::vector<int> verts;
      for (int w = 0; w < 4; ++w)
        if (uf.find(w) == uf.find(v)) verts.push_back(w);
      int edges = 0, faces = 0;
      for (int e = 0; e < 6; ++e)
        if (lb.edge[e] && uf.find(kEdgeVertices[e][0]) == uf.find(v)) ++edges;
      for (int f = 0; f < 4; ++f)
        if (lb.face[f] && uf.find(f == 0 ? 1 : 0) == uf.find(v)) ++faces;
      const int comp = sk.vertex_component[sk.vertex_of[t][v]];
      NormalSurface& s = out[comp];
      if (verts.size() == 1) {
        s.tri(t, v) += 1;
      } else if (verts.size() == 2 && edges == 1) {
        s.quad(t, quad_type(verts[0], verts[1])) += 1;
      } else if (verts.size() == 3 && edges == 3 && faces == 1) {
        s.tri(t, 6 - verts[0] - verts[1] - verts[2]) += 1;
      } else {
        return NotNormalBoundary{t, lb.str()};
      }
    }
    int quad_types = 0;
    for (int j = 0; j < 3; ++j) {
      bool any = false;
      for (const auto& s : out) any = any || s.quad(t, j) != 0;
      quad_types += any;
    }
    if (quad_types > 1) return NotNormalBoundary{t, lb.str()};
  }
  for (const auto& s : out)
    if (!is_admissible(tri, s)) return NotNormalBoundary{-1, "pieces do not match across faces"};
  return out;
}

}  // namespace crushkit
