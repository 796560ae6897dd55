#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "crushkit/triangulation.hpp"
#include "crushkit/union_find.hpp"

namespace crushkit {

struct TetEdge {
  int tet;
  int edge;
};

struct Corner {
  int tet;
  int vertex;
};

/// Edge and vertex classes of a triangulation, with boundary flags and the
/// components of the boundary surface.
struct Skeleton {
  std::vector<std::array<int, 6>> edge_of;    // per tet, per local edge
  std::vector<std::array<int, 6>> edge_sign;  // +1 if the local edge agrees with its class's first member
  std::vector<std::array<int, 4>> vertex_of;  // per tet, per local vertex
  std::vector<std::vector<TetEdge>> edges;    // members of each edge class
  std::vector<std::vector<Corner>> vertices;  // members of each vertex class
  std::vector<bool> edge_boundary;
  std::vector<bool> edge_valid;  // false if identified with itself in reverse
  std::vector<bool> vertex_boundary;
  std::vector<std::array<int, 2>> boundary_faces;  // (tet, face)

  // Boundary surface components.
  std::vector<int> vertex_component;  // -1 for interior vertices
  std::vector<int> edge_component;    // -1 for interior edges
  std::vector<int> face_component;    // parallel to boundary_faces
  int num_boundary_components = 0;

  std::size_t num_edges() const { return edges.size(); }
  std::size_t num_vertices() const { return vertices.size(); }
  int edge_index(int e) const { return static_cast<int>(edges[e].size()); }

  /// Euler characteristic of a boundary component.
  int boundary_euler(int comp) const {
    int v = 0, e = 0, f = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertex_component[i] == comp) ++v;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edge_component[i] == comp) ++e;
    for (int c : face_component)
      if (c == comp) ++f;
    return v - e + f;
  }

  int boundary_genus(int comp) const { return (2 - boundary_euler(comp)) / 2; }
};

inline Skeleton build_skeleton(const Triangulation& tri) {
  const int n = static_cast<int>(tri.size());
  Skeleton sk;
  ParityUnionFind euf(6 * n);
  std::vector<bool> bad_root(6 * n, false);
  UnionFind vuf(4 * n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f) vuf.unite(4 * t + v, 4 * g->tet + g->perm[v]);
      for (int e = 0; e < 6; ++e) {
        int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
        if (a == f || b == f) continue;
        int pa = g->perm[a], pb = g->perm[b];
        int rel = pa > pb ? 1 : 0;
        if (!euf.unite(6 * t + e, 6 * g->tet + edge_number(pa, pb), rel))
          bad_root[euf.find(6 * t + e).first] = true;
      }
    }
  }
  // Dense edge classes.
  sk.edge_of.resize(n);
  std::vector<int> root_to_class(6 * n, -1);
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      auto r = euf.find(6 * t + e).first;
      if (root_to_class[r] < 0) {
        root_to_class[r] = static_cast<int>(sk.edges.size());
        sk.edges.emplace_back();
        sk.edge_valid.push_back(true);
      }
      int c = root_to_class[r];
      sk.edge_of[t][e] = c;
      sk.edges[c].push_back({t, e});
    }
  sk.edge_sign.resize(n);
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      auto [first_t, first_e] = sk.edges[sk.edge_of[t][e]][0];
      sk.edge_sign[t][e] = euf.find(6 * t + e).second == euf.find(6 * first_t + first_e).second ? 1 : -1;
    }
  for (int i = 0; i < 6 * n; ++i)
    if (bad_root[i]) sk.edge_valid[root_to_class[euf.find(i).first]] = false;
  // Bad flags may have been recorded against a root later merged away.
  for (int i = 0; i < 6 * n; ++i)
    if (bad_root[i]) sk.edge_valid[sk.edge_of[i / 6][i % 6]] = false;

  sk.vertex_of.resize(n);
  std::vector<int> vroot(4 * n, -1);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      auto r = vuf.find(4 * t + v);
      if (vroot[r] < 0) {
        vroot[r] = static_cast<int>(sk.vertices.size());
        sk.vertices.emplace_back();
      }
      sk.vertex_of[t][v] = vroot[r];
      sk.vertices[vroot[r]].push_back({t, v});
    }

  sk.edge_boundary.assign(sk.edges.size(), false);
  sk.vertex_boundary.assign(sk.vertices.size(), false);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_boundary(t, f)) continue;
      sk.boundary_faces.push_back({t, f});
      for (int v = 0; v < 4; ++v)
        if (v != f) sk.vertex_boundary[sk.vertex_of[t][v]] = true;
      for (int e = 0; e < 6; ++e)
        if (kEdgeVertices[e][0] != f && kEdgeVertices[e][1] != f) sk.edge_boundary[sk.edge_of[t][e]] = true;
    }

  UnionFind buf(sk.vertices.size());
  for (auto [t, f] : sk.boundary_faces) {
    int first = -1;
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      if (first < 0)
        first = sk.vertex_of[t][v];
      else
        buf.unite(first, sk.vertex_of[t][v]);
    }
  }
  sk.vertex_component.assign(sk.vertices.size(), -1);
  std::vector<int> comp_of_root(sk.vertices.size(), -1);
  for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
    if (!sk.vertex_boundary[v]) continue;
    auto r = buf.find(v);
    if (comp_of_root[r] < 0) comp_of_root[r] = sk.num_boundary_components++;
    sk.vertex_component[v] = comp_of_root[r];
  }
  sk.edge_component.assign(sk.edges.size(), -1);
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    if (!sk.edge_boundary[e]) continue;
    auto [t, le] = sk.edges[e][0];
    sk.edge_component[e] = sk.vertex_component[sk.vertex_of[t][kEdgeVertices[le][0]]];
  }
  for (auto [t, f] : sk.boundary_faces)
    sk.face_component.push_back(sk.vertex_component[sk.vertex_of[t][f == 0 ? 1 : 0]]);
  return sk;
}

/// Position on a boundary face: tetrahedron, face, and the two vertices of an
/// edge of that face.
struct BoundaryEdgeSide {
  int tet;
  int face;
  int a;
  int b;
};

/// Walks around the edge {a,b} of boundary face (tet, face) through the
/// interior and returns the other boundary face containing that edge, with
/// the images of a and b.
inline BoundaryEdgeSide boundary_neighbour(const Triangulation& tri, BoundaryEdgeSide s) {
  int t = s.tet, a = s.a, b = s.b;
  int cur = 6 - s.face - a - b;  // the other face of t containing {a,b}
  for (std::size_t guard = 0; guard <= 6 * tri.size() + 2; ++guard) {
    const auto& g = tri.gluing(t, cur);
    if (!g) return {t, cur, a, b};
    int came = g->perm[cur];
    int na = g->perm[a], nb = g->perm[b];
    t = g->tet;
    a = na;
    b = nb;
    cur = 6 - came - a - b;
  }
  throw std::logic_error("boundary_neighbour: edge walk did not terminate");
}

}  // namespace crushkit
