#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crushkit/peripheral.hpp"

namespace crushkit {

struct Special {
  enum class Kind { None, VertexLinking, BoundaryLinking, ThinEdgeLinking };
  Kind kind = Kind::None;
  int index = -1;  // vertex, boundary component or edge

  bool operator==(const Special&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::None: return "none";
      case Kind::VertexLinking: return "vertex-linking(" + std::to_string(index) + ")";
      case Kind::BoundaryLinking: return "boundary-linking(" + std::to_string(index) + ")";
      case Kind::ThinEdgeLinking: return "thin-edge-linking(" + std::to_string(index) + ")";
    }
    return {};
  }
};

/// One quad around each tetrahedron edge in the class of e, separating it from
/// the opposite edge. Returns nullopt when e does not admit a thin
/// edge-linking surface: e is interior with both ends in one boundary
/// component (or at an interior vertex), some face has two of its edges in
/// the class of e, or the pattern is not admissible.
inline std::optional<NormalSurface> thin_edge_linking(const Triangulation& tri, const Skeleton& sk, int e) {
  const auto& members = sk.edges.at(e);
  {
    auto [t, le] = members[0];
    int a = sk.vertex_of[t][kEdgeVertices[le][0]], b = sk.vertex_of[t][kEdgeVertices[le][1]];
    if (!sk.edge_boundary[e]) {
      int ca = sk.vertex_component[a], cb = sk.vertex_component[b];
      if (ca < 0 || cb < 0 || ca == cb) return std::nullopt;
    }
  }
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      int k = 0;
      for (int le = 0; le < 6; ++le)
        if (kEdgeVertices[le][0] != f && kEdgeVertices[le][1] != f && sk.edge_of[t][le] == e) ++k;
      if (k >= 2) return std::nullopt;
    }
  NormalSurface s(tri.size());
  for (auto [t, le] : members) s.quad(t, quad_type(kEdgeVertices[le][0], kEdgeVertices[le][1])) += 1;
  if (!is_admissible(tri, s)) return std::nullopt;
  return s;
}

inline Special recognize_special(const Triangulation& tri, const Skeleton& sk, const NormalSurface& s) {
  for (std::size_t v = 0; v < sk.num_vertices(); ++v)
    if (s == vertex_linking(tri, sk, static_cast<int>(v))) return {Special::Kind::VertexLinking, static_cast<int>(v)};
  if (sk.num_boundary_components > 0) {
    auto per = peripheral_surface(tri, sk);
    if (auto* comps = std::get_if<std::vector<NormalSurface>>(&per))
      for (std::size_t c = 0; c < comps->size(); ++c)
        if (s == (*comps)[c]) return {Special::Kind::BoundaryLinking, static_cast<int>(c)};
  }
  bool has_triangle = false;
  for (std::size_t t = 0; t < s.num_tets() && !has_triangle; ++t)
    for (int v = 0; v < 4; ++v) has_triangle = has_triangle || s.tri(static_cast<int>(t), v) != 0;
  if (!has_triangle)
    for (std::size_t e = 0; e < sk.num_edges(); ++e) {
      auto thin = thin_edge_linking(tri, sk, static_cast<int>(e));
      if (thin && *thin == s) return {Special::Kind::ThinEdgeLinking, static_cast<int>(e)};
    }
  return {};
}

}  // namespace crushkit
