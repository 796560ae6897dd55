#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "crushkit/disk_complex.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

struct VertexKind {
  enum class Kind { InteriorMaterial, BoundaryMaterial, Ideal };
  Kind kind = Kind::InteriorMaterial;
  int genus = 0;  // Ideal only

  static VertexKind interior() { return {Kind::InteriorMaterial, 0}; }
  static VertexKind boundary() { return {Kind::BoundaryMaterial, 0}; }
  static VertexKind ideal(int g) { return {Kind::Ideal, g}; }

  bool operator==(const VertexKind&) const = default;

  std::string str() const {
    switch (kind) {
      case Kind::InteriorMaterial: return "interior";
      case Kind::BoundaryMaterial: return "boundary";
      case Kind::Ideal: return "ideal genus " + std::to_string(genus);
    }
    return {};
  }
};

class VertexLinkNotSurface : public std::runtime_error {
 public:
  VertexLinkNotSurface(int vertex, const std::string& why)
      : std::runtime_error("link of vertex " + std::to_string(vertex) + " is not a surface: " + why), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

inline VertexKind classify_vertex(const Triangulation& tri, const Skeleton& sk, int v) {
  for (auto [t, lv] : sk.vertices[v])
    for (int x = 0; x < 4; ++x)
      if (x != lv && !sk.edge_valid[sk.edge_of[t][edge_number(lv, x)]])
        throw VertexLinkNotSurface(v, "incident edge is identified with itself in reverse");
  auto top = surface_topology(tri, vertex_linking(tri, sk, v));
  if (top.components != 1) throw VertexLinkNotSurface(v, "link is disconnected");
  const auto& c = top.per_component[0];
  if (!c.orientable) throw VertexLinkNotSurface(v, "link is non-orientable");
  if (c.boundary_curves == 0) {
    if (c.euler == 2) return VertexKind::interior();
    return VertexKind::ideal(c.genus);
  }
  if (c.boundary_curves == 1 && c.euler == 1) return VertexKind::boundary();
  throw VertexLinkNotSurface(v, "link has boundary but is not a disk");
}

inline std::vector<VertexKind> classify_vertices(const Triangulation& tri, const Skeleton& sk) {
  std::vector<VertexKind> out;
  for (std::size_t v = 0; v < sk.num_vertices(); ++v) out.push_back(classify_vertex(tri, sk, static_cast<int>(v)));
  return out;
}

}  // namespace crushkit
