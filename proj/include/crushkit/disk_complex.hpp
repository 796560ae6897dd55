#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "crushkit/normal_surface.hpp"
#include "crushkit/union_find.hpp"

namespace crushkit {

class SurfaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxExpandedDisks = 4'000'000;

/// Disk counts of a surface as machine integers, for expanding into cells.
struct DiskCounts {
  std::vector<std::array<long long, 7>> c;
  long long tri(int t, int v) const { return c[t][v]; }
  long long quad(int t, int j) const { return c[t][4 + j]; }
  int quad_type_in(int t) const {
    for (int j = 0; j < 3; ++j)
      if (c[t][4 + j] != 0) return j;
    return -1;
  }
  long long total() const {
    long long s = 0;
    for (const auto& a : c)
      for (auto x : a) s += x;
    return s;
  }

  static DiskCounts from(const NormalSurface& s) {
    DiskCounts d;
    d.c.resize(s.num_tets());
    Coord total = 0;
    for (std::size_t t = 0; t < s.num_tets(); ++t)
      for (int i = 0; i < 7; ++i) {
        const Coord& x = s.coords[7 * t + i];
        total += x;
        if (x < 0) throw std::invalid_argument("negative normal coordinate");
        if (total > kMaxExpandedDisks) throw SurfaceTooLarge("surface has too many normal disks to expand");
        d.c[t][i] = x.convert_to<long long>();
      }
    return d;
  }
};

struct ComponentTopology {
  int euler = 0;
  bool orientable = true;
  int boundary_curves = 0;
  /// Orientable genus, or number of cross-caps for non-orientable components.
  int genus = 0;
  bool closed() const { return boundary_curves == 0; }
  bool operator==(const ComponentTopology&) const = default;
  auto operator<=>(const ComponentTopology&) const = default;
};

struct SurfaceTopology {
  int euler = 0;
  bool orientable = true;
  int components = 0;
  int boundary_curves = 0;
  std::vector<ComponentTopology> per_component;  // sorted

  bool operator==(const SurfaceTopology&) const = default;

  bool is_sphere() const {
    return components == 1 && euler == 2 && boundary_curves == 0 && orientable;
  }
  bool is_disk() const { return components == 1 && euler == 1 && boundary_curves == 1 && orientable; }
  bool is_annulus() const { return components == 1 && euler == 0 && boundary_curves == 2 && orientable; }
};

/// The normal disks of a surface, one node per disk, glued along normal arcs
/// by the nesting order: arcs of one type in a face are ordered outward from
/// the vertex they cut off, triangles before quads.
class DiskComplex {
 public:
  struct Disk {
    int tet;
    int type;  // 0..3 triangle at that vertex, 4..6 quad of type (type-4)
    long long copy;
  };

  DiskComplex() = default;

  DiskComplex(const Triangulation& tri, const NormalSurface& s) : counts_(DiskCounts::from(s)) {
    if (s.num_tets() != tri.size()) throw LengthMismatch("surface and triangulation differ in size");
    build(tri);
  }

  const std::vector<Disk>& disks() const { return disks_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return num_edges_; }
  int num_faces() const { return static_cast<int>(disks_.size()); }
  int euler() const { return num_vertices_ - num_edges_ + num_faces(); }
  int num_components() const { return num_components_; }
  const std::vector<int>& component_of_disk() const { return component_; }
  int num_boundary_arcs() const { return num_boundary_arcs_; }

  /// Arc-slot arc counts per (tet, face, vertex): recomputed from the paired arcs.
  long long arcs_in_slot(int t, int f, int v) const { return slot_arc_count_.at(std::array<int, 3>{t, f, v}); }

  const DiskCounts& counts() const { return counts_; }

  /// Disk index for (tet, type, copy).
  long long disk_index(int t, int type, long long copy) const { return base_[t][type] + copy; }

  /// The disk that owns the arc at position p (counted from v) in face f of t.
  long long disk_at_slot(int t, int f, int v, long long p) const {
    long long nt = counts_.tri(t, v);
    if (p < nt) return disk_index(t, v, p);
    int j = quad_type(v, f);
    long long q = counts_.quad(t, j);
    long long k = p - nt;
    return disk_index(t, 4 + j, quad_low_side(j, v) ? k : q - 1 - k);
  }

  std::vector<NormalSurface> component_surfaces() const {
    std::vector<NormalSurface> out(num_components_, NormalSurface(counts_.c.size()));
    for (std::size_t d = 0; d < disks_.size(); ++d) out[component_[d]].coords[7 * disks_[d].tet + disks_[d].type] += 1;
    return out;
  }

  SurfaceTopology topology() const {
    SurfaceTopology top;
    top.components = num_components_;
    top.euler = euler();
    top.per_component = comp_top_;
    for (const auto& c : comp_top_) {
      top.boundary_curves += c.boundary_curves;
      top.orientable = top.orientable && c.orientable;
    }
    std::sort(top.per_component.begin(), top.per_component.end());
    return top;
  }

  const std::vector<ComponentTopology>& component_topology() const { return comp_top_; }

  // Local corner list of a disk type: each corner is a tet edge, listed in
  // cyclic order around the disk.
  static std::vector<int> corner_edges(int type) {
    if (type < 4) {
      std::vector<int> out;
      for (int x = 0; x < 4; ++x)
        if (x != type) out.push_back(edge_number(type, x));
      return out;
    }
    int j = type - 4;
    int a = 0, b = j + 1;
    int c = -1, d = -1;
    for (int x = 1; x < 4; ++x)
      if (x != b) (c < 0 ? c : d) = x;
    return {edge_number(a, c), edge_number(a, d), edge_number(b, d), edge_number(b, c)};
  }

 private:
  long long corner_id(long long disk, int tet_edge) const {
    const auto& ce = corner_edges(disks_[disk].type);
    for (std::size_t i = 0; i < ce.size(); ++i)
      if (ce[i] == tet_edge) return corner_base_[disk] + static_cast<long long>(i);
    throw std::logic_error("disk has no corner on that edge");
  }

  // +1 if corner on edge e2 follows the corner on e1 in the disk's cyclic order.
  int direction(long long disk, int e1, int e2) const {
    const auto ce = corner_edges(disks_[disk].type);
    const int m = static_cast<int>(ce.size());
    for (int i = 0; i < m; ++i)
      if (ce[i] == e1) return ce[(i + 1) % m] == e2 ? 1 : -1;
    throw std::logic_error("disk has no corner on that edge");
  }

  void build(const Triangulation& tri) {
    const int n = static_cast<int>(tri.size());
    base_.assign(n, {});
    long long next = 0;
    for (int t = 0; t < n; ++t)
      for (int type = 0; type < 7; ++type) {
        base_[t][type] = next;
        for (long long k = 0; k < counts_.c[t][type]; ++k) disks_.push_back({t, type, k});
        next += counts_.c[t][type];
      }
    corner_base_.resize(disks_.size());
    long long corners = 0;
    for (std::size_t d = 0; d < disks_.size(); ++d) {
      corner_base_[d] = corners;
      corners += disks_[d].type < 4 ? 3 : 4;
    }

    UnionFind comp(disks_.size());
    UnionFind verts(static_cast<std::size_t>(corners));
    ParityUnionFind orient(disks_.size());
    std::vector<bool> orient_conflict_disk(disks_.size(), false);
    std::vector<std::array<long long, 2>> boundary_arcs;

    for (int t = 0; t < n; ++t) {
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          const long long c = counts_.tri(t, v) + counts_.quad(t, quad_type(v, f));
          slot_arc_count_[{t, f, v}] = c;
          if (c == 0) continue;
          int x = -1, y = -1;
          for (int w = 0; w < 4; ++w)
            if (w != v && w != f) (x < 0 ? x : y) = w;
          const int ex = edge_number(v, x), ey = edge_number(v, y);
          if (!g) {
            for (long long p = 0; p < c; ++p) {
              long long d = disk_at_slot(t, f, v, p);
              boundary_arcs.push_back({corner_id(d, ex), corner_id(d, ey)});
            }
            num_boundary_arcs_ += static_cast<int>(c);
            num_edges_ += static_cast<int>(c);
            continue;
          }
          const int ot = g->tet, of = g->perm[f];
          if (std::make_pair(ot, of) < std::make_pair(t, f)) continue;
          const int ov = g->perm[v];
          const int oex = edge_number(ov, g->perm[x]), oey = edge_number(ov, g->perm[y]);
          num_edges_ += static_cast<int>(c);
          for (long long p = 0; p < c; ++p) {
            long long d1 = disk_at_slot(t, f, v, p);
            long long d2 = disk_at_slot(ot, of, ov, p);
            comp.unite(d1, d2);
            verts.unite(corner_id(d1, ex), corner_id(d2, oex));
            verts.unite(corner_id(d1, ey), corner_id(d2, oey));
            int dir1 = direction(d1, ex, ey), dir2 = direction(d2, oex, oey);
            if (!orient.unite(d1, d2, dir1 == dir2 ? 1 : 0)) orient_conflict_disk[d1] = true;
          }
        }
      }
    }

    int nverts = 0;
    auto vlabel = verts.labels(&nverts);
    num_vertices_ = nverts;
    component_ = comp.labels(&num_components_);

    comp_top_.assign(num_components_, {});
    std::vector<int> vcomp(nverts, -1);
    for (std::size_t d = 0; d < disks_.size(); ++d) {
      const int cc = component_[d];
      comp_top_[cc].euler += 1;
      const int m = disks_[d].type < 4 ? 3 : 4;
      for (int i = 0; i < m; ++i) vcomp[vlabel[corner_base_[d] + i]] = cc;
      if (orient_conflict_disk[d]) comp_top_[cc].orientable = false;
    }
    for (int v = 0; v < nverts; ++v) comp_top_[vcomp[v]].euler += 1;
    // Edges: every disk has (3 or 4) arc sides; a paired arc is shared by two sides.
    std::vector<long long> sides(num_components_, 0), bsides(num_components_, 0);
    for (std::size_t d = 0; d < disks_.size(); ++d) sides[component_[d]] += disks_[d].type < 4 ? 3 : 4;
    UnionFind bcurves(nverts);
    for (auto [a, b] : boundary_arcs) {
      long long disk = std::upper_bound(corner_base_.begin(), corner_base_.end(), a) - corner_base_.begin() - 1;
      bsides[component_[disk]] += 1;
      bcurves.unite(vlabel[a], vlabel[b]);
    }
    for (int cc = 0; cc < num_components_; ++cc) {
      long long e = bsides[cc] + (sides[cc] - bsides[cc]) / 2;
      comp_top_[cc].euler -= static_cast<int>(e);
    }
    std::vector<bool> counted(nverts, false);
    for (auto [a, b] : boundary_arcs) {
      (void)b;
      auto r = bcurves.find(vlabel[a]);
      if (counted[r]) continue;
      counted[r] = true;
      comp_top_[vcomp[vlabel[a]]].boundary_curves += 1;
    }
    for (auto& ct : comp_top_) {
      if (ct.orientable)
        ct.genus = (2 - ct.euler - ct.boundary_curves) / 2;
      else
        ct.genus = 2 - ct.euler - ct.boundary_curves;
    }
  }

  DiskCounts counts_;
  std::vector<std::array<long long, 7>> base_;
  std::vector<Disk> disks_;
  std::vector<long long> corner_base_;
  std::map<std::array<int, 3>, long long> slot_arc_count_;
  int num_vertices_ = 0;
  int num_edges_ = 0;
  int num_boundary_arcs_ = 0;
  int num_components_ = 0;
  std::vector<int> component_;
  std::vector<ComponentTopology> comp_top_;
};

inline DiskComplex build_disk_complex(const Triangulation& tri, const NormalSurface& s) { return DiskComplex(tri, s); }

inline int euler_characteristic(const Triangulation& tri, const NormalSurface& s) {
  return DiskComplex(tri, s).euler();
}

inline std::vector<NormalSurface> connected_components(const Triangulation& tri, const NormalSurface& s) {
  return DiskComplex(tri, s).component_surfaces();
}

inline SurfaceTopology surface_topology(const Triangulation& tri, const NormalSurface& s) {
  return DiskComplex(tri, s).topology();
}

}  // namespace crushkit
