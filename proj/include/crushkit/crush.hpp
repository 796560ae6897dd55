#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "crushkit/disk_complex.hpp"
#include "crushkit/skeleton.hpp"

namespace crushkit {

enum class RegionKind { Corner, TriBlock, TruncTet, Prism, QuadBlock };

inline const char* region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::Corner: return "corner";
    case RegionKind::TriBlock: return "triblock";
    case RegionKind::TruncTet: return "trunctet";
    case RegionKind::Prism: return "prism";
    case RegionKind::QuadBlock: return "quadblock";
  }
  return "?";
}

/// A piece of a tetrahedron cut out by S.
///   Corner:    a = vertex
///   TriBlock:  a = vertex, b = k (between triangle copies k and k+1)
///   TruncTet:  -
///   Prism:     a = 0 for the side containing vertex 0, 1 for the other
///   QuadBlock: a = k (between quad copies k and k+1, counted from side 0)
struct RegionKey {
  int tet = 0;
  RegionKind kind = RegionKind::TruncTet;
  long long a = 0;
  long long b = 0;
  auto operator<=>(const RegionKey&) const = default;

  std::string str() const {
    std::string s = std::to_string(tet) + ":" + region_kind_name(kind);
    switch (kind) {
      case RegionKind::Corner:
      case RegionKind::Prism:
      case RegionKind::QuadBlock: s += ":" + std::to_string(a); break;
      case RegionKind::TriBlock: s += ":" + std::to_string(a) + ":" + std::to_string(b); break;
      case RegionKind::TruncTet: break;
    }
    return s;
  }
};

/// Parses the form written by RegionKey::str().
inline std::optional<RegionKey> parse_region_key(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2) return std::nullopt;
  try {
    RegionKey k;
    k.tet = std::stoi(parts[0]);
    const std::string& kind = parts[1];
    auto need = [&](std::size_t n) { return parts.size() == n; };
    if (kind == "corner" && need(3)) {
      k.kind = RegionKind::Corner;
      k.a = std::stoll(parts[2]);
    } else if (kind == "triblock" && need(4)) {
      k.kind = RegionKind::TriBlock;
      k.a = std::stoll(parts[2]);
      k.b = std::stoll(parts[3]);
    } else if (kind == "trunctet" && need(2)) {
      k.kind = RegionKind::TruncTet;
    } else if (kind == "prism" && need(3)) {
      k.kind = RegionKind::Prism;
      k.a = std::stoll(parts[2]);
    } else if (kind == "quadblock" && need(3)) {
      k.kind = RegionKind::QuadBlock;
      k.a = std::stoll(parts[2]);
    } else {
      return std::nullopt;
    }
    return k;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Region {
  RegionKey key;
  std::vector<int> vertices;  // local vertices of the tetrahedron inside the region
  bool meets_boundary = false;
  int component = -1;
};

enum class CrushFailure {
  NoVertexFreeComponent,
  AmbiguousX,
  XMeetsBoundary,
  XEqualsProduct,
  NontrivialProduct,
  CycleOfTruncatedPrisms,
};

inline const char* crush_failure_name(CrushFailure f) {
  switch (f) {
    case CrushFailure::NoVertexFreeComponent: return "NoVertexFreeComponent";
    case CrushFailure::AmbiguousX: return "AmbiguousX";
    case CrushFailure::XMeetsBoundary: return "XMeetsBoundary";
    case CrushFailure::XEqualsProduct: return "XEqualsProduct";
    case CrushFailure::NontrivialProduct: return "NontrivialProduct";
    case CrushFailure::CycleOfTruncatedPrisms: return "CycleOfTruncatedPrisms";
  }
  return "?";
}

/// The cells cut out of each tetrahedron by a closed normal surface S, their
/// identifications across faces, and the complement components.
///
/// Inside face f of tet t, the arcs of S cutting off vertex v are counted
/// outward from v: triangles first, then quads. Gap g in [0, c] of that slot
/// is the face piece between arc g-1 and arc g; gap c is the central piece of
/// the face. Gap (t, f, v, g) is glued to gap (t', p[f], p[v], g).
class CellDecomposition {
 public:
  CellDecomposition(const Triangulation& tri, const NormalSurface& s) : tri_(tri), s_(s), c_(DiskCounts::from(s)) {
    if (s.num_tets() != tri.size()) throw LengthMismatch("surface and triangulation differ in size");
    if (!is_admissible(tri, s)) throw std::invalid_argument("crush: surface is not admissible");
    if (!is_closed(tri, s)) throw std::invalid_argument("crush: surface is not closed");
    build();
  }

  const Triangulation& triangulation() const { return tri_; }
  const NormalSurface& surface() const { return s_; }
  const DiskCounts& counts() const { return c_; }
  const std::vector<Region>& regions() const { return regions_; }
  int num_components() const { return num_components_; }

  long long tri(int t, int v) const { return c_.tri(t, v); }
  int quad_type(int t) const { return c_.quad_type_in(t); }
  long long quads(int t) const {
    int j = c_.quad_type_in(t);
    return j < 0 ? 0 : c_.quad(t, j);
  }

  /// Number of S-arcs cutting off v in face f of t.
  long long slot_arcs(int t, int f, int v) const {
    int j = quad_type(t);
    return tri(t, v) + ((j >= 0 && crushkit::quad_type(v, f) == j) ? quads(t) : 0);
  }

  int region_id(const RegionKey& k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
  }
  const Region& region(int id) const { return regions_[id]; }

  /// Region containing the face piece at gap g of slot (t, f, v).
  int region_of_gap(int t, int f, int v, long long g) const { return region_id(key_of_gap(t, f, v, g)); }

  RegionKey key_of_gap(int t, int f, int v, long long g) const {
    const long long nt = tri(t, v);
    const int j = quad_type(t);
    const long long q = quads(t);
    const long long qs = (j >= 0 && crushkit::quad_type(v, f) == j) ? q : 0;
    if (g < nt) {
      if (g == 0) return {t, RegionKind::Corner, v, 0};
      return {t, RegionKind::TriBlock, v, g - 1};
    }
    if (g == nt) {
      if (j < 0) return {t, RegionKind::TruncTet, 0, 0};
      if (qs > 0) return {t, RegionKind::Prism, quad_low_side(j, v) ? 0 : 1, 0};
      return {t, RegionKind::Prism, quad_low_side(j, f) ? 1 : 0, 0};
    }
    if (g < nt + qs) {
      long long i = g - nt;
      return {t, RegionKind::QuadBlock, quad_low_side(j, v) ? i - 1 : q - 1 - i, 0};
    }
    return {t, RegionKind::Prism, quad_low_side(j, v) ? 1 : 0, 0};
  }

  /// Regions containing F's triangle at v in gap g, or F's quad in gap h.
  int region_of_triangle(int t, int v, long long g) const { return region_of_gap(t, v == 0 ? 1 : 0, v, g); }
  int region_of_quad(int t, long long h) const {
    const long long q = quads(t);
    if (quad_type(t) < 0) return region_id({t, RegionKind::TruncTet, 0, 0});
    if (h == 0) return region_id({t, RegionKind::Prism, 0, 0});
    if (h == q) return region_id({t, RegionKind::Prism, 1, 0});
    return region_id({t, RegionKind::QuadBlock, h - 1, 0});
  }

  bool has_vertex(int id) const { return !regions_[id].vertices.empty(); }

  /// Complement components containing no vertex.
  std::vector<int> vertex_free_components() const {
    std::vector<int> out;
    for (int c = 0; c < num_components_; ++c)
      if (!comp_vertex_[c]) out.push_back(c);
    return out;
  }
  bool component_has_vertex(int c) const { return comp_vertex_[c]; }
  bool component_meets_boundary(int c) const { return comp_boundary_[c]; }
  /// True when the component has only product blocks (no truncated tetrahedra or prisms).
  bool component_is_pure_product(int c) const {
    for (const auto& r : regions_)
      if (r.component == c && (r.key.kind == RegionKind::TruncTet || r.key.kind == RegionKind::Prism)) return false;
    return true;
  }

  std::vector<int> regions_in_component(int c) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < regions_.size(); ++i)
      if (regions_[i].component == c) out.push_back(static_cast<int>(i));
    return out;
  }

 private:
  void add_region(RegionKey k, std::vector<int> verts) {
    index_[k] = static_cast<int>(regions_.size());
    regions_.push_back({k, std::move(verts), false, -1});
  }

  void build() {
    const int n = static_cast<int>(tri_.size());
    for (int t = 0; t < n; ++t) {
      const int j = quad_type(t);
      const long long q = quads(t);
      for (int v = 0; v < 4; ++v) {
        if (tri(t, v) >= 1) add_region({t, RegionKind::Corner, v, 0}, {v});
        for (long long k = 0; k + 1 < tri(t, v); ++k) add_region({t, RegionKind::TriBlock, v, k}, {});
      }
      auto bare = [&](int v) { return tri(t, v) == 0; };
      if (j < 0) {
        std::vector<int> vs;
        for (int v = 0; v < 4; ++v)
          if (bare(v)) vs.push_back(v);
        add_region({t, RegionKind::TruncTet, 0, 0}, vs);
      } else {
        for (int side = 0; side < 2; ++side) {
          std::vector<int> vs;
          for (int v = 0; v < 4; ++v)
            if (bare(v) && quad_low_side(j, v) == (side == 0)) vs.push_back(v);
          add_region({t, RegionKind::Prism, side, 0}, vs);
        }
        for (long long k = 0; k + 1 < q; ++k) add_region({t, RegionKind::QuadBlock, k, 0}, {});
      }
    }
    UnionFind uf(regions_.size());
    for (int t = 0; t < n; ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri_.gluing(t, f);
        for (int v = 0; v < 4; ++v) {
          if (v == f) continue;
          const long long c = slot_arcs(t, f, v);
          for (long long gap = 0; gap <= c; ++gap) {
            int here = region_of_gap(t, f, v, gap);
            if (!g) {
              regions_[here].meets_boundary = true;
              continue;
            }
            uf.unite(here, region_of_gap(g->tet, g->perm[f], g->perm[v], gap));
          }
        }
      }
    auto lab = uf.labels(&num_components_);
    comp_vertex_.assign(num_components_, false);
    comp_boundary_.assign(num_components_, false);
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      regions_[i].component = lab[i];
      if (!regions_[i].vertices.empty()) comp_vertex_[lab[i]] = true;
      if (regions_[i].meets_boundary) comp_boundary_[lab[i]] = true;
    }
  }

  Triangulation tri_;
  NormalSurface s_;
  DiskCounts c_;
  std::vector<Region> regions_;
  std::map<RegionKey, int> index_;
  int num_components_ = 0;
  std::vector<bool> comp_vertex_;
  std::vector<bool> comp_boundary_;
};

struct Rejection {
  CrushFailure reason;
  std::vector<int> candidates;  // vertex-free components, for AmbiguousX
};

/// A cell decomposition with its selected complement component X.
struct Decomposition {
  CellDecomposition cells;
  int x = -1;

  bool in_x(int region) const { return region >= 0 && cells.region(region).component == x; }
  std::vector<int> x_regions() const { return cells.regions_in_component(x); }
  std::size_t count_in_x(RegionKind k) const {
    std::size_t n = 0;
    for (int r : x_regions()) n += cells.region(r).key.kind == k;
    return n;
  }
};

/// Builds the decomposition and selects X: the designated component if given,
/// else the unique vertex-free component, else the unique vertex-free
/// component that is not made only of product blocks.
inline std::variant<Decomposition, Rejection> decompose(const Triangulation& tri, const NormalSurface& s,
                                                        std::optional<RegionKey> designated = std::nullopt) {
  Decomposition d{CellDecomposition(tri, s), -1};
  const auto& cells = d.cells;
  if (designated) {
    int r = cells.region_id(*designated);
    if (r < 0) return Rejection{CrushFailure::NoVertexFreeComponent, {}};
    int c = cells.region(r).component;
    if (cells.component_has_vertex(c)) return Rejection{CrushFailure::NoVertexFreeComponent, {}};
    if (cells.component_meets_boundary(c)) return Rejection{CrushFailure::XMeetsBoundary, {c}};
    d.x = c;
    return d;
  }
  auto free = cells.vertex_free_components();
  std::vector<int> closed;
  for (int c : free)
    if (!cells.component_meets_boundary(c)) closed.push_back(c);
  if (free.empty()) return Rejection{CrushFailure::NoVertexFreeComponent, {}};
  if (closed.empty()) return Rejection{CrushFailure::XMeetsBoundary, free};
  if (closed.size() == 1) {
    d.x = closed[0];
    return d;
  }
  std::vector<int> solid;
  for (int c : closed)
    if (!cells.component_is_pure_product(c)) solid.push_back(c);
  if (solid.size() == 1) {
    d.x = solid[0];
    return d;
  }
  return Rejection{CrushFailure::AmbiguousX, closed};
}

/// Prisms of X glued hexagon to hexagon. A terminating chain runs from face
/// `from_face` of the truncated tetrahedron in `from_tet` to `to_face` of
/// `to_tet`; `perm` composes the vertex maps along it.
struct PrismChain {
  std::vector<std::pair<int, int>> prisms;  // (tet, side)
  bool cycle = false;
  int from_tet = -1, from_face = -1;
  int to_tet = -1, to_face = -1;
  Perm perm;
};

namespace detail {

// Follows gluings from face f of tet t through prisms of X. Returns the chain
// ending at a truncated tetrahedron, or a cycle if it returns to a prism
// already on the chain.
inline PrismChain follow_chain(const Decomposition& d, int t, int f) {
  const auto& cells = d.cells;
  const auto& tri = cells.triangulation();
  PrismChain ch;
  ch.from_tet = t;
  ch.from_face = f;
  Perm phi;
  int ct = t, cf = f;
  std::set<std::pair<int, int>> seen;
  while (true) {
    const auto& g = tri.gluing(ct, cf);
    if (!g) throw std::logic_error("chain reached a boundary face");
    phi = g->perm * phi;
    int nt = g->tet, nf = g->perm[cf];
    int j = cells.quad_type(nt);
    if (j < 0) {
      ch.to_tet = nt;
      ch.to_face = nf;
      ch.perm = phi;
      return ch;
    }
    int side = quad_low_side(j, nf) ? 1 : 0;
    if (!seen.insert({nt, side}).second) {
      ch.cycle = true;
      return ch;
    }
    ch.prisms.emplace_back(nt, side);
    int exit = quad_partner(j, nf);
    phi = Perm::transposition(nf, exit) * phi;
    ct = nt;
    cf = exit;
  }
}

}  // namespace detail

struct ChainReport {
  std::vector<PrismChain> chains;  // terminating chains, each listed once
  std::vector<PrismChain> cycles;
  bool has_cycle() const { return !cycles.empty(); }
};

inline ChainReport prism_chains(const Decomposition& d) {
  const auto& cells = d.cells;
  const auto& tri = cells.triangulation();
  ChainReport rep;
  std::set<std::pair<int, int>> used;
  std::set<std::pair<int, int>> done_ends;
  for (int r : d.x_regions()) {
    const auto& k = cells.region(r).key;
    if (k.kind != RegionKind::TruncTet) continue;
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(k.tet, f);
      if (!g || cells.quad_type(g->tet) < 0) continue;
      if (done_ends.count({k.tet, f})) continue;
      auto ch = detail::follow_chain(d, k.tet, f);
      done_ends.insert({k.tet, f});
      done_ends.insert({ch.to_tet, ch.to_face});
      for (auto p : ch.prisms) used.insert(p);
      rep.chains.push_back(std::move(ch));
    }
  }
  for (int r : d.x_regions()) {
    const auto& k = cells.region(r).key;
    if (k.kind != RegionKind::Prism || used.count({k.tet, static_cast<int>(k.a)})) continue;
    int j = cells.quad_type(k.tet);
    // A hexagon of this prism lies in a face on the opposite side.
    int f = -1;
    for (int x = 0; x < 4 && f < 0; ++x)
      if (quad_low_side(j, x) != (k.a == 0)) f = x;
    PrismChain cyc;
    cyc.cycle = true;
    int ct = k.tet, cf = f;
    cyc.prisms.emplace_back(k.tet, static_cast<int>(k.a));
    used.insert({k.tet, static_cast<int>(k.a)});
    while (true) {
      int exit = quad_partner(j, cf);
      const auto& g = tri.gluing(ct, exit);
      int nt = g->tet, nf = g->perm[exit];
      j = cells.quad_type(nt);
      int side = quad_low_side(j, nf) ? 1 : 0;
      if (used.count({nt, side})) break;
      used.insert({nt, side});
      cyc.prisms.emplace_back(nt, side);
      ct = nt;
      cf = nf;
    }
    rep.cycles.push_back(std::move(cyc));
  }
  return rep;
}

struct ProductComponent {
  int vertical_edges = 0;
  int trapezoids = 0;
  int blocks = 0;
  bool consistent = true;  // an I-bundle with a global product orientation
  bool has_boundary = false;
  int euler() const { return vertical_edges - trapezoids + blocks; }
  /// K is connected by construction; product, Euler characteristic 1, and not
  /// a closed surface.
  bool trivial() const { return consistent && euler() == 1 && (has_boundary || blocks == 0); }
};

struct ProductRegion {
  std::vector<ProductComponent> components;
  bool x_equals_p = false;
  bool trivial() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.trivial(); });
  }
};

/// The union of vertical edges, trapezoids and product blocks of X, with a
/// product check. Every cell carries a fibre direction: a vertical segment
/// points to the smaller local vertex of its edge, a trapezoid to the vertex
/// of its slot, a triangular block to its vertex, a quadrilateral block to
/// side 0.
inline ProductRegion product_region(const Decomposition& d) {
  const auto& cells = d.cells;
  const auto& tri = cells.triangulation();
  const int n = static_cast<int>(tri.size());
  ProductRegion pr;
  pr.x_equals_p = cells.component_is_pure_product(d.x);

  std::map<std::tuple<int, int, long long>, std::size_t> seg_id;     // (t, edge, s from smaller vertex)
  std::map<std::tuple<int, int, int, long long>, std::size_t> trap;  // (t, f, v, g)
  std::map<int, std::size_t> block;                                  // region id
  std::size_t next = 0;

  auto edge_points = [&](int t, int x, int y) {
    // Number of S points on the edge {x, y} of t.
    int f = -1;
    for (int w = 0; w < 4 && f < 0; ++w)
      if (w != x && w != y) f = w;
    return cells.slot_arcs(t, f, x) + cells.slot_arcs(t, f, y);
  };
  auto seg_region = [&](int t, int x, int y, long long s_from_x) {
    int f = -1;
    for (int w = 0; w < 4 && f < 0; ++w)
      if (w != x && w != y) f = w;
    long long cx = cells.slot_arcs(t, f, x);
    if (s_from_x <= cx) return cells.region_of_gap(t, f, x, s_from_x);
    return cells.region_of_gap(t, f, y, edge_points(t, x, y) - s_from_x);
  };

  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      int x = kEdgeVertices[e][0], y = kEdgeVertices[e][1];
      long long m = edge_points(t, x, y);
      for (long long s = 1; s < m; ++s)
        if (d.in_x(seg_region(t, x, y, s))) seg_id[{t, e, s}] = next++;
    }
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        long long c = cells.slot_arcs(t, f, v);
        for (long long g = 1; g < c; ++g)
          if (d.in_x(cells.region_of_gap(t, f, v, g))) trap[{t, f, v, g}] = next++;
      }
  for (int r : d.x_regions()) {
    auto k = cells.region(r).key.kind;
    if (k == RegionKind::TriBlock || k == RegionKind::QuadBlock) block[r] = next++;
  }

  ParityUnionFind puf(next);
  UnionFind seg_uf(next), trap_uf(next);
  std::vector<int> bad;
  auto relate = [&](std::size_t a, std::size_t b, int rel) {
    if (!puf.unite(a, b, rel)) bad.push_back(static_cast<int>(a));
  };

  // Segment at index s from local vertex `from` on edge {from, other}.
  auto segment = [&](int t, int from, int other, long long s) -> std::pair<std::size_t, int> {
    int e = edge_number(from, other);
    if (from < other) return {seg_id.at({t, e, s}), 0};
    return {seg_id.at({t, e, edge_points(t, from, other) - s}), 1};
  };

  for (const auto& [key, id] : trap) {
    auto [t, f, v, g] = key;
    for (int x = 0; x < 4; ++x) {
      if (x == v || x == f) continue;
      auto [sid, par] = segment(t, v, x, g);
      relate(id, sid, par);
    }
  }
  for (const auto& [r, id] : block) {
    const auto& k = cells.region(r).key;
    const int t = k.tet;
    if (k.kind == RegionKind::TriBlock) {
      const int v = static_cast<int>(k.a);
      for (int f = 0; f < 4; ++f)
        if (f != v) relate(id, trap.at({t, f, v, k.b + 1}), 0);
    } else {
      const int j = cells.quad_type(t);
      const long long q = cells.quads(t);
      for (int f = 0; f < 4; ++f) {
        int w = quad_partner(j, f);
        bool low = quad_low_side(j, w);
        long long g = cells.tri(t, w) + (low ? k.a + 1 : q - 1 - k.a);
        relate(id, trap.at({t, f, w, g}), low ? 0 : 1);
      }
    }
  }
  // Identifications across faces.
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& gl = tri.gluing(t, f);
      if (!gl) continue;
      const int ot = gl->tet, of = gl->perm[f];
      if (std::make_pair(ot, of) < std::make_pair(t, f)) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        for (long long g = 1; g < cells.slot_arcs(t, f, v); ++g) {
          auto a = trap.find({t, f, v, g});
          if (a == trap.end()) continue;
          auto b = trap.at({ot, of, gl->perm[v], g});
          relate(a->second, b, 0);
          trap_uf.unite(a->second, b);
        }
      }
      for (int e = 0; e < 6; ++e) {
        int x = kEdgeVertices[e][0], y = kEdgeVertices[e][1];
        if (x == f || y == f) continue;
        long long m = edge_points(t, x, y);
        for (long long s = 1; s < m; ++s) {
          auto a = seg_id.find({t, e, s});
          if (a == seg_id.end()) continue;
          auto [b, par] = segment(ot, gl->perm[x], gl->perm[y], s);
          relate(a->second, b, par);
          seg_uf.unite(a->second, b);
        }
      }
    }

  // Components of P and their base complexes.
  std::map<std::size_t, int> comp_of_root;
  auto comp = [&](std::size_t id) {
    auto r = puf.find(id).first;
    auto it = comp_of_root.find(r);
    if (it != comp_of_root.end()) return it->second;
    int c = static_cast<int>(pr.components.size());
    comp_of_root[r] = c;
    pr.components.emplace_back();
    return c;
  };
  std::set<std::size_t> seen_seg, seen_trap;
  for (const auto& [key, id] : seg_id) {
    int c = comp(id);
    if (seen_seg.insert(seg_uf.find(id)).second) pr.components[c].vertical_edges++;
  }
  std::map<std::size_t, int> trap_blocks;  // trapezoid class -> incident block sides
  for (const auto& [key, id] : trap) {
    int c = comp(id);
    auto cls = trap_uf.find(id);
    if (seen_trap.insert(cls).second) pr.components[c].trapezoids++;
    auto [t, f, v, g] = key;
    auto kind = cells.region(cells.region_of_gap(t, f, v, g)).key.kind;
    trap_blocks[cls] += (kind == RegionKind::TriBlock || kind == RegionKind::QuadBlock);
  }
  for (const auto& [r, id] : block) pr.components[comp(id)].blocks++;
  for (const auto& [key, id] : trap)
    if (trap_blocks[trap_uf.find(id)] < 2) pr.components[comp(id)].has_boundary = true;
  for (int id : bad) pr.components[comp(id)].consistent = false;
  return pr;
}

struct CrushObstruction {
  CrushFailure reason;
  std::string detail;
  std::vector<int> candidates;    // AmbiguousX
  std::optional<PrismChain> cycle;  // CycleOfTruncatedPrisms
};

/// Face pairing of the crushed triangulation: direct, or through a chain.
struct StarFace {
  int tet = -1, face = -1;
  int to_tet = -1, to_face = -1;
  Perm perm;
  bool direct = true;
  std::vector<std::pair<int, int>> via;  // (source tet, prism side)
};

struct CrushOutcome {
  Decomposition decomposition;
  ChainReport chains;
  ProductRegion product;
  Triangulation crushed;
  std::vector<int> star_to_source;    // T* tet -> source tet
  std::vector<int> source_to_star;    // source tet -> T* tet or -1
  std::vector<StarFace> faces;        // one entry per (T* tet, face)

  const Triangulation& source() const { return decomposition.cells.triangulation(); }
  const NormalSurface& surface() const { return decomposition.cells.surface(); }

  /// Correspondence sidecar in line format.
  std::string correspondence() const {
    std::ostringstream os;
    os << "crush-correspondence-v1\n";
    for (std::size_t i = 0; i < star_to_source.size(); ++i) os << "tet " << i << " <- " << star_to_source[i] << "\n";
    for (const auto& f : faces) {
      if (f.direct) {
        os << "face " << f.tet << " " << f.face << " direct " << f.to_tet << " " << f.perm.str() << "\n";
      } else {
        os << "face " << f.tet << " " << f.face << " chain " << f.to_tet << " " << f.perm.str() << " via";
        for (auto [t, side] : f.via) os << " " << t << ":" << side;
        os << "\n";
      }
    }
    return os.str();
  }
};

/// Crushes tri along S when X is not all product, the product region is
/// trivial and no prisms form a cycle.
inline std::variant<CrushOutcome, CrushObstruction> crush_along(const Triangulation& tri, const NormalSurface& s,
                                                                std::optional<RegionKey> designated = std::nullopt) {
  auto dec = decompose(tri, s, designated);
  if (auto* rej = std::get_if<Rejection>(&dec))
    return CrushObstruction{rej->reason, crush_failure_name(rej->reason), rej->candidates, std::nullopt};
  auto& d = std::get<Decomposition>(dec);
  auto product = product_region(d);
  if (product.x_equals_p) return CrushObstruction{CrushFailure::XEqualsProduct, "X is entirely product region", {}, {}};
  if (!product.trivial()) {
    std::string why;
    for (std::size_t i = 0; i < product.components.size(); ++i) {
      const auto& c = product.components[i];
      if (c.trivial()) continue;
      why = "component " + std::to_string(i) + ": euler " + std::to_string(c.euler()) +
            (c.consistent ? "" : ", twisted") + (c.has_boundary || c.blocks == 0 ? "" : ", closed");
      break;
    }
    return CrushObstruction{CrushFailure::NontrivialProduct, why, {}, {}};
  }
  auto chains = prism_chains(d);
  if (chains.has_cycle())
    return CrushObstruction{CrushFailure::CycleOfTruncatedPrisms,
                            "cycle of " + std::to_string(chains.cycles[0].prisms.size()) + " prisms",
                            {},
                            chains.cycles[0]};

  CrushOutcome out{std::move(d), std::move(chains), std::move(product), Triangulation(), {}, {}, {}};
  const auto& cells = out.decomposition.cells;
  out.source_to_star.assign(tri.size(), -1);
  for (int r : out.decomposition.x_regions()) {
    const auto& k = cells.region(r).key;
    if (k.kind != RegionKind::TruncTet) continue;
    out.source_to_star[k.tet] = 0;
  }
  for (std::size_t t = 0; t < tri.size(); ++t)
    if (out.source_to_star[t] == 0) {
      out.source_to_star[t] = static_cast<int>(out.star_to_source.size());
      out.star_to_source.push_back(static_cast<int>(t));
    }
  Triangulation star(out.star_to_source.size(), tri.name().empty() ? std::string("crushed") : tri.name() + "-crushed");
  star.set_ideal(true);
  for (std::size_t i = 0; i < out.star_to_source.size(); ++i) {
    const int t = out.star_to_source[i];
    for (int f = 0; f < 4; ++f) {
      StarFace sf;
      sf.tet = static_cast<int>(i);
      sf.face = f;
      const auto& g = tri.gluing(t, f);
      if (cells.quad_type(g->tet) < 0) {
        sf.to_tet = out.source_to_star[g->tet];
        sf.to_face = g->perm[f];
        sf.perm = g->perm;
      } else {
        auto ch = detail::follow_chain(out.decomposition, t, f);
        sf.direct = false;
        sf.to_tet = out.source_to_star[ch.to_tet];
        sf.to_face = ch.to_face;
        sf.perm = ch.perm;
        sf.via = ch.prisms;
      }
      star.set_gluing(sf.tet, f, Gluing{sf.to_tet, sf.perm});
      out.faces.push_back(std::move(sf));
    }
  }
  out.crushed = std::move(star);
  return out;
}

}  // namespace crushkit
