#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "crushkit/disk_complex.hpp"
#include "crushkit/enumerate.hpp"
#include "crushkit/special.hpp"

namespace crushkit {

/// A normal arc on the boundary: copy `copy` (0 nearest the corner) of the
/// arcs cutting off `corner` in boundary face `face` (index into
/// Skeleton::boundary_faces).
struct BoundaryArc {
  int face;
  int corner;
  long long copy;

  auto operator<=>(const BoundaryArc&) const = default;
};

struct BoundaryCurve {
  int component = -1;  // boundary component of the curve
  std::vector<BoundaryArc> arcs;
  std::map<int, Coord> weights;  // boundary edge class -> crossings
  // Signed intersections with the cycle basis of the component's boundary
  // 1-skeleton (see boundary_cycle_basis), sign-normalized; empty when the
  // curve is null-homologous.
  std::vector<long long> homology;
};

struct BoundaryCurveSystem {
  std::vector<std::array<Coord, 4>> arc_counts;  // per boundary face, per corner (0 at the face's own vertex)
  std::map<int, Coord> edge_weights;             // boundary edge class -> crossings
  std::vector<BoundaryCurve> curves;
};

/// Tail and head vertex classes of edge class e in its first member's orientation.
inline std::pair<int, int> edge_ends(const Skeleton& sk, int e) {
  auto [t, le] = sk.edges[e][0];
  return {sk.vertex_of[t][kEdgeVertices[le][0]], sk.vertex_of[t][kEdgeVertices[le][1]]};
}

/// Fundamental cycles of a spanning tree of boundary component `comp`'s
/// 1-skeleton: for each non-tree edge (increasing class order), the signed
/// edge multiset of its cycle.
inline std::vector<std::map<int, int>> boundary_cycle_basis(const Skeleton& sk, int comp) {
  std::vector<int> verts, edges;
  for (std::size_t v = 0; v < sk.num_vertices(); ++v)
    if (sk.vertex_component[v] == comp) verts.push_back(static_cast<int>(v));
  for (std::size_t e = 0; e < sk.num_edges(); ++e)
    if (sk.edge_component[e] == comp) edges.push_back(static_cast<int>(e));
  if (verts.empty()) return {};
  // path[v]: signed edges from the root to v along the tree.
  std::map<int, std::map<int, int>> path;
  std::set<int> tree;
  path[verts.front()] = {};
  for (bool grew = true; grew;) {
    grew = false;
    for (int e : edges) {
      auto [u, w] = edge_ends(sk, e);
      if (path.count(u) && !path.count(w)) {
        path[w] = path[u];
        path[w][e] += 1;
      } else if (path.count(w) && !path.count(u)) {
        path[u] = path[w];
        path[u][e] -= 1;
      } else {
        continue;
      }
      tree.insert(e);
      grew = true;
    }
  }
  std::vector<std::map<int, int>> basis;
  for (int e : edges) {
    if (tree.count(e)) continue;
    auto [u, w] = edge_ends(sk, e);
    std::map<int, int> cyc = path[u];
    cyc[e] += 1;
    for (auto [x, k] : path[w]) cyc[x] -= k;
    basis.push_back(std::move(cyc));
  }
  return basis;
}

inline BoundaryCurveSystem boundary_curves(const Triangulation& tri, const Skeleton& sk, const NormalSurface& s) {
  if (!is_admissible(tri, s)) throw std::invalid_argument("boundary_curves: surface is not admissible");
  BoundaryCurveSystem sys;
  const auto& faces = sk.boundary_faces;
  std::map<std::pair<int, int>, int> face_index;
  for (std::size_t i = 0; i < faces.size(); ++i) face_index[{faces[i][0], faces[i][1]}] = static_cast<int>(i);

  sys.arc_counts.resize(faces.size());
  std::vector<BoundaryArc> arcs;
  std::map<BoundaryArc, std::size_t> arc_id;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto [t, f] = faces[i];
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      Coord n = arc_count(s, t, f, v);
      sys.arc_counts[i][v] = n;
      for (long long k = 0; k < n; ++k) {
        BoundaryArc a{static_cast<int>(i), v, k};
        arc_id[a] = arcs.size();
        arcs.push_back(a);
      }
    }
  }

  // partner[{arc, w}]: the arc continuing across the endpoint on edge {corner, w}.
  std::map<std::pair<std::size_t, int>, std::pair<std::size_t, int>> partner;
  UnionFind uf(arcs.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    auto [t, f] = faces[i];
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (a == f || b == f) continue;
        const long long na = static_cast<long long>(sys.arc_counts[i][a]);
        const long long nb = static_cast<long long>(sys.arc_counts[i][b]);
        const long long w = na + nb;
        sys.edge_weights[sk.edge_of[t][edge_number(a, b)]] = w;
        auto nbr = boundary_neighbour(tri, {t, f, a, b});
        const int j = face_index.at({nbr.tet, nbr.face});
        const long long ma = static_cast<long long>(sys.arc_counts[j][nbr.a]);
        // Point k counted from a lies on arc (a, k) or (b, w-1-k) on either side.
        for (long long k = 0; k < w; ++k) {
          BoundaryArc here = k < na ? BoundaryArc{static_cast<int>(i), a, k} : BoundaryArc{static_cast<int>(i), b, w - 1 - k};
          BoundaryArc there = k < ma ? BoundaryArc{j, nbr.a, k} : BoundaryArc{j, nbr.b, w - 1 - k};
          const std::size_t x = arc_id.at(here), y = arc_id.at(there);
          partner[{x, here.corner == a ? b : a}] = {y, there.corner == nbr.a ? nbr.b : nbr.a};
          uf.unite(x, y);
        }
      }
  }

  int count = 0;
  auto label = uf.labels(&count);
  sys.curves.resize(count);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto& c = sys.curves[label[i]];
    const auto& a = arcs[i];
    c.arcs.push_back(a);
    c.component = sk.face_component[a.face];
    auto [t, f] = faces[a.face];
    for (int w = 0; w < 4; ++w)
      if (w != f && w != a.corner) c.weights[sk.edge_of[t][edge_number(a.corner, w)]] += 1;
  }
  // Each crossing was counted once from each side.
  for (auto& c : sys.curves)
    for (auto& [e, w] : c.weights) w /= 2;

  // Orient each curve by walking it and record signed crossings, counted on
  // exit from a face: -1 when the face lies to the left of the edge class.
  std::map<int, std::vector<std::map<int, int>>> bases;
  std::vector<bool> first_seen(count, false);
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    const int cid = label[start];
    if (first_seen[cid]) continue;
    first_seen[cid] = true;
    std::map<int, long long> cochain;
    std::size_t cur = start;
    auto [t0, f0] = faces[arcs[start].face];
    int exit_w = -1;
    for (int w = 0; w < 4; ++w)
      if (w != f0 && w != arcs[start].corner) exit_w = w;
    for (std::size_t guard = 0; guard <= arcs.size(); ++guard) {
      const auto& a = arcs[cur];
      auto [t, f] = faces[a.face];
      int lo = std::min(a.corner, exit_w), hi = std::max(a.corner, exit_w);
      int p0 = -1, p2 = -1;
      for (int v = 0; v < 4; ++v)
        if (v != f) {
          if (p0 < 0) p0 = v;
          p2 = v;
        }
      const bool face_positive = f % 2 == 0;
      const bool agrees_local = face_positive != (lo == p0 && hi == p2);
      const int le = edge_number(lo, hi);
      const bool agrees = agrees_local == (sk.edge_sign[t][le] > 0);
      cochain[sk.edge_of[t][le]] += agrees ? -1 : 1;
      auto [next, entered_w] = partner.at({cur, exit_w});
      cur = next;
      auto [tn, fn] = faces[arcs[cur].face];
      for (int w = 0; w < 4; ++w)
        if (w != fn && w != arcs[cur].corner && w != entered_w) exit_w = w;
      if (cur == start) break;
    }
    auto& curve = sys.curves[cid];
    auto it = bases.find(curve.component);
    if (it == bases.end()) it = bases.emplace(curve.component, boundary_cycle_basis(sk, curve.component)).first;
    std::vector<long long> h;
    for (const auto& cyc : it->second) {
      long long v = 0;
      for (auto [e, k] : cyc) v += k * (cochain.count(e) ? cochain[e] : 0);
      h.push_back(v);
    }
    auto nz = std::find_if(h.begin(), h.end(), [](long long x) { return x != 0; });
    if (nz == h.end()) continue;
    if (*nz < 0)
      for (auto& x : h) x = -x;
    curve.homology = std::move(h);
  }
  return sys;
}

inline BoundaryCurveSystem boundary_curves(const Triangulation& tri, const NormalSurface& s) {
  return boundary_curves(tri, build_skeleton(tri), s);
}

/// Primitive edge-weight vector of an essential curve, indexed by the
/// boundary edges of its component in increasing class order. On a
/// one-vertex torus, `pair` lists the two weights other than the largest
/// (which equals their sum) and `long_edge` names the edge carrying it.
struct SlopeClass {
  int component = -1;
  std::vector<Coord> weights;
  std::optional<std::array<Coord, 2>> pair;
  int long_edge = -1;

  bool operator<(const SlopeClass& o) const { return std::tie(component, weights) < std::tie(o.component, o.weights); }
  bool operator==(const SlopeClass& o) const { return component == o.component && weights == o.weights; }

  std::string weights_str() const {
    std::string s;
    for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + weights[i].str();
    return s;
  }
};

struct TrivialSlope {};

using SlopeResult = std::variant<SlopeClass, TrivialSlope>;

inline std::vector<int> boundary_edges_of(const Skeleton& sk, int component) {
  std::vector<int> out;
  for (std::size_t e = 0; e < sk.num_edges(); ++e)
    if (sk.edge_component[e] == component) out.push_back(static_cast<int>(e));
  return out;
}

/// Edge weights of the curve linking boundary vertex v.
inline std::map<int, Coord> vertex_link_weights(const Skeleton& sk, int v) {
  std::map<int, Coord> w;
  for (std::size_t e = 0; e < sk.num_edges(); ++e) {
    if (!sk.edge_boundary[e]) continue;
    auto [t, le] = sk.edges[e][0];
    int a = sk.vertex_of[t][kEdgeVertices[le][0]], b = sk.vertex_of[t][kEdgeVertices[le][1]];
    int ends = (a == v) + (b == v);
    if (ends) w[static_cast<int>(e)] = ends;
  }
  return w;
}

inline SlopeResult slope_class(const Skeleton& sk, int component, const std::map<int, Coord>& weights) {
  const auto edges = boundary_edges_of(sk, component);
  std::vector<Coord> w;
  for (int e : edges) w.push_back(weights.count(e) ? weights.at(e) : Coord(0));
  Coord g = 0;
  for (const auto& x : w) g = boost::multiprecision::gcd(g, x);
  if (g == 0 || sk.boundary_euler(component) == 2) return TrivialSlope{};
  for (std::size_t v = 0; v < sk.num_vertices(); ++v) {
    if (sk.vertex_component[v] != component) continue;
    auto link = vertex_link_weights(sk, static_cast<int>(v));
    bool same = true;
    for (int e : edges) same = same && (link.count(e) ? link.at(e) : Coord(0)) == (weights.count(e) ? weights.at(e) : Coord(0));
    if (same) return TrivialSlope{};
  }
  SlopeClass cls;
  cls.component = component;
  for (auto& x : w) x /= g;
  cls.weights = w;
  int nverts = 0;
  for (int c : sk.vertex_component) nverts += c == component;
  if (nverts == 1 && edges.size() == 3) {
    std::size_t big = std::max_element(w.begin(), w.end()) - w.begin();
    std::array<Coord, 2> p;
    int k = 0;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != big) p[k++] = w[i];
    cls.pair = p;
    cls.long_edge = edges[big];
  }
  return cls;
}

inline SlopeResult slope_class(const Skeleton& sk, const BoundaryCurve& c) { return slope_class(sk, c.component, c.weights); }

/// Nontrivial slope classes of every boundary curve of s, sorted, with repeats.
inline std::vector<SlopeClass> slopes_of(const Triangulation& tri, const Skeleton& sk, const NormalSurface& s) {
  std::vector<SlopeClass> out;
  for (const auto& c : boundary_curves(tri, sk, s).curves)
    if (auto r = slope_class(sk, c); std::holds_alternative<SlopeClass>(r)) out.push_back(std::get<SlopeClass>(r));
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct nonzero homology classes of the boundary curves of s, per component.
inline std::set<std::pair<int, std::vector<long long>>> homology_classes(const Triangulation& tri, const Skeleton& sk,
                                                                       const NormalSurface& s) {
  std::set<std::pair<int, std::vector<long long>>> out;
  for (const auto& c : boundary_curves(tri, sk, s).curves)
    if (!c.homology.empty()) out.emplace(c.component, c.homology);
  return out;
}

struct CensusEntry {
  SlopeClass slope;
  long long count = 0;  // surfaces exhibiting the class
  NormalSurface representative;
  std::optional<std::vector<std::pair<std::size_t, Coord>>> decomposition;  // over fundamentals, when supplied
};

struct SlopeCensus {
  std::string name;
  int chi_min = 0;
  int bound = 0;
  std::vector<CensusEntry> entries;  // sorted by slope

  std::set<SlopeClass> classes() const {
    std::set<SlopeClass> s;
    for (const auto& e : entries) s.insert(e.slope);
    return s;
  }
};

inline SlopeCensus slope_census(const Triangulation& tri, int chi_min, int B,
                                const std::vector<NormalSurface>* fundamentals = nullptr) {
  const auto sk = build_skeleton(tri);
  SlopeCensus census{tri.name(), chi_min, B, {}};
  std::map<SlopeClass, CensusEntry> found;
  for (const auto& s : surfaces_up_to(tri, B).surfaces) {
    if (s.is_zero()) continue;
    auto top = surface_topology(tri, s);
    if (top.components != 1 || top.euler < chi_min) continue;
    auto slopes = slopes_of(tri, sk, s);
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    for (const auto& cls : slopes) {
      auto [it, fresh] = found.try_emplace(cls, CensusEntry{cls, 0, s, std::nullopt});
      it->second.count += 1;
      if (fresh && fundamentals) it->second.decomposition = decompose_over(s, *fundamentals);
    }
  }
  for (auto& [cls, entry] : found) census.entries.push_back(std::move(entry));
  return census;
}

inline std::string format_census(const SlopeCensus& c) {
  std::string out = std::string("ncoord-v1 name=") + (c.name.empty() ? "-" : c.name) +
                    " census chi_min=" + std::to_string(c.chi_min) + " bound=" + std::to_string(c.bound) + "\n";
  for (const auto& e : c.entries)
    out += "component=" + std::to_string(e.slope.component) + " weights=" + e.slope.weights_str() +
           " count=" + std::to_string(e.count) + "\n";
  return out;
}

enum class SumCase { DisjointUnion, VertexDiskSplit, IsotopicReplacement, NotApplicable };

inline const char* sum_case_name(SumCase c) {
  switch (c) {
    case SumCase::DisjointUnion: return "DisjointUnion";
    case SumCase::VertexDiskSplit: return "VertexDiskSplit";
    case SumCase::IsotopicReplacement: return "IsotopicReplacement";
    case SumCase::NotApplicable: return "NotApplicable";
  }
  return "";
}

struct SumClassification {
  SumCase which = SumCase::NotApplicable;
  NormalSurface sum;
  std::optional<NormalSurface> vertex_disk;  // VertexDiskSplit
  std::optional<NormalSurface> remainder;    // VertexDiskSplit
  long long euler_before = 0;                // χ(F')
  long long euler_after = 0;                 // χ(F' + A)
  std::string diagnostics;
};

/// Requires A to be the thin edge-linking annulus of a boundary edge and
/// F' + A to be defined; throws std::invalid_argument otherwise.
inline SumClassification classify_thin_annulus_sum(const Triangulation& tri, const Skeleton& sk, const NormalSurface& fp,
                                                   const NormalSurface& a) {
  auto sp = recognize_special(tri, sk, a);
  if (sp.kind != Special::Kind::ThinEdgeLinking || !sk.edge_boundary[sp.index])
    throw std::invalid_argument("classify_thin_annulus_sum: A is not a thin edge-linking annulus about a boundary edge");
  auto summed = haken_sum(fp, a);
  if (std::holds_alternative<IncompatibleQuads>(summed))
    throw std::invalid_argument("classify_thin_annulus_sum: Haken sum undefined in tet " +
                                std::to_string(std::get<IncompatibleQuads>(summed).tet));
  SumClassification out;
  out.sum = std::get<NormalSurface>(summed);
  DiskComplex before(tri, fp), after(tri, out.sum);
  out.euler_before = before.euler();
  out.euler_after = after.euler();

  auto comps_before = before.component_surfaces();
  auto comps_after = after.component_surfaces();
  auto expected = comps_before;
  expected.push_back(a);
  std::sort(expected.begin(), expected.end());
  std::sort(comps_after.begin(), comps_after.end());
  if (comps_after == expected) {
    out.which = SumCase::DisjointUnion;
    return out;
  }
  const auto after_top = after.topology();
  for (const auto& c : comps_after) {
    auto rec = recognize_special(tri, sk, c);
    if (rec.kind != Special::Kind::VertexLinking) continue;
    out.which = SumCase::VertexDiskSplit;
    out.vertex_disk = c;
    NormalSurface rest(out.sum);
    for (std::size_t i = 0; i < rest.coords.size(); ++i) rest.coords[i] -= c.coords[i];
    out.remainder = rest;
    return out;
  }
  const auto before_top = before.topology();
  auto hb = homology_classes(tri, sk, fp), ha = homology_classes(tri, sk, out.sum);
  if (out.euler_after == out.euler_before && after_top.components == before_top.components && ha == hb) {
    out.which = SumCase::IsotopicReplacement;
    return out;
  }
  out.diagnostics = "chi " + std::to_string(out.euler_before) + " -> " + std::to_string(out.euler_after) + ", components " +
                    std::to_string(before_top.components) + " -> " + std::to_string(after_top.components) +
                    ", boundary classes " + std::to_string(hb.size()) + " -> " + std::to_string(ha.size());
  return out;
}

/// Thin edge-linking annuli about boundary edges.
inline std::vector<NormalSurface> thin_boundary_annuli(const Triangulation& tri, const Skeleton& sk) {
  std::vector<NormalSurface> out;
  for (std::size_t e = 0; e < sk.num_edges(); ++e) {
    if (!sk.edge_boundary[e]) continue;
    if (auto a = thin_edge_linking(tri, sk, static_cast<int>(e))) {
      auto top = surface_topology(tri, *a);
      if (top.components == 1 && top.euler == 0 && top.orientable && top.boundary_curves == 2) out.push_back(*a);
    }
  }
  return out;
}

}  // namespace crushkit
