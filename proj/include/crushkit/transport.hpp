#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "crushkit/crush.hpp"

namespace crushkit {

using Rational = boost::multiprecision::cpp_rational;

/// Disks of F refined by the gap of S they sit in. For a triangle at v the gap
/// g in [0, tri_S(v)] counts S-triangles at v nearer v; for a quad, h in
/// [0, q_S] counts S-quads on side 0.
using RefinedKey = std::tuple<int, int, long long>;  // (tet, disk type, gap)
using RefinedCounts = std::map<RefinedKey, Coord>;

struct Placement {
  RefinedCounts counts;
};

struct NotDisjoint {
  int tet;
  std::string reason;
};

struct VertexSideComponent {
  int component;  // index among the components of F
};

using PlaceResult = std::variant<Placement, NotDisjoint, VertexSideComponent>;

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PlacementFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Gap, among S-arcs of slot (t, f, w), of the arc of an F disk.
inline long long arc_gap(const CellDecomposition& cells, int t, int type, long long gap, int f) {
  if (type < 4) return gap;
  const int w = quad_partner(type - 4, f);
  if (cells.quad_type(t) < 0) return cells.tri(t, w);
  return cells.tri(t, w) + (quad_low_side(type - 4, w) ? gap : cells.quads(t) - gap);
}

// Inverse of arc_gap for a disk of the given type whose arc lies in slot
// (t, f, w): the disk's gap, or -1 if no placement of that type fits.
inline long long disk_gap(const CellDecomposition& cells, int t, int type, int f, long long g) {
  if (type < 4) return g <= cells.tri(t, type) ? g : -1;
  const int w = quad_partner(type - 4, f);
  const long long base = cells.tri(t, w);
  if (cells.quad_type(t) < 0) return g == base ? 0 : -1;
  const long long q = cells.quads(t);
  long long h = quad_low_side(type - 4, w) ? g - base : q - (g - base);
  return (h < 0 || h > q) ? -1 : h;
}

inline int region_of_disk(const CellDecomposition& cells, int t, int type, long long gap) {
  return type < 4 ? cells.region_of_triangle(t, type, gap) : cells.region_of_quad(t, gap);
}

// Vertex of the slot and position, counted in F's own nesting order, of
// the arc of F disk (t, type, copy) in face f.
inline std::pair<int, long long> own_slot(const DiskCounts& fc, int t, int type, long long copy, int f) {
  if (type < 4) return {type, copy};
  const int j = type - 4, w = quad_partner(j, f);
  return {w, fc.tri(t, w) + (quad_low_side(j, w) ? copy : fc.quad(t, j) - 1 - copy)};
}

}  // namespace detail

/// Places every disk of F in a gap of S, component by component, such that
/// arcs meet at equal gaps across faces, each component lies in X, and
/// parallel copies keep their nesting order. Each component tries its seed
/// disk from the outermost gap inward.
inline PlaceResult place_in_blocks(const CrushOutcome& out, const NormalSurface& f) {
  const auto& d = out.decomposition;
  const auto& cells = d.cells;
  const auto& tri = cells.triangulation();
  if (!is_admissible(tri, f) || !is_closed(tri, f)) throw std::invalid_argument("place_in_blocks: F must be admissible and closed");
  for (std::size_t t = 0; t < tri.size(); ++t) {
    int js = cells.quad_type(static_cast<int>(t)), jf = f.quad_type_in(static_cast<int>(t));
    if (js >= 0 && jf >= 0 && js != jf) return NotDisjoint{static_cast<int>(t), "quad types differ"};
  }
  DiskComplex fd(tri, f);
  const auto& disks = fd.disks();
  const auto& comp = fd.component_of_disk();
  std::vector<long long> gap(disks.size(), -1);

  // Per component, every consistent gap assignment with all disks in X.
  std::vector<std::vector<long long>> members(fd.num_components());
  for (std::size_t i = 0; i < disks.size(); ++i) members[comp[i]].push_back(static_cast<long long>(i));
  std::vector<std::vector<std::vector<long long>>> options(fd.num_components());
  for (int c = 0; c < fd.num_components(); ++c) {
    const auto& mem = members[c];
    const auto& seed = disks[mem[0]];
    std::vector<long long> candidates;
    if (seed.type < 4) {
      for (long long g = cells.tri(seed.tet, seed.type); g >= 0; --g) candidates.push_back(g);
    } else {
      long long q = cells.quad_type(seed.tet) < 0 ? 0 : cells.quads(seed.tet);
      for (long long h = 0; h <= q; ++h) candidates.push_back(h);
    }
    bool consistent_outside = false;
    int conflict_tet = seed.tet;
    for (long long cand : candidates) {
      for (auto m : mem) gap[m] = -1;
      gap[mem[0]] = cand;
      std::vector<long long> queue{mem[0]};
      bool ok = true;
      while (!queue.empty() && ok) {
        long long di = queue.back();
        queue.pop_back();
        const auto& dk = disks[di];
        for (int face = 0; face < 4 && ok; ++face) {
          if (dk.type < 4 && face == dk.type) continue;
          const auto& gl = tri.gluing(dk.tet, face);
          auto [v, p] = detail::own_slot(fd.counts(), dk.tet, dk.type, dk.copy, face);
          long long g = detail::arc_gap(cells, dk.tet, dk.type, gap[di], face);
          const int ot = gl->tet, of = gl->perm[face], ov = gl->perm[v];
          long long nb = fd.disk_at_slot(ot, of, ov, p);
          long long ng = detail::disk_gap(cells, ot, disks[nb].type, of, g);
          if (ng < 0 || (gap[nb] >= 0 && gap[nb] != ng)) {
            ok = false;
            conflict_tet = ot;
            break;
          }
          if (gap[nb] < 0) {
            gap[nb] = ng;
            queue.push_back(nb);
          }
        }
      }
      if (!ok) continue;
      bool inside = true;
      for (auto m : mem) inside = inside && d.in_x(detail::region_of_disk(cells, disks[m].tet, disks[m].type, gap[m]));
      if (!inside) {
        consistent_outside = true;
        continue;
      }
      std::vector<long long> assignment;
      for (auto m : mem) assignment.push_back(gap[m]);
      options[c].push_back(std::move(assignment));
    }
    if (options[c].empty()) {
      if (consistent_outside) return VertexSideComponent{c};
      return NotDisjoint{conflict_tet, "no consistent gap assignment"};
    }
  }

  // Parallel copies must keep their order; choose one option per component.
  std::fill(gap.begin(), gap.end(), -1);
  auto ordered_near = [&](long long i) {
    for (long long j : {i - 1, i + 1}) {
      if (j < 0 || j >= static_cast<long long>(disks.size()) || gap[j] < 0) continue;
      if (disks[i].tet != disks[j].tet || disks[i].type != disks[j].type) continue;
      long long lo = std::min(i, j), hi = std::max(i, j);
      if (gap[hi] < gap[lo]) return false;
    }
    return true;
  };
  std::function<bool(int)> choose = [&](int c) {
    if (c == fd.num_components()) return true;
    for (const auto& opt : options[c]) {
      for (std::size_t k = 0; k < members[c].size(); ++k) gap[members[c][k]] = opt[k];
      bool ok = true;
      for (auto m : members[c]) ok = ok && ordered_near(m);
      if (ok && choose(c + 1)) return true;
      for (auto m : members[c]) gap[m] = -1;
    }
    return false;
  };
  if (!choose(0)) {
    int tet = disks.empty() ? -1 : disks[members[0][0]].tet;
    return NotDisjoint{tet, "copies out of nesting order"};
  }
  Placement pl;
  for (std::size_t i = 0; i < disks.size(); ++i) pl.counts[{disks[i].tet, disks[i].type, gap[i]}] += 1;
  return pl;
}

/// Reads F's disks inside the truncated tetrahedra of X as a surface on T*.
inline NormalSurface push_forward(const CrushOutcome& out, const Placement& pl) {
  const auto& cells = out.decomposition.cells;
  NormalSurface star(out.crushed.size());
  for (const auto& [key, n] : pl.counts) {
    auto [t, type, gap] = key;
    int r = detail::region_of_disk(cells, t, type, gap);
    if (!out.decomposition.in_x(r) || cells.region(r).key.kind != RegionKind::TruncTet) continue;
    star.coords[7 * out.source_to_star[t] + type] += n;
  }
  return star;
}

inline NormalSurface push_forward(const CrushOutcome& out, const NormalSurface& f) {
  auto pr = place_in_blocks(out, f);
  if (auto* pl = std::get_if<Placement>(&pr)) return push_forward(out, *pl);
  if (auto* nd = std::get_if<NotDisjoint>(&pr))
    throw PlacementFailed("NotDisjoint(" + std::to_string(nd->tet) + "): " + nd->reason);
  throw PlacementFailed("VertexSideComponent");
}

inline NormalSurface flatten(std::size_t n, const RefinedCounts& counts) {
  NormalSurface s(n);
  for (const auto& [key, c] : counts) s.coords[7 * std::get<0>(key) + std::get<1>(key)] += c;
  return s;
}

/// Reconstructs the unique closed normal surface on the source whose disks
/// lie in X and whose truncated-tetrahedron disks are those of F*.
inline NormalSurface lift(const CrushOutcome& out, const NormalSurface& star) {
  const auto& d = out.decomposition;
  const auto& cells = d.cells;
  const auto& tri = cells.triangulation();
  const int n = static_cast<int>(tri.size());
  if (star.num_tets() != out.crushed.size()) throw LengthMismatch("lift: surface is not on the crushed triangulation");

  // Variables: every (tet, type, gap) whose region lies in X.
  std::map<RefinedKey, int> var;
  std::vector<RefinedKey> keys;
  std::vector<bool> fixed;
  std::vector<Coord> fixed_value;
  for (int t = 0; t < n; ++t) {
    const int js = cells.quad_type(t);
    for (int type = 0; type < 7; ++type) {
      if (type >= 4 && js >= 0 && type - 4 != js) continue;
      long long top = type < 4 ? cells.tri(t, type) : (js < 0 ? 0 : cells.quads(t));
      for (long long g = 0; g <= top; ++g) {
        int r = detail::region_of_disk(cells, t, type, g);
        if (!d.in_x(r)) continue;
        bool is_tt = cells.region(r).key.kind == RegionKind::TruncTet;
        var[{t, type, g}] = static_cast<int>(keys.size());
        keys.emplace_back(t, type, g);
        fixed.push_back(is_tt);
        fixed_value.push_back(is_tt ? star.coords[7 * out.source_to_star[t] + type] : Coord(0));
      }
    }
  }
  std::vector<int> free_index(keys.size(), -1);
  int nfree = 0;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (!fixed[i]) free_index[i] = nfree++;

  // One equation per internal face pair, slot and gap.
  std::vector<std::vector<Rational>> rows;
  auto arc_terms = [&](int t, int f, int v, long long g, int sign, std::map<int, int>& terms) {
    for (int type : {v, 4 + quad_type(v, f)}) {
      long long dg = detail::disk_gap(cells, t, type, f, g);
      if (dg < 0) continue;
      auto it = var.find({t, type, dg});
      if (it != var.end()) terms[it->second] += sign;
    }
  };
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& gl = tri.gluing(t, f);
      if (!gl) continue;
      const int ot = gl->tet, of = gl->perm[f];
      if (std::make_pair(ot, of) < std::make_pair(t, f)) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        for (long long g = 0; g <= cells.slot_arcs(t, f, v); ++g) {
          std::map<int, int> terms;
          arc_terms(t, f, v, g, 1, terms);
          arc_terms(ot, of, gl->perm[v], g, -1, terms);
          std::vector<Rational> row(nfree + 1, 0);
          bool any = false;
          for (auto [i, c] : terms) {
            if (c == 0) continue;
            if (fixed[i]) {
              row[nfree] -= Rational(c) * Rational(fixed_value[i]);
            } else {
              row[free_index[i]] += c;
              any = true;
            }
          }
          if (any)
            rows.push_back(std::move(row));
          else if (row[nfree] != 0)
            throw InternalInconsistency("lift: F* disagrees with a direct face pairing");
        }
      }
    }

  // Gaussian elimination to reduced row echelon form.
  std::size_t rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < nfree && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational k = rows[r][col];
      for (int c = col; c <= nfree; ++c) rows[r][c] -= k * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][nfree] != 0) throw InternalInconsistency("lift: refined matching equations are inconsistent");
  if (static_cast<int>(rank) != nfree) throw InternalInconsistency("lift: product slices not determined");

  RefinedCounts counts;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (fixed[i] && fixed_value[i] != 0) counts[keys[i]] = fixed_value[i];
  for (std::size_t r = 0; r < rank; ++r) {
    const Rational& x = rows[r][nfree];
    if (boost::multiprecision::denominator(x) != 1) throw InternalInconsistency("lift: non-integral slice count");
    if (x < 0) throw InternalInconsistency("lift: negative slice count");
    if (x == 0) continue;
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (free_index[i] == pivot_col[r]) counts[keys[i]] = boost::multiprecision::numerator(x);
  }
  return flatten(tri.size(), counts);
}

}  // namespace crushkit
