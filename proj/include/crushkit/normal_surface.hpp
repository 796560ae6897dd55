#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crushkit/skeleton.hpp"
#include "crushkit/triangulation.hpp"

namespace crushkit {

using Coord = boost::multiprecision::cpp_int;

/// Per tetrahedron: [t0 t1 t2 t3 q0 q1 q2]. Triangle ti cuts off vertex i;
/// quad qj separates {0, j+1} from the remaining two vertices.
struct NormalSurface {
  std::vector<Coord> coords;

  NormalSurface() = default;
  explicit NormalSurface(std::size_t tets) : coords(7 * tets) {}
  explicit NormalSurface(std::vector<Coord> c) : coords(std::move(c)) {}

  static NormalSurface from_ints(const std::vector<long long>& v) {
    NormalSurface s;
    s.coords.reserve(v.size());
    for (auto x : v) s.coords.emplace_back(x);
    return s;
  }

  std::size_t num_tets() const { return coords.size() / 7; }
  const Coord& tri(int t, int v) const { return coords[7 * t + v]; }
  Coord& tri(int t, int v) { return coords[7 * t + v]; }
  const Coord& quad(int t, int j) const { return coords[7 * t + 4 + j]; }
  Coord& quad(int t, int j) { return coords[7 * t + 4 + j]; }

  /// Nonzero quad type in tet t, or -1. Assumes the quad condition.
  int quad_type_in(int t) const {
    for (int j = 0; j < 3; ++j)
      if (quad(t, j) != 0) return j;
    return -1;
  }

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Coord& c) { return c == 0; });
  }

  bool operator==(const NormalSurface&) const = default;
  bool operator<(const NormalSurface& o) const { return coords < o.coords; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ' ';
      s += coords[i].str();
    }
    return s;
  }
};

inline NormalSurface operator+(const NormalSurface& a, const NormalSurface& b) {
  NormalSurface r(a);
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

inline NormalSurface operator*(const Coord& k, const NormalSurface& a) {
  NormalSurface r(a);
  for (auto& c : r.coords) c *= k;
  return r;
}

/// One linear equation per (internal face pair, normal arc type).
struct MatchingEquation {
  int tet_a, face_a, vertex_a;
  int tet_b, face_b, vertex_b;
  std::vector<int> coeffs;  // dense, length 7n, entries in {-1,0,1}
};

struct MatchingSystem {
  std::size_t unknowns = 0;
  std::vector<MatchingEquation> equations;
};

/// Count of normal arcs cutting off vertex v in face f of tet t.
template <class S>
inline auto arc_count(const S& s, int t, int f, int v) {
  return s.tri(t, v) + s.quad(t, quad_type(v, f));
}

inline MatchingSystem matching_system(const Triangulation& tri) {
  const int n = static_cast<int>(tri.size());
  MatchingSystem ms;
  ms.unknowns = 7 * tri.size();
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      const int ot = g->tet, of = g->perm[f];
      if (std::make_pair(ot, of) < std::make_pair(t, f)) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        MatchingEquation eq{t, f, v, ot, of, g->perm[v], std::vector<int>(ms.unknowns, 0)};
        eq.coeffs[7 * t + v] += 1;
        eq.coeffs[7 * t + 4 + quad_type(v, f)] += 1;
        eq.coeffs[7 * ot + g->perm[v]] -= 1;
        eq.coeffs[7 * ot + 4 + quad_type(g->perm[v], of)] -= 1;
        ms.equations.push_back(std::move(eq));
      }
    }
  }
  return ms;
}

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool satisfies_quad_condition(const NormalSurface& s) {
  for (std::size_t t = 0; t < s.num_tets(); ++t) {
    int nz = 0;
    for (int j = 0; j < 3; ++j)
      if (s.quad(static_cast<int>(t), j) != 0) ++nz;
    if (nz > 1) return false;
  }
  return true;
}

inline bool satisfies_matching(const Triangulation& tri, const NormalSurface& s) {
  const int n = static_cast<int>(tri.size());
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        if (arc_count(s, t, f, v) != arc_count(s, g->tet, g->perm[f], g->perm[v])) return false;
      }
    }
  return true;
}

inline bool is_admissible(const Triangulation& tri, const NormalSurface& s) {
  if (s.coords.size() != 7 * tri.size())
    throw LengthMismatch("coordinate vector has length " + std::to_string(s.coords.size()) + ", expected " +
                         std::to_string(7 * tri.size()));
  for (const auto& c : s.coords)
    if (c < 0) return false;
  return satisfies_quad_condition(s) && satisfies_matching(tri, s);
}

/// True if the surface has no normal arcs on boundary faces.
inline bool is_closed(const Triangulation& tri, const NormalSurface& s) {
  for (int t = 0; t < static_cast<int>(tri.size()); ++t)
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_boundary(t, f)) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f && arc_count(s, t, f, v) != 0) return false;
    }
  return true;
}

inline NormalSurface vertex_linking(const Triangulation& tri, const Skeleton& sk, int vertex) {
  NormalSurface s(tri.size());
  for (auto [t, v] : sk.vertices.at(vertex)) s.tri(t, v) += 1;
  return s;
}

struct IncompatibleQuads {
  int tet;
};

inline std::variant<NormalSurface, IncompatibleQuads> haken_sum(const NormalSurface& a, const NormalSurface& b) {
  if (a.coords.size() != b.coords.size()) throw LengthMismatch("haken_sum: surfaces on different triangulations");
  for (std::size_t t = 0; t < a.num_tets(); ++t) {
    int ja = a.quad_type_in(static_cast<int>(t)), jb = b.quad_type_in(static_cast<int>(t));
    if (ja >= 0 && jb >= 0 && ja != jb) return IncompatibleQuads{static_cast<int>(t)};
  }
  return a + b;
}

inline Coord coord_gcd(const NormalSurface& s) {
  Coord g = 0;
  for (const auto& c : s.coords) g = boost::multiprecision::gcd(g, c);
  return g;
}

inline NormalSurface primitive(const NormalSurface& s) {
  Coord g = coord_gcd(s);
  if (g <= 1) return s;
  NormalSurface r(s);
  for (auto& c : r.coords) c /= g;
  return r;
}

}  // namespace crushkit
