#pragma once

#include <vector>

#include "crushkit/enumerate.hpp"
#include "crushkit/skeleton.hpp"

// Brute-force characterisations over a bounded surface list.
namespace oracles {

using crushkit::NormalSurface;

inline bool support_subset(const NormalSurface& a, const NormalSurface& b) {
  for (std::size_t k = 0; k < a.coords.size(); ++k)
    if (a.coords[k] != 0 && b.coords[k] == 0) return false;
  return true;
}

inline bool leq(const NormalSurface& a, const NormalSurface& b) {
  for (std::size_t k = 0; k < a.coords.size(); ++k)
    if (a.coords[k] > b.coords[k]) return false;
  return true;
}

/// x spans an extreme ray iff no other solution has strictly smaller support.
inline std::vector<NormalSurface> vertex_oracle(const std::vector<NormalSurface>& all) {
  std::vector<NormalSurface> out;
  for (const auto& x : all) {
    if (x.is_zero() || crushkit::coord_gcd(x) != 1) continue;
    bool extreme = true;
    for (const auto& y : all) {
      if (y.is_zero() || !support_subset(y, x) || support_subset(x, y)) continue;
      extreme = false;
      break;
    }
    if (extreme) out.push_back(x);
  }
  return out;
}

/// x is fundamental iff no nonzero y != x in the list lies below it.
inline std::vector<NormalSurface> fundamental_oracle(const std::vector<NormalSurface>& all) {
  std::vector<NormalSurface> out;
  for (const auto& x : all) {
    if (x.is_zero()) continue;
    bool indecomposable = true;
    for (const auto& y : all)
      if (!y.is_zero() && !(y == x) && leq(y, x)) {
        indecomposable = false;
        break;
      }
    if (indecomposable) out.push_back(x);
  }
  return out;
}

inline crushkit::Coord max_entry(const std::vector<NormalSurface>& list) {
  crushkit::Coord m = 0;
  for (const auto& s : list)
    for (const auto& c : s.coords) m = c > m ? c : m;
  return m;
}

/// Euler characteristic from coordinates alone: edge weights minus arcs plus disks.
inline long long euler_oracle(const crushkit::Triangulation& tri, const crushkit::Skeleton& sk, const NormalSurface& s) {
  static constexpr int ev[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  // Quad j separates {0, j+1} from the other two vertices.
  auto splits = [](int j, int a, int b) {
    int p = j + 1;
    bool same_side_a = a == 0 || a == p, same_side_b = b == 0 || b == p;
    return same_side_a != same_side_b;
  };
  auto c = [&](crushkit::Coord x) { return static_cast<long long>(x); };
  long long v = 0, e = 0, f = 0;
  for (const auto& members : sk.edges) {
    auto [t, k] = members.front();
    int a = ev[k][0], b = ev[k][1];
    v += c(s.tri(t, a) + s.tri(t, b));
    for (int j = 0; j < 3; ++j)
      if (splits(j, a, b)) v += c(s.quad(t, j));
  }
  for (std::size_t t = 0; t < tri.size(); ++t) {
    for (int i = 0; i < 4; ++i) f += c(s.tri(static_cast<int>(t), i));
    for (int j = 0; j < 3; ++j) f += c(s.quad(static_cast<int>(t), j));
    for (int face = 0; face < 4; ++face) {
      const auto& g = tri.gluing(static_cast<int>(t), face);
      // Count each internal face once, from the smaller (tet, face).
      if (g && std::make_pair(g->tet, g->perm[face]) < std::make_pair(static_cast<int>(t), face)) continue;
      for (int corner = 0; corner < 4; ++corner) {
        if (corner == face) continue;
        e += c(s.tri(static_cast<int>(t), corner));
        for (int j = 0; j < 3; ++j)
          if (!splits(j, corner, face)) e += c(s.quad(static_cast<int>(t), j));
      }
    }
  }
  return v - e + f;
}

}  // namespace oracles
