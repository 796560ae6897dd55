#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "crushkit/normal_surface.hpp"

namespace crushkit {

class SizeExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurfaceList {
  enum class Provenance { Vertex, Fundamental, Bounded };
  Provenance provenance = Provenance::Vertex;
  int bound = -1;  // Bounded only
  std::vector<NormalSurface> surfaces;
  // Cone statistics.
  std::size_t dimension = 0;
  std::size_t equations = 0;
  std::size_t faces = 0;
  std::size_t work = 0;  // rays combined or candidates generated

  std::string tag() const {
    switch (provenance) {
      case Provenance::Vertex: return "vertex";
      case Provenance::Fundamental: return "fundamental";
      case Provenance::Bounded: return "bounded(" + std::to_string(bound) + ")";
    }
    return {};
  }

  bool contains(const NormalSurface& s) const { return std::binary_search(surfaces.begin(), surfaces.end(), s); }
};

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

inline Bits bit_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

/// Active coordinates of a maximal quad-compatible face: all triangles plus
/// the chosen quad type per tetrahedron.
inline std::vector<int> face_coordinates(const std::vector<int>& quad_choice) {
  std::vector<int> cols;
  for (std::size_t t = 0; t < quad_choice.size(); ++t) {
    for (int v = 0; v < 4; ++v) cols.push_back(static_cast<int>(7 * t) + v);
    cols.push_back(static_cast<int>(7 * t) + 4 + quad_choice[t]);
  }
  return cols;
}

/// Restricts the matching equations to the given columns, dropping rows that
/// vanish there.
inline std::vector<std::vector<int>> restrict_rows(const MatchingSystem& ms, const std::vector<int>& cols) {
  std::vector<std::vector<int>> rows;
  std::set<std::vector<int>> seen;
  for (const auto& eq : ms.equations) {
    std::vector<int> r;
    bool nz = false;
    for (int c : cols) {
      r.push_back(eq.coeffs[c]);
      nz = nz || eq.coeffs[c] != 0;
    }
    if (nz && seen.insert(r).second) rows.push_back(std::move(r));
  }
  return rows;
}

template <class F>
void for_each_quad_choice(std::size_t n, F&& f) {
  std::vector<int> choice(n, 0);
  while (true) {
    f(choice);
    std::size_t i = 0;
    while (i < n && choice[i] == 2) choice[i++] = 0;
    if (i == n) return;
    ++choice[i];
  }
}

struct Ray {
  std::vector<Coord> x;
  Bits zero;
};

inline void reduce(std::vector<Coord>& x) {
  Coord g = 0;
  for (const auto& c : x) g = boost::multiprecision::gcd(g, c);
  if (g > 1)
    for (auto& c : x) c /= g;
}

/// Extreme rays of {x >= 0, rows . x = 0} by double description.
inline std::vector<std::vector<Coord>> extreme_rays(std::size_t d, const std::vector<std::vector<int>>& rows,
                                                    std::size_t& work) {
  const std::size_t words = (d + 63) / 64;
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < d; ++i) {
    Ray r{std::vector<Coord>(d, 0), Bits(words, ~std::uint64_t{0})};
    r.x[i] = 1;
    r.zero[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    rays.push_back(std::move(r));
  }
  for (const auto& row : rows) {
    std::vector<Coord> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      Coord s = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (row[k]) s += row[k] * rays[i].x[k];
      val[i] = s;
      if (s > 0)
        pos.push_back(i);
      else if (s < 0)
        neg.push_back(i);
      else
        next.push_back(rays[i]);
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        ++work;
        Bits common = bit_and(rays[p].zero, rays[q].zero);
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          if (subset_of(common, rays[o].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r{std::vector<Coord>(d), Bits(words, 0)};
        const Coord a = val[p], b = -val[q];
        for (std::size_t k = 0; k < d; ++k) {
          r.x[k] = b * rays[p].x[k] + a * rays[q].x[k];
          if (r.x[k] == 0) r.zero[k / 64] |= std::uint64_t{1} << (k % 64);
        }
        reduce(r.x);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }
  std::vector<std::vector<Coord>> out;
  for (auto& r : rays) out.push_back(std::move(r.x));
  return out;
}

inline std::size_t max_candidates() {
  if (const char* env = std::getenv("CRUSHKIT_MAX_CANDIDATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 5'000'000;
}

/// Minimal nonzero solutions in N^d of rows . x = 0 (Contejean-Devie).
inline std::vector<std::vector<long long>> hilbert_basis(std::size_t d, const std::vector<std::vector<int>>& rows,
                                                         std::size_t& work, std::size_t cap) {
  const std::size_t m = rows.size();
  auto image = [&](const std::vector<long long>& x) {
    std::vector<long long> y(m, 0);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < d; ++k) y[r] += rows[r][k] * x[k];
    return y;
  };
  std::vector<std::vector<long long>> unit_image(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<long long> e(d, 0);
    e[j] = 1;
    unit_image[j] = image(e);
  }
  std::vector<std::vector<long long>> basis;
  std::set<std::vector<long long>> frontier;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<long long> e(d, 0);
    e[j] = 1;
    frontier.insert(e);
  }
  auto dominates_basis = [&](const std::vector<long long>& x) {
    for (const auto& b : basis) {
      bool ge = true;
      for (std::size_t k = 0; k < d && ge; ++k) ge = x[k] >= b[k];
      if (ge) return true;
    }
    return false;
  };
  while (!frontier.empty()) {
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> live;
    for (const auto& p : frontier) {
      auto ap = image(p);
      if (std::all_of(ap.begin(), ap.end(), [](long long v) { return v == 0; }))
        basis.push_back(p);
      else
        live.emplace_back(p, std::move(ap));
    }
    std::set<std::vector<long long>> next;
    for (const auto& [p, ap] : live)
      for (std::size_t j = 0; j < d; ++j) {
        long long dot = 0;
        for (std::size_t r = 0; r < m; ++r) dot += ap[r] * unit_image[j][r];
        if (dot >= 0) continue;
        auto q = p;
        ++q[j];
        if (dominates_basis(q)) continue;
        if (++work > cap)
          throw SizeExceeded("fundamental enumeration exceeded " + std::to_string(cap) + " candidates");
        next.insert(std::move(q));
      }
    frontier = std::move(next);
  }
  return basis;
}

inline NormalSurface embed(std::size_t n, const std::vector<int>& cols, const std::vector<Coord>& x) {
  NormalSurface s(n);
  for (std::size_t k = 0; k < cols.size(); ++k) s.coords[cols[k]] = x[k];
  return s;
}

inline void finish(SurfaceList& list, std::set<NormalSurface>& found) {
  list.surfaces.assign(found.begin(), found.end());
}

}  // namespace detail

/// Primitive admissible extreme rays of the solution cone, in lexicographic order.
inline SurfaceList vertex_surfaces(const Triangulation& tri) {
  const auto ms = matching_system(tri);
  SurfaceList list;
  list.provenance = SurfaceList::Provenance::Vertex;
  list.dimension = ms.unknowns;
  list.equations = ms.equations.size();
  std::set<NormalSurface> found;
  detail::for_each_quad_choice(tri.size(), [&](const std::vector<int>& choice) {
    ++list.faces;
    auto cols = detail::face_coordinates(choice);
    auto rows = detail::restrict_rows(ms, cols);
    for (auto& x : detail::extreme_rays(cols.size(), rows, list.work))
      found.insert(detail::embed(tri.size(), cols, x));
  });
  detail::finish(list, found);
  return list;
}

/// Admissible Hilbert basis: admissible solutions that are not a sum of two
/// nonzero admissible solutions, in lexicographic order. Throws SizeExceeded
/// past CRUSHKIT_MAX_CANDIDATES generated candidates.
inline SurfaceList fundamental_surfaces(const Triangulation& tri) {
  const auto ms = matching_system(tri);
  SurfaceList list;
  list.provenance = SurfaceList::Provenance::Fundamental;
  list.dimension = ms.unknowns;
  list.equations = ms.equations.size();
  const std::size_t cap = detail::max_candidates();
  std::set<NormalSurface> found;
  detail::for_each_quad_choice(tri.size(), [&](const std::vector<int>& choice) {
    ++list.faces;
    auto cols = detail::face_coordinates(choice);
    auto rows = detail::restrict_rows(ms, cols);
    for (const auto& x : detail::hilbert_basis(cols.size(), rows, list.work, cap)) {
      std::vector<Coord> c(x.begin(), x.end());
      found.insert(detail::embed(tri.size(), cols, c));
    }
  });
  detail::finish(list, found);
  return list;
}

/// All admissible surfaces with every coordinate at most B, by direct search
/// with equation propagation.
inline SurfaceList surfaces_up_to(const Triangulation& tri, int B) {
  const auto ms = matching_system(tri);
  const std::size_t N = ms.unknowns;
  SurfaceList list;
  list.provenance = SurfaceList::Provenance::Bounded;
  list.bound = B;
  list.dimension = N;
  list.equations = ms.equations.size();

  // Sparse equations and, per variable, the equations it occurs in.
  std::vector<std::vector<std::pair<int, int>>> eqs;
  for (const auto& eq : ms.equations) {
    std::vector<std::pair<int, int>> terms;
    for (std::size_t k = 0; k < N; ++k)
      if (eq.coeffs[k]) terms.emplace_back(static_cast<int>(k), eq.coeffs[k]);
    if (!terms.empty()) eqs.push_back(std::move(terms));
  }
  std::vector<std::vector<int>> occurs(N);
  for (std::size_t e = 0; e < eqs.size(); ++e)
    for (auto [k, c] : eqs[e]) occurs[k].push_back(static_cast<int>(e));

  std::vector<int> val(N, -1);
  std::vector<int> trail;
  std::set<NormalSurface> found;

  auto quad_ok = [&](int k) {
    int t = k / 7;
    int nonzero = 0;
    for (int j = 0; j < 3; ++j)
      if (val[7 * t + 4 + j] > 0) ++nonzero;
    return nonzero <= 1;
  };

  // Assigns and propagates; returns false on contradiction.
  std::function<bool(int, int)> assign = [&](int k, int v) -> bool {
    if (v < 0 || v > B) return false;
    if (val[k] >= 0) return val[k] == v;
    val[k] = v;
    trail.push_back(k);
    if ((k % 7) >= 4 && !quad_ok(k)) return false;
    for (int e : occurs[k]) {
      long long sum = 0;
      int unknown = -1, coef = 0, nunknown = 0;
      for (auto [x, c] : eqs[e]) {
        if (val[x] < 0) {
          ++nunknown;
          unknown = x;
          coef = c;
        } else {
          sum += static_cast<long long>(c) * val[x];
        }
      }
      if (nunknown == 0 && sum != 0) return false;
      if (nunknown == 1) {
        // coef * x + sum == 0 with coef = +-1 or +-2
        if (sum % coef != 0) return false;
        if (!assign(unknown, static_cast<int>(-sum / coef))) return false;
      }
    }
    return true;
  };

  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      val[trail.back()] = -1;
      trail.pop_back();
    }
  };

  std::function<void()> search = [&]() {
    int k = -1;
    for (std::size_t i = 0; i < N; ++i)
      if (val[i] < 0) {
        k = static_cast<int>(i);
        break;
      }
    if (k < 0) {
      NormalSurface s(tri.size());
      for (std::size_t i = 0; i < N; ++i) s.coords[i] = val[i];
      found.insert(std::move(s));
      return;
    }
    for (int v = 0; v <= B; ++v) {
      std::size_t mark = trail.size();
      ++list.work;
      if (assign(k, v)) search();
      undo(mark);
    }
  };
  search();
  detail::finish(list, found);
  return list;
}

/// A decomposition of s as a non-negative integer combination of the given
/// surfaces, found by depth-first subtraction; nullopt if none exists.
inline std::optional<std::vector<std::pair<std::size_t, Coord>>> decompose_over(
    const NormalSurface& s, const std::vector<NormalSurface>& basis) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool fits = !basis[i].is_zero();
    for (std::size_t k = 0; k < s.coords.size() && fits; ++k)
      if (s.coords[k] == 0 && basis[i].coords[k] != 0) fits = false;
    if (fits) usable.push_back(i);
  }
  std::vector<std::size_t> chosen;
  std::function<bool(const NormalSurface&, std::size_t)> rec = [&](const NormalSurface& rest, std::size_t from) {
    if (rest.is_zero()) return true;
    for (std::size_t u = from; u < usable.size(); ++u) {
      const auto& b = basis[usable[u]];
      bool le = true;
      for (std::size_t k = 0; k < rest.coords.size() && le; ++k) le = b.coords[k] <= rest.coords[k];
      if (!le) continue;
      NormalSurface next(rest);
      for (std::size_t k = 0; k < next.coords.size(); ++k) next.coords[k] -= b.coords[k];
      chosen.push_back(usable[u]);
      if (rec(next, u)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(s, 0)) return std::nullopt;
  std::map<std::size_t, Coord> counts;
  for (auto i : chosen) counts[i] += 1;
  return std::vector<std::pair<std::size_t, Coord>>(counts.begin(), counts.end());
}

}  // namespace crushkit
