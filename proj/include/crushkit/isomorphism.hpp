#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "crushkit/skeleton.hpp"

namespace crushkit {

/// Tetrahedron t of the source maps to tet[t] of the target with vertex
/// labels carried by perm[t].
struct Isomorphism {
  std::vector<int> tet;
  std::vector<Perm> perm;

  bool is_identity() const {
    for (std::size_t t = 0; t < tet.size(); ++t)
      if (tet[t] != static_cast<int>(t) || perm[t] != Perm()) return false;
    return true;
  }

  Isomorphism inverse() const {
    Isomorphism r{std::vector<int>(tet.size()), std::vector<Perm>(tet.size())};
    for (std::size_t t = 0; t < tet.size(); ++t) {
      r.tet[tet[t]] = static_cast<int>(t);
      r.perm[tet[t]] = perm[t].inverse();
    }
    return r;
  }

  /// (other ∘ this): first this, then other.
  Isomorphism then(const Isomorphism& other) const {
    Isomorphism r{std::vector<int>(tet.size()), std::vector<Perm>(tet.size())};
    for (std::size_t t = 0; t < tet.size(); ++t) {
      r.tet[t] = other.tet[tet[t]];
      r.perm[t] = other.perm[tet[t]] * perm[t];
    }
    return r;
  }
};

/// True when iso carries every gluing of a onto the corresponding gluing of b.
inline bool is_isomorphism(const Triangulation& a, const Triangulation& b, const Isomorphism& iso) {
  if (a.size() != b.size() || iso.tet.size() != a.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (int t : iso.tet) {
    if (t < 0 || t >= static_cast<int>(b.size()) || used[t]) return false;
    used[t] = true;
  }
  for (std::size_t t = 0; t < a.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = a.gluing(static_cast<int>(t), f);
      const auto& h = b.gluing(iso.tet[t], iso.perm[t][f]);
      if (!g || !h) {
        if (g.has_value() != h.has_value()) return false;
        continue;
      }
      if (h->tet != iso.tet[g->tet]) return false;
      if (h->perm != iso.perm[g->tet] * g->perm * iso.perm[t].inverse()) return false;
    }
  return true;
}

namespace detail {

inline std::vector<int> edge_index_multiset(const Triangulation& tri) {
  auto sk = build_skeleton(tri);
  std::vector<int> out;
  for (std::size_t e = 0; e < sk.num_edges(); ++e) out.push_back(sk.edge_index(static_cast<int>(e)));
  std::sort(out.begin(), out.end());
  return out;
}

// Extends a partial map by following gluings from tet `start`. Returns false
// on a conflict; newly assigned tets are appended to `assigned`.
inline bool propagate(const Triangulation& a, const Triangulation& b, Isomorphism& iso, std::vector<bool>& used,
                      int start, std::vector<int>& assigned) {
  std::vector<int> stack{start};
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int f = 0; f < 4; ++f) {
      const auto& g = a.gluing(t, f);
      const auto& h = b.gluing(iso.tet[t], iso.perm[t][f]);
      if (g.has_value() != h.has_value()) return false;
      if (!g) continue;
      Perm want = h->perm * iso.perm[t] * g->perm.inverse();
      if (iso.tet[g->tet] < 0) {
        if (used[h->tet]) return false;
        iso.tet[g->tet] = h->tet;
        iso.perm[g->tet] = want;
        used[h->tet] = true;
        assigned.push_back(g->tet);
        stack.push_back(g->tet);
      } else if (iso.tet[g->tet] != h->tet || iso.perm[g->tet] != want) {
        return false;
      }
    }
  }
  return true;
}

inline bool extend(const Triangulation& a, const Triangulation& b, Isomorphism& iso, std::vector<bool>& used) {
  int t = -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (iso.tet[i] < 0) {
      t = static_cast<int>(i);
      break;
    }
  if (t < 0) return true;
  for (std::size_t u = 0; u < b.size(); ++u) {
    if (used[u]) continue;
    for (const Perm& p : Perm::all()) {
      std::vector<int> assigned{t};
      iso.tet[t] = static_cast<int>(u);
      iso.perm[t] = p;
      used[u] = true;
      if (propagate(a, b, iso, used, t, assigned) && extend(a, b, iso, used)) return true;
      for (int x : assigned) {
        used[iso.tet[x]] = false;
        iso.tet[x] = -1;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Exhaustive combinatorial isomorphism search. Returns a witness or nullopt.
inline std::optional<Isomorphism> isomorphic(const Triangulation& a, const Triangulation& b) {
  if (a.size() != b.size() || a.num_boundary_faces() != b.num_boundary_faces()) return std::nullopt;
  if (detail::edge_index_multiset(a) != detail::edge_index_multiset(b)) return std::nullopt;
  Isomorphism iso{std::vector<int>(a.size(), -1), std::vector<Perm>(a.size())};
  std::vector<bool> used(b.size(), false);
  if (!detail::extend(a, b, iso, used)) return std::nullopt;
  return iso;
}

}  // namespace crushkit
