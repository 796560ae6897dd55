#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crushkit/disk_complex.hpp"
#include "crushkit/enumerate.hpp"
#include "crushkit/slopes.hpp"
#include "crushkit/special.hpp"
#include "crushkit/vertex_kind.hpp"

namespace crushkit {

enum class Property { ZeroEfficient, AnnularEfficient, BoundaryEfficiencyCandidates };
enum class Verdict { Holds, Fails, Undetermined };

inline const char* property_name(Property p) {
  switch (p) {
    case Property::ZeroEfficient: return "ZeroEfficient";
    case Property::AnnularEfficient: return "AnnularEfficient";
    case Property::BoundaryEfficiencyCandidates: return "BoundaryEfficiencyCandidates";
  }
  return "";
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "";
}

/// A surface together with the data used to judge it.
struct Witness {
  NormalSurface surface;
  SurfaceTopology topology;
  Special special;
  std::vector<SlopeClass> slopes;  // nontrivial boundary slopes, sorted
};

inline Witness make_witness(const Triangulation& tri, const Skeleton& sk, const NormalSurface& s) {
  Witness w{s, surface_topology(tri, s), recognize_special(tri, sk, s), {}};
  if (!is_closed(tri, s)) w.slopes = slopes_of(tri, sk, s);
  return w;
}

enum class Setting { Ideal, ClosedMaterial, Bounded };

inline const char* setting_name(Setting s) {
  switch (s) {
    case Setting::Ideal: return "ideal";
    case Setting::ClosedMaterial: return "closed";
    case Setting::Bounded: return "bounded";
  }
  return "";
}

inline Setting setting_of(const Triangulation& tri, const Skeleton& sk) {
  for (const auto& k : classify_vertices(tri, sk))
    if (k.kind == VertexKind::Kind::Ideal) return Setting::Ideal;
  return sk.boundary_faces.empty() ? Setting::ClosedMaterial : Setting::Bounded;
}

/// Fails and Undetermined reports carry a witness unless the property is
/// out of scope for the input (see `reason`).
struct EfficiencyReport {
  Property property = Property::ZeroEfficient;
  Verdict verdict = Verdict::Holds;
  Setting setting = Setting::Bounded;
  std::string provenance;  // enumeration searched
  std::optional<Witness> witness;
  std::vector<Witness> candidates;  // BoundaryEfficiencyCandidates only
  std::string reason;
  std::vector<std::string> assumed;  // hypotheses not checked
};

inline bool is_connected_disk(const SurfaceTopology& t) { return t.components == 1 && t.euler == 1 && t.boundary_curves == 1; }
inline bool is_connected_sphere(const SurfaceTopology& t) {
  return t.components == 1 && t.euler == 2 && t.boundary_curves == 0;
}
inline bool is_connected_annulus(const SurfaceTopology& t) {
  return t.components == 1 && t.euler == 0 && t.orientable && t.boundary_curves == 2;
}

inline EfficiencyReport check_zero_efficient(const Triangulation& tri, const SurfaceList& vertex) {
  const auto sk = build_skeleton(tri);
  EfficiencyReport r;
  r.property = Property::ZeroEfficient;
  r.setting = setting_of(tri, sk);
  r.provenance = vertex.tag();
  if (r.setting == Setting::Bounded)
    for (std::size_t v = 0; v < sk.num_vertices(); ++v)
      if (!sk.vertex_boundary[v]) {
        r.verdict = Verdict::Fails;
        r.witness = make_witness(tri, sk, vertex_linking(tri, sk, static_cast<int>(v)));
        r.reason = "interior vertex " + std::to_string(v) + "; efficiency requires all vertices on the boundary";
        return r;
      }
  for (const auto& s : vertex.surfaces) {
    auto top = surface_topology(tri, s);
    bool bad = false;
    switch (r.setting) {
      case Setting::Ideal: bad = is_connected_sphere(top); break;
      case Setting::ClosedMaterial:
        bad = is_connected_sphere(top) && recognize_special(tri, sk, s).kind != Special::Kind::VertexLinking;
        break;
      case Setting::Bounded:
        bad = is_connected_disk(top) && recognize_special(tri, sk, s).kind != Special::Kind::VertexLinking;
        break;
    }
    if (bad) {
      r.verdict = Verdict::Fails;
      r.witness = make_witness(tri, sk, s);
      r.reason = r.setting == Setting::Bounded ? "normal disk that is not vertex-linking" : "normal sphere";
      if (r.setting == Setting::ClosedMaterial) r.reason += " that is not vertex-linking";
      return r;
    }
  }
  return r;
}

inline EfficiencyReport check_zero_efficient(const Triangulation& tri) {
  return check_zero_efficient(tri, vertex_surfaces(tri));
}

inline EfficiencyReport check_annular_efficient(const Triangulation& tri, const SurfaceList& vertex) {
  const auto sk = build_skeleton(tri);
  EfficiencyReport r;
  r.property = Property::AnnularEfficient;
  r.setting = setting_of(tri, sk);
  r.provenance = vertex.tag();
  if (r.setting != Setting::Bounded) {
    r.verdict = Verdict::Undetermined;
    r.reason = "annular-efficiency defined for material triangulations with boundary";
    return r;
  }
  auto zero = check_zero_efficient(tri, vertex);
  if (zero.verdict != Verdict::Holds) {
    r.verdict = zero.verdict;
    r.witness = zero.witness;
    r.reason = "not 0-efficient: " + zero.reason;
    return r;
  }
  std::optional<Witness> undetermined;
  for (const auto& s : vertex.surfaces) {
    auto top = surface_topology(tri, s);
    if (!is_connected_annulus(top)) continue;
    auto w = make_witness(tri, sk, s);
    if (w.special.kind == Special::Kind::ThinEdgeLinking) continue;
    // A boundary curve null-homotopic in the boundary makes the core
    // null-homotopic in M, so the annulus compresses. On spheres and tori
    // null-homologous simple curves are null-homotopic.
    bool essential = false, uncertain = false;
    for (const auto& c : boundary_curves(tri, sk, s).curves) {
      if (!c.homology.empty())
        essential = true;
      else if (sk.boundary_genus(c.component) >= 2)
        uncertain = true;
    }
    if (!essential && !uncertain) continue;
    if (essential) {
      r.verdict = Verdict::Fails;
      r.witness = std::move(w);
      r.reason = "annulus with homologically essential boundary that is not thin edge-linking";
      return r;
    }
    if (!undetermined) undetermined = std::move(w);
  }
  if (undetermined) {
    r.verdict = Verdict::Undetermined;
    r.witness = std::move(undetermined);
    r.reason = "incompressibility oracle required";
  }
  return r;
}

inline EfficiencyReport check_annular_efficient(const Triangulation& tri) {
  return check_annular_efficient(tri, vertex_surfaces(tri));
}

struct NoNormalBoundary {
  NotNormalBoundary obstruction;
};

using BoundaryResult = std::variant<EfficiencyReport, NoNormalBoundary>;

inline BoundaryResult boundary_efficiency_candidates(const Triangulation& tri, const SurfaceList& fundamental) {
  const auto sk = build_skeleton(tri);
  if (sk.boundary_faces.empty())
    throw std::invalid_argument("boundary_efficiency_candidates: triangulation has no boundary");
  auto per = peripheral_surface(tri, sk);
  if (auto* nb = std::get_if<NotNormalBoundary>(&per)) return NoNormalBoundary{*nb};

  EfficiencyReport r;
  r.property = Property::BoundaryEfficiencyCandidates;
  r.setting = setting_of(tri, sk);
  r.provenance = fundamental.tag();
  r.assumed = {"irreducible", "boundary-irreducible", "an-annular"};
  std::vector<int> genera;
  for (int c = 0; c < sk.num_boundary_components; ++c) genera.push_back(sk.boundary_genus(c));
  for (const auto& s : fundamental.surfaces) {
    if (s.is_zero() || !is_closed(tri, s)) continue;
    auto top = surface_topology(tri, s);
    if (top.components != 1 || !top.orientable) continue;
    const int genus = top.per_component.front().genus;
    if (std::find(genera.begin(), genera.end(), genus) == genera.end()) continue;
    auto w = make_witness(tri, sk, s);
    if (w.special.kind == Special::Kind::BoundaryLinking) continue;
    r.candidates.push_back(std::move(w));
  }
  if (!r.candidates.empty()) {
    r.verdict = Verdict::Undetermined;
    r.witness = r.candidates.front();
    r.reason = "isotopy-into-boundary oracle required for " + std::to_string(r.candidates.size()) + " candidate(s)";
  }
  return r;
}

/// Falls back to vertex surfaces (a subset of the fundamental ones) when
/// fundamental enumeration hits the candidate cap; the verdict is then never
/// Holds.
inline BoundaryResult boundary_efficiency_candidates(const Triangulation& tri) {
  const auto sk = build_skeleton(tri);
  if (!sk.boundary_faces.empty())
    if (auto per = peripheral_surface(tri, sk); std::holds_alternative<NotNormalBoundary>(per))
      return NoNormalBoundary{std::get<NotNormalBoundary>(per)};
  try {
    return boundary_efficiency_candidates(tri, fundamental_surfaces(tri));
  } catch (const SizeExceeded& e) {
    auto result = boundary_efficiency_candidates(tri, vertex_surfaces(tri));
    auto& r = std::get<EfficiencyReport>(result);
    r.provenance = "vertex (fundamental capped)";
    if (r.verdict == Verdict::Holds) {
      r.verdict = Verdict::Undetermined;
      r.reason = std::string("no vertex candidate, but ") + e.what();
    }
    return result;
  }
}

}  // namespace crushkit
