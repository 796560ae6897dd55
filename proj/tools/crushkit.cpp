// crushkit: command-line front end.
//
// Exit status: 0 success or Holds, 1 Fails or obstruction (witness written),
// 2 usage, parse or resource errors, 3 Undetermined.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "crushkit/crush.hpp"
#include "crushkit/efficiency.hpp"
#include "crushkit/enumerate.hpp"
#include "crushkit/io.hpp"
#include "crushkit/peripheral.hpp"
#include "crushkit/slopes.hpp"
#include "crushkit/transport.hpp"
#include "crushkit/vertex_kind.hpp"

namespace ck = crushkit;
namespace ckt = crushkit::tools;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kFails = 1, kError = 2, kUndetermined = 3;

struct Options {
  std::string manifest;
  bool json = false;
  bool timing = false;
};

struct Loaded {
  std::string path, text;
  ck::Triangulation tri;
};

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Loaded load_triangulation(const std::string& path) {
  Loaded l{path, ckt::read_file(path), {}};
  l.tri = ck::parse_triangulation(l.text, stem_of(path));
  ck::require_valid(l.tri);
  return l;
}

void finish_manifest(const Options& o, ckt::Manifest& m, std::chrono::steady_clock::time_point t0) {
  if (o.manifest.empty()) return;
  m.version = CRUSHKIT_VERSION;
  m.convention = ck::kCoordTag;
  if (o.timing) m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ckt::write_atomic(o.manifest, m.str());
}

// ---- info ----

std::string plural(std::size_t n, const std::string& one, const std::string& many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

std::string surface_name(int genus) {
  if (genus == 0) return "sphere";
  if (genus == 1) return "torus";
  return "genus " + std::to_string(genus);
}

struct InfoResult {
  std::vector<std::pair<std::string, std::string>> fields;
  std::string summary;
};

InfoResult info_of(const ck::Triangulation& tri) {
  auto sk = ck::build_skeleton(tri);
  auto kinds = ck::classify_vertices(tri, sk);
  InfoResult r;
  r.fields.emplace_back("name", tri.name());
  r.fields.emplace_back("tets", std::to_string(tri.size()));
  r.fields.emplace_back("edges", std::to_string(sk.num_edges()));
  r.fields.emplace_back("vertices", std::to_string(sk.num_vertices()));
  for (std::size_t v = 0; v < kinds.size(); ++v) r.fields.emplace_back("vertex." + std::to_string(v), kinds[v].str());
  r.fields.emplace_back("boundary_components", std::to_string(sk.num_boundary_components));
  std::vector<std::string> bnames;
  for (int c = 0; c < sk.num_boundary_components; ++c) {
    bnames.push_back(surface_name(sk.boundary_genus(c)));
    r.fields.emplace_back("boundary." + std::to_string(c), bnames.back());
  }
  std::string normal = "n/a";
  if (sk.num_boundary_components > 0) {
    auto per = ck::peripheral_surface(tri, sk);
    if (auto* nb = std::get_if<ck::NotNormalBoundary>(&per))
      normal = "no (tet " + std::to_string(nb->tet) + ": " + nb->pattern + ")";
    else
      normal = "yes";
  }
  r.fields.emplace_back("normal_boundary", normal);

  std::string s = plural(tri.size(), "tet", "tets") + ", " + plural(sk.num_edges(), "edge", "edges") + ", ";
  if (sk.num_boundary_components > 0) {
    s += plural(sk.num_boundary_components, "boundary component", "boundary components") + " (";
    for (std::size_t i = 0; i < bnames.size(); ++i) s += (i ? ", " : "") + bnames[i];
    s += "), " + plural(sk.num_vertices(), "vertex", "vertices");
  } else {
    std::map<std::string, int> groups;
    for (const auto& k : kinds)
      groups[k.kind == ck::VertexKind::Kind::Ideal ? "ideal vertex genus " + std::to_string(k.genus) : "interior vertex"]++;
    bool ideal = false;
    for (const auto& k : kinds) ideal = ideal || k.kind == ck::VertexKind::Kind::Ideal;
    for (const auto& [g, n] : groups) s += std::to_string(n) + " " + g + ", ";
    s += ideal ? "closed pseudo-manifold" : "closed manifold";
  }
  r.summary = s;
  return r;
}

int cmd_info(const Options& o, const std::vector<std::string>& paths) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::future<std::pair<Loaded, InfoResult>>> jobs;
  for (const auto& p : paths)
    jobs.push_back(std::async(std::launch::async, [p] {
      auto l = load_triangulation(p);
      auto r = info_of(l.tri);
      return std::make_pair(std::move(l), std::move(r));
    }));
  ckt::Manifest m;
  m.command = "info";
  json all = json::array();
  int status = kOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      auto [l, r] = jobs[i].get();
      m.input(l.path, l.text);
      if (o.json) {
        json j;
        for (const auto& [k, v] : r.fields) j[k] = v;
        j["summary"] = r.summary;
        all.push_back(j);
      } else {
        if (paths.size() > 1) std::cout << "file=" << l.path << "\n";
        for (const auto& [k, v] : r.fields) std::cout << k << "=" << v << "\n";
        std::cout << "summary=" << r.summary << "\n";
      }
    } catch (const std::exception& e) {
      std::cerr << paths[i] << ": " << e.what() << "\n";
      status = kError;
    }
  }
  if (o.json) std::cout << all.dump(2) << "\n";
  finish_manifest(o, m, t0);
  return status;
}

// ---- enumerate ----

int cmd_enumerate(const Options& o, const std::string& path, const std::string& mode, int bound,
                  const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  auto l = load_triangulation(path);
  ck::SurfaceList list;
  if (mode == "vertex")
    list = ck::vertex_surfaces(l.tri);
  else if (mode == "fundamental")
    list = ck::fundamental_surfaces(l.tri);
  else
    list = ck::surfaces_up_to(l.tri, bound);
  std::string text = ck::format_surfaces(l.tri.name(), l.tri.size(),
                                         {{"provenance", list.tag()},
                                          {"count", std::to_string(list.surfaces.size())},
                                          {"dimension", std::to_string(list.dimension)},
                                          {"equations", std::to_string(list.equations)},
                                          {"faces", std::to_string(list.faces)},
                                          {"work", std::to_string(list.work)}},
                                         list.surfaces);
  ckt::Manifest m;
  m.command = "enumerate " + list.tag();
  m.input(l.path, l.text);
  if (out.empty())
    std::cout << text;
  else
    m.emit(out, text);
  m.verdicts.emplace_back("count", std::to_string(list.surfaces.size()));
  finish_manifest(o, m, t0);
  return kOk;
}

// ---- check ----

json witness_json(const ck::Witness& w) {
  json j;
  j["coords"] = w.surface.str();
  j["euler"] = w.topology.euler;
  j["orientable"] = w.topology.orientable;
  j["components"] = w.topology.components;
  j["boundary_curves"] = w.topology.boundary_curves;
  j["special"] = w.special.str();
  json sl = json::array();
  for (const auto& s : w.slopes) sl.push_back(std::to_string(s.component) + ":" + s.weights_str());
  j["slopes"] = sl;
  return j;
}

std::vector<std::pair<std::string, std::string>> witness_fields(const std::string& prefix, const ck::Witness& w) {
  std::string slopes;
  for (const auto& s : w.slopes) slopes += (slopes.empty() ? "" : ";") + std::to_string(s.component) + ":" + s.weights_str();
  return {{prefix + ".coords", w.surface.str()},
          {prefix + ".euler", std::to_string(w.topology.euler)},
          {prefix + ".orientable", w.topology.orientable ? "yes" : "no"},
          {prefix + ".components", std::to_string(w.topology.components)},
          {prefix + ".boundary_curves", std::to_string(w.topology.boundary_curves)},
          {prefix + ".special", w.special.str()},
          {prefix + ".slopes", slopes.empty() ? "-" : slopes}};
}

int cmd_check(const Options& o, const std::string& path, bool zero, bool annular, bool boundary,
              const std::string& witness_dir) {
  auto t0 = std::chrono::steady_clock::now();
  auto l = load_triangulation(path);
  if (!zero && !annular && !boundary) zero = annular = boundary = true;
  ckt::Manifest m;
  m.command = "check";
  m.input(l.path, l.text);
  std::optional<ck::SurfaceList> vertex;
  if (zero || annular) vertex = ck::vertex_surfaces(l.tri);

  bool any_fail = false, any_undetermined = false;
  json reports = json::array();
  std::vector<std::pair<std::string, std::string>> lines;
  auto emit_witness = [&](const std::string& prop, const std::vector<ck::NormalSurface>& surfaces) {
    std::filesystem::create_directories(witness_dir);
    std::string file = (std::filesystem::path(witness_dir) / (l.tri.name() + "." + prop + ".witness")).string();
    m.emit(file, ck::format_surfaces(l.tri.name(), l.tri.size(), {{"witness", prop}}, surfaces));
    return file;
  };
  auto record = [&](const ck::EfficiencyReport& r) {
    const std::string prop = ck::property_name(r.property);
    const std::string key = "report." + prop;
    lines.emplace_back(key + ".verdict", ck::verdict_name(r.verdict));
    lines.emplace_back(key + ".setting", ck::setting_name(r.setting));
    lines.emplace_back(key + ".provenance", r.provenance);
    if (!r.reason.empty()) lines.emplace_back(key + ".reason", r.reason);
    for (const auto& a : r.assumed) lines.emplace_back(key + ".assumed", a);
    json j{{"property", prop}, {"verdict", ck::verdict_name(r.verdict)}, {"setting", ck::setting_name(r.setting)},
           {"provenance", r.provenance}, {"reason", r.reason}, {"assumed", r.assumed}};
    if (r.witness) {
      for (auto& f : witness_fields(key + ".witness", *r.witness)) lines.push_back(f);
      j["witness"] = witness_json(*r.witness);
    }
    if (!r.candidates.empty()) {
      json cands = json::array();
      for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        for (auto& f : witness_fields(key + ".candidate." + std::to_string(i), r.candidates[i])) lines.push_back(f);
        cands.push_back(witness_json(r.candidates[i]));
      }
      j["candidates"] = cands;
    }
    if (r.verdict != ck::Verdict::Holds && (r.witness || !r.candidates.empty())) {
      std::vector<ck::NormalSurface> ws;
      if (!r.candidates.empty())
        for (const auto& c : r.candidates) ws.push_back(c.surface);
      else
        ws.push_back(r.witness->surface);
      auto file = emit_witness(prop, ws);
      lines.emplace_back(key + ".witness_file", file);
      j["witness_file"] = file;
    }
    m.verdicts.emplace_back(prop, ck::verdict_name(r.verdict));
    any_fail = any_fail || r.verdict == ck::Verdict::Fails;
    any_undetermined = any_undetermined || r.verdict == ck::Verdict::Undetermined;
    reports.push_back(j);
  };

  if (zero) record(ck::check_zero_efficient(l.tri, *vertex));
  if (annular) record(ck::check_annular_efficient(l.tri, *vertex));
  if (boundary) {
    auto sk = ck::build_skeleton(l.tri);
    if (sk.boundary_faces.empty()) {
      lines.emplace_back("report.BoundaryEfficiencyCandidates.verdict", "Undetermined");
      lines.emplace_back("report.BoundaryEfficiencyCandidates.reason", "no boundary");
      reports.push_back({{"property", "BoundaryEfficiencyCandidates"}, {"verdict", "Undetermined"}, {"reason", "no boundary"}});
      m.verdicts.emplace_back("BoundaryEfficiencyCandidates", "Undetermined");
      any_undetermined = true;
    } else {
      auto res = ck::boundary_efficiency_candidates(l.tri);
      if (auto* nb = std::get_if<ck::NoNormalBoundary>(&res)) {
        const std::string where = "tet " + std::to_string(nb->obstruction.tet) + ": " + nb->obstruction.pattern;
        lines.emplace_back("report.BoundaryEfficiencyCandidates.verdict", "NoNormalBoundary");
        lines.emplace_back("report.BoundaryEfficiencyCandidates.obstruction", where);
        reports.push_back({{"property", "BoundaryEfficiencyCandidates"}, {"verdict", "NoNormalBoundary"}, {"obstruction", where}});
        m.verdicts.emplace_back("BoundaryEfficiencyCandidates", "NoNormalBoundary");
        any_fail = true;
      } else {
        record(std::get<ck::EfficiencyReport>(res));
      }
    }
  }
  if (o.json) {
    std::cout << json{{"name", l.tri.name()}, {"reports", reports}}.dump(2) << "\n";
  } else {
    std::cout << "name=" << l.tri.name() << "\n";
    for (const auto& [k, v] : lines) std::cout << k << "=" << v << "\n";
  }
  finish_manifest(o, m, t0);
  if (any_fail) return kFails;
  if (any_undetermined) return kUndetermined;
  return kOk;
}

// ---- crush ----

int cmd_crush(const Options& o, const std::string& path, const std::string& surface_path, std::size_t index,
              const std::string& region, const std::string& out, std::string sidecar) {
  auto t0 = std::chrono::steady_clock::now();
  auto l = load_triangulation(path);
  const std::string stext = ckt::read_file(surface_path);
  auto file = ck::parse_surfaces(stext, l.tri.size());
  if (index >= file.surfaces.size())
    throw std::invalid_argument("surface index " + std::to_string(index) + " out of range (file has " +
                                std::to_string(file.surfaces.size()) + ")");
  const auto& s = file.surfaces[index];
  std::optional<ck::RegionKey> designated;
  if (!region.empty()) {
    designated = ck::parse_region_key(region);
    if (!designated) throw std::invalid_argument("malformed region key '" + region + "'");
  }
  ckt::Manifest m;
  m.command = "crush";
  m.input(l.path, l.text);
  m.input(surface_path, stext);
  auto result = ck::crush_along(l.tri, s, designated);
  if (auto* ob = std::get_if<ck::CrushObstruction>(&result)) {
    std::string report = "crush-obstruction-v1\nreason=" + std::string(ck::crush_failure_name(ob->reason)) + "\n";
    if (!ob->detail.empty()) report += "detail=" + ob->detail + "\n";
    for (int c : ob->candidates) report += "candidate_component=" + std::to_string(c) + "\n";
    if (ob->cycle) {
      report += "cycle=";
      for (std::size_t i = 0; i < ob->cycle->prisms.size(); ++i)
        report += (i ? " " : "") + std::to_string(ob->cycle->prisms[i].first) + ":" +
                  std::to_string(ob->cycle->prisms[i].second);
      report += "\n";
    }
    report += "surface=" + s.str() + "\n";
    std::cout << report;
    m.emit(out + ".obstruction", report);
    m.verdicts.emplace_back("crush", ck::crush_failure_name(ob->reason));
    finish_manifest(o, m, t0);
    return kFails;
  }
  const auto& outcome = std::get<ck::CrushOutcome>(result);
  if (sidecar.empty()) sidecar = out + ".corr";
  m.emit(out, ck::format_triangulation(outcome.crushed));
  m.emit(sidecar, outcome.correspondence());
  m.verdicts.emplace_back("crush", "success");
  std::cout << "crushed=" << out << "\ntets=" << outcome.crushed.size() << "\ncorrespondence=" << sidecar << "\n";
  finish_manifest(o, m, t0);
  return kOk;
}

// ---- slopes ----

int cmd_slopes(const Options& o, const std::string& path, int chi_min, int bound, const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  auto l = load_triangulation(path);
  auto census = ck::slope_census(l.tri, chi_min, bound);
  std::string text = ck::format_census(census);
  ckt::Manifest m;
  m.command = "slopes";
  m.input(l.path, l.text);
  if (out.empty())
    std::cout << text;
  else
    m.emit(out, text);
  m.verdicts.emplace_back("classes", std::to_string(census.entries.size()));
  finish_manifest(o, m, t0);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crushkit: normal surfaces, crushing and efficiency checks"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--manifest", opts.manifest, "Write a run manifest with input and output digests");
  app.add_flag("--json", opts.json, "Emit reports as JSON");
  app.add_flag("--timing", opts.timing, "Record wall-clock time in the manifest");

  std::vector<std::string> info_paths;
  auto* info = app.add_subcommand("info", "Summarize triangulations");
  info->add_option("files", info_paths, "Triangulation files")->required()->check(CLI::ExistingFile);

  std::string tri_path, mode = "vertex", out;
  int bound = 0;
  auto* en = app.add_subcommand("enumerate", "Enumerate normal surfaces");
  en->add_option("file", tri_path)->required()->check(CLI::ExistingFile);
  en->add_option("--mode", mode)->check(CLI::IsMember({"vertex", "fundamental", "bounded"}));
  en->add_option("--bound,-B", bound, "Coordinate bound for bounded mode")->check(CLI::NonNegativeNumber);
  en->add_option("-o,--output", out, "Surface file (default stdout)");

  bool zero = false, annular = false, boundary = false;
  std::string witness_dir = ".";
  auto* ch = app.add_subcommand("check", "Efficiency checks");
  ch->add_option("file", tri_path)->required()->check(CLI::ExistingFile);
  ch->add_flag("--zero", zero);
  ch->add_flag("--annular", annular);
  ch->add_flag("--boundary", boundary);
  ch->add_option("--witness-dir", witness_dir, "Directory for witness files");

  std::string surface_path, region, sidecar;
  std::size_t index = 0;
  auto* cr = app.add_subcommand("crush", "Crush along a closed normal surface");
  cr->add_option("file", tri_path)->required()->check(CLI::ExistingFile);
  cr->add_option("surface", surface_path, "Surface file")->required()->check(CLI::ExistingFile);
  cr->add_option("--index", index, "Surface line to use (0-based)");
  cr->add_option("--region", region, "Representative block of X, e.g. 0:trunctet");
  cr->add_option("-o,--output", out, "Crushed triangulation")->required();
  cr->add_option("--sidecar", sidecar, "Correspondence file (default <output>.corr)");

  int chi_min = -2;
  auto* sl = app.add_subcommand("slopes", "Boundary slope census");
  sl->add_option("file", tri_path)->required()->check(CLI::ExistingFile);
  sl->add_option("--chi-min", chi_min);
  sl->add_option("--bound", bound)->required()->check(CLI::NonNegativeNumber);
  sl->add_option("-o,--output", out, "Census file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*info) return cmd_info(opts, info_paths);
    if (*en) {
      if (mode == "bounded" && en->count("--bound") == 0) throw std::invalid_argument("bounded mode requires --bound");
      return cmd_enumerate(opts, tri_path, mode, bound, out);
    }
    if (*ch) return cmd_check(opts, tri_path, zero, annular, boundary, witness_dir);
    if (*cr) return cmd_crush(opts, tri_path, surface_path, index, region, out, sidecar);
    if (*sl) return cmd_slopes(opts, tri_path, chi_min, bound, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
