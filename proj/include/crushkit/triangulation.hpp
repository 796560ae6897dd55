#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crushkit/perm.hpp"

namespace crushkit {

struct Gluing {
  int tet = -1;
  Perm perm;
  bool operator==(const Gluing&) const = default;
};

/// Tetrahedra with a face-pairing table. Face f of a tetrahedron is the face
/// opposite vertex f; a gluing of (t, f) to (t', p) sends vertex i of t to
/// vertex p[i] of t', and face f to face p[f].
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(std::size_t n, std::string name = {})
      : name_(std::move(name)), gluings_(n) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool ideal() const { return ideal_; }
  void set_ideal(bool v) { ideal_ = v; }

  std::size_t size() const { return gluings_.size(); }

  const std::optional<Gluing>& gluing(int tet, int face) const { return gluings_.at(tet)[face]; }
  bool is_boundary(int tet, int face) const { return !gluings_.at(tet)[face].has_value(); }

  /// Sets one side of a gluing only.
  void set_gluing(int tet, int face, std::optional<Gluing> g) { gluings_.at(tet)[face] = g; }

  /// Sets both sides of a gluing.
  void join(int tet, int face, int other, Perm p) {
    gluings_.at(tet)[face] = Gluing{other, p};
    gluings_.at(other)[p[face]] = Gluing{tet, p.inverse()};
  }

  int add_tetrahedron() {
    gluings_.emplace_back();
    return static_cast<int>(gluings_.size()) - 1;
  }

  std::size_t num_boundary_faces() const {
    std::size_t k = 0;
    for (const auto& t : gluings_)
      for (const auto& g : t)
        if (!g) ++k;
    return k;
  }

  std::size_t num_internal_face_pairs() const { return (4 * size() - num_boundary_faces()) / 2; }

  bool operator==(const Triangulation& o) const { return gluings_ == o.gluings_ && ideal_ == o.ideal_; }

 private:
  std::string name_;
  bool ideal_ = false;
  std::vector<std::array<std::optional<Gluing>, 4>> gluings_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

struct Token {
  std::string text;
  int column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline long parse_index(const Token& tok, std::string_view s, int line) {
  if (!all_digits(s) || s.size() > 9) throw ParseError(line, tok.column, "expected a non-negative integer, got '" + tok.text + "'");
  return std::stol(std::string(s));
}

}  // namespace detail

/// Parses the gluing-table format:
///
///     tets <n>
///     <t>: <e0> <e1> <e2> <e3>
///
/// where each entry is '-' (boundary) or '<t'>:<p0p1p2p3>'. '#' starts a
/// comment. An optional directive line 'ideal' or 'name <label>' may appear
/// before the tetrahedron lines. Gluings are stored raw; see validate().
inline Triangulation parse_triangulation(std::string_view text, std::string name = {}) {
  std::vector<std::string_view> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string_view::npos) {
        lines.push_back(text.substr(pos));
        break;
      }
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  std::optional<Triangulation> tri;
  std::vector<bool> seen;
  bool ideal = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const int lineno = static_cast<int>(li) + 1;
    auto toks = detail::tokenize(lines[li]);
    if (toks.empty()) continue;
    if (!tri) {
      if (toks[0].text == "name" && toks.size() >= 2) {
        name = toks[1].text;
        continue;
      }
      if (toks[0].text != "tets") throw ParseError(lineno, toks[0].column, "expected 'tets <n>'");
      if (toks.size() != 2) throw ParseError(lineno, toks[0].column, "expected 'tets <n>'");
      long n = detail::parse_index(toks[1], toks[1].text, lineno);
      tri.emplace(static_cast<std::size_t>(n), name);
      seen.assign(n, false);
      continue;
    }
    if (toks[0].text == "ideal" && toks.size() == 1) {
      ideal = true;
      continue;
    }
    if (toks[0].text == "name" && toks.size() >= 2) {
      tri->set_name(toks[1].text);
      continue;
    }
    const auto& head = toks[0];
    if (head.text.size() < 2 || head.text.back() != ':')
      throw ParseError(lineno, head.column, "expected '<t>:'");
    long t = detail::parse_index(head, std::string_view(head.text).substr(0, head.text.size() - 1), lineno);
    if (t >= static_cast<long>(tri->size()))
      throw ParseError(lineno, head.column, "tetrahedron index " + std::to_string(t) + " out of range");
    if (seen[t]) throw ParseError(lineno, head.column, "duplicate line for tetrahedron " + std::to_string(t));
    seen[t] = true;
    if (toks.size() != 5) throw ParseError(lineno, head.column, "expected four face entries");
    for (int f = 0; f < 4; ++f) {
      const auto& tok = toks[f + 1];
      if (tok.text == "-") {
        tri->set_gluing(static_cast<int>(t), f, std::nullopt);
        continue;
      }
      auto colon = tok.text.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, tok.column, "expected '-' or '<t>:<perm>'");
      long other = detail::parse_index(tok, std::string_view(tok.text).substr(0, colon), lineno);
      if (other >= static_cast<long>(tri->size()))
        throw ParseError(lineno, tok.column, "tetrahedron index " + std::to_string(other) + " out of range");
      std::string ps = tok.text.substr(colon + 1);
      if (ps.size() != 4 || !detail::all_digits(ps))
        throw ParseError(lineno, tok.column + static_cast<int>(colon) + 1, "malformed permutation '" + ps + "'");
      Perm p(ps[0] - '0', ps[1] - '0', ps[2] - '0', ps[3] - '0');
      if (!p.is_valid())
        throw ParseError(lineno, tok.column + static_cast<int>(colon) + 1, "malformed permutation '" + ps + "'");
      tri->set_gluing(static_cast<int>(t), f, Gluing{static_cast<int>(other), p});
    }
  }
  if (!tri) throw ParseError(static_cast<int>(lines.size()), 1, "missing 'tets <n>' line");
  for (std::size_t t = 0; t < seen.size(); ++t)
    if (!seen[t]) throw ParseError(static_cast<int>(lines.size()), 1, "missing line for tetrahedron " + std::to_string(t));
  tri->set_ideal(ideal);
  return *tri;
}

/// Writes the gluing-table format read by parse_triangulation().
inline std::string format_triangulation(const Triangulation& tri) {
  std::ostringstream os;
  if (!tri.name().empty()) os << "# " << tri.name() << "\n";
  os << "tets " << tri.size() << "\n";
  if (tri.ideal()) os << "ideal\n";
  for (std::size_t t = 0; t < tri.size(); ++t) {
    os << t << ":";
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(static_cast<int>(t), f);
      if (!g)
        os << " -";
      else
        os << " " << g->tet << ":" << g->perm.str();
    }
    os << "\n";
  }
  return os.str();
}

struct ValidationReport {
  std::vector<std::string> involution_failures;
  std::vector<std::string> self_gluings;
  bool orientable = true;
  /// Every gluing permutation is odd with respect to the given labels.
  bool oriented = true;
  /// Orientation sign per tetrahedron making every gluing orientation-reversing.
  std::vector<int> orientation;

  bool ok() const { return involution_failures.empty() && self_gluings.empty() && orientable; }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& s : involution_failures) os << "involution: " << s << "\n";
    for (const auto& s : self_gluings) os << "self-gluing: " << s << "\n";
    if (!orientable) os << "orientability: complex is not orientable\n";
    return os.str();
  }
};

class InvalidTriangulation : public std::runtime_error {
 public:
  explicit InvalidTriangulation(const std::string& what) : std::runtime_error(what) {}
};

inline ValidationReport validate(const Triangulation& tri) {
  ValidationReport rep;
  const int n = static_cast<int>(tri.size());
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      const int img = g->perm[f];
      if (g->tet == t && img == f) {
        rep.self_gluings.push_back("tet " + std::to_string(t) + " face " + std::to_string(f) +
                                   " glued to itself");
        continue;
      }
      const auto& back = tri.gluing(g->tet, img);
      if (!back || back->tet != t || back->perm != g->perm.inverse()) {
        rep.involution_failures.push_back("tet " + std::to_string(g->tet) + " face " + std::to_string(img) +
                                          " does not glue back to tet " + std::to_string(t) + " face " +
                                          std::to_string(f));
      }
      if (g->perm.sign() != -1) rep.oriented = false;
    }
  }
  // Two-colour the dual graph: sign(t) * sign(t') * sign(p) must be -1.
  rep.orientation.assign(n, 0);
  for (int s = 0; s < n && rep.orientable; ++s) {
    if (rep.orientation[s]) continue;
    rep.orientation[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty() && rep.orientable) {
      int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g) continue;
        int want = -rep.orientation[t] * g->perm.sign();
        if (!rep.orientation[g->tet]) {
          rep.orientation[g->tet] = want;
          stack.push_back(g->tet);
        } else if (rep.orientation[g->tet] != want) {
          rep.orientable = false;
        }
      }
    }
  }
  return rep;
}

inline void require_valid(const Triangulation& tri) {
  auto rep = validate(tri);
  if (!rep.ok()) throw InvalidTriangulation(rep.summary());
}

}  // namespace crushkit
