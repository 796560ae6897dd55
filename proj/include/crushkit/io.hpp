#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crushkit/normal_surface.hpp"

namespace crushkit {

inline constexpr const char* kCoordTag = "ncoord-v1";

class SurfaceParseError : public std::runtime_error {
 public:
  SurfaceParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A parsed surface file. `meta` holds the header's key=value pairs.
struct SurfaceFile {
  std::map<std::string, std::string> meta;
  std::vector<NormalSurface> surfaces;

  std::string name() const { return meta.count("name") ? meta.at("name") : std::string(); }
};

/// Header line, then one surface per line. Extra header keys keep insertion order.
inline std::string format_surfaces(const std::string& name, std::size_t tets,
                                   const std::vector<std::pair<std::string, std::string>>& extra,
                                   const std::vector<NormalSurface>& surfaces) {
  std::string out = std::string(kCoordTag) + " name=" + (name.empty() ? "-" : name) + " tets=" + std::to_string(tets);
  for (const auto& [k, v] : extra) out += " " + k + "=" + v;
  out += '\n';
  for (const auto& s : surfaces) out += s.str() + '\n';
  return out;
}

/// Accepts files with or without the header. With `tets` > 0, every line
/// must have 7 * tets entries; otherwise the header or first line decides.
inline SurfaceFile parse_surfaces(std::string_view text, std::size_t tets = 0) {
  SurfaceFile file;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::size_t width = 7 * tets;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words[0] == kCoordTag) {
      if (!file.surfaces.empty()) throw SurfaceParseError(lineno, "header after surface lines");
      for (std::size_t i = 1; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos) throw SurfaceParseError(lineno, "expected key=value, got '" + words[i] + "'");
        file.meta[words[i].substr(0, eq)] = words[i].substr(eq + 1);
      }
      if (file.meta.count("tets")) {
        std::size_t n = 0;
        try {
          n = std::stoul(file.meta["tets"]);
        } catch (const std::exception&) {
          throw SurfaceParseError(lineno, "bad tets value");
        }
        if (width && width != 7 * n) throw SurfaceParseError(lineno, "header tets disagrees with triangulation");
        width = 7 * n;
      }
      continue;
    }
    if (words[0].rfind(kCoordTag, 0) != 0 && words[0].find("ncoord-") == 0)
      throw SurfaceParseError(lineno, "unsupported coordinate tag " + words[0]);
    NormalSurface s;
    for (const auto& w : words) {
      try {
        s.coords.emplace_back(w.c_str());
      } catch (const std::exception&) {
        throw SurfaceParseError(lineno, "not an integer: '" + w + "'");
      }
      if (s.coords.back() < 0) throw SurfaceParseError(lineno, "negative coordinate " + w);
    }
    if (width == 0) width = s.coords.size();
    if (s.coords.size() != width || width % 7 != 0)
      throw SurfaceParseError(lineno, "expected " + std::to_string(width) + " coordinates, got " +
                                          std::to_string(s.coords.size()));
    file.surfaces.push_back(std::move(s));
  }
  return file;
}

}  // namespace crushkit
