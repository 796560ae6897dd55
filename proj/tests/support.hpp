#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "crushkit/triangulation.hpp"

namespace test_support {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline crushkit::Triangulation fixture(const std::string& name) {
  return crushkit::parse_triangulation(read_file(std::string(CRUSHKIT_FIXTURE_DIR) + "/" + name + ".tri"), name);
}

}  // namespace test_support
