#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crushkit::tools {

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a temporary file in the same directory and renames over the target.
inline void write_atomic(const std::string& path, const std::string& data) {
  std::filesystem::path p(path);
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << data;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

struct Manifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  std::vector<std::pair<std::string, std::string>> verdicts;
  std::string version;
  std::string convention;
  std::optional<double> seconds;

  void input(const std::string& path, const std::string& content) { inputs.emplace_back(path, sha256_hex(content)); }

  /// Writes an artifact and records its digest.
  void emit(const std::string& path, const std::string& content) {
    write_atomic(path, content);
    outputs.emplace_back(path, sha256_hex(content));
  }

  std::string str() const {
    std::string s = "crushkit-manifest-v1\n";
    s += "command=" + command + "\n";
    s += "kernel=" + version + "\n";
    s += "convention=" + convention + "\n";
    for (const auto& [p, d] : inputs) s += "input=" + p + " sha256=" + d + "\n";
    for (const auto& [p, d] : outputs) s += "output=" + p + " sha256=" + d + "\n";
    for (const auto& [k, v] : verdicts) s += "verdict." + k + "=" + v + "\n";
    if (seconds) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", *seconds);
      s += std::string("timing_seconds=") + buf + "\n";
    }
    return s;
  }
};

}  // namespace crushkit::tools
