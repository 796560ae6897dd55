#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace crushkit {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t add() {
    parent_.push_back(parent_.size());
    rank_.push_back(0);
    return parent_.size() - 1;
  }

  std::size_t size() const { return parent_.size(); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  /// Dense relabelling of the classes in order of first appearance.
  std::vector<int> labels(int* count = nullptr) {
    std::vector<int> map(parent_.size(), -1), out(parent_.size());
    int next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      auto r = find(i);
      if (map[r] < 0) map[r] = next++;
      out[i] = map[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

/// Union-find carrying a Z/2 label relative to the class root. unite() returns
/// false when the requested relation contradicts an existing one.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n = 0) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int p = 0;
    std::size_t r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // path compression
    int acc = p;
    while (parent_[x] != r) {
      std::size_t next = parent_[x];
      int px = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= px;
      x = next;
    }
    return {r, p};
  }

  /// Requires label(a) xor label(b) == rel.
  bool unite(std::size_t a, std::size_t b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
};

}  // namespace crushkit
