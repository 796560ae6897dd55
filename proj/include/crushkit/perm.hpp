#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

namespace crushkit {

/// A permutation of the vertex labels {0,1,2,3} of a tetrahedron.
class Perm {
 public:
  constexpr Perm() : img_{0, 1, 2, 3} {}
  constexpr Perm(int a, int b, int c, int d)
      : img_{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
             static_cast<uint8_t>(c), static_cast<uint8_t>(d)} {}

  constexpr int operator[](int i) const { return img_[i]; }

  constexpr Perm inverse() const {
    Perm r;
    for (int i = 0; i < 4; ++i) r.img_[img_[i]] = static_cast<uint8_t>(i);
    return r;
  }

  /// (*this * other)(i) == (*this)(other(i))
  constexpr Perm operator*(const Perm& other) const {
    Perm r;
    for (int i = 0; i < 4; ++i) r.img_[i] = img_[other.img_[i]];
    return r;
  }

  /// +1 for even permutations, -1 for odd.
  constexpr int sign() const {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (img_[i] > img_[j]) ++inv;
    return (inv % 2) ? -1 : 1;
  }

  constexpr bool is_valid() const {
    int seen = 0;
    for (auto v : img_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }

  static constexpr Perm transposition(int a, int b) {
    Perm r;
    r.img_[a] = static_cast<uint8_t>(b);
    r.img_[b] = static_cast<uint8_t>(a);
    return r;
  }

  /// All 24 permutations in lexicographic order of their image strings.
  static constexpr std::array<Perm, 24> all() {
    std::array<Perm, 24> out{};
    int k = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d)
            if (a != b && a != c && a != d && b != c && b != d && c != d)
              out[k++] = Perm(a, b, c, d);
    return out;
  }

  std::string str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
    return s;
  }

  constexpr bool operator==(const Perm&) const = default;
  constexpr auto operator<=>(const Perm&) const = default;

 private:
  std::array<uint8_t, 4> img_;
};

inline std::ostream& operator<<(std::ostream& os, const Perm& p) { return os << p.str(); }

// Edge numbering inside a tetrahedron: 0:01 1:02 2:03 3:12 4:13 5:23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_number(int a, int b) {
  if (a > b) {
    int t = a;
    a = b;
    b = t;
  }
  constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

/// Quad type j separates {0, j+1} from the other two vertices.
/// Returns the quad type whose separated pairs contain the edge {a,b}.
constexpr int quad_type(int a, int b) {
  if (a > b) {
    int t = a;
    a = b;
    b = t;
  }
  if (a == 0) return b - 1;
  // {1,2} pairs with {0,3}: type 2; {1,3} with {0,2}: type 1; {2,3} with {0,1}: type 0
  return 3 - (a + b - 2);
}

/// The vertex paired with v by quad type j.
constexpr int quad_partner(int j, int v) {
  constexpr int table[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return table[j][v];
}

/// Whether v lies on the side of quad type j that contains vertex 0.
constexpr bool quad_low_side(int j, int v) { return v == 0 || v == j + 1; }

/// Whether quad type j crosses edge {a,b}.
constexpr bool quad_crosses(int j, int a, int b) { return quad_partner(j, a) != b; }

}  // namespace crushkit
