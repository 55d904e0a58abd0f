#pragma once

// Geometry of the hypercubic lattice Z^d: vertices, edges, the lexicographic
// vertex order and the fixed ordering of directed edges at a vertex.

#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lattice {

using Coord = std::int32_t;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of Z^d. The dimension is carried at runtime.
struct Vertex {
  std::vector<Coord> coords;

  Vertex() = default;
  explicit Vertex(int d) : coords(static_cast<std::size_t>(d), 0) {}
  Vertex(std::initializer_list<Coord> c) : coords(c) {}
  explicit Vertex(std::vector<Coord> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  Coord operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  static Vertex origin(int d) { return Vertex(d); }

  Vertex shifted(int axis, int sign) const {
    Vertex v = *this;
    assert(v[axis] != (sign > 0 ? std::numeric_limits<Coord>::max()
                                 : std::numeric_limits<Coord>::min()));
    v[axis] += sign;
    return v;
  }

  Vertex operator+(const Vertex& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("vertex dimension mismatch");
    Vertex v = *this;
    for (int i = 0; i < dim(); ++i) v[i] += o[i];
    return v;
  }
  Vertex operator-(const Vertex& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("vertex dimension mismatch");
    Vertex v = *this;
    for (int i = 0; i < dim(); ++i) v[i] -= o[i];
    return v;
  }

  // Lexicographic; only meaningful between vertices of equal dimension.
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    return a.coords <=> b.coords;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

inline std::string to_string(const Vertex& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ')';
}

/// Lexicographic comparison: u < v iff u_i < v_i at the first differing index.
inline std::strong_ordering lex_compare(const Vertex& u, const Vertex& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("lex_compare: dimension mismatch");
  return u.coords <=> v.coords;
}

/// Edge from `tail` to tail + sign * e_axis.
struct DirectedEdge {
  Vertex tail;
  int axis = 0;
  int sign = +1;

  Vertex head() const { return tail.shifted(axis, sign); }
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Directed edges at a vertex are ranked by (axis ascending, + before -).
// Eden code bit positions depend on this, so it must never change.
constexpr int direction_rank(int axis, int sign) { return 2 * axis + (sign > 0 ? 0 : 1); }
constexpr int rank_axis(int rank) { return rank / 2; }
constexpr int rank_sign(int rank) { return (rank % 2 == 0) ? +1 : -1; }
constexpr int opposite_rank(int rank) { return rank ^ 1; }

inline int directed_edge_rank(const DirectedEdge& e) {
  assert(e.axis >= 0 && e.axis < e.tail.dim());
  assert(e.sign == 1 || e.sign == -1);
  return direction_rank(e.axis, e.sign);
}

/// Undirected lattice edge, stored as (lower endpoint, axis): the other
/// endpoint is lower + e_axis.
struct UndirectedEdge {
  Vertex lower;
  int axis = 0;

  UndirectedEdge() = default;
  UndirectedEdge(Vertex low, int ax) : lower(std::move(low)), axis(ax) {}

  static UndirectedEdge between(const Vertex& a, const Vertex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("edge endpoints differ in dimension");
    int axis = -1;
    for (int i = 0; i < a.dim(); ++i) {
      const auto diff = static_cast<std::int64_t>(b[i]) - a[i];
      if (diff == 0) continue;
      if (axis != -1 || (diff != 1 && diff != -1))
        throw std::invalid_argument("edge endpoints " + to_string(a) + " and " + to_string(b) +
                                    " are not lattice neighbours");
      axis = i;
    }
    if (axis == -1) throw std::invalid_argument("edge endpoints coincide: " + to_string(a));
    return a[axis] < b[axis] ? UndirectedEdge(a, axis) : UndirectedEdge(b, axis);
  }

  Vertex upper() const { return lower.shifted(axis, +1); }
  int dim() const { return lower.dim(); }

  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) = default;
  friend auto operator<=>(const UndirectedEdge& a, const UndirectedEdge& b) {
    if (auto c = a.lower <=> b.lower; c != 0) return c;
    return a.axis <=> b.axis;
  }
};

inline std::ostream& operator<<(std::ostream& os, const UndirectedEdge& e) {
  return os << e.lower << "-" << e.upper();
}

/// The 2d lattice neighbours of v in directed_edge_rank order.
inline std::vector<Vertex> neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(2 * v.coords.size());
  for (int r = 0; r < 2 * v.dim(); ++r) out.push_back(v.shifted(rank_axis(r), rank_sign(r)));
  return out;
}

inline bool adjacent(const Vertex& u, const Vertex& v) {
  if (u.dim() != v.dim()) return false;
  int diffs = 0;
  for (int i = 0; i < u.dim(); ++i) {
    const auto d = static_cast<std::int64_t>(u[i]) - v[i];
    if (d == 0) continue;
    if (d != 1 && d != -1) return false;
    ++diffs;
  }
  return diffs == 1;
}

}  // namespace lattice
