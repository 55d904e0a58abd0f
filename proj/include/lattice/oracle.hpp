#pragma once

// Brute-force ground truth for the enumeration fast path: grow every animal
// of size k+1 from every animal of size k by one adjacent cell, normalize to
// the lexmin-at-origin translate, and deduplicate in an ordered set. Slow,
// single-threaded and deliberately unclever.

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "lattice/animal.hpp"

namespace lattice {

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  /// Refuse when the predicted number of listed animals exceeds this.
  double cap = 1e9;
};

/// A priori upper bound on the number of animals the oracle would list:
/// count * p^n (1-p)^{(2d-2)n + c} <= 1 at p = 1/(2d-1), with c = 2 for
/// vertex sets and c = 2d for edge sets, times the vertex count for
/// origin-containing listings.
inline double oracle_predicted_size(int d, int n, Kind kind, Rooting rooting) {
  const double translates = rooting == Rooting::origin_containing ? n + 1.0 : 1.0;
  if (d == 1) return translates;
  const double p = 1.0 / (2.0 * d - 1.0);
  const double c = uses_edges(kind) ? 2.0 * d : 2.0;
  const double log_bound = -n * std::log(p) - ((2.0 * d - 2.0) * n + c) * std::log1p(-p);
  return translates * std::exp(log_bound);
}

namespace oracle_detail {

struct Shape {
  // Exactly one of the two is used, depending on the kind.
  std::vector<Vertex> cells;
  std::vector<UndirectedEdge> edges;

  friend auto operator<=>(const Shape&, const Shape&) = default;
  friend bool operator==(const Shape&, const Shape&) = default;
};

inline Vertex min_vertex(const Shape& s) {
  Vertex best;
  bool first = true;
  auto consider = [&](const Vertex& v) {
    if (first || v < best) best = v;
    first = false;
  };
  for (const auto& c : s.cells) consider(c);
  for (const auto& e : s.edges) {
    consider(e.lower);
    consider(e.upper());
  }
  return best;
}

inline Shape normalized(Shape s) {
  const Vertex m = min_vertex(s);
  for (auto& c : s.cells)
    for (int i = 0; i < c.dim(); ++i) c[i] -= m[i];
  for (auto& e : s.edges)
    for (int i = 0; i < e.lower.dim(); ++i) e.lower[i] -= m[i];
  std::sort(s.cells.begin(), s.cells.end());
  std::sort(s.edges.begin(), s.edges.end());
  return s;
}

inline std::vector<Vertex> all_neighbours(const Vertex& v) {
  std::vector<Vertex> out;
  for (int i = 0; i < v.dim(); ++i) {
    for (int delta : {-1, 1}) {
      Vertex w = v;
      w[i] += delta;
      out.push_back(w);
    }
  }
  return out;
}

// Edges sharing at least one endpoint with e.
inline std::vector<UndirectedEdge> touching_edges(const UndirectedEdge& e) {
  std::vector<UndirectedEdge> out;
  for (const Vertex& end : {e.lower, e.upper()}) {
    for (const Vertex& w : all_neighbours(end)) {
      const Vertex& lo = w < end ? w : end;
      int axis = 0;
      while (w[axis] == end[axis]) ++axis;
      UndirectedEdge f(lo, axis);
      if (!(f == e)) out.push_back(f);
    }
  }
  return out;
}

inline std::size_t distinct_vertex_count(const Shape& s) {
  std::set<Vertex> vs;
  for (const auto& e : s.edges) {
    vs.insert(e.lower);
    vs.insert(e.upper());
  }
  return vs.size();
}

// Independent interface test on a sparse cell set: a unit cell is exterior
// if a walk that never crosses an edge of the shape leaves the bounding box.
inline bool oracle_is_interface(const Shape& s) {
  std::set<UndirectedEdge> wall(s.edges.begin(), s.edges.end());
  Coord lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  bool first = true;
  for (const auto& e : s.edges) {
    for (const Vertex& v : {e.lower, e.upper()}) {
      if (first) {
        lo_x = hi_x = v[0];
        lo_y = hi_y = v[1];
        first = false;
      }
      lo_x = std::min(lo_x, v[0]);
      hi_x = std::max(hi_x, v[0]);
      lo_y = std::min(lo_y, v[1]);
      hi_y = std::max(hi_y, v[1]);
    }
  }
  auto escapes = [&](Coord sx, Coord sy) {
    std::set<std::pair<Coord, Coord>> seen{{sx, sy}};
    std::vector<std::pair<Coord, Coord>> todo{{sx, sy}};
    while (!todo.empty()) {
      auto [x, y] = todo.back();
      todo.pop_back();
      if (x < lo_x || x >= hi_x || y < lo_y || y >= hi_y) return true;
      // The side shared with the neighbouring cell, as a lattice edge.
      const std::pair<std::pair<Coord, Coord>, UndirectedEdge> steps[] = {
          {{x + 1, y}, UndirectedEdge(Vertex{x + 1, y}, 1)},
          {{x - 1, y}, UndirectedEdge(Vertex{x, y}, 1)},
          {{x, y + 1}, UndirectedEdge(Vertex{x, y + 1}, 0)},
          {{x, y - 1}, UndirectedEdge(Vertex{x, y}, 0)},
      };
      for (const auto& [cell, side] : steps)
        if (!wall.count(side) && seen.insert(cell).second) todo.push_back(cell);
    }
    return false;
  };
  for (const auto& e : s.edges) {
    const Coord x = e.lower[0], y = e.lower[1];
    const bool ok = e.axis == 0 ? (escapes(x, y - 1) || escapes(x, y)) : (escapes(x - 1, y) || escapes(x, y));
    if (!ok) return false;
  }
  return true;
}

}  // namespace oracle_detail

/// Exhaustive list of all animals of size exactly n, as LatticeAnimal values.
/// Lexmin rooting lists one representative per translation class (lexmin
/// vertex at the origin); origin-containing rooting lists every translate
/// containing the origin.
inline std::vector<LatticeAnimal> enumerate_oracle(int d, int n, Kind kind, Rooting rooting,
                                                   const OracleOptions& opt = {}) {
  using oracle_detail::Shape;
  if (d < 1 || n < 1) throw std::invalid_argument("enumerate_oracle needs d >= 1 and n >= 1");
  if (kind == Kind::interface2d && d != 2) throw std::invalid_argument("interface2d requires d = 2");
  if (oracle_predicted_size(d, n, kind, rooting) > opt.cap)
    throw OracleCapExceeded("oracle refuses d=" + std::to_string(d) + " n=" + std::to_string(n) +
                            ": predicted output exceeds cap");

  const bool edges = uses_edges(kind);
  std::set<Shape> level;
  if (edges) {
    for (int a = 0; a < d; ++a) level.insert(Shape{{}, {UndirectedEdge(Vertex::origin(d), a)}});
  } else {
    level.insert(Shape{{Vertex::origin(d)}, {}});
  }

  for (int size = 1; size < n; ++size) {
    std::set<Shape> grown;
    for (const Shape& s : level) {
      if (edges) {
        for (const auto& e : s.edges) {
          for (const auto& f : oracle_detail::touching_edges(e)) {
            if (std::find(s.edges.begin(), s.edges.end(), f) != s.edges.end()) continue;
            Shape t = s;
            t.edges.push_back(f);
            grown.insert(oracle_detail::normalized(std::move(t)));
          }
        }
      } else {
        for (const auto& c : s.cells) {
          for (const auto& w : oracle_detail::all_neighbours(c)) {
            if (std::find(s.cells.begin(), s.cells.end(), w) != s.cells.end()) continue;
            Shape t = s;
            t.cells.push_back(w);
            grown.insert(oracle_detail::normalized(std::move(t)));
          }
        }
      }
    }
    level = std::move(grown);
  }

  std::vector<LatticeAnimal> out;
  for (const Shape& s : level) {
    if (kind == Kind::tree && oracle_detail::distinct_vertex_count(s) != s.edges.size() + 1) continue;
    if (kind == Kind::interface2d && !oracle_detail::oracle_is_interface(s)) continue;
    LatticeAnimal a = edges ? LatticeAnimal::bond(d, s.edges, kind == Kind::tree ? Kind::tree : Kind::bond)
                            : LatticeAnimal::site(d, s.cells);
    if (rooting == Rooting::lexmin) {
      out.push_back(std::move(a));
      continue;
    }
    for (const auto& v : a.vertices()) out.push_back(a.translated(Vertex::origin(d) - v));
  }
  return out;
}

}  // namespace lattice
