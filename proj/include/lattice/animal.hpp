#pragma once

// Finite connected structures in Z^d: site animals (vertex sets), bond
// animals (edge sets) and lattice trees, stored in a sorted canonical layout.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lattice/core.hpp"

namespace lattice {

enum class Kind { site, bond, tree, interface2d };
enum class Rooting { origin_containing, lexmin };

inline bool uses_edges(Kind k) { return k != Kind::site; }

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::site: return "site";
    case Kind::bond: return "bond";
    case Kind::tree: return "tree";
    case Kind::interface2d: return "interface2d";
  }
  return "?";
}

inline std::string_view to_string(Rooting r) {
  return r == Rooting::lexmin ? "lexmin" : "origin";
}

inline Kind parse_kind(std::string_view s) {
  if (s == "site") return Kind::site;
  if (s == "bond") return Kind::bond;
  if (s == "tree") return Kind::tree;
  if (s == "interface2d" || s == "interface") return Kind::interface2d;
  throw std::invalid_argument("unknown kind '" + std::string(s) + "'");
}

inline Rooting parse_rooting(std::string_view s) {
  if (s == "lexmin") return Rooting::lexmin;
  if (s == "origin" || s == "origin-containing") return Rooting::origin_containing;
  throw std::invalid_argument("unknown rooting '" + std::string(s) + "'");
}

class InvalidAnimal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LatticeAnimal {
 public:
  /// Connected set of vertices. Throws InvalidAnimal on duplicates,
  /// mixed dimensions, or a disconnected set.
  static LatticeAnimal site(int d, std::vector<Vertex> cells) {
    LatticeAnimal a(d, Kind::site);
    for (const auto& c : cells)
      if (c.dim() != d) throw InvalidAnimal("cell " + lattice::to_string(c) + " is not in Z^" + std::to_string(d));
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
      throw InvalidAnimal("duplicate cell");
    if (cells.empty()) throw InvalidAnimal("empty animal");
    a.cells_ = std::move(cells);
    if (!a.connected()) throw InvalidAnimal("site animal is not connected");
    return a;
  }

  /// Connected set of edges. Kind::tree additionally demands acyclicity;
  /// Kind::interface2d is stored like a bond animal.
  static LatticeAnimal bond(int d, std::vector<UndirectedEdge> edges, Kind kind = Kind::bond) {
    if (!uses_edges(kind)) throw InvalidAnimal("bond constructor needs an edge kind");
    LatticeAnimal a(d, kind);
    for (const auto& e : edges)
      if (e.dim() != d || e.axis < 0 || e.axis >= d) throw InvalidAnimal("edge is not in Z^" + std::to_string(d));
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw InvalidAnimal("duplicate edge");
    if (edges.empty()) throw InvalidAnimal("empty animal");
    a.edges_ = std::move(edges);
    if (!a.connected()) throw InvalidAnimal("bond animal is not connected");
    if (kind == Kind::tree && a.vertices().size() != a.edges_.size() + 1)
      throw InvalidAnimal("lattice tree contains a cycle");
    return a;
  }

  int dim() const { return d_; }
  Kind kind() const { return kind_; }
  /// Vertices for site animals, edges otherwise.
  int size() const { return static_cast<int>(uses_edges(kind_) ? edges_.size() : cells_.size()); }

  const std::vector<Vertex>& cells() const { return cells_; }
  const std::vector<UndirectedEdge>& edges() const { return edges_; }

  /// Sorted distinct vertices spanned by the animal.
  std::vector<Vertex> vertices() const {
    if (!uses_edges(kind_)) return cells_;
    std::vector<Vertex> vs;
    vs.reserve(2 * edges_.size());
    for (const auto& e : edges_) {
      vs.push_back(e.lower);
      vs.push_back(e.upper());
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  Vertex lexmin_vertex() const {
    // Both layouts are sorted, and the lexmin vertex of a bond animal is
    // always the lower endpoint of its first edge.
    return uses_edges(kind_) ? edges_.front().lower : cells_.front();
  }

  LatticeAnimal translated(const Vertex& shift) const {
    LatticeAnimal a = *this;
    for (auto& c : a.cells_) c = c + shift;
    for (auto& e : a.edges_) e.lower = e.lower + shift;
    return a;
  }

  LatticeAnimal lexmin_rooted() const { return translated(Vertex::origin(d_) - lexmin_vertex()); }
  bool is_lexmin_rooted() const { return lexmin_vertex() == Vertex::origin(d_); }
  bool contains_origin() const {
    const auto vs = vertices();
    return std::binary_search(vs.begin(), vs.end(), Vertex::origin(d_));
  }

  bool contains_cell(const Vertex& v) const { return std::binary_search(cells_.begin(), cells_.end(), v); }
  bool contains_edge(const UndirectedEdge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

  friend bool operator==(const LatticeAnimal& a, const LatticeAnimal& b) {
    return a.d_ == b.d_ && a.cells_ == b.cells_ && a.edges_ == b.edges_;
  }

 private:
  LatticeAnimal(int d, Kind k) : d_(d), kind_(k) {
    if (d < 1) throw InvalidAnimal("dimension must be at least 1");
  }

  bool connected() const {
    const auto vs = vertices();
    std::set<Vertex> seen{vs.front()};
    std::vector<Vertex> stack{vs.front()};
    while (!stack.empty()) {
      Vertex v = std::move(stack.back());
      stack.pop_back();
      for (int r = 0; r < 2 * d_; ++r) {
        Vertex w = v.shifted(rank_axis(r), rank_sign(r));
        const bool linked = uses_edges(kind_) ? contains_edge(UndirectedEdge::between(v, w))
                                              : contains_cell(w);
        if (linked && seen.insert(w).second) stack.push_back(std::move(w));
      }
    }
    return seen.size() == vs.size();
  }

  int d_;
  Kind kind_;
  std::vector<Vertex> cells_;
  std::vector<UndirectedEdge> edges_;
};

struct BoundaryStats {
  int size_n = 0;
  long vertex_boundary = 0;  // |∂_V|
  long edge_boundary = 0;    // |∂_E|
};

/// Exact vertex and edge boundary. For site animals the spanned subgraph is
/// induced, so ∂_E is the set of edges leaving the cell set.
inline BoundaryStats boundary_stats(const LatticeAnimal& x) {
  const int d = x.dim();
  const auto vs = x.vertices();
  auto in_vertices = [&](const Vertex& v) { return std::binary_search(vs.begin(), vs.end(), v); };

  std::set<Vertex> outer;
  std::set<UndirectedEdge> leaving;
  for (const auto& v : vs) {
    for (int r = 0; r < 2 * d; ++r) {
      Vertex w = v.shifted(rank_axis(r), rank_sign(r));
      auto e = UndirectedEdge::between(v, w);
      const bool in_animal = uses_edges(x.kind()) ? x.contains_edge(e) : in_vertices(w);
      if (!in_animal) leaving.insert(std::move(e));
      if (!in_vertices(w)) outer.insert(std::move(w));
    }
  }
  return {x.size(), static_cast<long>(outer.size()), static_cast<long>(leaving.size())};
}

}  // namespace lattice
