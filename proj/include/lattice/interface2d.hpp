#pragma once

// Interfaces in Z^2: connected edge sets every edge of which borders the
// unbounded face of the plane embedding.
//
// The plane is tiled by unit cells; cell (x, y) is the square
// [x, x+1] x [y, y+1]. Two side-adjacent cells communicate unless the lattice
// edge they share belongs to P. The unbounded face is the component of the
// cell grid that contains a padding ring around P's bounding box.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "lattice/animal.hpp"

namespace lattice {

/// Plain (x, y, axis) representation; the edge runs from (x, y) to (x, y) + e_axis.
struct PlaneEdge {
  std::int32_t x = 0, y = 0;
  int axis = 0;
};

namespace detail {

class ExteriorMap {
 public:
  explicit ExteriorMap(std::span<const PlaneEdge> edges) {
    std::int32_t min_x = std::numeric_limits<std::int32_t>::max(), min_y = min_x;
    std::int32_t max_x = std::numeric_limits<std::int32_t>::min(), max_y = max_x;
    for (const auto& e : edges) {
      min_x = std::min(min_x, e.x);
      min_y = std::min(min_y, e.y);
      max_x = std::max(max_x, e.x + (e.axis == 0));
      max_y = std::max(max_y, e.y + (e.axis == 1));
    }
    // Cells touching any vertex of P lie in [min-1, max]; one more ring of padding.
    x0_ = min_x - 2;
    y0_ = min_y - 2;
    w_ = (max_x + 1) - x0_ + 1;
    h_ = (max_y + 1) - y0_ + 1;
    // wall_[.][0]: horizontal edge with lower endpoint at the vertex; [1]: vertical.
    walls_.assign(static_cast<std::size_t>((w_ + 1) * (h_ + 1)), {false, false});
    for (const auto& e : edges) walls_[vidx(e.x, e.y)][static_cast<std::size_t>(e.axis)] = true;

    exterior_.assign(static_cast<std::size_t>(w_ * h_), 0);
    std::vector<int> stack;
    for (int cy = 0; cy < h_; ++cy)
      for (int cx = 0; cx < w_; ++cx)
        if (cx == 0 || cy == 0 || cx == w_ - 1 || cy == h_ - 1) {
          exterior_[static_cast<std::size_t>(cy * w_ + cx)] = 1;
          stack.push_back(cy * w_ + cx);
        }
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int cx = c % w_, cy = c / w_;
      const std::int32_t x = x0_ + cx, y = y0_ + cy;
      // Shared edges: right neighbour across vertical edge at (x+1, y); left
      // across (x, y); up across horizontal edge at (x, y+1); down across (x, y).
      try_step(stack, cx + 1, cy, wall(x + 1, y, 1));
      try_step(stack, cx - 1, cy, wall(x, y, 1));
      try_step(stack, cx, cy + 1, wall(x, y + 1, 0));
      try_step(stack, cx, cy - 1, wall(x, y, 0));
    }
  }

  bool cell_exterior(std::int32_t x, std::int32_t y) const {
    const int cx = x - x0_, cy = y - y0_;
    if (cx < 0 || cy < 0 || cx >= w_ || cy >= h_) return true;
    return exterior_[static_cast<std::size_t>(cy * w_ + cx)] != 0;
  }

  /// The two unit cells on either side of an edge.
  static std::array<std::array<std::int32_t, 2>, 2> sides(const PlaneEdge& e) {
    if (e.axis == 0) return {{{e.x, e.y - 1}, {e.x, e.y}}};
    return {{{e.x - 1, e.y}, {e.x, e.y}}};
  }

  bool edge_touches_exterior(const PlaneEdge& e) const {
    const auto s = sides(e);
    return cell_exterior(s[0][0], s[0][1]) || cell_exterior(s[1][0], s[1][1]);
  }

 private:
  std::size_t vidx(std::int32_t x, std::int32_t y) const {
    return static_cast<std::size_t>((y - y0_) * (w_ + 1) + (x - x0_));
  }
  bool wall(std::int32_t x, std::int32_t y, int axis) const {
    const int vx = x - x0_, vy = y - y0_;
    if (vx < 0 || vy < 0 || vx > w_ || vy > h_) return false;
    return walls_[vidx(x, y)][static_cast<std::size_t>(axis)];
  }
  void try_step(std::vector<int>& stack, int cx, int cy, bool blocked) {
    if (blocked || cx < 0 || cy < 0 || cx >= w_ || cy >= h_) return;
    auto& flag = exterior_[static_cast<std::size_t>(cy * w_ + cx)];
    if (!flag) {
      flag = 1;
      stack.push_back(cy * w_ + cx);
    }
  }

  std::int32_t x0_ = 0, y0_ = 0;
  int w_ = 0, h_ = 0;
  std::vector<std::array<bool, 2>> walls_;
  std::vector<std::uint8_t> exterior_;
};

inline std::vector<PlaneEdge> plane_edges(const LatticeAnimal& p) {
  if (p.dim() != 2) throw std::invalid_argument("2D interfaces require d = 2, got d = " + std::to_string(p.dim()));
  if (!uses_edges(p.kind())) throw std::invalid_argument("2D interfaces are edge sets");
  std::vector<PlaneEdge> out;
  out.reserve(p.edges().size());
  for (const auto& e : p.edges()) out.push_back({e.lower[0], e.lower[1], e.axis});
  return out;
}

}  // namespace detail

inline bool is_interface_2d(std::span<const PlaneEdge> edges) {
  const detail::ExteriorMap ext(edges);
  return std::all_of(edges.begin(), edges.end(),
                     [&](const PlaneEdge& e) { return ext.edge_touches_exterior(e); });
}

inline bool is_interface_2d(const LatticeAnimal& p) {
  const auto edges = detail::plane_edges(p);
  return is_interface_2d(edges);
}

/// ∂P: the edges of ∂_E P that border the unbounded face.
inline std::vector<UndirectedEdge> interface_boundary_2d(const LatticeAnimal& p) {
  const auto edges = detail::plane_edges(p);
  const detail::ExteriorMap ext(edges);
  if (!std::all_of(edges.begin(), edges.end(), [&](const PlaneEdge& e) { return ext.edge_touches_exterior(e); }))
    throw std::invalid_argument("interface_boundary_2d: not an interface");

  std::vector<UndirectedEdge> out;
  for (const auto& v : p.vertices()) {
    for (int r = 0; r < 4; ++r) {
      auto e = UndirectedEdge::between(v, v.shifted(rank_axis(r), rank_sign(r)));
      if (p.contains_edge(e)) continue;
      if (ext.edge_touches_exterior({e.lower[0], e.lower[1], e.axis})) out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lattice
