#pragma once

// Animals of one size binned by boundary-to-size ratio: the finite-n
// counterpart of the ratio-stratified growth rates.

#include <cmath>
#include <map>
#include <stdexcept>

#include "lattice/animal.hpp"
#include "lattice/bigint.hpp"
#include "lattice/enumerate.hpp"
#include "lattice/interface2d.hpp"

namespace lattice {

struct RatioHistogram {
  int d = 0;
  int n = 0;
  Kind kind = Kind::site;
  double epsilon = 0.05;
  std::map<long, BigInt> bins;      // floor(ratio / epsilon) -> count
  std::map<long, BigInt> exact;     // boundary size -> count (ratio = boundary / n)
  bool partial = false;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [k, c] : bins) t += c;
    return t;
  }
  double bin_lower_edge(long index) const { return static_cast<double>(index) * epsilon; }
};

/// The boundary a histogram uses: |∂_V| for site animals, |∂P| for 2D
/// interfaces, |∂_E| otherwise.
inline long histogram_boundary(const LatticeAnimal& a, Kind kind) {
  if (kind == Kind::interface2d) return static_cast<long>(interface_boundary_2d(a).size());
  const auto s = boundary_stats(a);
  return kind == Kind::site ? s.vertex_boundary : s.edge_boundary;
}

/// Bin index floor(ratio / epsilon). Ratios that land on a bin edge up to
/// rounding error are snapped onto it, so they open the upper bin.
inline long ratio_bin(long boundary, int n, double epsilon) {
  const double q = static_cast<double>(boundary) / (static_cast<double>(n) * epsilon);
  const double nearest = std::round(q);
  return static_cast<long>(std::abs(q - nearest) < 1e-9 * std::max(1.0, nearest) ? nearest : std::floor(q));
}

/// Lexmin-rooted animals of size n by boundary ratio.
inline RatioHistogram ratio_histogram(int d, int n, Kind kind, double epsilon = 0.05,
                                      const EnumerationOptions& opt = {}) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  struct Collect {
    int n;
    Kind kind;
    std::map<long, std::uint64_t> by_boundary;
    void operator()(const AnimalView& v) {
      if (v.size() != n) return;
      if (kind == Kind::interface2d && !is_interface_2d(v.plane_edges())) return;
      ++by_boundary[histogram_boundary(v.to_animal(), kind)];
    }
    void merge(const Collect& o) {
      for (const auto& [b, c] : o.by_boundary) by_boundary[b] += c;
    }
  } collect{n, kind, {}};
  const auto status = for_each_animal(d, kind, n, collect, opt);

  RatioHistogram h;
  h.d = d;
  h.n = n;
  h.kind = kind;
  h.epsilon = epsilon;
  h.partial = status.partial;
  for (const auto& [b, c] : collect.by_boundary) {
    h.exact[b] += c;
    h.bins[ratio_bin(b, n, epsilon)] += c;
  }
  return h;
}

}  // namespace lattice
