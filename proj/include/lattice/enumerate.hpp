#pragma once

// Exact enumeration of fixed lattice animals by Redelmeier's untried-set
// method. Every translation class is visited exactly once, represented by
// its copy whose lexicographically smallest cell sits at the origin.
//
// Site animals search over vertices. Bond animals, trees and 2D interfaces
// search over edges, with two edges adjacent when they share an endpoint;
// edge order is (lower endpoint lex, axis), which makes the lexmin vertex of
// the animal the lower endpoint of its smallest edge.

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <limits>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lattice/animal.hpp"
#include "lattice/bigint.hpp"
#include "lattice/interface2d.hpp"

namespace lattice {

struct EnumerationOptions {
  int threads = 1;
  /// Upper limit on visited search nodes (one per animal); 0 = unlimited.
  std::uint64_t node_budget = 0;
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Cells of the search: vertex indices (site) or edge ids (edge kinds) in a
/// box [-R, R]^d, R = n_max + 1, indexed mixed-radix with axis 0 most
/// significant so index order coincides with lexicographic order.
class SearchSpace {
 public:
  static constexpr std::int64_t kMaxCells = std::int64_t{1} << 27;

  SearchSpace(int d, Kind kind, int n_max) : d_(d), kind_(kind), n_max_(n_max) {
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (kind == Kind::interface2d && d != 2) throw std::invalid_argument("interface2d requires d = 2");
    radius_ = n_max + 1;
    width_ = 2 * radius_ + 1;
    stride_.assign(static_cast<std::size_t>(d), 1);
    std::int64_t vol = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride_[static_cast<std::size_t>(a)] = vol;
      vol *= width_;
      if (vol * d > kMaxCells)
        throw ResourceLimitExceeded("search box for d=" + std::to_string(d) + ", n=" + std::to_string(n_max) +
                                    " exceeds the cell cap");
    }
    volume_ = vol;
    origin_ = 0;
    for (int a = 0; a < d; ++a) origin_ += radius_ * stride_[static_cast<std::size_t>(a)];
  }

  int dim() const { return d_; }
  Kind kind() const { return kind_; }
  int n_max() const { return n_max_; }
  bool edge_cells() const { return uses_edges(kind_); }
  std::int64_t vertex_count() const { return volume_; }
  std::int64_t cell_count() const { return edge_cells() ? volume_ * d_ : volume_; }
  std::int64_t origin_index() const { return origin_; }
  std::int64_t stride(int axis) const { return stride_[static_cast<std::size_t>(axis)]; }

  Coord coord(std::int64_t vertex, int axis) const {
    return static_cast<Coord>((vertex / stride(axis)) % width_ - radius_);
  }
  bool on_border(std::int64_t vertex) const {
    for (int a = 0; a < d_; ++a) {
      const Coord c = coord(vertex, a);
      if (c == -radius_ || c == radius_) return true;
    }
    return false;
  }

  Vertex vertex_of(std::int64_t v) const {
    Vertex out(d_);
    for (int a = 0; a < d_; ++a) out[a] = coord(v, a);
    return out;
  }
  std::int64_t edge_lower(std::int64_t e) const { return e / d_; }
  int edge_axis(std::int64_t e) const { return static_cast<int>(e % d_); }
  std::int64_t edge_upper(std::int64_t e) const { return edge_lower(e) + stride(edge_axis(e)); }
  UndirectedEdge edge_of(std::int64_t e) const { return {vertex_of(edge_lower(e)), edge_axis(e)}; }

  /// Roots: the origin vertex, or the d edges whose lower endpoint is the origin.
  std::vector<std::int64_t> roots() const {
    std::vector<std::int64_t> r;
    if (!edge_cells()) return {origin_};
    for (int a = 0; a < d_; ++a) r.push_back(origin_ * d_ + a);
    return r;
  }

  /// Cells that may never join an animal grown from `root`.
  bool blocked(std::int64_t cell, std::int64_t root) const {
    if (cell < root) return true;
    if (!edge_cells()) return on_border(cell);
    return on_border(edge_lower(cell)) || on_border(edge_upper(cell));
  }

  template <class F>
  void for_each_neighbor(std::int64_t cell, F&& f) const {
    if (!edge_cells()) {
      for (int a = 0; a < d_; ++a) {
        f(cell + stride(a));
        f(cell - stride(a));
      }
      return;
    }
    for (const std::int64_t w : {edge_lower(cell), edge_upper(cell)}) {
      for (int b = 0; b < d_; ++b) {
        const std::int64_t out = w * d_ + b;
        const std::int64_t in = (w - stride(b)) * d_ + b;
        if (out != cell) f(out);
        if (in != cell) f(in);
      }
    }
  }

 private:
  int d_;
  Kind kind_;
  int n_max_;
  int radius_ = 0;
  std::int64_t width_ = 0;
  std::vector<std::int64_t> stride_;
  std::int64_t volume_ = 0;
  std::int64_t origin_ = 0;
};

}  // namespace detail

/// What a visitor sees: the current animal as search-space cell ids.
struct AnimalView {
  const detail::SearchSpace* space = nullptr;
  std::span<const std::int64_t> cells;
  int vertex_count = 0;  // distinct vertices spanned

  int size() const { return static_cast<int>(cells.size()); }
  int dim() const { return space->dim(); }

  LatticeAnimal to_animal() const {
    if (!space->edge_cells()) {
      std::vector<Vertex> vs;
      vs.reserve(cells.size());
      for (auto c : cells) vs.push_back(space->vertex_of(c));
      return LatticeAnimal::site(dim(), std::move(vs));
    }
    std::vector<UndirectedEdge> es;
    es.reserve(cells.size());
    for (auto c : cells) es.push_back(space->edge_of(c));
    const Kind k = space->kind() == Kind::interface2d ? Kind::bond : space->kind();
    return LatticeAnimal::bond(dim(), std::move(es), k);
  }

  std::vector<PlaneEdge> plane_edges() const {
    std::vector<PlaneEdge> out;
    out.reserve(cells.size());
    for (auto c : cells) {
      const auto v = space->edge_lower(c);
      out.push_back({space->coord(v, 0), space->coord(v, 1), space->edge_axis(c)});
    }
    return out;
  }
};

namespace detail {

struct SearchState {
  std::vector<std::int64_t> cells;
  std::vector<std::int64_t> untried;
  std::vector<std::uint8_t> marked;
  std::vector<std::uint16_t> vertex_use;
  int distinct_vertices = 0;
  std::int64_t root = 0;
};

struct SharedBudget {
  std::uint64_t limit = 0;
  std::atomic<std::uint64_t> used{0};
  std::atomic<bool> exhausted{false};
};

template <class Visitor>
class Searcher {
 public:
  Searcher(const SearchSpace& space, Visitor& visit, SharedBudget& budget, int split_at,
           std::vector<SearchState>* tasks)
      : space_(space), visit_(visit), budget_(budget), split_at_(split_at), tasks_(tasks) {}

  ~Searcher() { flush(); }

  void run_root(std::int64_t root) {
    st_.root = root;
    st_.marked.assign(static_cast<std::size_t>(space_.cell_count()), 0);
    for (std::int64_t c = 0; c < space_.cell_count(); ++c)
      if (space_.blocked(c, root)) st_.marked[static_cast<std::size_t>(c)] = 1;
    if (space_.edge_cells()) st_.vertex_use.assign(static_cast<std::size_t>(space_.vertex_count()), 0);
    st_.cells.clear();
    st_.distinct_vertices = 0;
    st_.marked[static_cast<std::size_t>(root)] = 1;
    std::vector<std::int64_t> untried{root};
    recurse(untried);
  }

  void run_task(SearchState task) {
    st_ = std::move(task);
    std::vector<std::int64_t> untried = std::move(st_.untried);
    recurse(untried);
  }

 private:
  void recurse(std::vector<std::int64_t>& untried) {
    const bool trees = space_.kind() == Kind::tree;
    while (!untried.empty()) {
      if (budget_.exhausted.load(std::memory_order_relaxed)) return;
      const std::int64_t c = untried.back();
      untried.pop_back();
      if (trees && both_endpoints_used(c)) continue;  // every superset has a cycle

      add(c);
      visit_(AnimalView{&space_, st_.cells, space_.edge_cells() ? st_.distinct_vertices
                                                                : static_cast<int>(st_.cells.size())});
      charge();
      const int size = static_cast<int>(st_.cells.size());
      if (size < space_.n_max()) {
        std::vector<std::int64_t> next = untried;
        const std::size_t fresh_from = next.size();
        space_.for_each_neighbor(c, [&](std::int64_t nb) {
          auto& m = st_.marked[static_cast<std::size_t>(nb)];
          if (!m) {
            m = 1;
            next.push_back(nb);
          }
        });
        const std::vector<std::int64_t> fresh(next.begin() + static_cast<std::ptrdiff_t>(fresh_from), next.end());
        if (tasks_ && size == split_at_) {
          SearchState s = st_;
          s.untried = std::move(next);
          tasks_->push_back(std::move(s));
        } else {
          recurse(next);
        }
        for (auto nb : fresh) st_.marked[static_cast<std::size_t>(nb)] = 0;
      }
      remove(c);
    }
  }

  bool both_endpoints_used(std::int64_t e) const {
    return st_.vertex_use[static_cast<std::size_t>(space_.edge_lower(e))] > 0 &&
           st_.vertex_use[static_cast<std::size_t>(space_.edge_upper(e))] > 0;
  }

  void add(std::int64_t c) {
    st_.cells.push_back(c);
    if (!space_.edge_cells()) return;
    for (auto v : {space_.edge_lower(c), space_.edge_upper(c)})
      if (st_.vertex_use[static_cast<std::size_t>(v)]++ == 0) ++st_.distinct_vertices;
  }
  void remove(std::int64_t c) {
    st_.cells.pop_back();
    if (!space_.edge_cells()) return;
    for (auto v : {space_.edge_lower(c), space_.edge_upper(c)})
      if (--st_.vertex_use[static_cast<std::size_t>(v)] == 0) --st_.distinct_vertices;
  }

  void charge() {
    if (++local_nodes_ >= 1024) flush();
  }
  void flush() {
    if (local_nodes_ == 0) return;
    const auto total = budget_.used.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
    local_nodes_ = 0;
    if (budget_.limit != 0 && total > budget_.limit) budget_.exhausted.store(true, std::memory_order_relaxed);
  }

  const SearchSpace& space_;
  Visitor& visit_;
  SharedBudget& budget_;
  int split_at_;
  std::vector<SearchState>* tasks_;
  SearchState st_;
  std::uint64_t local_nodes_ = 0;
};

}  // namespace detail

struct SearchStatus {
  bool partial = false;
  std::uint64_t nodes = 0;
};

/// Visits every lexmin-rooted animal of size 1..n_max exactly once.
///
/// With threads > 1 the search is cut at a fixed depth into independent
/// subtrees. Each subtree gets a copy of the visitor as it was before the
/// search started, and the copies are merged back in a fixed order with
/// `visitor.merge(copy)`, so the result does not depend on the thread count.
/// Visitors without merge() always run single-threaded.
template <class V>
concept MergeableVisitor = std::copyable<V> && requires(V v, const V& other) { v.merge(other); };

template <class Visitor>
SearchStatus for_each_animal(int d, Kind kind, int n_max, Visitor& visitor, const EnumerationOptions& opt = {}) {
  const detail::SearchSpace space(d, kind, n_max);
  detail::SharedBudget budget;
  budget.limit = opt.node_budget;

  const int split_at = std::min(4, n_max - 2);
  const bool parallel = MergeableVisitor<Visitor> && opt.threads > 1 && split_at >= 1;
  if (!parallel) {
    detail::Searcher<Visitor> s(space, visitor, budget, 0, nullptr);
    for (auto root : space.roots()) s.run_root(root);
  } else if constexpr (MergeableVisitor<Visitor>) {
    const Visitor prototype = visitor;
    std::vector<detail::SearchState> tasks;
    {
      detail::Searcher<Visitor> s(space, visitor, budget, split_at, &tasks);
      for (auto root : space.roots()) s.run_root(root);
    }
    std::vector<Visitor> partials(tasks.size(), prototype);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
        detail::Searcher<Visitor> s(space, partials[i], budget, 0, nullptr);
        s.run_task(std::move(tasks[i]));
      }
    };
    std::vector<std::jthread> pool;
    const int n_threads = std::min<int>(opt.threads, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    pool.clear();
    for (auto& p : partials) visitor.merge(p);
  }
  return {budget.exhausted.load(), budget.used.load()};
}

/// Per-size counts. `classes[n]` counts translation classes; `rooted[n]`
/// counts copies containing the origin, i.e. the sum of vertex counts.
struct CountingVisitor {
  explicit CountingVisitor(int n_max = 0)
      : classes(static_cast<std::size_t>(n_max) + 1, 0), rooted(static_cast<std::size_t>(n_max) + 1, 0) {}

  void operator()(const AnimalView& a) {
    const auto n = static_cast<std::size_t>(a.size());
    if (a.space->kind() == Kind::interface2d) {
      const auto pe = a.plane_edges();
      if (!is_interface_2d(pe)) return;
    }
    if (classes[n] == std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("count overflow");
    ++classes[n];
    rooted[n] += static_cast<std::uint64_t>(a.vertex_count);
  }
  void merge(const CountingVisitor& o) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      classes[i] += o.classes[i];
      rooted[i] += o.rooted[i];
    }
  }

  std::vector<std::uint64_t> classes;
  std::vector<std::uint64_t> rooted;
};

struct CountResult {
  int d = 0;
  Kind kind = Kind::site;
  Rooting rooting = Rooting::lexmin;
  int n_max = 0;
  std::vector<BigInt> counts;  // index n = 1..n_max; counts[0] is unused and 0
  bool partial = false;        // node budget ran out: counts are lower bounds
  std::uint64_t nodes = 0;
  std::uint64_t node_budget = 0;

  const BigInt& at(int n) const { return counts.at(static_cast<std::size_t>(n)); }
};

/// Exact counts for sizes 1..n_max. Size is the number of vertices for site
/// animals and the number of edges otherwise.
inline CountResult count_animals(int d, Kind kind, int n_max, Rooting rooting, const EnumerationOptions& opt = {}) {
  CountingVisitor v(n_max);
  const auto status = for_each_animal(d, kind, n_max, v, opt);
  CountResult r{d, kind, rooting, n_max, {}, status.partial, status.nodes, opt.node_budget};
  r.counts.resize(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t n = 1; n < r.counts.size(); ++n)
    r.counts[n] = rooting == Rooting::lexmin ? BigInt(v.classes[n]) : BigInt(v.rooted[n]);
  return r;
}

inline CountResult count_site_animals(int d, int n_max, Rooting r, const EnumerationOptions& o = {}) {
  return count_animals(d, Kind::site, n_max, r, o);
}
inline CountResult count_bond_animals(int d, int n_max, Rooting r, const EnumerationOptions& o = {}) {
  return count_animals(d, Kind::bond, n_max, r, o);
}
inline CountResult count_lattice_trees(int d, int n_max, Rooting r, const EnumerationOptions& o = {}) {
  return count_animals(d, Kind::tree, n_max, r, o);
}
inline CountResult count_interfaces_2d(int n_max, Rooting r, const EnumerationOptions& o = {}) {
  return count_animals(2, Kind::interface2d, n_max, r, o);
}

}  // namespace lattice
