#pragma once

// Bernoulli site/bond percolation on the box {0..L-1}^d with open boundary.
//
// Randomness is counter-based: the uniform attached to cell (or edge) i in
// trial t is a pure function of (seed, t, i). A cell is open iff its uniform
// is below p, so all p share one realisation (monotone coupling), and trials
// can be split across threads without changing any result.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lattice/bounds.hpp"
#include "lattice/enumerate.hpp"

namespace lattice::perc {

using bounds::Flavor;

inline constexpr std::int64_t kMaxBoxCells = std::int64_t{1} << 26;

struct PercConfig {
  int d = 2;
  int L = 16;
  Flavor flavor = Flavor::site;
  double p = 0.5;
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  int threads = 1;

  std::int64_t cells() const {
    std::int64_t v = 1;
    for (int i = 0; i < d; ++i) {
      v *= L;
      if (v > kMaxBoxCells) return kMaxBoxCells + 1;
    }
    return v;
  }

  void validate() const {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    if (L < 2) throw std::invalid_argument("L must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    if (cells() > kMaxBoxCells)
      throw ResourceLimitExceeded("box L^d = " + std::to_string(L) + "^" + std::to_string(d) + " exceeds 2^26 cells");
  }
};

enum class EstimateKind { crossing_probability, threshold, tail_mass };

inline std::string_view to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::crossing_probability: return "crossing-probability";
    case EstimateKind::threshold: return "threshold";
    case EstimateKind::tail_mass: return "tail-mass";
  }
  return "?";
}

struct PercEstimate {
  EstimateKind quantity = EstimateKind::crossing_probability;
  double value = 0.0;
  double half_width = 0.0;  // 95% normal approximation
  PercConfig config;
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  std::int64_t tail_size = 0;  // tail_mass only
};

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform in [0, 1) keyed by (seed, trial, index).
inline double keyed_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
  const std::uint64_t h = mix64(seed ^ mix64(trial ^ mix64(index)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

class UnionFind {
 public:
  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0u);
    size_.assign(n, 1);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }
  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

namespace detail {

struct Box {
  int d, L;
  std::vector<std::int64_t> stride;  // axis 0 most significant
  std::int64_t cells;

  explicit Box(const PercConfig& c) : d(c.d), L(c.L), stride(static_cast<std::size_t>(c.d)), cells(c.cells()) {
    std::int64_t s = 1;
    for (int a = d - 1; a >= 0; --a) {
      stride[static_cast<std::size_t>(a)] = s;
      s *= L;
    }
  }
  int coord(std::int64_t i, int axis) const {
    return static_cast<int>((i / stride[static_cast<std::size_t>(axis)]) % L);
  }
};

inline bool crosses(const PercConfig& c, const Box& box, std::uint64_t trial, UnionFind& uf,
                    std::vector<std::uint8_t>& open) {
  const auto n = static_cast<std::size_t>(box.cells);
  const auto src = static_cast<std::uint32_t>(n), dst = static_cast<std::uint32_t>(n + 1);
  uf.reset(n + 2);
  const bool site = c.flavor == Flavor::site;
  if (site) {
    open.resize(n);
    for (std::size_t i = 0; i < n; ++i) open[i] = keyed_uniform(c.seed, trial, i) < c.p;
  }
  for (std::int64_t i = 0; i < box.cells; ++i) {
    if (site && !open[static_cast<std::size_t>(i)]) continue;
    const auto ui = static_cast<std::uint32_t>(i);
    const int x0 = box.coord(i, 0);
    if (x0 == 0) uf.unite(ui, src);
    if (x0 == box.L - 1) uf.unite(ui, dst);
    for (int a = 0; a < box.d; ++a) {
      if (box.coord(i, a) == box.L - 1) continue;
      const std::int64_t j = i + box.stride[static_cast<std::size_t>(a)];
      const bool link = site ? open[static_cast<std::size_t>(j)] != 0
                             : keyed_uniform(c.seed, trial, static_cast<std::uint64_t>(i * box.d + a)) < c.p;
      if (link) uf.unite(ui, static_cast<std::uint32_t>(j));
    }
  }
  return uf.same(src, dst);
}

// Splits [0, trials) into contiguous blocks; results are exact integer sums.
template <class PerTrial>
std::int64_t count_successes(std::int64_t trials, int threads, PerTrial make_worker) {
  threads = static_cast<int>(std::clamp<std::int64_t>(threads, 1, trials));
  std::vector<std::int64_t> hits(static_cast<std::size_t>(threads), 0);
  auto run = [&](int t) {
    const std::int64_t lo = trials * t / threads, hi = trials * (t + 1) / threads;
    auto worker = make_worker();
    for (std::int64_t k = lo; k < hi; ++k) hits[static_cast<std::size_t>(t)] += worker(static_cast<std::uint64_t>(k));
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(run, t);
  }
  return std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
}

inline double binomial_half_width(double v, std::int64_t trials) {
  return 1.96 * std::sqrt(v * (1.0 - v) / static_cast<double>(trials));
}

}  // namespace detail

/// Fraction of trials with an open path from face x_1 = 0 to face x_1 = L-1.
inline PercEstimate crossing_probability(const PercConfig& cfg) {
  cfg.validate();
  const detail::Box box(cfg);
  const auto hits = detail::count_successes(cfg.trials, cfg.threads, [&] {
    return [&, uf = UnionFind{}, open = std::vector<std::uint8_t>{}](std::uint64_t trial) mutable {
      return detail::crosses(cfg, box, trial, uf, open) ? 1 : 0;
    };
  });
  PercEstimate e;
  e.quantity = EstimateKind::crossing_probability;
  e.config = cfg;
  e.successes = hits;
  e.trials = cfg.trials;
  e.value = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  e.half_width = detail::binomial_half_width(e.value, cfg.trials);
  return e;
}

struct ThresholdOptions {
  int steps = 12;
  double slope_probe = 0.02;  // offset for the finite-difference slope of the crossing curve
};

/// Bisection on p for crossing probability 1/2, `steps` halvings of [0, 1],
/// each evaluated with the configured trial count and the same seed. The
/// half-width adds the final bracket half-width to the binomial noise of a
/// crossing estimate converted to p units by the local slope.
inline PercEstimate estimate_threshold(PercConfig cfg, const ThresholdOptions& opt = {}) {
  cfg.validate();
  double lo = 0.0, hi = 1.0;
  for (int s = 0; s < opt.steps; ++s) {
    cfg.p = 0.5 * (lo + hi);
    (crossing_probability(cfg).value < 0.5 ? lo : hi) = cfg.p;
  }
  const double centre = 0.5 * (lo + hi);

  auto crossing_at = [&](double p) {
    PercConfig c = cfg;
    c.p = std::clamp(p, 0.0, 1.0);
    return crossing_probability(c).value;
  };
  const double slope = (crossing_at(centre + opt.slope_probe) - crossing_at(centre - opt.slope_probe)) /
                       (2.0 * opt.slope_probe);
  const double noise_p = slope > 0.0 ? detail::binomial_half_width(0.5, cfg.trials) / slope : opt.slope_probe;

  PercEstimate e;
  e.quantity = EstimateKind::threshold;
  cfg.p = centre;
  e.config = cfg;
  e.trials = cfg.trials;
  e.value = centre;
  e.half_width = 0.5 * (hi - lo) + noise_p;
  return e;
}

/// P(|C_o| >= n) for the cluster of the box centre, by lazy breadth-first
/// growth stopped at n vertices.
inline PercEstimate cluster_tail(const PercConfig& cfg, std::int64_t n) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("tail size must be at least 1");
  const detail::Box box(cfg);
  std::int64_t centre = 0;
  for (int a = 0; a < cfg.d; ++a) centre += (cfg.L / 2) * box.stride[static_cast<std::size_t>(a)];
  const bool site = cfg.flavor == Flavor::site;

  const auto hits = detail::count_successes(cfg.trials, cfg.threads, [&] {
    return [&, stamp = std::vector<std::uint32_t>(static_cast<std::size_t>(box.cells), 0),
            queue = std::vector<std::int64_t>{}](std::uint64_t trial) mutable -> int {
      const auto mark = static_cast<std::uint32_t>(trial + 1);  // distinct per trial within a worker
      auto open_site = [&](std::int64_t v) { return keyed_uniform(cfg.seed, trial, static_cast<std::uint64_t>(v)) < cfg.p; };
      auto open_edge = [&](std::int64_t lower, int a) {
        return keyed_uniform(cfg.seed, trial, static_cast<std::uint64_t>(lower * cfg.d + a)) < cfg.p;
      };
      if (site && !open_site(centre)) return 0;
      queue.assign(1, centre);
      stamp[static_cast<std::size_t>(centre)] = mark;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        if (static_cast<std::int64_t>(queue.size()) >= n) return 1;
        const std::int64_t v = queue[head];
        for (int a = 0; a < cfg.d; ++a) {
          const std::int64_t s = box.stride[static_cast<std::size_t>(a)];
          const int x = box.coord(v, a);
          for (int dir : {+1, -1}) {
            if ((dir > 0 && x == cfg.L - 1) || (dir < 0 && x == 0)) continue;
            const std::int64_t w = v + dir * s;
            if (stamp[static_cast<std::size_t>(w)] == mark) continue;
            const bool link = site ? open_site(w) : open_edge(dir > 0 ? v : w, a);
            if (!link) continue;
            stamp[static_cast<std::size_t>(w)] = mark;
            queue.push_back(w);
          }
        }
      }
      return static_cast<std::int64_t>(queue.size()) >= n ? 1 : 0;
    };
  });
  PercEstimate e;
  e.quantity = EstimateKind::tail_mass;
  e.config = cfg;
  e.successes = hits;
  e.trials = cfg.trials;
  e.tail_size = n;
  e.value = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  e.half_width = detail::binomial_half_width(e.value, cfg.trials);
  return e;
}

}  // namespace lattice::perc
