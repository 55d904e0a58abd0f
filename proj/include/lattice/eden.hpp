#pragma once

// Eden's canonical spanning tree and binary code for site animals, the
// turn inequality, and the binomial upper bound on animals with few turns.
//
// Schedule: u_1 is the lexmin vertex. Its d possible neighbours (the +e_i
// directions, since every -e_i neighbour is lex-smaller) get one bit each.
// Afterwards vertices are processed in label order u_2, u_3, ...; each gets
// 2d-1 bits, one per direction except the one back to its tree parent,
// ranked by directed_edge_rank with the parent direction removed. A bit is 1
// iff the neighbour is in the animal and not yet revealed; revealed
// neighbours take the next free labels in bit order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lattice/animal.hpp"
#include "lattice/bigint.hpp"
#include "lattice/enumerate.hpp"

namespace lattice {

inline std::int64_t eden_code_length(int d, int n) {
  return static_cast<std::int64_t>(2 * d - 1) * n - d + 1;
}

struct EdenCode {
  int d = 0;
  int n = 0;
  std::vector<std::uint8_t> bits;

  int ones_count() const { return static_cast<int>(std::count(bits.begin(), bits.end(), 1)); }

  std::string str() const {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s += b ? '1' : '0';
    return s;
  }

  /// Parses a 0/1 string. The length must be (2d-1)n - d + 1 for some n >= 1.
  static EdenCode parse(int d, std::string_view s) {
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    EdenCode c;
    c.d = d;
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
      c.bits.push_back(ch == '1');
    }
    const auto len = static_cast<std::int64_t>(c.bits.size()) + d - 1;
    if (c.bits.size() < static_cast<std::size_t>(d) || len % (2 * d - 1) != 0)
      throw std::invalid_argument("bit string length " + std::to_string(s.size()) +
                                  " is not (2d-1)n-d+1 for any n >= 1 (d=" + std::to_string(d) + ")");
    c.n = static_cast<int>(len / (2 * d - 1));
    return c;
  }

  friend bool operator==(const EdenCode&, const EdenCode&) = default;
};

struct EdenTree {
  Vertex root;                  // u_1, at the origin after lexmin rooting
  std::vector<Vertex> order;    // u_1..u_n in revelation order
  std::vector<int> parent;      // label of the parent, -1 for the root
  std::vector<int> via_rank;    // direction rank from parent to child, -1 for the root
  int turn_count = 0;
};

class EdenDecodeError : public std::invalid_argument {
 public:
  EdenDecodeError(std::int64_t bit, const std::string& what)
      : std::invalid_argument("bit " + std::to_string(bit) + ": " + what), bit_index(bit) {}
  std::int64_t bit_index;
};

namespace detail {

// Valid direction ranks for a non-root vertex entered along `via`.
inline std::vector<int> valid_ranks(int d, int via) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(2 * d - 1));
  for (int r = 0; r < 2 * d; ++r)
    if (r != opposite_rank(via)) out.push_back(r);
  return out;
}

inline bool is_turn(int parent_via, int via) {
  return parent_via >= 0 && rank_axis(parent_via) != rank_axis(via);
}

}  // namespace detail

/// Encodes a site animal. The animal is translated lexmin-to-origin first,
/// so translates share a code.
inline std::pair<EdenCode, EdenTree> eden_encode(const LatticeAnimal& animal) {
  if (animal.kind() != Kind::site) throw InvalidAnimal("Eden encoding needs a site animal");
  const LatticeAnimal x = animal.lexmin_rooted();
  const int d = x.dim();

  EdenCode code;
  code.d = d;
  code.n = x.size();
  code.bits.reserve(static_cast<std::size_t>(eden_code_length(d, code.n)));

  EdenTree tree;
  tree.root = x.lexmin_vertex();
  std::map<Vertex, int> label;
  auto reveal = [&](Vertex v, int parent, int via) {
    label.emplace(v, static_cast<int>(tree.order.size()));
    tree.order.push_back(std::move(v));
    tree.parent.push_back(parent);
    tree.via_rank.push_back(via);
    if (parent >= 0 && detail::is_turn(tree.via_rank[static_cast<std::size_t>(parent)], via)) ++tree.turn_count;
  };

  reveal(tree.root, -1, -1);
  for (int a = 0; a < d; ++a) {
    const int r = direction_rank(a, +1);
    Vertex w = tree.root.shifted(a, +1);
    const bool hit = x.contains_cell(w);
    code.bits.push_back(hit);
    if (hit) reveal(std::move(w), 0, r);
  }
  for (std::size_t k = 1; k < static_cast<std::size_t>(code.n); ++k) {
    const Vertex u = tree.order.at(k);
    for (int r : detail::valid_ranks(d, tree.via_rank[k])) {
      Vertex w = u.shifted(rank_axis(r), rank_sign(r));
      const bool hit = x.contains_cell(w) && !label.count(w);
      code.bits.push_back(hit);
      if (hit) reveal(std::move(w), static_cast<int>(k), r);
    }
  }
  if (static_cast<std::int64_t>(code.bits.size()) != eden_code_length(d, code.n) ||
      code.ones_count() != code.n - 1)
    throw std::logic_error("Eden encoding produced a malformed code");
  return {std::move(code), std::move(tree)};
}

/// Replays the schedule. Any code that is not the image of a lexmin-rooted
/// animal is rejected with the index of the first offending bit.
inline LatticeAnimal eden_decode(const EdenCode& code) {
  const int d = code.d;
  const int n = code.n;
  if (d < 1 || n < 1) throw EdenDecodeError(0, "code needs d >= 1 and n >= 1");
  const auto len = eden_code_length(d, n);
  if (static_cast<std::int64_t>(code.bits.size()) != len)
    throw EdenDecodeError(static_cast<std::int64_t>(code.bits.size()),
                          "length must be " + std::to_string(len) + " for d=" + std::to_string(d) +
                              ", n=" + std::to_string(n));
  int ones = 0;
  for (std::int64_t i = 0; i < len; ++i) {
    if (code.bits[static_cast<std::size_t>(i)] && ++ones > n - 1)
      throw EdenDecodeError(i, "more than n-1 = " + std::to_string(n - 1) + " ones");
  }
  if (ones != n - 1)
    throw EdenDecodeError(len, "code has " + std::to_string(ones) + " ones, expected n-1 = " + std::to_string(n - 1));

  std::vector<Vertex> order{Vertex::origin(d)};
  std::vector<int> via{-1};
  std::map<Vertex, int> label{{order[0], 0}};
  std::int64_t pos = 0;
  auto take = [&](const Vertex& from, int r) {
    const std::int64_t at = pos++;
    if (!code.bits[static_cast<std::size_t>(at)]) return;
    Vertex w = from.shifted(rank_axis(r), rank_sign(r));
    if (label.count(w)) throw EdenDecodeError(at, "points at already revealed vertex " + to_string(w));
    label.emplace(w, static_cast<int>(order.size()));
    order.push_back(std::move(w));
    via.push_back(r);
  };

  for (int a = 0; a < d; ++a) take(order[0], direction_rank(a, +1));
  for (std::size_t k = 1; k < static_cast<std::size_t>(n); ++k) {
    if (k >= order.size()) throw EdenDecodeError(pos, "block for vertex u_" + std::to_string(k + 1) +
                                                         " but only " + std::to_string(order.size()) +
                                                         " vertices revealed");
    const Vertex u = order[k];
    for (int r : detail::valid_ranks(d, via[k])) take(u, r);
  }

  auto animal = LatticeAnimal::site(d, order);
  // Catches codes that are self-consistent but describe a non-canonical
  // schedule, e.g. revealing a vertex lex-smaller than u_1.
  const auto again = eden_encode(animal).first;
  if (!(again.bits == code.bits)) {
    const auto mismatch = std::mismatch(again.bits.begin(), again.bits.end(), code.bits.begin());
    throw EdenDecodeError(mismatch.first - again.bits.begin(), "code is not the canonical encoding of its animal");
  }
  return animal;
}

struct TurnCheck {
  long lhs = 0;  // |∂_V X|
  long rhs = 0;  // (2d-2)n - t + 2
  bool holds = false;
  int turns = 0;
};

inline TurnCheck check_turn_bound(const LatticeAnimal& x) {
  const auto [code, tree] = eden_encode(x);
  TurnCheck c;
  c.turns = tree.turn_count;
  c.lhs = boundary_stats(x).vertex_boundary;
  c.rhs = static_cast<long>(2 * x.dim() - 2) * x.size() - tree.turn_count + 2;
  c.holds = c.lhs <= c.rhs;
  return c;
}

/// sum_{i=1..d} sum_{j=0..min(q, n-i)} C(d,i) C((2d-1)(n-1), j) C(n-1, n-i-j):
/// an upper bound on lexmin-rooted site animals of size n with at most q turns.
inline BigInt ijq_upper_bound(int d, int n, std::int64_t q) {
  if (d < 1 || n < 1 || q < 0) throw std::invalid_argument("ijq_upper_bound needs d >= 1, n >= 1, q >= 0");
  const std::int64_t m = static_cast<std::int64_t>(2 * d - 1) * (n - 1);
  const auto c_d = binomial_row(d, d);
  const auto c_m = binomial_row(m, std::min<std::int64_t>(q, n - 1));
  const auto c_n = binomial_row(n - 1, n - 1);
  BigInt total = 0;
  for (std::int64_t i = 1; i <= d; ++i) {
    const std::int64_t j_max = std::min<std::int64_t>(q, n - i);
    for (std::int64_t j = 0; j <= j_max; ++j) {
      const std::int64_t k = n - i - j;
      total += c_d[static_cast<std::size_t>(i)] * c_m[static_cast<std::size_t>(j)] * c_n[static_cast<std::size_t>(k)];
    }
  }
  return total;
}

/// Maximum Eden turn count over all site animals of size n.
inline int max_turns_observed(int d, int n, const EnumerationOptions& opt = {}) {
  struct MaxTurns {
    int n = 0;
    int best = 0;
    void operator()(const AnimalView& a) {
      if (a.size() != n) return;
      best = std::max(best, eden_encode(a.to_animal()).second.turn_count);
    }
    void merge(const MaxTurns& o) { best = std::max(best, o.best); }
  } v{n, 0};
  const auto status = for_each_animal(d, Kind::site, n, v, opt);
  if (status.partial) throw ResourceLimitExceeded("max_turns_observed: node budget exhausted");
  return v.best;
}

}  // namespace lattice
