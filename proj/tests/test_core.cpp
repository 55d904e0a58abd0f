#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lattice/core.hpp"

using namespace lattice;

namespace {

std::vector<Vertex> box(int d, int lo, int hi) {
  std::vector<Vertex> out{Vertex(d)};
  for (int a = 0; a < d; ++a) {
    std::vector<Vertex> next;
    for (const auto& v : out)
      for (int c = lo; c <= hi; ++c) {
        Vertex w = v;
        w[a] = c;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(LexCompare, Examples) {
  EXPECT_EQ(lex_compare(Vertex{0, 0}, Vertex{0, 0}), std::strong_ordering::equal);
  EXPECT_EQ(lex_compare(Vertex{0, 1}, Vertex{1, 0}), std::strong_ordering::less);
  EXPECT_EQ(lex_compare(Vertex{1, 0, 0}, Vertex{0, 9, 9}), std::strong_ordering::greater);
}

TEST(LexCompare, DimensionMismatchThrows) {
  EXPECT_THROW((void)lex_compare(Vertex{0, 0}, Vertex{0, 0, 0}), DimensionMismatch);
}

TEST(LexCompare, StrictTotalOrderOnSmallBox) {
  const auto vs = box(3, -1, 1);
  for (const auto& u : vs) {
    for (const auto& v : vs) {
      const auto uv = lex_compare(u, v);
      const auto vu = lex_compare(v, u);
      EXPECT_EQ(uv == std::strong_ordering::equal, u == v);
      EXPECT_EQ(uv == std::strong_ordering::less, vu == std::strong_ordering::greater);
      for (const auto& w : vs) {
        if (uv == std::strong_ordering::less && lex_compare(v, w) == std::strong_ordering::less) {
          EXPECT_EQ(lex_compare(u, w), std::strong_ordering::less);
        }
      }
    }
  }
}

TEST(DirectedEdgeRank, TwoDimensionalConvention) {
  const Vertex o{0, 0};
  EXPECT_EQ(directed_edge_rank({o, 0, +1}), 0);
  EXPECT_EQ(directed_edge_rank({o, 0, -1}), 1);
  EXPECT_EQ(directed_edge_rank({o, 1, +1}), 2);
  EXPECT_EQ(directed_edge_rank({o, 1, -1}), 3);
}

TEST(DirectedEdgeRank, TranslationInvariantBijection) {
  for (int d = 1; d <= 5; ++d) {
    for (const auto& tail : {Vertex(d), Vertex(std::vector<Coord>(static_cast<std::size_t>(d), 7))}) {
      std::set<int> ranks;
      for (int a = 0; a < d; ++a)
        for (int s : {+1, -1}) {
          const int r = directed_edge_rank({tail, a, s});
          EXPECT_EQ(r, directed_edge_rank({Vertex(d), a, s}));
          EXPECT_EQ(rank_axis(r), a);
          EXPECT_EQ(rank_sign(r), s);
          ranks.insert(r);
        }
      EXPECT_EQ(ranks.size(), static_cast<std::size_t>(2 * d));
      EXPECT_EQ(*ranks.begin(), 0);
      EXPECT_EQ(*ranks.rbegin(), 2 * d - 1);
    }
  }
}

TEST(Neighbors, Examples) {
  EXPECT_EQ(neighbors(Vertex{0}), (std::vector<Vertex>{{1}, {-1}}));
  EXPECT_EQ(neighbors(Vertex{0, 0}), (std::vector<Vertex>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  EXPECT_EQ(neighbors(Vertex(5)).size(), 10u);
}

TEST(Neighbors, DistinctAndAdjacent) {
  for (const auto& v : box(3, -2, 2)) {
    const auto ns = neighbors(v);
    std::set<Vertex> uniq(ns.begin(), ns.end());
    EXPECT_EQ(uniq.size(), ns.size());
    for (const auto& w : ns) EXPECT_TRUE(adjacent(v, w));
  }
}

TEST(UndirectedEdge, BetweenNormalizesOrientation) {
  const auto e = UndirectedEdge::between(Vertex{1, 0}, Vertex{0, 0});
  EXPECT_EQ(e.lower, (Vertex{0, 0}));
  EXPECT_EQ(e.axis, 0);
  EXPECT_EQ(e.upper(), (Vertex{1, 0}));
  EXPECT_THROW(UndirectedEdge::between(Vertex{0, 0}, Vertex{1, 1}), std::invalid_argument);
  EXPECT_THROW(UndirectedEdge::between(Vertex{0, 0}, Vertex{0, 0}), std::invalid_argument);
  EXPECT_THROW(UndirectedEdge::between(Vertex{0, 0}, Vertex{0, 2}), std::invalid_argument);
}
