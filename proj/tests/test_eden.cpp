#include <gtest/gtest.h>

#include <set>

#include "lattice/eden.hpp"
#include "lattice/enumerate.hpp"

using namespace lattice;

namespace {

// Collects every lexmin-rooted site animal of size n.
std::vector<LatticeAnimal> all_site_animals(int d, int n) {
  struct Collect {
    int n;
    std::vector<LatticeAnimal> out;
    void operator()(const AnimalView& v) {
      if (v.size() == n) out.push_back(v.to_animal());
    }
  } c{n, {}};
  for_each_animal(d, Kind::site, n, c);
  return c.out;
}

}  // namespace

TEST(EdenEncode, SingleVertex) {
  const auto [code, tree] = eden_encode(LatticeAnimal::site(2, {{0, 0}}));
  EXPECT_EQ(code.str(), "00");
  EXPECT_EQ(code.ones_count(), 0);
  EXPECT_EQ(tree.turn_count, 0);
}

TEST(EdenEncode, HorizontalDomino) {
  const auto [code, tree] = eden_encode(LatticeAnimal::site(2, {{0, 0}, {1, 0}}));
  EXPECT_EQ(code.str(), "10000");
  EXPECT_EQ(code.bits.size(), 5u);
}

TEST(EdenEncode, TranslatesShareACode) {
  const auto a = LatticeAnimal::site(3, {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(eden_encode(a).first, eden_encode(a.translated(Vertex{4, -2, 9})).first);
}

TEST(EdenEncode, RejectsBondAnimals) {
  EXPECT_THROW(eden_encode(LatticeAnimal::bond(2, {UndirectedEdge(Vertex{0, 0}, 0)})), InvalidAnimal);
}

TEST(EdenDecode, SingleVertex) {
  const auto a = eden_decode(EdenCode::parse(2, "00"));
  EXPECT_EQ(a.cells(), (std::vector<Vertex>{{0, 0}}));
}

TEST(EdenDecode, TooManyOnesNamesTheBit) {
  try {
    eden_decode(EdenCode::parse(2, "11000"));
    FAIL() << "expected a decode error";
  } catch (const EdenDecodeError& e) {
    EXPECT_EQ(e.bit_index, 1);
  }
}

TEST(EdenDecode, TooFewOnes) {
  EXPECT_THROW(eden_decode(EdenCode::parse(2, "00000")), EdenDecodeError);
}

TEST(EdenDecode, OneBitAtRevealedVertex) {
  // Root reveals (1,0) and (0,1); u_2=(1,0) reveals (1,1) via +y; u_3=(0,1)
  // then claims (1,1) again via +x, which is bit 5.
  // Blocks: root [+x,+y], u_2 [+x,+y,-y], u_3 [+x,-x,+y], u_4.
  try {
    eden_decode(EdenCode::parse(2, "11" "010" "100" "000"));
    FAIL() << "expected a decode error";
  } catch (const EdenDecodeError& e) {
    EXPECT_EQ(e.bit_index, 5);
  }
}

TEST(EdenDecode, NonCanonicalScheduleIsRejected) {
  // Root reveals (1,0), which reveals (1,-1), which reveals (0,-1). That
  // vertex is lex-smaller than the root, so no rooted animal has this code.
  EXPECT_THROW(eden_decode(EdenCode::parse(2, "10" "001" "010" "000")), EdenDecodeError);
}

TEST(EdenCode, ParseRejectsBadLengthAndCharacters) {
  EXPECT_THROW(EdenCode::parse(2, "0000"), std::invalid_argument);
  EXPECT_THROW(EdenCode::parse(2, "0"), std::invalid_argument);
  EXPECT_THROW(EdenCode::parse(2, "0x"), std::invalid_argument);
  EXPECT_EQ(EdenCode::parse(3, std::string(13, '0')).n, 3);
}

TEST(TurnBound, StraightPathIsTight) {
  const auto c = check_turn_bound(LatticeAnimal::site(2, {{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_EQ(c.turns, 0);
  EXPECT_EQ(c.lhs, 8);
  EXPECT_EQ(c.rhs, 8);
  EXPECT_TRUE(c.holds);
}

TEST(TurnBound, BentTriominoIsTight) {
  const auto c = check_turn_bound(LatticeAnimal::site(2, {{0, 0}, {1, 0}, {1, 1}}));
  EXPECT_EQ(c.turns, 1);
  EXPECT_EQ(c.lhs, 7);
  EXPECT_EQ(c.rhs, 7);
  EXPECT_TRUE(c.holds);
}

TEST(EdenProperties, RoundTripLengthOnesAndTurnBound) {
  for (auto [d, n_max] : {std::pair{2, 6}, std::pair{3, 4}}) {
    for (int n = 1; n <= n_max; ++n) {
      std::set<std::string> codes;
      const auto animals = all_site_animals(d, n);
      for (const auto& a : animals) {
        const auto [code, tree] = eden_encode(a);
        EXPECT_EQ(static_cast<std::int64_t>(code.bits.size()), eden_code_length(d, n));
        EXPECT_EQ(code.ones_count(), n - 1);
        EXPECT_EQ(eden_decode(code), a);
        EXPECT_TRUE(check_turn_bound(a).holds);
        EXPECT_LE(tree.turn_count, std::max(0, n - 2));
        // Every parent precedes its child.
        for (std::size_t k = 1; k < tree.order.size(); ++k) EXPECT_LT(tree.parent[k], static_cast<int>(k));
        codes.insert(code.str());
      }
      EXPECT_EQ(codes.size(), animals.size()) << "codes must be injective, d=" << d << " n=" << n;
    }
  }
}

TEST(Ijq, HandComputedValue) { EXPECT_EQ(ijq_upper_bound(2, 2, 3), 9); }

TEST(Ijq, SingleVertex) {
  for (int q : {0, 1, 5}) EXPECT_EQ(ijq_upper_bound(1, 1, q), 1);
}

TEST(Ijq, IndependentDirectSum) {
  // Recompute with factorial-based binomials as a cross-check of the multiplicative recurrence.
  auto C = [](long m, long k) -> BigInt {
    if (k < 0 || k > m) return 0;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
  };
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 9; ++n)
      for (int q = 0; q <= 2 * n; ++q) {
        BigInt want = 0;
        for (int i = 1; i <= d; ++i)
          for (int j = 0; j <= std::min(q, n - i); ++j) want += C(d, i) * C((2 * d - 1) * (n - 1), j) * C(n - 1, n - i - j);
        EXPECT_EQ(ijq_upper_bound(d, n, q), want);
      }
}

TEST(Ijq, NondecreasingInQ) {
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 10; ++n)
      for (int q = 0; q < 12; ++q) EXPECT_LE(ijq_upper_bound(d, n, q), ijq_upper_bound(d, n, q + 1));
}

TEST(Ijq, DominatesCounts) {
  const auto counts = count_site_animals(2, 6, Rooting::lexmin);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_GE(ijq_upper_bound(2, n, n * 2), counts.at(n));
    EXPECT_GE(ijq_upper_bound(2, n, max_turns_observed(2, n)), counts.at(n));
  }
}

TEST(MaxTurns, SmallSizes) {
  EXPECT_EQ(max_turns_observed(2, 1), 0);
  EXPECT_EQ(max_turns_observed(2, 2), 0);
  EXPECT_EQ(max_turns_observed(2, 3), 1);
  for (int n = 3; n <= 7; ++n) EXPECT_LE(max_turns_observed(2, n), n - 2);
}

TEST(MaxTurns, ParallelMatchesSerial) {
  EnumerationOptions par;
  par.threads = 3;
  EXPECT_EQ(max_turns_observed(3, 5), max_turns_observed(3, 5, par));
}
