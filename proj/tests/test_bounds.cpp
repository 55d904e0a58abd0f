#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lattice/bounds.hpp"
#include "lattice/eden.hpp"
#include "lattice/enumerate.hpp"
#include "lattice/expansions.hpp"
#include "lattice/histogram.hpp"

using namespace lattice;
using namespace lattice::bounds;

namespace {

constexpr double kE = std::numbers::e;

GrowthBound growth_upper(double v, int d = 3) {
  GrowthBound g;
  g.quantity = Quantity::a_site;
  g.d = d;
  g.lattice = hypercubic(d);
  g.value = v;
  g.direction = Direction::upper;
  g.provenance = {"input"};
  return g;
}

ThresholdBound pc_upper(double v, Rigor rigor = Rigor::rigorous) {
  ThresholdBound t;
  t.flavor = Flavor::site;
  t.lattice = "H";
  t.value = v;
  t.direction = Direction::upper;
  t.rigor = rigor;
  t.provenance = {"input"};
  return t;
}

}  // namespace

TEST(F, Anchors) {
  EXPECT_EQ(f(1.0), 4.0);
  EXPECT_EQ(f(0.0), 1.0);
  EXPECT_EQ(f(2.0), 6.75);
  EXPECT_DOUBLE_EQ(f(4.0), 3125.0 / 256.0);
  EXPECT_THROW(f(-0.5), std::domain_error);
}

TEST(F, StrictlyIncreasingAndAboveOnePlusR) {
  double prev = f(0.0);
  for (int i = 1; i <= 20000; ++i) {
    const double r = i * 0.01;
    const double v = f(r);
    EXPECT_GT(v, prev);
    EXPECT_GT(v, r + 1.0);
    prev = v;
  }
}

TEST(F, LogAndDirectFormsAgree) {
  for (double r : {0.001, 0.5, 1.0, 3.7, 17.0, 63.9}) EXPECT_NEAR(std::log(f(r)), log_f(r), 1e-12 * std::max(1.0, log_f(r)));
  // Large arguments stay finite in log space.
  EXPECT_TRUE(std::isfinite(f(500.0)));
  EXPECT_NEAR(f(500.0) / (kE * 500.0 + kE / 2.0), 1.0, 1e-5);
}

TEST(RofP, ExamplesAndInverse) {
  EXPECT_EQ(r_of_p(0.5), 1.0);
  EXPECT_DOUBLE_EQ(r_of_p(0.2), 4.0);
  EXPECT_EQ(p_of_r(1.0), 0.5);
  EXPECT_THROW(r_of_p(0.0), std::domain_error);
  EXPECT_THROW(r_of_p(1.0), std::domain_error);
  EXPECT_THROW(p_of_r(0.0), std::domain_error);
  for (int i = 1; i < 99; ++i) {
    const double p = i / 100.0;
    EXPECT_NEAR(p_of_r(r_of_p(p)), p, 1e-15);
  }
}

TEST(FInverse, AnchorsAndRoundTrip) {
  EXPECT_NEAR(f_inverse(4.0), 1.0, 1e-12);
  EXPECT_EQ(f_inverse(1.0), 0.0);
  EXPECT_THROW(f_inverse(0.5), std::domain_error);
  for (int i = 0; i <= 1000; ++i) {
    const double r = i * 0.1;
    EXPECT_NEAR(f_inverse(f(r)), r, 1e-10 * std::max(1.0, r));
  }
}

TEST(FInverse, CubicSiteAnchor) {
  const double r = f_inverse(9.3835);
  EXPECT_NEAR(r, 2.9640797525, 1e-9);
  const double p = p_of_r(r);
  EXPECT_NEAR(p, 0.2522653585, 1e-9);
  EXPECT_EQ(format_conservative(p, 4, Direction::lower), "0.2522");
}

TEST(Translate, GrowthUpperToThresholdLower) {
  const auto t = pc_lower_from_growth_upper(growth_upper(9.3835));
  EXPECT_EQ(t.direction, Direction::lower);
  EXPECT_EQ(t.flavor, Flavor::site);
  EXPECT_GT(t.value, 0.2522);
  EXPECT_LT(t.value, 0.2523);
  EXPECT_GE(t.provenance.size(), 3u);
  EXPECT_EQ(t.provenance.front(), "input");

  EXPECT_NEAR(pc_lower_from_growth_upper(growth_upper(4.0, 2)).value, 0.5, 1e-12);
  EXPECT_THROW(pc_lower_from_growth_upper(growth_upper(1.0)), Inapplicable);
  auto wrong = growth_upper(4.0);
  wrong.direction = Direction::lower;
  EXPECT_THROW(pc_lower_from_growth_upper(wrong), std::invalid_argument);
}

TEST(Translate, ThresholdUpperToGrowthLower) {
  const auto hex = growth_lower_from_pc_upper(pc_upper(0.69704, Rigor::estimate));
  EXPECT_EQ(format_significant(hex.value, 5, Direction::lower), "2.4107");
  EXPECT_NEAR(hex.value, 2.41073, 5e-5);
  EXPECT_EQ(hex.rigor, Rigor::estimate);
  EXPECT_EQ(growth_lower_from_pc_upper(pc_upper(0.5)).value, 4.0);
  const double near_one = growth_lower_from_pc_upper(pc_upper(0.99)).value;
  EXPECT_GT(near_one, 1.0);
  EXPECT_LT(near_one, 1.1);
  // Smaller threshold upper bound gives a larger growth lower bound.
  EXPECT_GT(growth_lower_from_pc_upper(pc_upper(0.3)).value, growth_lower_from_pc_upper(pc_upper(0.4)).value);
}

TEST(Translate, RoundTrip) {
  for (double a : {1.5, 4.0, 9.3835, 27.0, 1000.0}) {
    const auto t = pc_lower_from_growth_upper(growth_upper(a));
    auto as_upper = t;
    as_upper.direction = Direction::upper;
    EXPECT_NEAR(growth_lower_from_pc_upper(as_upper).value, a, 1e-9 * a);
  }
  for (double p : {0.05, 0.2522, 0.5, 0.9}) {
    auto g = growth_lower_from_pc_upper(pc_upper(p));
    g.direction = Direction::upper;
    EXPECT_NEAR(pc_lower_from_growth_upper(g).value, p, 1e-9);
  }
}

TEST(Crude, BUpperIsFOfTwoDMinusTwo) {
  EXPECT_EQ(b_upper_crude(2), 6.75);
  for (int d = 2; d <= 50; ++d) {
    EXPECT_EQ(b_upper_crude(d), f(2.0 * d - 2.0));
    EXPECT_EQ(kesten_growth_upper(d, Flavor::bond).value, b_upper_crude(d));
    EXPECT_EQ(kesten_growth_upper(d, Flavor::site).value, b_upper_crude(d));
  }
  EXPECT_NEAR(b_upper_crude(3), 3125.0 / 256.0, 1e-12);
  EXPECT_GE(b_upper_crude(3), 9.3835);
  EXPECT_FALSE(kesten_growth_upper(3, Flavor::site).provenance.empty());
}

TEST(Crude, DominatesFiniteGrowthSurrogates) {
  for (int d = 2; d <= 3; ++d) {
    const int n_max = d == 2 ? 8 : 6;
    const auto s = count_site_animals(d, n_max, Rooting::lexmin);
    const auto b = count_bond_animals(d, n_max, Rooting::lexmin);
    for (int n = 1; n <= n_max; ++n) {
      EXPECT_LE(std::pow(s.at(n).convert_to<double>(), 1.0 / n), b_upper_crude(d));
      EXPECT_LE(std::pow(b.at(n).convert_to<double>(), 1.0 / n), b_upper_crude(d));
    }
  }
}

TEST(Kesten, FiniteCertificateSquareLattice) {
  const auto counts = count_bond_animals(2, 8, Rooting::origin_containing);
  const BigRational p(1, 3);
  for (int n = 1; n <= 8; ++n) EXPECT_LE(kesten_product(counts.at(n), n, 2, Kind::bond, p), 1);
  // Four single edges contain the origin.
  EXPECT_EQ(counts.at(1), 4);
}

TEST(LemmaG, Identities) {
  for (int d = 2; d <= 10; ++d) {
    EXPECT_NEAR(g(d, 0.0), 1.0, 1e-12);
    const double want = 2.0 * f(2.0 * d - 2.0);
    EXPECT_NEAR(g(d, 1.0) / want, 1.0, 1e-12);
  }
  EXPECT_THROW(g(2, -0.1), std::domain_error);
  EXPECT_THROW(g(2, 1.1), std::domain_error);
  EXPECT_THROW(g(1, 0.5), std::domain_error);
}

TEST(LemmaG, AtLeastOneAndContinuousAtHalf) {
  for (int d = 2; d <= 12; ++d) {
    for (int i = 0; i <= 1000; ++i) EXPECT_GE(g(d, i / 1000.0), 1.0 - 1e-12);
    EXPECT_NEAR(g(d, 0.5 - 1e-9), g(d, 0.5 + 1e-9), 1e-6 * g(d, 0.5));
  }
}

// Natural log of a positive big integer without overflowing a double.
static double big_log(const BigInt& v) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(v));
  if (bits < 60) return std::log(v.convert_to<double>());
  const BigInt top = v >> (bits - 52);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 52) * std::log(2.0);
}

TEST(LemmaG, FiniteCountsBelowTurnSum) {
  // Animals with |boundary| >= b have at most (2d-2)n + 2 - b turns, so their
  // number is bounded by the turn-limited code count.
  for (int d = 2; d <= 3; ++d) {
    for (int n = 1; n <= (d == 2 ? 9 : 6); ++n) {
      const auto h = ratio_histogram(d, n, Kind::site, 0.05);
      BigInt at_least = 0;
      for (auto it = h.exact.rbegin(); it != h.exact.rend(); ++it) {
        at_least += it->second;
        const long q = (2L * d - 2) * n + 2 - it->first;
        ASSERT_GE(q, 0) << "d=" << d << " n=" << n << " boundary=" << it->first;
        EXPECT_LE(at_least, ijq_upper_bound(d, n, q)) << "d=" << d << " n=" << n << " boundary=" << it->first;
      }
    }
  }
}

TEST(LemmaG, TurnSumRootsApproachG) {
  // The n-th root of the turn-limited count at q = xn + 2 tends to at most g_d(x).
  for (int d = 2; d <= 4; ++d) {
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      const int n_small = 500, n_large = 3000;
      const double small = std::exp(big_log(ijq_upper_bound(d, n_small, static_cast<long>(x * n_small) + 2)) / n_small);
      const double large = std::exp(big_log(ijq_upper_bound(d, n_large, static_cast<long>(x * n_large) + 2)) / n_large);
      EXPECT_LE(large, g(d, x) * 1.02) << "d=" << d << " x=" << x;
      // Above g the roots must be coming down towards it.
      if (small > g(d, x)) {
        EXPECT_LT(large, small) << "d=" << d << " x=" << x;
      }
    }
  }
}

TEST(DefaultC, CoversBothMaxima) {
  double max_xx = 0.0, max_y = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double x = i / 100000.0;
    max_xx = std::max(max_xx, std::exp(-xlogx(x)));
    const double y = 0.5 * x;
    max_y = std::max(max_y, std::exp(-xlogx(y) - xlogx(1.0 - y)));
  }
  EXPECT_NEAR(max_xx, std::exp(1.0 / kE), 1e-8);
  EXPECT_NEAR(max_y, 2.0, 1e-12);
  EXPECT_LE(max_xx, kDefaultC);
  EXPECT_LE(max_y, kDefaultC);
}

TEST(Improved, ApplicabilityAndGap) {
  EXPECT_THROW(improved_upper_bound(10), Inapplicable);
  EXPECT_THROW(improved_upper_bound(28), Inapplicable);
  EXPECT_NO_THROW(improved_upper_bound(29));
  for (int d = 29; d <= 10000; d += (d < 200 ? 1 : 97)) {
    const auto ib = improved_upper_bound(d);
    EXPECT_GT(ib.z, 0.0);
    EXPECT_LT(ib.z, 1.0);
    EXPECT_GT(f(2.0 * d - 2.0) - ib.bound.value, 0.0);
    EXPECT_EQ(ib.bound.value, improved_formula(d));
  }
}

TEST(Improved, MajorantDominatesG) {
  for (int d = 29; d <= 2000; d += 37) {
    const double z = improved_z(d, kDefaultC);
    for (int i = 0; i <= 100; ++i) {
      const double x = z * i / 100.0;
      EXPECT_LE(g(d, x), improved_majorant(d, kDefaultC, x));
    }
  }
}

TEST(ThmPcLower, ValueAndComparisons) {
  EXPECT_THROW(thm_pc_lower(3), Inapplicable);
  for (int d = 29; d <= 10000; d += 71) {
    const auto t = thm_pc_lower(d);
    EXPECT_DOUBLE_EQ(t.value, 1.0 / (2.0 * d - 2.0 + 4.0 / std::log(2.0 * d - 2.0)));
    EXPECT_GT(t.value, 1.0 / (2.0 * d - 1.0));
    EXPECT_EQ(t.direction, Direction::lower);
  }
}

TEST(Sweeps, FMinusLinearTimesRIsBounded) {
  double lo = 1e300, hi = -1e300;
  for (double r = 10.0; r <= 1e5; r *= 1.01) {
    const double v = (f(r) - kE * r - kE / 2.0) * r;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Observed: the product tends to -e/24 from below.
  EXPECT_GT(lo, -1.0);
  EXPECT_LT(hi, 0.0);
}

TEST(Sweeps, CrudeBoundExpansionTimesDIsBounded) {
  double worst = 0.0;
  for (int d = 10; d <= 10000; ++d) worst = std::max(worst, std::fabs((b_upper_crude(d) - 2 * d * kE + 1.5 * kE) * d));
  EXPECT_LT(worst, 1.0);
}

TEST(Expansions, RegistryAndValues) {
  EXPECT_NEAR(evaluate_expansion("eq-critical", 3), 1.0 / 6 + 1.0 / 36 + 7.0 / 432, 1e-15);
  EXPECT_NEAR(evaluate_expansion("eq-critical", 3), 0.21065, 1e-5);
  EXPECT_NEAR(evaluate_expansion("site-perco-asym-rig", 3), 1.0 / 6 + 2.5 / 36 + 7.75 / 216, 1e-15);
  EXPECT_NEAR(evaluate_expansion("site-perco-asym", 3), 0.2 + 1.5 / 25 + 3.75 / 125 + 20.75 / 625, 1e-15);
  EXPECT_NEAR(evaluate_expansion("bond-growth", 10), kE * (20 - 1.5), 1e-12);
  EXPECT_NEAR(evaluate_expansion("site-growth-gap", 10), kE * (20 - 3), 1e-12);
  EXPECT_EQ(expansion_registry().size(), 7u);
  EXPECT_THROW(evaluate_expansion("nope", 3), UnknownExpansion);
  EXPECT_THROW(evaluate_expansion("eq-critical", 1), std::domain_error);
  try {
    find_expansion("nope");
  } catch (const UnknownExpansion& e) {
    EXPECT_NE(std::string(e.what()).find("eq-critical"), std::string::npos);
  }
}

TEST(Expansions, RigorFlags) {
  EXPECT_EQ(find_expansion("eq-critical").rigor, Rigor::rigorous);
  EXPECT_EQ(find_expansion("trees").rigor, Rigor::physics_reported);
  EXPECT_EQ(find_expansion("animals").rigor, Rigor::physics_reported);
  EXPECT_EQ(find_expansion("site-perco-asym").rigor, Rigor::physics_reported);
}

TEST(Expansions, TreesAndAnimalsApproachTwoDE) {
  for (int d : {100, 1000}) {
    EXPECT_NEAR(evaluate_expansion("trees", d) / (2.0 * d * kE), 1.0, 2.0 / d);
    EXPECT_NEAR(evaluate_expansion("animals", d) / (2.0 * d * kE), 1.0, 2.0 / d);
    EXPECT_GT(evaluate_expansion("animals", d), evaluate_expansion("trees", d));
  }
}

TEST(Expansions, GapRelationSweep) {
  // f(r(p)) at the rigorous site threshold expansion stays within O(1/d) of 2de - 3e.
  double worst = 0.0;
  for (int d = 10; d <= 10000; ++d) {
    const double p = evaluate_expansion("site-perco-asym-rig", d);
    const double v = f(r_of_p(p));
    worst = std::max(worst, std::fabs((v - evaluate_expansion("site-growth-gap", d)) * d));
  }
  EXPECT_LT(worst, 100.0);
}

TEST(Formatting, ConservativeDirections) {
  EXPECT_EQ(format_conservative(0.25226535, 4, Direction::lower), "0.2522");
  EXPECT_EQ(format_conservative(0.25226535, 4, Direction::upper), "0.2523");
  EXPECT_EQ(format_conservative(2.0, 4, Direction::lower), "2.0000");
  EXPECT_EQ(format_significant(12.2070312, 5, Direction::upper), "12.208");
  EXPECT_EQ(format_significant(12.2070312, 5, Direction::lower), "12.207");
}
