#pragma once

// Translation between percolation thresholds and growth rates of lattice
// animals, and the explicit upper bounds built on Eden's encoding.
//
//   f(r) = (1+r)^{1+r} / r^r          (0^0 = 1)
//   r(p) = (1-p)/p,  p(r) = 1/(1+r)
//
// A growth rate upper bound a gives a threshold lower bound p(f^{-1}(a));
// a threshold upper bound p gives a growth rate lower bound f(r(p)).
// All transcendental evaluation happens in log space.

#include <cmath>
#include <cstdint>
#include <charconv>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lattice/animal.hpp"
#include "lattice/bigint.hpp"

namespace lattice::bounds {

enum class Direction { upper, lower };
enum class Rigor { rigorous, physics_reported, monte_carlo, estimate };
enum class Flavor { site, bond };

/// Growth rate symbols: a (bond animals), a_site (site animals), b / b_site
/// (interfaces), t (lattice trees), b_r and a_site_r (ratio-stratified rates).
enum class Quantity { a, a_site, b, b_site, t, b_r, a_site_r };

inline std::string_view to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }
inline std::string_view to_string(Flavor f) { return f == Flavor::site ? "site" : "bond"; }
inline std::string_view to_string(Rigor r) {
  switch (r) {
    case Rigor::rigorous: return "rigorous";
    case Rigor::physics_reported: return "physics-reported";
    case Rigor::monte_carlo: return "monte-carlo";
    case Rigor::estimate: return "estimate";
  }
  return "?";
}
inline std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::a: return "a";
    case Quantity::a_site: return "a_site";
    case Quantity::b: return "b";
    case Quantity::b_site: return "b_site";
    case Quantity::t: return "t";
    case Quantity::b_r: return "b_r";
    case Quantity::a_site_r: return "a_site_r";
  }
  return "?";
}

inline Flavor parse_flavor(std::string_view s) {
  if (s == "site") return Flavor::site;
  if (s == "bond") return Flavor::bond;
  throw std::invalid_argument("unknown flavor '" + std::string(s) + "'");
}
inline Rigor parse_rigor(std::string_view s) {
  if (s == "rigorous") return Rigor::rigorous;
  if (s == "physics-reported") return Rigor::physics_reported;
  if (s == "monte-carlo") return Rigor::monte_carlo;
  if (s == "estimate") return Rigor::estimate;
  throw std::invalid_argument("unknown rigor '" + std::string(s) + "'");
}

/// The weaker of two rigor levels.
inline Rigor weakest(Rigor a, Rigor b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

struct GrowthBound {
  Quantity quantity = Quantity::a;
  int d = 0;  // 0: not a hypercubic lattice, see `lattice`
  std::string lattice;
  double value = 1.0;
  Direction direction = Direction::upper;
  Rigor rigor = Rigor::rigorous;
  std::vector<std::string> provenance;
};

struct ThresholdBound {
  Flavor flavor = Flavor::site;
  int d = 0;
  std::string lattice;
  double value = 0.5;
  Direction direction = Direction::lower;
  Rigor rigor = Rigor::rigorous;
  std::vector<std::string> provenance;
};

inline std::string hypercubic(int d) { return "Z^" + std::to_string(d); }

class Inapplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// f, r(p), p(r)

inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

inline double log_f(double r) {
  if (!(r >= 0.0)) throw std::domain_error("f(r) needs r >= 0");
  // log(1+r) + r log(1 + 1/r): no cancellation between two large terms.
  return r == 0.0 ? 0.0 : std::log1p(r) + r * std::log1p(1.0 / r);
}

inline double f(double r) {
  // Direct powers are exact on small integers (f(1) = 4, f(2) = 27/4) and
  // cannot overflow below r = 64. Beyond that, (1+r)(1+1/r)^r keeps full
  // relative precision, which the (f - er)r sweep needs at r ~ 1e5.
  if (r >= 0.0 && r <= 64.0) return r == 0.0 ? 1.0 : std::pow(1.0 + r, 1.0 + r) / std::pow(r, r);
  if (!(r >= 0.0)) throw std::domain_error("f(r) needs r >= 0");
  return (1.0 + r) * std::exp(r * std::log1p(1.0 / r));
}

inline double r_of_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("r(p) needs 0 < p < 1");
  return (1.0 - p) / p;
}

inline double p_of_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("p(r) needs r > 0");
  return 1.0 / (1.0 + r);
}

/// The unique r >= 0 with f(r) = a, by bisection on [0, max(1, a)]
/// (f(r) >= 1 + r keeps the root inside).
inline double f_inverse(double a) {
  if (!(a >= 1.0) || !std::isfinite(a)) throw std::domain_error("f_inverse needs a >= 1");
  if (a == 1.0) return 0.0;
  const double target = std::log(a);
  double lo = 0.0, hi = std::max(1.0, a);
  int iter = 0;
  for (; iter < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (log_f(mid) < target ? lo : hi) = mid;
  }
  if (hi - lo > 1e-12 * std::max(1.0, hi)) throw std::runtime_error("f_inverse: bisection did not converge");
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Translations

inline Flavor flavor_of(Quantity q) {
  switch (q) {
    case Quantity::a_site:
    case Quantity::b_site:
    case Quantity::a_site_r: return Flavor::site;
    default: return Flavor::bond;
  }
}

/// Growth rate upper bound -> threshold lower bound p(f^{-1}(a)).
inline ThresholdBound pc_lower_from_growth_upper(const GrowthBound& upper) {
  if (upper.direction != Direction::upper) throw std::invalid_argument("expected an upper growth bound");
  if (!(upper.value > 1.0)) throw Inapplicable("growth upper bound <= 1 gives the vacuous threshold bound p_c >= 1");
  ThresholdBound out;
  out.flavor = flavor_of(upper.quantity);
  out.d = upper.d;
  out.lattice = upper.lattice;
  out.direction = Direction::lower;
  out.rigor = upper.rigor;
  out.value = p_of_r(f_inverse(upper.value));
  out.provenance = upper.provenance;
  out.provenance.push_back("growth>=f(r(p_c))");
  out.provenance.push_back("p_c>=p(f^-1(a))");
  return out;
}

/// Threshold upper bound -> growth rate lower bound f(r(p)).
inline GrowthBound growth_lower_from_pc_upper(const ThresholdBound& upper) {
  if (upper.direction != Direction::upper) throw std::invalid_argument("expected an upper threshold bound");
  GrowthBound out;
  out.quantity = upper.flavor == Flavor::site ? Quantity::a_site : Quantity::a;
  out.d = upper.d;
  out.lattice = upper.lattice;
  out.direction = Direction::lower;
  out.rigor = upper.rigor;
  out.value = f(r_of_p(upper.value));
  out.provenance = upper.provenance;
  out.provenance.push_back("growth>=f(r(p_c))");
  return out;
}

// ---------------------------------------------------------------------------
// Bounds from boundary counting

/// (2d-1)^{2d-1} / (2d-2)^{2d-2}, i.e. f(2d-2).
inline double b_upper_crude(int d) {
  if (d < 2) throw std::domain_error("b_upper_crude needs d >= 2");
  return f(2.0 * d - 2.0);
}

/// Kesten's argument at p = 1/(2d-1): a_n p^n (1-p)^{(2d-2)n+c} <= 1 with
/// c = 2d (bond) or 2 (site) gives growth rate <= f(2d-2) for both kinds.
inline GrowthBound kesten_growth_upper(int d, Flavor kind) {
  GrowthBound g;
  g.quantity = kind == Flavor::site ? Quantity::a_site : Quantity::a;
  g.d = d;
  g.lattice = hypercubic(d);
  g.direction = Direction::upper;
  g.value = b_upper_crude(d);
  g.provenance = {kind == Flavor::site ? "|dP|<=(2d-2)|P|+2" : "|dP|<=(2d-2)|P|+2d", "kesten:p=1/(2d-1)",
                  "f(2d-2)"};
  return g;
}

/// count * p^n * (1-p)^{(2d-2)n + c}, exactly; c = 2 for site animals, 2d otherwise.
inline BigRational kesten_product(const BigInt& count, int n, int d, Kind kind, const BigRational& p) {
  const long c = kind == Kind::site ? 2 : 2L * d;
  const long e = static_cast<long>(2 * d - 2) * n + c;
  BigRational pn = 1, qn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  const BigRational q = 1 - p;
  for (long i = 0; i < e; ++i) qn *= q;
  return BigRational(count) * pn * qn;
}

/// g_d(x) = (2d-1)^{2d-1} / (y^y (1-y)^{1-y} x^x (2d-1-x)^{2d-1-x}), y = min(x, 1/2).
inline double log_g(int d, double x) {
  if (d < 2) throw std::domain_error("g_d needs d >= 2");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("g_d needs 0 <= x <= 1");
  const double s = 2.0 * d - 1.0;
  const double y = std::min(x, 0.5);
  return xlogx(s) - xlogx(y) - xlogx(1.0 - y) - xlogx(x) - xlogx(s - x);
}
inline double g(int d, double x) { return std::exp(log_g(d, x)); }

/// C^2 e (2d-1) / (2d-2)^{1-x}: the majorant of g_d(x) used for the improved bound.
inline double improved_majorant(int d, double C, double x) {
  return C * C * std::numbers::e * (2.0 * d - 1.0) / std::pow(2.0 * d - 2.0, 1.0 - x);
}

/// Default constant: max x^{-x} on [0,1] is e^{1/e} ~ 1.4447 and
/// max 1/(y^y (1-y)^{1-y}) on [0,1/2] is 2, so C = 2 covers both.
inline constexpr double kDefaultC = 2.0;

struct ImprovedBound {
  double z = 0.0;
  GrowthBound bound;
};

inline double improved_z(int d, double C) {
  if (d < 2) throw std::domain_error("improved bound needs d >= 2");
  return 1.0 - C * C / std::log(2.0 * d - 2.0);
}

/// f(2d-2-z) without the applicability check on z; the sweep of its
/// large-d behaviour does not need the bound to be valid.
inline double improved_formula(int d, double C = kDefaultC) { return f(2.0 * d - 2.0 - improved_z(d, C)); }

/// z = 1 - C^2/log(2d-2) and the upper bound f(2d-2-z) on the site growth rate.
inline ImprovedBound improved_upper_bound(int d, double C = kDefaultC) {
  if (!(C > 0.0)) throw std::domain_error("C must be positive");
  const double z = d >= 2 ? improved_z(d, C) : -1.0;
  if (!(z > 0.0 && z < 1.0))
    throw Inapplicable("improved bound inapplicable: z = " + std::to_string(z) + " not in (0,1) for d=" +
                       std::to_string(d) + ", C=" + std::to_string(C));
  ImprovedBound out;
  out.z = z;
  out.bound.quantity = Quantity::a_site;
  out.bound.d = d;
  out.bound.lattice = hypercubic(d);
  out.bound.direction = Direction::upper;
  out.bound.value = f(2.0 * d - 2.0 - z);
  out.bound.provenance = {"eden:turns", "ijq", "g_d(x)<=C^2e(2d-1)/(2d-2)^(1-x)", "z=1-C^2/log(2d-2)",
                          "f(2d-2-z)"};
  return out;
}

/// p_c(site) >= 1 / (2d - 2 + C^2/log(2d-2)).
inline ThresholdBound thm_pc_lower(int d, double C = kDefaultC) {
  const auto improved = improved_upper_bound(d, C);  // throws when inapplicable
  ThresholdBound t;
  t.flavor = Flavor::site;
  t.d = d;
  t.lattice = hypercubic(d);
  t.direction = Direction::lower;
  t.value = 1.0 / (2.0 * d - 2.0 + C * C / std::log(2.0 * d - 2.0));
  t.provenance = improved.bound.provenance;
  t.provenance.push_back("r_site<=2d-3+C^2/log(2d-2)");
  return t;
}

// ---------------------------------------------------------------------------
// Conservative decimal formatting

/// Rounds toward the safe side: lower bounds down, upper bounds up.
inline double truncate_decimals(double v, int decimals, Direction dir) {
  const long double scale = std::pow(10.0L, decimals);
  const long double scaled = static_cast<long double>(v) * scale;
  const long double r = dir == Direction::lower ? std::floor(scaled) : std::ceil(scaled);
  return static_cast<double>(r / scale);
}

/// Fixed-point text with a '.' separator whatever the global locale.
inline std::string format_fixed(double v, int decimals) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

inline std::string format_conservative(double v, int decimals, Direction dir) {
  return format_fixed(truncate_decimals(v, decimals, dir), decimals);
}

/// `sig` significant digits, rounded toward the safe side.
inline std::string format_significant(double v, int sig, Direction dir) {
  if (v == 0.0 || !std::isfinite(v)) return format_fixed(v, sig - 1);
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  const int decimals = std::max(0, sig - 1 - exponent);
  return format_conservative(v, decimals, dir);
}

}  // namespace lattice::bounds
