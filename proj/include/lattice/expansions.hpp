#pragma once

// Registry of 1/d expansions for thresholds and growth rates. Evaluation is
// the finite partial sum; the error order is metadata only.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lattice/bounds.hpp"

namespace lattice::bounds {

enum class ExpansionVariable { two_d, two_d_minus_one };
enum class ExpansionForm {
  power_series,  // sum_k c_k v^{-k}, k >= 1
  exp_series,    // v e exp(sum_k c_k v^{-k})
  linear_e,      // e (c_0 d + c_1)
};

struct ExpansionSpec {
  std::string name;
  std::string quantity;  // what the series approximates
  ExpansionVariable variable = ExpansionVariable::two_d;
  ExpansionForm form = ExpansionForm::power_series;
  std::vector<double> coefficients;
  std::string error_order;
  Rigor rigor = Rigor::rigorous;
};

class UnknownExpansion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<ExpansionSpec>& expansion_registry() {
  static const std::vector<ExpansionSpec> registry = [] {
    constexpr double e = std::numbers::e;
    using V = ExpansionVariable;
    using F = ExpansionForm;
    return std::vector<ExpansionSpec>{
        {"eq-critical", "p_c bond", V::two_d, F::power_series, {1.0, 1.0, 7.0 / 2.0}, "O(1/d^4)",
         Rigor::rigorous},
        {"site-perco-asym-rig", "p_c site", V::two_d, F::power_series, {1.0, 5.0 / 2.0, 31.0 / 4.0}, "O(1/d^4)",
         Rigor::rigorous},
        {"trees", "t", V::two_d_minus_one, F::exp_series,
         {-1.0 / 2.0, -8.0 / 3.0, -85.0 / 12.0, -931.0 / 20.0, -2777.0 / 10.0}, "unknown", Rigor::physics_reported},
        {"animals", "a", V::two_d_minus_one, F::exp_series,
         {-1.0 / 2.0, -(8.0 / 3.0 - 1.0 / (2.0 * e)), -(85.0 / 12.0 - 1.0 / (4.0 * e)),
          -(931.0 / 20.0 - 139.0 / (48.0 * e) - 1.0 / (8.0 * e * e)),
          -(2777.0 / 10.0 + 177.0 / (32.0 * e) - 29.0 / (12.0 * e * e))},
         "unknown", Rigor::physics_reported},
        {"site-perco-asym", "p_c site", V::two_d_minus_one, F::power_series,
         {1.0, 3.0 / 2.0, 15.0 / 4.0, 83.0 / 4.0}, "unknown", Rigor::physics_reported},
        {"bond-growth", "a, b", V::two_d, F::linear_e, {2.0, -3.0 / 2.0}, "O(1/d)", Rigor::rigorous},
        {"site-growth-gap", "a_site lower", V::two_d, F::linear_e, {2.0, -3.0}, "O(1/d)", Rigor::rigorous},
    };
  }();
  return registry;
}

inline std::string expansion_names() {
  std::string s;
  for (const auto& spec : expansion_registry()) s += (s.empty() ? "" : ", ") + spec.name;
  return s;
}

inline const ExpansionSpec& find_expansion(const std::string& name) {
  for (const auto& spec : expansion_registry())
    if (spec.name == name) return spec;
  throw UnknownExpansion("unknown expansion '" + name + "'; known: " + expansion_names());
}

inline double evaluate_expansion(const ExpansionSpec& spec, int d) {
  if (d < 2) throw std::domain_error("expansions need d >= 2");
  const double v = spec.variable == ExpansionVariable::two_d ? 2.0 * d : 2.0 * d - 1.0;
  switch (spec.form) {
    case ExpansionForm::linear_e:
      return std::numbers::e * (spec.coefficients.at(0) * d + spec.coefficients.at(1));
    case ExpansionForm::power_series:
    case ExpansionForm::exp_series: {
      double sum = 0.0, inv = 1.0;
      for (double c : spec.coefficients) {
        inv /= v;
        sum += c * inv;
      }
      return spec.form == ExpansionForm::power_series ? sum : v * std::numbers::e * std::exp(sum);
    }
  }
  throw std::logic_error("unhandled expansion form");
}

inline double evaluate_expansion(const std::string& name, int d) { return evaluate_expansion(find_expansion(name), d); }

}  // namespace lattice::bounds
