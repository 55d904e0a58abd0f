#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lattice {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_decimal(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty decimal string");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-')))
      throw std::invalid_argument("not a decimal integer: " + s);
  return BigInt(s);
}

/// C(m, l) for l = 0..l_max, built by the multiplicative recurrence.
/// Entries with l > m are zero.
inline std::vector<BigInt> binomial_row(std::int64_t m, std::int64_t l_max) {
  std::vector<BigInt> row(static_cast<std::size_t>(std::max<std::int64_t>(l_max, -1) + 1));
  if (row.empty()) return row;
  row[0] = m >= 0 ? 1 : 0;
  for (std::int64_t l = 1; l <= l_max; ++l) {
    const auto k = static_cast<std::size_t>(l);
    row[k] = l > m ? BigInt(0) : BigInt(row[k - 1] * (m - l + 1) / l);
  }
  return row;
}

}  // namespace lattice
