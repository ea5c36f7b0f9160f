#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cpw/symbol.hpp"

namespace cpw {

struct BatteryOperator {
  std::string name;
  std::size_t dim;
  std::string text;  // full symbol over x1.., xi1..

  ClassicalSymbol symbol() const;
};

/// Ten positive elliptic operators with constant coefficients, d <= 2, order <= 4.
const std::vector<BatteryOperator>& constant_battery();
/// Five operators with polynomial coefficients: x-dependent principal parts,
/// lower-order parts, mixed xi monomials, orders 2 and 4.
const std::vector<BatteryOperator>& variable_battery();

/// Degree pairs (m1, m2) inside -4 < m1, m2, m1 + m2 < 0 for the star-product fit.
const std::vector<std::pair<double, double>>& star_degree_pairs();

}  // namespace cpw
