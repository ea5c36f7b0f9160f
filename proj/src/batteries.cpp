#include "cpw/batteries.hpp"

namespace cpw {

ClassicalSymbol BatteryOperator::symbol() const { return ClassicalSymbol::from_full(dim, parse_poly(dim, text)); }

const std::vector<BatteryOperator>& constant_battery() {
  static const std::vector<BatteryOperator> ops = {
      {"laplace-1d", 1, "xi1^2"},
      {"shifted-1d", 1, "xi1^2 + 3"},
      {"drift-1d", 1, "xi1^2 + xi1 + 2"},
      {"quartic-1d", 1, "xi1^4 + 3*xi1^2 + 1"},
      {"odd-quartic-1d", 1, "2*xi1^4 + xi1^3 + 7"},
      {"laplace-2d", 2, "xi1^2 + xi2^2"},
      {"aniso-2d", 2, "xi1^2 + 2*xi2^2 + xi1 + 1"},
      {"mixed-2d", 2, "xi1^2 + xi1*xi2 + xi2^2 + 4"},
      {"quartic-2d", 2, "xi1^4 + xi2^4 + xi1^2 + 1"},
      {"bilaplace-2d", 2, "xi1^4 + 2*xi1^2*xi2^2 + xi2^4 + xi1*xi2^2 + 3"},
  };
  return ops;
}

const std::vector<BatteryOperator>& variable_battery() {
  static const std::vector<BatteryOperator> ops = {
      {"var-1d", 1, "(1 + x1^2)*xi1^2 + x1*xi1 + 2"},
      {"linear-coef-1d", 1, "(2 + x1)*xi1^2 + 1"},
      {"var-2d", 2, "(1 + x1^2)*xi1^2 + xi2^2 + x2*xi2 + 2"},
      {"mixed-var-2d", 2, "xi1^2 + (1 + x1^2*x2^2)*xi2^2 + 1/2*x1*xi1*xi2 + x2"},
      {"var-quartic-1d", 1, "(1 + x1^2)*xi1^4 + x1*xi1^3 + xi1^2 + 1"},
  };
  return ops;
}

const std::vector<std::pair<double, double>>& star_degree_pairs() {
  static const std::vector<std::pair<double, double>> pairs = {
      {-2.0, -1.5}, {-1.0, -1.0}, {-0.5, -1.5}, {-1.5, -1.5}, {-2.5, -0.5}, {-1.0, -2.5}};
  return pairs;
}

}  // namespace cpw
