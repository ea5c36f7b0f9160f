#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpw/poly.hpp"

namespace cpw {

/// Symbol p = sum_j p_{m-j} of a differential operator on a chart of R^d,
/// with polynomial coefficients. Part j is xi-homogeneous of degree m - j.
class ClassicalSymbol {
 public:
  ClassicalSymbol(std::size_t dim, int order, std::vector<Poly> parts, Rational box_half_width = Rational(1));

  /// Splits a full polynomial symbol into xi-homogeneous parts; the order is
  /// the top xi-degree.
  static ClassicalSymbol from_full(std::size_t dim, const Poly& full, Rational box_half_width = Rational(1));

  std::size_t dim() const { return dim_; }
  std::size_t nvars() const { return 2 * dim_; }
  int order() const { return order_; }
  /// p_{m-drop}; zero polynomial beyond the stored parts.
  const Poly& part(int drop) const;
  const Poly& principal() const { return parts_.front(); }
  int part_count() const { return static_cast<int>(parts_.size()); }
  const Rational& box_half_width() const { return box_; }

  bool has_constant_coefficients() const;
  Poly full() const;

 private:
  std::size_t dim_;
  int order_;
  std::vector<Poly> parts_;
  Poly zero_;
  Rational box_;
};

/// Parses expressions such as "(1 + x1^2)*xi1^2 + 3/2*I*xi2" over the
/// variables x1..xd, xi1..xid. I is the imaginary unit. With first_index = 0
/// the variables are x0..x(d-1), xi0..xi(d-1).
Poly parse_poly(std::size_t dim, const std::string& text, int first_index = 1);

/// Symbol JSON document:
/// {"vars": d, "order": m, "parts": [{"degree": m-j, "monomials":
///   [{"exp": [..2d ints..], "coef": ["num","den","inum","iden"]}]}]}
/// with an optional "box": "<rational>" half-width of the x chart.
nlohmann::json to_json(const ClassicalSymbol& symbol);
ClassicalSymbol symbol_from_json(const nlohmann::json& doc);

nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(std::size_t nvars, const nlohmann::json& monomials);

}  // namespace cpw
