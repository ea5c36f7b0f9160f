#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cpw/contour.hpp"
#include "cpw/errors.hpp"
#include "cpw/poly.hpp"
#include "cpw/resolvent.hpp"
#include "cpw/symbol.hpp"

using namespace cpw;

TEST_CASE("gaussian rationals stay exact") {
  GaussRational a(Rational(1, 3), Rational(-2, 5));
  GaussRational b = a * a.conj();
  CHECK(b.is_real());
  CHECK(b.re == Rational(1, 9) + Rational(4, 25));
  CHECK((a / a) == GaussRational(1));
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
}

TEST_CASE("parse and differentiate polynomials") {
  Poly p = parse_poly(1, "(1 + x1^2)*xi1^2 - 3/2*I*xi1");
  CHECK(p.homogeneous_degree(1, 1) == std::nullopt);
  auto parts = p.split_by_degree(1, 1);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(2) == parse_poly(1, "xi1^2 + x1^2*xi1^2"));
  CHECK(p.derivative(0) == parse_poly(1, "2*x1*xi1^2"));
  std::vector<Rational> pt{Rational(1), Rational(2)};
  CHECK(p.eval(pt) == GaussRational(Rational(8), Rational(-3)));
}

TEST_CASE("xi derivative of the resolvent of xi^2") {
  const std::size_t d = 1;
  Poly base = parse_poly(d, "xi1^2");
  ResolventTerm q{0, 1, Poly::constant(2, GaussRational(1))};
  auto dd = diff_xi(q, MultiIndex({2}), base, d);
  REQUIRE(dd.size() == 2);
  // d^2/dxi^2 (xi^2 - lambda)^-1 = -2 (.)^-2 + 8 xi^2 (.)^-3
  CHECK(dd[0].pole == 2);
  CHECK(dd[0].numerator == Poly::constant(2, GaussRational(-2)));
  CHECK(dd[1].pole == 3);
  CHECK(dd[1].numerator == parse_poly(d, "8*xi1^2"));
  CHECK(dd[0].depth == 2);

  // Numeric cross-check by central differences.
  const std::complex<double> lam(-0.7, 0.4);
  auto f = [&](double xi) { return 1.0 / (xi * xi - lam); };
  const double xi = 0.8, h = 1e-3;
  const auto fd = (f(xi + h) - 2.0 * f(xi) + f(xi - h)) / (h * h);
  std::vector<double> pt{0.0, xi};
  std::complex<double> exact = 0.0;
  for (const auto& t : dd) exact += evaluate(t, base, pt, lam);
  CHECK(std::abs(fd - exact) < 1e-5);
}

TEST_CASE("x derivatives carry the -i factor") {
  const std::size_t d = 1;
  Poly base = parse_poly(d, "(1 + x1^2)*xi1^2");
  ResolventTerm q{0, 1, Poly::constant(2, GaussRational(1))};
  auto dx = diff_x(q, MultiIndex({1}), base, d);
  REQUIRE(dx.size() == 1);
  CHECK(dx[0].pole == 2);
  CHECK(dx[0].depth == 0);
  CHECK(dx[0].numerator == parse_poly(d, "2*I*x1*xi1^2"));
}

TEST_CASE("conic region") {
  Sector sector(std::numbers::pi / 2, 3 * std::numbers::pi / 2);
  ConicRegion theta(sector, Rational(1), 2);
  std::vector<double> xi{1.0};
  CHECK(theta.contains(xi, {0.5, 0.0}));
  CHECK(theta.contains(xi, {-3.0, 0.0}));
  CHECK_FALSE(theta.contains(xi, {3.0, 0.1}));
  std::vector<double> zero{0.0};
  CHECK_THROWS_AS(theta.contains(zero, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Sector(2.0, 3.0), DomainError);
}

TEST_CASE("keyhole contour encloses the positive axis but not 0") {
  Contour c{0.5, 128, 0.0};
  std::complex<double> at_zero = 0.0, at_two = 0.0;
  for (const auto& n : contour_nodes(c)) {
    at_zero += n.weight / n.lambda;
    at_two += n.weight / (n.lambda - 2.0);
  }
  CHECK(std::abs(at_zero) < 1e-12);
  CHECK(std::abs(at_two - std::complex<double>(0, 2 * std::numbers::pi)) < 1e-12);
}

TEST_CASE("symbol json round trip") {
  auto p = ClassicalSymbol::from_full(2, parse_poly(2, "xi1^4 + 2*xi1^2*xi2^2 + xi2^4 + x1*xi1 + 3"), Rational(1, 2));
  auto q = symbol_from_json(to_json(p));
  CHECK(q.order() == 4);
  CHECK(q.full() == p.full());
  CHECK(q.box_half_width() == Rational(1, 2));
}
