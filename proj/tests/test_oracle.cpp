#include <doctest.h>

#include <cmath>
#include <random>

#include "cpw/errors.hpp"
#include "cpw/oracle.hpp"

using namespace cpw;

namespace {

ClassicalSymbol sym(std::size_t d, const char* text) { return ClassicalSymbol::from_full(d, parse_poly(d, text)); }

}  // namespace

TEST_CASE("torus eigenvalues") {
  auto ev = eigenvalues(TorusOperator(sym(1, "xi1^2")), 3);
  std::vector<Rational> vals;
  for (const auto& e : ev) vals.push_back(e.value);
  CHECK(vals == std::vector<Rational>{9, 4, 1, 0, 1, 4, 9});

  auto shifted = eigenvalues(TorusOperator(sym(1, "xi1^2 + 1")), 3);
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK(shifted[i].value == ev[i].value + 1);

  for (const auto& e : eigenvalues(TorusOperator(sym(2, "xi1^2 + 4*xi2^2")), 2)) {
    if (e.k == std::vector<int>{1, 1}) CHECK(e.value == 5);
  }
  CHECK_THROWS_AS(eigenvalues(TorusOperator(sym(1, "xi1^2 - 2")), 2), NonEllipticError);
  CHECK_THROWS_AS(TorusOperator(sym(1, "x1*xi1^2")), DomainError);
}

TEST_CASE("spectral powers") {
  TorusOperator lap(sym(2, "xi1^2 + xi2^2"));
  for (const auto& e : spectral_complex_power(lap, 0.0, 3)) {
    if (e.k != std::vector<int>{0, 0}) CHECK(std::abs(e.value - 1.0) < 1e-15);
  }
  for (const auto& e : spectral_complex_power(TorusOperator(sym(1, "xi1^2")), -1.0, 2)) {
    if (e.k == std::vector<int>{2}) CHECK(std::abs(e.value - 0.25) < 1e-15);
  }
  auto half = spectral_complex_power(lap, 0.5, 4);
  auto ev = eigenvalues(lap, 4);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double v = to_double(ev[i].value);
    if (v == 0.0) continue;
    CHECK(std::abs(half[i].value * half[i].value - v) < 1e-14 * v);
  }
}

TEST_CASE("binomial oracle by hand") {
  auto e = binomial_expansion_oracle(sym(1, "xi1^2 + 3"), 4);
  CHECK(e.parts[0].size() == 1);
  CHECK(e.parts[1].empty());
  std::vector<PowerBasisTerm> two{{Poly::constant(2, GaussRational(3)), Rational(1), Rational(-1), SPoly::affine(1, 0)}};
  CHECK(power_terms_equivalent(e.parts[2], two, e.base));
  std::vector<PowerBasisTerm> four{{Poly::constant(2, GaussRational(9)), Rational(1), Rational(-2), SPoly::binomial(2)}};
  CHECK(power_terms_equivalent(e.parts[4], four, e.base));

  auto pure = binomial_expansion_oracle(sym(1, "xi1^2"), 3);
  for (int j = 1; j <= 3; ++j) CHECK(pure.parts[static_cast<std::size_t>(j)].empty());
}

TEST_CASE("seeley recursion reproduces the binomial series") {
  for (const char* text : {"xi1^2 + 3", "xi1^2 + xi1 + 1", "xi1^4 + 2*xi1^3 + xi1 + 5"}) {
    CHECK(compare_with_oracle(sym(1, text), 4).match);
  }
  CHECK(compare_with_oracle(sym(2, "xi1^2 + 3*xi2^2 + xi1*xi2 + xi2 + 2"), 4).match);
}

TEST_CASE("residue closed form against quadrature") {
  auto unit = residue_by_quadrature(1, 0.0, 7.0);
  CHECK(std::abs(unit.value - 1.0) < 1e-8);
  auto half = residue_by_quadrature(2, 0.5, 4.0);
  CHECK(std::abs(half.value - residue_power(2, 0.5, 4.0)) < 1e-8 * 0.25);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> kdist(1, 4);
  std::uniform_real_distribution<double> mu(0.5, 10.0), re(-2.0, 2.0), im(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const int k = kdist(rng);
    const std::complex<double> s(re(rng), im(rng));
    const double m = mu(rng);
    const auto q = residue_by_quadrature(k, s, m);
    const auto exact = residue_power(k, s, m);
    CHECK(std::abs(q.value - exact) < 1e-8 * std::abs(exact));
  }
}

TEST_CASE("quadrature error shrinks with more nodes") {
  const double mu = 3.0;
  double prev = 0.0;
  for (int n : {64, 128}) {
    const auto q = residue_by_quadrature(1, {-0.7, 0.3}, mu, n);
    const double err = std::abs(q.value - residue_power(1, {-0.7, 0.3}, mu));
    if (n > 64) CHECK((err <= prev / 4.0 || err < 1e-13));
    prev = err;
  }
}
