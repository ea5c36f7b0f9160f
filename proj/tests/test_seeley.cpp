#include <doctest.h>

#include <cmath>

#include "cpw/errors.hpp"
#include "cpw/seeley.hpp"

using namespace cpw;

namespace {

ClassicalSymbol sym(std::size_t d, const char* text) { return ClassicalSymbol::from_full(d, parse_poly(d, text)); }

}  // namespace

TEST_CASE("rho bound examples") {
  CHECK(rho_bound(sym(1, "xi1^2")).rho == 1);
  CHECK(rho_bound(sym(1, "(1 + x1^2)*xi1^2")).rho == 1);
  auto r = rho_bound(sym(2, "xi1^4 + xi2^4"));
  CHECK(r.rho == Rational(1, 2));
  CHECK(r.certified > 0.4);
  CHECK(r.certified <= 0.5);
  CHECK_THROWS_AS(rho_bound(sym(1, "x1*xi1^2")), NonEllipticError);
  CHECK_THROWS_AS(rho_bound(sym(1, "xi1^3")), NonEllipticError);
}

TEST_CASE("resolvent recursion small cases") {
  auto q0 = resolvent_terms(sym(1, "xi1^2"), 3);
  for (int j = 1; j <= 3; ++j) CHECK(q0.terms[static_cast<std::size_t>(j)].empty());

  auto q = resolvent_terms(sym(1, "xi1^2 + 5"), 3);
  CHECK(q.terms[1].empty());
  REQUIRE(q.terms[2].size() == 1);
  CHECK(q.terms[2][0].pole == 2);
  CHECK(q.terms[2][0].numerator == Poly::constant(2, GaussRational(-5)));

  auto qv = resolvent_terms(sym(1, "(1 + x1^2)*xi1^2"), 3);
  CHECK_FALSE(qv.terms[1].empty());
  CHECK(qv.bookkeeping_holds());
  CHECK(verify_parametrix(sym(1, "(1 + x1^2)*xi1^2"), qv, 3).ok);
}

TEST_CASE("parametrix detector catches a dropped term") {
  auto p = sym(2, "(2 + x1^2)*xi1^2 + xi2^2 + x2*xi1 + 1");
  auto q = resolvent_terms(p, 3);
  CHECK(verify_parametrix(p, q, 3).ok);
  REQUIRE_FALSE(q.terms[2].empty());
  q.terms[2].pop_back();
  auto rep = verify_parametrix(p, q, 3);
  CHECK_FALSE(rep.ok);
  CHECK(rep.first_bad_depth == 2);
}

TEST_CASE("residue power closed form") {
  CHECK(std::abs(residue_power(1, 0.0, 7.0) - 1.0) < 1e-15);
  CHECK(std::abs(residue_power(1, 1.0, 3.0) - 3.0) < 1e-15);
  // binom(1/2, 1) 4^(-1/2) with the (-1)^(k+1) sign.
  CHECK(std::abs(residue_power(2, 0.5, 4.0) + 0.25) < 1e-15);
  CHECK_THROWS_AS(residue_power(0, 0.5, 4.0), DomainError);
}

TEST_CASE("power terms for xi^2 + c") {
  auto e = complex_power_terms(sym(1, "xi1^2 + 3"), 4);
  CHECK(e.degree_law_holds());
  REQUIRE(e.parts[0].size() == 1);
  CHECK(e.parts[1].empty());
  // part 2: s * 3 * (xi^2)^(s-1)
  std::vector<PowerBasisTerm> expect{{Poly::constant(2, GaussRational(3)), Rational(1), Rational(-1), SPoly::affine(1, 0)}};
  CHECK(power_terms_equivalent(e.parts[2], expect, e.base));
  CHECK_FALSE(power_terms_equivalent(e.parts[2], {}, e.base));
}

TEST_CASE("power expansion homogeneity at complex s") {
  auto p = sym(2, "(1 + x1^2)*xi1^2 + xi2^2 + x2*xi2 + 2");
  auto e = complex_power_terms(p, 3);
  const std::complex<double> s(0.3, 0.2);
  std::vector<double> pt{0.2, -0.4, 0.7, 0.5}, scaled{0.2, -0.4, 1.4, 1.0};
  for (int j = 0; j <= 3; ++j) {
    const auto a = e.evaluate_part(j, pt, s);
    const auto b = e.evaluate_part(j, scaled, s);
    if (std::abs(a) == 0.0) continue;
    const auto expect = a * std::pow(2.0, 2.0 * s - static_cast<double>(j));
    CHECK(std::abs(b - expect) < 1e-12 * std::abs(expect));
  }
}

TEST_CASE("integer power reduction") {
  auto r = integer_power_reduction(sym(1, "xi1^2 + 3"), {0.5, 0.0}, 1, 4);
  CHECK(r.exact_match);
  CHECK(r.max_numeric_deviation < 1e-10);
  auto rv = integer_power_reduction(sym(1, "(1 + x1^2)*xi1^2 + x1*xi1"), {0.3, 0.4}, 2, 4);
  CHECK(rv.max_numeric_deviation < 1e-10);
  CHECK_THROWS_AS(integer_power_reduction(sym(1, "xi1^2"), {1.0, 0.0}, 1, 2), DomainError);
}

TEST_CASE("exact part evaluation") {
  const auto p = sym(1, "(1 + x1^2)*xi1^2 + x1*xi1 + 2");
  const auto e = complex_power_terms(p, 3);
  const std::complex<double> s(0.3, -0.4);
  const std::vector<double> pt{0.25, 1.5};
  for (int j = 0; j <= 3; ++j) {
    const auto a = e.evaluate_part(j, pt, s);
    const auto b = e.evaluate_part_exact(j, pt, s);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(std::abs(a), 1e-30));
  }
  // negative control: the expansion of P^(s + 1) is visibly different
  const auto f = e.shifted(Rational(1));
  CHECK(std::abs(f.evaluate_part_exact(1, pt, s) - e.evaluate_part_exact(1, pt, s)) >
        1e-3 * std::abs(e.evaluate_part_exact(1, pt, s)));
}

TEST_CASE("symbol level semigroup") {
  auto p = sym(2, "xi1^2 + 2*xi2^2 + xi1 + 1");
  auto e = complex_power_terms(p, 4);
  const Rational s(1, 3), t(-3, 4);
  auto prod = compose(e.specialized(s), e.specialized(t), 4);
  auto sum = e.specialized(s + t);
  for (int j = 0; j <= 4; ++j) CHECK(power_terms_equivalent(prod.parts[static_cast<std::size_t>(j)], sum.parts[static_cast<std::size_t>(j)], p.principal()));
}
