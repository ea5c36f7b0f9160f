#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cpw/poly.hpp"
#include "cpw/resolvent.hpp"
#include "cpw/symbol.hpp"

namespace cpw {

/// Lower bound for p_m(x, xi) over the chart box and |xi| = 1.
struct RhoBound {
  Rational rho;                  // exact value of p_m at the sampled minimiser
  double slack = 0.0;            // Lipschitz allowance for the sampling gaps
  double certified = 0.0;        // rho - slack
  std::vector<Rational> argmin;  // (x, xi) of the minimising sample, xi unnormalised
};

/// Throws NonEllipticError if the certified bound is not positive.
RhoBound rho_bound(const ClassicalSymbol& p);

/// q_{-m} = (p_m - lambda)^-1 and, for 1 <= j <= depth,
/// q_{-m-j} = -(p_m - lambda)^-1 sum_{|alpha|+k+l=j, l!=j} (1/alpha!) d_xi^alpha p_{m-k} D_x^alpha q_{-m-l}.
ResolventExpansion resolvent_terms(const ClassicalSymbol& p, int depth);

struct ParametrixReport {
  bool ok = true;
  int first_bad_depth = -1;
  /// Canonical residual at each depth; depth 0 should be the single pole-0 term 1.
  std::vector<std::vector<ResolventTerm>> residuals;
};

/// Expands (p - lambda) q + sum_{alpha != 0} (1/alpha!) d_xi^alpha p D_x^alpha q
/// by homogeneity and checks it equals 1 + 0 + ... exactly through `depth`.
ParametrixReport verify_parametrix(const ClassicalSymbol& p, const ResolventExpansion& q, int depth);

/// Exact coefficient of mu^(s-k+1) in (i/2pi) int_Gamma lambda^s (mu - lambda)^-k d lambda,
/// namely (-1)^(k+1) binom(s, k-1), as a polynomial in s.
SPoly residue_coefficient(int pole);

/// Closed-form value of (i/2pi) int_Gamma lambda^s (mu - lambda)^-k d lambda.
std::complex<double> residue_power(int pole, std::complex<double> s, double mu);

/// scalar(s) * numerator(x, xi) * p_m(x, xi)^(exp_a s + exp_b).
struct PowerBasisTerm {
  Poly numerator;
  Rational exp_a{1};
  Rational exp_b{0};
  SPoly scalar;

  std::complex<double> evaluate(const Poly& base, std::span<const double> x_xi, std::complex<double> s) const;
};

/// Homogeneous parts p_{s, m(s+shift) - j} of the symbol of P^(s+shift).
struct PowerSymbolExpansion {
  std::size_t dim = 0;
  int order = 0;
  Poly base;
  Rational s_shift{0};
  std::vector<std::vector<PowerBasisTerm>> parts;

  int depth() const { return static_cast<int>(parts.size()) - 1; }
  std::complex<double> evaluate_part(int j, std::span<const double> x_xi, std::complex<double> s) const;
  /// Same value with s and the point taken as exact rationals; only p_m^(a s + frac b) is rounded.
  std::complex<double> evaluate_part_exact(int j, std::span<const double> x_xi, std::complex<double> s) const;
  /// deg_xi(numerator) + m (a s + b) == m (s + shift) - j for every term.
  bool degree_law_holds() const;
  /// Replaces s by s + delta in every term (the expansion of P^(s + shift + delta)).
  PowerSymbolExpansion shifted(const Rational& delta) const;
  /// Substitutes a rational value for s; exponents become constants.
  PowerSymbolExpansion specialized(const Rational& s) const;
};

PowerSymbolExpansion complex_power_terms(const ResolventExpansion& q);
PowerSymbolExpansion complex_power_terms(const ClassicalSymbol& p, int depth);

/// Exact equivalence of two sums of power-basis terms over the same base:
/// exponents in one class differ by integers and are brought to a common
/// base power before comparing numerators coefficient by coefficient in s.
bool power_terms_equivalent(std::span<const PowerBasisTerm> lhs, std::span<const PowerBasisTerm> rhs,
                            const Poly& base);
/// Reduced form of lhs - rhs; one term per (exponent class, power of s). Empty iff equivalent.
std::vector<PowerBasisTerm> power_terms_difference(std::span<const PowerBasisTerm> lhs,
                                                   std::span<const PowerBasisTerm> rhs, const Poly& base);

/// Full symbol of the composition of two differential operators,
/// sum_alpha (1/alpha!) d_xi^alpha a D_x^alpha b (finite for polynomials).
Poly compose_symbols(const Poly& a, const Poly& b, std::size_t dim);
/// Symbol of P^k by repeated composition.
ClassicalSymbol operator_power(const ClassicalSymbol& p, int k);

/// Symbol of A B with A a differential operator, truncated at `depth`.
PowerSymbolExpansion compose(const ClassicalSymbol& a, const PowerSymbolExpansion& b, int depth);
/// Symbol of A B for two power expansions over the same base, truncated at `depth`.
PowerSymbolExpansion compose(const PowerSymbolExpansion& a, const PowerSymbolExpansion& b, int depth);

struct ReductionReport {
  bool exact_match = true;
  int mismatch_depth = -1;
  double max_numeric_deviation = 0.0;
  std::vector<bool> depth_match;
};

/// Compares the symbol of P^k P^(s-k) with that of P^s through `depth`.
/// Requires Re s < k.
ReductionReport integer_power_reduction(const ClassicalSymbol& p, std::complex<double> s, int k, int depth,
                                        std::uint64_t seed = 7);

}  // namespace cpw
