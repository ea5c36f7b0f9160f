#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cpw/poly.hpp"

namespace cpw {

/// a(x, xi) * (p_m(x, xi) - lambda)^(-pole) at expansion depth j.
///
/// Homogeneity bookkeeping: deg_xi(a) - m * pole == -m - depth, so that the
/// term scales by t^(-m-depth) under (xi, lambda) -> (t xi, t^m lambda).
/// pole == 0 only occurs inside parametrix residuals.
struct ResolventTerm {
  int depth = 0;
  int pole = 1;
  Poly numerator;

  friend bool operator==(const ResolventTerm&, const ResolventTerm&) = default;
};

/// Merges terms with equal (depth, pole), drops cancelled ones and sorts by
/// (depth, pole). This is the canonical form used for exact comparisons.
std::vector<ResolventTerm> canonical(std::vector<ResolventTerm> terms);

/// d_xi^alpha of a single term, with base = p_m. Output depth is the input
/// depth plus |alpha|.
std::vector<ResolventTerm> diff_xi(const ResolventTerm& term, const MultiIndex& alpha, const Poly& base,
                                   std::size_t dim);
std::vector<ResolventTerm> diff_xi(std::span<const ResolventTerm> terms, const MultiIndex& alpha,
                                   const Poly& base, std::size_t dim);

/// D_x^alpha = (-i d_x)^alpha of a single term; depth is unchanged.
std::vector<ResolventTerm> diff_x(const ResolventTerm& term, const MultiIndex& alpha, const Poly& base,
                                  std::size_t dim);
std::vector<ResolventTerm> diff_x(std::span<const ResolventTerm> terms, const MultiIndex& alpha, const Poly& base,
                                  std::size_t dim);

/// Numeric value of a term at (x, xi, lambda).
std::complex<double> evaluate(const ResolventTerm& term, const Poly& base, std::span<const double> x_xi,
                              std::complex<double> lambda);

/// The graded family {q_{-m-j}}, j = 0..depth().
struct ResolventExpansion {
  std::size_t dim = 0;
  int order = 0;
  Poly base;
  std::vector<std::vector<ResolventTerm>> terms;

  int depth() const { return static_cast<int>(terms.size()) - 1; }
  std::size_t term_count() const;
  /// Checks the leading-term shape and the homogeneity bookkeeping of every term.
  bool bookkeeping_holds() const;
};

}  // namespace cpw
