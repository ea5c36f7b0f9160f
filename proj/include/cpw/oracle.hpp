#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cpw/contour.hpp"
#include "cpw/seeley.hpp"
#include "cpw/symbol.hpp"

namespace cpw {

/// Constant-coefficient operator on the flat torus R^d / (2 pi Z)^d; its
/// eigenfunctions are e^{ik.x} with eigenvalue p(k).
class TorusOperator {
 public:
  /// Rejects x-dependent or non-real symbols.
  explicit TorusOperator(ClassicalSymbol symbol);
  const ClassicalSymbol& symbol() const { return symbol_; }
  std::size_t dim() const { return symbol_.dim(); }

 private:
  ClassicalSymbol symbol_;
};

struct LatticeEigenvalue {
  std::vector<int> k;
  Rational value;
};

/// Exact p(k) for all k in Z^d with |k| <= radius, lexicographic in k.
/// Throws NonEllipticError when p(k) <= 0 for some k != 0.
std::vector<LatticeEigenvalue> eigenvalues(const TorusOperator& op, int radius);

struct LatticePower {
  std::vector<int> k;
  std::complex<double> value;  // 0 on the kernel
};

/// p(k)^s on the complement of the kernel.
std::vector<LatticePower> spectral_complex_power(const TorusOperator& op, std::complex<double> s, int radius);

/// Homogeneous parts of p(xi)^s from the binomial series
///   p^s = sum_n binom(s, n) p_m^(s-n) (p_{m-1} + p_{m-2} + ...)^n
/// regrouped by degree. Uses only polynomial products.
PowerSymbolExpansion binomial_expansion_oracle(const ClassicalSymbol& p, int depth);

struct OracleComparison {
  bool match = true;
  std::vector<bool> depth_match;
  /// seeley minus oracle, per depth; only non-empty where the check failed
  std::vector<std::vector<PowerBasisTerm>> differences;
};

OracleComparison compare_with_oracle(const ClassicalSymbol& p, int depth);

struct QuadratureResult {
  std::complex<double> value;
  double discretization_error = 0.0;  // |I(N) - I(N/2)|, or |I(2N) - I(N)| for small N
  double tail = 0.0;                  // contribution of the closing arc
};

/// (i / 2 pi) times the contour integral of f(lambda, log lambda) d lambda.
QuadratureResult contour_quadrature(const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& f,
                                    const Contour& contour);

/// Quadrature value of (i/2pi) int lambda^s (mu - lambda)^-k d lambda with r = mu / 2.
QuadratureResult residue_by_quadrature(int pole, std::complex<double> s, double mu, int nodes_per_segment = 512);

}  // namespace cpw
