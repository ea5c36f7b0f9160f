#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cpw/rational.hpp"

namespace cpw {

/// Multi-index alpha; |alpha| = sum of entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int order() const;
  Rational factorial() const;
  bool is_zero() const { return order() == 0; }
  const std::vector<int>& entries() const { return entries_; }

  /// All multi-indices of the given length with |alpha| == order, in
  /// lexicographically decreasing order of entries.
  static std::vector<MultiIndex> of_order(std::size_t length, int order);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

/// Exact polynomial over the Gaussian rationals in a fixed number of variables.
///
/// Symbols on a chart of dimension d use 2d variables: x_1..x_d occupy
/// indices [0, d) and xi_1..xi_d occupy [d, 2d).
class Poly {
 public:
  using Exponent = std::vector<int>;
  using TermMap = std::map<Exponent, GaussRational>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const GaussRational& c);
  static Poly monomial(std::size_t nvars, Exponent e, const GaussRational& c = GaussRational(1));
  static Poly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Adds c * x^e, dropping the entry if it cancels.
  void add_term(const Exponent& e, const GaussRational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= GaussRational(-1); }
  friend Poly operator*(Poly a, const GaussRational& c) { return a *= c; }
  friend Poly operator*(const GaussRational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned k) const;
  Poly derivative(std::size_t var) const;

  GaussRational eval(std::span<const Rational> point) const;
  std::complex<double> eval(std::span<const double> point) const;

  /// Total degree in variables [first, first+count) if every monomial has the
  /// same one; nullopt for the zero polynomial or mixed degrees.
  std::optional<int> homogeneous_degree(std::size_t first, std::size_t count) const;
  /// Splits into parts homogeneous in variables [first, first+count), keyed by degree.
  std::map<int, Poly> split_by_degree(std::size_t first, std::size_t count) const;
  bool depends_on(std::size_t first, std::size_t count) const;
  bool is_real() const;

 private:
  void check_same(const Poly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Polynomial in the formal power parameter s with rational coefficients,
/// coefficient of s^i at index i.
class SPoly {
 public:
  SPoly() = default;
  explicit SPoly(std::vector<Rational> coeffs);
  static SPoly constant(const Rational& c) { return SPoly({c}); }
  /// a*s + b
  static SPoly affine(const Rational& a, const Rational& b) { return SPoly({b, a}); }
  /// binom(s, n) = s(s-1)...(s-n+1)/n!
  static SPoly binomial(unsigned n);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  SPoly& operator+=(const SPoly& o);
  SPoly& operator*=(const Rational& c);
  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend SPoly operator*(SPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const SPoly&, const SPoly&) = default;

  /// p(s + shift)
  SPoly shifted(const Rational& shift) const;
  Rational eval(const Rational& s) const;
  std::complex<double> eval(std::complex<double> s) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace cpw
