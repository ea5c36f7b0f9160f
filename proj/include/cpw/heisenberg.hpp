#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "cpw/fft.hpp"
#include "cpw/poly.hpp"

namespace cpw {

/// (xi_0, xi_1, xi_2) or (x_0, x_1, x_2); index 0 carries weight 2.
using HPoint = std::array<double, 3>;
using HFn = std::function<double(double, double, double)>;

/// t.xi = (t^2 xi_0, t xi_1, t xi_2); t > 0.
HPoint dilate(const HPoint& xi, double t);
/// (xi_0^2 + xi_1^4 + xi_2^4)^(1/4)
double hnorm(const HPoint& xi);
inline double hnorm(double a, double b, double c) { return std::sqrt(std::sqrt(a * a + b * b * b * b + c * c * c * c)); }
/// 2 beta_0 + beta_1 + beta_2
int weighted_order(const MultiIndex& beta);

/// x.y = (x0 + y0 + (kappa/2)(x1 y2 - x2 y1), x1 + y1, x2 + y2)
class GroupLaw {
 public:
  explicit GroupLaw(double kappa = 1.0) : kappa_(kappa) {}
  double kappa() const { return kappa_; }
  HPoint multiply(const HPoint& x, const HPoint& y) const;
  HPoint inverse(const HPoint& x) const { return {-x[0], -x[1], -x[2]}; }
  static HPoint identity() { return {0.0, 0.0, 0.0}; }

 private:
  double kappa_;
};

/// Largest |(xy)z - x(yz)| and |x^-1 x| over `count` random triples in [-2, 2]^3.
struct GroupLawDefect {
  double associativity = 0.0;
  double inverse = 0.0;
};
GroupLawDefect group_law_defect(const GroupLaw& g, int count, std::uint64_t seed);

/// Real expression over xi0, xi1, xi2 and norm (the gauge) with + - * / ^,
/// parentheses and real constants, compiled to a small stack program.
class HExpr {
 public:
  explicit HExpr(const std::string& text);
  double operator()(double xi0, double xi1, double xi2) const;
  const std::string& text() const { return text_; }

  struct Op {
    enum Kind : std::uint8_t { Const, Var, Norm, Add, Sub, Mul, Div, Pow, Neg } kind;
    double value = 0.0;
    int var = 0;
  };

 private:
  std::string text_;
  std::vector<Op> program_;
  std::size_t stack_depth_ = 0;
};

/// Symbol homogeneous of degree m under the dilations.
class HHomogeneousSymbol {
 public:
  /// Parses `expression` and checks p(t.xi) = t^m p(xi) on random rays;
  /// throws DomainError when the check fails.
  HHomogeneousSymbol(const std::string& expression, double degree, std::uint64_t seed = 1);
  /// Wraps an evaluator; `verify` runs the same homogeneity check.
  HHomogeneousSymbol(HFn fn, double degree, std::string label, bool verify = true, std::uint64_t seed = 1);

  double operator()(double xi0, double xi1, double xi2) const { return fn_(xi0, xi1, xi2); }
  double operator()(const HPoint& xi) const { return fn_(xi[0], xi[1], xi[2]); }
  double degree() const { return degree_; }
  const std::string& label() const { return label_; }
  const HFn& function() const { return fn_; }

 private:
  void verify(std::uint64_t seed) const;
  HFn fn_;
  double degree_;
  std::string label_;
};

struct RemainderReport {
  double constant = 0.0;      // smallest C with |p - sum_{j<N} p_{m-j}| <= C ||xi||^(m-N) on the samples
  HPoint worst{};             // sample attaining it
  bool divergent = false;     // ratio still growing on the outer shells
  std::vector<double> shell_constants;  // C restricted to ||xi|| in [2^k, 2^(k+1))
};

/// Samples rays on the unit gauge sphere and radii ||xi|| in [1, 2^shells).
RemainderReport expansion_remainder_check(const HFn& full, const std::vector<HHomogeneousSymbol>& parts, int terms,
                                          std::uint64_t seed = 3, int shells = 6, int rays = 48);

/// Left-invariant frame X_0 = d_0, X_1 = d_1 - (kappa/2) x_2 d_0, X_2 = d_2 + (kappa/2) x_1 d_0
/// and the classical symbols sigma_j of X_j / i.
struct VectorFieldFrame {
  double kappa = 1.0;
  HPoint sigma(const HPoint& x, const HPoint& xi) const {
    return {xi[0], xi[1] - 0.5 * kappa * x[2] * xi[0], xi[2] + 0.5 * kappa * x[1] * xi[0]};
  }
};

/// Samples on the uniform grid x_i = -L + i h, h = 2L/(n-1), in each axis,
/// row-major with axis 0 slowest. Paired with the frequency grid
/// xi_l = (l - n/2) dxi, dxi = 2 pi / (n h); n must be even.
struct KernelGrid {
  double L = 8.0;
  int n = 128;
  cvec data;

  KernelGrid() = default;
  KernelGrid(double half_width, int points);
  double spacing() const { return 2.0 * L / (n - 1); }
  double coord(int i) const { return -L + i * spacing(); }
  double freq_spacing() const { return 2.0 * std::numbers::pi / (n * spacing()); }
  double freq(int l) const { return (l - n / 2) * freq_spacing(); }
  std::size_t index(int i0, int i1, int i2) const {
    return (static_cast<std::size_t>(i0) * n + static_cast<std::size_t>(i1)) * n + static_cast<std::size_t>(i2);
  }
  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
};

/// F(xi_l) = sum_i f(x_i) e^{-i x_i . xi_l} h^3 on the paired frequency grid.
cvec to_frequency(const KernelGrid& f);
/// Inverse of to_frequency: f(x_i) = (2 pi)^-3 sum_l F(xi_l) e^{i x_i . xi_l} dxi^3.
KernelGrid to_space(const cvec& spectrum, double half_width, int points);

/// 1 - chi(||xi||) with chi = 1 on ||xi|| <= 1/4 and 0 for ||xi|| >= 1/2.
double origin_cutoff(double gauge);
/// Smooth window equal to 1 for |u| <= 0.6 and 0 for |u| >= 0.95 (u relative to the box half-width).
double edge_taper(double u);

/// Kernel of the cut-off symbol; requires -4 < m < 0.
KernelGrid symbol_to_kernel(const HHomogeneousSymbol& p, double half_width, int points);
/// Symbol values on the paired frequency grid.
cvec kernel_to_symbol(const KernelGrid& k);
/// sum_i K(x_i) e^{-i x_i . xi} h^3 at an arbitrary covector.
std::complex<double> kernel_symbol_at(const KernelGrid& k, const HPoint& xi);

struct RoundTripReport {
  double max_rel_error = 0.0;  // paired frequency grid, nodes with 1 <= ||xi|| <= 2
  int grid_nodes = 0;
  double offgrid_rel_error = 0.0;  // random annulus points by direct summation; interpolation, not gated
  double even_defect = 0.0;        // max |K(x) - K(-x)| / max |K| for even symbols
  int samples = 0;
};
/// p -> kernel -> symbol on the annulus 1 <= ||xi|| <= 2.
RoundTripReport symbol_kernel_round_trip(const HHomogeneousSymbol& p, double half_width, int points, int samples,
                                         std::uint64_t seed);

struct QuantizeResult {
  KernelGrid values;
  bool aliasing_warning = false;
};

/// p(x, -iX) f for p polynomial in sigma, written over x0..x2, xi0..xi2 with
/// xi standing for sigma(x, xi). Expands p(x, sigma(x, xi)) = sum a_g(x) xi^g
/// and applies each xi^g spectrally.
QuantizeResult quantize(const Poly& p, const KernelGrid& f, double kappa);
/// Same operator by the direct double sum over grid and frequency points;
/// accepts any evaluator of p(x, sigma). Cost n^6, meant for small grids.
QuantizeResult quantize_direct(const std::function<std::complex<double>(const HPoint&, const HPoint&)>& p,
                               const KernelGrid& f, double kappa);

/// (1/i) X_j f by second-order central differences; zero on the boundary layer.
KernelGrid frame_field_fd(int j, const KernelGrid& f, double kappa);
/// max over interior points of |[X_1, X_2] f - kappa X_0 f| using central differences.
double frame_bracket_defect(const KernelGrid& f, double kappa);

/// Samples a function on the grid.
KernelGrid sample_grid(double half_width, int points, const std::function<std::complex<double>(const HPoint&)>& f);

}  // namespace cpw
