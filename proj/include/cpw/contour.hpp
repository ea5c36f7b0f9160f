#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cpw/rational.hpp"

namespace cpw {

/// Open angular sector theta < arg(lambda) < theta_prime, 0 < theta < pi < theta_prime < 2 pi.
class Sector {
 public:
  Sector(double theta, double theta_prime);
  double theta() const { return theta_; }
  double theta_prime() const { return theta_prime_; }
  /// arg taken in [0, 2 pi).
  bool contains(std::complex<double> lambda) const;

 private:
  double theta_;
  double theta_prime_;
};

/// Theta = (R^d x sector) union {|lambda| < rho |xi|^m}; conic under
/// (xi, lambda) -> (t xi, t^m lambda).
class ConicRegion {
 public:
  ConicRegion(Sector sector, Rational rho, int order);
  const Sector& sector() const { return sector_; }
  const Rational& rho() const { return rho_; }
  int order() const { return order_; }

  /// Throws DomainError for (xi, lambda) = (0, 0).
  bool contains(std::span<const double> xi, std::complex<double> lambda) const;

 private:
  Sector sector_;
  Rational rho_;
  int order_;
};

/// Quadrature node on the keyhole contour. log_lambda carries the branch
/// (arg in [-pi, pi]) so lambda^s = exp(s * log_lambda) on both rays.
struct ContourNode {
  enum class Segment { IncomingRay, Circle, OutgoingRay, ClosingArc };
  Segment segment;
  std::complex<double> lambda;
  std::complex<double> log_lambda;
  std::complex<double> weight;  // d lambda
};

/// Gamma_r: ray at angle pi from R_max in to r, clockwise circle of radius r
/// from arg pi to arg -pi, ray at angle -pi from r out to R_max, closed by the
/// counter-clockwise arc of radius R_max. The closing arc replaces the
/// truncated tails, so the closed-contour value equals the residue sum for
/// every s; its magnitude is reported as the tail size.
struct Contour {
  double r = 1.0;
  int nodes_per_segment = 256;
  double r_max = 0.0;  // 0 means 1e3 * r

  double outer_radius() const { return r_max > 0.0 ? r_max : 1e3 * r; }
};

/// Composite 4-point Gauss-Legendre on every segment; nodes_per_segment must
/// be a multiple of 4 and at least 64.
std::vector<ContourNode> contour_nodes(const Contour& c);

}  // namespace cpw
