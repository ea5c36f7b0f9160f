#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cpw/fft.hpp"
#include "cpw/heisenberg.hpp"

namespace cpw {

/// Discretisation of the group convolution. The x' plane is sampled on n
/// points of spacing h = 2L/(n-1) centred at index n/2; the covector plane on
/// the paired grid with spacing 2 pi / (n h).
struct StarGrid {
  double L = 16.0;
  int n = 128;
  double kappa = 1.0;

  double spacing() const { return 2.0 * L / (n - 1); }
  double freq_spacing() const;
};

/// One plane xi_0 = const of the product. The right factor p2 enters through
/// its partial kernel
///   K2(xi_0; k) = (2 pi)^-2 int p2(xi_0, eta) e^{i k.eta} d eta,
/// computed by FFT of the edge-tapered samples, and
///   (p1 * p2)(xi) = int p1(xi_0, xi' + c J k) K2(xi_0; k) e^{-i k.xi'} dk,
/// c = kappa xi_0 / 2, J k = (k_2, -k_1). This is the Fourier transform of the
/// group convolution of the two kernels after integrating out x_0.
class StarPlane {
 public:
  StarPlane(const StarGrid& grid, double xi0, const HFn& p2);
  /// Same, from complex samples on the covector grid of the plane.
  StarPlane(const StarGrid& grid, double xi0, const cvec& p2_samples);

  std::complex<double> evaluate(const HFn& p1, double xi1, double xi2) const;
  double xi0() const { return xi0_; }
  const cvec& partial_kernel() const { return kernel_; }

 private:
  void transform(cvec samples);
  StarGrid grid_;
  double xi0_;
  cvec kernel_;
};

/// (p1 * p2)(xi) for x-independent symbols.
std::complex<double> star_product(const HFn& p1, const HFn& p2, const HPoint& xi, const StarGrid& grid);
/// Checks the integrability window -4 < m1, m2, m1 + m2 < 0.
std::complex<double> star_product(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const HPoint& xi,
                                  const StarGrid& grid);
/// Batch evaluation; points sharing xi_0 share one transform.
std::vector<std::complex<double>> star_product(const HFn& p1, const HFn& p2, const std::vector<HPoint>& points,
                                               const StarGrid& grid);

struct DegreeFit {
  double expected = 0.0;
  double fitted = 0.0;         // mean over rays of the log-log slope
  double worst_deviation = 0.0;  // max over rays of |slope - expected|
  double grid_drift = 0.0;     // max relative change of sampled values from n to 2n
  std::vector<double> per_ray;
};

/// Unit-gauge directions with xi_0 in [0.3, 0.95] used for fits.
std::vector<HPoint> fit_rays();
/// Dilation factors t = 1, 1.25, ..., 2.
std::vector<double> fit_scales();

/// Least-squares slope of log |p1 * p2 (t.w)| against log t over fit_rays x fit_scales,
/// at grid n, with the drift measured against 2n at the same L.
DegreeFit fit_star_degree(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid);

/// Relative deviation of the kappa = 0 product from the pointwise product, max over the fit samples.
double abelian_deviation(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid);

struct CommutatorReport {
  double commutator = 0.0;   // max |p1*p2 - p2*p1| / max |p1*p2| over samples
  double noise_floor = 0.0;  // same quantity with kappa = 0
};
CommutatorReport star_commutator(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid);

struct ProbeConfig {
  HPoint xi_ref{1.0, 0.0, 0.0};
  HPoint axis{0.0, 1.0, 0.0};
  double angle = 0.3;
  double m1 = -2.0;
  double m2 = -1.5;
  double amplitude = 1.0;
};

struct ProbeReport {
  double classical_diff = 0.0;
  double heisenberg_diff = 0.0;
  double noise_floor = 0.0;
  double grid_drift = 0.0;
};

/// Angle between the gauge-normalised direction of xi and `axis`.
double cone_angle(const HPoint& xi, const HPoint& axis);
/// Smooth bump in the cone angle times ||xi||^m2; supported in the open cone.
HHomogeneousSymbol cone_perturbation(const ProbeConfig& cfg);

/// Changes p2 by a perturbation supported in a cone away from xi_ref and
/// measures the change of p1 p2 and p1 * p2 at xi_ref. p1 = ||xi||^m1,
/// p2 = ||xi||^m2. The noise floor is the same Heisenberg probe at kappa = 0.
ProbeReport microlocality_probe(const ProbeConfig& cfg, const StarGrid& grid);

struct GapConfig {
  double rho = 1.0;
  double epsilon = 1e-4;
  double xi0 = 0.05;   // plane of the reference covector
  double angle = 0.4;  // direction of xi_ref' in that plane; xi_ref has unit gauge
  double kappa = 1.0;
  int n = 2048;
  double dv = 0.02;
};

struct GapReport {
  HPoint xi_ref{};
  std::vector<double> lambdas;
  std::vector<double> fractions;
  std::size_t stencil_points = 0;
  double stencil_radius = 0.0;  // largest |eta - xi_ref'| in S
  bool monotone = true;
};

/// Stencil of p1 * q at xi_ref with p1 = ||xi||^-2: the weight of q(xi_0, eta) is
/// c^-2 |K1(xi_0; J(eta - xi')/c)|. S = {weight >= epsilon max weight};
/// reports |S \ Theta_lambda| / |S| with Theta_lambda = {rho ||xi||^2 > lambda}.
GapReport parametric_domain_gap(const GapConfig& cfg, const std::vector<double>& lambdas);

struct InverseConfig {
  double lambda = -1.0;
  std::vector<double> planes{0.5, 1.0, 2.0};
  StarGrid grid{16.0, 128, 1.0};
  int max_iterations = 400;
  double tolerance = 1e-7;
};

struct InversePlane {
  double xi0 = 0.0;
  cvec q;                       // on the covector grid of the plane
  std::vector<double> history;  // relative residual per iteration
  double annulus_residual = 0.0;
  bool converged = false;
};

struct InverseReport {
  std::vector<InversePlane> planes;
  double annulus_residual = 0.0;  // max over planes
  bool monotone = true;
  bool converged = true;
};

/// Solves (p2 - lambda) * q = 1 in each plane for p2 = sigma_1^2 + sigma_2^2,
/// lambda < 0, with 1 replaced by the edge-tapered constant (a mollified delta
/// kernel). Right-preconditioned GCR with the pointwise inverse.
InverseReport star_inverse_negative_lambda(const InverseConfig& cfg);

/// Covector coordinate of index l in a plane of the grid.
double plane_freq(const StarGrid& grid, int l);

}  // namespace cpw
