#include "cpw/contour.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cpw/errors.hpp"

namespace cpw {

Sector::Sector(double theta, double theta_prime) : theta_(theta), theta_prime_(theta_prime) {
  constexpr double pi = std::numbers::pi;
  if (!(0.0 < theta && theta < pi && pi < theta_prime && theta_prime < 2.0 * pi)) {
    throw DomainError("sector must satisfy 0 < theta < pi < theta' < 2 pi");
  }
}

bool Sector::contains(std::complex<double> lambda) const {
  if (lambda == 0.0) return false;
  double a = std::arg(lambda);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return theta_ < a && a < theta_prime_;
}

ConicRegion::ConicRegion(Sector sector, Rational rho, int order)
    : sector_(sector), rho_(std::move(rho)), order_(order) {
  if (sgn(rho_) <= 0) throw DomainError("rho must be positive");
  if (order_ <= 0) throw DomainError("order must be positive");
}

bool ConicRegion::contains(std::span<const double> xi, std::complex<double> lambda) const {
  double norm2 = 0.0;
  for (double v : xi) norm2 += v * v;
  if (norm2 == 0.0 && lambda == 0.0) throw DomainError("(xi, lambda) = (0, 0) is excluded");
  if (std::abs(lambda) < to_double(rho_) * std::pow(norm2, 0.5 * order_)) return true;
  return sector_.contains(lambda);
}

namespace {

constexpr std::array<double, 4> kGaussNodes = {-0.86113631159405257522, -0.33998104358485626480,
                                               0.33998104358485626480, 0.86113631159405257522};
constexpr std::array<double, 4> kGaussWeights = {0.34785484513745385737, 0.65214515486254614263,
                                                 0.65214515486254614263, 0.34785484513745385737};

// Composite Gauss-Legendre nodes on [a, b] with `count` points.
template <typename F>
void composite(double a, double b, int count, F&& emit) {
  const int panels = count / 4;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t q = 0; q < 4; ++q) emit(mid + 0.5 * h * kGaussNodes[q], 0.5 * h * kGaussWeights[q]);
  }
}

}  // namespace

std::vector<ContourNode> contour_nodes(const Contour& c) {
  using Seg = ContourNode::Segment;
  constexpr double pi = std::numbers::pi;
  const std::complex<double> I(0.0, 1.0);
  if (!(c.r > 0.0)) throw DomainError("contour radius must be positive");
  if (c.nodes_per_segment < 64 || c.nodes_per_segment % 4 != 0) {
    throw DomainError("contour needs at least 64 nodes per segment, in multiples of 4");
  }
  const double big = c.outer_radius();
  if (!(big > c.r)) throw DomainError("outer radius must exceed r");
  const int n = c.nodes_per_segment;
  const double span = std::log(big / c.r);

  std::vector<ContourNode> nodes;
  nodes.reserve(static_cast<std::size_t>(4 * n));
  // Rays in the variable u = log(rho / r).
  composite(0.0, span, n, [&](double u, double w) {
    const double rho = c.r * std::exp(u);
    nodes.push_back({Seg::IncomingRay, -rho, {std::log(rho), pi}, w * rho});
  });
  composite(-pi, pi, n, [&](double t, double w) {
    const std::complex<double> lam = std::polar(c.r, t);
    nodes.push_back({Seg::Circle, lam, {std::log(c.r), t}, -w * I * lam});
  });
  composite(0.0, span, n, [&](double u, double w) {
    const double rho = c.r * std::exp(u);
    nodes.push_back({Seg::OutgoingRay, -rho, {std::log(rho), -pi}, -w * rho});
  });
  composite(-pi, pi, n, [&](double t, double w) {
    const std::complex<double> lam = std::polar(big, t);
    nodes.push_back({Seg::ClosingArc, lam, {std::log(big), t}, w * I * lam});
  });
  return nodes;
}

}  // namespace cpw
