#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "cpw/errors.hpp"
#include "cpw/heisenberg.hpp"
#include "cpw/star.hpp"
#include "cpw/symbol.hpp"

using namespace cpw;
using cd = std::complex<double>;

TEST_CASE("dilations, gauge and weighted order") {
  const HPoint d = dilate({1, 1, 1}, 2.0);
  CHECK(d == HPoint{4, 2, 2});
  CHECK(dilate({0.3, -1, 2}, 1.0) == HPoint{0.3, -1, 2});
  const HPoint back = dilate(dilate({0.3, -1, 2}, 2.0), 0.5);
  CHECK(back == HPoint{0.3, -1, 2});
  CHECK_THROWS_AS(dilate({1, 1, 1}, 0.0), DomainError);

  CHECK(hnorm({1, 0, 0}) == 1.0);
  CHECK(std::abs(hnorm({0, 1, 1}) - std::pow(2.0, 0.25)) < 1e-15);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3), t(0.1, 5);
  for (int i = 0; i < 100; ++i) {
    const HPoint xi{u(rng), u(rng), u(rng)};
    const double s = t(rng);
    CHECK(std::abs(hnorm(dilate(xi, s)) - s * hnorm(xi)) < 1e-14 * s * hnorm(xi));
  }
  CHECK(weighted_order(MultiIndex({1, 0, 2})) == 4);
  CHECK(weighted_order(MultiIndex({0, 0, 0})) == 0);
  CHECK(weighted_order(MultiIndex({0, 3, 1})) == 4);
}

TEST_CASE("group law") {
  for (double kappa : {1.0, 2.0}) {
    auto d = group_law_defect(GroupLaw(kappa), 1000, 9);
    CHECK(d.associativity < 1e-12);
    CHECK(d.inverse < 1e-12);
  }
}

TEST_CASE("expressions and homogeneous symbols") {
  HExpr e("2*xi1^2 - xi0/4 + norm^-2 * (1 + xi2)");
  const double v = e(1.0, 2.0, 0.5);
  CHECK(std::abs(v - (8.0 - 0.25 + std::pow(hnorm(1.0, 2.0, 0.5), -2.0) * 1.5)) < 1e-14);
  CHECK_THROWS(HExpr("xi3 + 1"));
  CHECK_THROWS(HExpr("(xi1"));
  CHECK_NOTHROW(HHomogeneousSymbol("norm^(-1.5)", -1.5));
  CHECK_NOTHROW(HHomogeneousSymbol("xi0 + xi1^2", 2.0));
  CHECK_THROWS_AS(HHomogeneousSymbol("xi0 + xi1", 2.0), DomainError);
}

TEST_CASE("expansion remainder") {
  HHomogeneousSymbol lead("norm^2", 2.0);
  auto own = expansion_remainder_check(lead.function(), {lead}, 1);
  CHECK(own.constant == 0.0);
  CHECK_FALSE(own.divergent);

  HFn full = [](double a, double b, double c) { return std::pow(hnorm(a, b, c), 2) + 1.0; };
  auto one = expansion_remainder_check(full, {lead}, 1);
  CHECK(std::abs(one.constant - 1.0) < 1e-12);
  CHECK_FALSE(one.divergent);

  HHomogeneousSymbol constant("1", 0.0);
  auto missing = expansion_remainder_check(full, {constant}, 1);
  CHECK(missing.divergent);
}

TEST_CASE("kernel transforms") {
  HHomogeneousSymbol p("norm^(-1)", -1.0);
  auto rt = symbol_kernel_round_trip(p, 8.0, 128, 12, 5);
  CHECK(rt.grid_nodes > 100);
  CHECK(rt.max_rel_error < 5e-2);
  CHECK(rt.even_defect < 1e-12);
  // off the grid the spectrum is trigonometrically interpolated; only sanity-bounded
  CHECK(rt.offgrid_rel_error < 0.5);

  HHomogeneousSymbol zero(HFn([](double, double, double) { return 0.0; }), -1.0, "zero");
  auto k = symbol_to_kernel(zero, 4.0, 16);
  for (const auto& v : k.data) CHECK(v == cd(0.0));
  CHECK_THROWS_AS(symbol_to_kernel(HHomogeneousSymbol("norm^(-5)", -5.0), 4.0, 16), DomainError);

  // to_frequency and to_space are inverse to each other.
  auto f = sample_grid(3.0, 16, [](const HPoint& x) { return cd(std::exp(-x[0] * x[0] - x[1] * x[1]), x[2]); });
  auto g = to_space(to_frequency(f), 3.0, 16);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.data.size(); ++i) worst = std::max(worst, std::abs(f.data[i] - g.data[i]));
  CHECK(worst < 1e-12);
}

namespace {

KernelGrid bump(int n) {
  return sample_grid(4.0, n, [](const HPoint& x) {
    return cd(std::exp(-1.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])) * (1.0 + 0.3 * x[1]), 0.0);
  });
}

double max_interior_diff(const KernelGrid& a, const KernelGrid& b) {
  double worst = 0.0;
  const int n = a.n;
  for (int i = 2; i < n - 2; ++i) {
    for (int j = 2; j < n - 2; ++j) {
      for (int k = 2; k < n - 2; ++k) worst = std::max(worst, std::abs(a.data[a.index(i, j, k)] - b.data[b.index(i, j, k)]));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("quantization") {
  const double kappa = 1.0;
  const auto f = bump(32);
  auto id = quantize(parse_poly(3, "1", 0), f, kappa);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.data.size(); ++i) worst = std::max(worst, std::abs(id.values.data[i] - f.data[i]));
  CHECK(worst < 1e-12);

  // sigma_1 against finite differences of X_1 f / i: O(h^2).
  double prev = 0.0;
  for (int n : {24, 48}) {
    const auto g = bump(n);
    const auto spectral = quantize(parse_poly(3, "xi1", 0), g, kappa).values;
    const double err = max_interior_diff(spectral, frame_field_fd(1, g, kappa));
    if (prev > 0.0) CHECK(prev / err > 3.0);
    prev = err;
  }

  // sublaplacian on a real bump is real.
  auto lap = quantize(parse_poly(3, "xi1^2 + xi2^2", 0), f, kappa);
  double imag = 0.0, real = 0.0;
  for (const auto& v : lap.values.data) {
    imag = std::max(imag, std::abs(v.imag()));
    real = std::max(real, std::abs(v.real()));
  }
  CHECK(imag < 1e-8 * real);

  // polynomial path against the direct double sum.
  const auto small = bump(10);
  auto poly = quantize(parse_poly(3, "xi1*xi2 + x0*xi0 + 2", 0), small, kappa);
  auto direct = quantize_direct([](const HPoint& x, const HPoint& s) { return cd(s[1] * s[2] + x[0] * s[0] + 2.0); },
                                small, kappa);
  double dev = 0.0, top = 0.0;
  for (std::size_t i = 0; i < small.data.size(); ++i) {
    dev = std::max(dev, std::abs(poly.values.data[i] - direct.values.data[i]));
    top = std::max(top, std::abs(direct.values.data[i]));
  }
  CHECK(dev < 1e-10 * top);
}

TEST_CASE("frame bracket is second order") {
  const double e1 = frame_bracket_defect(bump(24), 1.0);
  const double e2 = frame_bracket_defect(bump(48), 1.0);
  CHECK(e1 / e2 > 3.0);
}

namespace {

// p(xi) = exp(-xi_0^2/2) exp(-|eta - shift|^2 / (2 alpha)).
struct Gaussian {
  double alpha;
  double s1, s2;
  double operator()(double a, double b, double c) const {
    return std::exp(-0.5 * a * a) * std::exp(-((b - s1) * (b - s1) + (c - s2) * (c - s2)) / (2.0 * alpha));
  }
  // Inverse Fourier transform in all three variables.
  cd kernel(const HPoint& x) const {
    const double pi = std::numbers::pi;
    return std::exp(-0.5 * x[0] * x[0]) / std::sqrt(2.0 * pi) * alpha / (2.0 * pi) *
           std::exp(-0.5 * alpha * (x[1] * x[1] + x[2] * x[2])) * std::polar(1.0, x[1] * s1 + x[2] * s2);
  }
};

// Closed form of the Gaussian integral over (h', k') in R^4.
cd gaussian_star(const Gaussian& g1, const Gaussian& g2, const HPoint& xi, double kappa) {
  const double c = 0.5 * kappa * xi[0];
  Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
  const cd ic(0.0, c);
  M(0, 0) = M(1, 1) = g1.alpha;
  M(2, 2) = M(3, 3) = g2.alpha;
  // h^T J k with J k = (k_2, -k_1)
  M(0, 3) = M(3, 0) = ic;
  M(1, 2) = M(2, 1) = -ic;
  Eigen::Vector4cd b(xi[1] - g1.s1, xi[2] - g1.s2, xi[1] - g2.s1, xi[2] - g2.s2);
  const cd quad = b.transpose() * M.partialPivLu().solve(b);
  const double a = g1.alpha * g2.alpha;
  return std::exp(-xi[0] * xi[0]) * a / (a + c * c) * std::exp(-0.5 * quad);
}

}  // namespace

TEST_CASE("star product against the Gaussian closed form") {
  const Gaussian g1{1.0, 0.0, 0.0}, g2{0.5, 0.3, -0.2};
  const HFn f1 = g1, f2 = g2;
  for (double kappa : {0.0, 1.0, 2.0}) {
    for (const HPoint& xi : {HPoint{1.3, 0.4, -0.7}, HPoint{-0.6, 0.1, 0.9}, HPoint{2.0, -0.5, 0.2}}) {
      const cd exact = gaussian_star(g1, g2, xi, kappa);
      const cd num = star_product(f1, f2, xi, StarGrid{16.0, 128, kappa});
      CHECK(std::abs(num - exact) < 1e-8 * std::abs(exact));
    }
  }
}

TEST_CASE("star product against the group convolution of kernels") {
  // Brute force of int int K1(h) K2(k) e^{-i (h.k) . xi} dh dk with the group law.
  const Gaussian g1{1.0, 0.0, 0.0}, g2{0.5, 0.3, -0.2};
  const double kappa = 1.0;
  const GroupLaw law(kappa);
  const int n = 20;
  const double L = 5.5, h = 2 * L / (n - 1);
  std::vector<HPoint> pts;
  std::vector<cd> k1, k2;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const HPoint x{-L + a * h, -L + b * h, -L + c * h};
        pts.push_back(x);
        k1.push_back(g1.kernel(x));
        k2.push_back(g2.kernel(x));
      }
    }
  }
  const HPoint xi{1.1, 0.5, -0.3};
  cd sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cd inner = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const HPoint g = law.multiply(pts[i], pts[j]);
      inner += k2[j] * std::polar(1.0, -(g[0] * xi[0] + g[1] * xi[1] + g[2] * xi[2]));
    }
    sum += k1[i] * inner;
  }
  sum *= std::pow(h, 6);
  const cd num = star_product(HFn(g1), HFn(g2), xi, StarGrid{16.0, 128, kappa});
  CHECK(std::abs(num - sum) < 1e-4 * std::abs(sum));
  CHECK(std::abs(num - gaussian_star(g1, g2, xi, kappa)) < 1e-8 * std::abs(num));
}

TEST_CASE("star product of homogeneous symbols") {
  const StarGrid grid;
  HHomogeneousSymbol p1("norm^(-4)*(2*xi1^2 + xi2^2 + norm^2)", -2.0), p2("norm^(-1.5)", -1.5);
  auto fit = fit_star_degree(p1, p2, grid);
  CHECK(fit.worst_deviation < 0.1);
  CHECK(fit.grid_drift < 0.1);
  CHECK(abelian_deviation(p1, p2, grid) < 0.02);
  auto cm = star_commutator(p1, p2, grid);
  CHECK(cm.commutator > 10.0 * cm.noise_floor);
  CHECK_THROWS_AS(star_product(p1, HHomogeneousSymbol("norm^(-2.5)", -2.5), {1, 0, 0}, grid), DomainError);
}

TEST_CASE("microlocality probe") {
  const StarGrid grid;
  ProbeConfig cfg;
  auto rep = microlocality_probe(cfg, grid);
  CHECK(rep.classical_diff == 0.0);
  CHECK(rep.heisenberg_diff > 10.0 * rep.noise_floor);
  CHECK(rep.grid_drift < 0.1);

  ProbeConfig none = cfg;
  none.amplitude = 0.0;
  auto zero = microlocality_probe(none, grid);
  CHECK(zero.classical_diff == 0.0);
  CHECK(zero.heisenberg_diff == 0.0);

  ProbeConfig bad = cfg;
  bad.axis = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(microlocality_probe(bad, grid), DomainError);
}

TEST_CASE("parametric domain gap") {
  GapConfig cfg;
  auto rep = parametric_domain_gap(cfg, {0.0, 0.25, 0.5, 1.0, 2.0});
  CHECK(rep.fractions[0] == 0.0);
  for (std::size_t i = 1; i < rep.fractions.size(); ++i) CHECK(rep.fractions[i] > 0.0);
  CHECK(rep.monotone);
}

TEST_CASE("star inverse for negative lambda") {
  InverseConfig cfg;
  cfg.planes = {1.0};
  cfg.lambda = -1.0;
  auto rep = star_inverse_negative_lambda(cfg);
  CHECK(rep.converged);
  CHECK(rep.monotone);
  CHECK(rep.annulus_residual < 5e-2);

  // dominant constant term for large |lambda|
  InverseConfig far = cfg;
  far.lambda = -1e4;
  auto big = star_inverse_negative_lambda(far);
  const auto& q = big.planes[0].q;
  const int n = far.grid.n;
  const double deta = far.grid.freq_spacing();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double e1 = (i - n / 2) * deta, e2 = (j - n / 2) * deta;
      if (e1 * e1 + e2 * e2 > 1.0) continue;
      CHECK(std::abs(q[static_cast<std::size_t>(i * n + j)] * 1e4 - 1.0) < 0.05);
    }
  }

  // q(t.xi; t^2 lambda) = t^-2 q(xi; lambda) with the grid scaled along.
  InverseConfig scaled = cfg;
  scaled.planes = {4.0};
  scaled.lambda = -4.0;
  scaled.grid.L = cfg.grid.L / 2.0;
  auto a = star_inverse_negative_lambda(cfg), b = star_inverse_negative_lambda(scaled);
  double dev = 0.0, top = 0.0;
  for (std::size_t i = 0; i < a.planes[0].q.size(); ++i) {
    dev = std::max(dev, std::abs(4.0 * b.planes[0].q[i] - a.planes[0].q[i]));
    top = std::max(top, std::abs(a.planes[0].q[i]));
  }
  CHECK(dev < 1e-5 * top);
  CHECK_THROWS_AS(star_inverse_negative_lambda(InverseConfig{0.5}), DomainError);
}
