#include "cpw/star.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cpw/errors.hpp"

namespace cpw {

namespace {

constexpr double kPi = std::numbers::pi;

// K(k_l) = (2 pi)^-2 d_eta^2 sum_j s(eta_j) e^{i k_l . eta_j} with eta_j = (j - n/2) d_eta,
// k_l = (l - n/2) 2 pi / (n d_eta); n even so the global phase is 1.
cvec plane_forward(cvec samples, int n, double d_eta) {
  const std::vector<int> shape{n, n};
  checkerboard(samples, shape);
  fft_inplace(samples, shape, +1);
  checkerboard(samples, shape);
  const double scale = d_eta * d_eta / (4.0 * kPi * kPi);
  for (auto& v : samples) v *= scale;
  return samples;
}

// Inverse of plane_forward: s(eta_j) = h^2 sum_l K(k_l) e^{-i k_l . eta_j}.
cvec plane_inverse(cvec kernel, int n, double h) {
  const std::vector<int> shape{n, n};
  checkerboard(kernel, shape);
  fft_inplace(kernel, shape, -1);
  checkerboard(kernel, shape);
  for (auto& v : kernel) v *= h * h;
  return kernel;
}

void check_grid(const StarGrid& g) {
  if (g.n < 8 || g.n % 2 != 0) throw DomainError("star grid needs an even number of points, at least 8");
  if (!(g.L > 0.0)) throw DomainError("star grid half-width must be positive");
}

void check_window(double m1, double m2) {
  auto inside = [](double m) { return m > -4.0 && m < 0.0; };
  if (!inside(m1) || !inside(m2) || !inside(m1 + m2)) {
    throw DomainError("degrees must satisfy -4 < m1, m2, m1 + m2 < 0");
  }
}

}  // namespace

double StarGrid::freq_spacing() const { return 2.0 * kPi / (n * spacing()); }

double plane_freq(const StarGrid& grid, int l) { return (l - grid.n / 2) * grid.freq_spacing(); }

StarPlane::StarPlane(const StarGrid& grid, double xi0, const HFn& p2) : grid_(grid), xi0_(xi0) {
  check_grid(grid);
  const int n = grid.n;
  const double top = (n / 2) * grid.freq_spacing();
  cvec s(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    const double e1 = plane_freq(grid, a);
    const double w1 = edge_taper(e1 / top);
    for (int b = 0; b < n; ++b) {
      const double e2 = plane_freq(grid, b);
      const double w = w1 * edge_taper(e2 / top);
      s[static_cast<std::size_t>(a * n + b)] = w == 0.0 ? 0.0 : w * p2(xi0, e1, e2);
    }
  }
  transform(std::move(s));
}

StarPlane::StarPlane(const StarGrid& grid, double xi0, const cvec& p2_samples) : grid_(grid), xi0_(xi0) {
  check_grid(grid);
  if (p2_samples.size() != static_cast<std::size_t>(grid.n) * grid.n) throw DomainError("plane sample count mismatch");
  transform(p2_samples);
}

void StarPlane::transform(cvec samples) { kernel_ = plane_forward(std::move(samples), grid_.n, grid_.freq_spacing()); }

std::complex<double> StarPlane::evaluate(const HFn& p1, double xi1, double xi2) const {
  const int n = grid_.n;
  const double h = grid_.spacing();
  const double c = 0.5 * grid_.kappa * xi0_;
  std::vector<std::complex<double>> e1(static_cast<std::size_t>(n)), e2(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const double k = (l - n / 2) * h;
    e1[static_cast<std::size_t>(l)] = std::polar(1.0, -k * xi1);
    e2[static_cast<std::size_t>(l)] = std::polar(1.0, -k * xi2);
  }
  std::complex<double> sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const double k1 = (a - n / 2) * h;
    std::complex<double> row = 0.0;
    for (int b = 0; b < n; ++b) {
      const auto kv = kernel_[static_cast<std::size_t>(a * n + b)];
      if (kv == 0.0) continue;
      const double k2 = (b - n / 2) * h;
      row += p1(xi0_, xi1 + c * k2, xi2 - c * k1) * kv * e2[static_cast<std::size_t>(b)];
    }
    sum += row * e1[static_cast<std::size_t>(a)];
  }
  return sum * (h * h);
}

std::complex<double> star_product(const HFn& p1, const HFn& p2, const HPoint& xi, const StarGrid& grid) {
  return StarPlane(grid, xi[0], p2).evaluate(p1, xi[1], xi[2]);
}

std::complex<double> star_product(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const HPoint& xi,
                                  const StarGrid& grid) {
  check_window(p1.degree(), p2.degree());
  return star_product(p1.function(), p2.function(), xi, grid);
}

std::vector<std::complex<double>> star_product(const HFn& p1, const HFn& p2, const std::vector<HPoint>& points,
                                               const StarGrid& grid) {
  std::map<double, std::vector<std::size_t>> planes;
  for (std::size_t i = 0; i < points.size(); ++i) planes[points[i][0]].push_back(i);
  std::vector<std::complex<double>> out(points.size());
  for (const auto& [xi0, idx] : planes) {
    const StarPlane plane(grid, xi0, p2);
    for (std::size_t i : idx) out[i] = plane.evaluate(p1, points[i][1], points[i][2]);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<HPoint> fit_rays() {
  const std::vector<std::pair<double, double>> spec{{0.3, 0.35}, {0.3, 2.2}, {0.5, 1.2},  {0.5, 4.0},
                                                    {0.7, 0.8},  {0.7, 3.3}, {0.95, 1.6}, {0.95, 5.2}};
  std::vector<HPoint> rays;
  for (const auto& [w0, phi] : spec) {
    const double c = std::cos(phi), s = std::sin(phi);
    const double r = std::pow((1.0 - w0 * w0) / (c * c * c * c + s * s * s * s), 0.25);
    rays.push_back({w0, r * c, r * s});
  }
  return rays;
}

std::vector<double> fit_scales() { return {1.0, 1.25, 1.5, 1.75, 2.0}; }

namespace {

std::vector<HPoint> fit_samples() {
  std::vector<HPoint> pts;
  for (const auto& w : fit_rays()) {
    for (double t : fit_scales()) pts.push_back(dilate(w, t));
  }
  return pts;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

StarGrid refined(const StarGrid& g) { return {g.L, 2 * g.n, g.kappa}; }

}  // namespace

DegreeFit fit_star_degree(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid) {
  check_window(p1.degree(), p2.degree());
  const auto pts = fit_samples();
  const auto coarse = star_product(p1.function(), p2.function(), pts, grid);
  const auto fine = star_product(p1.function(), p2.function(), pts, refined(grid));
  DegreeFit fit;
  fit.expected = p1.degree() + p2.degree();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    fit.grid_drift = std::max(fit.grid_drift, std::abs(fine[i] - coarse[i]) / std::abs(fine[i]));
  }
  const auto scales = fit_scales();
  std::vector<double> lx;
  for (double t : scales) lx.push_back(std::log(t));
  const std::size_t per = scales.size();
  double total = 0.0;
  for (std::size_t r = 0; r < pts.size() / per; ++r) {
    std::vector<double> ly;
    for (std::size_t j = 0; j < per; ++j) ly.push_back(std::log(std::abs(coarse[r * per + j])));
    const double s = slope(lx, ly);
    fit.per_ray.push_back(s);
    total += s;
    fit.worst_deviation = std::max(fit.worst_deviation, std::abs(s - fit.expected));
  }
  fit.fitted = total / static_cast<double>(fit.per_ray.size());
  return fit;
}

double abelian_deviation(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid) {
  StarGrid flat = grid;
  flat.kappa = 0.0;
  const auto pts = fit_samples();
  const auto vals = star_product(p1.function(), p2.function(), pts, flat);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double exact = p1(pts[i]) * p2(pts[i]);
    worst = std::max(worst, std::abs(vals[i] - exact) / std::abs(exact));
  }
  return worst;
}

CommutatorReport star_commutator(const HHomogeneousSymbol& p1, const HHomogeneousSymbol& p2, const StarGrid& grid) {
  check_window(p1.degree(), p2.degree());
  const auto pts = fit_samples();
  auto measure = [&](const StarGrid& g) {
    const auto ab = star_product(p1.function(), p2.function(), pts, g);
    const auto ba = star_product(p2.function(), p1.function(), pts, g);
    double diff = 0.0, top = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      diff = std::max(diff, std::abs(ab[i] - ba[i]));
      top = std::max(top, std::abs(ab[i]));
    }
    return diff / top;
  };
  StarGrid flat = grid;
  flat.kappa = 0.0;
  return {measure(grid), measure(flat)};
}

// ---------------------------------------------------------------------------

double cone_angle(const HPoint& xi, const HPoint& axis) {
  const double g = hnorm(xi);
  if (g == 0.0) throw DomainError("cone angle undefined at the origin");
  const HPoint w = dilate(xi, 1.0 / g);
  const double dot = w[0] * axis[0] + w[1] * axis[1] + w[2] * axis[2];
  const double nw = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  const double na = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  return std::acos(std::clamp(dot / (nw * na), -1.0, 1.0));
}

HHomogeneousSymbol cone_perturbation(const ProbeConfig& cfg) {
  const HPoint axis = cfg.axis;
  const double angle = cfg.angle, m2 = cfg.m2, amp = cfg.amplitude;
  HFn fn = [=](double a, double b, double c) {
    const HPoint xi{a, b, c};
    const double g = hnorm(xi);
    if (g == 0.0) return 0.0;
    const double r = cone_angle(xi, axis) / angle;
    if (r >= 1.0) return 0.0;
    return amp * std::exp(1.0 - 1.0 / (1.0 - r * r)) * std::pow(g, m2);
  };
  return HHomogeneousSymbol(fn, m2, "cone bump", true);
}

ProbeReport microlocality_probe(const ProbeConfig& cfg, const StarGrid& grid) {
  if (cone_angle(cfg.xi_ref, cfg.axis) <= cfg.angle) {
    throw DomainError("perturbation cone contains the reference covector");
  }
  check_window(cfg.m1, cfg.m2);
  const double m1 = cfg.m1, m2 = cfg.m2;
  const HFn p1 = [m1](double a, double b, double c) { return std::pow(hnorm(a, b, c), m1); };
  const HFn p2 = [m2](double a, double b, double c) { return std::pow(hnorm(a, b, c), m2); };
  const HHomogeneousSymbol dp = cone_perturbation(cfg);
  const HFn dpf = dp.function();
  const HFn p2d = [p2, dpf](double a, double b, double c) { return p2(a, b, c) + dpf(a, b, c); };

  const HPoint& x = cfg.xi_ref;
  ProbeReport rep;
  rep.classical_diff = std::abs(p1(x[0], x[1], x[2]) * p2d(x[0], x[1], x[2]) - p1(x[0], x[1], x[2]) * p2(x[0], x[1], x[2]));
  auto diff = [&](const StarGrid& g) { return std::abs(star_product(p1, p2d, x, g) - star_product(p1, p2, x, g)); };
  rep.heisenberg_diff = diff(grid);
  const double fine = diff(refined(grid));
  rep.grid_drift = std::abs(fine - rep.heisenberg_diff) / fine;
  StarGrid flat = grid;
  flat.kappa = 0.0;
  rep.noise_floor = diff(flat);
  return rep;
}

// ---------------------------------------------------------------------------

GapReport parametric_domain_gap(const GapConfig& cfg, const std::vector<double>& lambdas) {
  if (!(cfg.xi0 > 0.0 && cfg.xi0 < 1.0)) throw DomainError("reference plane must satisfy 0 < xi_0 < 1");
  if (!(cfg.rho > 0.0) || !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw DomainError("need rho > 0, 0 < epsilon < 1");
  if (cfg.n < 8 || cfg.n % 2 != 0) throw DomainError("gap grid needs an even number of points");
  for (double l : lambdas) {
    if (l < 0.0) throw DomainError("lambda sweep must be non-negative");
  }
  const int n = cfg.n;
  const double c0 = std::cos(cfg.angle), s0 = std::sin(cfg.angle);
  const double r = std::pow((1.0 - cfg.xi0 * cfg.xi0) / (c0 * c0 * c0 * c0 + s0 * s0 * s0 * s0), 0.25);
  GapReport rep;
  rep.xi_ref = {cfg.xi0, r * c0, r * s0};
  const double c = 0.5 * cfg.kappa * cfg.xi0;
  if (c == 0.0) throw DomainError("the stencil degenerates to a point at kappa = 0");

  // K1 of p1 = ||xi||^-2 in the plane.
  const double top = (n / 2) * cfg.dv;
  cvec s(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    const double v1 = (a - n / 2) * cfg.dv;
    for (int b = 0; b < n; ++b) {
      const double v2 = (b - n / 2) * cfg.dv;
      const double w = edge_taper(v1 / top) * edge_taper(v2 / top);
      s[static_cast<std::size_t>(a * n + b)] = w == 0.0 ? 0.0 : w / std::sqrt(cfg.xi0 * cfg.xi0 + std::pow(v1, 4) + std::pow(v2, 4));
    }
  }
  const cvec k1 = plane_forward(std::move(s), n, cfg.dv);
  double peak = 0.0;
  for (const auto& v : k1) peak = std::max(peak, std::abs(v));

  // k maps to eta = xi_ref' + c (-k_2, k_1).
  const double hk = 2.0 * kPi / (n * cfg.dv);
  std::vector<double> gauge_sq;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (std::abs(k1[static_cast<std::size_t>(a * n + b)]) < cfg.epsilon * peak) continue;
      const double ka = (a - n / 2) * hk, kb = (b - n / 2) * hk;
      const double u1 = -c * kb, u2 = c * ka;
      const double e1 = rep.xi_ref[1] + u1, e2 = rep.xi_ref[2] + u2;
      rep.stencil_radius = std::max(rep.stencil_radius, std::hypot(u1, u2));
      gauge_sq.push_back(std::sqrt(cfg.xi0 * cfg.xi0 + std::pow(e1, 4) + std::pow(e2, 4)));
    }
  }
  rep.stencil_points = gauge_sq.size();
  for (double lam : lambdas) {
    std::size_t outside = 0;
    for (double g2 : gauge_sq) {
      if (!(cfg.rho * g2 > lam)) ++outside;
    }
    rep.lambdas.push_back(lam);
    rep.fractions.push_back(gauge_sq.empty() ? 0.0 : static_cast<double>(outside) / static_cast<double>(gauge_sq.size()));
  }
  for (std::size_t i = 1; i < rep.fractions.size(); ++i) {
    if (rep.lambdas[i] >= rep.lambdas[i - 1] && rep.fractions[i] < rep.fractions[i - 1]) rep.monotone = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::complex<double> dot(const cvec& a, const cvec& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const cvec& a) { return std::sqrt(std::real(dot(a, a))); }

// (|eta|^2 - lambda) q + 2c eta . T[(Jk) K] + c^2 T[|k|^2 K], K the partial kernel of q.
class SublaplacianPlane {
 public:
  SublaplacianPlane(const StarGrid& g, double xi0, double lambda)
      : n_(g.n), h_(g.spacing()), deta_(g.freq_spacing()), c_(0.5 * g.kappa * xi0), lambda_(lambda) {}

  cvec apply(const cvec& q) const {
    const cvec k = plane_forward(q, n_, deta_);
    cvec a(k.size()), b(k.size()), lap(k.size());
    for (int i = 0; i < n_; ++i) {
      const double k1 = (i - n_ / 2) * h_;
      for (int j = 0; j < n_; ++j) {
        const double k2 = (j - n_ / 2) * h_;
        const std::size_t idx = static_cast<std::size_t>(i * n_ + j);
        a[idx] = k2 * k[idx];   // (Jk)_1
        b[idx] = -k1 * k[idx];  // (Jk)_2
        lap[idx] = (k1 * k1 + k2 * k2) * k[idx];
      }
    }
    const cvec ta = plane_inverse(std::move(a), n_, h_);
    const cvec tb = plane_inverse(std::move(b), n_, h_);
    const cvec tl = plane_inverse(std::move(lap), n_, h_);
    cvec out(q.size());
    for (int i = 0; i < n_; ++i) {
      const double e1 = (i - n_ / 2) * deta_;
      for (int j = 0; j < n_; ++j) {
        const double e2 = (j - n_ / 2) * deta_;
        const std::size_t idx = static_cast<std::size_t>(i * n_ + j);
        out[idx] = (e1 * e1 + e2 * e2 - lambda_) * q[idx] + 2.0 * c_ * (e1 * ta[idx] + e2 * tb[idx]) + c_ * c_ * tl[idx];
      }
    }
    return out;
  }

  double diagonal(int i, int j) const {
    const double e1 = (i - n_ / 2) * deta_, e2 = (j - n_ / 2) * deta_;
    return e1 * e1 + e2 * e2 - lambda_;
  }

 private:
  int n_;
  double h_, deta_, c_, lambda_;
};

}  // namespace

InverseReport star_inverse_negative_lambda(const InverseConfig& cfg) {
  if (!(cfg.lambda < 0.0)) throw DomainError("the star inverse is computed for lambda < 0 only");
  check_grid(cfg.grid);
  const int n = cfg.grid.n;
  const double deta = cfg.grid.freq_spacing();
  const double top = (n / 2) * deta;
  constexpr int kRestart = 60;

  InverseReport rep;
  for (double xi0 : cfg.planes) {
    const SublaplacianPlane op(cfg.grid, xi0, cfg.lambda);
    cvec rhs(static_cast<std::size_t>(n) * n), minv(rhs.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(i * n + j);
        rhs[idx] = edge_taper((i - n / 2) * deta / top) * edge_taper((j - n / 2) * deta / top);
        minv[idx] = 1.0 / op.diagonal(i, j);
      }
    }
    InversePlane plane;
    plane.xi0 = xi0;
    plane.q.assign(rhs.size(), 0.0);
    cvec r = rhs;
    const double bnorm = norm2(rhs);
    std::vector<cvec> zs, ws;
    plane.history.push_back(1.0);
    for (int it = 0; it < cfg.max_iterations; ++it) {
      if (static_cast<int>(ws.size()) == kRestart) {
        zs.clear();
        ws.clear();
      }
      cvec z(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) z[i] = minv[i] * r[i];
      cvec w = op.apply(z);
      for (std::size_t k = 0; k < ws.size(); ++k) {
        const auto beta = dot(ws[k], w);
        for (std::size_t i = 0; i < w.size(); ++i) {
          w[i] -= beta * ws[k][i];
          z[i] -= beta * zs[k][i];
        }
      }
      const double wn = norm2(w);
      if (wn == 0.0) break;
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] /= wn;
        z[i] /= wn;
      }
      const auto alpha = dot(w, r);
      for (std::size_t i = 0; i < r.size(); ++i) {
        plane.q[i] += alpha * z[i];
        r[i] -= alpha * w[i];
      }
      zs.push_back(std::move(z));
      ws.push_back(std::move(w));
      const double rel = norm2(r) / bnorm;
      plane.history.push_back(rel);
      if (rel < cfg.tolerance) {
        plane.converged = true;
        break;
      }
    }
    // Residual of the final iterate, recomputed, on the annulus 1 <= ||xi|| <= 2.
    const cvec aq = op.apply(plane.q);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double g = hnorm(xi0, (i - n / 2) * deta, (j - n / 2) * deta);
        if (g < 1.0 || g > 2.0) continue;
        const std::size_t idx = static_cast<std::size_t>(i * n + j);
        plane.annulus_residual = std::max(plane.annulus_residual, std::abs(aq[idx] - rhs[idx]) / std::abs(rhs[idx]));
      }
    }
    for (std::size_t i = 1; i < plane.history.size(); ++i) {
      if (plane.history[i] > plane.history[i - 1] * (1.0 + 1e-12)) rep.monotone = false;
    }
    rep.converged = rep.converged && plane.converged;
    rep.annulus_residual = std::max(rep.annulus_residual, plane.annulus_residual);
    rep.planes.push_back(std::move(plane));
  }
  return rep;
}

}  // namespace cpw
