#include "cpw/oracle.hpp"

#include <cmath>
#include <numbers>

#include "cpw/errors.hpp"

namespace cpw {

TorusOperator::TorusOperator(ClassicalSymbol symbol) : symbol_(std::move(symbol)) {
  const std::size_t d = symbol_.dim();
  const Poly full = symbol_.full();
  if (full.depends_on(0, d)) throw DomainError("torus operators need constant coefficients");
  if (!full.is_real()) throw DomainError("torus operator symbol must be real");
}

namespace {

template <typename F>
void for_lattice_ball(std::size_t d, int radius, F&& visit) {
  std::vector<int> k(d, -radius);
  while (true) {
    long n2 = 0;
    for (int v : k) n2 += static_cast<long>(v) * v;
    if (n2 <= static_cast<long>(radius) * radius) visit(k);
    std::size_t i = d;
    while (i > 0 && k[i - 1] == radius) k[--i] = -radius;
    if (i == 0) break;
    ++k[i - 1];
  }
}

}  // namespace

std::vector<LatticeEigenvalue> eigenvalues(const TorusOperator& op, int radius) {
  if (radius < 1) throw DomainError("lattice radius must be at least 1");
  const std::size_t d = op.dim();
  const Poly full = op.symbol().full();
  std::vector<LatticeEigenvalue> out;
  std::vector<Rational> pt(2 * d, Rational(0));
  for_lattice_ball(d, radius, [&](const std::vector<int>& k) {
    bool zero = true;
    for (std::size_t i = 0; i < d; ++i) {
      pt[d + i] = k[i];
      zero = zero && k[i] == 0;
    }
    Rational v = full.eval(pt).re;
    if (!zero && sgn(v) <= 0) throw NonEllipticError("nonpositive eigenvalue at a nonzero lattice point");
    out.push_back({k, std::move(v)});
  });
  return out;
}

std::vector<LatticePower> spectral_complex_power(const TorusOperator& op, std::complex<double> s, int radius) {
  std::vector<LatticePower> out;
  for (const auto& e : eigenvalues(op, radius)) {
    const double v = to_double(e.value);
    std::complex<double> val = 0.0;
    if (v > 0.0) val = std::exp(s * std::log(v));
    out.push_back({e.k, val});
  }
  return out;
}

PowerSymbolExpansion binomial_expansion_oracle(const ClassicalSymbol& p, int depth) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  const std::size_t d = p.dim();
  if (p.full().depends_on(0, d)) throw DomainError("binomial oracle needs constant coefficients");
  const std::size_t nv = 2 * d;

  // powers[n][j] = [t^j] (sum_{i>=1} p_{m-i} t^i)^n
  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(depth) + 1,
                                        std::vector<Poly>(static_cast<std::size_t>(depth) + 1, Poly(nv)));
  powers[0][0] = Poly::constant(nv, GaussRational(1));
  for (int n = 1; n <= depth; ++n) {
    for (int j = n; j <= depth; ++j) {
      Poly acc(nv);
      for (int i = 1; i <= j - (n - 1); ++i) {
        const Poly& lower = p.part(i);
        if (lower.is_zero()) continue;
        acc += lower * powers[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j - i)];
      }
      powers[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = std::move(acc);
    }
  }

  PowerSymbolExpansion out;
  out.dim = d;
  out.order = p.order();
  out.base = p.principal();
  for (int j = 0; j <= depth; ++j) {
    std::vector<PowerBasisTerm> part;
    for (int n = 0; n <= j; ++n) {
      const Poly& num = powers[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
      if (num.is_zero()) continue;
      part.push_back({num, Rational(1), Rational(-n), SPoly::binomial(static_cast<unsigned>(n))});
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

OracleComparison compare_with_oracle(const ClassicalSymbol& p, int depth) {
  const auto seeley = complex_power_terms(p, depth);
  const auto oracle = binomial_expansion_oracle(p, depth);
  OracleComparison cmp;
  for (int j = 0; j <= depth; ++j) {
    auto diff = power_terms_difference(seeley.parts[static_cast<std::size_t>(j)],
                                       oracle.parts[static_cast<std::size_t>(j)], p.principal());
    cmp.depth_match.push_back(diff.empty());
    cmp.match = cmp.match && diff.empty();
    cmp.differences.push_back(std::move(diff));
  }
  return cmp;
}

namespace {

struct Sums {
  std::complex<double> total = 0.0;
  std::complex<double> arc = 0.0;
};

Sums integrate(const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& f,
               const Contour& c) {
  Sums s;
  for (const auto& n : contour_nodes(c)) {
    const auto v = f(n.lambda, n.log_lambda) * n.weight;
    s.total += v;
    if (n.segment == ContourNode::Segment::ClosingArc) s.arc += v;
  }
  return s;
}

}  // namespace

QuadratureResult contour_quadrature(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& f, const Contour& contour) {
  const std::complex<double> scale(0.0, 0.5 / std::numbers::pi);
  const Sums fine = integrate(f, contour);
  Contour other = contour;
  const int half = (contour.nodes_per_segment / 2) / 4 * 4;
  other.nodes_per_segment = half >= 64 ? half : 2 * contour.nodes_per_segment;
  const Sums ref = integrate(f, other);
  QuadratureResult out;
  out.value = scale * fine.total;
  out.discretization_error = std::abs(scale * (fine.total - ref.total));
  out.tail = std::abs(scale * fine.arc);
  return out;
}

QuadratureResult residue_by_quadrature(int pole, std::complex<double> s, double mu, int nodes_per_segment) {
  if (pole < 1) throw DomainError("pole order must be at least 1");
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  Contour c;
  c.r = 0.5 * mu;
  c.nodes_per_segment = nodes_per_segment;
  c.r_max = 1e3 * mu;
  auto f = [&](std::complex<double>, std::complex<double> log_lambda) {
    const std::complex<double> lam = std::exp(log_lambda);
    return std::exp(s * log_lambda) * std::pow(mu - lam, -pole);
  };
  return contour_quadrature(f, c);
}

}  // namespace cpw
