#include "cpw/seeley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "cpw/errors.hpp"

namespace cpw {

namespace {

struct RealMonomial {
  double coef;
  std::vector<int> exp;
};

std::vector<RealMonomial> compile_real(const Poly& p) {
  std::vector<RealMonomial> out;
  for (const auto& [e, c] : p.terms()) out.push_back({to_double(c.re), e});
  return out;
}

double eval_real(const std::vector<RealMonomial>& mono, std::span<const double> pt) {
  double sum = 0.0;
  for (const auto& m : mono) {
    double v = m.coef;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      for (int k = 0; k < m.exp[i]; ++k) v *= pt[i];
    }
    sum += v;
  }
  return sum;
}

// Integer lattice points on the boundary of [-K, K]^d.
std::vector<std::vector<int>> cube_boundary(std::size_t d, int K) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, -K);
  while (true) {
    bool on_face = false;
    for (int v : cur) on_face = on_face || v == K || v == -K;
    if (on_face) out.push_back(cur);
    std::size_t i = 0;
    while (i < d && cur[i] == K) cur[i++] = -K;
    if (i == d) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

RhoBound rho_bound(const ClassicalSymbol& p) {
  const std::size_t d = p.dim();
  const int m = p.order();
  const Poly& pm = p.principal();
  if (m <= 0 || m % 2 != 0) throw NonEllipticError("a positive elliptic symbol needs even positive order");
  if (!pm.is_real()) throw NonEllipticError("principal symbol is not real-valued");

  const bool x_dependent = pm.depends_on(0, d);
  const int grid = !x_dependent ? 1 : (d == 1 ? 257 : (d == 2 ? 33 : 9));
  const int K = d == 1 ? 1 : (d == 2 ? 64 : 12);
  const Rational& B = p.box_half_width();

  std::vector<Rational> xs;
  if (grid == 1) {
    xs.emplace_back(0);
  } else {
    for (int i = 0; i < grid; ++i) xs.push_back(B * Rational(2 * i - (grid - 1), grid - 1));
  }
  const auto dirs = cube_boundary(d, K);
  const auto mono = compile_real(pm);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_x(d, 0);
  std::size_t best_dir = 0;
  std::vector<double> pt(2 * d);
  std::vector<std::size_t> xi_idx(d, 0);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) pt[i] = to_double(xs[xi_idx[i]]);
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      double n2 = 0.0;
      for (std::size_t i = 0; i < d; ++i) n2 += static_cast<double>(dirs[k][i]) * dirs[k][i];
      const double inv = 1.0 / std::sqrt(n2);
      for (std::size_t i = 0; i < d; ++i) pt[d + i] = dirs[k][i] * inv;
      const double v = eval_real(mono, pt);
      if (v < best) {
        best = v;
        best_x = xi_idx;
        best_dir = k;
      }
    }
    std::size_t i = 0;
    while (i < d && xi_idx[i] + 1 == xs.size()) xi_idx[i++] = 0;
    if (i == d) break;
    ++xi_idx[i];
  }

  RhoBound out;
  for (std::size_t i = 0; i < d; ++i) out.argmin.push_back(xs[best_x[i]]);
  Rational n2(0);
  for (std::size_t i = 0; i < d; ++i) {
    out.argmin.emplace_back(dirs[best_dir][i]);
    n2 += Rational(dirs[best_dir][i] * dirs[best_dir][i]);
  }
  Rational denom(1);
  for (int k = 0; k < m / 2; ++k) denom *= n2;
  out.rho = pm.eval(out.argmin).re / denom;

  // Lipschitz bound of p_m on box x unit ball.
  const double radius = std::max(to_double(B), 1.0);
  double lip = 0.0;
  for (const auto& mo : mono) {
    int total = 0;
    for (int e : mo.exp) total += e;
    if (total > 0) lip += std::abs(mo.coef) * total * std::pow(radius, total - 1);
  }
  const double hx = grid == 1 ? 0.0 : 2.0 * to_double(B) / (grid - 1) * std::sqrt(static_cast<double>(d)) / 2.0;
  const double hw = d == 1 ? 0.0 : std::sqrt(static_cast<double>(d - 1)) / (2.0 * K);
  out.slack = lip * (hx + hw);
  out.certified = to_double(out.rho) - out.slack;
  if (sgn(out.rho) <= 0 || out.certified <= 0.0) {
    throw NonEllipticError("principal symbol lower bound on the chart box is not positive (sampled min " +
                           to_string(out.rho) + ", slack " + std::to_string(out.slack) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------

ResolventExpansion resolvent_terms(const ClassicalSymbol& p, int depth) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  rho_bound(p);
  const std::size_t d = p.dim();
  ResolventExpansion q;
  q.dim = d;
  q.order = p.order();
  q.base = p.principal();
  q.terms.push_back({ResolventTerm{0, 1, Poly::constant(2 * d, GaussRational(1))}});

  for (int j = 1; j <= depth; ++j) {
    std::vector<ResolventTerm> acc;
    for (int l = 0; l < j; ++l) {
      for (int a = 0; a <= j - l; ++a) {
        const int drop = j - l - a;
        const Poly& pk = p.part(drop);
        if (pk.is_zero()) continue;
        for (const auto& alpha : MultiIndex::of_order(d, a)) {
          Poly dp = pk;
          for (std::size_t i = 0; i < d; ++i) {
            for (int r = 0; r < alpha[i]; ++r) dp = dp.derivative(d + i);
          }
          if (dp.is_zero()) continue;
          const auto dq = diff_x(q.terms[static_cast<std::size_t>(l)], alpha, q.base, d);
          const GaussRational factor(Rational(-1) / alpha.factorial());
          for (const auto& t : dq) acc.push_back({j, t.pole + 1, dp * t.numerator * factor});
        }
      }
    }
    q.terms.push_back(canonical(std::move(acc)));
  }
  return q;
}

ParametrixReport verify_parametrix(const ClassicalSymbol& p, const ResolventExpansion& q, int depth) {
  const std::size_t d = p.dim();
  if (depth > q.depth()) throw DomainError("parametrix check deeper than the expansion");
  ParametrixReport report;
  for (int j = 0; j <= depth; ++j) {
    std::vector<ResolventTerm> acc;
    // (p_m - lambda) q_{-m-j}: lowers every pole by one.
    for (const auto& t : q.terms[static_cast<std::size_t>(j)]) acc.push_back({j, t.pole - 1, t.numerator});
    // remaining (drop, alpha, l) with |alpha| + drop + l = j, excluding alpha = 0, drop = 0.
    for (int l = 0; l <= j; ++l) {
      for (int a = 0; a <= j - l; ++a) {
        const int drop = j - l - a;
        if (a == 0 && drop == 0) continue;
        const Poly& pk = p.part(drop);
        if (pk.is_zero()) continue;
        for (const auto& alpha : MultiIndex::of_order(d, a)) {
          Poly dp = pk;
          for (std::size_t i = 0; i < d; ++i) {
            for (int r = 0; r < alpha[i]; ++r) dp = dp.derivative(d + i);
          }
          if (dp.is_zero()) continue;
          const auto dq = diff_x(q.terms[static_cast<std::size_t>(l)], alpha, q.base, d);
          const GaussRational factor(Rational(1) / alpha.factorial());
          for (const auto& t : dq) acc.push_back({j, t.pole, dp * t.numerator * factor});
        }
      }
    }
    auto residual = canonical(std::move(acc));
    bool good;
    if (j == 0) {
      good = residual.size() == 1 && residual[0].pole == 0 &&
             residual[0].numerator == Poly::constant(2 * d, GaussRational(1));
    } else {
      good = residual.empty();
    }
    if (!good && report.ok) {
      report.ok = false;
      report.first_bad_depth = j;
    }
    report.residuals.push_back(std::move(residual));
  }
  return report;
}

// ---------------------------------------------------------------------------

SPoly residue_coefficient(int pole) {
  if (pole < 1) throw DomainError("pole order must be at least 1");
  SPoly c = SPoly::binomial(static_cast<unsigned>(pole - 1));
  if (pole % 2 == 0) c *= Rational(-1);
  return c;
}

std::complex<double> residue_power(int pole, std::complex<double> s, double mu) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  const SPoly c = residue_coefficient(pole);
  return c.eval(s) * std::exp((s - static_cast<double>(pole - 1)) * std::log(mu));
}

std::complex<double> PowerBasisTerm::evaluate(const Poly& base, std::span<const double> x_xi,
                                              std::complex<double> s) const {
  const double pm = base.eval(x_xi).real();
  const std::complex<double> e = to_double(exp_a) * s + to_double(exp_b);
  return scalar.eval(s) * numerator.eval(x_xi) * std::exp(e * std::log(pm));
}

std::complex<double> PowerSymbolExpansion::evaluate_part(int j, std::span<const double> x_xi,
                                                         std::complex<double> s) const {
  std::complex<double> sum = 0.0;
  for (const auto& t : parts.at(static_cast<std::size_t>(j))) sum += t.evaluate(base, x_xi, s);
  return sum;
}

// Value of a part at a rational point and Gaussian-rational s. Terms are grouped
// by (a, frac(b)); inside a group numerators and integer powers of p_m are summed
// exactly, so only the shared factor p_m^(a s + frac(b)) goes through double.
std::complex<double> PowerSymbolExpansion::evaluate_part_exact(int j, std::span<const double> x_xi,
                                                               std::complex<double> s) const {
  const auto& terms = parts.at(static_cast<std::size_t>(j));
  std::vector<Rational> q(x_xi.begin(), x_xi.end());
  const Rational pm = base.eval(q).re;
  const GaussRational sq(Rational(s.real()), Rational(s.imag()));
  std::map<std::pair<Rational, Rational>, GaussRational> classes;
  for (const auto& t : terms) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.exp_b.get_num_mpz_t(), t.exp_b.get_den_mpz_t());
    const long n = fl.get_si();
    Rational w(1);
    for (long i = 0; i < std::abs(n); ++i) w *= pm;
    if (n < 0) w = Rational(1) / w;
    GaussRational sc;
    const auto& cs = t.scalar.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) sc = sc * sq + GaussRational(*it);
    classes[{t.exp_a, t.exp_b - Rational(fl)}] += sc * t.numerator.eval(q) * GaussRational(w);
  }
  std::complex<double> sum = 0.0;
  const double lp = std::log(to_double(pm));
  for (const auto& [key, acc] : classes) {
    if (acc.is_zero()) continue;
    sum += acc.to_complex() * std::exp((to_double(key.first) * s + to_double(key.second)) * lp);
  }
  return sum;
}

bool PowerSymbolExpansion::degree_law_holds() const {
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (const auto& t : parts[j]) {
      auto deg = t.numerator.homogeneous_degree(dim, dim);
      if (!deg) return false;
      // Coefficient of s and constant term must match separately.
      if (Rational(order) * t.exp_a != Rational(order)) return false;
      if (Rational(*deg) + Rational(order) * t.exp_b != Rational(order) * s_shift - Rational(static_cast<long>(j))) {
        return false;
      }
    }
  }
  return true;
}

PowerSymbolExpansion PowerSymbolExpansion::shifted(const Rational& delta) const {
  PowerSymbolExpansion out = *this;
  out.s_shift += delta;
  for (auto& level : out.parts) {
    for (auto& t : level) {
      t.scalar = t.scalar.shifted(delta);
      t.exp_b += t.exp_a * delta;
    }
  }
  return out;
}

PowerSymbolExpansion PowerSymbolExpansion::specialized(const Rational& s) const {
  PowerSymbolExpansion out = *this;
  for (auto& level : out.parts) {
    for (auto& t : level) {
      t.scalar = SPoly::constant(t.scalar.eval(s));
      t.exp_b += t.exp_a * s;
      t.exp_a = 0;
    }
  }
  return out;
}

PowerSymbolExpansion complex_power_terms(const ResolventExpansion& q) {
  PowerSymbolExpansion out;
  out.dim = q.dim;
  out.order = q.order;
  out.base = q.base;
  for (const auto& level : q.terms) {
    std::vector<PowerBasisTerm> part;
    for (const auto& t : level) {
      part.push_back({t.numerator, Rational(1), Rational(1 - t.pole), residue_coefficient(t.pole)});
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

PowerSymbolExpansion complex_power_terms(const ClassicalSymbol& p, int depth) {
  return complex_power_terms(resolvent_terms(p, depth));
}

namespace {

Rational frac_part(const Rational& b) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return b - Rational(fl);
}

// Brings every term to the smallest exponent of its class (same exp_a, exp_b
// mod 1) and sums numerators per power of s.
std::vector<PowerBasisTerm> reduce_power_sum(const std::vector<PowerBasisTerm>& terms, const Poly& base) {
  using Key = std::pair<Rational, Rational>;
  auto less = [](const Key& a, const Key& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  };
  std::map<Key, Rational, decltype(less)> bmin(less);
  for (const auto& t : terms) {
    Key k{t.exp_a, frac_part(t.exp_b)};
    auto it = bmin.find(k);
    if (it == bmin.end()) {
      bmin.emplace(k, t.exp_b);
    } else if (t.exp_b < it->second) {
      it->second = t.exp_b;
    }
  }
  std::map<Key, std::map<int, Poly>, decltype(less)> sums(less);
  for (const auto& t : terms) {
    Key k{t.exp_a, frac_part(t.exp_b)};
    const Rational gap = t.exp_b - bmin.at(k);
    const long lift = mpz_class(gap.get_num()).get_si();
    Poly scaled = t.numerator * base.pow(static_cast<unsigned>(lift));
    auto& by_power = sums[k];
    const auto& cs = t.scalar.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (sgn(cs[i]) == 0) continue;
      auto [it, _] = by_power.try_emplace(static_cast<int>(i), scaled.nvars());
      it->second += scaled * GaussRational(cs[i]);
    }
  }
  std::vector<PowerBasisTerm> out;
  for (const auto& [k, by_power] : sums) {
    for (const auto& [i, poly] : by_power) {
      if (poly.is_zero()) continue;
      std::vector<Rational> mono(static_cast<std::size_t>(i) + 1, Rational(0));
      mono.back() = 1;
      out.push_back({poly, k.first, bmin.at(k), SPoly(std::move(mono))});
    }
  }
  return out;
}

// One derivative of scalar * N * p^(a s + b) in variable `var`.
void differentiate_power(const PowerBasisTerm& t, std::size_t var, const Poly& base, const GaussRational& factor,
                         std::vector<PowerBasisTerm>& out) {
  Poly dn = t.numerator.derivative(var);
  if (!dn.is_zero()) out.push_back({dn * factor, t.exp_a, t.exp_b, t.scalar});
  Poly dp = base.derivative(var);
  if (!dp.is_zero()) {
    SPoly sc = t.scalar * SPoly::affine(t.exp_a, t.exp_b);
    if (!sc.is_zero()) out.push_back({t.numerator * dp * factor, t.exp_a, t.exp_b - 1, sc});
  }
}

std::vector<PowerBasisTerm> derive_power(std::vector<PowerBasisTerm> terms, const MultiIndex& alpha,
                                         const Poly& base, std::size_t offset, const GaussRational& factor) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int r = 0; r < alpha[i]; ++r) {
      std::vector<PowerBasisTerm> next;
      for (const auto& t : terms) differentiate_power(t, offset + i, base, factor, next);
      terms = std::move(next);
    }
  }
  return terms;
}

Poly xi_derivative(Poly p, const MultiIndex& alpha, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    for (int r = 0; r < alpha[i]; ++r) p = p.derivative(d + i);
  }
  return p;
}

// Groups terms with identical exponents and scalar-free numerators by exact
// merging; keeps output deterministic.
std::vector<PowerBasisTerm> merge_power_terms(std::vector<PowerBasisTerm> terms) {
  std::vector<PowerBasisTerm> out;
  for (auto& t : terms) {
    bool merged = false;
    for (auto& o : out) {
      if (o.exp_a == t.exp_a && o.exp_b == t.exp_b && o.scalar == t.scalar) {
        o.numerator += t.numerator;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(t));
  }
  std::erase_if(out, [](const PowerBasisTerm& t) { return t.numerator.is_zero() || t.scalar.is_zero(); });
  return out;
}

}  // namespace

std::vector<PowerBasisTerm> power_terms_difference(std::span<const PowerBasisTerm> lhs,
                                                   std::span<const PowerBasisTerm> rhs, const Poly& base) {
  std::vector<PowerBasisTerm> diff(lhs.begin(), lhs.end());
  for (const auto& t : rhs) diff.push_back({-t.numerator, t.exp_a, t.exp_b, t.scalar});
  return reduce_power_sum(diff, base);
}

bool power_terms_equivalent(std::span<const PowerBasisTerm> lhs, std::span<const PowerBasisTerm> rhs,
                            const Poly& base) {
  return power_terms_difference(lhs, rhs, base).empty();
}

Poly compose_symbols(const Poly& a, const Poly& b, std::size_t dim) {
  Poly out(a.nvars());
  int max_order = 0;
  for (const auto& [e, c] : a.terms()) {
    int deg = 0;
    for (std::size_t i = dim; i < 2 * dim; ++i) deg += e[i];
    max_order = std::max(max_order, deg);
  }
  for (int k = 0; k <= max_order; ++k) {
    for (const auto& alpha : MultiIndex::of_order(dim, k)) {
      Poly da = xi_derivative(a, alpha, dim);
      if (da.is_zero()) continue;
      Poly db = b;
      for (std::size_t i = 0; i < dim; ++i) {
        for (int r = 0; r < alpha[i]; ++r) db = db.derivative(i) * (-GaussRational::i());
      }
      if (db.is_zero()) continue;
      out += da * db * GaussRational(Rational(1) / alpha.factorial());
    }
  }
  return out;
}

ClassicalSymbol operator_power(const ClassicalSymbol& p, int k) {
  if (k < 1) throw DomainError("operator power must be positive");
  const Poly full = p.full();
  Poly acc = full;
  for (int i = 1; i < k; ++i) acc = compose_symbols(full, acc, p.dim());
  return ClassicalSymbol::from_full(p.dim(), acc, p.box_half_width());
}

PowerSymbolExpansion compose(const ClassicalSymbol& a, const PowerSymbolExpansion& b, int depth) {
  const std::size_t d = b.dim;
  PowerSymbolExpansion out;
  out.dim = d;
  out.order = b.order;
  out.base = b.base;
  out.s_shift = b.s_shift + Rational(a.order(), b.order);
  out.parts.resize(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) {
    std::vector<PowerBasisTerm> acc;
    for (int drop = 0; drop <= j; ++drop) {
      const Poly& ai = a.part(drop);
      if (ai.is_zero()) continue;
      for (int na = 0; na <= j - drop; ++na) {
        const int l = j - drop - na;
        if (l > b.depth()) continue;
        for (const auto& alpha : MultiIndex::of_order(d, na)) {
          Poly da = xi_derivative(ai, alpha, d);
          if (da.is_zero()) continue;
          auto db = derive_power(b.parts[static_cast<std::size_t>(l)], alpha, b.base, 0, -GaussRational::i());
          const GaussRational factor(Rational(1) / alpha.factorial());
          for (auto& t : db) acc.push_back({da * t.numerator * factor, t.exp_a, t.exp_b, t.scalar});
        }
      }
    }
    out.parts[static_cast<std::size_t>(j)] = merge_power_terms(std::move(acc));
  }
  return out;
}

PowerSymbolExpansion compose(const PowerSymbolExpansion& a, const PowerSymbolExpansion& b, int depth) {
  const std::size_t d = b.dim;
  if (a.dim != d || a.base != b.base) throw DomainError("expansions over different bases");
  PowerSymbolExpansion out;
  out.dim = d;
  out.order = b.order;
  out.base = b.base;
  out.s_shift = a.s_shift + b.s_shift;
  out.parts.resize(static_cast<std::size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) {
    std::vector<PowerBasisTerm> acc;
    for (int i = 0; i <= std::min(j, a.depth()); ++i) {
      for (int na = 0; na <= j - i; ++na) {
        const int l = j - i - na;
        if (l > b.depth()) continue;
        for (const auto& alpha : MultiIndex::of_order(d, na)) {
          auto da = derive_power(a.parts[static_cast<std::size_t>(i)], alpha, a.base, d, GaussRational(1));
          if (da.empty()) continue;
          auto db = derive_power(b.parts[static_cast<std::size_t>(l)], alpha, b.base, 0, -GaussRational::i());
          const GaussRational factor(Rational(1) / alpha.factorial());
          for (const auto& ta : da) {
            for (const auto& tb : db) {
              acc.push_back({ta.numerator * tb.numerator * factor, ta.exp_a + tb.exp_a, ta.exp_b + tb.exp_b,
                             ta.scalar * tb.scalar});
            }
          }
        }
      }
    }
    out.parts[static_cast<std::size_t>(j)] = merge_power_terms(std::move(acc));
  }
  return out;
}

ReductionReport integer_power_reduction(const ClassicalSymbol& p, std::complex<double> s, int k, int depth,
                                        std::uint64_t seed) {
  if (k < 1) throw DomainError("k must be a positive integer");
  if (!(s.real() < static_cast<double>(k))) throw DomainError("integer power reduction requires Re s < k");
  const auto direct = complex_power_terms(p, depth);
  const auto pk = operator_power(p, k);
  const auto reduced = compose(pk, direct.shifted(Rational(-k)), depth);

  ReductionReport report;
  const std::size_t d = p.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-to_double(p.box_half_width()), to_double(p.box_half_width()));
  std::uniform_real_distribution<double> uxi(-2.0, 2.0);
  std::vector<std::vector<double>> samples;
  while (samples.size() < 12) {
    std::vector<double> pt(2 * d);
    for (std::size_t i = 0; i < d; ++i) pt[i] = ux(rng);
    double n2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      pt[d + i] = uxi(rng);
      n2 += pt[d + i] * pt[d + i];
    }
    if (n2 > 0.25) samples.push_back(std::move(pt));
  }
  for (int j = 0; j <= depth; ++j) {
    const auto& lhs = reduced.parts[static_cast<std::size_t>(j)];
    const auto& rhs = direct.parts[static_cast<std::size_t>(j)];
    const bool same = power_terms_equivalent(lhs, rhs, p.principal());
    report.depth_match.push_back(same);
    if (!same && report.exact_match) {
      report.exact_match = false;
      report.mismatch_depth = j;
    }
    for (const auto& pt : samples) {
      const auto a = reduced.evaluate_part_exact(j, pt, s);
      const auto b = direct.evaluate_part_exact(j, pt, s);
      const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
      if (std::abs(a) + std::abs(b) == 0.0) continue;
      report.max_numeric_deviation = std::max(report.max_numeric_deviation, std::abs(a - b) / scale);
    }
  }
  return report;
}

}  // namespace cpw
