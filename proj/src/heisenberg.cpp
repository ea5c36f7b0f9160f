#include "cpw/heisenberg.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <stdexcept>

#include "cpw/errors.hpp"

namespace cpw {

HPoint dilate(const HPoint& xi, double t) {
  if (!(t > 0.0)) throw DomainError("dilation parameter must be positive");
  return {t * t * xi[0], t * xi[1], t * xi[2]};
}

double hnorm(const HPoint& xi) { return hnorm(xi[0], xi[1], xi[2]); }

int weighted_order(const MultiIndex& beta) {
  if (beta.size() != 3) throw DomainError("weighted order needs a multi-index of length 3");
  return 2 * beta[0] + beta[1] + beta[2];
}

HPoint GroupLaw::multiply(const HPoint& x, const HPoint& y) const {
  return {x[0] + y[0] + 0.5 * kappa_ * (x[1] * y[2] - x[2] * y[1]), x[1] + y[1], x[2] + y[2]};
}

GroupLawDefect group_law_defect(const GroupLaw& g, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto draw = [&] { return HPoint{u(rng), u(rng), u(rng)}; };
  auto dist = [](const HPoint& a, const HPoint& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
  };
  GroupLawDefect out;
  for (int i = 0; i < count; ++i) {
    const HPoint x = draw(), y = draw(), z = draw();
    out.associativity = std::max(out.associativity, dist(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z))));
    out.inverse = std::max(out.inverse, dist(g.multiply(g.inverse(x), x), GroupLaw::identity()));
    out.inverse = std::max(out.inverse, dist(g.multiply(x, g.inverse(x)), GroupLaw::identity()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// expression := term (('+' | '-') term)*
// term       := unary (('*' | '/') unary)*
// unary      := '-' unary | power
// power      := atom ('^' unary)?
// atom       := number | xi0 | xi1 | xi2 | norm | '(' expression ')'

namespace {

class ExprCompiler {
 public:
  explicit ExprCompiler(const std::string& text) : text_(text) {}

  std::vector<HExpr::Op> compile() {
    expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return std::move(out_);
  }

 private:
  using Op = HExpr::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression error at " + std::to_string(pos_) + ": " + what + " in '" + text_ + "'");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(const char* w) {
    skip_ws();
    const std::size_t len = std::char_traits<char>::length(w);
    if (text_.compare(pos_, len, w) != 0) return false;
    if (pos_ + len < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + len]))) return false;
    pos_ += len;
    return true;
  }

  void expression() {
    term();
    while (true) {
      if (accept('+')) {
        term();
        out_.push_back({Op::Add});
      } else if (accept('-')) {
        term();
        out_.push_back({Op::Sub});
      } else {
        return;
      }
    }
  }
  void term() {
    unary();
    while (true) {
      if (accept('*')) {
        unary();
        out_.push_back({Op::Mul});
      } else if (accept('/')) {
        unary();
        out_.push_back({Op::Div});
      } else {
        return;
      }
    }
  }
  void unary() {
    if (accept('-')) {
      unary();
      out_.push_back({Op::Neg});
      return;
    }
    power();
  }
  void power() {
    atom();
    if (accept('^')) {
      unary();
      out_.push_back({Op::Pow});
    }
  }
  void atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      expression();
      if (!accept(')')) fail("expected ')'");
      return;
    }
    if (accept_word("xi0")) return out_.push_back({Op::Var, 0.0, 0});
    if (accept_word("xi1")) return out_.push_back({Op::Var, 0.0, 1});
    if (accept_word("xi2")) return out_.push_back({Op::Var, 0.0, 2});
    if (accept_word("norm")) return out_.push_back({Op::Norm});
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number, variable or '('");
    pos_ += static_cast<std::size_t>(end - begin);
    out_.push_back({Op::Const, v});
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<Op> out_;
};

constexpr std::size_t kMaxStack = 32;

}  // namespace

HExpr::HExpr(const std::string& text) : text_(text), program_(ExprCompiler(text).compile()) {
  std::size_t depth = 0;
  for (const auto& op : program_) {
    switch (op.kind) {
      case Op::Const:
      case Op::Var:
      case Op::Norm:
        stack_depth_ = std::max(stack_depth_, ++depth);
        break;
      case Op::Neg:
        break;
      default:
        --depth;
    }
  }
  if (stack_depth_ > kMaxStack) throw std::invalid_argument("expression nests too deeply: " + text);
}

double HExpr::operator()(double xi0, double xi1, double xi2) const {
  double stack[kMaxStack];
  std::size_t top = 0;
  const double vars[3] = {xi0, xi1, xi2};
  for (const auto& op : program_) {
    switch (op.kind) {
      case Op::Const:
        stack[top++] = op.value;
        break;
      case Op::Var:
        stack[top++] = vars[op.var];
        break;
      case Op::Norm:
        stack[top++] = hnorm(xi0, xi1, xi2);
        break;
      case Op::Neg:
        stack[top - 1] = -stack[top - 1];
        break;
      case Op::Add:
        --top;
        stack[top - 1] += stack[top];
        break;
      case Op::Sub:
        --top;
        stack[top - 1] -= stack[top];
        break;
      case Op::Mul:
        --top;
        stack[top - 1] *= stack[top];
        break;
      case Op::Div:
        --top;
        stack[top - 1] /= stack[top];
        break;
      case Op::Pow:
        --top;
        stack[top - 1] = std::pow(stack[top - 1], stack[top]);
        break;
    }
  }
  return stack[0];
}

HHomogeneousSymbol::HHomogeneousSymbol(const std::string& expression, double degree, std::uint64_t seed)
    : degree_(degree), label_(expression) {
  auto expr = std::make_shared<HExpr>(expression);
  fn_ = [expr](double a, double b, double c) { return (*expr)(a, b, c); };
  verify(seed);
}

HHomogeneousSymbol::HHomogeneousSymbol(HFn fn, double degree, std::string label, bool verify_now, std::uint64_t seed)
    : fn_(std::move(fn)), degree_(degree), label_(std::move(label)) {
  if (verify_now) verify(seed);
}

void HHomogeneousSymbol::verify(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 16) {
    const HPoint xi{u(rng), u(rng), u(rng)};
    if (hnorm(xi) < 0.2) continue;
    ++checked;
    const double base = (*this)(xi);
    for (double t : {0.5, 2.0, 3.7}) {
      const double scaled = (*this)(dilate(xi, t));
      const double expect = std::pow(t, degree_) * base;
      const double scale = std::max({std::abs(scaled), std::abs(expect), 1e-300});
      if (!std::isfinite(scaled) || !std::isfinite(base) || std::abs(scaled - expect) > 1e-9 * scale) {
        throw DomainError("symbol '" + label_ + "' is not homogeneous of degree " + std::to_string(degree_));
      }
    }
  }
}

RemainderReport expansion_remainder_check(const HFn& full, const std::vector<HHomogeneousSymbol>& parts, int terms,
                                          std::uint64_t seed, int shells, int rays) {
  if (terms < 1 || static_cast<std::size_t>(terms) > parts.size()) throw DomainError("need 1 <= N <= number of parts");
  const double m = parts.front().degree();
  for (int j = 1; j < terms; ++j) {
    if (std::abs(parts[static_cast<std::size_t>(j)].degree() - (m - j)) > 1e-12) {
      throw DomainError("parts must have degrees m, m-1, ..., m-N+1");
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<HPoint> dirs;
  while (static_cast<int>(dirs.size()) < rays) {
    const HPoint xi{u(rng), u(rng), u(rng)};
    const double g = hnorm(xi);
    if (g < 0.1) continue;
    dirs.push_back(dilate(xi, 1.0 / g));
  }
  RemainderReport rep;
  for (int k = 0; k < shells; ++k) {
    double shell = 0.0;
    for (double frac : {0.0, 0.25, 0.5, 0.75}) {
      const double t = std::ldexp(1.0 + frac, k);
      for (const auto& w : dirs) {
        const HPoint xi = dilate(w, t);
        double rem = full(xi[0], xi[1], xi[2]);
        for (int j = 0; j < terms; ++j) rem -= parts[static_cast<std::size_t>(j)](xi);
        const double c = std::abs(rem) / std::pow(t, m - terms);
        shell = std::max(shell, c);
        if (c > rep.constant) {
          rep.constant = c;
          rep.worst = xi;
        }
      }
    }
    rep.shell_constants.push_back(shell);
  }
  if (shells >= 2) {
    const double last = rep.shell_constants.back();
    const double prev = rep.shell_constants[rep.shell_constants.size() - 2];
    rep.divergent = last > 1e-12 && last > 1.5 * prev;
  }
  return rep;
}

// ---------------------------------------------------------------------------

KernelGrid::KernelGrid(double half_width, int points) : L(half_width), n(points) {
  if (!(half_width > 0.0)) throw DomainError("grid half-width must be positive");
  if (points < 4 || points % 2 != 0) throw DomainError("grid needs an even number of points, at least 4");
  data.assign(size(), 0.0);
}

namespace {

std::vector<std::complex<double>> edge_phases(const KernelGrid& g, double sign) {
  std::vector<std::complex<double>> ph(static_cast<std::size_t>(g.n));
  for (int l = 0; l < g.n; ++l) ph[static_cast<std::size_t>(l)] = std::polar(1.0, sign * g.L * g.freq(l));
  return ph;
}

void apply_phases(cvec& data, const KernelGrid& g, const std::vector<std::complex<double>>& ph, double scale) {
  const int n = g.n;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::complex<double> ab = scale * ph[static_cast<std::size_t>(a)] * ph[static_cast<std::size_t>(b)];
      for (int c = 0; c < n; ++c) data[g.index(a, b, c)] *= ab * ph[static_cast<std::size_t>(c)];
    }
  }
}

}  // namespace

cvec to_frequency(const KernelGrid& f) {
  cvec data = f.data;
  const std::vector<int> shape{f.n, f.n, f.n};
  checkerboard(data, shape);
  fft_inplace(data, shape, -1);
  const double h = f.spacing();
  apply_phases(data, f, edge_phases(f, +1.0), h * h * h);
  return data;
}

KernelGrid to_space(const cvec& spectrum, double half_width, int points) {
  KernelGrid g(half_width, points);
  if (spectrum.size() != g.size()) throw DomainError("spectrum size does not match grid");
  g.data = spectrum;
  const double dxi = g.freq_spacing();
  const double scale = std::pow(dxi / (2.0 * std::numbers::pi), 3);
  apply_phases(g.data, g, edge_phases(g, -1.0), scale);
  const std::vector<int> shape{points, points, points};
  fft_inplace(g.data, shape, +1);
  checkerboard(g.data, shape);
  return g;
}

double origin_cutoff(double gauge) {
  if (gauge <= 0.25) return 0.0;
  if (gauge >= 0.5) return 1.0;
  const double t = (gauge - 0.25) / 0.25;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double edge_taper(double u) {
  const double a = std::abs(u);
  if (a <= 0.6) return 1.0;
  if (a >= 0.95) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * (a - 0.6) / 0.35);
  return c * c;
}

KernelGrid symbol_to_kernel(const HHomogeneousSymbol& p, double half_width, int points) {
  if (!(p.degree() > -4.0 && p.degree() < 0.0)) throw DomainError("kernel transform needs degree in (-4, 0)");
  KernelGrid g(half_width, points);
  cvec spec(g.size(), 0.0);
  const double top = (points / 2) * g.freq_spacing();
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      for (int c = 0; c < points; ++c) {
        const double x0 = g.freq(a), x1 = g.freq(b), x2 = g.freq(c);
        const double w = origin_cutoff(hnorm(x0, x1, x2)) * edge_taper(x0 / top) * edge_taper(x1 / top) *
                         edge_taper(x2 / top);
        if (w != 0.0) spec[g.index(a, b, c)] = w * p(x0, x1, x2);
      }
    }
  }
  return to_space(spec, half_width, points);
}

cvec kernel_to_symbol(const KernelGrid& k) { return to_frequency(k); }

std::complex<double> kernel_symbol_at(const KernelGrid& k, const HPoint& xi) {
  const int n = k.n;
  std::array<std::vector<std::complex<double>>, 3> e;
  for (int a = 0; a < 3; ++a) {
    e[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = std::polar(1.0, -k.coord(i) * xi[static_cast<std::size_t>(a)]);
  }
  std::complex<double> sum = 0.0;
  for (int a = 0; a < n; ++a) {
    std::complex<double> s1 = 0.0;
    for (int b = 0; b < n; ++b) {
      std::complex<double> s2 = 0.0;
      const std::size_t base = k.index(a, b, 0);
      for (int c = 0; c < n; ++c) s2 += k.data[base + static_cast<std::size_t>(c)] * e[2][static_cast<std::size_t>(c)];
      s1 += s2 * e[1][static_cast<std::size_t>(b)];
    }
    sum += s1 * e[0][static_cast<std::size_t>(a)];
  }
  const double h = k.spacing();
  return sum * (h * h * h);
}

RoundTripReport symbol_kernel_round_trip(const HHomogeneousSymbol& p, double half_width, int points, int samples,
                                         std::uint64_t seed) {
  const KernelGrid k = symbol_to_kernel(p, half_width, points);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), t(1.0, 2.0);
  RoundTripReport rep;
  const cvec back = kernel_to_symbol(k);
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      for (int c = 0; c < points; ++c) {
        const double x0 = k.freq(a), x1 = k.freq(b), x2 = k.freq(c);
        const double g = hnorm(x0, x1, x2);
        if (g < 1.0 || g > 2.0) continue;
        const double exact = p(x0, x1, x2);
        if (exact == 0.0) continue;
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(back[k.index(a, b, c)] - exact) / std::abs(exact));
        ++rep.grid_nodes;
      }
    }
  }
  bool even = true;
  while (rep.samples < samples) {
    const HPoint xi{u(rng), u(rng), u(rng)};
    const double g = hnorm(xi);
    if (g < 0.1) continue;
    const HPoint q = dilate(xi, t(rng) / g);
    const double exact = p(q);
    if (exact == 0.0) continue;
    even = even && std::abs(p(HPoint{-q[0], -q[1], -q[2]}) - exact) <= 1e-12 * std::abs(exact);
    rep.offgrid_rel_error = std::max(rep.offgrid_rel_error, std::abs(kernel_symbol_at(k, q) - exact) / std::abs(exact));
    ++rep.samples;
  }
  if (even) {
    double top = 0.0, diff = 0.0;
    const int n = k.n;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          const auto v = k.data[k.index(a, b, c)];
          top = std::max(top, std::abs(v));
          diff = std::max(diff, std::abs(v - k.data[k.index(n - 1 - a, n - 1 - b, n - 1 - c)]));
        }
      }
    }
    rep.even_defect = top > 0.0 ? diff / top : 0.0;
  }
  return rep;
}

// ---------------------------------------------------------------------------

KernelGrid sample_grid(double half_width, int points, const std::function<std::complex<double>(const HPoint&)>& f) {
  KernelGrid g(half_width, points);
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      for (int c = 0; c < points; ++c) g.data[g.index(a, b, c)] = f({g.coord(a), g.coord(b), g.coord(c)});
    }
  }
  return g;
}

namespace {

bool near_nyquist(const KernelGrid& f, const cvec& spec) {
  double total = 0.0, edge = 0.0;
  const int n = f.n;
  const int band = std::max(1, n / 10);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const double e = std::norm(spec[f.index(a, b, c)]);
        total += e;
        const bool outer = a < band || b < band || c < band || a >= n - band || b >= n - band || c >= n - band;
        if (outer) edge += e;
      }
    }
  }
  return total > 0.0 && edge > 1e-8 * total;
}

Poly sigma_substitute(const Poly& p, const Rational& half_kappa) {
  const std::size_t nv = 6;
  if (p.nvars() != nv) throw DomainError("quantized symbol must use variables x0..x2, xi0..xi2");
  const Poly x1 = Poly::variable(nv, 1), x2 = Poly::variable(nv, 2);
  const Poly xi0 = Poly::variable(nv, 3), xi1 = Poly::variable(nv, 4), xi2 = Poly::variable(nv, 5);
  const std::array<Poly, 3> sig{xi0, xi1 - x2 * xi0 * GaussRational(half_kappa), xi2 + x1 * xi0 * GaussRational(half_kappa)};
  Poly out(nv);
  for (const auto& [e, c] : p.terms()) {
    Poly::Exponent xe(nv, 0);
    for (std::size_t i = 0; i < 3; ++i) xe[i] = e[i];
    Poly term = Poly::monomial(nv, xe, c);
    for (std::size_t i = 0; i < 3; ++i) term = term * sig[i].pow(static_cast<unsigned>(e[3 + i]));
    out += term;
  }
  return out;
}

}  // namespace

QuantizeResult quantize(const Poly& p, const KernelGrid& f, double kappa) {
  const Poly q = sigma_substitute(p, Rational(kappa) / 2);
  std::map<std::array<int, 3>, Poly> by_xi;
  for (const auto& [e, c] : q.terms()) {
    Poly::Exponent xe(6, 0);
    for (std::size_t i = 0; i < 3; ++i) xe[i] = e[i];
    auto [it, _] = by_xi.try_emplace({e[3], e[4], e[5]}, 6);
    it->second.add_term(xe, c);
  }
  const cvec spec = to_frequency(f);
  QuantizeResult out;
  out.aliasing_warning = near_nyquist(f, spec);
  out.values = KernelGrid(f.L, f.n);
  const int n = f.n;
  for (const auto& [g, coef] : by_xi) {
    cvec s = spec;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          s[f.index(a, b, c)] *= std::pow(f.freq(a), g[0]) * std::pow(f.freq(b), g[1]) * std::pow(f.freq(c), g[2]);
        }
      }
    }
    const KernelGrid d = to_space(s, f.L, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          const double pt[6] = {f.coord(a), f.coord(b), f.coord(c), 0.0, 0.0, 0.0};
          const std::size_t idx = f.index(a, b, c);
          out.values.data[idx] += coef.eval(std::span<const double>(pt, 6)) * d.data[idx];
        }
      }
    }
  }
  return out;
}

QuantizeResult quantize_direct(const std::function<std::complex<double>(const HPoint&, const HPoint&)>& p,
                               const KernelGrid& f, double kappa) {
  const cvec spec = to_frequency(f);
  QuantizeResult out;
  out.aliasing_warning = near_nyquist(f, spec);
  out.values = KernelGrid(f.L, f.n);
  const int n = f.n;
  const VectorFieldFrame frame{kappa};
  const double dxi = f.freq_spacing();
  const double scale = std::pow(dxi / (2.0 * std::numbers::pi), 3);
  std::vector<std::complex<double>> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) e[static_cast<std::size_t>(i * n + l)] = std::polar(1.0, f.coord(i) * f.freq(l));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const HPoint x{f.coord(a), f.coord(b), f.coord(c)};
        std::complex<double> sum = 0.0;
        for (int la = 0; la < n; ++la) {
          for (int lb = 0; lb < n; ++lb) {
            for (int lc = 0; lc < n; ++lc) {
              const HPoint xi{f.freq(la), f.freq(lb), f.freq(lc)};
              const auto phase = e[static_cast<std::size_t>(a * n + la)] * e[static_cast<std::size_t>(b * n + lb)] *
                                 e[static_cast<std::size_t>(c * n + lc)];
              sum += phase * p(x, frame.sigma(x, xi)) * spec[f.index(la, lb, lc)];
            }
          }
        }
        out.values.data[f.index(a, b, c)] = scale * sum;
      }
    }
  }
  return out;
}

namespace {

// X_j f by central differences, zero on the outer layer.
KernelGrid frame_field_real(int j, const KernelGrid& f, double kappa) {
  KernelGrid out(f.L, f.n);
  const int n = f.n;
  const double h2 = 2.0 * f.spacing();
  for (int a = 1; a < n - 1; ++a) {
    for (int b = 1; b < n - 1; ++b) {
      for (int c = 1; c < n - 1; ++c) {
        const auto d0 = (f.data[f.index(a + 1, b, c)] - f.data[f.index(a - 1, b, c)]) / h2;
        const auto d1 = (f.data[f.index(a, b + 1, c)] - f.data[f.index(a, b - 1, c)]) / h2;
        const auto d2 = (f.data[f.index(a, b, c + 1)] - f.data[f.index(a, b, c - 1)]) / h2;
        std::complex<double> v;
        if (j == 0) {
          v = d0;
        } else if (j == 1) {
          v = d1 - 0.5 * kappa * f.coord(c) * d0;
        } else {
          v = d2 + 0.5 * kappa * f.coord(b) * d0;
        }
        out.data[f.index(a, b, c)] = v;
      }
    }
  }
  return out;
}

}  // namespace

KernelGrid frame_field_fd(int j, const KernelGrid& f, double kappa) {
  if (j < 0 || j > 2) throw DomainError("frame index must be 0, 1 or 2");
  KernelGrid out = frame_field_real(j, f, kappa);
  for (auto& v : out.data) v *= std::complex<double>(0.0, -1.0);
  return out;
}

double frame_bracket_defect(const KernelGrid& f, double kappa) {
  const KernelGrid x1 = frame_field_real(1, f, kappa), x2 = frame_field_real(2, f, kappa);
  const KernelGrid x12 = frame_field_real(1, x2, kappa), x21 = frame_field_real(2, x1, kappa);
  const KernelGrid x0 = frame_field_real(0, f, kappa);
  double worst = 0.0;
  const int n = f.n;
  for (int a = 2; a < n - 2; ++a) {
    for (int b = 2; b < n - 2; ++b) {
      for (int c = 2; c < n - 2; ++c) {
        const std::size_t i = f.index(a, b, c);
        worst = std::max(worst, std::abs(x12.data[i] - x21.data[i] - kappa * x0.data[i]));
      }
    }
  }
  return worst;
}

}  // namespace cpw
