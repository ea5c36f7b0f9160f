#include "cpw/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace cpw {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

Rational MultiIndex::factorial() const {
  Rational f(1);
  for (int e : entries_) f *= cpw::factorial(static_cast<unsigned>(e));
  return f;
}

std::vector<MultiIndex> MultiIndex::of_order(std::size_t length, int order) {
  std::vector<MultiIndex> out;
  if (length == 0) {
    if (order == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(length, 0);
  // Recursive fill: first entry from order down to 0.
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == length) {
      cur[pos] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, order);
  return out;
}

// ---------------------------------------------------------------------------

Poly Poly::constant(std::size_t nvars, const GaussRational& c) {
  Poly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::monomial(std::size_t nvars, Exponent e, const GaussRational& c) {
  if (e.size() != nvars) throw std::invalid_argument("exponent length does not match variable count");
  Poly p(nvars);
  p.add_term(e, c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e));
}

void Poly::add_term(const Exponent& e, const GaussRational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial dimension mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly out(a.nvars_);
  Poly::Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(nvars_, GaussRational(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * GaussRational(e[var]));
  }
  return out;
}

GaussRational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  GaussRational sum;
  for (const auto& [e, c] : terms_) {
    Rational m(1);
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    }
    sum += c * GaussRational(m);
  }
  return sum;
}

std::complex<double> Poly::eval(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    }
    sum += c.to_complex() * m;
  }
  return sum;
}

std::optional<int> Poly::homogeneous_degree(std::size_t first, std::size_t count) const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t i = first; i < first + count; ++i) d += e[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

std::map<int, Poly> Poly::split_by_degree(std::size_t first, std::size_t count) const {
  std::map<int, Poly> out;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (std::size_t i = first; i < first + count; ++i) d += e[i];
    auto [it, _] = out.try_emplace(d, nvars_);
    it->second.add_term(e, c);
  }
  return out;
}

bool Poly::depends_on(std::size_t first, std::size_t count) const {
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = first; i < first + count; ++i) {
      if (e[i] != 0) return true;
    }
  }
  return false;
}

bool Poly::is_real() const {
  for (const auto& [e, c] : terms_) {
    if (!c.is_real()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SPoly::SPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void SPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

SPoly SPoly::binomial(unsigned n) {
  SPoly out = constant(Rational(1));
  for (unsigned i = 0; i < n; ++i) out = out * affine(Rational(1), Rational(-static_cast<long>(i)));
  out *= Rational(1) / factorial(n);
  return out;
}

SPoly& SPoly::operator+=(const SPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

SPoly& SPoly::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return SPoly(std::move(out));
}

SPoly SPoly::shifted(const Rational& shift) const {
  // Horner in the shifted variable.
  SPoly out;
  const SPoly lin = affine(Rational(1), shift);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    out = out * lin + constant(*it);
  }
  return out;
}

Rational SPoly::eval(const Rational& s) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::complex<double> SPoly::eval(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + to_double(*it);
  return acc;
}

}  // namespace cpw
