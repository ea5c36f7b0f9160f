#include "cpw/rational.hpp"

#include <stdexcept>

namespace cpw {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  Rational norm = o.re * o.re + o.im * o.im;
  if (sgn(norm) == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / norm;
  Rational i = (im * o.re - re * o.im) / norm;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
  if (z.is_real()) return os << z.re;
  return os << "(" << z.re << (sgn(z.im) < 0 ? "" : "+") << z.im << "i)";
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace cpw
