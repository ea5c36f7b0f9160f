#include "cpw/resolvent.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cpw {

std::vector<ResolventTerm> canonical(std::vector<ResolventTerm> terms) {
  std::map<std::pair<int, int>, Poly> merged;
  for (auto& t : terms) {
    auto key = std::make_pair(t.depth, t.pole);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, std::move(t.numerator));
    } else {
      it->second += t.numerator;
    }
  }
  std::vector<ResolventTerm> out;
  for (auto& [key, num] : merged) {
    if (num.is_zero()) continue;
    out.push_back({key.first, key.second, std::move(num)});
  }
  return out;
}

namespace {

// One derivative d/dv of a * (p - lambda)^(-k):
//   (da) (p-lambda)^(-k) - k a (dp) (p-lambda)^(-k-1)
void differentiate_once(const ResolventTerm& t, std::size_t var, const Poly& base, int depth_shift,
                        const GaussRational& factor, std::vector<ResolventTerm>& out) {
  Poly da = t.numerator.derivative(var);
  if (!da.is_zero()) out.push_back({t.depth + depth_shift, t.pole, da * factor});
  Poly dp = base.derivative(var);
  if (!dp.is_zero() && t.pole != 0) {
    out.push_back({t.depth + depth_shift, t.pole + 1, t.numerator * dp * (factor * GaussRational(-t.pole))});
  }
}

std::vector<ResolventTerm> apply_derivatives(std::vector<ResolventTerm> current, const MultiIndex& alpha,
                                             const Poly& base, std::size_t var_offset, int depth_shift,
                                             const GaussRational& factor) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int r = 0; r < alpha[i]; ++r) {
      std::vector<ResolventTerm> next;
      for (const auto& t : current) differentiate_once(t, var_offset + i, base, depth_shift, factor, next);
      current = canonical(std::move(next));
    }
  }
  return current;
}

}  // namespace

std::vector<ResolventTerm> diff_xi(const ResolventTerm& term, const MultiIndex& alpha, const Poly& base,
                                   std::size_t dim) {
  return diff_xi(std::span<const ResolventTerm>(&term, 1), alpha, base, dim);
}

std::vector<ResolventTerm> diff_xi(std::span<const ResolventTerm> terms, const MultiIndex& alpha,
                                   const Poly& base, std::size_t dim) {
  if (alpha.size() != dim) throw std::invalid_argument("multi-index length does not match chart dimension");
  return apply_derivatives({terms.begin(), terms.end()}, alpha, base, dim, 1, GaussRational(1));
}

std::vector<ResolventTerm> diff_x(const ResolventTerm& term, const MultiIndex& alpha, const Poly& base,
                                  std::size_t dim) {
  return diff_x(std::span<const ResolventTerm>(&term, 1), alpha, base, dim);
}

std::vector<ResolventTerm> diff_x(std::span<const ResolventTerm> terms, const MultiIndex& alpha, const Poly& base,
                                  std::size_t dim) {
  if (alpha.size() != dim) throw std::invalid_argument("multi-index length does not match chart dimension");
  return apply_derivatives({terms.begin(), terms.end()}, alpha, base, 0, 0, -GaussRational::i());
}

std::complex<double> evaluate(const ResolventTerm& term, const Poly& base, std::span<const double> x_xi,
                              std::complex<double> lambda) {
  const std::complex<double> u = 1.0 / (base.eval(x_xi) - lambda);
  return term.numerator.eval(x_xi) * std::pow(u, term.pole);
}

std::size_t ResolventExpansion::term_count() const {
  std::size_t n = 0;
  for (const auto& level : terms) n += level.size();
  return n;
}

bool ResolventExpansion::bookkeeping_holds() const {
  if (terms.empty() || terms[0].size() != 1) return false;
  const auto& lead = terms[0][0];
  if (lead.pole != 1 || lead.numerator != Poly::constant(2 * dim, GaussRational(1))) return false;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    for (const auto& t : terms[j]) {
      if (t.depth != static_cast<int>(j) || t.pole < 1) return false;
      auto deg = t.numerator.homogeneous_degree(dim, dim);
      if (!deg || *deg - order * t.pole != -order - t.depth) return false;
    }
  }
  return true;
}

}  // namespace cpw
