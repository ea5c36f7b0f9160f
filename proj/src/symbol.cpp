#include "cpw/symbol.hpp"

#include <cctype>
#include <stdexcept>

namespace cpw {

ClassicalSymbol::ClassicalSymbol(std::size_t dim, int order, std::vector<Poly> parts, Rational box_half_width)
    : dim_(dim), order_(order), parts_(std::move(parts)), zero_(2 * dim), box_(std::move(box_half_width)) {
  if (dim_ == 0) throw std::invalid_argument("chart dimension must be positive");
  if (parts_.empty() || parts_.front().is_zero()) {
    throw std::invalid_argument("leading symbol part must be nonzero");
  }
  if (sgn(box_) <= 0) throw std::invalid_argument("chart box half-width must be positive");
  for (std::size_t j = 0; j < parts_.size(); ++j) {
    const Poly& p = parts_[j];
    if (p.nvars() != 2 * dim_) throw std::invalid_argument("symbol part has wrong variable count");
    if (p.is_zero()) continue;
    auto deg = p.homogeneous_degree(dim_, dim_);
    if (!deg || *deg != order_ - static_cast<int>(j)) {
      throw std::invalid_argument("symbol part " + std::to_string(j) + " is not xi-homogeneous of degree " +
                                  std::to_string(order_ - static_cast<int>(j)));
    }
  }
  while (parts_.size() > 1 && parts_.back().is_zero()) parts_.pop_back();
}

ClassicalSymbol ClassicalSymbol::from_full(std::size_t dim, const Poly& full, Rational box_half_width) {
  if (full.is_zero()) throw std::invalid_argument("zero symbol");
  auto by_degree = full.split_by_degree(dim, dim);
  const int order = by_degree.rbegin()->first;
  std::vector<Poly> parts;
  for (int deg = order; deg >= by_degree.begin()->first; --deg) {
    auto it = by_degree.find(deg);
    parts.push_back(it == by_degree.end() ? Poly(2 * dim) : it->second);
  }
  return ClassicalSymbol(dim, order, std::move(parts), std::move(box_half_width));
}

const Poly& ClassicalSymbol::part(int drop) const {
  if (drop < 0 || drop >= part_count()) return zero_;
  return parts_[static_cast<std::size_t>(drop)];
}

bool ClassicalSymbol::has_constant_coefficients() const {
  for (const auto& p : parts_) {
    if (p.depends_on(0, dim_)) return false;
  }
  return true;
}

Poly ClassicalSymbol::full() const {
  Poly out(2 * dim_);
  for (const auto& p : parts_) out += p;
  return out;
}

// ---------------------------------------------------------------------------
// Expression parser: sum := term (('+'|'-') term)*, term := unary ('*' unary)*,
// unary := '-' unary | power, power := atom ('^' int)?, atom := number |
// rational | variable | 'I' | '(' sum ')'. Division only between numbers.

namespace {

class PolyParser {
 public:
  PolyParser(std::size_t dim, const std::string& text, int first) : dim_(dim), text_(text), first_(first) {}

  Poly parse() {
    Poly p = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                text_ + "'");
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

  Poly sum() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  Poly term() {
    Poly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }
  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start))));
    }
    return base;
  }
  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t n = 2 * dim_;
    if (accept('(')) {
      Poly p = sum();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
        ++pos_;
      }
      return Poly::constant(n, GaussRational(parse_rational(text_.substr(start, pos_ - start))));
    }
    if (c == 'I') {
      ++pos_;
      return Poly::constant(n, GaussRational::i());
    }
    if (c == 'x') {
      ++pos_;
      bool is_xi = pos_ < text_.size() && text_[pos_] == 'i';
      if (is_xi) ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected variable index");
      const long idx = std::stol(text_.substr(start, pos_ - start)) - first_;
      if (idx < 0 || idx >= static_cast<long>(dim_)) fail("variable index out of range");
      return Poly::variable(n, (is_xi ? dim_ : 0) + static_cast<std::size_t>(idx));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::size_t dim_;
  const std::string& text_;
  int first_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::size_t dim, const std::string& text, int first_index) {
  return PolyParser(dim, text, first_index).parse();
}

// ---------------------------------------------------------------------------

nlohmann::json poly_to_json(const Poly& p) {
  auto monomials = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {
    monomials.push_back({{"exp", e},
                         {"coef",
                          {c.re.get_num().get_str(), c.re.get_den().get_str(), c.im.get_num().get_str(),
                           c.im.get_den().get_str()}}});
  }
  return monomials;
}

Poly poly_from_json(std::size_t nvars, const nlohmann::json& monomials) {
  if (!monomials.is_array()) throw std::invalid_argument("monomials must be an array");
  Poly p(nvars);
  for (const auto& m : monomials) {
    auto e = m.at("exp").get<std::vector<int>>();
    if (e.size() != nvars) throw std::invalid_argument("monomial exponent has wrong length");
    for (int v : e) {
      if (v < 0) throw std::invalid_argument("negative exponent");
    }
    const auto& coef = m.at("coef");
    if (!coef.is_array() || coef.size() != 4) throw std::invalid_argument("coef must be [num, den, inum, iden]");
    auto part = [&](std::size_t i) {
      return parse_rational(coef[i].get<std::string>() + "/" + coef[i + 1].get<std::string>());
    };
    p.add_term(e, GaussRational(part(0), part(2)));
  }
  return p;
}

nlohmann::json to_json(const ClassicalSymbol& symbol) {
  nlohmann::json doc;
  doc["vars"] = symbol.dim();
  doc["order"] = symbol.order();
  doc["box"] = to_string(symbol.box_half_width());
  auto parts = nlohmann::json::array();
  for (int j = 0; j < symbol.part_count(); ++j) {
    parts.push_back({{"degree", symbol.order() - j}, {"monomials", poly_to_json(symbol.part(j))}});
  }
  doc["parts"] = parts;
  return doc;
}

ClassicalSymbol symbol_from_json(const nlohmann::json& doc) {
  const auto d = doc.at("vars").get<std::size_t>();
  const int m = doc.at("order").get<int>();
  Rational box(1);
  if (doc.contains("box")) box = parse_rational(doc.at("box").get<std::string>());
  const auto& parts_doc = doc.at("parts");
  if (!parts_doc.is_array() || parts_doc.empty()) throw std::invalid_argument("parts must be a non-empty array");
  int lowest = m;
  for (const auto& part : parts_doc) lowest = std::min(lowest, part.at("degree").get<int>());
  std::vector<Poly> parts(static_cast<std::size_t>(m - lowest + 1), Poly(2 * d));
  for (const auto& part : parts_doc) {
    const int deg = part.at("degree").get<int>();
    if (deg > m) throw std::invalid_argument("part degree exceeds order");
    parts[static_cast<std::size_t>(m - deg)] += poly_from_json(2 * d, part.at("monomials"));
  }
  return ClassicalSymbol(d, m, std::move(parts), std::move(box));
}

}  // namespace cpw
