// Python module. Structured results cross the boundary as JSON text and are
// decoded on the Python side, so the report layout matches the CLI.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpw/config.hpp"
#include "cpw/contact.hpp"
#include "cpw/errors.hpp"
#include "cpw/oracle.hpp"
#include "cpw/report.hpp"
#include "cpw/seeley.hpp"
#include "cpw/star.hpp"
#include "cpw/symbol.hpp"
#include "cpw/verify.hpp"

namespace py = pybind11;
using namespace cpw;
using nlohmann::json;
using cd = std::complex<double>;

namespace {

ClassicalSymbol make_symbol(const std::string& expr, std::size_t dim) {
  return ClassicalSymbol::from_full(dim, parse_poly(dim, expr));
}

json terms_json(const std::vector<PowerBasisTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    json scalar = json::array();
    for (const auto& c : t.scalar.coeffs()) scalar.push_back(c.get_str());
    out.push_back({{"numerator", poly_to_json(t.numerator)},
                   {"exp_a", t.exp_a.get_str()},
                   {"exp_b", t.exp_b.get_str()},
                   {"scalar_in_s", scalar}});
  }
  return out;
}

std::string power_expansion(const std::string& expr, std::size_t dim, int depth) {
  const auto p = make_symbol(expr, dim);
  const auto e = complex_power_terms(p, depth);
  json parts = json::array();
  for (int j = 0; j <= e.depth(); ++j) parts.push_back(terms_json(e.parts[static_cast<std::size_t>(j)]));
  return json{{"order", p.order()}, {"base", poly_to_json(e.base)}, {"parts", parts}, {"degree_law", e.degree_law_holds()}}
      .dump();
}

cd power_part_value(const std::string& expr, std::size_t dim, int depth, int j, const std::vector<double>& x_xi, cd s) {
  const auto e = complex_power_terms(make_symbol(expr, dim), depth);
  if (j < 0 || j > e.depth()) throw DomainError("part index out of range");
  if (x_xi.size() != 2 * dim) throw DomainError("point must have 2*dim coordinates");
  return e.evaluate_part(j, x_xi, s);
}

std::string oracle_compare(const std::string& expr, std::size_t dim, int depth) {
  const auto cmp = compare_with_oracle(make_symbol(expr, dim), depth);
  std::size_t leftover = 0;
  for (const auto& d : cmp.differences) leftover += d.size();
  return json{{"match", cmp.match}, {"depth_match", cmp.depth_match}, {"difference_terms", leftover}}.dump();
}

ComplexSettings settings(double c, double a0, double a2, int jobs) {
  ComplexSettings cs;
  cs.c = c;
  cs.convention = {a0, a2};
  cs.jobs = jobs;
  return cs;
}

std::vector<std::pair<int, std::vector<double>>> rumin_spectrum(const std::string& slot, int lmax, double c, double a0,
                                                                double a2, int jobs) {
  std::vector<std::pair<int, std::vector<double>>> out;
  for (const auto& b : spectrum(parse_slot(slot), lmax, settings(c, a0, a2, jobs))) out.emplace_back(b.level, b.eigenvalues);
  return out;
}

double rumin_contour_deviation(const std::string& slot, cd s, int lmax, double c) {
  return contour_power_deviation(parse_slot(slot), s, lmax, settings(c, 2.0, 2.0, 1));
}

std::string star_degree(double m1, double m2, double L, int n, double kappa) {
  const auto name = [](double m) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "norm^(%.17g)", m);
    return std::string(buf);
  };
  const StarGrid grid{L, n, kappa};
  const auto fit = fit_star_degree(HHomogeneousSymbol(name(m1), m1), HHomogeneousSymbol(name(m2), m2), grid);
  return json{{"fitted", fit.fitted},
              {"expected", fit.expected},
              {"worst_deviation", fit.worst_deviation},
              {"per_ray", fit.per_ray},
              {"grid_drift", fit.grid_drift}}
      .dump();
}

std::string run_verify(const std::string& name, const std::string& ini, std::uint64_t seed) {
  Config cfg = parse_config(ini);
  cfg.seed = seed;
  return dump_report(suite_report(run_suite(name, cfg), cfg));
}

std::string hash_of(const std::string& ini) { return config_hash(parse_config(ini)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "complex powers, Heisenberg star products and the Rumin complex";
  py::register_exception<NonEllipticError>(m, "NonEllipticError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("power_expansion", &power_expansion, py::arg("expr"), py::arg("dim"), py::arg("depth") = 4);
  m.def("power_part_value", &power_part_value, py::arg("expr"), py::arg("dim"), py::arg("depth"), py::arg("j"),
        py::arg("x_xi"), py::arg("s"));
  m.def("oracle_compare", &oracle_compare, py::arg("expr"), py::arg("dim"), py::arg("depth") = 4);
  m.def("rumin_spectrum", &rumin_spectrum, py::arg("slot"), py::arg("lmax"), py::arg("c") = 2.0, py::arg("a0") = 2.0,
        py::arg("a2") = 2.0, py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("rumin_contour_deviation", &rumin_contour_deviation, py::arg("slot"), py::arg("s"), py::arg("lmax"),
        py::arg("c") = 2.0, py::call_guard<py::gil_scoped_release>());
  m.def("star_degree", &star_degree, py::arg("m1"), py::arg("m2"), py::arg("L") = 16.0, py::arg("n") = 128,
        py::arg("kappa") = 1.0, py::call_guard<py::gil_scoped_release>());
  m.def("run_verify", &run_verify, py::arg("suite"), py::arg("ini") = "", py::arg("seed") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("config_hash", &hash_of, py::arg("ini") = "");
}
