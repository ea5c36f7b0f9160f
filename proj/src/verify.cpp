#include "cpw/verify.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "cpw/batteries.hpp"
#include "cpw/contact.hpp"
#include "cpw/errors.hpp"
#include "cpw/heisenberg.hpp"
#include "cpw/oracle.hpp"
#include "cpw/report.hpp"
#include "cpw/seeley.hpp"
#include "cpw/star.hpp"

namespace cpw {

namespace {

using cd = std::complex<double>;
using nlohmann::json;

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

StarGrid star_grid(const Config& cfg) { return StarGrid{cfg.L, cfg.n, cfg.kappa}; }

ComplexSettings complex_settings(const Config& cfg, double c) {
  ComplexSettings s;
  s.c = c;
  s.convention = {cfg.a0, cfg.a2};
  s.jobs = cfg.jobs;
  return s;
}

}  // namespace

Check check_binomial_match(const Config& cfg) {
  Check c{"C1", "Seeley expansion of P^s equals the binomial oracle", true, json::object()};
  json ops = json::array();
  for (const auto& op : constant_battery()) {
    const auto cmp = compare_with_oracle(op.symbol(), cfg.depth);
    std::size_t leftover = 0;
    for (const auto& d : cmp.differences) leftover += d.size();
    ops.push_back({{"name", op.name}, {"match", cmp.match}, {"depth_match", cmp.depth_match}, {"difference_terms", leftover}});
    c.pass = c.pass && cmp.match && leftover == 0;
  }
  c.data = {{"depth", cfg.depth}, {"operators", ops}};
  return c;
}

Check check_parametrix(const Config&) {
  constexpr int depth = 3;
  Check c{"C2", "parametrix residuals vanish exactly (variable coefficients)", true, json::object()};
  json ops = json::array();
  bool principal_x = false, lower = false, lower_x = false, order4 = false;
  for (const auto& op : variable_battery()) {
    const auto p = op.symbol();
    const std::size_t d = p.dim();
    principal_x = principal_x || p.principal().depends_on(0, d);
    for (int k = 1; k < p.part_count(); ++k) {
      if (p.part(k).is_zero()) continue;
      lower = true;
      lower_x = lower_x || p.part(k).depends_on(0, d);
    }
    order4 = order4 || p.order() == 4;
    const auto q = resolvent_terms(p, depth);
    const auto rep = verify_parametrix(p, q, depth);
    json res = json::array();
    for (const auto& r : rep.residuals) res.push_back(r.size());
    ops.push_back({{"name", op.name},
                   {"ok", rep.ok},
                   {"first_bad_depth", rep.first_bad_depth},
                   {"residual_terms", res},
                   {"resolvent_terms", q.term_count()},
                   {"bookkeeping", q.bookkeeping_holds()}});
    c.pass = c.pass && rep.ok && q.bookkeeping_holds();
  }
  // every branch of the recursion: x-derivatives of p_m, lower-order parts, x-derivatives of those
  const bool coverage = principal_x && lower && lower_x && order4;
  c.pass = c.pass && coverage;
  c.data = {{"depth", depth},
            {"operators", ops},
            {"coverage", {{"x_dependent_principal", principal_x}, {"lower_order", lower}, {"x_dependent_lower", lower_x}, {"order_4", order4}}}};
  return c;
}

Check check_residues(const Config& cfg) {
  Check c{"C3", "residue calculus: closed form against contour quadrature", true, json::object()};
  std::mt19937_64 rng(cfg.seed ^ 0x3e51d0e5ULL);
  std::uniform_int_distribution<int> uk(1, 4);
  std::uniform_real_distribution<double> umu(std::log(0.5), std::log(20.0)), uim(-2.0, 2.0), u01(0.0, 1.0);
  double worst = 0.0;
  json cases = json::array();
  for (int i = 0; i < cfg.residue_cases; ++i) {
    const int k = uk(rng);
    const double mu = std::exp(umu(rng));
    const double re = -2.5 + u01(rng) * (k - 1.1 + 2.5);
    const cd s(re, uim(rng));
    const cd exact = residue_power(k, s, mu);
    const auto quad = residue_by_quadrature(k, s, mu, cfg.contour_nodes);
    const double err = std::abs(quad.value - exact) / std::abs(exact);
    worst = std::max(worst, err);
    cases.push_back({{"k", k}, {"mu", mu}, {"s", complex_json(s)}, {"rel_error", err}, {"discretization", quad.discretization_error}});
  }
  // s = 0 gives the identity (only the simple pole survives), s = 1 gives mu for k = 1 and -1 for k = 2.
  bool norm_ok = true;
  for (int k = 1; k <= 6; ++k) {
    const SPoly coef = residue_coefficient(k);
    norm_ok = norm_ok && coef.eval(Rational(0)) == Rational(k == 1 ? 1 : 0);
    norm_ok = norm_ok && coef.eval(Rational(1)) == Rational(k == 1 ? 1 : (k == 2 ? -1 : 0));
  }
  c.pass = worst < cfg.tol_residue && norm_ok;
  c.data = {{"cases", cases}, {"worst_rel_error", worst}, {"tolerance", cfg.tol_residue}, {"normalizations_exact", norm_ok}};
  return c;
}

Check check_homogeneity(const Config& cfg) {
  // Sample points, t and lambda are rational and numerators are evaluated
  // exactly; in double precision the numerators of some terms cancel by
  // factors up to 1e8 and the rounding would swamp the check.
  Check c{"C4", "homogeneity of resolvent terms and power parts", true, json::object()};
  std::mt19937_64 rng(cfg.seed ^ 0x40a0c0deULL);
  std::uniform_int_distribution<int> ux(-16, 16), uxi(-16, 16), ut(2, 12), ure(-24, 24), uim(4, 24);
  std::uniform_real_distribution<double> usr(-1.5, 1.5), usi(-1.0, 1.0);
  std::bernoulli_distribution sign(0.5);
  double worst_resolvent = 0.0, worst_power = 0.0;
  bool degree_law = true;
  std::size_t resolvent_samples = 0, power_samples = 0;
  std::vector<BatteryOperator> ops = constant_battery();
  ops.insert(ops.end(), variable_battery().begin(), variable_battery().end());

  // x = box * i / 16, xi = i / 8 with xi != 0
  auto point = [&](std::size_t d, const Rational& box) {
    std::vector<Rational> pt(2 * d);
    for (std::size_t i = 0; i < d; ++i) pt[i] = box * Rational(ux(rng), 16);
    bool zero = true;
    while (zero) {
      for (std::size_t i = 0; i < d; ++i) {
        pt[d + i] = Rational(uxi(rng), 8);
        zero = zero && sgn(pt[d + i]) == 0;
      }
    }
    return pt;
  };
  auto scaled = [](std::vector<Rational> pt, std::size_t d, const Rational& t) {
    for (std::size_t i = 0; i < d; ++i) pt[d + i] *= t;
    return pt;
  };
  auto power = [](GaussRational z, int k) {
    GaussRational out(1);
    const bool inv = k < 0;
    for (int i = 0; i < std::abs(k); ++i) out *= z;
    return inv ? GaussRational(1) / out : out;
  };
  auto rpow = [](const Rational& t, int k) {
    Rational out(1);
    for (int i = 0; i < std::abs(k); ++i) out *= t;
    return k < 0 ? Rational(1) / out : out;
  };

  for (const auto& op : ops) {
    const auto p = op.symbol();
    const std::size_t d = p.dim();
    const int m = p.order();
    const auto q = resolvent_terms(p, cfg.depth);
    for (int j = 0; j <= q.depth(); ++j) {
      for (const auto& term : q.terms[static_cast<std::size_t>(j)]) {
        for (int r = 0; r < cfg.sample_points; ++r) {
          const auto pt = point(d, p.box_half_width());
          const Rational t(ut(rng), 4);
          const GaussRational lambda(Rational(ure(rng), 8), Rational(sign(rng) ? uim(rng) : -uim(rng), 8));
          const auto pt_t = scaled(pt, d, t);
          const GaussRational a = term.numerator.eval(pt) * power(q.base.eval(pt) - lambda, -term.pole);
          const GaussRational b =
              term.numerator.eval(pt_t) * power(q.base.eval(pt_t) - lambda * GaussRational(rpow(t, m)), -term.pole);
          if (a.is_zero()) continue;
          const GaussRational diff = b - a * GaussRational(rpow(t, -m - term.depth));
          worst_resolvent = std::max(worst_resolvent, std::abs(diff.to_complex()) / std::abs(a.to_complex()));
          ++resolvent_samples;
        }
      }
    }
    const auto e = complex_power_terms(q);
    degree_law = degree_law && e.degree_law_holds();
    for (int j = 0; j <= e.depth(); ++j) {
      for (const auto& term : e.parts[static_cast<std::size_t>(j)]) {
        for (int r = 0; r < cfg.sample_points; ++r) {
          const auto pt = point(d, p.box_half_width());
          const Rational t(ut(rng), 4);
          const auto pt_t = scaled(pt, d, t);
          const cd s(usr(rng), usi(rng));
          const cd expo = to_double(term.exp_a) * s + to_double(term.exp_b);
          auto value = [&](const std::vector<Rational>& x) {
            return term.scalar.eval(s) * term.numerator.eval(x).to_complex() *
                   std::exp(expo * std::log(to_double(q.base.eval(x).re)));
          };
          const cd a = value(pt), b = value(pt_t);
          if (std::abs(a) == 0.0) continue;
          const cd expect = a * std::exp((static_cast<double>(m) * s - static_cast<double>(j)) * std::log(to_double(t)));
          worst_power = std::max(worst_power, std::abs(b - expect) / std::abs(expect));
          ++power_samples;
        }
      }
    }
  }
  c.pass = degree_law && worst_resolvent < cfg.tol_homogeneity && worst_power < cfg.tol_homogeneity;
  c.data = {{"worst_resolvent_rel_error", worst_resolvent},
            {"worst_power_rel_error", worst_power},
            {"resolvent_samples", resolvent_samples},
            {"power_samples", power_samples},
            {"degree_law", degree_law},
            {"tolerance", cfg.tol_homogeneity}};
  return c;
}

Check check_integer_reduction(const Config& cfg) {
  Check c{"C5", "P^k P^(s-k) equals P^s", true, json::object()};
  std::mt19937_64 rng(cfg.seed ^ 0x5eed5ULL);
  std::uniform_real_distribution<double> ure(-0.9, 0.9), uim(-1.0, 1.0);
  json ops = json::array();
  double worst = 0.0;
  auto run = [&](const BatteryOperator& op, bool exact) {
    for (int k : {1, 2}) {
      const cd s(ure(rng), uim(rng));
      const auto r = integer_power_reduction(op.symbol(), s, k, cfg.depth, cfg.seed);
      worst = std::max(worst, r.max_numeric_deviation);
      const bool ok = exact ? r.exact_match : r.max_numeric_deviation < cfg.tol_reduction;
      c.pass = c.pass && ok;
      ops.push_back({{"name", op.name},
                     {"k", k},
                     {"s", complex_json(s)},
                     {"exact_match", r.exact_match},
                     {"numeric_deviation", r.max_numeric_deviation},
                     {"required", exact ? "exact" : "numeric"}});
    }
  };
  for (const auto& op : constant_battery()) run(op, true);
  for (const auto& op : variable_battery()) run(op, false);
  c.data = {{"depth", cfg.depth}, {"cases", ops}, {"worst_numeric_deviation", worst}, {"tolerance", cfg.tol_reduction}};
  return c;
}

Check check_star_degree(const Config& cfg) {
  Check c{"C6", "star product degree additivity", true, json::object()};
  json pairs = json::array();
  for (auto [m1, m2] : star_degree_pairs()) {
    char e1[96];
    std::snprintf(e1, sizeof e1, "norm^(%.17g)*(2*xi1^2 + xi2^2 + norm^2)", m1 - 2.0);
    char e2[64];
    std::snprintf(e2, sizeof e2, "norm^(%.17g)", m2);
    const HHomogeneousSymbol p1(e1, m1), p2(e2, m2);
    const auto fit = fit_star_degree(p1, p2, star_grid(cfg));
    const bool ok = fit.worst_deviation <= cfg.tol_degree && fit.grid_drift < cfg.tol_drift;
    c.pass = c.pass && ok;
    pairs.push_back({{"m1", m1},
                     {"m2", m2},
                     {"p1", p1.label()},
                     {"p2", p2.label()},
                     {"expected", fit.expected},
                     {"fitted", fit.fitted},
                     {"worst_deviation", fit.worst_deviation},
                     {"grid_drift", fit.grid_drift},
                     {"pass", ok}});
  }
  c.data = {{"grid", {{"L", cfg.L}, {"n", cfg.n}, {"drift_n", 2 * cfg.n}, {"kappa", cfg.kappa}}},
            {"pairs", pairs},
            {"tolerance", cfg.tol_degree},
            {"drift_tolerance", cfg.tol_drift}};
  return c;
}

Check check_microlocality(const Config& cfg) {
  Check c{"C7", "non-microlocality of the Heisenberg product", true, json::object()};
  const ProbeConfig probe;
  const auto rep = microlocality_probe(probe, star_grid(cfg));
  const bool probe_ok = rep.classical_diff == 0.0 && rep.heisenberg_diff > cfg.probe_factor * rep.noise_floor;

  GapConfig gap;
  gap.n = cfg.gap_n;
  gap.epsilon = cfg.gap_epsilon;
  gap.kappa = cfg.kappa;
  std::vector<double> lambdas;
  const int steps = static_cast<int>(std::floor(cfg.gap_lambda_max / cfg.gap_lambda_step + 1e-9));
  for (int i = 0; i <= steps; ++i) lambdas.push_back(i * cfg.gap_lambda_step);
  const auto g = parametric_domain_gap(gap, lambdas);
  bool gap_ok = true;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    gap_ok = gap_ok && (lambdas[i] == 0.0 ? g.fractions[i] == 0.0 : g.fractions[i] > 0.0);
  }
  c.pass = probe_ok && gap_ok;
  c.data = {{"probe",
             {{"classical_diff", rep.classical_diff},
              {"heisenberg_diff", rep.heisenberg_diff},
              {"noise_floor", rep.noise_floor},
              {"grid_drift", rep.grid_drift},
              {"factor", cfg.probe_factor},
              {"pass", probe_ok}}},
            {"gap",
             {{"lambdas", lambdas},
              {"fractions", g.fractions},
              {"stencil_points", g.stencil_points},
              {"stencil_radius", g.stencil_radius},
              {"monotone", g.monotone},
              {"pass", gap_ok}}}};
  return c;
}

Check check_rumin_complex(const Config& cfg) {
  Check c{"C8", "Rumin complex and the d_b defect identity", true, json::object()};
  json per_c = json::array();
  for (double cc : {1.0, 2.0}) {
    const Su2Frame frame(cc);
    double complex_worst = 0.0, db_worst = 0.0, irrep_worst = 0.0;
    bool thrown = false;
    for (int l = 0; l <= cfg.lmax; ++l) {
      const auto block = irrep_block(l, frame);
      const double xs = std::max(1.0, block.X[1].cwiseAbs().maxCoeff());
      irrep_worst = std::max(irrep_worst, irrep_defect(block, frame) / (xs * xs));
      const auto db = db_blocks(block, frame);
      db_worst = std::max(db_worst, db_defect(db) / std::max(1.0, db.db1.norm() * db.db0.norm()));
      try {
        complex_worst = std::max(complex_worst, rumin_blocks(block, frame).complex_defect);
      } catch (const InvariantError&) {
        thrown = true;
      }
    }
    const bool ok = !thrown && complex_worst < cfg.tol_complex && db_worst < cfg.tol_complex && irrep_worst < cfg.tol_complex;
    c.pass = c.pass && ok;
    per_c.push_back({{"c", cc},
                     {"complex_defect", complex_worst},
                     {"db_defect", db_worst},
                     {"irrep_defect", irrep_worst},
                     {"pass", ok}});
  }
  c.data = {{"lmax", cfg.lmax}, {"tolerance", cfg.tol_complex}, {"conventions", per_c}};
  return c;
}

Check check_cohomology(const Config& cfg) {
  Check c{"C9", "harmonic dimensions (1, 0, 0, 1)", true, json::object()};
  json per_c = json::array();
  const std::vector<int> expect{1, 0, 0, 1};
  for (double cc : {1.0, 2.0}) {
    const auto s = complex_settings(cfg, cc);
    std::vector<int> dims;
    for (Slot slot : {Slot::L0, Slot::L11, Slot::L12, Slot::L2}) dims.push_back(harmonic_dimension(spectrum(slot, cfg.lmax, s)));
    c.pass = c.pass && dims == expect;
    per_c.push_back({{"c", cc}, {"dimensions", dims}});
  }
  c.data = {{"lmax", cfg.lmax}, {"expected", expect}, {"conventions", per_c}};
  return c;
}

Check check_weyl(const Config& cfg) {
  Check c{"C10", "Weyl exponents of the contact Laplacians", true, json::object()};
  json slots = json::array();
  const auto s = complex_settings(cfg, cfg.c);
  for (Slot slot : {Slot::L0, Slot::L11, Slot::L12, Slot::L2}) {
    const auto fit = weyl_fit(slot, cfg.lmax, s);
    const double expect = 4.0 / slot_order(slot);
    const bool ok = std::abs(fit.exponent - expect) <= cfg.tol_weyl && fit.tail_monotone;
    c.pass = c.pass && ok;
    slots.push_back({{"slot", slot_name(slot)},
                     {"order", slot_order(slot)},
                     {"expected", expect},
                     {"exponent", fit.exponent},
                     {"cutoff", fit.cutoff},
                     {"window", {fit.lower, fit.cutoff}},
                     {"tail_monotone", fit.tail_monotone},
                     {"pass", ok}});
  }
  c.data = {{"lmax", cfg.lmax}, {"c", cfg.c}, {"tolerance", cfg.tol_weyl}, {"slots", slots}};
  return c;
}

Check check_spectral_powers(const Config& cfg) {
  Check c{"C11", "spectral complex powers on blocks", true, json::object()};
  const auto set = complex_settings(cfg, cfg.c);
  json contour = json::array();
  const std::vector<std::pair<Slot, cd>> contour_cases{{Slot::L0, cd(-0.7, 0.0)}, {Slot::L11, cd(-0.7, 0.3)}, {Slot::L2, cd(-1.5, 0.5)}};
  for (auto [slot, s] : contour_cases) {
    const double dev = contour_power_deviation(slot, s, cfg.contour_lmax, set);
    c.pass = c.pass && dev < cfg.tol_contour;
    contour.push_back({{"slot", slot_name(slot)}, {"s", complex_json(s)}, {"deviation", dev}});
  }
  std::mt19937_64 rng(cfg.seed ^ 0x5e4160ULL);
  std::uniform_real_distribution<double> ure(-1.5, 1.5), uim(-1.0, 1.0);
  json pairs = json::array();
  const Slot slots[] = {Slot::L0, Slot::L11, Slot::L12, Slot::L2};
  double worst = 0.0;
  for (int i = 0; i < cfg.semigroup_pairs; ++i) {
    const cd s(ure(rng), uim(rng)), t(ure(rng), uim(rng));
    const Slot slot = slots[i % 4];
    const double dev = power_semigroup_check(slot, s, t, cfg.lmax, set);
    worst = std::max(worst, dev);
    pairs.push_back({{"slot", slot_name(slot)}, {"s", complex_json(s)}, {"t", complex_json(t)}, {"deviation", dev}});
  }
  c.pass = c.pass && worst < cfg.tol_semigroup;
  c.data = {{"contour_lmax", cfg.contour_lmax},
            {"contour", contour},
            {"contour_tolerance", cfg.tol_contour},
            {"semigroup", pairs},
            {"semigroup_worst", worst},
            {"semigroup_tolerance", cfg.tol_semigroup},
            {"lmax", cfg.lmax}};
  return c;
}

Check check_heisenberg_structure(const Config& cfg) {
  Check c{"H", "group law, star inverse and kernel round trip", true, json::object()};
  const auto law = group_law_defect(GroupLaw(cfg.kappa), 1000, cfg.seed);
  const bool law_ok = law.associativity < 1e-12 && law.inverse < 1e-12;

  InverseConfig inv;
  inv.grid = star_grid(cfg);
  const auto rep = star_inverse_negative_lambda(inv);

  const auto rt = symbol_kernel_round_trip(HHomogeneousSymbol("norm^(-1)", -1.0), 8.0, 128, 12, cfg.seed);
  const bool rt_ok = rt.grid_nodes > 0 && rt.max_rel_error < 5e-2 && rt.even_defect < 1e-12;
  c.pass = law_ok && rep.converged && rep.monotone && rt_ok;
  json planes = json::array();
  for (const auto& p : rep.planes) {
    planes.push_back({{"xi0", p.xi0}, {"iterations", p.history.size()}, {"annulus_residual", p.annulus_residual}, {"converged", p.converged}});
  }
  c.data = {{"group_law", {{"associativity", law.associativity}, {"inverse", law.inverse}}},
            {"inverse", {{"lambda", inv.lambda}, {"planes", planes}, {"monotone", rep.monotone}}},
            {"round_trip", {{"max_rel_error", rt.max_rel_error}, {"grid_nodes", rt.grid_nodes}, {"offgrid_rel_error", rt.offgrid_rel_error}, {"even_defect", rt.even_defect}}}};
  return c;
}

std::vector<SuiteEntry> suite(const std::string& name) {
  const SuiteEntry c1{"C1", check_binomial_match}, c2{"C2", check_parametrix}, c3{"C3", check_residues},
      c4{"C4", check_homogeneity}, c5{"C5", check_integer_reduction}, c6{"C6", check_star_degree},
      c7{"C7", check_microlocality}, c8{"C8", check_rumin_complex}, c9{"C9", check_cohomology},
      c10{"C10", check_weyl}, c11{"C11", check_spectral_powers}, h{"H", check_heisenberg_structure};
  if (name == "seeley") return {c2, c4, c5};
  if (name == "oracle") return {c1, c3};
  if (name == "heisenberg") return {c6, c7, h};
  if (name == "rumin") return {c8, c9, c10, c11};
  if (name == "all") return {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, h};
  throw DomainError("unknown suite '" + name + "'");
}

bool SuiteResult::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  SuiteResult r;
  r.name = name;
  for (const auto& e : suite(name)) r.checks.push_back(e.run(cfg));
  return r;
}

json suite_report(const SuiteResult& r, const Config& cfg) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"data", c.data}});
  return {{"header", report_header(cfg)}, {"suite", r.name}, {"pass", r.pass()}, {"checks", checks}};
}

}  // namespace cpw
