// Command-line driver. Exit codes: 0 ok, 1 a check failed, 2 bad usage or
// configuration, 3 non-elliptic operator, 4 unknown subcommand, 5 anything else.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "cpw/config.hpp"
#include "cpw/contact.hpp"
#include "cpw/errors.hpp"
#include "cpw/oracle.hpp"
#include "cpw/report.hpp"
#include "cpw/seeley.hpp"
#include "cpw/star.hpp"
#include "cpw/verify.hpp"

using namespace cpw;
using nlohmann::json;
using cd = std::complex<double>;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kNonElliptic = 3, kUnknownCommand = 4, kOther = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cd parse_complex(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, re) || (!m[1].matched && !m[2].matched)) {
    throw UsageError("cannot parse complex number '" + text + "' (expected e.g. 0.5+0i)");
  }
  const double re_part = m[1].matched ? std::stod(m[1].str()) : 0.0;
  double im_part = 0.0;
  if (m[2].matched) {
    im_part = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (m[2].str() == "-") im_part = -im_part;
  }
  return {re_part, im_part};
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

ClassicalSymbol load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read operator file '" + path + "'");
  json doc;
  try {
    in >> doc;
    return symbol_from_json(doc);
  } catch (const json::exception& e) {
    throw UsageError("malformed operator file '" + path + "': " + e.what());
  }
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

void emit_json(const std::string& path, const json& doc) {
  if (!path.empty()) write_text(path, dump_report(doc));
}

struct Globals {
  std::string config_path;
  std::string emit;
  std::uint64_t seed = 0;
  int jobs = 0;
};

Config resolve_config(const Globals& g, CLI::Option* seed_opt, CLI::Option* jobs_opt) {
  Config cfg = g.config_path.empty() ? Config{} : load_config(g.config_path);
  if (seed_opt->count() > 0) cfg.seed = g.seed;
  if (jobs_opt->count() > 0) cfg.jobs = g.jobs;
  validate(cfg);
  return cfg;
}

int print_suite(const SuiteResult& r, FILE* to) {
  for (const auto& c : r.checks) std::fprintf(to, "%-4s %s  %s\n", c.id.c_str(), c.pass ? "PASS" : "FAIL", c.title.c_str());
  std::fprintf(to, "%s: %s\n", r.name.c_str(), r.pass() ? "all checks passed" : "some checks failed");
  return r.pass() ? kOk : kCheckFailed;
}

HHomogeneousSymbol radial(double m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "norm^(%.17g)", m);
  return HHomogeneousSymbol(buf, m);
}

ProbeConfig parse_cone(const std::string& text, ProbeConfig cfg) {
  static const std::regex axis_re(R"(axis\s*=\s*\(\s*([^,]+),\s*([^,]+),\s*([^)]+)\))");
  static const std::regex angle_re(R"(angle\s*=\s*([0-9.eE+-]+))");
  std::smatch m;
  bool any = false;
  try {
    if (std::regex_search(text, m, axis_re)) {
      cfg.axis = {std::stod(m[1].str()), std::stod(m[2].str()), std::stod(m[3].str())};
      any = true;
    }
    if (std::regex_search(text, m, angle_re)) {
      cfg.angle = std::stod(m[1].str());
      any = true;
    }
  } catch (const std::exception&) {
    any = false;
  }
  if (!any) throw UsageError("cannot parse cone '" + text + "' (expected axis=(a,b,c),angle=t)");
  return cfg;
}

std::vector<double> parse_sweep(const std::string& text) {
  double a = 0, b = 0, h = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0.0) || b < a) {
    throw UsageError("cannot parse sweep '" + text + "' (expected start:stop:step)");
  }
  std::vector<double> out;
  const int steps = static_cast<int>(std::floor((b - a) / h + 1e-9));
  for (int i = 0; i <= steps; ++i) out.push_back(a + i * h);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex powers, Heisenberg symbols and the Rumin complex on S^3", "cpw"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "INI configuration file")->envname("CPW_CONFIG");
  app.add_option("--emit", g.emit, "report output path ('-' for stdout)")->envname("CPW_EMIT");
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for all random sampling")->envname("CPW_SEED");
  auto* jobs_opt = app.add_option("--jobs", g.jobs, "worker threads")->envname("CPW_JOBS")->check(CLI::PositiveNumber);

  // powers / resolvent
  std::string op_path, s_text = "0.5+0i";
  int depth = 4;
  auto* powers = app.add_subcommand("powers", "symbol expansion of P^s");
  powers->add_option("--operator", op_path, "operator JSON")->required();
  powers->add_option("--depth", depth, "number of lower-order parts")->check(CLI::Range(0, 8));
  powers->add_option("--s", s_text, "complex exponent");
  auto* resolvent = app.add_subcommand("resolvent", "resolvent parametrix terms");
  resolvent->add_option("--operator", op_path, "operator JSON")->required();
  resolvent->add_option("--depth", depth, "depth")->check(CLI::Range(0, 8));

  auto* oracle = app.add_subcommand("oracle", "independent oracles");
  oracle->require_subcommand(1);
  auto* oracle_compare = oracle->add_subcommand("compare", "seeley expansion against the binomial oracle");
  oracle_compare->add_option("--operator", op_path, "operator JSON")->required();
  oracle_compare->add_option("--depth", depth, "depth")->check(CLI::Range(0, 8));

  // heisenberg
  double deg1 = -2.0, deg2 = -1.5;
  int grid_n = 0;
  std::string p1_expr, p2_expr, cone, sweep = "0:2:0.1";
  auto* heis = app.add_subcommand("heisenberg", "Heisenberg star product experiments");
  heis->require_subcommand(1);
  auto* star = heis->add_subcommand("star", "degree fit of p1 * p2");
  star->add_option("--deg1", deg1, "degree of p1");
  star->add_option("--deg2", deg2, "degree of p2");
  star->add_option("--p1", p1_expr, "expression for p1 (default norm^deg1)");
  star->add_option("--p2", p2_expr, "expression for p2 (default norm^deg2)");
  star->add_option("--grid", grid_n, "grid points per axis");
  auto* probe = heis->add_subcommand("probe", "microlocality probe");
  probe->add_option("--cone", cone, "perturbation cone, axis=(a,b,c),angle=t");
  probe->add_option("--grid", grid_n, "grid points per axis");
  auto* gap = heis->add_subcommand("gap", "parametric domain gap");
  gap->add_option("--lambda-sweep", sweep, "start:stop:step");

  // rumin
  std::string slot_text = "0", check_mode;
  int lmax = -1;
  auto* rumin = app.add_subcommand("rumin", "Rumin complex on S^3");
  rumin->require_subcommand(1);
  auto* spectrum_cmd = rumin->add_subcommand("spectrum", "eigenvalues per level (CSV)");
  spectrum_cmd->add_option("--slot", slot_text, "0, 11, 12 or 2");
  spectrum_cmd->add_option("--lmax", lmax, "largest level");
  auto* rpowers = rumin->add_subcommand("powers", "spectral complex powers on blocks");
  rpowers->add_option("--slot", slot_text, "0, 11, 12 or 2");
  rpowers->add_option("--s", s_text, "complex exponent");
  rpowers->add_option("--lmax", lmax, "largest level");
  rpowers->add_option("--check", check_mode, "cross-check: contour")->check(CLI::IsMember({"contour"}));
  auto* rverify = rumin->add_subcommand("verify", "block invariants");

  auto* verify = app.add_subcommand("verify", "invariant suites");
  verify->require_subcommand(1);
  std::vector<CLI::App*> suites;
  for (const char* name : {"seeley", "heisenberg", "rumin", "oracle", "all"}) {
    suites.push_back(verify->add_subcommand(name, std::string("run the ") + name + " suite"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    std::cerr << "unknown subcommand: " << e.what() << "\n";
    return kUnknownCommand;
  } catch (const CLI::RequiredError& e) {
    // a missing subcommand is reported as unknown; a missing option is usage
    const std::string what = e.what();
    if (what.find("subcommand") != std::string::npos) {
      std::cerr << what << "\n";
      return kUnknownCommand;
    }
    std::cerr << what << "\n";
    return kUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    const Config cfg = resolve_config(g, seed_opt, jobs_opt);
    json doc = {{"header", report_header(cfg)}};

    if (*powers) {
      const ClassicalSymbol p = load_operator(op_path);
      const cd s = parse_complex(s_text);
      const auto e = complex_power_terms(p, depth);
      json parts = json::array();
      for (int j = 0; j <= e.depth(); ++j) {
        parts.push_back({{"j", j}, {"degree", complex_json(static_cast<double>(p.order()) * s - static_cast<double>(j))},
                         {"terms", terms_json(e.parts[static_cast<std::size_t>(j)])}});
      }
      doc["command"] = "powers";
      doc["s"] = complex_json(s);
      doc["order"] = p.order();
      doc["base"] = poly_to_json(e.base);
      doc["parts"] = parts;
      doc["degree_law"] = e.degree_law_holds();
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return e.degree_law_holds() ? kOk : kCheckFailed;
    }
    if (*resolvent) {
      const ClassicalSymbol p = load_operator(op_path);
      const auto rho = rho_bound(p);
      const auto q = resolvent_terms(p, depth);
      const auto rep = verify_parametrix(p, q, depth);
      json levels = json::array();
      for (int j = 0; j <= q.depth(); ++j) {
        json terms = json::array();
        for (const auto& t : q.terms[static_cast<std::size_t>(j)]) {
          terms.push_back({{"pole", t.pole}, {"numerator", poly_to_json(t.numerator)}});
        }
        levels.push_back({{"j", j}, {"terms", terms}});
      }
      doc["command"] = "resolvent";
      doc["rho"] = rho.rho.get_str();
      doc["rho_certified"] = rho.certified;
      doc["terms"] = levels;
      doc["parametrix_ok"] = rep.ok;
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return rep.ok ? kOk : kCheckFailed;
    }
    if (*oracle_compare) {
      const ClassicalSymbol p = load_operator(op_path);
      const auto cmp = compare_with_oracle(p, depth);
      json diffs = json::array();
      for (std::size_t j = 0; j < cmp.depth_match.size(); ++j) {
        diffs.push_back({{"j", j},
                         {"match", static_cast<bool>(cmp.depth_match[j])},
                         {"difference", terms_json(j < cmp.differences.size() ? cmp.differences[j] : std::vector<PowerBasisTerm>{})}});
      }
      doc["command"] = "oracle compare";
      doc["depth"] = depth;
      doc["match"] = cmp.match;
      doc["differences"] = diffs;
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return cmp.match ? kOk : kCheckFailed;
    }
    if (*star) {
      StarGrid grid{cfg.L, grid_n > 0 ? grid_n : cfg.n, cfg.kappa};
      const HHomogeneousSymbol p1 = p1_expr.empty() ? radial(deg1) : HHomogeneousSymbol(p1_expr, deg1);
      const HHomogeneousSymbol p2 = p2_expr.empty() ? radial(deg2) : HHomogeneousSymbol(p2_expr, deg2);
      const auto fit = fit_star_degree(p1, p2, grid);
      const double floor = abelian_deviation(p1, p2, grid);
      const bool ok = fit.worst_deviation <= cfg.tol_degree && fit.grid_drift < cfg.tol_drift;
      doc["command"] = "heisenberg star";
      doc["value"] = fit.fitted;
      doc["expected"] = fit.expected;
      doc["worst_deviation"] = fit.worst_deviation;
      doc["per_ray"] = fit.per_ray;
      doc["noise_floor"] = floor;
      doc["grid_drift"] = fit.grid_drift;
      doc["grid"] = {{"L", grid.L}, {"n", grid.n}, {"kappa", grid.kappa}};
      doc["pass"] = ok;
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return ok ? kOk : kCheckFailed;
    }
    if (*probe) {
      StarGrid grid{cfg.L, grid_n > 0 ? grid_n : cfg.n, cfg.kappa};
      const ProbeConfig pc = cone.empty() ? ProbeConfig{} : parse_cone(cone, ProbeConfig{});
      const auto rep = microlocality_probe(pc, grid);
      const bool ok = rep.classical_diff == 0.0 && rep.heisenberg_diff > cfg.probe_factor * rep.noise_floor;
      doc["command"] = "heisenberg probe";
      doc["value"] = rep.heisenberg_diff;
      doc["classical_value"] = rep.classical_diff;
      doc["noise_floor"] = rep.noise_floor;
      doc["grid_drift"] = rep.grid_drift;
      doc["cone"] = {{"axis", pc.axis}, {"angle", pc.angle}};
      doc["pass"] = ok;
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return ok ? kOk : kCheckFailed;
    }
    if (*gap) {
      const auto lambdas = parse_sweep(sweep);
      GapConfig gc;
      gc.n = cfg.gap_n;
      gc.epsilon = cfg.gap_epsilon;
      gc.kappa = cfg.kappa;
      const auto rep = parametric_domain_gap(gc, lambdas);
      GapConfig coarse = gc;
      coarse.n = gc.n / 2;
      const auto half = parametric_domain_gap(coarse, lambdas);
      double drift = 0.0;
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (rep.fractions[i] > 0.0) drift = std::max(drift, std::abs(rep.fractions[i] - half.fractions[i]) / rep.fractions[i]);
      }
      bool ok = true;
      for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ok = ok && (lambdas[i] <= 0.0 ? rep.fractions[i] == 0.0 : rep.fractions[i] > 0.0);
      }
      doc["command"] = "heisenberg gap";
      doc["lambdas"] = lambdas;
      doc["value"] = rep.fractions;
      doc["noise_floor"] = 0.0;
      doc["grid_drift"] = drift;
      doc["stencil_points"] = rep.stencil_points;
      doc["stencil_radius"] = rep.stencil_radius;
      doc["monotone"] = rep.monotone;
      doc["pass"] = ok;
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return ok ? kOk : kCheckFailed;
    }
    ComplexSettings cs;
    cs.c = cfg.c;
    cs.convention = {cfg.a0, cfg.a2};
    cs.jobs = cfg.jobs;
    if (*spectrum_cmd) {
      const Slot slot = parse_slot(slot_text);
      const auto sp = spectrum(slot, lmax >= 0 ? lmax : cfg.lmax, cs);
      std::string csv = "slot,level,index,eigenvalue,multiplicity\n";
      char buf[64];
      for (const auto& b : sp) {
        for (std::size_t i = 0; i < b.eigenvalues.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%.17g", b.eigenvalues[i]);
          csv += std::string(slot_name(slot)) + "," + std::to_string(b.level) + "," + std::to_string(i) + "," + buf + "," +
                 std::to_string(b.multiplicity) + "\n";
        }
      }
      write_text(g.emit.empty() ? "-" : g.emit, csv);
      return kOk;
    }
    if (*rpowers) {
      const Slot slot = parse_slot(slot_text);
      const cd s = parse_complex(s_text);
      const int top = lmax >= 0 ? lmax : cfg.contour_lmax;
      const auto pw = spectral_power(slot, s, top, cs);
      json blocks = json::array();
      for (const auto& b : pw.blocks) {
        blocks.push_back({{"level", b.level}, {"kernel_dim", b.kernel_dim}, {"trace", complex_json(b.value.trace())}, {"norm", b.value.norm()}});
      }
      doc["command"] = "rumin powers";
      doc["slot"] = slot_name(slot);
      doc["s"] = complex_json(s);
      doc["kernel_projected"] = pw.kernel_projected;
      doc["blocks"] = blocks;
      bool ok = true;
      if (check_mode == "contour") {
        const double dev = contour_power_deviation(slot, s, top, cs);
        ok = dev < cfg.tol_contour;
        doc["contour_deviation"] = dev;
        doc["pass"] = ok;
      }
      emit_json(g.emit.empty() ? "-" : g.emit, doc);
      return ok ? kOk : kCheckFailed;
    }
    auto run = [&](const std::string& name) {
      const SuiteResult r = run_suite(name, cfg);
      emit_json(g.emit, suite_report(r, cfg));
      return print_suite(r, g.emit == "-" ? stderr : stdout);  // keep stdout parseable
    };
    if (*rverify) return run("rumin");
    for (auto* sc : suites) {
      if (*sc) return run(sc->get_name());
    }
    return kUnknownCommand;
  } catch (const NonEllipticError& e) {
    std::cerr << "non-elliptic operator: " << e.what() << "\n";
    return kNonElliptic;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
