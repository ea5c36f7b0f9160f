#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cpw/config.hpp"

namespace cpw {

struct Check {
  std::string id;
  std::string title;
  bool pass = false;
  nlohmann::json data;
};

/// constant battery: seeley expansion of P^s equals the binomial oracle through cfg.depth
Check check_binomial_match(const Config& cfg);
/// variable battery: parametrix residuals vanish exactly through depth 3
Check check_parametrix(const Config& cfg);
/// closed-form residues against contour quadrature; s = 0 and s = 1 normalizations
Check check_residues(const Config& cfg);
/// scaling of every resolvent term and of every power part, both batteries
Check check_homogeneity(const Config& cfg);
/// P^k P^(s-k) against P^s
Check check_integer_reduction(const Config& cfg);
/// degree additivity of the star product over star_degree_pairs()
Check check_star_degree(const Config& cfg);
/// microlocality probe and parametric domain gap
Check check_microlocality(const Config& cfg);
/// complex property and d_b defect for c = 1, 2
Check check_rumin_complex(const Config& cfg);
/// harmonic dimensions (1, 0, 0, 1) for c = 1, 2
Check check_cohomology(const Config& cfg);
/// Weyl exponents of the four Laplacians
Check check_weyl(const Config& cfg);
/// contour quadrature against functional calculus and the semigroup law on blocks
Check check_spectral_powers(const Config& cfg);
/// group law, star inverse for lambda < 0, round trip of kernels
Check check_heisenberg_structure(const Config& cfg);

struct SuiteEntry {
  std::string id;
  std::function<Check(const Config&)> run;
};

/// "seeley", "oracle", "heisenberg", "rumin" or "all"; throws DomainError otherwise.
std::vector<SuiteEntry> suite(const std::string& name);

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
};

SuiteResult run_suite(const std::string& name, const Config& cfg);
/// Header, per-check pass flags and data; byte-stable under dump_report.
nlohmann::json suite_report(const SuiteResult& r, const Config& cfg);

}  // namespace cpw
