#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cpw {

/// Run configuration. File format is INI with the sections below; every key
/// is optional and unknown keys are rejected.
struct Config {
  // [run]
  std::uint64_t seed = 1;
  int jobs = 1;
  // [seeley]
  int depth = 4;
  int contour_nodes = 512;
  int residue_cases = 50;
  int sample_points = 24;
  // [heisenberg]
  double L = 16.0;
  int n = 128;
  double kappa = 1.0;
  int gap_n = 2048;
  double gap_epsilon = 1e-4;
  double gap_lambda_max = 2.0;
  double gap_lambda_step = 0.1;
  // [rumin]
  int lmax = 40;
  double c = 2.0;
  double a0 = 2.0;
  double a2 = 2.0;
  int contour_lmax = 10;
  int semigroup_pairs = 10;
  // [tolerances]
  double tol_residue = 1e-8;
  double tol_homogeneity = 1e-12;
  double tol_reduction = 1e-10;
  double tol_degree = 0.1;
  double tol_drift = 0.1;
  double tol_complex = 1e-10;
  double tol_weyl = 0.15;
  double tol_contour = 1e-8;
  double tol_semigroup = 1e-10;
  double probe_factor = 10.0;
};

/// Parses an INI file; throws ConfigError listing every problem found.
Config load_config(const std::string& path);
/// Same, from text.
Config parse_config(const std::string& text);
/// Applies key = value pairs addressed as "section.key".
void apply_overrides(Config& cfg, const std::map<std::string, std::string>& values);
/// Range checks (positive tolerances, sizes); throws ConfigError.
void validate(const Config& cfg);

/// Every field except run.jobs as "section.key = value", one per line, fixed order, %.17g floats.
std::string canonical_text(const Config& cfg);
/// SHA-256 of canonical_text, lowercase hex.
std::string config_hash(const Config& cfg);

}  // namespace cpw
