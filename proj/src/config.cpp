#include "cpw/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "cpw/errors.hpp"

namespace cpw {

namespace {

struct Field {
  const char* key;  // section.key
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T out{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw ConfigError(key + ": cannot parse '" + text + "'");
  return out;
}

template <class T>
Field field(const char* key, T Config::*member) {
  return {key,
          [key, member](Config& c, const std::string& v) { c.*member = parse_number<T>(key, v); },
          [member](const Config& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return fmt(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      field("run.seed", &Config::seed),
      field("run.jobs", &Config::jobs),
      field("seeley.depth", &Config::depth),
      field("seeley.contour_nodes", &Config::contour_nodes),
      field("seeley.residue_cases", &Config::residue_cases),
      field("seeley.sample_points", &Config::sample_points),
      field("heisenberg.L", &Config::L),
      field("heisenberg.n", &Config::n),
      field("heisenberg.kappa", &Config::kappa),
      field("heisenberg.gap_n", &Config::gap_n),
      field("heisenberg.gap_epsilon", &Config::gap_epsilon),
      field("heisenberg.gap_lambda_max", &Config::gap_lambda_max),
      field("heisenberg.gap_lambda_step", &Config::gap_lambda_step),
      field("rumin.lmax", &Config::lmax),
      field("rumin.c", &Config::c),
      field("rumin.a0", &Config::a0),
      field("rumin.a2", &Config::a2),
      field("rumin.contour_lmax", &Config::contour_lmax),
      field("rumin.semigroup_pairs", &Config::semigroup_pairs),
      field("tolerances.residue", &Config::tol_residue),
      field("tolerances.homogeneity", &Config::tol_homogeneity),
      field("tolerances.reduction", &Config::tol_reduction),
      field("tolerances.degree", &Config::tol_degree),
      field("tolerances.drift", &Config::tol_drift),
      field("tolerances.complex", &Config::tol_complex),
      field("tolerances.weyl", &Config::tol_weyl),
      field("tolerances.contour", &Config::tol_contour),
      field("tolerances.semigroup", &Config::tol_semigroup),
      field("tolerances.probe_factor", &Config::probe_factor),
  };
  return all;
}

const Field* find_field(const std::string& key) {
  for (const auto& f : fields()) {
    if (key == f.key) return &f;
  }
  return nullptr;
}

}  // namespace

void apply_overrides(Config& cfg, const std::map<std::string, std::string>& values) {
  std::vector<std::string> problems;
  for (const auto& [key, value] : values) {
    const Field* f = find_field(key);
    if (!f) {
      problems.push_back("unknown key '" + key + "'");
      continue;
    }
    try {
      f->set(cfg, value);
    } catch (const ConfigError& e) {
      problems.emplace_back(e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

Config parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("invalid configuration: line ") + std::to_string(e.line()) + ": " + e.message());
  }
  std::map<std::string, std::string> values;
  std::vector<std::string> problems;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      problems.push_back("key '" + section + "' outside a section");
      continue;
    }
    for (const auto& [key, value] : body) values[section + "." + key] = value.data();
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  Config cfg;
  apply_overrides(cfg, values);
  validate(cfg);
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const Config& c) {
  std::vector<std::string> problems;
  auto need = [&](bool ok, const char* what) {
    if (!ok) problems.emplace_back(what);
  };
  need(c.jobs >= 1, "run.jobs must be >= 1");
  need(c.depth >= 0 && c.depth <= 8, "seeley.depth must be in [0, 8]");
  need(c.contour_nodes >= 64 && c.contour_nodes % 4 == 0, "seeley.contour_nodes must be a multiple of 4, at least 64");
  need(c.residue_cases >= 1, "seeley.residue_cases must be >= 1");
  need(c.sample_points >= 1, "seeley.sample_points must be >= 1");
  need(c.L > 0.0, "heisenberg.L must be positive");
  need(c.n >= 16 && c.n % 2 == 0, "heisenberg.n must be even and >= 16");
  need(c.kappa > 0.0, "heisenberg.kappa must be positive");
  need(c.gap_n >= 16 && c.gap_n % 2 == 0, "heisenberg.gap_n must be even and >= 16");
  need(c.gap_epsilon > 0.0 && c.gap_epsilon < 1.0, "heisenberg.gap_epsilon must be in (0, 1)");
  need(c.gap_lambda_max > 0.0, "heisenberg.gap_lambda_max must be positive");
  need(c.gap_lambda_step > 0.0, "heisenberg.gap_lambda_step must be positive");
  need(c.lmax >= 4, "rumin.lmax must be >= 4");
  need(c.c > 0.0, "rumin.c must be positive");
  need(c.a0 > 0.0 && c.a2 > 0.0, "rumin.a0 and rumin.a2 must be positive");
  need(c.contour_lmax >= 0, "rumin.contour_lmax must be >= 0");
  need(c.semigroup_pairs >= 1, "rumin.semigroup_pairs must be >= 1");
  for (double t : {c.tol_residue, c.tol_homogeneity, c.tol_reduction, c.tol_degree, c.tol_drift, c.tol_complex,
                   c.tol_weyl, c.tol_contour, c.tol_semigroup, c.probe_factor}) {
    if (!(t > 0.0)) {
      problems.emplace_back("tolerances must be positive");
      break;
    }
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

std::string canonical_text(const Config& cfg) {
  std::string out;
  for (const auto& f : fields()) {
    if (std::string(f.key) == "run.jobs") continue;  // thread count never changes a result
    out += std::string(f.key) + " = " + f.get(cfg) + "\n";
  }
  return out;
}

std::string config_hash(const Config& cfg) {
  const std::string text = canonical_text(cfg);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace cpw
