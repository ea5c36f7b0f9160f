// Runs the twelve acceptance criteria and prints one line per criterion.
// Tolerances and runtime limits are fixed here, independent of config defaults.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cpw/config.hpp"
#include "cpw/verify.hpp"

using namespace cpw;

namespace {

Config pinned() {
  Config c;
  c.seed = 1;
  c.depth = 4;
  c.residue_cases = 50;
  c.lmax = 40;
  c.tol_residue = 1e-8;
  c.tol_homogeneity = 1e-12;
  c.tol_reduction = 1e-10;
  c.tol_degree = 0.1;
  c.tol_drift = 0.1;
  c.tol_complex = 1e-10;
  c.tol_weyl = 0.15;
  c.tol_contour = 1e-8;
  c.tol_semigroup = 1e-10;
  c.probe_factor = 10.0;
  c.semigroup_pairs = 10;
  return c;
}

struct Criterion {
  const char* id;
  const char* title;
  double limit_s;  // 0: no runtime bound
  std::function<bool(std::string&)> run;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::function<bool(std::string&)> from_check(Check (*fn)(const Config&), const Config& cfg) {
  return [fn, cfg](std::string& note) {
    const Check c = fn(cfg);
    if (!c.pass) note = c.data.dump().substr(0, 400);
    return c.pass;
  };
}

}  // namespace

int main() {
  const Config cfg = pinned();
  std::vector<Criterion> all = {
      {"C1", "seeley expansion equals binomial oracle, 10 operators, depth 4", 10.0, from_check(check_binomial_match, cfg)},
      {"C2", "parametrix residuals exactly zero, variable battery, depth 3", 30.0, from_check(check_parametrix, cfg)},
      {"C3", "residues against contour quadrature, s = 0 and s = 1 exact", 0.0, from_check(check_residues, cfg)},
      {"C4", "homogeneity of resolvent terms and power parts < 1e-12", 0.0, from_check(check_homogeneity, cfg)},
      {"C5", "P^k P^(s-k) = P^s, exact / < 1e-10, depth 4", 0.0, from_check(check_integer_reduction, cfg)},
      {"C6", "star degree additivity within 0.1, drift < 10%", 300.0, from_check(check_star_degree, cfg)},
      {"C7", "non-microlocality probe and domain gap", 0.0, from_check(check_microlocality, cfg)},
      {"C8", "Rumin complex identities to 1e-10 scale, c = 1, 2", 0.0, from_check(check_rumin_complex, cfg)},
      {"C9", "harmonic dimensions (1, 0, 0, 1)", 0.0, from_check(check_cohomology, cfg)},
      {"C10", "Weyl exponents 2 and 1 within 0.15", 120.0, from_check(check_weyl, cfg)},
      {"C11", "contour powers to 1e-8, semigroup to 1e-10", 0.0, from_check(check_spectral_powers, cfg)},
      {"C12", "verify all twice: byte-identical reports", 0.0,
       [](std::string& note) {
         const std::string a = "acceptance_run_a.json", b = "acceptance_run_b.json";
         std::remove(a.c_str());
         std::remove(b.c_str());
         const std::string base = std::string(CPW_BIN) + " --seed 1 verify all > /dev/null --emit ";
         const int ca = shell(base + a);
         const int cb = shell(base + b);
         const std::string ta = slurp(a), tb = slurp(b);
         std::remove(a.c_str());
         std::remove(b.c_str());
         if (ta.empty() || tb.empty()) {
           note = "missing report (exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + ")";
           return false;
         }
         if (ta != tb) {
           note = "reports differ";
           return false;
         }
         note = "exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + "; " + std::to_string(ta.size()) + " bytes";
         return true;
       }},
  };

  int failed = 0;
  for (const auto& c : all) {
    std::string note;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.limit_s > 0.0 && secs > c.limit_s) {
      ok = false;
      note = "runtime over " + std::to_string(c.limit_s) + " s";
    }
    std::printf("%-4s %s  %8.2f s  %s\n", c.id, ok ? "PASS" : "FAIL", secs, c.title);
    if (!note.empty()) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
