#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cpw/contact.hpp"
#include "cpw/errors.hpp"

using namespace cpw;
using cd = std::complex<double>;

TEST_CASE("frame identities") {
  for (double c : {1.0, 2.0, 0.7}) {
    const Su2Frame f = build_frame(c);
    const Su2Frame::Vec x0{1, 0, 0}, x1{0, 1, 0}, x2{0, 0, 1};
    CHECK(f.theta(x0) == 1.0);
    CHECK(f.dtheta(x0, x1) == 0.0);
    CHECK(f.dtheta(x0, x2) == 0.0);
    CHECK(f.dtheta(x1, x2) == doctest::Approx(c));
    CHECK(f.dtheta(x1, f.complex_structure(x1)) > 0.0);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        CHECK(f.metric(f.orthonormal(a), f.orthonormal(b)) == doctest::Approx(a == b ? 1.0 : 0.0));
      }
    }
  }
  CHECK_THROWS_AS(build_frame(0.0), DomainError);
  CHECK_THROWS_AS(build_frame(-1.0), DomainError);
}

TEST_CASE("irreducible blocks") {
  const Su2Frame f(2.0);
  for (int l = 0; l <= 12; ++l) {
    auto b = irrep_block(l, f);
    CHECK(b.X[0].rows() == l + 1);
    CHECK(irrep_defect(b, f) < 1e-12 * std::max(1, l * l));
  }
  CHECK_THROWS_AS(irrep_block(-1, f), DomainError);
}

TEST_CASE("d_b and the defect identity") {
  for (double c : {1.0, 2.0}) {
    const Su2Frame f(c);
    auto zero = db_blocks(irrep_block(0, f), f);
    CHECK(zero.db0.norm() == 0.0);
    for (int l = 0; l <= 20; ++l) {
      auto db = db_blocks(irrep_block(l, f), f);
      CHECK(db_defect(db) < 1e-12 * std::max(1.0, db.db1.norm() * db.db0.norm()));
    }
  }
}

TEST_CASE("middle operator against the hand-derived block") {
  for (double c : {1.0, 2.0}) {
    const Su2Frame f(c);
    for (int l : {0, 1, 4, 9}) {
      auto b = irrep_block(l, f);
      const CMatrix X0 = b.X[0], Y1 = b.X[1] / std::sqrt(c), Y2 = b.X[2] / std::sqrt(c);
      const auto m = X0.rows();
      const CMatrix I = CMatrix::Identity(m, m);
      CMatrix D(2 * m, 2 * m);
      D << X0 - Y1 * Y2, c * I + Y1 * Y1, -c * I - Y2 * Y2, X0 + Y2 * Y1;
      CMatrix d2(m, 2 * m);
      d2 << -Y2, Y1;
      auto r = rumin_blocks(b, f);
      CHECK((r.D1 - D).norm() < 1e-12 * std::max(1.0, D.norm()));
      CHECK((r.d2 - d2).norm() < 1e-12 * std::max(1.0, d2.norm()));
    }
    // level 0: X_0 vanishes and only the rotation of the coframe remains.
    auto r0 = rumin_blocks(irrep_block(0, f), f);
    CMatrix rot(2, 2);
    rot << 0, c, -c, 0;
    CHECK((r0.D1 - rot).norm() < 1e-14);
  }
}

TEST_CASE("complex property") {
  for (double c : {1.0, 2.0}) {
    const Su2Frame f(c);
    for (int l = 0; l <= 40; ++l) CHECK(rumin_blocks(irrep_block(l, f), f).complex_defect < 1e-10);
  }
}

namespace {

int rank(const CMatrix& a) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > 1e-10 * s(0);
  return r;
}

int kernel_dim(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  const double top = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
  int k = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) k += std::abs(es.eigenvalues()(i)) < 1e-9 * top;
  return k;
}

}  // namespace

TEST_CASE("Laplacians: Hermitian, Hodge counts per block") {
  const Su2Frame f(2.0);
  for (int l = 0; l <= 10; ++l) {
    auto r = rumin_blocks(irrep_block(l, f), f);
    auto L = laplacian_blocks(r);
    const int m = l + 1;
    for (Slot s : {Slot::L0, Slot::L11, Slot::L12, Slot::L2}) CHECK((L[s] - L[s].adjoint()).norm() < 1e-12 * std::max(1.0, L[s].norm()));
    const int r0 = rank(r.d0), r1 = rank(r.D1), r2 = rank(r.d2);
    CHECK(m == kernel_dim(L.delta0) + r0);
    CHECK(2 * m == kernel_dim(L.delta11) + r0 + r1);
    CHECK(2 * m == kernel_dim(L.delta12) + r1 + r2);
    CHECK(m == kernel_dim(L.delta2) + r2);
  }
  LaplacianConvention bad;
  bad.a0 = -1.0;
  ComplexSettings s;
  s.convention = bad;
  CHECK_THROWS_AS(spectrum(Slot::L0, 4, s), InvariantError);
}

TEST_CASE("sublaplacian spectrum in closed form") {
  // 2 d0^* d0 = -(2/c)(X_1^2 + X_2^2) = 2c (j(j+1) - m^2) on level 2j.
  for (double c : {1.0, 2.0}) {
    ComplexSettings s;
    s.c = c;
    auto sp = spectrum(Slot::L0, 15, s);
    CHECK(sp[0].eigenvalues[0] == doctest::Approx(0.0));
    for (const auto& b : sp) {
      const double j = 0.5 * b.level;
      std::vector<double> expect;
      for (int r = 0; r <= b.level; ++r) {
        const double mz = j - r;
        expect.push_back(2.0 * c * (j * (j + 1) - mz * mz));
      }
      std::sort(expect.begin(), expect.end());
      REQUIRE(expect.size() == b.eigenvalues.size());
      for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(expect[i] - b.eigenvalues[i]) < 1e-10 * (1 + expect[i]));
      CHECK(b.multiplicity == b.level + 1);
    }
  }
}

TEST_CASE("harmonic dimensions and Weyl exponents") {
  for (double c : {1.0, 2.0}) {
    ComplexSettings s;
    s.c = c;
    CHECK(harmonic_dimension(spectrum(Slot::L0, 40, s)) == 1);
    CHECK(harmonic_dimension(spectrum(Slot::L11, 40, s)) == 0);
    CHECK(harmonic_dimension(spectrum(Slot::L12, 40, s)) == 0);
    CHECK(harmonic_dimension(spectrum(Slot::L2, 40, s)) == 1);
  }
  ComplexSettings s;
  for (Slot sl : {Slot::L0, Slot::L11, Slot::L12, Slot::L2}) {
    auto w = weyl_fit(sl, 40, s);
    const double expect = 4.0 / slot_order(sl);
    CHECK(std::abs(w.exponent - expect) < 0.15);
    CHECK(w.tail_monotone);
  }
  CHECK_THROWS_AS(weyl_fit(Slot::L0, 3, s), DomainError);
  CHECK(parse_slot("12") == Slot::L12);
  CHECK_THROWS_AS(parse_slot("3"), DomainError);
}

TEST_CASE("spectral powers") {
  ComplexSettings set;
  for (int l : {0, 3, 7}) {
    const Su2Frame f(set.c);
    const CMatrix d = laplacian_blocks(rumin_blocks(irrep_block(l, f), f)).delta0;
    CHECK((block_power(d, 1.0) - d).norm() < 1e-10 * std::max(1.0, d.norm()));
    const CMatrix pinv = d.completeOrthogonalDecomposition().pseudoInverse();
    CHECK((block_power(d, -1.0) - pinv).norm() < 1e-10 * std::max(1.0, pinv.norm()));
    // Delta^2 Delta^-1 = Delta
    CHECK((block_power(d, 2.0) * block_power(d, -1.0) - d).norm() < 1e-10 * std::max(1.0, d.norm()));
    // Delta^0 is the projection off the kernel
    const CMatrix p = block_power(d, 0.0);
    CHECK((p * p - p).norm() < 1e-12);
    CHECK(std::abs(p.trace().real() - (l == 0 ? 0 : l + 1)) < 1e-12);
  }
  auto sp = spectral_power(Slot::L0, {-0.5, 0.0}, 4, set);
  CHECK(sp.kernel_projected);
  CHECK(sp.blocks[0].kernel_dim == 1);
  CHECK_FALSE(spectral_power(Slot::L11, {-0.5, 0.0}, 4, set).kernel_projected);

  CHECK(contour_power_deviation(Slot::L0, {-0.7, 0.0}, 10, set) < 1e-8);
  CHECK(contour_power_deviation(Slot::L11, {-0.7, 0.3}, 6, set) < 1e-8);
  CHECK(power_semigroup_check(Slot::L0, {0.3, 0.7}, {0.7, -0.7}, 20, set) < 1e-10);
  CHECK(power_semigroup_check(Slot::L12, {0.3, 0.7}, {0.7, -0.7}, 20, set) < 1e-10);
}

TEST_CASE("parallel sweep is deterministic") {
  ComplexSettings one, four;
  four.jobs = 4;
  auto a = spectrum(Slot::L11, 20, one), b = spectrum(Slot::L11, 20, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].eigenvalues == b[i].eigenvalues);
}
