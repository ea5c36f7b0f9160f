#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "cpw/contour.hpp"

namespace cpw {

using CMatrix = Eigen::MatrixXcd;

/// Left-invariant frame X_0, X_1, X_2 on SU(2) with
///   [X_1, X_2] = -c X_0, [X_0, X_1] = -c X_2, [X_0, X_2] = c X_1,
/// contact form theta dual to X_0 and J X_1 = X_2, J X_2 = -X_1, J X_0 = 0.
/// Vectors and covectors are coefficient triples in this frame.
class Su2Frame {
 public:
  explicit Su2Frame(double c);
  double c() const { return c_; }

  using Vec = std::array<double, 3>;
  Vec bracket(int a, int b) const;
  Vec complex_structure(const Vec& v) const;
  double theta(const Vec& v) const { return v[0]; }
  /// dtheta(u, v) = -theta([u, v]) for left-invariant u, v.
  double dtheta(const Vec& u, const Vec& v) const;
  /// g = dtheta(., J.) + theta^2
  double metric(const Vec& u, const Vec& v) const;
  /// Orthonormal frame Y_0 = X_0, Y_j = X_j / sqrt(c), as vectors in the X frame.
  Vec orthonormal(int a) const;
  /// Structure constants of the orthonormal frame: [Y_a, Y_b] = sum_k C(k, a, b) Y_k.
  double structure(int k, int a, int b) const;

 private:
  double c_;
};

Su2Frame build_frame(double c);

/// X_0, X_1, X_2 in the irreducible representation of dimension level + 1;
/// X_1 = -i c J_1, X_2 = -i c J_2, X_0 = i c J_3 with the usual spin matrices.
struct IrrepBlock {
  int level = 0;
  std::array<CMatrix, 3> X;
};
IrrepBlock irrep_block(int level, const Su2Frame& frame);
/// Largest entry of [X_a, X_b] - (structure) over the three brackets, and of X + X^*.
double irrep_defect(const IrrepBlock& block, const Su2Frame& frame);

/// Horizontal forms in the orthonormal coframe; Lambda^1_H has rank 2, Lambda^2_H rank 1.
struct DbBlocks {
  CMatrix db0;      // Lambda^0 -> Lambda^1_H
  CMatrix db1;      // Lambda^1_H -> Lambda^2_H
  CMatrix lie0;     // L_{X_0} on Lambda^0
  CMatrix lie1;     // L_{X_0} on Lambda^1_H
  CMatrix eps;      // exterior multiplication by dtheta, Lambda^0 -> Lambda^2_H
  CMatrix eps_inv;  // its inverse
};
/// From the structure equations of the orthonormal frame.
DbBlocks db_blocks(const IrrepBlock& block, const Su2Frame& frame);
/// || d_b^2 + eps(dtheta) L_{X_0} || on functions.
double db_defect(const DbBlocks& db);

/// Slots Lambda^0, Lambda^1_H, theta ^ Lambda^1_H, theta ^ Lambda^2_H of ranks 1, 2, 2, 1.
struct RuminBlock {
  int level = 0;
  CMatrix d0;  // d_b
  CMatrix D1;  // L_{X_0} + d_b eps(dtheta)^-1 d_b
  CMatrix d2;  // d_b on the second-half slot
  double complex_defect = 0.0;  // max of ||D1 d0|| / (||D1|| ||d0||) and ||d2 D1|| / (||d2|| ||D1||)
};
/// Throws InvariantError when the complex property fails beyond 1e-10.
RuminBlock rumin_blocks(const IrrepBlock& block, const Su2Frame& frame);

/// Weights of the order-2 Laplacians, Delta_0 = a0 d0^* d0 and Delta_2 = a2 d2 d2^*.
struct LaplacianConvention {
  double a0 = 2.0;
  double a2 = 2.0;
};

enum class Slot { L0, L11, L12, L2 };
const char* slot_name(Slot s);
/// "0", "11", "12", "2"; throws DomainError otherwise.
Slot parse_slot(const std::string& text);
int slot_order(Slot s);

struct LaplacianBlock {
  int level = 0;
  CMatrix delta0, delta11, delta12, delta2;
  const CMatrix& operator[](Slot s) const;
};
/// Delta_11 = (d0 d0^*)^2 + D1^* D1, Delta_12 = D1 D1^* + (d2^* d2)^2. Throws
/// InvariantError on a non-Hermitian result.
LaplacianBlock laplacian_blocks(const RuminBlock& r, const LaplacianConvention& conv = {});

struct ComplexSettings {
  double c = 2.0;
  LaplacianConvention convention;
  int jobs = 1;
};

struct BlockSpectrum {
  int level = 0;
  int multiplicity = 1;  // level + 1
  std::vector<double> eigenvalues;  // ascending
  double scale = 0.0;               // largest |eigenvalue|
};

/// Eigenvalues of one slot on every level <= lmax. Throws InvariantError on an
/// eigenvalue below -1e-10 scale. Levels run in parallel with `jobs` threads.
std::vector<BlockSpectrum> spectrum(Slot slot, int level_min, int level_max, const ComplexSettings& settings);
std::vector<BlockSpectrum> spectrum(Slot slot, int lmax, const ComplexSettings& settings);

/// Eigenvalues below 1e-9 scale count as harmonic; weighted by multiplicity.
int harmonic_dimension(const std::vector<BlockSpectrum>& spectra);

struct WeylFit {
  double exponent = 0.0;
  double cutoff = 0.0;  // completeness bound: every eigenvalue below it lives on a level <= lmax
  double lower = 0.0;   // fit window [lower, cutoff]
  int points = 0;
  bool tail_monotone = true;  // smallest eigenvalue nondecreasing over the probed tail
};
/// Least-squares slope of log N(lambda) against log lambda on a log grid in
/// [cutoff / 16, cutoff]; the cutoff is the smallest eigenvalue over levels
/// lmax + 1 .. 2 lmax + 1.
WeylFit weyl_fit(Slot slot, int lmax, const ComplexSettings& settings);

struct PowerBlock {
  int level = 0;
  CMatrix value;
  int kernel_dim = 0;
};
struct SpectralPower {
  std::vector<PowerBlock> blocks;
  bool kernel_projected = false;  // Re s < 0 with a kernel present
};

/// Functional calculus lambda -> lambda^s on the positive part and 0 on the kernel.
CMatrix block_power(const CMatrix& delta, std::complex<double> s, int* kernel_dim = nullptr);
SpectralPower spectral_power(Slot slot, std::complex<double> s, int lmax, const ComplexSettings& settings);

/// (i / 2 pi) sum over the keyhole nodes of lambda^s (delta - lambda)^-1 d lambda,
/// with r half the smallest positive eigenvalue and R_max = 4 lambda_max.
CMatrix contour_block_power(const CMatrix& delta, std::complex<double> s, int nodes_per_segment = 512);

/// max over levels of ||contour - eigen|| / ||eigen||.
double contour_power_deviation(Slot slot, std::complex<double> s, int lmax, const ComplexSettings& settings);

/// max over levels of ||D^s D^t - D^(s+t)|| / max(||D^s|| ||D^t||, ||D^(s+t)||).
double power_semigroup_check(Slot slot, std::complex<double> s, std::complex<double> t, int lmax,
                             const ComplexSettings& settings);

}  // namespace cpw
