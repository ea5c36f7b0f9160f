#include "cpw/contact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "cpw/errors.hpp"

namespace cpw {

namespace {

using cd = std::complex<double>;

// [X_a, X_b] in the X frame, before scaling by c.
constexpr int kBracketSign[3][3][3] = {
    // a = 0: [X_0, X_1] = -X_2, [X_0, X_2] = X_1
    {{0, 0, 0}, {0, 0, -1}, {0, 1, 0}},
    // a = 1: [X_1, X_0] = X_2, [X_1, X_2] = -X_0
    {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}},
    // a = 2: [X_2, X_0] = -X_1, [X_2, X_1] = X_0
    {{0, -1, 0}, {1, 0, 0}, {0, 0, 0}},
};

double rel(double num, double den) { return num == 0.0 ? 0.0 : num / den; }

template <class F>
void parallel_levels(int count, int jobs, F&& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Su2Frame::Su2Frame(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("bracket constant c must be positive");
}

Su2Frame::Vec Su2Frame::bracket(int a, int b) const {
  Vec out{};
  for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] = c_ * kBracketSign[a][b][k];
  return out;
}

Su2Frame::Vec Su2Frame::complex_structure(const Vec& v) const { return {0.0, -v[2], v[1]}; }

double Su2Frame::dtheta(const Vec& u, const Vec& v) const {
  double out = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double w = u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
      if (w != 0.0) out -= w * theta(bracket(a, b));
    }
  }
  return out;
}

double Su2Frame::metric(const Vec& u, const Vec& v) const { return dtheta(u, complex_structure(v)) + theta(u) * theta(v); }

Su2Frame::Vec Su2Frame::orthonormal(int a) const {
  Vec out{};
  out[static_cast<std::size_t>(a)] = a == 0 ? 1.0 : 1.0 / std::sqrt(c_);
  return out;
}

double Su2Frame::structure(int k, int a, int b) const {
  // [Y_a, Y_b] = s_a s_b [X_a, X_b], and X_k = Y_k / s_k.
  const double sa = orthonormal(a)[static_cast<std::size_t>(a)];
  const double sb = orthonormal(b)[static_cast<std::size_t>(b)];
  const double sk = orthonormal(k)[static_cast<std::size_t>(k)];
  return sa * sb * bracket(a, b)[static_cast<std::size_t>(k)] / sk;
}

Su2Frame build_frame(double c) { return Su2Frame(c); }

IrrepBlock irrep_block(int level, const Su2Frame& frame) {
  if (level < 0) throw DomainError("level must be nonnegative");
  const int m = level + 1;
  const double j = 0.5 * level;
  CMatrix jp = CMatrix::Zero(m, m), j3 = CMatrix::Zero(m, m);
  // basis |j, j - r>, r = 0..level
  for (int r = 0; r < m; ++r) {
    const double mz = j - r;
    j3(r, r) = mz;
    if (r > 0) jp(r - 1, r) = std::sqrt(j * (j + 1) - mz * (mz + 1));
  }
  const CMatrix jm = jp.adjoint();
  const CMatrix j1 = 0.5 * (jp + jm);
  const CMatrix j2 = cd(0.0, -0.5) * (jp - jm);
  const double c = frame.c();
  IrrepBlock out;
  out.level = level;
  out.X[0] = cd(0.0, c) * j3;
  out.X[1] = cd(0.0, -c) * j1;
  out.X[2] = cd(0.0, -c) * j2;
  return out;
}

double irrep_defect(const IrrepBlock& block, const Su2Frame& frame) {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    worst = std::max(worst, (block.X[a] + block.X[a].adjoint()).cwiseAbs().maxCoeff());
    for (int b = a + 1; b < 3; ++b) {
      CMatrix d = block.X[a] * block.X[b] - block.X[b] * block.X[a];
      const auto br = frame.bracket(a, b);
      for (int k = 0; k < 3; ++k) d -= br[static_cast<std::size_t>(k)] * block.X[k];
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

DbBlocks db_blocks(const IrrepBlock& block, const Su2Frame& frame) {
  const Eigen::Index m = block.X[0].rows();
  std::array<CMatrix, 3> Y;
  for (int a = 0; a < 3; ++a) {
    Y[a] = CMatrix::Zero(m, m);
    const auto v = frame.orthonormal(a);
    for (int b = 0; b < 3; ++b) {
      if (v[static_cast<std::size_t>(b)] != 0.0) Y[a] += v[static_cast<std::size_t>(b)] * block.X[b];
    }
  }
  const CMatrix I = CMatrix::Identity(m, m);
  auto C = [&](int k, int a, int b) { return frame.structure(k, a, b); };

  DbBlocks out;
  // d_b f = (Y_1 f) w^1 + (Y_2 f) w^2
  out.db0.resize(2 * m, m);
  out.db0 << Y[1], Y[2];
  // (d eta)_{12} = Y_1 h_2 - Y_2 h_1 - sum_k C^k_{12} h_k
  out.db1.resize(m, 2 * m);
  out.db1 << -Y[2] - C(1, 1, 2) * I, Y[1] - C(2, 1, 2) * I;
  // (L_{X_0} eta)_b = Y_0 h_b - sum_k C^k_{0b} h_k
  out.lie0 = Y[0];
  out.lie1.resize(2 * m, 2 * m);
  out.lie1 << Y[0] - C(1, 0, 1) * I, -C(2, 0, 1) * I, -C(1, 0, 2) * I, Y[0] - C(2, 0, 2) * I;
  const double e = frame.dtheta(frame.orthonormal(1), frame.orthonormal(2));
  out.eps = e * I;
  out.eps_inv = (1.0 / e) * I;
  return out;
}

double db_defect(const DbBlocks& db) { return (db.db1 * db.db0 + db.eps * db.lie0).norm(); }

RuminBlock rumin_blocks(const IrrepBlock& block, const Su2Frame& frame) {
  const DbBlocks db = db_blocks(block, frame);
  RuminBlock r;
  r.level = block.level;
  r.d0 = db.db0;
  r.D1 = db.lie1 + db.db0 * db.eps_inv * db.db1;
  r.d2 = db.db1;
  const double a = rel((r.D1 * r.d0).norm(), r.D1.norm() * r.d0.norm());
  const double b = rel((r.d2 * r.D1).norm(), r.d2.norm() * r.D1.norm());
  r.complex_defect = std::max(a, b);
  if (!(r.complex_defect <= 1e-10)) {
    throw InvariantError("Rumin complex property fails on level " + std::to_string(block.level));
  }
  return r;
}

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::L0: return "0";
    case Slot::L11: return "11";
    case Slot::L12: return "12";
    case Slot::L2: return "2";
  }
  return "?";
}

Slot parse_slot(const std::string& text) {
  if (text == "0") return Slot::L0;
  if (text == "11") return Slot::L11;
  if (text == "12") return Slot::L12;
  if (text == "2") return Slot::L2;
  throw DomainError("unknown slot '" + text + "' (expected 0, 11, 12 or 2)");
}

int slot_order(Slot s) { return s == Slot::L11 || s == Slot::L12 ? 4 : 2; }

const CMatrix& LaplacianBlock::operator[](Slot s) const {
  switch (s) {
    case Slot::L0: return delta0;
    case Slot::L11: return delta11;
    case Slot::L12: return delta12;
    case Slot::L2: return delta2;
  }
  return delta0;
}

LaplacianBlock laplacian_blocks(const RuminBlock& r, const LaplacianConvention& conv) {
  LaplacianBlock out;
  out.level = r.level;
  out.delta0 = conv.a0 * r.d0.adjoint() * r.d0;
  const CMatrix a = r.d0 * r.d0.adjoint();
  out.delta11 = a * a + r.D1.adjoint() * r.D1;
  const CMatrix b = r.d2.adjoint() * r.d2;
  out.delta12 = r.D1 * r.D1.adjoint() + b * b;
  out.delta2 = conv.a2 * r.d2 * r.d2.adjoint();
  for (const CMatrix* m : {&out.delta0, &out.delta11, &out.delta12, &out.delta2}) {
    const double n = m->norm();
    if ((*m - m->adjoint()).norm() > 1e-12 * std::max(n, 1.0)) {
      throw InvariantError("non-Hermitian contact Laplacian on level " + std::to_string(r.level));
    }
  }
  return out;
}

namespace {

CMatrix slot_matrix(Slot slot, int level, const ComplexSettings& settings) {
  const Su2Frame frame(settings.c);
  const RuminBlock r = rumin_blocks(irrep_block(level, frame), frame);
  return laplacian_blocks(r, settings.convention)[slot];
}

}  // namespace

std::vector<BlockSpectrum> spectrum(Slot slot, int level_min, int level_max, const ComplexSettings& settings) {
  if (level_min < 0 || level_max < level_min) throw DomainError("bad level range");
  const int count = level_max - level_min + 1;
  std::vector<BlockSpectrum> out(static_cast<std::size_t>(count));
  parallel_levels(count, settings.jobs, [&](int i) {
    const int level = level_min + i;
    const CMatrix d = slot_matrix(slot, level, settings);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
    BlockSpectrum& b = out[static_cast<std::size_t>(i)];
    b.level = level;
    b.multiplicity = level + 1;
    b.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (double v : b.eigenvalues) b.scale = std::max(b.scale, std::abs(v));
  });
  double scale = 0.0;
  for (const auto& b : out) scale = std::max(scale, b.scale);
  for (const auto& b : out) {
    if (!b.eigenvalues.empty() && b.eigenvalues.front() < -1e-10 * std::max(scale, 1.0)) {
      throw InvariantError("negative eigenvalue on level " + std::to_string(b.level));
    }
  }
  return out;
}

std::vector<BlockSpectrum> spectrum(Slot slot, int lmax, const ComplexSettings& settings) {
  return spectrum(slot, 0, lmax, settings);
}

int harmonic_dimension(const std::vector<BlockSpectrum>& spectra) {
  double scale = 0.0;
  for (const auto& b : spectra) scale = std::max(scale, b.scale);
  const double tol = 1e-9 * std::max(scale, 1.0);
  int dim = 0;
  for (const auto& b : spectra) {
    for (double v : b.eigenvalues) {
      if (std::abs(v) < tol) dim += b.multiplicity;
    }
  }
  return dim;
}

WeylFit weyl_fit(Slot slot, int lmax, const ComplexSettings& settings) {
  if (lmax < 4) throw DomainError("Weyl fit needs lmax >= 4");
  const auto inner = spectrum(slot, 0, lmax, settings);
  const auto tail = spectrum(slot, lmax + 1, 2 * lmax + 1, settings);
  WeylFit fit;
  fit.cutoff = tail.front().eigenvalues.front();
  double prev = 0.0;
  for (const auto& b : tail) {
    const double lo = b.eigenvalues.front();
    fit.cutoff = std::min(fit.cutoff, lo);
    if (lo < prev) fit.tail_monotone = false;
    prev = lo;
  }
  std::vector<std::pair<double, int>> all;
  for (const auto& b : inner) {
    for (double v : b.eigenvalues) all.emplace_back(v, b.multiplicity);
  }
  std::sort(all.begin(), all.end());
  fit.lower = fit.cutoff / 16.0;
  fit.points = 40;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t pos = 0;
  long long count = 0;
  for (int i = 0; i < fit.points; ++i) {
    const double lam = fit.lower * std::pow(fit.cutoff / fit.lower, static_cast<double>(i) / (fit.points - 1));
    while (pos < all.size() && all[pos].first <= lam) count += all[pos++].second;
    const double x = std::log(lam), y = std::log(static_cast<double>(count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = fit.points;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

CMatrix block_power(const CMatrix& delta, std::complex<double> s, int* kernel_dim) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double tol = 1e-9 * std::max(scale, 1.0);
  Eigen::VectorXcd f(ev.size());
  int kernel = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < tol) {
      f(i) = 0.0;
      ++kernel;
    } else {
      f(i) = std::exp(s * std::log(ev(i)));
    }
  }
  if (kernel_dim) *kernel_dim = kernel;
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

SpectralPower spectral_power(Slot slot, std::complex<double> s, int lmax, const ComplexSettings& settings) {
  if (lmax < 0) throw DomainError("lmax must be nonnegative");
  SpectralPower out;
  out.blocks.resize(static_cast<std::size_t>(lmax + 1));
  parallel_levels(lmax + 1, settings.jobs, [&](int level) {
    PowerBlock& b = out.blocks[static_cast<std::size_t>(level)];
    b.level = level;
    b.value = block_power(slot_matrix(slot, level, settings), s, &b.kernel_dim);
  });
  if (s.real() < 0.0) {
    for (const auto& b : out.blocks) out.kernel_projected = out.kernel_projected || b.kernel_dim > 0;
  }
  return out;
}

CMatrix contour_block_power(const CMatrix& delta, std::complex<double> s, int nodes_per_segment) {
  // Eigenvalues only place the circle and the arc; the sum itself uses LU solves.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(delta, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  double low = top;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 1e-9 * top) low = std::min(low, ev(i));
  }
  Contour contour;
  contour.r = 0.5 * low;
  contour.r_max = 4.0 * top;
  contour.nodes_per_segment = nodes_per_segment;
  const Eigen::Index m = delta.rows();
  const CMatrix I = CMatrix::Identity(m, m);
  CMatrix acc = CMatrix::Zero(m, m);
  for (const auto& node : contour_nodes(contour)) {
    const cd w = node.weight * std::exp(s * node.log_lambda);
    acc += w * (delta - node.lambda * I).partialPivLu().inverse();
  }
  return cd(0.0, 0.5 / std::numbers::pi) * acc;
}

double contour_power_deviation(Slot slot, std::complex<double> s, int lmax, const ComplexSettings& settings) {
  std::vector<double> dev(static_cast<std::size_t>(lmax + 1), 0.0);
  parallel_levels(lmax + 1, settings.jobs, [&](int level) {
    const CMatrix d = slot_matrix(slot, level, settings);
    const CMatrix eig = block_power(d, s);
    const CMatrix quad = contour_block_power(d, s);
    // absolute on a block that is all kernel
    const double den = eig.norm() > 0.0 ? eig.norm() : 1.0;
    dev[static_cast<std::size_t>(level)] = (quad - eig).norm() / den;
  });
  return *std::max_element(dev.begin(), dev.end());
}

double power_semigroup_check(Slot slot, std::complex<double> s, std::complex<double> t, int lmax,
                             const ComplexSettings& settings) {
  std::vector<double> dev(static_cast<std::size_t>(lmax + 1), 0.0);
  parallel_levels(lmax + 1, settings.jobs, [&](int level) {
    const CMatrix d = slot_matrix(slot, level, settings);
    const CMatrix a = block_power(d, s), b = block_power(d, t), ab = block_power(d, s + t);
    const double scale = std::max(a.norm() * b.norm(), ab.norm());
    dev[static_cast<std::size_t>(level)] = rel((a * b - ab).norm(), scale);
  });
  return *std::max_element(dev.begin(), dev.end());
}

}  // namespace cpw
