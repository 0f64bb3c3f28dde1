#include "nhl/model.hpp"

#include <cmath>
#include <unordered_map>

namespace nhl {

namespace {

const cd I{0.0, 1.0};

long long cell_key(int x, int y) {
  return (static_cast<long long>(x) << 32) ^ (static_cast<unsigned int>(y));
}

Eigen::Matrix2cd tx_block(const HoppingParams& p) {
  Eigen::Matrix2cd b;
  b << -p.ts, -p.tsp, p.tsp, p.tp;
  return b;
}

Eigen::Matrix2cd txy_block(const HoppingParams& p) {
  Eigen::Matrix2cd b;
  b << 0, 0, p.tsp_diag, 0;
  return b;
}

Eigen::Matrix2cd onsite_block(const HoppingParams& p) {
  Eigen::Matrix2cd b;
  b << 0, -I * p.dy, I * p.dy, -I * p.gamma;
  return b;
}

}  // namespace

Eigen::Matrix2cd ladder_bloch(const HoppingParams& p, double kx, double ky) {
  const double h0 = (p.tp - p.ts) * std::cos(kx);
  const double hx = -2 * p.tsp_diag * std::sin(ky) * std::sin(kx);
  const double hy = 2 * p.tsp * std::sin(kx) + 2 * p.tsp_diag * std::cos(ky) * std::sin(kx);
  const double hz = -(p.tp + p.ts) * std::cos(kx);
  Eigen::Matrix2cd H;
  H << h0 + hz, hx - I * hy, hx + I * hy, h0 - hz;
  H(1, 1) += -I * p.gamma;
  H(0, 1) += -I * p.dy;
  H(1, 0) += I * p.dy;
  return H;
}

std::pair<cd, cd> ladder_bands(const HoppingParams& p, double kx, double ky) {
  const double h0 = (p.tp - p.ts) * std::cos(kx);
  const double hx = -2 * p.tsp_diag * std::sin(ky) * std::sin(kx);
  const double hy = 2 * p.tsp * std::sin(kx) + 2 * p.tsp_diag * std::cos(ky) * std::sin(kx) + p.dy;
  const double hz = -(p.tp + p.ts) * std::cos(kx);
  const cd root = std::sqrt(cd(hx * hx + hy * hy) + (hz + I * p.gamma / 2.0) * (hz + I * p.gamma / 2.0));
  const cd center = h0 - I * p.gamma / 2.0;
  return {center + root, center - root};
}

std::pair<cd, Eigen::Vector2cd> ladder_band_state(const HoppingParams& p, double kx,
                                                  double ky, int band) {
  if (band != 0 && band != 1)
    throw std::invalid_argument("ladder_band_state: band must be 0 or 1");
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(ladder_bloch(p, kx, ky));
  const auto& w = es.eigenvalues();
  // Descending Im, ties by descending Re.
  int first = 0;
  if (w(1).imag() > w(0).imag() ||
      (w(1).imag() == w(0).imag() && w(1).real() > w(0).real()))
    first = 1;
  const int pick = band == 0 ? first : 1 - first;
  Eigen::Vector2cd u = es.eigenvectors().col(pick);
  u.normalize();
  return {w(pick), u};
}

SparseCd ladder_real(const HoppingParams& p, const std::vector<Cell>& cells,
                     int pbc_period) {
  if (cells.empty()) throw std::invalid_argument("ladder_real: empty mask");
  std::unordered_map<long long, int> index;
  index.reserve(cells.size() * 2);
  for (size_t i = 0; i < cells.size(); ++i)
    index.emplace(cell_key(cells[i].x, cells[i].y), static_cast<int>(i));

  const Eigen::Matrix2cd tx = tx_block(p), txy = txy_block(p), onsite = onsite_block(p);
  struct Bond {
    int dx, dy;
    Eigen::Matrix2cd block;
  };
  const Bond bonds[] = {{1, 0, tx}, {1, 1, txy}, {-1, 1, -txy}};

  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(cells.size() * 14);
  auto add_block = [&trips](int i, int j, const Eigen::Matrix2cd& b) {
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        if (b(a, c) != 0.0) trips.emplace_back(2 * i + a, 2 * j + c, b(a, c));
  };

  for (size_t i = 0; i < cells.size(); ++i) {
    add_block(static_cast<int>(i), static_cast<int>(i), onsite);
    for (const Bond& bond : bonds) {
      int tx_ = cells[i].x + bond.dx, ty_ = cells[i].y + bond.dy;
      if (pbc_period > 0) {
        tx_ = ((tx_ % pbc_period) + pbc_period) % pbc_period;
        ty_ = ((ty_ % pbc_period) + pbc_period) % pbc_period;
      }
      auto it = index.find(cell_key(tx_, ty_));
      if (it == index.end()) continue;
      add_block(static_cast<int>(i), it->second, bond.block);
      add_block(it->second, static_cast<int>(i), bond.block.adjoint());
    }
  }

  SparseCd H(2 * static_cast<int>(cells.size()), 2 * static_cast<int>(cells.size()));
  H.setFromTriplets(trips.begin(), trips.end());
  return H;
}

SymmetryResiduals symmetry_residuals(const HoppingParams& p,
                                     const std::vector<std::pair<double, double>>& ks) {
  Eigen::Matrix2cd sz;
  sz << 1, 0, 0, -1;
  SymmetryResiduals r;
  for (const auto& [kx, ky] : ks) {
    const Eigen::Matrix2cd H = ladder_bloch(p, kx, ky);
    const Eigen::Matrix2cd mirror = sz * H * sz - ladder_bloch(p, -kx, ky);
    const Eigen::Matrix2cd tmirror =
        sz * H.transpose() * sz - ladder_bloch(p, kx, -ky);
    r.mirror = std::max(r.mirror, mirror.cwiseAbs().maxCoeff());
    r.transpose_mirror = std::max(r.transpose_mirror, tmirror.cwiseAbs().maxCoeff());
  }
  return r;
}

cd hn2d_bloch(double kx, double ky) {
  return 2.0 * std::cos(kx) + I * std::sin(ky) - I;
}

SparseCd hn2d_real(int L, bool periodic) {
  if (L <= 0) throw std::invalid_argument("hn2d_real: L must be positive");
  auto cells = square_mask(L);
  std::unordered_map<long long, int> index;
  for (size_t i = 0; i < cells.size(); ++i)
    index.emplace(cell_key(cells[i].x, cells[i].y), static_cast<int>(i));

  struct Bond {
    int dx, dy;
    cd amp;
  };
  // H[r, r + d] = amp so that the Bloch symbol is sum_d amp e^{i k . d}.
  const Bond bonds[] = {{1, 0, 1.0}, {-1, 0, 1.0}, {0, 1, 0.5}, {0, -1, -0.5}};

  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(cells.size() * 5);
  for (size_t i = 0; i < cells.size(); ++i) {
    trips.emplace_back(static_cast<int>(i), static_cast<int>(i), -I);
    for (const Bond& bond : bonds) {
      int tx_ = cells[i].x + bond.dx, ty_ = cells[i].y + bond.dy;
      if (periodic) {
        tx_ = ((tx_ % L) + L) % L;
        ty_ = ((ty_ % L) + L) % L;
      }
      auto it = index.find(cell_key(tx_, ty_));
      if (it == index.end()) continue;
      trips.emplace_back(static_cast<int>(i), it->second, bond.amp);
    }
  }
  SparseCd H(L * L, L * L);
  H.setFromTriplets(trips.begin(), trips.end());
  return H;
}

Eigen::Matrix2cd ssh_bloch(const SshParams& p, double k) {
  Eigen::Matrix2cd H;
  H << 0.0, p.tl + p.tr2 * std::exp(-I * k), p.tr + p.tl2 * std::exp(I * k), 0.0;
  return H;
}

SparseCd ssh_real(const SshParams& p, int L, bool periodic) {
  if (L <= 0) throw std::invalid_argument("ssh_real: L must be positive");
  // Cell blocks reproducing the Bloch symbol: T0 = [[0,tl],[tr,0]],
  // T+1 = [[0,0],[tl2,0]], T-1 = [[0,tr2],[0,0]], H[j, j+d] = T_d.
  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(4 * L);
  auto cell = [&](int j) { return ((j % L) + L) % L; };
  for (int j = 0; j < L; ++j) {
    trips.emplace_back(2 * j, 2 * j + 1, p.tl);
    trips.emplace_back(2 * j + 1, 2 * j, p.tr);
    if (periodic || j + 1 < L)
      trips.emplace_back(2 * j + 1, 2 * cell(j + 1), p.tl2);
    if (periodic || j - 1 >= 0)
      trips.emplace_back(2 * j, 2 * cell(j - 1) + 1, p.tr2);
  }
  SparseCd H(2 * L, 2 * L);
  H.setFromTriplets(trips.begin(), trips.end());
  return H;
}

}  // namespace nhl
