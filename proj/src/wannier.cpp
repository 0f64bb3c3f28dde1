#include "nhl/wannier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nhl {

namespace {

// Golden-section minimum of f on [a, b], interval shrunk below tol.
template <typename F>
double golden_min(F f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double hermite(int l, double z) {
  if (l == 0) return 1.0;
  if (l == 1) return 2.0 * z;
  throw std::invalid_argument("hermite: only l = 0, 1 supported");
}

// Normalized 1d oscillator orbital for m = 1/2 (kinetic term -d^2/dx^2):
// psi_l(x) = N_l w^{1/4} exp(-w d^2/4) H_l(sqrt(w/2) d), d = x - x0.
double ho1d(int l, double w, double x, double x0) {
  const double d = x - x0;
  // 1/sqrt(2^l l!) with l! = 1 for the two supported levels.
  const double n = 1.0 / std::sqrt(std::pow(2.0, l)) *
                   std::pow(1.0 / (2.0 * pi), 0.25) * std::pow(w, 0.25);
  return n * std::exp(-w * d * d / 4.0) * hermite(l, std::sqrt(w / 2.0) * d);
}

// Second derivative from the oscillator ODE: u'' = [(w^2/4) d^2 - w(l+1/2)] u.
double ho1d_dd(int l, double w, double x, double x0) {
  const double d = x - x0;
  return ((w * w / 4.0) * d * d - w * (l + 0.5)) * ho1d(l, w, x, x0);
}

}  // namespace

double potential(const OpticalPotentialSpec& pot, double x, double y) {
  const double sx = std::sin(x);
  return pot.vx * sx * sx + potential_y(pot, y);
}

double potential_y(const OpticalPotentialSpec& pot, double y) {
  const double sy = std::sin(y), s2 = std::sin(2.0 * y + pot.phi / 2.0);
  return pot.v1 * sy * sy + pot.v2 * s2 * s2;
}

Wells find_minima(const OpticalPotentialSpec& pot) {
  const int n = 2001;
  std::vector<double> ys(n), vv(n);
  for (int i = 0; i < n; ++i) {
    ys[i] = -pi / 2.0 + pi * i / n;
    vv[i] = potential_y(pot, ys[i]);
  }
  std::set<long long> seen;
  std::vector<std::pair<double, double>> mins;
  const auto f = [&](double y) { return potential_y(pot, y); };
  for (int i = 0; i < n; ++i) {
    const double prev = vv[(i + n - 1) % n], next = vv[(i + 1) % n];
    if (vv[i] <= prev && vv[i] <= next) {
      const double y0 = golden_min(f, ys[i] - 0.01, ys[i] + 0.01, 1e-12);
      const long long key = std::llround(y0 * 1e9);
      if (seen.insert(key).second) mins.emplace_back(y0, f(y0));
    }
  }
  if (mins.size() != 2)
    throw numeric_error("find_minima: expected exactly two inequivalent wells");
  std::sort(mins.begin(), mins.end());
  return {mins[0].first, mins[0].second, mins[1].first, mins[1].second};
}

double harmonic_omega_x(const OpticalPotentialSpec& pot, double x0) {
  const double c = 4.0 * pot.vx * std::cos(2.0 * x0);
  if (c <= 0.0)
    throw numeric_error("harmonic_omega_x: non-positive curvature");
  return std::sqrt(c);
}

double harmonic_omega_y(const OpticalPotentialSpec& pot, double y0) {
  const double c = 4.0 * pot.v1 * std::cos(2.0 * y0) +
                   16.0 * pot.v2 * std::cos(4.0 * y0 + pot.phi);
  if (c <= 0.0)
    throw numeric_error("harmonic_omega_y: non-positive curvature");
  return std::sqrt(c);
}

WannierBasis::WannierBasis(const OpticalPotentialSpec& pot, int nwell, int hfac)
    : nwell_(nwell), hfac_(hfac) {
  if (nwell < 0 || hfac < 8)
    throw std::invalid_argument("WannierBasis: bad nwell or hfac");
  const int span = 2 * nwell + 1;
  nb_ = 2 * span * span;
  h_ = 2.0 * pi / hfac;

  const Wells wells = find_minima(pot);
  wx_ = harmonic_omega_x(pot, 0.0);
  const double wy1 = harmonic_omega_y(pot, wells.y1);
  const double wy2 = harmonic_omega_y(pot, wells.y2);

  // On-site energies of the candidate orbitals; the physical assignment puts
  // the s and p orbitals in different wells so their energies nearly match.
  const double es1 = 0.5 * wx_ + 0.5 * wy1 + wells.v1;
  const double es2 = 0.5 * wx_ + 0.5 * wy2 + wells.v2;
  const double ep1 = 1.5 * wx_ + 0.5 * wy1 + wells.v1;
  const double ep2 = 1.5 * wx_ + 0.5 * wy2 + wells.v2;
  if (std::abs(es1 - ep2) <= std::abs(es2 - ep1)) {
    y_s_ = wells.y1;
    wy_s_ = wy1;
    y_p_ = wells.y2;
    wy_p_ = wy2;
  } else {
    y_s_ = wells.y2;
    wy_s_ = wy2;
    y_p_ = wells.y1;
    wy_p_ = wy1;
  }

  build_raw_matrices(pot);
  C_ = Eigen::MatrixXd::Identity(nb_, nb_);
  S_ = S0_;
  T_ = T0_;
}

int WannierBasis::index(int orb, int nx, int ny) const {
  const int span = 2 * nwell_ + 1;
  if (orb < 0 || orb > 1 || std::abs(nx) > nwell_ || std::abs(ny) > nwell_)
    throw std::invalid_argument("WannierBasis::index: out of range");
  return (orb * span + (nx + nwell_)) * span + (ny + nwell_);
}

void WannierBasis::build_raw_matrices(const OpticalPotentialSpec& pot) {
  const double ext = nwell_ * pi + 4.0;
  const int ng1 = static_cast<int>(std::ceil((2.0 * ext + h_ / 2.0) / h_));
  std::vector<double> ax(ng1);
  for (int i = 0; i < ng1; ++i) ax[i] = -ext + i * h_;

  std::vector<double> vx_ax(ng1), vy_ax(ng1);
  for (int i = 0; i < ng1; ++i) {
    const double s = std::sin(ax[i]);
    vx_ax[i] = pot.vx * s * s;
    vy_ax[i] = potential_y(pot, ax[i]);
  }

  const Eigen::Index ng = static_cast<Eigen::Index>(ng1) * ng1;
  Eigen::MatrixXd bf(ng, nb_), hbf(ng, nb_);
  std::vector<double> xf(ng1), xdd(ng1), yf(ng1), ydd(ng1);
  for (int orb = 0; orb <= 1; ++orb) {
    const int lx = orb;
    const double wy = orb == 1 ? wy_p_ : wy_s_;
    const double yc = orb == 1 ? y_p_ : y_s_;
    for (int nx = -nwell_; nx <= nwell_; ++nx) {
      for (int ny = -nwell_; ny <= nwell_; ++ny) {
        const double x0 = nx * pi, y0 = yc + ny * pi;
        for (int i = 0; i < ng1; ++i) {
          xf[i] = ho1d(lx, wx_, ax[i], x0);
          xdd[i] = ho1d_dd(lx, wx_, ax[i], x0);
          yf[i] = ho1d(0, wy, ax[i], y0);
          ydd[i] = ho1d_dd(0, wy, ax[i], y0);
        }
        const int col = index(orb, nx, ny);
        Eigen::Index g = 0;
        for (int a = 0; a < ng1; ++a)
          for (int b = 0; b < ng1; ++b, ++g) {
            const double bb = xf[a] * yf[b];
            bf(g, col) = bb;
            hbf(g, col) = -(xdd[a] * yf[b] + xf[a] * ydd[b]) +
                          (vx_ax[a] + vy_ax[b]) * bb;
          }
      }
    }
  }
  const double w2 = h_ * h_;
  S0_ = w2 * (bf.transpose() * bf);
  T0_ = w2 * (bf.transpose() * hbf);
}

double WannierBasis::max_offdiagonal_overlap() const {
  return (S_ - Eigen::MatrixXd::Identity(nb_, nb_)).cwiseAbs().maxCoeff();
}

void WannierBasis::orthogonalize(int iterations) {
  if (max_offdiagonal_overlap() >= 0.5)
    throw numeric_error(
        "orthogonalize: overlaps too large for the contraction to converge");
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(nb_, nb_);
  for (int it = 0; it < iterations; ++it) {
    const Eigen::MatrixXd sc = C_.transpose() * S0_ * C_;
    C_ = C_ * (eye - 0.5 * (sc - eye));
    const Eigen::VectorXd nrm =
        (C_.transpose() * S0_ * C_).diagonal().cwiseSqrt();
    for (int j = 0; j < nb_; ++j) C_.col(j) /= nrm(j);
  }
  S_ = C_.transpose() * S0_ * C_;
  T_ = C_.transpose() * T0_ * C_;
}

Eigen::Matrix2d hopping_block(const WannierBasis& basis, int dx, int dy) {
  Eigen::Matrix2d m;
  for (int to = 0; to <= 1; ++to)
    for (int from = 0; from <= 1; ++from)
      m(to, from) =
          basis.hamiltonian()(basis.index(to, dx, dy), basis.index(from, 0, 0));
  return m;
}

FittedCouplings fit_tight_binding(const OpticalPotentialSpec& pot, double gamma,
                                  int nwell, int hfac) {
  WannierBasis basis(pot, nwell, hfac);
  basis.orthogonalize();

  const Eigen::Matrix2d bx = hopping_block(basis, 1, 0);
  const Eigen::Matrix2d bup = hopping_block(basis, 1, 1);

  FittedCouplings fc;
  fc.ts_table = bx(0, 0);
  fc.tp_table = bx(1, 1);
  fc.tsp_table = bx(1, 0);
  fc.tsp_diag_table = bup(1, 0);
  fc.lattice = HoppingParams{-fc.ts_table, fc.tp_table, fc.tsp_table,
                             fc.tsp_diag_table, gamma, 0.0};
  const int s00 = basis.index(0, 0, 0), p00 = basis.index(1, 0, 0);
  fc.onsite_s = basis.hamiltonian()(s00, s00);
  fc.onsite_p = basis.hamiltonian()(p00, p00);
  fc.overlap_residual = basis.max_offdiagonal_overlap();
  return fc;
}

}  // namespace nhl
