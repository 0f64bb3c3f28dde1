#include "nhl/gbz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhl/spectral.hpp"

namespace nhl {

namespace {

// Discrete convolution of two Laurent-coefficient vectors (ascending powers).
std::vector<cd> conv(const std::vector<cd>& a, const std::vector<cd>& b) {
  std::vector<cd> c(a.size() + b.size() - 1, cd(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

std::array<cd, 7> char_poly(const HoppingParams& p, cd b, cd E) {
  const cd i(0.0, 1.0);
  const double t = p.tsp, tq = p.tsp_diag;
  // Bloch matrix entries as Laurent polynomials in the open-direction factor
  // beta, ascending in power; det = (H11-E)(H22-E) - H12*H21.
  const std::vector<cd> h11 = {-p.ts / b, -E, -p.ts * b};          // powers -1..1
  const std::vector<cd> h22 = {p.tp / b, -i * p.gamma - E, p.tp * b};
  const std::vector<cd> h12 = {tq, t / b, -tq * b * b, -t * b};    // powers -2..1
  const std::vector<cd> h21 = {-t / b, -tq / (b * b), t * b, tq};  // powers -1..2
  const auto diag = conv(h11, h22);    // powers -2..2 (5 terms)
  const auto off = conv(h12, h21);     // powers -3..3 (7 terms)
  std::array<cd, 7> f{};
  for (int k = 0; k < 7; ++k) f[k] = -off[k];
  for (int k = 0; k < 5; ++k) f[k + 1] += diag[k];
  return f;
}

std::array<cd, 7> char_poly_expanded(const HoppingParams& p, cd b, cd E) {
  const cd i(0.0, 1.0);
  const double t = p.tsp, tq = p.tsp_diag, ts = p.ts, tp = p.tp, g = p.gamma;
  std::array<cd, 7> f{};
  f[6] = t * tq * b;
  f[5] = (-ts * tp + t * t + tq * tq) * b * b;
  f[4] = (E * ts + i * g * ts - E * tp) * b + t * tq * b * b * b -
         2.0 * t * tq / b;
  f[3] = E * E + i * g * E - 2.0 * tp * ts - 2.0 * t * t - 2.0 * tq * tq;
  f[2] = (E * ts + i * g * ts - E * tp) / b + t * tq / (b * b * b) -
         2.0 * t * tq * b;
  f[1] = (-ts * tp + t * t + tq * tq) / (b * b);
  f[0] = t * tq / b;
  return f;
}

std::vector<cd> poly_roots(const std::vector<cd>& ascending) {
  std::vector<cd> c = ascending;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() < 2) throw numeric_error("poly_roots: polynomial is constant");
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -c[n - 1 - j] / c[n];
  for (int j = 1; j < n; ++j) comp(j, j - 1) = cd(1.0, 0.0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

Eigen::MatrixXcd stripe_hamiltonian(const HoppingParams& p, double k_fixed,
                                    int L, DiagAxis open_axis) {
  if (L < 3) throw std::invalid_argument("stripe_hamiltonian: L too small");
  const cd i(0.0, 1.0);
  const cd ph = std::exp(i * k_fixed);
  const double t = p.tsp, tq = p.tsp_diag;
  Eigen::Matrix2cd tx;
  tx << -p.ts, -t, t, p.tp;

  // 2x2 blocks by offset along the open diagonal, indices 0..4 = offsets -2..2.
  std::array<Eigen::Matrix2cd, 5> m;
  for (auto& blk : m) blk.setZero();
  m[3] = ph * tx;
  m[1] << -p.ts / ph, t / ph, -t / ph, p.tp / ph;
  if (open_axis == DiagAxis::plus) {
    m[4] << 0.0, 0.0, tq, 0.0;
    m[2] << 0.0, -tq * ph * ph, -tq / (ph * ph), -i * p.gamma;
    m[0] << 0.0, tq, 0.0, 0.0;
  } else {
    m[4] << 0.0, -tq, 0.0, 0.0;
    m[2] << 0.0, tq / (ph * ph), tq * ph * ph, -i * p.gamma;
    m[0] << 0.0, 0.0, -tq, 0.0;
  }

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * L, 2 * L);
  for (int j = 0; j < L; ++j)
    for (int d = -2; d <= 2; ++d) {
      const int j2 = j + d;
      if (j2 >= 0 && j2 < L) h.block<2, 2>(2 * j, 2 * j2) = m[d + 2];
    }
  return h;
}

GbzSlice gbz_slice(const HoppingParams& p, double k_fixed, int L,
                   DiagAxis open_axis, double tol0, double tol_cap,
                   double min_acceptance) {
  const EigSystem eig = eig_dense(stripe_hamiltonian(p, k_fixed, L, open_axis));
  const int nev = static_cast<int>(eig.values.size());

  struct Candidate {
    double lnratio;
    GbzPoint point;
  };
  std::vector<Candidate> cands;
  cands.reserve(nev);
  const cd b = std::exp(cd(0.0, k_fixed));
  for (int idx = 0; idx < nev; ++idx) {
    const cd e = eig.values(idx);
    // Roots of beta^3 f(beta): degree-6 ordinary polynomial in the open-axis
    // Bloch factor. The determinant condition is invariant under exchanging
    // the two diagonal directions, so one coefficient formula serves both
    // axes with the fixed phase substituted.
    const std::array<cd, 7> f = char_poly(p, b, e);
    std::vector<cd> roots;
    try {
      roots = poly_roots({f.begin(), f.end()});
    } catch (const numeric_error&) {
      continue;
    }
    if (roots.size() != 6) continue;
    std::sort(roots.begin(), roots.end(), [](cd u, cd v) {
      const double ru = std::abs(u), rv = std::abs(v);
      if (ru != rv) return ru < rv;
      return std::arg(u) < std::arg(v);
    });
    const cd r3 = roots[2], r4 = roots[3];

    GbzPoint pt;
    pt.energy = e;
    pt.kappa = 0.5 * (std::log(std::abs(r3)) + std::log(std::abs(r4)));
    pt.phase1 = std::arg(r3);
    pt.phase2 = std::arg(r4);

    // Centroid of the per-cell density, measured from the stripe midpoint.
    const Eigen::VectorXcd v = eig.vectors.col(idx);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < nev / 2; ++j) {
      const double w = std::norm(v(2 * j)) + std::norm(v(2 * j + 1));
      num += j * w;
      den += w;
    }
    pt.centroid_side = num / den - 0.5 * (nev / 2 - 1);

    cands.push_back({std::abs(std::log(std::abs(r3) / std::abs(r4))), pt});
  }

  GbzSlice slice;
  double tol = tol0;
  while (true) {
    slice.points.clear();
    for (const auto& c : cands)
      if (c.lnratio < tol) slice.points.push_back(c.point);
    slice.acceptance = nev > 0 ? double(slice.points.size()) / nev : 0.0;
    slice.tol_used = tol;
    if (slice.acceptance >= min_acceptance) break;
    if (tol >= tol_cap)
      throw numeric_error(
          "gbz_slice: middle-root pairing rejected too much of the stripe "
          "spectrum; increase L or loosen the tolerance");
    tol = std::min(tol * 10.0, tol_cap);
  }
  return slice;
}

Eigen::MatrixXd kappa_field(const HoppingParams& p, int n, int L,
                            DiagAxis open_axis, double tol) {
  Eigen::MatrixXd field(n, n);
  field.setConstant(std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < n; ++j) {
    const double k_fixed = -pi + 2.0 * pi * j / n;
    GbzSlice slice;
    try {
      slice = gbz_slice(p, k_fixed, L, open_axis, tol, tol, 0.0);
    } catch (const numeric_error&) {
      continue;  // empty slice: leave the column as NaN
    }
    if (slice.points.empty()) continue;
    std::vector<std::pair<double, double>> samples;  // (phase, kappa)
    samples.reserve(2 * slice.points.size());
    for (const GbzPoint& pt : slice.points) {
      samples.emplace_back(pt.phase1, pt.kappa);
      samples.emplace_back(pt.phase2, pt.kappa);
    }
    for (int i = 0; i < n; ++i) {
      const double target = -pi + 2.0 * pi * i / n;
      double best = std::numeric_limits<double>::infinity();
      double value = std::numeric_limits<double>::quiet_NaN();
      for (const auto& [phase, kappa] : samples) {
        const double d = std::abs(wrap_angle(phase - target));
        if (d < best) {
          best = d;
          value = kappa;
        }
      }
      field(i, j) = value;
    }
  }
  return field;
}

}  // namespace nhl
