#include "nhl/winding.hpp"

#include <algorithm>
#include <cmath>

namespace nhl {

namespace {

double min_distance(const std::vector<cd>& loop, cd base) {
  double d = std::numeric_limits<double>::infinity();
  for (const cd& z : loop) d = std::min(d, std::abs(z - base));
  return d;
}

}  // namespace

BandPath band_path(const HoppingParams& p, const KPath& kfun, int n,
                   double degen_tol) {
  if (n < 2) throw std::invalid_argument("band_path: need at least 2 samples");
  BandPath out;
  out.s.resize(n);
  out.bands.resize(2, n);

  cd prev0, prev1;
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * pi * i / n;
    out.s(i) = s;
    const auto [kx, ky] = kfun(s);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(ladder_bloch(p, kx, ky));
    cd a = es.eigenvalues()(0), b = es.eigenvalues()(1);
    // Seed sort: descending Im, ties by descending Re.
    if (b.imag() > a.imag() || (b.imag() == a.imag() && b.real() > a.real()))
      std::swap(a, b);
    if (i > 0) {
      if (std::abs(a - b) < degen_tol) {
        out.degenerate = true;  // keep the seed (Re-dominant) order
      } else if (std::abs(a - prev0) + std::abs(b - prev1) >
                 std::abs(b - prev0) + std::abs(a - prev1)) {
        std::swap(a, b);
      }
    }
    out.bands(0, i) = a;
    out.bands(1, i) = b;
    if (i > 0) {
      const double before = prev0.imag() - prev1.imag();
      const double after = a.imag() - b.imag();
      if ((before > 0 && after < 0) || (before < 0 && after > 0))
        out.im_crossings.push_back(i);
    }
    prev0 = a;
    prev1 = b;
  }
  return out;
}

double loop_winding(const std::vector<cd>& loop, cd base, double min_dist) {
  if (loop.size() < 3) throw std::invalid_argument("loop_winding: too few samples");
  if (min_distance(loop, base) < min_dist)
    throw numeric_error("loop_winding: base too close to the curve");
  double total = 0.0;
  cd prev = loop.back() - base;
  for (const cd& z : loop) {
    const cd cur = z - base;
    total += std::arg(cur / prev);  // principal-branch increment
    prev = cur;
  }
  return total / (2.0 * pi);
}

int spectral_winding(const std::function<std::vector<cd>(int)>& path, cd base,
                     int n0, int n_max) {
  for (int n = n0; n <= n_max; n *= 2) {
    const double w = loop_winding(path(n), base);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) < 0.01) return static_cast<int>(rounded);
  }
  throw numeric_error("spectral_winding: residual did not settle under refinement");
}

std::vector<cd> off_curve_bases(const std::vector<cd>& loop, int count,
                                double min_dist) {
  double re_lo = loop[0].real(), re_hi = re_lo;
  double im_lo = loop[0].imag(), im_hi = im_lo;
  for (const cd& z : loop) {
    re_lo = std::min(re_lo, z.real());
    re_hi = std::max(re_hi, z.real());
    im_lo = std::min(im_lo, z.imag());
    im_hi = std::max(im_hi, z.imag());
  }
  std::vector<cd> bases;
  // Fixed 8x8 grid strictly inside the bounding box, scanned in index order.
  const int g = 8;
  for (int i = 0; i < g && static_cast<int>(bases.size()) < count; ++i) {
    for (int j = 0; j < g && static_cast<int>(bases.size()) < count; ++j) {
      const cd cand(re_lo + (re_hi - re_lo) * (i + 0.5) / g,
                    im_lo + (im_hi - im_lo) * (j + 0.5) / g);
      if (min_distance(loop, cand) >= min_dist) bases.push_back(cand);
    }
  }
  return bases;
}

std::optional<std::pair<cd, int>> enclosed_base(const std::vector<cd>& loop,
                                                int grid_n, double min_dist) {
  double re_lo = loop[0].real(), re_hi = re_lo;
  double im_lo = loop[0].imag(), im_hi = im_lo;
  for (const cd& z : loop) {
    re_lo = std::min(re_lo, z.real());
    re_hi = std::max(re_hi, z.real());
    im_lo = std::min(im_lo, z.imag());
    im_hi = std::max(im_hi, z.imag());
  }
  std::vector<std::pair<double, cd>> candidates;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const cd cand(re_lo + (re_hi - re_lo) * (i + 0.5) / grid_n,
                    im_lo + (im_hi - im_lo) * (j + 0.5) / grid_n);
      const double d = min_distance(loop, cand);
      if (d >= min_dist) candidates.emplace_back(d, cand);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [d, cand] : candidates) {
    const double w = loop_winding(loop, cand);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) < 0.01 && std::abs(rounded) >= 1.0)
      return std::make_pair(cand, static_cast<int>(rounded));
  }
  return std::nullopt;
}

}  // namespace nhl
