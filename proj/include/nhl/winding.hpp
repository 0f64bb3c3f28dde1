#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "nhl/model.hpp"

namespace nhl {

// Parametrized momentum path s in [0, 2pi) -> (kx, ky).
using KPath = std::function<std::pair<double, double>(double)>;

// Two band traces along a closed momentum path, continued by greedy
// nearest-neighbor matching in the complex plane (seeded at s = 0 by
// descending Im, ties by descending Re). At a near-degenerate sample the
// ordering falls back to the seed sort and the sample is flagged.
struct BandPath {
  Eigen::VectorXd s;
  Eigen::MatrixXcd bands;          // 2 x n
  bool degenerate = false;         // some sample hit the fallback ordering
  std::vector<int> im_crossings;   // samples where the bands' Im order flips
};
BandPath band_path(const HoppingParams& p, const KPath& kfun, int n = 2880,
                   double degen_tol = 1e-12);

// Raw (non-integer) winding of a sampled closed loop around base, from
// principal-branch phase increments. Throws if base is closer than min_dist
// to the sampled curve.
double loop_winding(const std::vector<cd>& loop, cd base, double min_dist = 1e-8);

// Integer winding: samples path(n) starting at n0 and doubles n until the
// rounding residual drops below 0.01 (error past n_max).
int spectral_winding(const std::function<std::vector<cd>(int)>& path, cd base,
                     int n0 = 2048, int n_max = 1 << 18);

// Deterministic probe points inside the loop's bounding box, at least
// min_dist away from the curve, for testing that no base sees a nonzero
// winding. Grid candidates are scanned in a fixed order.
std::vector<cd> off_curve_bases(const std::vector<cd>& loop, int count,
                                double min_dist);

// Search the bounding-box grid for a base enclosed by the loop: candidates
// are tried by decreasing distance from the curve and the first with
// |winding| >= 1 is returned, together with the winding.
std::optional<std::pair<cd, int>> enclosed_base(const std::vector<cd>& loop,
                                                int grid_n = 48,
                                                double min_dist = 1e-3);

}  // namespace nhl
