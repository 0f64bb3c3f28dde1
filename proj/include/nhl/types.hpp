#pragma once

#include <complex>
#include <stdexcept>

namespace nhl {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Couplings of the two-orbital (s, p) square-lattice ladder: nearest-neighbor
// hoppings along x, an s-p mixing along x, an s-p mixing along the +-(x,y)
// diagonals, a loss rate on the p orbital, and an optional on-site sigma_y
// mixing that breaks the mirror symmetries.
struct HoppingParams {
  double ts = 1.0;
  double tp = 1.0;
  double tsp = 1.0;
  double tsp_diag = 0.5;
  double gamma = 0.5;
  double dy = 0.0;
};

// Wrap an angle to [-pi, pi).
inline double wrap_angle(double k) {
  double w = std::remainder(k, 2.0 * pi);
  if (w >= pi) w -= 2.0 * pi;
  if (w < -pi) w += 2.0 * pi;
  return w;
}

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nhl
