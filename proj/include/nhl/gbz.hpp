#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nhl/types.hpp"

namespace nhl {

// Open direction of the diagonal stripe construction: "plus" keeps the
// (x + y)/2 momentum as the complex deformation variable with the conjugate
// diagonal momentum fixed; "minus" is the mirrored construction.
enum class DiagAxis { plus, minus };

// Laurent coefficients (powers -3..3, stored ascending) in beta of
// det[H(beta, b) - E], the characteristic symbol of the stripe unit cell at
// fixed transverse Bloch factor b. Built directly from the 2x2 blocks.
std::array<cd, 7> char_poly(const HoppingParams& p, cd b, cd E);

// The same polynomial from its hand-expanded coefficient formulas, kept as an
// independent cross-check of char_poly.
std::array<cd, 7> char_poly_expanded(const HoppingParams& p, cd b, cd E);

// Roots of sum_j c[j] z^j (ascending coefficients) via the companion matrix;
// leading zero coefficients are trimmed.
std::vector<cd> poly_roots(const std::vector<cd>& ascending);

// Diagonal stripe Hamiltonian: L two-orbital cells open along the chosen
// diagonal, Bloch phase k_fixed along the other diagonal.
Eigen::MatrixXcd stripe_hamiltonian(const HoppingParams& p, double k_fixed, int L,
                                    DiagAxis open_axis);

struct GbzPoint {
  double phase1 = 0.0;         // arg of the third-smallest root
  double phase2 = 0.0;         // arg of the fourth-smallest root
  double kappa = 0.0;          // common log-modulus of the matched pair
  double centroid_side = 0.0;  // stripe-eigenstate centroid minus stripe center
  cd energy;
};

struct GbzSlice {
  std::vector<GbzPoint> points;
  double tol_used = 0.0;    // acceptance tolerance after relaxation
  double acceptance = 0.0;  // accepted fraction of the stripe spectrum
};

// Seed the slice from the stripe spectrum at k_fixed: for each eigenvalue E
// take the six roots of beta^3 * f(beta, E) sorted by (|z|, arg z) and accept
// E when the middle pair's log-moduli agree within tolerance. The tolerance
// starts at tol0 and relaxes tenfold (capped at tol_cap) until at least
// min_acceptance of the spectrum is kept; failing that is an error, since the
// finite stripe only approximates the deformed momentum curve to O(1/L).
GbzSlice gbz_slice(const HoppingParams& p, double k_fixed, int L,
                   DiagAxis open_axis = DiagAxis::plus, double tol0 = 1e-6,
                   double tol_cap = 0.1, double min_acceptance = 0.8);

// kappa interpolated onto an n x n (phase index, fixed-k index) grid over
// [-pi, pi)^2 by nearest-phase matching against both members of each accepted
// root pair; NaN where a gridline yields no accepted point. Strict tolerance,
// no relaxation (unmatched slices simply stay empty).
Eigen::MatrixXd kappa_field(const HoppingParams& p, int n, int L,
                            DiagAxis open_axis, double tol = 1e-6);

}  // namespace nhl
