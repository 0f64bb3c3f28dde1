#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhl/types.hpp"

namespace nhl {

// Separable optical potential V(x, y) = vx sin^2 x + v1 sin^2 y
// + v2 sin^2(2y + phi/2), in recoil units (k_L = 1, E_r = 1, hbar = 1,
// m = 1/2, so the kinetic term is -laplacian).
struct OpticalPotentialSpec {
  double vx = 1.0;
  double v1 = 10.0;
  double v2 = 13.0;
  double phi = 0.8 * pi;
};

double potential(const OpticalPotentialSpec& pot, double x, double y);
double potential_y(const OpticalPotentialSpec& pot, double y);

// The two inequivalent y-minima in one period [-pi/2, pi/2), refined to 1e-12
// by golden-section search and sorted by position. x-minima are analytic
// (x0 = n pi) and not reported. Throws unless exactly two wells exist.
struct Wells {
  double y1 = 0.0, v1 = 0.0;  // left well: position and potential value
  double y2 = 0.0, v2 = 0.0;  // right well
};
Wells find_minima(const OpticalPotentialSpec& pot);

// Harmonic frequencies from the second-order expansion at a minimum:
// omega_x = sqrt(4 vx cos 2x0), omega_y = sqrt(4 v1 cos 2y0
// + 16 v2 cos(4y0 + phi)). Throws on non-positive curvature.
double harmonic_omega_x(const OpticalPotentialSpec& pot, double x0);
double harmonic_omega_y(const OpticalPotentialSpec& pot, double y0);

// Oscillator-orbital basis: an s-type (l = 0, 0) and a p_x-type (l = 1, 0)
// orbital per unit cell, each centered in its own y-well (the assignment
// pairs the wells whose s and p on-site energies are nearly degenerate),
// replicated over a (2 nwell + 1)^2 window of cells. Grid and coefficient
// data support overlap/Hamiltonian quadrature on a tensor grid of spacing
// 2pi/hfac (<= lambda/64 at the default).
class WannierBasis {
 public:
  WannierBasis(const OpticalPotentialSpec& pot, int nwell = 3, int hfac = 64);

  int size() const { return nb_; }
  int index(int orb, int nx, int ny) const;  // orb 0 = s, 1 = p_x

  // Overlap and Hamiltonian matrices of the current (possibly orthogonalized)
  // basis, by tensor-grid quadrature.
  const Eigen::MatrixXd& overlap() const { return S_; }
  const Eigen::MatrixXd& hamiltonian() const { return T_; }
  double max_offdiagonal_overlap() const;

  // Iterative half-subtraction orthogonalization: C <- C (1 - (S_C - 1)/2)
  // with column renormalization; the residual overlap contracts
  // quadratically per iteration. Requires initial overlaps below 0.5.
  void orthogonalize(int iterations = 5);

  double omega_x() const { return wx_; }
  double omega_y_s() const { return wy_s_; }
  double omega_y_p() const { return wy_p_; }
  double y_s() const { return y_s_; }
  double y_p() const { return y_p_; }
  double grid_step() const { return h_; }

 private:
  void build_raw_matrices(const OpticalPotentialSpec& pot);

  int nwell_, hfac_, nb_;
  double h_, wx_, wy_s_, wy_p_, y_s_, y_p_;
  Eigen::MatrixXd S0_, T0_;  // raw-orbital quadrature matrices
  Eigen::MatrixXd C_;        // coefficients of the working basis
  Eigen::MatrixXd S_, T_;    // C^T S0 C, C^T T0 C
};

// Hopping block between cells displaced by (dx, dy): entries
// [to_orb][from_orb] of the orthogonalized-basis Hamiltonian.
Eigen::Matrix2d hopping_block(const WannierBasis& basis, int dx, int dy);

struct FittedCouplings {
  // Signed integrals in the layout printed by the reference table:
  // (t_s, t_p, t_sp, t'_sp).
  double ts_table = 0.0, tp_table = 0.0, tsp_table = 0.0, tsp_diag_table = 0.0;
  HoppingParams lattice;  // same couplings mapped to the lattice convention
  double onsite_s = 0.0, onsite_p = 0.0;
  double overlap_residual = 0.0;
};

// Full pipeline: wells -> frequencies -> basis -> orthogonalize -> hopping
// integrals -> coupling extraction. The loss rate is not derivable from the
// potential and is passed through.
FittedCouplings fit_tight_binding(const OpticalPotentialSpec& pot,
                                  double gamma = 0.5, int nwell = 3,
                                  int hfac = 64);

}  // namespace nhl
