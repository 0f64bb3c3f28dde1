#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "nhl/geometry.hpp"
#include "nhl/types.hpp"

namespace nhl {

using SparseCd = Eigen::SparseMatrix<cd>;

// Bloch matrix of the sp-ladder:
//   h0 = (tp - ts) cos kx
//   hx = -2 tsp_diag sin ky sin kx
//   hy =  2 tsp sin kx + 2 tsp_diag cos ky sin kx
//   hz = -(tp + ts) cos kx
//   H  = h0 + hx sx + hy sy + hz sz - i gamma (1 - sz)/2 + dy sy
Eigen::Matrix2cd ladder_bloch(const HoppingParams& p, double kx, double ky);

// Closed-form band pair (E+, E-) of ladder_bloch:
//   E+- = h0 - i gamma/2 +- sqrt(hx^2 + (hy + dy)^2 + (hz + i gamma/2)^2)
std::pair<cd, cd> ladder_bands(const HoppingParams& p, double kx, double ky);

// Eigenpair of the selected band at k0, bands ordered by descending Im E
// (ties by descending Re E). Returns the eigenvalue and unit spinor.
std::pair<cd, Eigen::Vector2cd> ladder_band_state(const HoppingParams& p, double kx,
                                                  double ky, int band);

// Real-space ladder Hamiltonian on an arbitrary cell mask (two orbitals per
// cell, ordered as the mask): for displacement +x insert
// Tx = [[-ts, -tsp], [tsp, tp]], for (+x,+y) insert +Txy = [[0,0],[tsp_diag,0]],
// for (-x,+y) insert -Txy, plus Hermitian conjugates and the on-site block
// diag(0, -i gamma) + dy sy. Bonds leaving the mask are dropped; if
// pbc_period > 0 both coordinates wrap modulo it instead.
SparseCd ladder_real(const HoppingParams& p, const std::vector<Cell>& cells,
                     int pbc_period = 0);

// Mirror residuals of the Bloch matrix over a k sample set:
//   mirror:            max_k |sz H(kx, ky) sz - H(-kx, ky)|
//   transpose-mirror:  max_k |sz H^T(kx, ky) sz - H(kx, -ky)|
// Both vanish identically when dy = 0.
struct SymmetryResiduals {
  double mirror = 0.0;
  double transpose_mirror = 0.0;
};
SymmetryResiduals symmetry_residuals(const HoppingParams& p,
                                     const std::vector<std::pair<double, double>>& ks);

// Single-band lossy model H(k) = 2 cos kx + i sin ky - i.
cd hn2d_bloch(double kx, double ky);

// Real-space version on an L x L square: hopping 1 along +-x, +1/2 along +y,
// -1/2 along -y, on-site -i.
SparseCd hn2d_real(int L, bool periodic);

// Generalized two-coupling SSH chain in momentum space:
//   H(k) = [[0, tl + tr2 e^{-ik}], [tr + tl2 e^{ik}, 0]]
struct SshParams {
  cd tl, tr, tl2, tr2;
};
Eigen::Matrix2cd ssh_bloch(const SshParams& p, double k);

// Real-space chain of L two-site cells matching ssh_bloch on a ring.
SparseCd ssh_real(const SshParams& p, int L, bool periodic);

}  // namespace nhl
