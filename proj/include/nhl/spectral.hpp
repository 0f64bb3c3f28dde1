#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhl/geometry.hpp"
#include "nhl/model.hpp"

namespace nhl {

struct EigSystem {
  Eigen::VectorXcd values;   // sorted by (Re, Im) lexicographically
  Eigen::MatrixXcd vectors;  // right eigenvectors as unit-norm columns
};

// Dense non-symmetric eigensolve (LAPACK zgeev). Dimension capped to keep the
// O(n^3) solve and O(n^2) storage within a desktop budget.
EigSystem eig_dense(const Eigen::MatrixXcd& H, bool want_vectors = true,
                    int dim_cap = 14000);

// Dense real-symmetric eigensolve (LAPACK dsyev) for lossless Hamiltonians.
EigSystem eig_symmetric(const Eigen::MatrixXd& H, bool want_vectors = true,
                        int dim_cap = 14000);

// Participation dimension of a normalized state living on `ncells` sites with
// `comps` components per site: D = -ln(sum |psi_i|^4) / ln(sqrt(ncells)).
// A state spread evenly over N, sqrt(N), or 1 single-component sites scores
// exactly 2, 1, or 0.
double fractal_dimension(const Eigen::VectorXcd& state, int ncells, int comps);
Eigen::VectorXd fractal_dimensions(const Eigen::MatrixXcd& vectors, int ncells,
                                   int comps);

// State-averaged per-cell density, normalized to sum to 1.
Eigen::VectorXd average_density(const Eigen::MatrixXcd& vectors, int ncells,
                                int comps);

struct BoundaryStats {
  Eigen::VectorXd rho_b;   // per-state weight inside the shell
  int n_boundary = 0;      // states with rho_b > 0.5
  double rho_bar_b = 0.0;  // shell share of the state-averaged density
};

// Boundary-mode statistics against a shell membership mask over the cells.
BoundaryStats boundary_statistics(const Eigen::MatrixXcd& vectors,
                                  const std::vector<char>& shell_mask, int comps);

}  // namespace nhl
