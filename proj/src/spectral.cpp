#include "nhl/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhl {

namespace {

// Sorts eigenpairs by (Re, Im) lexicographically for deterministic output.
void sort_pairs(EigSystem& sys, bool with_vectors) {
  const int n = static_cast<int>(sys.values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const cd va = sys.values(a), vb = sys.values(b);
    if (va.real() != vb.real()) return va.real() < vb.real();
    return va.imag() < vb.imag();
  });
  Eigen::VectorXcd values(n);
  Eigen::MatrixXcd vectors;
  if (with_vectors) vectors.resize(sys.vectors.rows(), n);
  for (int i = 0; i < n; ++i) {
    values(i) = sys.values(order[i]);
    if (with_vectors) vectors.col(i) = sys.vectors.col(order[i]);
  }
  sys.values.swap(values);
  if (with_vectors) sys.vectors.swap(vectors);
}

}  // namespace

EigSystem eig_dense(const Eigen::MatrixXcd& H, bool want_vectors, int dim_cap) {
  const int n = static_cast<int>(H.rows());
  if (H.cols() != n) throw std::invalid_argument("eig_dense: matrix not square");
  if (n > dim_cap) throw resource_error("eig_dense: dimension exceeds cap");
  if (!H.allFinite()) throw std::invalid_argument("eig_dense: non-finite entries");

  Eigen::MatrixXcd A = H;  // zgeev overwrites its input
  EigSystem sys;
  sys.values.resize(n);
  if (want_vectors) sys.vectors.resize(n, n);

  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n,
      reinterpret_cast<lapack_complex_double*>(A.data()), n,
      reinterpret_cast<lapack_complex_double*>(sys.values.data()), nullptr, 1,
      want_vectors ? reinterpret_cast<lapack_complex_double*>(sys.vectors.data())
                   : nullptr,
      want_vectors ? n : 1);
  if (info != 0) throw numeric_error("eig_dense: zgeev failed to converge");

  if (want_vectors)
    for (int j = 0; j < n; ++j) sys.vectors.col(j).normalize();
  sort_pairs(sys, want_vectors);
  return sys;
}

EigSystem eig_symmetric(const Eigen::MatrixXd& H, bool want_vectors, int dim_cap) {
  const int n = static_cast<int>(H.rows());
  if (H.cols() != n) throw std::invalid_argument("eig_symmetric: matrix not square");
  if (n > dim_cap) throw resource_error("eig_symmetric: dimension exceeds cap");
  if (!H.allFinite()) throw std::invalid_argument("eig_symmetric: non-finite entries");

  Eigen::MatrixXd A = H;
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N',
                                        'L', n, A.data(), n, w.data());
  if (info != 0) throw numeric_error("eig_symmetric: dsyev failed to converge");

  EigSystem sys;
  sys.values = w.cast<cd>();
  if (want_vectors) sys.vectors = A.cast<cd>();  // dsyev returns unit columns
  return sys;  // already ascending-real, the (Re, Im) order
}

double fractal_dimension(const Eigen::VectorXcd& state, int ncells, int comps) {
  if (state.size() != static_cast<long>(ncells) * comps)
    throw std::invalid_argument("fractal_dimension: size mismatch");
  const double norm2 = state.squaredNorm();
  if (norm2 <= 0.0) throw std::invalid_argument("fractal_dimension: zero state");
  double quartic = 0.0;
  for (long i = 0; i < state.size(); ++i) {
    const double d = std::norm(state(i)) / norm2;
    quartic += d * d;
  }
  return -std::log(quartic) / std::log(std::sqrt(static_cast<double>(ncells)));
}

Eigen::VectorXd fractal_dimensions(const Eigen::MatrixXcd& vectors, int ncells,
                                   int comps) {
  Eigen::VectorXd out(vectors.cols());
  for (int j = 0; j < vectors.cols(); ++j)
    out(j) = fractal_dimension(vectors.col(j), ncells, comps);
  return out;
}

Eigen::VectorXd average_density(const Eigen::MatrixXcd& vectors, int ncells,
                                int comps) {
  if (vectors.rows() != static_cast<long>(ncells) * comps)
    throw std::invalid_argument("average_density: size mismatch");
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(ncells);
  for (int j = 0; j < vectors.cols(); ++j) {
    const double norm2 = vectors.col(j).squaredNorm();
    for (int r = 0; r < ncells; ++r) {
      double cell = 0.0;
      for (int a = 0; a < comps; ++a) cell += std::norm(vectors(r * comps + a, j));
      rho(r) += cell / norm2;
    }
  }
  rho /= rho.sum();
  return rho;
}

BoundaryStats boundary_statistics(const Eigen::MatrixXcd& vectors,
                                  const std::vector<char>& shell_mask, int comps) {
  const int ncells = static_cast<int>(shell_mask.size());
  if (vectors.rows() != static_cast<long>(ncells) * comps)
    throw std::invalid_argument("boundary_statistics: size mismatch");
  if (std::find(shell_mask.begin(), shell_mask.end(), 1) == shell_mask.end())
    throw std::invalid_argument("boundary_statistics: empty shell");

  BoundaryStats stats;
  stats.rho_b.resize(vectors.cols());
  double total = 0.0, boundary = 0.0;
  for (int j = 0; j < vectors.cols(); ++j) {
    const double norm2 = vectors.col(j).squaredNorm();
    double in_shell = 0.0;
    for (int r = 0; r < ncells; ++r) {
      double cell = 0.0;
      for (int a = 0; a < comps; ++a) cell += std::norm(vectors(r * comps + a, j));
      cell /= norm2;
      if (shell_mask[r]) in_shell += cell;
    }
    stats.rho_b(j) = in_shell;
    boundary += in_shell;
    total += 1.0;
    if (in_shell > 0.5) ++stats.n_boundary;
  }
  stats.rho_bar_b = boundary / total;
  return stats;
}

}  // namespace nhl
