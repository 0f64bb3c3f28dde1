#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "nhl/model.hpp"
#include "nhl/winding.hpp"

namespace nhl {

// Gaussian wave packet exp(-(r - r0)^2 / sigma0) exp(i k0 . r) carrying the
// given per-site spinor (comps components per cell, spinor size = comps),
// normalized to unit norm. Note sigma0 divides the squared distance directly.
Eigen::VectorXcd gaussian_packet(const std::vector<Cell>& cells, double cx,
                                 double cy, double sigma0, double kx, double ky,
                                 const Eigen::VectorXcd& spinor);

// Bloch period 2pi / gcrd(Fx, Fy) over exact rationals (denominator cap 1e6);
// single-component forces reduce to 2pi/|F|. Throws numeric_error when a
// nonzero component has no rational representation within the cap.
double bloch_period(double fx, double fy, long max_den = 1000000);

struct DriveResult {
  Eigen::VectorXd t;        // sample times (t = 0 included)
  Eigen::VectorXd x, y;     // packet center of mass
  Eigen::VectorXd ln_norm;  // accumulated log of the squared-norm factor
  Eigen::VectorXcd psi_final;
};

// Fixed-step RK4 for i d psi/dt = (H + fx x + fy y) psi with per-step
// renormalization (the log factors are accumulated so decaying evolutions
// never underflow). Samples are thinned to about max_samples points. The
// Gershgorin bound of the driven matrix guards dt for stability.
DriveResult evolve_packet(const SparseCd& H, const Eigen::VectorXcd& psi0,
                          const Eigen::VectorXd& rx, const Eigen::VectorXd& ry,
                          double fx, double fy, double T, double dt,
                          int max_samples = 2500);

// Default step 0.002 / max(1, |F| L).
double default_dt(double fx, double fy, int L);

struct SpectrumTrace {
  Eigen::VectorXd t, re, im;
};

// Semiclassical reconstruction along k(t) = k0 - F t: the imaginary part is
// half the log-norm slope, the real part integrates -F . v(t) from the
// supplied anchor Re E(k0). Differences are central with one-sided endpoints.
SpectrumTrace reconstruct_spectrum(const DriveResult& run, double fx, double fy,
                                   double re_anchor);

struct SplittingProfile {
  std::vector<double> re_grid;   // grid values where both movers are present
  std::vector<double> delta_im;  // |Im(forward) - Im(backward)| at those values
  double max_delta = 0.0;
  int paired = 0;  // populated grid points
};

// Forward/backward-mover comparison of a reconstructed trace: the trace is cut
// into maximal segments of constant sign of d(re)/dt (segments shorter than
// min_segment are noise and dropped, `guard` samples are trimmed at both ends
// where one-sided differences are unreliable), then for every grid Re value
// covered by at least one segment of each sign the largest |Im - Im| across
// opposite-sign segments is recorded. A trace with no turning point yields an
// empty profile; that is a valid outcome, not an error.
SplittingProfile degeneracy_splitting(const SpectrumTrace& trace, int ngrid = 400,
                                      int guard = 4, int min_segment = 8);

struct ImCrossing {
  double s = 0.0;       // path parameter
  double kx = 0.0, ky = 0.0;
  double re_gap = 0.0;  // |Re E+ - Re E-| at the crossing
};

// Points along a momentum path where the two bands' Im E order flips, with
// the local Re gap; reconstruction past such a point is band-ambiguous.
std::vector<ImCrossing> adiabaticity_report(const HoppingParams& p,
                                            const KPath& kfun, int n = 2880);

}  // namespace nhl
