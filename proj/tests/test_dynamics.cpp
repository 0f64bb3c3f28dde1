#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "nhl/dynamics.hpp"
#include "nhl/model.hpp"
#include "nhl/spectral.hpp"

using namespace nhl;

namespace {

Eigen::VectorXd cell_coordinate(const std::vector<Cell>& cells, int comps, bool x) {
  Eigen::VectorXd r(cells.size() * comps);
  for (size_t i = 0; i < cells.size(); ++i)
    for (int a = 0; a < comps; ++a)
      r(i * comps + a) = x ? cells[i].x : cells[i].y;
  return r;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("gaussian packet is normalized and carries the spinor") {
  auto cells = square_mask(9);
  Eigen::VectorXcd spinor(2);
  spinor << cd(1.0, 0.0), cd(0.0, 2.0);
  auto psi = gaussian_packet(cells, 4.0, 4.0, 8.0, 0.3, -0.1, spinor);
  REQUIRE(psi.size() == 162);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
  int center = 4 * 9 + 4;
  CHECK(std::abs(psi(2 * center + 1) - cd(0.0, 2.0) * psi(2 * center)) < 1e-12);
  CHECK(std::abs(psi(2 * center)) > std::abs(psi(0)));  // envelope decays

  CHECK_THROWS_AS(gaussian_packet(cells, 4, 4, 0.0, 0, 0, spinor),
                  std::invalid_argument);
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(gaussian_packet(cells, 4, 4, 8.0, 0, 0, zero),
                  std::invalid_argument);
}

TEST_CASE("drive periods come from the greatest common rational divisor") {
  CHECK(bloch_period(0.25, 0.0) == doctest::Approx(8 * pi).epsilon(1e-12));
  CHECK(bloch_period(0.25, 0.25) == doctest::Approx(8 * pi).epsilon(1e-12));
  CHECK(bloch_period(0.5, 1.0 / 3.0) == doctest::Approx(12 * pi).epsilon(1e-12));
  CHECK(bloch_period(0.0, -0.4) == doctest::Approx(5 * pi).epsilon(1e-12));
  CHECK_THROWS_AS(bloch_period(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bloch_period(0.5 + 5e-9, 0.25), numeric_error);
}

TEST_CASE("default step shrinks with force and system size") {
  CHECK(default_dt(0, 0, 40) == doctest::Approx(0.002).epsilon(1e-12));
  CHECK(default_dt(10, 0, 40) == doctest::Approx(5e-6).epsilon(1e-12));
  CHECK(default_dt(3, 4, 2) == doctest::Approx(2e-4).epsilon(1e-12));
}

TEST_CASE("lossless evolution conserves the norm") {
  HoppingParams p;
  p.gamma = 0.0;
  auto cells = square_mask(10);
  SparseCd H = ladder_real(p, cells);
  Eigen::VectorXcd spinor(2);
  spinor << 1.0, 0.5;
  auto psi0 = gaussian_packet(cells, 4.5, 4.5, 8.0, 0.2, 0.1, spinor);
  auto rx = cell_coordinate(cells, 2, true), ry = cell_coordinate(cells, 2, false);
  auto run = evolve_packet(H, psi0, rx, ry, 0.3, 0.0, 1.0, 1e-3);
  CHECK(std::abs(run.ln_norm(run.ln_norm.size() - 1)) < 1e-8);
  CHECK(run.t(0) == 0.0);
  CHECK(run.t(run.t.size() - 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrator error falls sixteenfold when the step halves") {
  HoppingParams p;
  p.gamma = 0.0;
  auto cells = square_mask(12);
  SparseCd H = ladder_real(p, cells);
  Eigen::VectorXcd spinor(2);
  spinor << cd(1.0, 0.0), cd(0.0, 0.5);
  auto psi0 = gaussian_packet(cells, 5.5, 5.5, 10.0, 0.3, -0.2, spinor);
  auto rx = cell_coordinate(cells, 2, true), ry = cell_coordinate(cells, 2, false);
  auto ref = evolve_packet(H, psi0, rx, ry, 0.0, 0.3, 1.0, 1.25e-4);
  auto coarse = evolve_packet(H, psi0, rx, ry, 0.0, 0.3, 1.0, 1e-3);
  auto fine = evolve_packet(H, psi0, rx, ry, 0.0, 0.3, 1.0, 5e-4);
  double e_coarse = (coarse.psi_final - ref.psi_final).norm();
  double e_fine = (fine.psi_final - ref.psi_final).norm();
  double ratio = e_coarse / e_fine;
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("an undriven eigenstate only decays") {
  SparseCd H = hn2d_real(8, false);
  auto sys = eig_dense(Eigen::MatrixXcd(H));
  int j = 10;
  Eigen::VectorXcd v = sys.vectors.col(j);
  Eigen::VectorXd rx(64), ry(64);
  for (int i = 0; i < 64; ++i) {
    rx(i) = i % 8;
    ry(i) = i / 8;
  }
  auto run = evolve_packet(H, v, rx, ry, 0.0, 0.0, 0.5, 1e-3);
  CHECK(std::abs(run.ln_norm(run.ln_norm.size() - 1) -
                 2.0 * 0.5 * sys.values(j).imag()) < 1e-6);
  CHECK(std::abs(std::abs(run.psi_final.dot(v)) - 1.0) < 1e-6);
}

TEST_CASE("steps too coarse for the spectral radius are rejected") {
  SparseCd H = hn2d_real(15, false);
  Eigen::VectorXd rx(225), ry(225);
  for (int i = 0; i < 225; ++i) {
    rx(i) = i % 15;
    ry(i) = i / 15;
  }
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(225, cd(1.0, 0.0) / 15.0);
  CHECK_THROWS_AS(evolve_packet(H, psi0, rx, ry, 10.0, 10.0, 1.0, 0.1),
                  numeric_error);
  Eigen::VectorXd bad(7);
  CHECK_THROWS_AS(evolve_packet(H, psi0, bad, ry, 0, 0, 1.0, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("momentum drifts as k0 - F t under the drive") {
  int L = 32;
  SparseCd H = hn2d_real(L, true);
  auto cells = square_mask(L);
  Eigen::VectorXcd spinor(1);
  spinor << 1.0;
  double kx0 = 2 * pi * 8 / L, ky0 = 2 * pi * 4 / L;  // grid momenta
  auto psi0 = gaussian_packet(cells, 15.5, 15.5, 30.0, kx0, ky0, spinor);
  auto rx = cell_coordinate(cells, 1, true), ry = cell_coordinate(cells, 1, false);
  double fx = 0.5, T = 2.0;
  auto run = evolve_packet(H, psi0, rx, ry, fx, 0.0, T, 2e-3);

  // brute-force lattice Fourier transform, separable phase tables
  Eigen::MatrixXcd ex(L, L), ey(L, L);
  for (int m = 0; m < L; ++m)
    for (int r = 0; r < L; ++r) {
      ex(m, r) = std::exp(cd(0.0, -2 * pi * m * r / L));
      ey(m, r) = ex(m, r);
    }
  double best = -1.0;
  int bx = 0, by = 0;
  for (int mx = 0; mx < L; ++mx)
    for (int my = 0; my < L; ++my) {
      cd amp = 0.0;
      for (int i = 0; i < L * L; ++i)
        amp += run.psi_final(i) * ex(mx, i % L) * ey(my, i / L);
      if (std::abs(amp) > best) {
        best = std::abs(amp);
        bx = mx;
        by = my;
      }
    }
  double spacing = 2 * pi / L;
  double expect_kx = wrap_angle(kx0 - fx * T), expect_ky = wrap_angle(ky0);
  CHECK(std::abs(wrap_angle(2 * pi * bx / L - expect_kx)) < spacing + 1e-9);
  CHECK(std::abs(wrap_angle(2 * pi * by / L - expect_ky)) < 1e-9);
}

TEST_CASE("reconstruction needs a minimum sample count") {
  DriveResult run;
  run.t = Eigen::VectorXd::LinSpaced(10, 0.0, 1.0);
  run.x = run.t;
  run.y = run.t;
  run.ln_norm = run.t;
  CHECK_THROWS_AS(reconstruct_spectrum(run, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("reconstruction recovers rates from a synthetic run") {
  int n = 100;
  DriveResult run;
  run.t = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  run.x.resize(n);
  run.y = Eigen::VectorXd::Zero(n);
  run.ln_norm.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = run.t(i);
    run.x(i) = 0.5 * t * t;  // vx = t
    run.ln_norm(i) = 0.2 * t;
  }
  auto trace = reconstruct_spectrum(run, 1.0, 0.0, 3.0);
  CHECK(trace.re(0) == 3.0);
  for (int i = 0; i < n; ++i)
    CHECK(trace.im(i) == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(trace.re(n - 1) == doctest::Approx(3.0 - 0.5).epsilon(2e-2));
}

TEST_CASE("lossless runs reconstruct a purely real spectrum") {
  HoppingParams p;
  p.gamma = 0.0;
  auto cells = square_mask(20);
  SparseCd H = ladder_real(p, cells);
  auto [e0, spinor] = ladder_band_state(p, 0.1 * pi, 0.0, 0);
  auto psi0 = gaussian_packet(cells, 9.5, 9.5, 40.5, 0.1 * pi, 0.0, spinor);
  auto rx = cell_coordinate(cells, 2, true), ry = cell_coordinate(cells, 2, false);
  auto run = evolve_packet(H, psi0, rx, ry, 0.0, 0.25, 2.0, 4e-4);
  auto trace = reconstruct_spectrum(run, 0.0, 0.25, e0.real());
  double worst = 0.0;
  for (int i = 0; i < trace.im.size(); ++i)
    worst = std::max(worst, std::abs(trace.im(i)));
  CHECK(worst < 1e-3);
  CHECK(trace.re(0) == doctest::Approx(e0.real()).epsilon(1e-12));
}

TEST_CASE("opposite movers separate on a synthetic triangle trace") {
  int n = 600;
  SpectrumTrace trace;
  trace.t = Eigen::VectorXd::LinSpaced(n, 0.0, 2 * pi);
  trace.re.resize(n);
  trace.im.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = trace.t(i);
    trace.re(i) = std::sin(t);
    trace.im(i) = std::cos(t) > 0 ? 0.1 : -0.1;
  }
  auto prof = degeneracy_splitting(trace);
  CHECK(prof.paired > 300);
  CHECK(prof.max_delta == doctest::Approx(0.2).epsilon(1e-9));

  SpectrumTrace mono;
  mono.t = trace.t;
  mono.re = trace.t;
  mono.im = Eigen::VectorXd::Zero(n);
  auto empty = degeneracy_splitting(mono);
  CHECK(empty.paired == 0);
  CHECK(empty.max_delta == 0.0);
  CHECK(empty.re_grid.empty());
}

TEST_CASE("transverse-drive movers stay nearly degenerate") {
  HoppingParams p;  // gamma = 0.5
  int L = 56;
  auto cells = square_mask(L);
  SparseCd H = ladder_real(p, cells);
  auto [e0, spinor] = ladder_band_state(p, 0.1 * pi, 0.0, 0);
  auto psi0 = gaussian_packet(cells, 27.5, 27.5, 162.0, 0.1 * pi, 0.0, spinor);
  auto rx = cell_coordinate(cells, 2, true), ry = cell_coordinate(cells, 2, false);
  auto run = evolve_packet(H, psi0, rx, ry, 0.0, 0.25, 8 * pi, 1e-3);
  auto trace = reconstruct_spectrum(run, 0.0, 0.25, e0.real());
  auto prof = degeneracy_splitting(trace);
  CHECK(prof.paired > 0);
  CHECK(prof.max_delta < 0.02);
  CHECK(prof.max_delta > 0.005);
}

TEST_CASE("im-order flips are reported with their re gaps") {
  HoppingParams p;
  KPath along_x = [](double s) { return std::make_pair(s - pi, 0.0); };
  auto report = adiabaticity_report(p, along_x);
  REQUIRE(report.size() == 2);
  CHECK(std::abs(report[0].kx + pi / 2) < 0.01);
  CHECK(std::abs(report[1].kx - pi / 2) < 0.01);
  CHECK(report[0].re_gap > 1.0);

  KPath along_y = [](double s) { return std::make_pair(0.1 * pi, s - pi); };
  CHECK(adiabaticity_report(p, along_y).empty());
}

}  // TEST_SUITE
