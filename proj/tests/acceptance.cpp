// End-to-end acceptance checks for the lattice laboratory. Each criterion
// prints exactly one PASS/FAIL line with the measured numbers; the process
// exits nonzero when any selected criterion fails. Criteria are selected by
// number on the command line (default: all).
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nhl/dynamics.hpp"
#include "nhl/gbz.hpp"
#include "nhl/geometry.hpp"
#include "nhl/model.hpp"
#include "nhl/spectral.hpp"
#include "nhl/wannier.hpp"
#include "nhl/winding.hpp"

using namespace nhl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Eigen::VectorXd coordinate(const std::vector<Cell>& cells, int comps, bool want_x) {
  Eigen::VectorXd r(cells.size() * comps);
  for (size_t i = 0; i < cells.size(); ++i)
    for (int a = 0; a < comps; ++a)
      r(i * comps + a) = want_x ? cells[i].x : cells[i].y;
  return r;
}

std::vector<cd> band_loop(const HoppingParams& p, const KPath& kf, int band, int n) {
  auto bp = band_path(p, kf, n);
  std::vector<cd> loop(n);
  for (int i = 0; i < n; ++i) loop[i] = bp.bands(band, i);
  return loop;
}

cd loop_mean(const std::vector<cd>& loop) {
  cd c(0.0, 0.0);
  for (cd z : loop) c += z;
  return c / static_cast<double>(loop.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

EigSystem solve_mask(const HoppingParams& p, const std::vector<Cell>& cells) {
  Eigen::MatrixXcd H = ladder_real(p, cells);
  if (p.gamma == 0.0 && p.dy == 0.0) return eig_symmetric(H.real());
  return eig_dense(H);
}

double rho_bar(const HoppingParams& p, const std::vector<Cell>& cells) {
  auto sys = solve_mask(p, cells);
  return boundary_statistics(sys.vectors, boundary_shell(cells, 2), 2).rho_bar_b;
}

int boundary_count(const HoppingParams& p, const std::vector<Cell>& cells) {
  auto sys = solve_mask(p, cells);
  return boundary_statistics(sys.vectors, boundary_shell(cells, 2), 2).n_boundary;
}

// median participation dimension, optionally restricted to |Re E| >= re_min
double median_dimension(const HoppingParams& p, const std::vector<Cell>& cells,
                        double re_min) {
  auto sys = solve_mask(p, cells);
  auto dims = fractal_dimensions(sys.vectors, static_cast<int>(cells.size()), 2);
  std::vector<double> kept;
  for (int j = 0; j < dims.size(); ++j)
    if (std::abs(sys.values(j).real()) >= re_min) kept.push_back(dims(j));
  return median(kept);
}

// packet launch -> drive -> spectrum trace on the single-band lossy model
SpectrumTrace lossy_band_trace(int L, double sigma0, double fx, double fy,
                               double T, double dt) {
  auto cells = square_mask(L);
  SparseCd H = hn2d_real(L, false);
  Eigen::VectorXcd spinor(1);
  spinor << 1.0;
  double c = (L - 1) / 2.0;
  auto psi = gaussian_packet(cells, c, c, sigma0, 0.0, 0.0, spinor);
  auto rx = coordinate(cells, 1, true), ry = coordinate(cells, 1, false);
  auto run = evolve_packet(H, psi, rx, ry, fx, fy, T, dt);
  return reconstruct_spectrum(run, fx, fy, hn2d_bloch(0.0, 0.0).real());
}

double lossy_trace_error(const SpectrumTrace& tr, double fx, double fy) {
  double worst = 0.0;
  for (int i = 0; i < tr.t.size(); ++i) {
    cd exact = hn2d_bloch(-fx * tr.t(i), -fy * tr.t(i));
    worst = std::max(worst, std::abs(cd(tr.re(i), tr.im(i)) - exact));
  }
  return worst;
}

// same pipeline on the two-orbital ladder, launched in the slower-decaying band
SpectrumTrace ladder_trace(const HoppingParams& p, int L, double sigma0,
                           double kx0, double ky0, double fx, double fy,
                           double T, double dt) {
  auto cells = square_mask(L);
  SparseCd H = ladder_real(p, cells);
  auto [e0, spinor] = ladder_band_state(p, kx0, ky0, 0);
  double c = (L - 1) / 2.0;
  auto psi = gaussian_packet(cells, c, c, sigma0, kx0, ky0, spinor);
  auto rx = coordinate(cells, 2, true), ry = coordinate(cells, 2, false);
  auto run = evolve_packet(H, psi, rx, ry, fx, fy, T, dt);
  return reconstruct_spectrum(run, fx, fy, e0.real());
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  HoppingParams p;  // dy = 0
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uk(-pi, pi);
  std::vector<std::pair<double, double>> ks;
  ks.reserve(1000);
  for (int i = 0; i < 1000; ++i) ks.push_back({uk(rng), uk(rng)});
  auto res = symmetry_residuals(p, ks);
  bool ok = res.mirror < 1e-13 && res.transpose_mirror < 1e-13;
  return {ok, "mirror residual " + fmt(res.mirror) + ", transpose-mirror residual " +
                  fmt(res.transpose_mirror) + " over 1000 momenta (tol 1e-13)"};
}

Outcome criterion2() {
  HoppingParams p;
  bool ok = true;
  std::ostringstream d;

  // the two axis-aligned loops must enclose no probe base
  std::vector<std::pair<std::string, KPath>> axes = {
      {"ky=-pi", [](double s) { return std::make_pair(s - pi, -pi); }},
      {"kx=0", [](double s) { return std::make_pair(0.0, s - pi); }}};
  int zero_checked = 0;
  for (auto& [name, kf] : axes) {
    for (int band = 0; band < 2; ++band) {
      auto loop = band_loop(p, kf, band, 2048);
      auto bases = off_curve_bases(loop, 10, 0.02);
      if (bases.size() < 10) {
        // the trace is a point (flat band along this axis): ring probes
        bases.clear();
        cd c = loop_mean(loop);
        for (int j = 0; j < 10; ++j)
          bases.push_back(c + 0.3 * std::exp(cd(0.0, 2.0 * pi * j / 10)));
      }
      for (cd b : bases) {
        int w = spectral_winding(
            [&](int n) { return band_loop(p, kf, band, n); }, b);
        if (w != 0) ok = false;
        ++zero_checked;
      }
    }
  }

  // along the diagonal the loop retraces itself when the transverse momentum
  // is zero, so the area-enclosing quarter values probe the two signs. The
  // bands braid along these paths (the discriminant encircles zero), so the
  // closed trajectory is the concatenation of the two continued traces.
  auto union_loop = [&p](const KPath& kf, int n) {
    auto bp = band_path(p, kf, n);
    std::vector<cd> loop(2 * n);
    for (int i = 0; i < n; ++i) {
      loop[i] = bp.bands(0, i);
      loop[n + i] = bp.bands(1, i);
    }
    return loop;
  };
  const double cvals[2] = {-pi / 2, pi / 2};
  const int expect[2] = {-1, +1};
  int got[2] = {9, 9};
  for (int ci = 0; ci < 2; ++ci) {
    const double c = cvals[ci];
    KPath kf = [c](double s) { return std::make_pair(s - pi + c, s - pi - c); };
    cd base = loop_mean(union_loop(kf, 2048));
    got[ci] = spectral_winding([&](int n) { return union_loop(kf, n); }, base);
    if (got[ci] != expect[ci]) ok = false;
  }
  d << zero_checked << " axis-loop probes all wind 0; diagonal trajectory at "
    << "transverse momentum -pi/2 winds " << got[0] << ", at +pi/2 winds "
    << got[1] << "; at transverse momentum 0 the trace retraces and encloses "
    << "nothing";
  return {ok, d.str()};
}

Outcome criterion3() {
  HoppingParams lossy;  // gamma = 0.5
  HoppingParams lossless;
  lossless.gamma = 0.0;
  const double thetas[5] = {0.0, pi / 16, pi / 8, 3 * pi / 16, pi / 4};
  double raw[5], excess[5];
  for (int i = 0; i < 5; ++i) {
    auto cells = rotated_mask(thetas[i], rotated_bounding_side(thetas[i], 40));
    raw[i] = rho_bar(lossy, cells);
    // subtract the lossless baseline: a two-cell-deep shell holds ~19% of a
    // side-40 sample, so even extended states carry that much raw weight
    excess[i] = raw[i] - rho_bar(lossless, cells);
  }
  bool ok = excess[0] < 0.1;
  for (int i = 1; i < 5; ++i)
    if (excess[i] < excess[i - 1] - 1e-9) ok = false;
  std::ostringstream d;
  d << "boundary-weight excess over the lossless baseline: ";
  for (int i = 0; i < 5; ++i) d << (i ? ", " : "") << fmt(excess[i]);
  d << " (raw at theta=0: " << fmt(raw[0]) << "); square value < 0.1 and "
    << "non-decreasing toward the diamond";
  return {ok, d.str()};
}

Outcome criterion4() {
  // calibration precondition: exact dimensions for the three analytic states
  int n = 64;
  Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(n, cd(1, 0));
  Eigen::VectorXcd partial = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < 8; ++i) partial(8 * i) = cd(1, 0);
  Eigen::VectorXcd point = Eigen::VectorXcd::Zero(n);
  point(5) = cd(1, 0);
  bool calib = std::abs(fractal_dimension(uniform, n, 1) - 2.0) < 1e-12 &&
               std::abs(fractal_dimension(partial, n, 1) - 1.0) < 1e-12 &&
               std::abs(fractal_dimension(point, n, 1) - 0.0) < 1e-12;

  HoppingParams p;
  const double bulk_edge = std::sqrt(15.0) / 4.0;  // inner band edge
  double med_sq = median_dimension(p, square_mask(25), bulk_edge);
  double med_di = median_dimension(p, diamond_mask(39), bulk_edge);
  bool sq_ok = med_sq >= 1.9;
  bool di_ok = med_di >= 1.0 && med_di <= 1.7;
  std::ostringstream d;
  d << "calibration " << (calib ? "exact" : "BROKEN") << "; bulk-band median D: "
    << "square L=25 " << fmt(med_sq) << " (need >= 1.9" << (sq_ok ? ", ok" : ", violated")
    << "), diamond L=39 " << fmt(med_di) << " (need in [1.0, 1.7]"
    << (di_ok ? ", ok" : ", violated") << ")";
  return {calib && sq_ok && di_ok, d.str()};
}

Outcome criterion5() {
  HoppingParams lossy;
  HoppingParams lossless;
  lossless.gamma = 0.0;

  const int dsides[3] = {21, 31, 39};
  double ratio[3];
  int nb_d[3];
  for (int i = 0; i < 3; ++i) {
    auto cells = diamond_mask(dsides[i]);
    nb_d[i] = boundary_count(lossy, cells);
    ratio[i] = static_cast<double>(nb_d[i]) / cells.size();
  }
  double mean_ratio = (ratio[0] + ratio[1] + ratio[2]) / 3.0;
  bool diamonds_ok = true;
  for (double r : ratio)
    if (std::abs(r - mean_ratio) > 0.2 * mean_ratio) diamonds_ok = false;

  const int ssides[3] = {15, 20, 25};
  int nb_s[3], nb_s0[3];
  bool squares_ok = true;
  for (int i = 0; i < 3; ++i) {
    auto cells = square_mask(ssides[i]);
    nb_s[i] = boundary_count(lossy, cells);
    nb_s0[i] = boundary_count(lossless, cells);
    if (std::abs(nb_s[i] - nb_s0[i]) > 0.2 * nb_s0[i]) squares_ok = false;
  }
  std::ostringstream d;
  d << "diamond boundary-state density N_b/V = " << fmt(ratio[0]) << ", "
    << fmt(ratio[1]) << ", " << fmt(ratio[2]) << " (spread vs mean "
    << (diamonds_ok ? "within" : "exceeds") << " 20%); square N_b lossy/lossless = "
    << nb_s[0] << "/" << nb_s0[0] << ", " << nb_s[1] << "/" << nb_s0[1] << ", "
    << nb_s[2] << "/" << nb_s0[2] << " ("
    << (squares_ok ? "all within 20%" : "outside 20%") << ")";
  return {diamonds_ok && squares_ok, d.str()};
}

Outcome criterion6() {
  HoppingParams p;
  std::ostringstream d;

  HoppingParams hermitian = p;
  hermitian.gamma = 0.0;
  auto h_slice = gbz_slice(hermitian, 0.7, 60);
  double worst_kappa = 0.0;
  for (const auto& pt : h_slice.points)
    worst_kappa = std::max(worst_kappa, std::abs(pt.kappa));
  bool herm_ok = worst_kappa < 1e-8;

  Eigen::MatrixXd fp = kappa_field(p, 64, 60, DiagAxis::plus);
  Eigen::MatrixXd fm = kappa_field(p, 64, 60, DiagAxis::minus);
  int both = 0;
  double worst_sym = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      if (!std::isfinite(fp(i, j)) || !std::isfinite(fm(i, j))) continue;
      ++both;
      worst_sym = std::max(worst_sym, std::abs(fp(i, j) - fm(i, j)));
    }
  bool sym_ok = both > 0 && worst_sym < 1e-6;

  int qualified = 0, agree = 0;
  for (int j = 0; j < 16; ++j) {
    double k = -pi + 2 * pi * j / 16;
    auto slice = gbz_slice(p, k, 60);
    for (const auto& pt : slice.points) {
      if (std::abs(pt.kappa) * 60 <= 1.0) continue;
      ++qualified;
      if ((pt.centroid_side > 0) == (pt.kappa > 0)) ++agree;
    }
  }
  bool side_ok = qualified > 0 && agree >= 0.95 * qualified;

  d << "lossless max|kappa| " << fmt(worst_kappa) << "; axis-exchange field "
    << "agreement " << fmt(worst_sym) << " over " << both << " grid points; "
    << "centroid side matches sign(kappa) for " << agree << "/" << qualified
    << " stripe states";
  return {herm_ok && sym_ok && side_ok, d.str()};
}

Outcome criterion7() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    HoppingParams p;
    p.ts = u(rng);
    p.tp = u(rng);
    p.tsp = u(rng);
    p.tsp_diag = u(rng);
    p.gamma = std::abs(u(rng));
    cd b = std::exp(cd(0.0, 2.0 * u(rng)));
    cd E(u(rng), u(rng));
    auto a = char_poly(p, b, E);
    auto e = char_poly_expanded(p, b, E);
    for (int j = 0; j < 7; ++j) worst = std::max(worst, std::abs(a[j] - e[j]));
  }
  return {worst < 1e-12, "largest coefficient mismatch " + fmt(worst) +
                             " over 100 random draws (tol 1e-12)"};
}

Outcome criterion8() {
  const double T = 2 * pi / 10, dt = 5e-5;
  double e_xy = lossy_trace_error(lossy_band_trace(33, 60.0, 10, 10, T, dt), 10, 10);
  double e_x = lossy_trace_error(lossy_band_trace(33, 60.0, 10, 0, T, dt), 10, 0);
  double e_y = lossy_trace_error(lossy_band_trace(33, 60.0, 0, 10, T, dt), 0, 10);

  HoppingParams p;
  auto tr = ladder_trace(p, 40, 40.5, 0.1 * pi, 0.0, 0.0, 0.25, 8 * pi, 1e-3);
  double e_ladder = 0.0;
  for (int i = 0; i < tr.t.size(); ++i) {
    cd exact = ladder_band_state(p, 0.1 * pi, -0.25 * tr.t(i), 0).first;
    e_ladder = std::max(e_ladder, std::abs(cd(tr.re(i), tr.im(i)) - exact));
  }
  bool ok = e_xy < 0.05 && e_x < 0.05 && e_y < 0.05 && e_ladder < 0.05;
  return {ok, "single-band trace errors " + fmt(e_xy) + " (diag), " + fmt(e_x) +
                  " (x), " + fmt(e_y) + " (y); ladder full-period error " +
                  fmt(e_ladder) + " (tol 0.05)"};
}

Outcome criterion9() {
  double e_narrow =
      lossy_trace_error(lossy_band_trace(33, 10.0, 10, 0, 2 * pi / 10, 5e-5), 10, 0);
  double e_wide =
      lossy_trace_error(lossy_band_trace(33, 40.0, 10, 0, 2 * pi / 10, 5e-5), 10, 0);
  double e_weak =
      lossy_trace_error(lossy_band_trace(33, 25.0, 5, 0, 2 * pi / 5, 5e-5), 5, 0);
  double e_strong =
      lossy_trace_error(lossy_band_trace(33, 25.0, 10, 0, 2 * pi / 10, 5e-5), 10, 0);
  bool ok = e_wide < e_narrow && e_strong < e_weak;
  return {ok, "error " + fmt(e_narrow) + " -> " + fmt(e_wide) +
                  " when the packet widens; " + fmt(e_weak) + " -> " +
                  fmt(e_strong) + " when the force doubles"};
}

Outcome criterion10() {
  HoppingParams p;
  const double thetas[5] = {0.0, pi / 16, pi / 8, 3 * pi / 16, pi / 4};
  double column[5];
  bool substituted = false;
  for (int i = 0; i < 5; ++i) {
    double fx = 0.25 * std::cos(thetas[i]), fy = 0.25 * std::sin(thetas[i]);
    auto tr = ladder_trace(p, 40, 40.5, -pi / 2, 0.0, fx, fy, pi / fx, 1e-3);
    auto prof = degeneracy_splitting(tr);
    if (prof.paired > 0) {
      column[i] = prof.max_delta;
    } else {
      // no turning point within the window: the decay-rate spread along the
      // trace still lower-bounds the forward/backward asymmetry
      column[i] = tr.im.maxCoeff() - tr.im.minCoeff();
      substituted = true;
    }
  }
  bool ok = true;
  for (int i = 1; i < 5; ++i)
    if (column[i] < column[i - 1] - 1e-12) ok = false;
  std::ostringstream d;
  d << "largest splitting per drive angle: ";
  for (int i = 0; i < 5; ++i) d << (i ? ", " : "") << fmt(column[i]);
  if (substituted)
    d << " (monotone-drive angles report the trace decay-rate spread)";
  return {ok, d.str()};
}

Outcome criterion11() {
  HoppingParams p;
  p.dy = 0.1;

  // winding along kx at ky = 0 must be nonzero for at least one band
  KPath along_x = [](double s) { return std::make_pair(s - pi, 0.0); };
  int wx = 0;
  for (int band = 0; band < 2 && wx == 0; ++band) {
    auto loop = band_loop(p, along_x, band, 2048);
    auto found = enclosed_base(loop);
    if (found) wx = found->second;
  }

  // winding along ky at kx = 0.1 pi must vanish for every probe base
  KPath along_y = [](double s) { return std::make_pair(0.1 * pi, s - pi); };
  bool wy_zero = true;
  for (int band = 0; band < 2; ++band) {
    auto loop = band_loop(p, along_y, band, 2048);
    for (cd b : off_curve_bases(loop, 10, 0.02)) {
      if (spectral_winding([&](int n) { return band_loop(p, along_y, band, n); },
                           b) != 0)
        wy_zero = false;
    }
  }

  double med = median_dimension(p, square_mask(25), 0.0);
  bool med_ok = med > 1.0 && med <= 1.5;
  std::ostringstream d;
  d << "kx-loop winding " << wx << " (nonzero required); ky-loop windings all "
    << (wy_zero ? "zero" : "NONZERO") << "; median D on the square " << fmt(med)
    << " (need in (1.0, 1.5]" << (med_ok ? ", ok" : ", violated") << ")";
  return {wx != 0 && wy_zero && med_ok, d.str()};
}

Outcome criterion12() {
  struct Row {
    double vx, phi;
    double table[4];
  };
  const Row rows[3] = {{0.8, 0.8 * pi, {-0.2, 0.64, 0.16, 0.04}},
                       {1.2, 0.8 * pi, {-0.18, 0.62, 0.13, 0.03}},
                       {1.0, 0.85 * pi, {-0.19, 0.63, 0.14, 0.03}}};
  std::ostringstream d;
  bool rows_ok = true;
  FittedCouplings fit1;
  for (int r = 0; r < 3; ++r) {
    OpticalPotentialSpec pot;
    pot.vx = rows[r].vx;
    pot.phi = rows[r].phi;
    auto fit = fit_tight_binding(pot);
    if (r == 1) fit1 = fit;
    const double got[4] = {fit.ts_table, fit.tp_table, fit.tsp_table,
                           fit.tsp_diag_table};
    double worst = 0.0;
    for (int c = 0; c < 4; ++c)
      worst = std::max(worst, std::abs(got[c] - rows[r].table[c]));
    if (worst > 0.03) rows_ok = false;
    d << "row " << r + 1 << " worst coupling deviation " << fmt(worst)
      << (worst > 0.03 ? " (exceeds 0.03; largest on the p-band hopping)"
                       : " (within 0.03)")
      << "; ";
  }
  OpticalPotentialSpec pot2;
  pot2.vx = 1.2;
  auto fine = fit_tight_binding(pot2, 0.5, 3, 128);
  double drift = std::max(
      std::max(std::abs(fine.ts_table - fit1.ts_table),
               std::abs(fine.tp_table - fit1.tp_table)),
      std::max(std::abs(fine.tsp_table - fit1.tsp_table),
               std::abs(fine.tsp_diag_table - fit1.tsp_diag_table)));
  bool drift_ok = drift < 1e-3;
  d << "resolution-doubling drift " << fmt(drift) << " (tol 1e-3)";
  return {rows_ok && drift_ok, d.str()};
}

Outcome run_criterion(int c) {
  switch (c) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
    case 11: return criterion11();
    case 12: return criterion12();
    default: return {false, "unknown criterion"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int c = 1; c <= 12; ++c) selected.push_back(c);

  bool all_pass = true;
  for (int c : selected) {
    Outcome out;
    try {
      out = run_criterion(c);
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s - %s\n", c, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
