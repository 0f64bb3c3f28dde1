#include "nhl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhl {

namespace {

// Rational approximation p/q with q <= max_den by the Stern-Brocot walk.
std::pair<long long, long long> rationalize(double v, long max_den) {
  const double sign = v < 0 ? -1.0 : 1.0;
  double x = std::abs(v);
  long long pl = 0, ql = 1, ph = 1, qh = 0;  // bounds 0/1 and 1/0
  for (int iter = 0; iter < 128; ++iter) {
    const long long a = static_cast<long long>(std::floor(x));
    long long p = a * ph + pl, q = a * qh + ql;
    if (q > max_den) {
      // Largest admissible semiconvergent.
      const long long k = (max_den - ql) / qh;
      p = k * ph + pl;
      q = k * qh + ql;
      return {static_cast<long long>(sign) * p, q};
    }
    pl = ph;
    ql = qh;
    ph = p;
    qh = q;
    const double frac = x - static_cast<double>(a);
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return {static_cast<long long>(sign) * ph, qh};
}

// np.gradient-style derivative on a nonuniform grid: second-order central
// differences inside, first-order one-sided at the ends.
Eigen::VectorXd gradient(const Eigen::VectorXd& f, const Eigen::VectorXd& t) {
  const int n = static_cast<int>(f.size());
  Eigen::VectorXd g(n);
  g(0) = (f(1) - f(0)) / (t(1) - t(0));
  g(n - 1) = (f(n - 1) - f(n - 2)) / (t(n - 1) - t(n - 2));
  for (int i = 1; i < n - 1; ++i) {
    const double hd = t(i) - t(i - 1), hs = t(i + 1) - t(i);
    g(i) = (hs * hs * f(i + 1) + (hd * hd - hs * hs) * f(i) -
            hd * hd * f(i - 1)) /
           (hs * hd * (hs + hd));
  }
  return g;
}

}  // namespace

Eigen::VectorXcd gaussian_packet(const std::vector<Cell>& cells, double cx,
                                 double cy, double sigma0, double kx, double ky,
                                 const Eigen::VectorXcd& spinor) {
  if (sigma0 <= 0.0) throw std::invalid_argument("gaussian_packet: sigma0 <= 0");
  const int comps = static_cast<int>(spinor.size());
  const int n = static_cast<int>(cells.size());
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(n) * comps);
  for (int i = 0; i < n; ++i) {
    const double dx = cells[i].x - cx, dy = cells[i].y - cy;
    const cd amp = std::exp(cd(-(dx * dx + dy * dy) / sigma0,
                               kx * cells[i].x + ky * cells[i].y));
    for (int a = 0; a < comps; ++a) psi(i * comps + a) = amp * spinor(a);
  }
  const double nrm = psi.norm();
  if (nrm == 0.0) throw std::invalid_argument("gaussian_packet: vanishing norm");
  return psi / nrm;
}

double bloch_period(double fx, double fy, long max_den) {
  if (fx == 0.0 && fy == 0.0)
    throw std::invalid_argument("bloch_period: zero force");
  if (fx == 0.0 || fy == 0.0) return 2.0 * pi / std::max(std::abs(fx), std::abs(fy));
  const auto [p1, q1] = rationalize(fx, max_den);
  const auto [p2, q2] = rationalize(fy, max_den);
  if (std::abs(fx - double(p1) / double(q1)) > 1e-9 * std::max(1.0, std::abs(fx)) ||
      std::abs(fy - double(p2) / double(q2)) > 1e-9 * std::max(1.0, std::abs(fy)))
    throw numeric_error("bloch_period: force ratio is not rational within the cap");
  // Greatest common rational divisor of p1/q1 and p2/q2.
  const long long num = std::gcd(std::llabs(p1 * q2), std::llabs(p2 * q1));
  const double gcrd = double(num) / (double(q1) * double(q2));
  return 2.0 * pi / gcrd;
}

double default_dt(double fx, double fy, int L) {
  return 0.002 / std::max(1.0, std::hypot(fx, fy) * L);
}

DriveResult evolve_packet(const SparseCd& H, const Eigen::VectorXcd& psi0,
                          const Eigen::VectorXd& rx, const Eigen::VectorXd& ry,
                          double fx, double fy, double T, double dt,
                          int max_samples) {
  const Eigen::Index n = psi0.size();
  if (H.rows() != n || rx.size() != n || ry.size() != n)
    throw std::invalid_argument("evolve_packet: size mismatch");
  if (dt <= 0.0 || T <= 0.0)
    throw std::invalid_argument("evolve_packet: nonpositive T or dt");

  const Eigen::VectorXd diag = fx * rx + fy * ry;

  // Gershgorin bound of H + diag(F.r) guards the explicit step.
  double bound = 0.0;
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < H.outerSize(); ++k)
    for (SparseCd::InnerIterator it(H, k); it; ++it)
      row_sum(it.row()) += std::abs(it.value());
  for (Eigen::Index i = 0; i < n; ++i)
    bound = std::max(bound, row_sum(i) + std::abs(diag(i)));
  if (dt * bound >= 0.1)
    throw numeric_error("evolve_packet: dt too large for the spectral radius");

  const long long nsteps = std::llround(T / dt);
  if (nsteps < 1) throw std::invalid_argument("evolve_packet: T < dt");
  const long long stride =
      std::max(1LL, std::llround(T / dt / double(max_samples)));

  const Eigen::VectorXcd diagc = diag.cast<cd>();
  const auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return cd(0.0, -1.0) * (H * v + diagc.cwiseProduct(v)).eval();
  };

  Eigen::VectorXcd psi = psi0.normalized();
  double ln_norm = 0.0;
  std::vector<double> ts, xs, ys, lns;
  const auto record = [&](double t) {
    const double w = psi.squaredNorm();
    ts.push_back(t);
    xs.push_back(rx.dot(psi.cwiseAbs2()) / w);
    ys.push_back(ry.dot(psi.cwiseAbs2()) / w);
    lns.push_back(ln_norm);
  };
  record(0.0);

  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n);
  for (long long s = 1; s <= nsteps; ++s) {
    k1 = apply(psi);
    k2 = apply(psi + (0.5 * dt) * k1);
    k3 = apply(psi + (0.5 * dt) * k2);
    k4 = apply(psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double nn = psi.norm();
    if (!(nn > 0.0) || !std::isfinite(nn))
      throw numeric_error("evolve_packet: state norm left the finite range");
    psi /= nn;
    ln_norm += 2.0 * std::log(nn);
    if (s % stride == 0) record(s * dt);
  }

  DriveResult out;
  out.t = Eigen::Map<Eigen::VectorXd>(ts.data(), ts.size());
  out.x = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
  out.y = Eigen::Map<Eigen::VectorXd>(ys.data(), ys.size());
  out.ln_norm = Eigen::Map<Eigen::VectorXd>(lns.data(), lns.size());
  out.psi_final = psi;
  return out;
}

SpectrumTrace reconstruct_spectrum(const DriveResult& run, double fx, double fy,
                                   double re_anchor) {
  const int n = static_cast<int>(run.t.size());
  if (n < 64)
    throw std::invalid_argument(
        "reconstruct_spectrum: need at least 64 samples");
  const Eigen::VectorXd vx = gradient(run.x, run.t);
  const Eigen::VectorXd vy = gradient(run.y, run.t);

  SpectrumTrace trace;
  trace.t = run.t;
  trace.im = 0.5 * gradient(run.ln_norm, run.t);
  trace.re.resize(n);
  trace.re(0) = re_anchor;
  double acc = 0.0;
  for (int i = 1; i < n; ++i) {
    const double gi = fx * vx(i - 1) + fy * vy(i - 1);
    const double gj = fx * vx(i) + fy * vy(i);
    acc += 0.5 * (gi + gj) * (run.t(i) - run.t(i - 1));
    trace.re(i) = re_anchor - acc;
  }
  return trace;
}

SplittingProfile degeneracy_splitting(const SpectrumTrace& trace, int ngrid,
                                      int guard, int min_segment) {
  const int n = static_cast<int>(trace.t.size());
  SplittingProfile out;
  if (n < 2 * guard + min_segment) return out;

  const Eigen::VectorXd dre = gradient(trace.re, trace.t);
  const int lo = guard, hi = n - guard;  // working window [lo, hi)
  const int m = hi - lo;

  // Sign of the sweep direction, with exact zeros carried forward.
  std::vector<int> sign(m, 0);
  int last = 0;
  for (int i = 0; i < m; ++i) {
    const double v = dre(lo + i);
    int s = (v > 0.0) - (v < 0.0);
    if (s == 0) s = last;
    sign[i] = s;
    last = s;
  }

  struct Segment {
    int begin, end, dir;  // [begin, end) in window coordinates
  };
  std::vector<Segment> segments;
  int start = 0;
  for (int i = 1; i <= m; ++i) {
    if (i == m || sign[i] != sign[start]) {
      if (sign[start] != 0 && i - start >= min_segment)
        segments.push_back({start, i, sign[start]});
      start = i;
    }
  }
  if (segments.empty()) return out;

  // Per segment, samples sorted by Re for interpolation.
  struct Curve {
    std::vector<double> re, im;
    int dir;
  };
  std::vector<Curve> curves;
  for (const Segment& seg : segments) {
    std::vector<int> idx(seg.end - seg.begin);
    std::iota(idx.begin(), idx.end(), seg.begin);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return trace.re(lo + a) < trace.re(lo + b);
    });
    Curve c;
    c.dir = seg.dir;
    for (int i : idx) {
      c.re.push_back(trace.re(lo + i));
      c.im.push_back(trace.im(lo + i));
    }
    curves.push_back(std::move(c));
  }

  double re_min = trace.re(lo), re_max = trace.re(lo);
  for (int i = lo; i < hi; ++i) {
    re_min = std::min(re_min, trace.re(i));
    re_max = std::max(re_max, trace.re(i));
  }

  for (int g = 0; g < ngrid; ++g) {
    const double re =
        ngrid == 1 ? re_min : re_min + (re_max - re_min) * g / (ngrid - 1);
    double fw_lo = 0, fw_hi = 0, bw_lo = 0, bw_hi = 0;
    bool has_fw = false, has_bw = false;
    for (const Curve& c : curves) {
      if (re < c.re.front() || re > c.re.back()) continue;
      const auto it = std::lower_bound(c.re.begin(), c.re.end(), re);
      double im;
      if (it == c.re.begin()) {
        im = c.im.front();
      } else {
        const std::size_t j = it - c.re.begin();
        const double x0 = c.re[j - 1], x1 = c.re[j];
        im = x1 == x0 ? c.im[j]
                      : c.im[j - 1] +
                            (c.im[j] - c.im[j - 1]) * (re - x0) / (x1 - x0);
      }
      if (c.dir > 0) {
        fw_lo = has_fw ? std::min(fw_lo, im) : im;
        fw_hi = has_fw ? std::max(fw_hi, im) : im;
        has_fw = true;
      } else {
        bw_lo = has_bw ? std::min(bw_lo, im) : im;
        bw_hi = has_bw ? std::max(bw_hi, im) : im;
        has_bw = true;
      }
    }
    if (has_fw && has_bw) {
      const double delta = std::max(fw_hi - bw_lo, bw_hi - fw_lo);
      out.re_grid.push_back(re);
      out.delta_im.push_back(delta);
      out.max_delta = std::max(out.max_delta, delta);
      ++out.paired;
    }
  }
  return out;
}

std::vector<ImCrossing> adiabaticity_report(const HoppingParams& p,
                                            const KPath& kfun, int n) {
  const BandPath bp = band_path(p, kfun, n);
  std::vector<ImCrossing> out;
  for (int i : bp.im_crossings) {
    ImCrossing c;
    c.s = bp.s(i);
    std::tie(c.kx, c.ky) = kfun(c.s);
    c.re_gap = std::abs(bp.bands(0, i).real() - bp.bands(1, i).real());
    out.push_back(c);
  }
  return out;
}

}  // namespace nhl
