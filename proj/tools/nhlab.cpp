// nhlab: configuration-driven front end for the lattice laboratory.
// Subcommands cover eigenanalysis, density fields, deformed-momentum slices,
// driven wave packets, boundary-accumulation sweeps, and the optical-lattice
// coupling fit. All outputs are deterministic CSVs plus a JSON manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "nhl/dynamics.hpp"
#include "nhl/gbz.hpp"
#include "nhl/geometry.hpp"
#include "nhl/io.hpp"
#include "nhl/model.hpp"
#include "nhl/spectral.hpp"
#include "nhl/wannier.hpp"
#include "nhl/winding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nhl;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  long seed = 0;
  bool verbose = false;
};

// Overlay the user config onto the defaults, rejecting unknown keys so typos
// cannot silently fall back to defaults.
json merge_config(const json& defaults, const json& user, const std::string& scope) {
  if (!user.is_object())
    throw config_error("config section '" + scope + "' must be an object");
  json out = defaults;
  for (const auto& [key, value] : user.items()) {
    if (!defaults.contains(key))
      throw config_error("unknown config key: " + scope + key);
    if (defaults[key].is_object()) {
      out[key] = merge_config(defaults[key], value, scope + key + ".");
    } else if (defaults[key].is_number() && !value.is_number()) {
      throw config_error("config key " + scope + key + " must be numeric");
    } else if (defaults[key].is_string() && !value.is_string()) {
      throw config_error("config key " + scope + key + " must be a string");
    } else if (defaults[key].is_array() && !value.is_array()) {
      throw config_error("config key " + scope + key + " must be an array");
    } else {
      out[key] = value;
    }
  }
  return out;
}

json load_user_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
}

HoppingParams model_params(const json& m) {
  HoppingParams p;
  p.ts = m.at("ts").get<double>();
  p.tp = m.at("tp").get<double>();
  p.tsp = m.at("tsp").get<double>();
  p.tsp_diag = m.at("tsp_diag").get<double>();
  p.gamma = m.at("gamma").get<double>();
  p.dy = m.at("dy").get<double>();
  return p;
}

json model_defaults() {
  return {{"name", "sp_ladder"}, {"ts", 1.0},       {"tp", 1.0}, {"tsp", 1.0},
          {"tsp_diag", 0.5},     {"gamma", 0.5},    {"dy", 0.0}};
}

json geometry_defaults() {
  return {{"theta", 0.0}, {"side", 40}, {"shell_depth", 2}};
}

// Files already moved into place by this run; removed again on error so a
// failed invocation leaves no partial artifacts.
std::vector<fs::path> g_written;

void atomic_write(const fs::path& target, const std::string& payload) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw resource_error("cannot open " + tmp.string());
    out << payload;
    if (!out) throw resource_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
  g_written.push_back(target);
}

void write_outputs(const Options& opt, const std::string& sub,
                   const json& resolved, const CsvWriter& csv) {
  fs::create_directories(opt.out_dir);
  const std::string hash = fnv1a_hex(resolved.dump());
  const fs::path csv_path = fs::path(opt.out_dir) / (sub + "_" + hash + ".csv");
  atomic_write(csv_path, csv.to_string());
  json manifest = {{"tool", "nhlab"},
                   {"version", kToolVersion},
                   {"subcommand", sub},
                   {"threads", opt.threads},
                   {"seed", opt.seed},
                   {"config", resolved},
                   {"outputs", {csv_path.filename().string()}}};
  atomic_write(fs::path(opt.out_dir) / (sub + "_" + hash + ".json"),
               manifest.dump(1) + "\n");
  if (opt.verbose)
    std::fprintf(stderr, "wrote %s\n", csv_path.string().c_str());
}

std::vector<Cell> resolve_mask(const json& g, const std::string& model_name) {
  const double theta = g.at("theta").get<double>();
  const int side = g.at("side").get<int>();
  if (side < 2 || side > 200) throw config_error("geometry.side out of range");
  if (theta < 0.0 || theta > pi / 4 + 1e-12)
    throw config_error("geometry.theta must lie in [0, pi/4]");
  if (model_name == "hatano_nelson" && theta != 0.0)
    throw config_error("hatano_nelson supports theta = 0 only");
  return rotated_mask(theta, side);
}

struct SpectrumData {
  EigSystem eig;
  Eigen::VectorXd fd;
  BoundaryStats stats;
  int comps = 0;
};

SpectrumData solve_mask(const HoppingParams& p, const std::string& model_name,
                        const std::vector<Cell>& cells, int shell_depth) {
  SpectrumData d;
  if (model_name == "sp_ladder") {
    d.comps = 2;
    d.eig = eig_dense(Eigen::MatrixXcd(ladder_real(p, cells)));
  } else if (model_name == "hatano_nelson") {
    d.comps = 1;
    const int L = static_cast<int>(std::lround(std::sqrt(double(cells.size()))));
    d.eig = eig_dense(Eigen::MatrixXcd(hn2d_real(L, false)));
  } else {
    throw config_error("unknown model name: " + model_name);
  }
  d.fd = fractal_dimensions(d.eig.vectors, static_cast<int>(cells.size()), d.comps);
  d.stats = boundary_statistics(d.eig.vectors, boundary_shell(cells, shell_depth),
                                d.comps);
  return d;
}

int run_spectrum(const Options& opt, const json& user) {
  const json defaults = {{"model", model_defaults()},
                         {"geometry", geometry_defaults()}};
  const json cfg = merge_config(defaults, user, "");
  const std::string name = cfg["model"]["name"].get<std::string>();
  const auto cells = resolve_mask(cfg["geometry"], name);
  const auto data = solve_mask(model_params(cfg["model"]), name, cells,
                               cfg["geometry"]["shell_depth"].get<int>());
  CsvWriter csv({"index", "re_E", "im_E", "fd", "rho_b"});
  for (Eigen::Index i = 0; i < data.eig.values.size(); ++i)
    csv.add_row({double(i), data.eig.values(i).real(), data.eig.values(i).imag(),
                 data.fd(i), data.stats.rho_b(i)});
  write_outputs(opt, "spectrum", cfg, csv);
  return 0;
}

int run_density(const Options& opt, const json& user) {
  const json defaults = {{"model", model_defaults()},
                         {"geometry", geometry_defaults()},
                         {"output", {{"field", "rho"}}}};
  const json cfg = merge_config(defaults, user, "");
  const std::string name = cfg["model"]["name"].get<std::string>();
  const std::string field = cfg["output"]["field"].get<std::string>();
  const auto cells = resolve_mask(cfg["geometry"], name);
  if (field == "mask") {
    const auto shell =
        boundary_shell(cells, cfg["geometry"]["shell_depth"].get<int>());
    CsvWriter csv({"cell_index", "x", "y", "is_boundary_shell"});
    for (std::size_t i = 0; i < cells.size(); ++i)
      csv.add_row({double(i), double(cells[i].x), double(cells[i].y),
                   double(shell[i])});
    write_outputs(opt, "density", cfg, csv);
    return 0;
  }
  if (field != "rho") throw config_error("output.field must be rho or mask");
  const auto data = solve_mask(model_params(cfg["model"]), name, cells,
                               cfg["geometry"]["shell_depth"].get<int>());
  const Eigen::VectorXd rho =
      average_density(data.eig.vectors, static_cast<int>(cells.size()), data.comps);
  CsvWriter csv({"x", "y", "rho"});
  for (std::size_t i = 0; i < cells.size(); ++i)
    csv.add_row({double(cells[i].x), double(cells[i].y), rho(i)});
  write_outputs(opt, "density", cfg, csv);
  return 0;
}

int run_gbz(const Options& opt, const json& user) {
  const json defaults = {{"model", model_defaults()},
                         {"numerics",
                          {{"mode", "slice"},
                           {"k_fixed", 0.7},
                           {"stripe_l", 60},
                           {"axis", "plus"},
                           {"grid_n", 64},
                           {"tol", 1e-6},
                           {"tol_cap", 0.1},
                           {"min_acceptance", 0.8}}}};
  const json cfg = merge_config(defaults, user, "");
  if (cfg["model"]["name"].get<std::string>() != "sp_ladder")
    throw config_error("gbz supports the sp_ladder model only");
  const HoppingParams p = model_params(cfg["model"]);
  const json& n = cfg["numerics"];
  const std::string axis_name = n["axis"].get<std::string>();
  if (axis_name != "plus" && axis_name != "minus")
    throw config_error("numerics.axis must be plus or minus");
  const DiagAxis axis = axis_name == "plus" ? DiagAxis::plus : DiagAxis::minus;
  const int L = n["stripe_l"].get<int>();
  const std::string mode = n["mode"].get<std::string>();
  if (mode == "slice") {
    const GbzSlice slice =
        gbz_slice(p, n["k_fixed"].get<double>(), L, axis, n["tol"].get<double>(),
                  n["tol_cap"].get<double>(), n["min_acceptance"].get<double>());
    CsvWriter csv({"k_minus", "re_E", "im_E", "re_beta", "im_beta", "kappa"});
    for (const GbzPoint& pt : slice.points)
      for (const double phase : {pt.phase1, pt.phase2}) {
        const cd beta = std::exp(cd(pt.kappa, phase));
        csv.add_row({n["k_fixed"].get<double>(), pt.energy.real(),
                     pt.energy.imag(), beta.real(), beta.imag(), pt.kappa});
      }
    write_outputs(opt, "gbz", cfg, csv);
  } else if (mode == "field") {
    const int grid_n = n["grid_n"].get<int>();
    const Eigen::MatrixXd f = kappa_field(p, grid_n, L, axis, n["tol"].get<double>());
    CsvWriter csv({"k_plus", "k_minus", "kappa"});
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j) {
        const double open_k = -pi + 2.0 * pi * i / grid_n;
        const double fixed_k = -pi + 2.0 * pi * j / grid_n;
        const double kp = axis == DiagAxis::plus ? open_k : fixed_k;
        const double km = axis == DiagAxis::plus ? fixed_k : open_k;
        csv.add_row({kp, km, f(i, j)});
      }
    write_outputs(opt, "gbz", cfg, csv);
  } else {
    throw config_error("numerics.mode must be slice or field");
  }
  return 0;
}

int run_dynamics(const Options& opt, const json& user) {
  const json defaults = {{"model", model_defaults()},
                         {"geometry", {{"side", 40}}},
                         {"drive",
                          {{"cx", -1.0},
                           {"cy", -1.0},
                           {"sigma0", 4.5},
                           {"kx", 0.0},
                           {"ky", 0.0},
                           {"band", 0},
                           {"fx", 0.0},
                           {"fy", 0.0},
                           {"t_final", 0.0},
                           {"dt", 0.0},
                           {"max_samples", 2500}}},
                         {"output", {{"kind", "trajectory"}, {"anchor_re", 1e99}}}};
  json cfg = merge_config(defaults, user, "");
  const std::string name = cfg["model"]["name"].get<std::string>();
  const HoppingParams p = model_params(cfg["model"]);
  const int side = cfg["geometry"]["side"].get<int>();
  if (side < 4 || side > 200) throw config_error("geometry.side out of range");
  json& drive = cfg["drive"];
  const double fx = drive["fx"].get<double>(), fy = drive["fy"].get<double>();
  const double kx0 = drive["kx"].get<double>(), ky0 = drive["ky"].get<double>();

  // Resolve the numeric defaults so the manifest echoes the values in effect.
  if (drive["cx"].get<double>() < 0.0) drive["cx"] = (side - 1) / 2.0;
  if (drive["cy"].get<double>() < 0.0) drive["cy"] = (side - 1) / 2.0;
  if (drive["t_final"].get<double>() <= 0.0) drive["t_final"] = bloch_period(fx, fy);
  if (drive["dt"].get<double>() <= 0.0) drive["dt"] = default_dt(fx, fy, side);

  const auto cells = square_mask(side);
  SparseCd H;
  Eigen::VectorXcd spinor;
  double anchor = 0.0;
  if (name == "sp_ladder") {
    H = ladder_real(p, cells);
    const auto [e0, s0] = ladder_band_state(p, kx0, ky0, 0);
    const auto [e1, s1] = ladder_band_state(p, kx0, ky0, 1);
    if (std::abs(e0 - e1) < 1e-9)
      throw numeric_error("dynamics: bands degenerate at k0, selection ambiguous");
    const int band = drive["band"].get<int>();
    spinor = band == 0 ? s0 : s1;
    anchor = (band == 0 ? e0 : e1).real();
  } else if (name == "hatano_nelson") {
    H = hn2d_real(side, false);
    spinor = Eigen::VectorXcd::Ones(1);
    anchor = hn2d_bloch(kx0, ky0).real();
  } else {
    throw config_error("unknown model name: " + name);
  }
  if (cfg["output"]["anchor_re"].get<double>() < 1e98)
    anchor = cfg["output"]["anchor_re"].get<double>();
  else
    cfg["output"]["anchor_re"] = anchor;

  const double cx = drive["cx"].get<double>(), cy = drive["cy"].get<double>();
  const double sigma0 = drive["sigma0"].get<double>();
  const double clearance =
      std::min(std::min(cx, cy), std::min(side - 1 - cx, side - 1 - cy));
  if (opt.verbose && clearance < 3.0 * sigma0)
    std::fprintf(stderr,
                 "warning: boundary clearance %.1f < 3 sigma0 = %.1f; expect "
                 "boundary scattering\n",
                 clearance, 3.0 * sigma0);

  const int comps = static_cast<int>(spinor.size());
  Eigen::VectorXd rx(cells.size() * comps), ry(cells.size() * comps);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (int a = 0; a < comps; ++a) {
      rx(i * comps + a) = cells[i].x;
      ry(i * comps + a) = cells[i].y;
    }
  const Eigen::VectorXcd psi0 =
      gaussian_packet(cells, cx, cy, sigma0, kx0, ky0, spinor);
  const DriveResult run =
      evolve_packet(H, psi0, rx, ry, fx, fy, drive["t_final"].get<double>(),
                    drive["dt"].get<double>(), drive["max_samples"].get<int>());

  const std::string kind = cfg["output"]["kind"].get<std::string>();
  if (kind == "trajectory") {
    CsvWriter csv({"t", "x", "y", "log_norm", "kx", "ky"});
    for (Eigen::Index i = 0; i < run.t.size(); ++i)
      csv.add_row({run.t(i), run.x(i), run.y(i), run.ln_norm(i),
                   kx0 - fx * run.t(i), ky0 - fy * run.t(i)});
    write_outputs(opt, "dynamics", cfg, csv);
  } else if (kind == "reconstruction" || kind == "splitting") {
    const SpectrumTrace trace = reconstruct_spectrum(run, fx, fy, anchor);
    if (kind == "reconstruction") {
      CsvWriter csv({"kx", "ky", "re_E", "im_E"});
      for (Eigen::Index i = 0; i < trace.t.size(); ++i)
        csv.add_row({kx0 - fx * trace.t(i), ky0 - fy * trace.t(i), trace.re(i),
                     trace.im(i)});
      write_outputs(opt, "dynamics", cfg, csv);
    } else {
      const SplittingProfile prof = degeneracy_splitting(trace);
      CsvWriter csv({"re_E", "delta_im"});
      for (std::size_t i = 0; i < prof.re_grid.size(); ++i)
        csv.add_row({prof.re_grid[i], prof.delta_im[i]});
      write_outputs(opt, "dynamics", cfg, csv);
    }
  } else {
    throw config_error(
        "output.kind must be trajectory, reconstruction, or splitting");
  }
  return 0;
}

int run_sweep_theta(const Options& opt, const json& user) {
  const json defaults = {
      {"model", model_defaults()},
      {"numerics",
       {{"side", 40},
        {"shell_depth", 2},
        {"thetas", {0.0, pi / 16, pi / 8, 3 * pi / 16, pi / 4}}}}};
  const json cfg = merge_config(defaults, user, "");
  if (cfg["model"]["name"].get<std::string>() != "sp_ladder")
    throw config_error("sweep-theta supports the sp_ladder model only");
  const HoppingParams p = model_params(cfg["model"]);
  const int side = cfg["numerics"]["side"].get<int>();
  const int depth = cfg["numerics"]["shell_depth"].get<int>();

  CsvWriter csv({"theta", "bounding_side", "cells", "rho_bar_b",
                 "rho_bar_b_hermitian", "excess"});
  for (const auto& tj : cfg["numerics"]["thetas"]) {
    const double theta = tj.get<double>();
    const int L = rotated_bounding_side(theta, side);
    const auto cells = rotated_mask(theta, L);
    const auto shell = boundary_shell(cells, depth);
    const int ncells = static_cast<int>(cells.size());

    const EigSystem lossy = eig_dense(Eigen::MatrixXcd(ladder_real(p, cells)));
    const double rb = boundary_statistics(lossy.vectors, shell, 2).rho_bar_b;

    // Lossless reference isolates the non-Hermitian accumulation from the
    // geometric boundary share a Hermitian lattice already has.
    HoppingParams ph = p;
    ph.gamma = 0.0;
    const Eigen::MatrixXcd href(ladder_real(ph, cells));
    double rb0;
    if (href.imag().cwiseAbs().maxCoeff() == 0.0) {
      const EigSystem ref = eig_symmetric(href.real());
      rb0 = boundary_statistics(ref.vectors, shell, 2).rho_bar_b;
    } else {
      const EigSystem ref = eig_dense(href);
      rb0 = boundary_statistics(ref.vectors, shell, 2).rho_bar_b;
    }
    csv.add_row({theta, double(L), double(ncells), rb, rb0, rb - rb0});
    if (opt.verbose)
      std::fprintf(stderr, "theta=%.4f L=%d cells=%d excess=%.4f\n", theta, L,
                   ncells, rb - rb0);
  }
  write_outputs(opt, "sweep-theta", cfg, csv);
  return 0;
}

int run_wannier(const Options& opt, const json& user) {
  const json defaults = {{"model",
                          {{"vx", 1.0},
                           {"v1", 10.0},
                           {"v2", 13.0},
                           {"phi", 0.8 * pi},
                           {"gamma", 0.5}}},
                         {"numerics", {{"nwell", 3}, {"hfac", 64}}}};
  const json cfg = merge_config(defaults, user, "");
  OpticalPotentialSpec pot;
  pot.vx = cfg["model"]["vx"].get<double>();
  pot.v1 = cfg["model"]["v1"].get<double>();
  pot.v2 = cfg["model"]["v2"].get<double>();
  pot.phi = cfg["model"]["phi"].get<double>();
  if (pot.v1 < 0.0 || pot.v2 <= 0.0)
    throw config_error("wannier: requires v1 >= 0 and v2 > 0 (double well)");
  const FittedCouplings fc =
      fit_tight_binding(pot, cfg["model"]["gamma"].get<double>(),
                        cfg["numerics"]["nwell"].get<int>(),
                        cfg["numerics"]["hfac"].get<int>());
  CsvWriter csv({"ts", "tp", "tsp", "tsp_diag", "onsite_s", "onsite_p",
                 "overlap_residual"});
  csv.add_row({fc.ts_table, fc.tp_table, fc.tsp_table, fc.tsp_diag_table,
               fc.onsite_s, fc.onsite_p, fc.overlap_residual});
  write_outputs(opt, "wannier", cfg, csv);
  return 0;
}

int run_check(const Options& opt, const json& user) {
  const json defaults = {{"model", model_defaults()}};
  const json cfg = merge_config(defaults, user, "");
  const HoppingParams p = model_params(cfg["model"]);
  std::vector<std::pair<std::string, double>> report;

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uk(-pi, pi);
  std::vector<std::pair<double, double>> ks;
  for (int i = 0; i < 1000; ++i) ks.push_back({uk(rng), uk(rng)});
  const SymmetryResiduals sr = symmetry_residuals(p, ks);
  report.emplace_back("mirror_residual", sr.mirror);
  report.emplace_back("transpose_mirror_residual", sr.transpose_mirror);

  double poly_err = 0.0;
  std::uniform_real_distribution<double> ue(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const cd b = std::exp(cd(0.0, uk(rng)));
    const cd e(ue(rng), ue(rng));
    const auto f1 = char_poly(p, b, e);
    const auto f2 = char_poly_expanded(p, b, e);
    for (int j = 0; j < 7; ++j)
      poly_err = std::max(poly_err, std::abs(f1[j] - f2[j]));
  }
  report.emplace_back("char_poly_residual", poly_err);

  const auto chain = ladder_real(p, square_mask(4));
  const Eigen::MatrixXcd hd(chain);
  const EigSystem eig = eig_dense(hd);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    worst = std::max(worst, (hd * eig.vectors.col(i) -
                             eig.values(i) * eig.vectors.col(i))
                                .norm() /
                                hd.norm());
  report.emplace_back("eigensolver_residual", worst);

  const int ncal = 64;
  Eigen::VectorXcd uniform = Eigen::VectorXcd::Zero(ncal);
  for (int i = 0; i < ncal; ++i) uniform(i) = 1.0 / std::sqrt(double(ncal));
  Eigen::VectorXcd partial = Eigen::VectorXcd::Zero(ncal);
  for (int i = 0; i < 8; ++i) partial(i) = 1.0 / std::sqrt(8.0);
  Eigen::VectorXcd point = Eigen::VectorXcd::Zero(ncal);
  point(0) = 1.0;
  report.emplace_back("fd_uniform_error",
                      std::abs(fractal_dimension(uniform, ncal, 1) - 2.0));
  report.emplace_back("fd_sqrt_error",
                      std::abs(fractal_dimension(partial, ncal, 1) - 1.0));
  report.emplace_back("fd_point_error",
                      std::abs(fractal_dimension(point, ncal, 1)));

  bool ok = poly_err < 1e-12 && worst < 1e-9;
  for (const auto& [nm, v] : report)
    if (nm.rfind("fd_", 0) == 0 && v > 1e-9) ok = false;

  // The CSV writer is numeric, so rows carry an index into the check-name
  // list echoed by the manifest.
  CsvWriter csv({"check_index", "value"});
  json names = json::array();
  for (std::size_t i = 0; i < report.size(); ++i) {
    csv.add_row({double(i), report[i].second});
    names.push_back(report[i].first);
  }
  json cfg2 = cfg;
  cfg2["checks"] = names;
  write_outputs(opt, "check", cfg2, csv);
  for (const auto& [nm, v] : report)
    std::printf("%-28s %.3e\n", nm.c_str(), v);
  if (!ok) throw numeric_error("check: invariant suite failed");
  std::printf("check: all invariants hold\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice laboratory front end"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--threads", opt.threads, "worker threads");
  app.add_option("--seed", opt.seed, "reserved; echoed in the manifest");
  app.add_flag("--verbose", opt.verbose, "progress to stderr");

  int (*runner)(const Options&, const json&) = nullptr;
  for (const auto& [name, fn] :
       std::initializer_list<std::pair<const char*, int (*)(const Options&, const json&)>>{
           {"spectrum", run_spectrum},
           {"density", run_density},
           {"gbz", run_gbz},
           {"dynamics", run_dynamics},
           {"sweep-theta", run_sweep_theta},
           {"wannier", run_wannier},
           {"check", run_check}}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&runner, fn] { runner = fn; });
  }

  CLI11_PARSE(app, argc, argv);
  Eigen::setNbThreads(opt.threads);

  const auto fail = [&](const std::string& kind, const std::string& msg,
                        int code) {
    for (const fs::path& f : g_written) {
      std::error_code ec;
      fs::remove(f, ec);
    }
    const json err = {{"error", kind}, {"message", msg}, {"exit", code}};
    std::printf("%s\n", err.dump().c_str());
    return code;
  };

  try {
    return runner(opt, load_user_config(opt.config_path));
  } catch (const config_error& e) {
    return fail("config", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what(), 2);
  } catch (const resource_error& e) {
    return fail("resource", e.what(), 4);
  } catch (const std::bad_alloc&) {
    return fail("resource", "out of memory", 4);
  } catch (const numeric_error& e) {
    return fail("numeric", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("numeric", e.what(), 3);
  }
}
