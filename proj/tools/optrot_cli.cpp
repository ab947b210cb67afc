// optrot: polarization-rotation pulses in magneto-optic media and the
// filter-design maps, driven by scenario files or bundled figure presets.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "optrot/atomic.hpp"
#include "optrot/constants.hpp"
#include "optrot/csv.hpp"
#include "optrot/errors.hpp"
#include "optrot/filter_design.hpp"
#include "optrot/interface.hpp"
#include "optrot/observables.hpp"
#include "optrot/scenario.hpp"

namespace fs = std::filesystem;
using namespace optrot;
using constants::c;

namespace {

struct CommonOpts {
  std::string preset;
  std::string config_path;
  std::string out_dir = ".";
  int threads = 2;
  double tolerance = 1e-6;
};

ScenarioConfig load_config(const CommonOpts& opts) {
  if (!opts.preset.empty() && !opts.config_path.empty())
    throw ValidationError("give either --preset or --config, not both");
  if (!opts.preset.empty()) return load_preset(opts.preset);
  if (opts.config_path.empty())
    throw ValidationError("one of --preset or --config is required");
  std::ifstream in(opts.config_path);
  if (!in) throw ValidationError("cannot read " + opts.config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

QuadratureConfig quad_config(const CommonOpts& opts) {
  QuadratureConfig q;
  q.rel_tol = opts.tolerance;
  return q;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / name).string();
}

struct PulseSetup {
  PulseSpec spec;
  HarmonicFamily family;
  double omega;
};

PulseSetup pulse_setup(const ScenarioConfig& cfg) {
  PulseSetup s{cfg.pulse(), {}, 0.0};
  s.omega = s.spec.omega0();
  s.family = HarmonicFamily::from_susceptibility(cfg.tensor(), s.omega);
  return s;
}

FieldGridRequest grid_request(const ScenarioConfig& cfg, const PulseSetup& s,
                              bool medium_only) {
  if (!cfg.t_min_fs || !cfg.t_max_fs || !cfg.dt_fs)
    throw ValidationError("t_min_fs/t_max_fs/dt_fs: required for this command");
  FieldGridRequest req;
  req.t_min = *cfg.t_min_fs * 1e-15;
  req.t_max = *cfg.t_max_fs * 1e-15;
  req.dt = *cfg.dt_fs * 1e-15;
  const double travel = c * req.t_max + 7.0 * s.spec.sigma_z;
  req.z_min = cfg.z_min_um ? *cfg.z_min_um * 1e-6
                           : (medium_only ? 0.0
                                          : s.spec.z0 - 7.0 * s.spec.sigma_z);
  req.z_max = cfg.z_max_um ? *cfg.z_max_um * 1e-6 : travel;
  req.dz = cfg.dz_um
               ? *cfg.dz_um * 1e-6
               : std::min(s.spec.sigma_z,
                          s.family.rotation_length(s.spec.k0)) /
                     20.0;
  return req;
}

void meta_pulse(CsvWriter& csv, const ScenarioConfig& cfg) {
  if (!cfg.preset_name.empty()) csv.meta("preset", cfg.preset_name);
  csv.meta("chi11", format_complex(cfg.chi11));
  csv.meta("chi12", format_complex(cfg.chi12));
  csv.meta("lambda0_um", *cfg.lambda0_um);
  csv.meta("sigma_t_fs", *cfg.sigma_t_fs);
  csv.meta("z0_um", *cfg.z0_um);
}

void write_trace(const std::string& path, const ScenarioConfig& cfg,
                 const IntensityTrace& trace) {
  CsvWriter csv(path, "integrated polarization intensities vs time");
  meta_pulse(csv, cfg);
  csv.columns({"t_fs", "I1", "I2", "Iplus", "Iminus"});
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    csv.field(trace.t[i] * 1e15);
    csv.field(trace.I1[i]);
    csv.field(trace.I2[i]);
    csv.field(trace.Iplus[i]);
    csv.field(trace.Iminus[i]);
    csv.end_row();
  }
}

int cmd_modes(cdouble chi11, cdouble chi12, double lambda0_um) {
  const double omega = 2.0 * constants::pi * c / (lambda0_um * 1e-6);
  const auto modes = faraday_modes(chi11, chi12, omega);
  std::printf("n_plus  = %.7f %+.7fi%s\n", modes.plus.n.real(),
              modes.plus.n.imag(), modes.plus.evanescent ? "  (evanescent)" : "");
  std::printf("n_minus = %.7f %+.7fi%s\n", modes.minus.n.real(),
              modes.minus.n.imag(),
              modes.minus.evanescent ? "  (evanescent)" : "");
  if (!modes.degenerate) {
    std::printf("r_plus  = %s\n", format_complex(modes.r_plus()).c_str());
    std::printf("r_minus = %s\n", format_complex(modes.r_minus()).c_str());
  } else {
    std::printf("degenerate modes; linear basis [1,0],[0,1]\n");
  }
  if (modes.minus.evanescent)
    std::printf("penetration_length_nm = %.4f\n",
                penetration_length(modes) * 1e9);
  return 0;
}

int cmd_interface(cdouble chi11, cdouble chi12, double lambda0_um) {
  const double omega = 2.0 * constants::pi * c / (lambda0_um * 1e-6);
  const auto modes = faraday_modes(chi11, chi12, omega);
  const auto sol = match_interface(omega / c, modes);
  std::printf("R11 = %s  |R11|^2 = %.10f\n", format_complex(sol.R11).c_str(),
              std::norm(sol.R11));
  std::printf("R21 = %s  |R21|^2 = %.10f\n", format_complex(sol.R21).c_str(),
              std::norm(sol.R21));
  std::printf("C+  = %s  |C+|^2  = %.10f\n",
              format_complex(sol.C_plus).c_str(), std::norm(sol.C_plus));
  std::printf("C-  = %s  |C-|^2  = %.10f\n",
              format_complex(sol.C_minus).c_str(), std::norm(sol.C_minus));
  std::printf("flux_transmittance  = %.10f\n", flux_transmittance(sol));
  if (sol.evanescent_minus) {
    std::printf("surviving_mode_transmittance = %.10f\n", surviving_mode_transmittance(sol));
    std::printf("penetration_length_nm = %.4f\n",
                penetration_length(modes) * 1e9);
  }
  return 0;
}

int cmd_intensities(const CommonOpts& opts, const ScenarioConfig& cfg,
                    const std::string& name) {
  const auto setup = pulse_setup(cfg);
  const auto req = grid_request(cfg, setup, true);
  const auto grid = synthesize_field(setup.spec, setup.family, req,
                                     quad_config(opts), opts.threads);
  const auto trace = integrated_intensities(grid);
  write_trace(out_path(opts, name), cfg, trace);
  return 0;
}

int cmd_propagate(const CommonOpts& opts, const ScenarioConfig& cfg) {
  const auto setup = pulse_setup(cfg);
  const auto req = grid_request(cfg, setup, false);
  const auto grid = synthesize_field(setup.spec, setup.family, req,
                                     quad_config(opts), opts.threads);
  CsvWriter csv(out_path(opts, "field_grid.csv"), "complex field samples");
  meta_pulse(csv, cfg);
  csv.columns({"t_fs", "z_um", "re_Ex", "im_Ex", "re_Ey", "im_Ey"});
  for (std::size_t it = 0; it < grid.nt(); ++it)
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
      const auto s = grid.sample(it, iz);
      csv.field(s.t * 1e15);
      csv.field(s.z * 1e6);
      csv.field(s.Ex.real());
      csv.field(s.Ex.imag());
      csv.field(s.Ey.real());
      csv.field(s.Ey.imag());
      csv.end_row();
    }
  return 0;
}

void write_position_traces(const CommonOpts& opts, const ScenarioConfig& cfg,
                           const std::string& name) {
  const auto setup = pulse_setup(cfg);
  if (cfg.positions_um.empty())
    throw ValidationError("positions_um: required for position traces");
  if (!cfg.t_min_fs || !cfg.t_max_fs || !cfg.dt_fs)
    throw ValidationError("t grid: required for position traces");

  std::vector<SpaceTimePoint> pts;
  std::vector<double> ts;
  for (double t = *cfg.t_min_fs; t <= *cfg.t_max_fs + 1e-9;
       t += *cfg.dt_fs)
    ts.push_back(t * 1e-15);
  for (double zp : cfg.positions_um)
    for (double t : ts) pts.push_back({zp * 1e-6, t});
  const auto samples = synthesize_points(setup.spec, setup.family, pts,
                                         quad_config(opts), opts.threads);

  CsvWriter csv(out_path(opts, name), "polarization intensities at fixed positions");
  meta_pulse(csv, cfg);
  csv.columns({"z_um", "t_fs", "I1", "I2", "Iplus", "Iminus"});
  for (const auto& s : samples) {
    const auto [ep, em] = circular_components(s.Ex, s.Ey);
    csv.field(s.z * 1e6);
    csv.field(s.t * 1e15);
    csv.field(std::norm(s.Ex));
    csv.field(std::norm(s.Ey));
    csv.field(std::norm(ep));
    csv.field(std::norm(em));
    csv.end_row();
  }
}

void write_snapshots(const CommonOpts& opts, const ScenarioConfig& cfg,
                     const std::string& name) {
  const auto setup = pulse_setup(cfg);
  if (cfg.snapshot_times_fs.size() < 2)
    throw ValidationError("snapshot_times_fs: need at least two times");
  // snapshot times are uniformly spaced in the presets; synthesize exactly
  // on them
  const double t0 = cfg.snapshot_times_fs.front();
  const double dt = cfg.snapshot_times_fs[1] - cfg.snapshot_times_fs[0];
  FieldGridRequest req;
  req.t_min = t0 * 1e-15;
  req.t_max = cfg.snapshot_times_fs.back() * 1e-15;
  req.dt = dt * 1e-15;
  req.z_min = 0.0;
  req.z_max = cfg.z_max_um ? *cfg.z_max_um * 1e-6
                           : c * req.t_max + 7.0 * setup.spec.sigma_z;
  req.dz = cfg.dz_um ? *cfg.dz_um * 1e-6
                     : std::min(setup.spec.sigma_z,
                                setup.family.rotation_length(setup.spec.k0)) /
                           20.0;
  const auto grid = synthesize_field(setup.spec, setup.family, req,
                                     quad_config(opts), opts.threads);
  std::vector<double> times;
  for (double t : cfg.snapshot_times_fs) times.push_back(t * 1e-15);
  const auto snaps = snapshots(grid, times);

  CsvWriter csv(out_path(opts, name), "pulse snapshots at fixed times");
  meta_pulse(csv, cfg);
  csv.columns({"t_fs", "z_um", "I1", "I2", "Iplus", "Iminus"});
  for (const auto& sn : snaps)
    for (std::size_t iz = 0; iz < sn.z.size(); ++iz) {
      csv.field(sn.t * 1e15);
      csv.field(sn.z[iz] * 1e6);
      csv.field(sn.I1[iz]);
      csv.field(sn.I2[iz]);
      csv.field(sn.Iplus[iz]);
      csv.field(sn.Iminus[iz]);
      csv.end_row();
    }
}

int cmd_filter_map(const CommonOpts& opts, const ScenarioConfig& cfg) {
  const auto med = cfg.lorentz_medium();
  if (!cfg.map_omega_min || !cfg.map_omega_max || cfg.map_omega_n < 2 ||
      !cfg.map_wcz_min || !cfg.map_wcz_max || cfg.map_wcz_n < 2)
    throw ValidationError("map_*: full map grid required");
  const auto map =
      region_map(med, *cfg.map_omega_min, *cfg.map_omega_max, cfg.map_omega_n,
                 *cfg.map_wcz_min, *cfg.map_wcz_max, cfg.map_wcz_n);

  {
    CsvWriter csv(out_path(opts, "region_map.csv"),
                  "evanescence regions over (omega, omega_cz)");
    csv.meta("omega_p_ratio", med.omega_p);
    csv.meta("omega_S", map.crossings.omega_S);
    csv.meta("omega_0p", map.crossings.omega_0p);
    csv.columns({"omega_ratio", "wcz_ratio", "region", "subregion",
                 "r_plus", "ecc_plus", "ecc_minus", "penetration",
                 "transmittance"});
    for (const auto& cell : map.cells) {
      csv.field(cell.omega);
      csv.field(cell.omega_cz);
      csv.field(std::string(to_string(cell.region)));
      csv.field(cell.subregion);
      csv.field(cell.r_plus);
      csv.field(cell.ecc_plus);
      csv.field(cell.ecc_minus);
      csv.field(cell.penetration);
      csv.field(cell.transmittance);
      csv.end_row();
    }
  }
  {
    CsvWriter csv(out_path(opts, "boundary_curves.csv"),
                  "signed evanescence boundary curves");
    csv.meta("omega_p_ratio", med.omega_p);
    csv.columns({"omega_ratio", "w1cz", "w2cz", "w3cz", "w4cz"});
    for (double w : map.omega) {
      const auto bc = boundary_curves(med, w);
      csv.field(w);
      csv.field(bc.w1cz);
      csv.field(bc.w2cz);
      csv.field(bc.w3cz);
      csv.field(bc.w4cz);
      csv.end_row();
    }
  }
  return 0;
}

int cmd_eccentricity(const CommonOpts& opts, const ScenarioConfig& cfg,
                     const std::string& name) {
  auto med = cfg.lorentz_medium();
  if (!cfg.omega_ratio) throw ValidationError("omega_ratio: required");
  if (!cfg.scan_wcx_min || !cfg.scan_wcx_max || cfg.scan_wcx_n < 2)
    throw ValidationError("scan_wcx_*: scan range required");
  const auto pts = eccentricity_scan(med, *cfg.omega_ratio, *cfg.scan_wcx_min,
                                     *cfg.scan_wcx_max, cfg.scan_wcx_n);
  CsvWriter csv(out_path(opts, name), "mode eccentricities along a wcx sweep");
  csv.meta("omega_ratio", *cfg.omega_ratio);
  csv.meta("omega_p_ratio", med.omega_p);
  csv.meta("omega_cz_ratio", med.omega_c[2]);
  csv.columns({"wcx_ratio", "ecc_plus", "ecc_minus", "im_r_plus",
               "im_r_minus"});
  for (const auto& p : pts) {
    csv.field(p.omega_cx);
    csv.field(p.plus.eccentricity);
    csv.field(p.minus.eccentricity);
    csv.field(p.r_plus.imag());
    csv.field(p.r_minus.imag());
    csv.end_row();
  }
  return 0;
}

void scan_wcz_curve(const CommonOpts& opts, const ScenarioConfig& cfg,
                    const std::string& name, bool transmittance) {
  const auto med = cfg.lorentz_medium();
  if (!cfg.omega_ratio) throw ValidationError("omega_ratio: required");
  if (!cfg.scan_wcz_min || !cfg.scan_wcz_max || cfg.scan_wcz_n < 2)
    throw ValidationError("scan_wcz_*: scan range required");
  const double omega = *cfg.omega_ratio;

  CsvWriter csv(out_path(opts, name),
                transmittance ? "surviving-mode transmittance vs omega_cz"
                              : "dimensionless penetration length vs omega_cz");
  csv.meta("omega_ratio", omega);
  csv.meta("omega_p_ratio", med.omega_p);
  csv.columns({"wcz_ratio", transmittance ? "transmittance" : "penetration"});
  for (int i = 0; i < cfg.scan_wcz_n; ++i) {
    const double wcz = *cfg.scan_wcz_min +
                       (*cfg.scan_wcz_max - *cfg.scan_wcz_min) * i /
                           (cfg.scan_wcz_n - 1);
    LorentzMedium axial = med;
    axial.omega_c = {0.0, 0.0, wcz};
    const auto chi = lorentz_susceptibility(axial, omega);
    const auto modes = propagation_modes(chi, omega);
    csv.field(wcz);
    if (!modes.minus.evanescent) {
      csv.field(std::numeric_limits<double>::quiet_NaN());
    } else if (transmittance) {
      csv.field(surviving_mode_transmittance(match_interface(omega / c, modes)));
    } else {
      csv.field(med.omega0 / (c * modes.minus.k.imag()));
    }
    csv.end_row();
  }
}

int cmd_atomic(double delta, cdouble Omega) {
  const auto s = AtomScenario::cesium_preset(Omega, delta);
  std::printf("Omega_prime = %.10e rad/s\n", s.omega_prime());
  std::printf("rabi_period = %.10e s\n",
              2.0 * constants::pi / s.omega_prime());
  const auto w = atomic_wavenumbers(s);
  std::printf("k_plus  = %s 1/m%s\n", format_complex(w.k_plus).c_str(),
              w.evanescent_plus ? "  (evanescent)" : "");
  std::printf("k_minus = %s 1/m%s\n", format_complex(w.k_minus).c_str(),
              w.evanescent_minus ? "  (evanescent)" : "");
  std::printf("rabi_wavelength = %.10e m\n", rabi_wavelength(s));
  if (Omega != cdouble(0.0, 0.0)) {
    const auto e = eigenpairs(s);
    std::printf("lambda_plus  = %.10e rad/s\n", e.lambda_plus);
    std::printf("lambda_minus = %.10e rad/s\n", e.lambda_minus);
  }
  return 0;
}

int cmd_figure(int n, const CommonOpts& base) {
  CommonOpts opts = base;
  char buf[32];
  std::snprintf(buf, sizeof buf, "fig%d", n);
  const std::string tag = buf;
  ScenarioConfig cfg = load_preset(tag);

  switch (n) {
    case 1:
      return cmd_intensities(opts, cfg, "fig1_intensities.csv");
    case 2:
      write_position_traces(opts, cfg, "fig2_positions.csv");
      {
        auto snap_cfg = cfg;
        snap_cfg.z_max_um = 6200.0;
        write_snapshots(opts, snap_cfg, "fig2_snapshots.csv");
      }
      return 0;
    case 3:
      for (double sig : {100.0, 200.0, 600.0}) {
        auto run = cfg;
        run.sigma_t_fs = sig;
        std::snprintf(buf, sizeof buf, "fig3_sigma%d.csv",
                      static_cast<int>(sig));
        cmd_intensities(opts, run, buf);
      }
      return 0;
    case 4:
      return cmd_intensities(opts, cfg, "fig4_intensities.csv");
    case 5:
      write_position_traces(opts, cfg, "fig5_positions.csv");
      return 0;
    case 6: {
      cmd_intensities(opts, cfg, "fig6_intensities.csv");
      auto near = cfg;
      near.z_min_um = 0.0;
      near.z_max_um = 3.0;
      near.dz_um = 0.01;
      near.t_min_fs = 1900.0;
      near.t_max_fs = 2300.0;
      near.dt_fs = 100.0;
      const auto setup = pulse_setup(near);
      const auto req = grid_request(near, setup, true);
      const auto grid = synthesize_field(setup.spec, setup.family, req,
                                         quad_config(opts), opts.threads);
      CsvWriter csv(out_path(opts, "fig6_nearfield.csv"),
                    "near-interface intensities in the filtering regime");
      meta_pulse(csv, near);
      csv.columns({"t_fs", "z_um", "I1", "I2", "Iplus", "Iminus"});
      for (std::size_t it = 0; it < grid.nt(); ++it)
        for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
          const auto s = grid.sample(it, iz);
          const auto [ep, em] = circular_components(s.Ex, s.Ey);
          csv.field(s.t * 1e15);
          csv.field(s.z * 1e6);
          csv.field(std::norm(s.Ex));
          csv.field(std::norm(s.Ey));
          csv.field(std::norm(ep));
          csv.field(std::norm(em));
          csv.end_row();
        }
      return 0;
    }
    case 7:
      return cmd_eccentricity(opts, cfg, "fig7_eccentricity.csv");
    case 8:
      return cmd_filter_map(opts, cfg);
    case 9:
      scan_wcz_curve(opts, cfg, "fig9_penetration.csv", false);
      return 0;
    case 10:
      scan_wcz_curve(opts, cfg, "fig10_transmittance.csv", true);
      return 0;
    default:
      throw ValidationError("figure number must be 1..10");
  }
}

void add_common(CLI::App* sub, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    sub->add_option("--preset", opts.preset, "bundled preset name (fig1..fig10)");
    sub->add_option("--config", opts.config_path, "scenario file path");
  }
  sub->add_option("--out", opts.out_dir, "output directory");
  sub->add_option("--threads", opts.threads, "worker threads (results identical)");
  sub->add_option("--tolerance", opts.tolerance,
                  "quadrature node-doubling tolerance");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarization rotation and magneto-optic filtering toolkit"};
  app.require_subcommand(1);

  std::string chi11_s = "0", chi12_s = "0", omega_s = "0";
  double lambda0_um = 0.5;
  double delta = 0.0;
  int figure_n = 0;
  CommonOpts opts;

  auto* modes = app.add_subcommand("modes", "propagation constants of a Faraday medium");
  modes->add_option("--chi11", chi11_s, "complex chi11, e.g. 0.1 or 1+2i");
  modes->add_option("--chi12", chi12_s, "complex chi12, e.g. 0.0002i")->required();
  modes->add_option("--lambda0-um", lambda0_um, "vacuum wavelength (um)");

  auto* iface = app.add_subcommand("interface", "vacuum/medium matching amplitudes");
  iface->add_option("--chi11", chi11_s, "complex chi11");
  iface->add_option("--chi12", chi12_s, "complex chi12")->required();
  iface->add_option("--lambda0-um", lambda0_um, "vacuum wavelength (um)");

  auto* prop = app.add_subcommand("propagate", "synthesize the full field grid");
  add_common(prop, opts);
  auto* inten = app.add_subcommand("intensities", "integrated intensity trace");
  add_common(inten, opts);
  auto* fmap = app.add_subcommand("filter-map", "evanescence region map");
  add_common(fmap, opts);
  auto* ecc = app.add_subcommand("eccentricity-scan", "mode eccentricity sweep");
  add_common(ecc, opts);

  auto* atom = app.add_subcommand("atomic", "two-level-atom closed forms");
  atom->add_option("--delta", delta, "detuning (rad/s)");
  atom->add_option("--omega", omega_s, "complex Rabi frequency (rad/s)")->required();

  auto* fig = app.add_subcommand("figure", "emit a bundled figure artifact set");
  fig->add_option("n", figure_n, "figure number 1..10")->required();
  add_common(fig, opts, false);

  auto* pres = app.add_subcommand("presets", "list bundled presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*modes) return cmd_modes(parse_complex(chi11_s), parse_complex(chi12_s), lambda0_um);
    if (*iface) return cmd_interface(parse_complex(chi11_s), parse_complex(chi12_s), lambda0_um);
    if (*prop) return cmd_propagate(opts, load_config(opts));
    if (*inten) return cmd_intensities(opts, load_config(opts), "intensities.csv");
    if (*fmap) return cmd_filter_map(opts, load_config(opts));
    if (*ecc) return cmd_eccentricity(opts, load_config(opts), "eccentricity.csv");
    if (*atom) return cmd_atomic(delta, parse_complex(omega_s));
    if (*fig) return cmd_figure(figure_n, opts);
    if (*pres) {
      for (const auto& name : preset_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
