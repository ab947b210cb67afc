#include "optrot/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"
#include "optrot/parallel.hpp"

namespace optrot {

using constants::c;
using constants::pi;

double PulseSpec::sigma_t() const { return sigma_z / c; }
double PulseSpec::omega0() const { return c * k0; }

PulseSpec PulseSpec::from_wavelength(double lambda0, double sigma_t, double z0) {
  PulseSpec s;
  s.k0 = 2.0 * pi / lambda0;
  s.sigma_z = c * sigma_t;
  s.z0 = z0;
  s.validate();
  return s;
}

void PulseSpec::validate() const {
  if (!(k0 > 0.0) || !(sigma_z > 0.0))
    throw std::invalid_argument("PulseSpec: k0 and sigma_z must be positive");
  if (!(z0 < 0.0))
    throw std::invalid_argument("PulseSpec: z0 must be negative");
  if (sigma_k() / k0 > 0.2)
    throw std::invalid_argument("PulseSpec: pulse is not quasi-monochromatic");
}

cdouble spectral_amplitude(const PulseSpec& spec, double k) {
  const double d = k - spec.k0;
  const double mag = std::sqrt(spec.sigma_z) * std::pow(2.0 / pi, 0.25) *
                     std::exp(-d * d * spec.sigma_z * spec.sigma_z);
  return mag * std::exp(cdouble(0.0, -k * spec.z0));
}

HarmonicFamily HarmonicFamily::vacuum() { return {}; }

HarmonicFamily HarmonicFamily::from_susceptibility(
    const SusceptibilityTensor& chi, double omega0) {
  const auto structure = validate_structure(chi, 1e-10);
  if (structure != TensorStructure::isotropic &&
      structure != TensorStructure::faraday)
    throw std::invalid_argument(
        "HarmonicFamily: pulse synthesis needs an isotropic or Faraday tensor");

  const PropagationModes modes = propagation_modes(chi, omega0);
  const InterfaceSolution sol = match_interface(omega0 / c, modes);

  HarmonicFamily fam;
  fam.n_plus = sol.n_plus();
  fam.n_minus = sol.n_minus();
  fam.ey_plus = sol.ey_plus;
  fam.ey_minus = sol.ey_minus;
  fam.R11 = sol.R11;
  fam.R21 = sol.R21;
  fam.C_plus = sol.C_plus;
  fam.C_minus = sol.C_minus;
  fam.evanescent_plus = sol.evanescent_plus;
  fam.evanescent_minus = sol.evanescent_minus;
  return fam;
}

InterfaceSolution HarmonicFamily::interface_at(double k) const {
  InterfaceSolution sol;
  sol.k = k;
  sol.k_plus = k * n_plus;
  sol.k_minus = k * n_minus;
  sol.ey_plus = ey_plus;
  sol.ey_minus = ey_minus;
  sol.R11 = R11;
  sol.R21 = R21;
  sol.C_plus = C_plus;
  sol.C_minus = C_minus;
  sol.evanescent_plus = evanescent_plus;
  sol.evanescent_minus = evanescent_minus;
  return sol;
}

double HarmonicFamily::rotation_length(double k0) const {
  const double beat = std::abs(k0 * (n_plus.real() - n_minus.real()));
  if (evanescent_minus || evanescent_plus || beat == 0.0)
    return std::numeric_limits<double>::infinity();
  return 2.0 * pi / beat;
}

std::pair<cdouble, cdouble> harmonic_profile(const InterfaceSolution& sol,
                                             double z) {
  const cdouble i(0.0, 1.0);
  if (z < 0.0) {
    const cdouble fwd = std::exp(i * sol.k * z);
    const cdouble bwd = std::exp(-i * sol.k * z);
    return {fwd + sol.R11 * bwd, sol.R21 * bwd};
  }
  const cdouble ep = sol.C_plus * std::exp(i * sol.k_plus * z);
  const cdouble em = sol.C_minus * std::exp(i * sol.k_minus * z);
  return {ep + em, sol.ey_plus * ep + sol.ey_minus * em};
}

std::pair<cdouble, cdouble> circular_components(cdouble Ex, cdouble Ey) {
  const cdouble i(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {(Ex + i * Ey) * inv_sqrt2, (Ex - i * Ey) * inv_sqrt2};
}

namespace {

/// Nodes/weights of n-point Gauss-Legendre on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double xi = std::cos(pi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
      }
      const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
      const double dx = p0 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // recompute derivative at the converged node
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
    }
    const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
    x[i] = -xi;
    x[n - 1 - i] = xi;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

struct NodeSet {
  std::vector<double> k;    // ascending
  std::vector<double> coef; // w_j |A(k_j)| / sqrt(2 pi), z0 phase folded out
};

NodeSet build_nodes(const PulseSpec& spec, const QuadratureConfig& quad,
                    int panels) {
  const double W = quad.band_sigmas * spec.sigma_k();
  const double klo = spec.k0 - W;
  const double khi = spec.k0 + W;

  std::vector<double> gx, gw;
  gauss_legendre(quad.panel_order, gx, gw);

  NodeSet ns;
  ns.k.reserve(static_cast<std::size_t>(panels) * quad.panel_order);
  ns.coef.reserve(ns.k.capacity());
  const double h = (khi - klo) / panels;
  const double amp0 = std::sqrt(spec.sigma_z) * std::pow(2.0 / pi, 0.25) /
                      std::sqrt(2.0 * pi);
  for (int p = 0; p < panels; ++p) {
    const double a = klo + p * h;
    const double mid = a + 0.5 * h;
    for (int j = 0; j < quad.panel_order; ++j) {
      const double kj = mid + 0.5 * h * gx[j];
      const double d = (kj - spec.k0) * spec.sigma_z;
      ns.k.push_back(kj);
      ns.coef.push_back(0.5 * h * gw[j] * amp0 * std::exp(-d * d));
    }
  }
  return ns;
}

/// Accumulates sum_j coef_j e^{i k_j (a z + b)} into buf[0..len) for
/// z = z_start + m dz, via one complex multiply per node and grid point.
/// The e^{-i k z0} factor of A(k) is folded into b by the caller.
void accumulate_plane_waves(const NodeSet& ns, cdouble slope_a, double z_start,
                            double dz, double offset_b, cdouble scale,
                            cdouble* buf_x, cdouble* buf_y, cdouble pol_x,
                            cdouble pol_y, std::size_t len) {
  if (len == 0) return;
  const cdouble i(0.0, 1.0);
  const cdouble u0 = slope_a * z_start + offset_b;
  const cdouble du = slope_a * dz;
  const std::size_t nj = ns.k.size();
  std::vector<cdouble> acc(len, cdouble(0.0, 0.0));
  for (std::size_t j = 0; j < nj; ++j) {
    const double kj = ns.k[j];
    cdouble cur = ns.coef[j] * std::exp(i * (kj * u0));
    const cdouble step = std::exp(i * (kj * du));

    std::size_t m_cut = len;
    const double decay = std::abs(step);
    if (decay < 1.0) {
      const double mag0 = std::abs(cur);
      if (mag0 == 0.0) continue;
      // stop once the contribution underflows
      const double steps = (-745.0 - std::log(mag0)) / std::log(decay);
      if (steps < static_cast<double>(len))
        m_cut = static_cast<std::size_t>(std::max(0.0, steps)) + 1;
    }
    for (std::size_t m = 0; m < m_cut; ++m) {
      acc[m] += cur;
      cur *= step;
    }
  }
  for (std::size_t m = 0; m < len; ++m) {
    const cdouble s = scale * acc[m];
    buf_x[m] += pol_x * s;
    buf_y[m] += pol_y * s;
  }
}

std::vector<double> uniform_axis(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo)
    throw std::invalid_argument("grid axis: bad range or step");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
  return v;
}

/// Fastest propagation speed of the family in units of c (phase fronts of
/// evanescent branches carry no energy and are excluded).
double fastest_index_inverse(const HarmonicFamily& fam) {
  double min_n = 1.0;
  for (cdouble n : {fam.n_plus, fam.n_minus})
    if (n.real() > 0.01) min_n = std::min(min_n, n.real());
  return 1.0 / min_n;
}

int panels_for_row(const PulseSpec& spec, const HarmonicFamily& fam,
                   double z_lo, double z_hi, double t,
                   const QuadratureConfig& quad) {
  double u_max = 0.0;
  const double zmag = std::max(std::abs(z_lo), std::abs(z_hi));
  for (cdouble a : {cdouble(1.0), cdouble(-1.0), fam.n_plus, fam.n_minus})
    for (double z : {z_lo, z_hi})
      u_max = std::max(u_max, std::abs(a.real() * z - c * t) +
                                  std::abs(a.imag()) * zmag);
  u_max += std::abs(spec.z0) + 8.0 * spec.sigma_z;
  const double cycles =
      2.0 * quad.band_sigmas * spec.sigma_k() * u_max / (2.0 * pi);
  return std::max(quad.min_panels,
                  static_cast<int>(std::min(std::ceil(cycles / 0.75), 1e7)));
}

FieldGrid synthesize_once(const PulseSpec& spec, const HarmonicFamily& fam,
                          const FieldGridRequest& req,
                          const QuadratureConfig& quad, int panel_scale,
                          int threads, int& max_base_panels) {
  FieldGrid grid;
  grid.z = uniform_axis(req.z_min, req.z_max, req.dz);
  grid.t = uniform_axis(req.t_min, req.t_max, req.dt);
  const std::size_t nz = grid.nz(), nt = grid.nt();
  grid.Ex.assign(nz * nt, cdouble(0.0, 0.0));
  grid.Ey.assign(nz * nt, cdouble(0.0, 0.0));

  // First index with z >= 0 splits the vacuum and medium sections.
  std::size_t iz_med = 0;
  while (iz_med < nz && grid.z[iz_med] < 0.0) ++iz_med;

  const double inv_n = fastest_index_inverse(fam);
  std::vector<int> base(nt, 0);
  for (std::size_t it = 0; it < nt; ++it) {
    // causal truncation: the medium field vanishes beyond the pulse front
    const double front =
        std::max(0.0, c * grid.t[it] + spec.z0 + 10.0 * spec.sigma_z) * inv_n;
    const double z_hi = std::min(req.z_max, front);
    base[it] = panels_for_row(spec, fam, req.z_min, z_hi, grid.t[it], quad);
  }
  max_base_panels = *std::max_element(base.begin(), base.end());

  parallel_for_index(nt, threads, [&](std::size_t it) {
    const double b = -c * grid.t[it] - spec.z0;
    cdouble* Ex = grid.Ex.data() + it * nz;
    cdouble* Ey = grid.Ey.data() + it * nz;
    const NodeSet ns = build_nodes(spec, quad, base[it] * panel_scale);
    if (iz_med > 0) {
      // z < 0: incident (slope +1) and reflected (slope -1) waves.
      accumulate_plane_waves(ns, 1.0, grid.z[0], req.dz, b, 1.0, Ex, Ey, 1.0,
                             0.0, iz_med);
      accumulate_plane_waves(ns, -1.0, grid.z[0], req.dz, b, 1.0, Ex, Ey,
                             fam.R11, fam.R21, iz_med);
    }
    if (iz_med < nz) {
      const double front =
          std::max(0.0, c * grid.t[it] + spec.z0 + 10.0 * spec.sigma_z) *
          inv_n;
      std::size_t med_len = nz - iz_med;
      if (front < grid.z[nz - 1]) {
        const double span = front - grid.z[iz_med];
        med_len = span < 0.0
                      ? 0
                      : std::min(med_len,
                                 static_cast<std::size_t>(span / req.dz) + 2);
      }
      accumulate_plane_waves(ns, fam.n_plus, grid.z[iz_med], req.dz, b,
                             fam.C_plus, Ex + iz_med, Ey + iz_med, 1.0,
                             fam.ey_plus, med_len);
      accumulate_plane_waves(ns, fam.n_minus, grid.z[iz_med], req.dz, b,
                             fam.C_minus, Ex + iz_med, Ey + iz_med, 1.0,
                             fam.ey_minus, med_len);
    }
  });
  return grid;
}

double max_field(const FieldGrid& g) {
  double mx = 0.0;
  for (std::size_t i = 0; i < g.Ex.size(); ++i)
    mx = std::max({mx, std::abs(g.Ex[i]), std::abs(g.Ey[i])});
  return mx;
}

double max_deviation(const FieldGrid& a, const FieldGrid& b) {
  double mx = 0.0;
  for (std::size_t i = 0; i < a.Ex.size(); ++i)
    mx = std::max({mx, std::abs(a.Ex[i] - b.Ex[i]),
                   std::abs(a.Ey[i] - b.Ey[i])});
  return mx;
}

int estimate_panels(const PulseSpec& spec, const HarmonicFamily& fam,
                    const FieldGridRequest& req, const QuadratureConfig& quad) {
  // largest |Re(a) z - c t| over the grid corners and propagation slopes,
  // plus the envelope offsets
  double u_max = 0.0;
  const double zmag = std::max(std::abs(req.z_min), std::abs(req.z_max));
  for (cdouble a : {cdouble(1.0), cdouble(-1.0), fam.n_plus, fam.n_minus}) {
    for (double z : {req.z_min, req.z_max})
      for (double t : {req.t_min, req.t_max})
        u_max = std::max(u_max, std::abs(a.real() * z - c * t) +
                                    std::abs(a.imag()) * zmag);
  }
  u_max += std::abs(spec.z0) + 8.0 * spec.sigma_z;
  const double cycles =
      2.0 * quad.band_sigmas * spec.sigma_k() * u_max / (2.0 * pi);
  const double p = std::ceil(cycles / 0.75);
  return std::max(quad.min_panels, static_cast<int>(std::min(p, 1e7)));
}

} // namespace

FieldGrid synthesize_field(const PulseSpec& spec, const HarmonicFamily& fam,
                           const FieldGridRequest& req,
                           const QuadratureConfig& quad, int threads) {
  spec.validate();
  if (!(req.dz > 0.0) || !(req.dt > 0.0))
    throw std::invalid_argument("synthesize_field: grid steps must be positive");
  const double resolve = std::min(spec.sigma_z, fam.rotation_length(spec.k0));
  if (req.dz > resolve / 20.0 * (1.0 + 1e-9))
    throw std::invalid_argument(
        "synthesize_field: dz must resolve min(sigma_z, rotation length)/20");

  int scale_factor = 1;
  int max_base = 0;
  FieldGrid coarse =
      synthesize_once(spec, fam, req, quad, scale_factor, threads, max_base);
  while (true) {
    if (2 * scale_factor * max_base > quad.max_panels)
      throw QuadratureNotConverged(
          "node doubling still moves the field at max_panels");
    FieldGrid fine = synthesize_once(spec, fam, req, quad, 2 * scale_factor,
                                     threads, max_base);
    const double scale = max_field(fine);
    const double dev = max_deviation(coarse, fine);
    if (dev <= quad.rel_tol * scale) return fine;
    scale_factor *= 2;
    coarse = std::move(fine);
  }
}

namespace {

std::vector<FieldSample> points_once(const PulseSpec& spec,
                                     const HarmonicFamily& fam,
                                     const std::vector<SpaceTimePoint>& pts,
                                     const QuadratureConfig& quad, int panels,
                                     int threads) {
  const NodeSet ns = build_nodes(spec, quad, panels);
  const cdouble i(0.0, 1.0);
  std::vector<FieldSample> out(pts.size());
  parallel_for_index(pts.size(), threads, [&](std::size_t ip) {
    const double z = pts[ip].z, t = pts[ip].t;
    const double b = -c * t - spec.z0;
    cdouble ex(0.0, 0.0), ey(0.0, 0.0);
    if (z < 0.0) {
      cdouble inc(0.0, 0.0), refl(0.0, 0.0);
      for (std::size_t j = 0; j < ns.k.size(); ++j) {
        inc += ns.coef[j] * std::exp(i * (ns.k[j] * (z + b)));
        refl += ns.coef[j] * std::exp(i * (ns.k[j] * (-z + b)));
      }
      ex = inc + fam.R11 * refl;
      ey = fam.R21 * refl;
    } else {
      cdouble sp(0.0, 0.0), sm(0.0, 0.0);
      for (std::size_t j = 0; j < ns.k.size(); ++j) {
        const cdouble up = i * (ns.k[j] * (fam.n_plus * z + b));
        const cdouble um = i * (ns.k[j] * (fam.n_minus * z + b));
        if (up.real() > -745.0) sp += ns.coef[j] * std::exp(up);
        if (um.real() > -745.0) sm += ns.coef[j] * std::exp(um);
      }
      sp *= fam.C_plus;
      sm *= fam.C_minus;
      ex = sp + sm;
      ey = fam.ey_plus * sp + fam.ey_minus * sm;
    }
    out[ip] = {ex, ey, z, t};
  });
  return out;
}

} // namespace

std::vector<FieldSample> synthesize_points(const PulseSpec& spec,
                                           const HarmonicFamily& fam,
                                           const std::vector<SpaceTimePoint>& pts,
                                           const QuadratureConfig& quad,
                                           int threads) {
  spec.validate();
  if (pts.empty()) return {};
  FieldGridRequest box{};
  box.z_min = box.z_max = pts[0].z;
  box.t_min = box.t_max = pts[0].t;
  for (const auto& p : pts) {
    box.z_min = std::min(box.z_min, p.z);
    box.z_max = std::max(box.z_max, p.z);
    box.t_min = std::min(box.t_min, p.t);
    box.t_max = std::max(box.t_max, p.t);
  }

  int panels = estimate_panels(spec, fam, box, quad);
  auto coarse = points_once(spec, fam, pts, quad, panels, threads);
  while (true) {
    if (2 * panels > quad.max_panels)
      throw QuadratureNotConverged(
          "node doubling still moves the field at max_panels");
    auto fine = points_once(spec, fam, pts, quad, 2 * panels, threads);
    double scale = 0.0, dev = 0.0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      scale = std::max({scale, std::abs(fine[p].Ex), std::abs(fine[p].Ey)});
      dev = std::max({dev, std::abs(fine[p].Ex - coarse[p].Ex),
                      std::abs(fine[p].Ey - coarse[p].Ey)});
    }
    if (scale == 0.0 || dev <= quad.rel_tol * scale) return fine;
    panels *= 2;
    coarse = std::move(fine);
  }
}

} // namespace optrot
