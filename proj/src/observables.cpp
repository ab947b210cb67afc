#include "optrot/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"

namespace optrot {

using constants::c;
using constants::pi;

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& y,
                 std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t i = lo + 1; i <= hi; ++i)
    s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

struct Intensities {
  double i1, i2, ip, im;
};

Intensities intensities_at(const FieldGrid& g, std::size_t it, std::size_t iz) {
  const auto s = g.sample(it, iz);
  const auto [ep, em] = circular_components(s.Ex, s.Ey);
  return {std::norm(s.Ex), std::norm(s.Ey), std::norm(ep), std::norm(em)};
}

/// Linear interpolation weight for value v on the uniform axis.
std::pair<std::size_t, double> locate(const std::vector<double>& axis,
                                      double v) {
  if (axis.empty() || v < axis.front() - 1e-12 * std::abs(axis.front()) ||
      v > axis.back() + 1e-12 * std::abs(axis.back()))
    throw OutOfRange("requested coordinate outside the grid");
  if (v <= axis.front()) return {0, 0.0};
  if (v >= axis.back()) return {axis.size() - 2, 1.0};
  const double step = axis[1] - axis[0];
  auto i = static_cast<std::size_t>((v - axis.front()) / step);
  i = std::min(i, axis.size() - 2);
  return {i, (v - axis[i]) / step};
}

} // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::oscillating: return "oscillating";
    case Regime::averaged: return "averaged";
    case Regime::split: return "split";
    case Regime::filtered: return "filtered";
  }
  return "?";
}

IntensityTrace integrated_intensities(const FieldGrid& grid,
                                      double truncation_tol) {
  const std::size_t nz = grid.nz(), nt = grid.nt();
  if (nz < 2 || nt == 0)
    throw std::invalid_argument("integrated_intensities: degenerate grid");

  std::size_t iz0 = 0;
  while (iz0 < nz && grid.z[iz0] < 0.0) ++iz0;
  if (iz0 + 1 >= nz)
    throw std::invalid_argument("integrated_intensities: grid has no z >= 0 span");

  double peak = 0.0;
  for (std::size_t i = 0; i < grid.Ex.size(); ++i)
    peak = std::max({peak, std::abs(grid.Ex[i]), std::abs(grid.Ey[i])});

  IntensityTrace trace;
  trace.t = grid.t;
  trace.I1.resize(nt);
  trace.I2.resize(nt);
  trace.Iplus.resize(nt);
  trace.Iminus.resize(nt);

  std::vector<double> f1(nz - iz0), f2(nz - iz0), fp(nz - iz0), fm(nz - iz0);
  std::vector<double> zs(grid.z.begin() + iz0, grid.z.end());
  for (std::size_t it = 0; it < nt; ++it) {
    const double edge = std::max(std::abs(grid.Ex[grid.idx(it, nz - 1)]),
                                 std::abs(grid.Ey[grid.idx(it, nz - 1)]));
    if (edge > truncation_tol * peak)
      throw GridTruncation("field at z_max above tolerance");
    for (std::size_t iz = iz0; iz < nz; ++iz) {
      const auto v = intensities_at(grid, it, iz);
      f1[iz - iz0] = v.i1;
      f2[iz - iz0] = v.i2;
      fp[iz - iz0] = v.ip;
      fm[iz - iz0] = v.im;
    }
    trace.I1[it] = trapezoid(zs, f1, 0, zs.size() - 1);
    trace.I2[it] = trapezoid(zs, f2, 0, zs.size() - 1);
    trace.Iplus[it] = trapezoid(zs, fp, 0, zs.size() - 1);
    trace.Iminus[it] = trapezoid(zs, fm, 0, zs.size() - 1);
  }
  return trace;
}

RotationScales rotation_scales(cdouble chi12, double omega,
                               const PulseSpec& spec) {
  const double mag = std::abs(chi12);
  if (!(mag > 0.0))
    throw std::invalid_argument("rotation_scales: |chi12| must be positive");
  RotationScales s;
  s.T = 2.0 * pi / (omega * mag);
  s.L = c * s.T;
  s.delta_t = 2.0 * spec.sigma_t() / mag;
  s.t_transition = std::abs(spec.z0) / c + s.delta_t;
  return s;
}

std::vector<PositionTrace> fixed_position_traces(
    const FieldGrid& grid, const std::vector<double>& positions) {
  std::vector<PositionTrace> out;
  out.reserve(positions.size());
  for (double zp : positions) {
    const auto [iz, frac] = locate(grid.z, zp);
    PositionTrace tr;
    tr.z = zp;
    tr.t = grid.t;
    tr.I1.resize(grid.nt());
    tr.I2.resize(grid.nt());
    tr.Iplus.resize(grid.nt());
    tr.Iminus.resize(grid.nt());
    for (std::size_t it = 0; it < grid.nt(); ++it) {
      const auto a = intensities_at(grid, it, iz);
      const auto b = intensities_at(grid, it, iz + 1);
      tr.I1[it] = (1.0 - frac) * a.i1 + frac * b.i1;
      tr.I2[it] = (1.0 - frac) * a.i2 + frac * b.i2;
      tr.Iplus[it] = (1.0 - frac) * a.ip + frac * b.ip;
      tr.Iminus[it] = (1.0 - frac) * a.im + frac * b.im;
    }
    out.push_back(std::move(tr));
  }
  return out;
}

std::vector<Snapshot> snapshots(const FieldGrid& grid,
                                const std::vector<double>& times) {
  std::vector<Snapshot> out;
  out.reserve(times.size());
  for (double tq : times) {
    const auto [it, frac] = locate(grid.t, tq);
    Snapshot sn;
    sn.t = tq;
    sn.z = grid.z;
    sn.I1.resize(grid.nz());
    sn.I2.resize(grid.nz());
    sn.Iplus.resize(grid.nz());
    sn.Iminus.resize(grid.nz());
    for (std::size_t iz = 0; iz < grid.nz(); ++iz) {
      const auto a = intensities_at(grid, it, iz);
      const auto b = intensities_at(grid, it + 1, iz);
      sn.I1[iz] = (1.0 - frac) * a.i1 + frac * b.i1;
      sn.I2[iz] = (1.0 - frac) * a.i2 + frac * b.i2;
      sn.Iplus[iz] = (1.0 - frac) * a.ip + frac * b.ip;
      sn.Iminus[iz] = (1.0 - frac) * a.im + frac * b.im;
    }
    out.push_back(std::move(sn));
  }
  return out;
}

RegimeReport classify_regime(const SusceptibilityTensor& chi,
                             const PulseSpec& spec, double omega,
                             double horizon) {
  const auto structure = validate_structure(chi, 1e-10);
  if (structure != TensorStructure::faraday &&
      structure != TensorStructure::isotropic)
    throw std::invalid_argument("classify_regime: Faraday-form tensor required");

  const cdouble chi12 = chi(0, 1);
  const double mag = std::abs(chi12);
  const PropagationModes modes = propagation_modes(chi, omega);

  RegimeReport rep{};
  rep.abs_chi12 = mag;
  rep.sigma_k_over_k0 = spec.sigma_k() / spec.k0;
  rep.ideal_lower_margin = mag > 0.0 ? rep.sigma_k_over_k0 / mag : 0.0;
  rep.ideal_upper_margin = 1.0 / rep.sigma_k_over_k0;
  rep.evanescent_minus = modes.minus.evanescent;
  rep.evanescent_plus = modes.plus.evanescent;

  if (mag > 0.0) {
    const RotationScales scales = rotation_scales(chi12, omega, spec);
    rep.sigma_t_over_T = spec.sigma_t() / scales.T;
    rep.t_transition = scales.t_transition;
  } else {
    rep.sigma_t_over_T = 0.0;
    rep.t_transition = std::numeric_limits<double>::infinity();
  }

  if (modes.minus.evanescent || modes.plus.evanescent)
    rep.regime = Regime::filtered;
  else if (mag > 0.0 && horizon > rep.t_transition)
    rep.regime = Regime::split;
  else if (mag > 0.0 && 4.0 * rep.sigma_t_over_T >= 1.0)
    // averaged once the entrance interval (~4 sigma_t) spans a full period
    rep.regime = Regime::averaged;
  else
    rep.regime = Regime::oscillating;
  return rep;
}

OscillationMetrics oscillation_metrics(const std::vector<double>& t,
                                       const std::vector<double>& y,
                                       double window_lo, double window_hi,
                                       double noise_floor) {
  if (t.size() != y.size() || t.size() < 3)
    throw std::invalid_argument("oscillation_metrics: bad trace");

  OscillationMetrics m;
  std::vector<double> ext_t, ext_y;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < window_lo || t[i] > window_hi) continue;
    const bool is_max = y[i] > y[i - 1] && y[i] >= y[i + 1];
    const bool is_min = y[i] < y[i - 1] && y[i] <= y[i + 1];
    if (!is_max && !is_min) continue;
    // quadratic refinement through the three neighbouring samples
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double dt_frac = 0.0;
    if (denom != 0.0) dt_frac = 0.5 * (y[i - 1] - y[i + 1]) / denom;
    dt_frac = std::clamp(dt_frac, -0.5, 0.5);
    const double h = t[i + 1] - t[i];
    ext_t.push_back(t[i] + dt_frac * h);
    ext_y.push_back(y[i] - 0.25 * (y[i - 1] - y[i + 1]) * dt_frac);
  }

  m.extrema_times = ext_t;
  if (ext_t.size() < 2) return m; // amplitude 0, not oscillating

  double amp = 0.0, spacing = 0.0;
  for (std::size_t i = 1; i < ext_t.size(); ++i) {
    amp += std::abs(ext_y[i] - ext_y[i - 1]);
    spacing += ext_t[i] - ext_t[i - 1];
  }
  amp /= static_cast<double>(ext_t.size() - 1);
  spacing /= static_cast<double>(ext_t.size() - 1);

  m.amplitude = amp;
  m.period = 2.0 * spacing;
  m.oscillating = amp > noise_floor;
  return m;
}

} // namespace optrot
