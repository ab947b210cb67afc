#include "optrot/dispersion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"

namespace optrot {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kAxisTol = 1e-12;

struct ReducedSystem {
  // Transverse 2x2 system after E_z elimination:
  //   [-k^2 + q*a11] Ex + q*a12 Ey = 0
  //   q*a21 Ex + [-k^2 + q*a22] Ey = 0,  q = (omega/c)^2.
  cdouble a11, a12, a21, a22;
  cdouble q;
};

ReducedSystem reduce(const SusceptibilityTensor& chi, double omega) {
  const cdouble gamma3 = 1.0 + chi(2, 2);
  const double scale = std::max(1.0, chi.max_abs());
  const double coupling =
      std::max({std::abs(chi(0, 2)), std::abs(chi(2, 0)), std::abs(chi(1, 2)),
                std::abs(chi(2, 1))});
  const bool longitudinal_resonant = std::abs(gamma3) < 1e-12 * scale;
  if (longitudinal_resonant && coupling > 1e-12 * scale)
    throw DegenerateLongitudinal("1 + chi33 is numerically zero");

  ReducedSystem s;
  const double koc = omega / constants::c;
  s.q = koc * koc;
  if (longitudinal_resonant) {
    // E_z decouples entirely (Faraday form); the resonant longitudinal mode
    // is not excited at normal incidence
    s.a11 = 1.0 + chi(0, 0);
    s.a12 = chi(0, 1);
    s.a21 = chi(1, 0);
    s.a22 = 1.0 + chi(1, 1);
    return s;
  }
  s.a11 = 1.0 + chi(0, 0) - chi(0, 2) * chi(2, 0) / gamma3;
  s.a12 = chi(0, 1) - chi(0, 2) * chi(2, 1) / gamma3;
  s.a21 = chi(1, 0) - chi(1, 2) * chi(2, 0) / gamma3;
  s.a22 = 1.0 + chi(1, 1) - chi(1, 2) * chi(2, 1) / gamma3;
  return s;
}

cdouble longitudinal_component(const SusceptibilityTensor& chi, cdouble ex,
                               cdouble ey) {
  const cdouble gamma3 = 1.0 + chi(2, 2);
  const cdouble num = -(chi(2, 0) * ex + chi(2, 1) * ey);
  if (std::abs(gamma3) < 1e-12 * std::max(1.0, chi.max_abs())) return 0.0;
  return num / gamma3;
}

/// Decaying-or-outgoing branch of sqrt(k^2): positive imaginary part if
/// complex, positive real part if real.
cdouble physical_branch(cdouble ksq) {
  cdouble k = std::sqrt(ksq);
  if (std::abs(k.imag()) > kAxisTol * std::abs(k)) {
    if (k.imag() < 0.0) k = -k;
  } else if (k.real() < 0.0) {
    k = -k;
  }
  return k;
}

void classify_branch(Mode& mode, double koc) {
  const double scale = std::max(std::abs(mode.k), koc);
  // |n|^2 below ~machine epsilon means the branch sits on its cutoff; the
  // square root inflates that to ~1e-8 in |n|
  mode.cutoff = std::abs(mode.k) <= 1e-7 * koc;
  mode.evanescent = !mode.cutoff &&
                    std::abs(mode.k.real()) <= kAxisTol * scale &&
                    mode.k.imag() > 0.0;
}

void normalize_jones(Mode& mode) {
  const double nx = std::abs(mode.ex), ny = std::abs(mode.ey);
  const double norm = std::sqrt(nx * nx + ny * ny);
  if (norm == 0.0) throw std::logic_error("null transverse mode vector");
  const cdouble lead = (nx >= ny) ? mode.ex : mode.ey;
  const cdouble phase = lead / std::abs(lead);
  const cdouble s = 1.0 / (norm * phase);
  mode.ex *= s;
  mode.ey *= s;
  mode.ez *= s;
}

void solve_polarization(Mode& mode, const ReducedSystem& s,
                        const SusceptibilityTensor& chi) {
  const cdouble ksq = mode.k * mode.k;
  // Null vector from the row with the larger norm; (A B) -> (B, -A).
  const cdouble r1a = -ksq + s.q * s.a11, r1b = s.q * s.a12;
  const cdouble r2a = s.q * s.a21, r2b = -ksq + s.q * s.a22;
  const double n1 = std::abs(r1a) + std::abs(r1b);
  const double n2 = std::abs(r2a) + std::abs(r2b);
  if (n1 >= n2) {
    mode.ex = r1b;
    mode.ey = -r1a;
  } else {
    mode.ex = r2b;
    mode.ey = -r2a;
  }

  // Both rows must predict the same Ey/Ex when their denominators are
  // well conditioned.
  const double scale = std::abs(s.q) * (1.0 + chi.max_abs());
  if (std::abs(r1b) > 1e-6 * scale && std::abs(r2b) > 1e-6 * scale) {
    const cdouble r_row1 = -r1a / r1b;
    const cdouble r_row2 = -r2a / r2b;
    const double mag = std::max(std::abs(r_row1), std::abs(r_row2));
    if (std::abs(r_row1 - r_row2) > 1e-8 * std::max(1.0, mag))
      throw std::logic_error("dispersion row cross-check failed");
  }

  mode.ez = longitudinal_component(chi, mode.ex, mode.ey);
  normalize_jones(mode);
}

} // namespace

cdouble Mode::jones_ratio() const {
  if (ex == cdouble(0.0, 0.0))
    return {std::numeric_limits<double>::infinity(), 0.0};
  return ey / ex;
}

cdouble Mode::ez_ratio() const {
  if (ex == cdouble(0.0, 0.0))
    return {std::numeric_limits<double>::infinity(), 0.0};
  return ez / ex;
}

DispersionCoefficients dispersion_coefficients(const SusceptibilityTensor& chi,
                                               double omega) {
  const ReducedSystem s = reduce(chi, omega);
  DispersionCoefficients c;
  c.alpha = -s.q * (s.a11 + s.a22);
  c.beta = s.q * s.q * (s.a11 * s.a22 - s.a12 * s.a21);
  return c;
}

PropagationModes propagation_modes(const SusceptibilityTensor& chi,
                                   double omega) {
  const ReducedSystem s = reduce(chi, omega);
  const cdouble alpha = -s.q * (s.a11 + s.a22);
  const cdouble beta = s.q * s.q * (s.a11 * s.a22 - s.a12 * s.a21);

  const cdouble disc = std::sqrt(alpha * alpha - 4.0 * beta);
  cdouble ksq_hi = (-alpha + disc) / 2.0;
  cdouble ksq_lo = (-alpha - disc) / 2.0;
  if (ksq_hi.real() < ksq_lo.real() ||
      (ksq_hi.real() == ksq_lo.real() && ksq_hi.imag() < ksq_lo.imag()))
    std::swap(ksq_hi, ksq_lo);

  const double koc = omega / constants::c;
  PropagationModes modes;
  modes.plus.k = physical_branch(ksq_hi);
  modes.minus.k = physical_branch(ksq_lo);
  modes.plus.n = modes.plus.k / koc;
  modes.minus.n = modes.minus.k / koc;
  classify_branch(modes.plus, koc);
  classify_branch(modes.minus, koc);

  const double ksq_scale = std::max(std::abs(ksq_hi), std::abs(ksq_lo));
  modes.degenerate = std::abs(ksq_hi - ksq_lo) <= kDegenerateTol * ksq_scale;
  if (modes.degenerate) {
    // the polarization ratios are 0/0 here; report the canonical linear basis
    modes.plus.ex = 1.0;
    modes.plus.ey = 0.0;
    modes.minus.ex = 0.0;
    modes.minus.ey = 1.0;
    modes.plus.ez = longitudinal_component(chi, 1.0, 0.0);
    modes.minus.ez = longitudinal_component(chi, 0.0, 1.0);
    return modes;
  }

  solve_polarization(modes.plus, s, chi);
  solve_polarization(modes.minus, s, chi);
  return modes;
}

PropagationModes faraday_modes(cdouble chi11, cdouble chi12, double omega) {
  const double koc = omega / constants::c;
  const cdouble nsq_plus = 1.0 + chi11 + std::abs(chi12);
  const cdouble nsq_minus = 1.0 + chi11 - std::abs(chi12);

  PropagationModes modes;
  modes.plus.n = physical_branch(nsq_plus);
  modes.minus.n = physical_branch(nsq_minus);
  modes.plus.k = koc * modes.plus.n;
  modes.minus.k = koc * modes.minus.n;
  classify_branch(modes.plus, koc);
  classify_branch(modes.minus, koc);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (std::abs(chi12) == 0.0) {
    modes.degenerate = true;
    modes.plus.ex = 1.0;
    modes.plus.ey = 0.0;
    modes.minus.ex = 0.0;
    modes.minus.ey = 1.0;
    return modes;
  }
  // r_pm = +/- |chi12| / chi12: -/+i for Im(chi12) > 0.
  const cdouble r_plus = std::abs(chi12) / chi12;
  modes.plus.ex = inv_sqrt2;
  modes.plus.ey = r_plus * inv_sqrt2;
  modes.minus.ex = inv_sqrt2;
  modes.minus.ey = -r_plus * inv_sqrt2;
  return modes;
}

PolarizationEllipse ellipse_from_jones(cdouble ex, cdouble ey) {
  PolarizationEllipse el;
  const double s0 = std::norm(ex) + std::norm(ey);
  if (s0 == 0.0) return el;
  const double lmag = std::abs(ex * ex + ey * ey);
  el.semi_major = std::sqrt((s0 + lmag) / 2.0);
  el.semi_minor = std::sqrt(std::max(0.0, (s0 - lmag)) / 2.0);
  el.eccentricity = std::min(1.0, std::sqrt(lmag) / el.semi_major);

  const double s3 = 2.0 * std::imag(std::conj(ex) * ey);
  if (std::abs(s3) <= 1e-14 * s0)
    el.handedness = PolarizationEllipse::Handedness::linear;
  else if (s3 < 0.0)
    el.handedness = PolarizationEllipse::Handedness::right;
  else
    el.handedness = PolarizationEllipse::Handedness::left;
  return el;
}

PolarizationEllipse ellipse_from_ratio(cdouble r) {
  if (std::isinf(r.real()) || std::isinf(r.imag()))
    return ellipse_from_jones(0.0, 1.0);
  return ellipse_from_jones(1.0, r);
}

std::pair<double, double> group_velocities(const PropagationModes& modes,
                                           double omega) {
  (void)omega;
  auto one = [](const Mode& m) {
    if (m.evanescent || m.cutoff)
      throw EvanescentMode("group velocity undefined for evanescent branch");
    return constants::c / m.n.real();
  };
  return {one(modes.plus), one(modes.minus)};
}

} // namespace optrot
