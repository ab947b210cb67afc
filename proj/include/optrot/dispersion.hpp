#pragma once

#include <utility>

#include "optrot/medium.hpp"

namespace optrot {

/// Coefficients of the biquadratic dispersion relation
/// k^4 + alpha*k^2 + beta = 0 obtained by eliminating E_z and zeroing the
/// determinant of the transverse 2x2 system.  Real for Hermitian chi.
struct DispersionCoefficients {
  cdouble alpha; // rad^2/m^2
  cdouble beta;  // rad^4/m^4
};

/// One propagating or evanescent plane-wave branch.
/// The transverse Jones vector (ex, ey) is normalised to |ex|^2+|ey|^2 = 1
/// with the phase fixed so the larger component is real positive; ez is the
/// longitudinal component on the same scale.
struct Mode {
  cdouble k;  // rad/m, physical branch (Im > 0 decaying, or Re > 0)
  cdouble n;  // refractive index, k = (omega/c) n
  cdouble ex, ey, ez;
  bool evanescent = false; // Re(k) ~ 0 and Im(k) > 0
  bool cutoff = false;     // |k| ~ 0 (evanescence threshold)

  cdouble jones_ratio() const; // ey/ex (infinite for x-null modes)
  cdouble ez_ratio() const;    // ez/ex
};

struct PropagationModes {
  Mode plus;  // branch with the larger Re(k^2)
  Mode minus;
  bool degenerate = false; // coincident roots; canonical linear basis used

  cdouble r_plus() const { return plus.jones_ratio(); }
  cdouble r_minus() const { return minus.jones_ratio(); }
};

/// Polarization ellipse of a transverse Jones vector, semiaxes on the scale
/// of the vector itself (for (1, r) they are max/min of (1, |r|) when r is
/// purely imaginary).
struct PolarizationEllipse {
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double eccentricity = 0.0; // sqrt(xi^2 - eta^2)/xi, in [0, 1]
  enum class Handedness { left, right, linear } handedness = Handedness::linear;
};

DispersionCoefficients dispersion_coefficients(const SusceptibilityTensor& chi,
                                               double omega);

/// Solves the biquadratic, applies the physical-branch rule and computes the
/// mode polarizations.  Degenerate roots yield the canonical linear basis
/// {[1,0],[0,1]} and the degenerate flag.
PropagationModes propagation_modes(const SusceptibilityTensor& chi,
                                   double omega);

/// Closed form for the Faraday tensor: k_pm = (omega/c) sqrt(1 + chi11 +/- |chi12|),
/// circular modes [1, -i]/[1, +i] for Im(chi12) > 0 (swapped for Im < 0).
PropagationModes faraday_modes(cdouble chi11, cdouble chi12, double omega);

PolarizationEllipse ellipse_from_jones(cdouble ex, cdouble ey);
PolarizationEllipse ellipse_from_ratio(cdouble r);

/// Group velocities c/Re(n_pm) under the constant-chi assumption.
/// Throws EvanescentMode for a non-propagating branch.
std::pair<double, double> group_velocities(const PropagationModes& modes,
                                           double omega);

} // namespace optrot
