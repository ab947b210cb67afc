#pragma once

#include <utility>

#include "optrot/medium.hpp"

namespace optrot {

/// Two-level atom driven on or near resonance, possibly moving into the
/// illuminated half-space with wavenumber k.
struct AtomScenario {
  cdouble Omega;        // on-resonance Rabi frequency (rad/s)
  double delta = 0.0;   // detuning omega_L - omega (rad/s)
  double mass = 0.0;    // kg
  double k = 0.0;       // incident wavenumber (rad/m)
  double sigma_z = 0.0; // packet width (m)

  double omega_prime() const; // sqrt(delta^2 + |Omega|^2)

  /// Cesium-like preset at a typical thermal velocity, for scale reporting.
  static AtomScenario cesium_preset(cdouble Omega, double delta);
};

/// Ground/excited amplitudes of an atom starting in the ground state.
std::pair<cdouble, cdouble> rabi_amplitudes(const AtomScenario& s, double t);

struct EigenPair {
  double lambda_plus, lambda_minus; // (-delta +/- Omega')/2
  cdouble v_plus[2], v_minus[2];    // unnormalised (1, (-delta +/- Omega')/Omega)
};

/// Eigenstates of the coupling matrix.  Throws OmegaZero for Omega = 0.
EigenPair eigenpairs(const AtomScenario& s);

struct AtomicWavenumbers {
  cdouble k_plus, k_minus;
  bool evanescent_plus = false; // negative radicand on the lambda_+ branch
  bool evanescent_minus = false;
};

/// k_pm = k (1 - m(-delta +/- Omega')/(hbar k^2))^{1/2}; a branch with a
/// negative radicand is purely imaginary (state filtering).
AtomicWavenumbers atomic_wavenumbers(const AtomScenario& s);

/// Stationary-wave amplitudes relative to the e^{ikz} carrier, in which
/// z m/(hbar k) plays the role of time.
std::pair<cdouble, cdouble> semiclassical_profile(const AtomScenario& s,
                                                  double z);

/// Spatial Rabi wavelength k h/(m Omega').
double rabi_wavelength(const AtomScenario& s);

/// Atomic-equivalent parameters of a weak Faraday medium, matched through
/// the k^2 splittings, plus the temporal oscillation scales.
struct AnalogyReport {
  double delta_eff;          // (hbar k_atom^2 / m) * chi11  (rad/s)
  double omega_rabi_matter;  // (hbar k_atom^2 / m) * |chi12|  (rad/s)
  double omega_eff_temporal; // omega |chi12|, the observed angular frequency
  double period;             // 2 pi / omega_eff_temporal  (s)
  double splitting_time_atomic; // 2 sigma_z k / Omega' under the mapping  (s)
};

/// Throws NotSmallChi unless |chi11|, |chi12| <= 0.1.
AnalogyReport analogy_map(cdouble chi11, cdouble chi12, double omega,
                          const AtomScenario& atom);

} // namespace optrot
