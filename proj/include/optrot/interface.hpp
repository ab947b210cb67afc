#pragma once

#include "optrot/dispersion.hpp"

namespace optrot {

/// Amplitudes matching a vertically polarized harmonic wave of vacuum
/// wavenumber k at the z = 0 boundary of a semi-infinite Faraday medium.
/// The transmitted field is C_plus*[1, ey_plus]e^{i k_plus z} +
/// C_minus*[1, ey_minus]e^{i k_minus z}; for z < 0 the reflected field is
/// [R11, R21]e^{-i k z}.
struct InterfaceSolution {
  cdouble R11, R21;
  cdouble C_plus, C_minus;
  cdouble k, k_plus, k_minus;
  cdouble ey_plus, ey_minus; // circular basis y-components (-i/+i or swapped)
  bool evanescent_plus = false;
  bool evanescent_minus = false;

  cdouble n_plus() const { return k_plus / k; }
  cdouble n_minus() const { return k_minus / k; }
};

/// Same matching problem for an arbitrary transverse mode basis; the
/// coefficients A multiply the unit-norm Jones vectors of the modes.
struct GeneralInterfaceSolution {
  cdouble R11, R21;
  cdouble A_plus, A_minus;
  cdouble k;
  Mode plus, minus;
};

/// Closed-form solution of the four continuity equations for circular mode
/// bases.  Also valid for degenerate (isotropic) modes, where the circular
/// decomposition of the incident linear polarization still applies.
InterfaceSolution match_interface(double k, const PropagationModes& modes);

/// Generic 4x4 solve of the same continuity equations for an arbitrary mode
/// basis (serves the Cotton-Mouton configuration, where the closed forms do
/// not apply).
GeneralInterfaceSolution match_interface_general(double k,
                                                 const PropagationModes& modes);

/// The ratio n_plus |C_plus|^2 between the energy flux of the surviving
/// polarization and the incident flux, defined in the filtering regime.
/// Throws NotFilteringRegime when k_minus propagates.
double surviving_mode_transmittance(const InterfaceSolution& sol);

/// Full transmitted energy flux 2[Re(n+)|C+|^2 + Re(n-)|C-|^2]; equals
/// 1 - |R11|^2 - |R21|^2 for lossless media.
double flux_transmittance(const InterfaceSolution& sol);

/// 1/Im(k_minus).  Throws NotEvanescent unless the minus branch is evanescent.
double penetration_length(const PropagationModes& modes);

} // namespace optrot
