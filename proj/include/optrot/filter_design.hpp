#pragma once

#include <vector>

#include "optrot/dispersion.hpp"
#include "optrot/medium.hpp"

namespace optrot {

/// Signed formal solutions of the evanescence-boundary quadratic in the
/// Faraday configuration; the physical boundaries are their non-negative
/// portions.
struct BoundaryCurves {
  double w1cz, w2cz, w3cz, w4cz;
};

enum class FilterRegion { both_propagating, filtering, total_reflection };

const char* to_string(FilterRegion r);

/// Special frequencies of the boundary-curve diagram.
struct CrossingFrequencies {
  double omega_0;  // w2/w4 touch zero field here
  double omega_S;  // sqrt(omega0^2 + omega_p^2/2), handedness change
  double omega_0p; // sqrt(omega0^2 + omega_p^2), w1/w3 touch zero field
};

struct FilterMapCell {
  double omega;
  double omega_cz;
  FilterRegion region;
  int subregion; // 1..4 for filtering cells (I..IV by omega), 0 otherwise
  cdouble r_plus;
  double ecc_plus, ecc_minus;
  double penetration;   // omega0/(c Im k-), NaN unless filtering
  double transmittance; // n+ |C+|^2, NaN unless filtering
};

struct FilterRegionMap {
  std::vector<double> omega;    // grid axes (same units as medium.omega0)
  std::vector<double> omega_cz;
  std::vector<FilterMapCell> cells; // row-major over (omega, omega_cz)
  CrossingFrequencies crossings;
};

enum class SurvivingHandedness { plus_is_right, plus_is_left };

struct AbsorptionMargin {
  double margin; // (omega^2 - omega0^2)/(omega gamma)
  bool negligible;
};

struct EccentricityPoint {
  double omega_cx;
  cdouble r_plus, r_minus;
  PolarizationEllipse plus, minus;
};

CrossingFrequencies crossing_frequencies(const LorentzMedium& med);

BoundaryCurves boundary_curves(const LorentzMedium& med, double omega);

/// Direct sign evaluation of 1 + chi11 +/- |chi12| for the Faraday tensor
/// with the given axial cyclotron frequency.  Requires gamma = 0.
FilterRegion classify_point(const LorentzMedium& med, double omega,
                            double omega_cz);

FilterRegionMap region_map(const LorentzMedium& med, double omega_lo,
                           double omega_hi, int n_omega, double wcz_lo,
                           double wcz_hi, int n_wcz);

/// Jones-ratio rule for the surviving mode in a filtering cell:
/// r+ = +i below omega_S, -i above; cross-checked against the dispersion
/// solver (InconsistentHandedness on disagreement).
SurvivingHandedness surviving_mode_handedness(const LorentzMedium& med,
                                              double omega, double omega_cz);

/// Smallest axial |omega_cz| achieving the filtering regime at omega,
/// evaluated from the analytic boundary curves; +infinity when unattainable.
double min_field_for_filtering(const LorentzMedium& med, double omega);

/// Magnetic field in tesla corresponding to a cyclotron frequency (rad/s).
double cyclotron_to_tesla(double omega_c);

AbsorptionMargin absorption_negligible(const LorentzMedium& med, double omega,
                                       double factor = 10.0);

/// Mode eccentricities along an omega_cx sweep at fixed omega_cy, omega_cz.
/// Asserts the purely imaginary Jones-ratio property of this configuration.
std::vector<EccentricityPoint> eccentricity_scan(const LorentzMedium& med,
                                                 double omega, double wcx_lo,
                                                 double wcx_hi, int n);

} // namespace optrot
