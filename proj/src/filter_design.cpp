#include "optrot/filter_design.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"
#include "optrot/interface.hpp"

namespace optrot {

namespace {

struct FaradayChi {
  double chi11;
  double abs_chi12;
  cdouble chi12;
};

/// Transverse Faraday elements for B along z with gamma = 0.
FaradayChi faraday_elements(const LorentzMedium& med, double omega,
                            double omega_cz) {
  LorentzMedium axial = med;
  axial.omega_c = {0.0, 0.0, omega_cz};
  const SusceptibilityTensor chi = lorentz_susceptibility(axial, omega);
  return {chi(0, 0).real(), std::abs(chi(0, 1)), chi(0, 1)};
}

void require_lossless(const LorentzMedium& med, const char* fn) {
  if (med.gamma != 0.0)
    throw std::invalid_argument(std::string(fn) +
                                ": evanescence analysis requires gamma = 0");
}

} // namespace

const char* to_string(FilterRegion r) {
  switch (r) {
    case FilterRegion::both_propagating: return "both_propagating";
    case FilterRegion::filtering: return "filtering";
    case FilterRegion::total_reflection: return "total_reflection";
  }
  return "?";
}

CrossingFrequencies crossing_frequencies(const LorentzMedium& med) {
  med.validate();
  const double w0sq = med.omega0 * med.omega0;
  const double wp2 = med.omega_p * med.omega_p;
  return {med.omega0, std::sqrt(w0sq + 0.5 * wp2), std::sqrt(w0sq + wp2)};
}

BoundaryCurves boundary_curves(const LorentzMedium& med, double omega) {
  med.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("boundary_curves: omega must be positive");
  const double delta = med.omega0 * med.omega0 - omega * omega;
  const double wp2 = med.omega_p * med.omega_p;
  return {(-wp2 - delta) / omega, delta / omega, (wp2 + delta) / omega,
          -delta / omega};
}

FilterRegion classify_point(const LorentzMedium& med, double omega,
                            double omega_cz) {
  require_lossless(med, "classify_point");
  const FaradayChi f = faraday_elements(med, omega, omega_cz);
  const double s_plus = 1.0 + f.chi11 + f.abs_chi12;
  const double s_minus = 1.0 + f.chi11 - f.abs_chi12;
  if (s_plus > 0.0 && s_minus < 0.0) return FilterRegion::filtering;
  if (s_plus < 0.0 && s_minus < 0.0) return FilterRegion::total_reflection;
  return FilterRegion::both_propagating;
}

FilterRegionMap region_map(const LorentzMedium& med, double omega_lo,
                           double omega_hi, int n_omega, double wcz_lo,
                           double wcz_hi, int n_wcz) {
  require_lossless(med, "region_map");
  if (n_omega < 2 || n_wcz < 2)
    throw std::invalid_argument("region_map: need at least a 2x2 grid");

  FilterRegionMap map;
  map.crossings = crossing_frequencies(med);
  map.omega.resize(n_omega);
  map.omega_cz.resize(n_wcz);
  for (int i = 0; i < n_omega; ++i)
    map.omega[i] = omega_lo + (omega_hi - omega_lo) * i / (n_omega - 1);
  for (int j = 0; j < n_wcz; ++j)
    map.omega_cz[j] = wcz_lo + (wcz_hi - wcz_lo) * j / (n_wcz - 1);

  map.cells.reserve(static_cast<std::size_t>(n_omega) * n_wcz);
  for (int i = 0; i < n_omega; ++i) {
    const double w = map.omega[i];
    int sub = 0;
    if (w < map.crossings.omega_0)
      sub = 1;
    else if (w < map.crossings.omega_S)
      sub = 2;
    else if (w < map.crossings.omega_0p)
      sub = 3;
    else
      sub = 4;
    for (int j = 0; j < n_wcz; ++j) {
      FilterMapCell cell{};
      cell.omega = w;
      cell.omega_cz = map.omega_cz[j];
      cell.region = classify_point(med, w, cell.omega_cz);
      cell.subregion = cell.region == FilterRegion::filtering ? sub : 0;
      cell.penetration = std::numeric_limits<double>::quiet_NaN();
      cell.transmittance = std::numeric_limits<double>::quiet_NaN();

      const FaradayChi f = faraday_elements(med, w, cell.omega_cz);
      const PropagationModes modes = faraday_modes(f.chi11, f.chi12, w);
      cell.r_plus = modes.r_plus();
      cell.ecc_plus = ellipse_from_jones(modes.plus.ex, modes.plus.ey).eccentricity;
      cell.ecc_minus =
          ellipse_from_jones(modes.minus.ex, modes.minus.ey).eccentricity;
      if (cell.region == FilterRegion::filtering) {
        cell.penetration =
            med.omega0 / (constants::c * modes.minus.k.imag());
        cell.transmittance =
            surviving_mode_transmittance(match_interface(w / constants::c, modes));
      }
      map.cells.push_back(cell);
    }
  }
  return map;
}

SurvivingHandedness surviving_mode_handedness(const LorentzMedium& med,
                                              double omega, double omega_cz) {
  require_lossless(med, "surviving_mode_handedness");
  const double wcz = std::abs(omega_cz);
  const CrossingFrequencies cr = crossing_frequencies(med);
  if (std::abs(omega - cr.omega_S) < 1e-12 * med.omega0)
    throw std::domain_error(
        "surviving_mode_handedness: undefined at the omega_S crossing");
  if (classify_point(med, omega, wcz) != FilterRegion::filtering)
    throw std::invalid_argument(
        "surviving_mode_handedness: point is not in the filtering region");

  // Rule: (Ey/Ex)+ = +i below omega_S, -i above.
  const cdouble expected(0.0, omega < cr.omega_S ? 1.0 : -1.0);
  LorentzMedium axial = med;
  axial.omega_c = {0.0, 0.0, wcz};
  const SusceptibilityTensor chi = lorentz_susceptibility(axial, omega);
  const cdouble solver_r = propagation_modes(chi, omega).r_plus();
  if (std::abs(solver_r - expected) > 1e-8)
    throw InconsistentHandedness("rule and dispersion solver disagree");
  return expected.imag() < 0.0 ? SurvivingHandedness::plus_is_right
                               : SurvivingHandedness::plus_is_left;
}

double min_field_for_filtering(const LorentzMedium& med, double omega) {
  require_lossless(med, "min_field_for_filtering");
  med.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("min_field_for_filtering: omega must be positive");
  if (med.omega_p == 0.0) return std::numeric_limits<double>::infinity();

  const CrossingFrequencies cr = crossing_frequencies(med);
  const BoundaryCurves bc = boundary_curves(med, omega);
  const double tiny = 1e-14 * med.omega0;
  if (std::abs(omega - cr.omega_0) < tiny || std::abs(omega - cr.omega_0p) < tiny)
    return 0.0;
  if (omega < cr.omega_0) return bc.w2cz;
  if (omega <= cr.omega_S) return bc.w4cz;
  if (omega < cr.omega_0p) return bc.w3cz;
  return bc.w1cz;
}

double cyclotron_to_tesla(double omega_c) {
  return constants::m_e * omega_c / constants::e_charge;
}

AbsorptionMargin absorption_negligible(const LorentzMedium& med, double omega,
                                       double factor) {
  med.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("absorption_negligible: omega must be positive");
  const double num = omega * omega - med.omega0 * med.omega0;
  if (med.gamma == 0.0)
    return {std::numeric_limits<double>::infinity(), true};
  const double margin = num / (omega * med.gamma);
  return {margin, margin > factor};
}

std::vector<EccentricityPoint> eccentricity_scan(const LorentzMedium& med,
                                                 double omega, double wcx_lo,
                                                 double wcx_hi, int n) {
  med.validate();
  if (n < 2) throw std::invalid_argument("eccentricity_scan: need n >= 2");

  std::vector<EccentricityPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    LorentzMedium m = med;
    m.omega_c[0] = wcx_lo + (wcx_hi - wcx_lo) * i / (n - 1);
    const SusceptibilityTensor chi = lorentz_susceptibility(m, omega);
    const PropagationModes modes = propagation_modes(chi, omega);

    EccentricityPoint pt;
    pt.omega_cx = m.omega_c[0];
    pt.r_plus = modes.r_plus();
    pt.r_minus = modes.r_minus();
    for (cdouble r : {pt.r_plus, pt.r_minus}) {
      if (!std::isinf(r.real()) && std::abs(r.real()) > 1e-8 * std::abs(r))
        throw std::domain_error(
            "eccentricity_scan: Jones ratio not purely imaginary");
    }
    pt.plus = ellipse_from_jones(modes.plus.ex, modes.plus.ey);
    pt.minus = ellipse_from_jones(modes.minus.ex, modes.minus.ey);
    out.push_back(pt);
  }
  return out;
}

} // namespace optrot
