#pragma once

#include <array>
#include <complex>

namespace optrot {

using cdouble = std::complex<double>;

/// Classical Lorentz electron model of a homogeneous dielectric in a static
/// magnetic field.  All parameters are angular frequencies; the cyclotron
/// vector components are signed (omega_cu = e*B_u/m_e).
struct LorentzMedium {
  double omega0 = 0.0;                     // resonance frequency (rad/s)
  double omega_p = 0.0;                    // plasma frequency (rad/s)
  std::array<double, 3> omega_c{0, 0, 0};  // cyclotron vector (rad/s)
  double gamma = 0.0;                      // damping constant (rad/s)

  double cyclotron_total() const;

  /// Throws std::invalid_argument unless omega0 > 0, omega_p >= 0, gamma >= 0.
  void validate() const;
};

/// 3x3 complex linear-response tensor, chi(i,j) with 0-based indices.
struct SusceptibilityTensor {
  std::array<std::array<cdouble, 3>, 3> m{};

  cdouble operator()(int i, int j) const { return m[i][j]; }
  cdouble& operator()(int i, int j) { return m[i][j]; }

  static SusceptibilityTensor zero() { return {}; }

  /// chi11 on both transverse diagonal entries, +/-chi12 off-diagonal,
  /// chi33 longitudinal: the magnetic-field-along-z form.
  static SusceptibilityTensor faraday(cdouble chi11, cdouble chi12,
                                      cdouble chi33 = 0.0);

  double max_abs() const;
  double hermiticity_defect() const; // max_ij |chi_ij - conj(chi_ji)|
};

enum class TensorStructure { isotropic, faraday, cotton_mouton, general };

const char* to_string(TensorStructure s);

/// Susceptibility tensor of the Lorentz model at angular frequency omega.
/// With damping, every (omega0^2 - omega^2) becomes
/// (omega0^2 - omega^2 - i*gamma*omega); the lower triangle follows the
/// formal conjugate-then-substitute rule, so the tensor is Hermitian only
/// for gamma = 0.
///
/// Throws ResonanceSingularity when |omega0^2 - omega^2 - i*gamma*omega| or
/// the magneto-resonant denominator falls below singular_tol in units of
/// omega0^2 / omega0^4 respectively.
SusceptibilityTensor lorentz_susceptibility(const LorentzMedium& med,
                                            double omega,
                                            double singular_tol = 1e-12);

/// Classifies the sparsity pattern of chi (tolerance relative to max |chi_ij|).
TensorStructure validate_structure(const SusceptibilityTensor& chi,
                                   double rel_tol = 1e-12);

} // namespace optrot
