#include "optrot/medium.hpp"

#include <cmath>
#include <stdexcept>

#include "optrot/errors.hpp"

namespace optrot {

double LorentzMedium::cyclotron_total() const {
  return std::sqrt(omega_c[0] * omega_c[0] + omega_c[1] * omega_c[1] +
                   omega_c[2] * omega_c[2]);
}

void LorentzMedium::validate() const {
  if (!(omega0 > 0.0))
    throw std::invalid_argument("LorentzMedium: omega0 must be positive");
  if (omega_p < 0.0)
    throw std::invalid_argument("LorentzMedium: omega_p must be non-negative");
  if (gamma < 0.0)
    throw std::invalid_argument("LorentzMedium: gamma must be non-negative");
}

SusceptibilityTensor SusceptibilityTensor::faraday(cdouble chi11, cdouble chi12,
                                                   cdouble chi33) {
  SusceptibilityTensor chi;
  chi(0, 0) = chi11;
  chi(1, 1) = chi11;
  chi(0, 1) = chi12;
  chi(1, 0) = std::conj(chi12);
  chi(2, 2) = chi33;
  return chi;
}

double SusceptibilityTensor::max_abs() const {
  double mx = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mx = std::max(mx, std::abs(m[i][j]));
  return mx;
}

double SusceptibilityTensor::hermiticity_defect() const {
  double mx = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      mx = std::max(mx, std::abs(m[i][j] - std::conj(m[j][i])));
  return mx;
}

const char* to_string(TensorStructure s) {
  switch (s) {
    case TensorStructure::isotropic: return "isotropic";
    case TensorStructure::faraday: return "faraday";
    case TensorStructure::cotton_mouton: return "cotton_mouton";
    case TensorStructure::general: return "general";
  }
  return "?";
}

SusceptibilityTensor lorentz_susceptibility(const LorentzMedium& med,
                                            double omega,
                                            double singular_tol) {
  med.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument("lorentz_susceptibility: omega must be positive");

  const double w0sq = med.omega0 * med.omega0;
  const double wsq = omega * omega;
  const double wcx = med.omega_c[0], wcy = med.omega_c[1], wcz = med.omega_c[2];
  const double wc2 = wcx * wcx + wcy * wcy + wcz * wcz;

  // W = omega0^2 - omega^2 - i*gamma*omega, the damped resonance denominator.
  const cdouble W(w0sq - wsq, -med.gamma * omega);
  const cdouble D2 = W * W - wsq * wc2;

  if (std::abs(W) < singular_tol * w0sq)
    throw ResonanceSingularity("|omega0^2 - omega^2 - i*gamma*omega| below tolerance");
  if (std::abs(D2) < singular_tol * w0sq * w0sq)
    throw ResonanceSingularity("magneto-resonant denominator below tolerance");

  const double wp2 = med.omega_p * med.omega_p;
  const cdouble den = W * D2;
  const cdouble i(0.0, 1.0);

  SusceptibilityTensor chi;
  chi(0, 0) = wp2 * (W * W - wsq * wcx * wcx) / den;
  chi(1, 1) = wp2 * (W * W - wsq * wcy * wcy) / den;
  chi(2, 2) = wp2 * (W * W - wsq * wcz * wcz) / den;
  chi(0, 1) = wp2 * omega * (i * wcz * W - wcx * wcy * omega) / den;
  chi(0, 2) = wp2 * omega * (-i * wcy * W - wcx * wcz * omega) / den;
  chi(1, 2) = wp2 * omega * (i * wcx * W - wcy * wcz * omega) / den;
  // Lower triangle by the formal rule: conjugate the undamped transpose
  // expression, then substitute W.  Only the explicit i flips sign; W is
  // kept as is, so chi21 != conj(chi12) once gamma != 0.
  chi(1, 0) = wp2 * omega * (-i * wcz * W - wcx * wcy * omega) / den;
  chi(2, 0) = wp2 * omega * (i * wcy * W - wcx * wcz * omega) / den;
  chi(2, 1) = wp2 * omega * (-i * wcx * W - wcy * wcz * omega) / den;
  return chi;
}

namespace {

bool small(cdouble v, double tol) { return std::abs(v) <= tol; }

} // namespace

TensorStructure validate_structure(const SusceptibilityTensor& chi,
                                   double rel_tol) {
  const double scale = chi.max_abs();
  if (scale == 0.0) return TensorStructure::isotropic;
  const double tol = rel_tol * scale;

  const bool off_zero =
      small(chi(0, 1), tol) && small(chi(1, 0), tol) && small(chi(0, 2), tol) &&
      small(chi(2, 0), tol) && small(chi(1, 2), tol) && small(chi(2, 1), tol);
  if (off_zero && small(chi(0, 0) - chi(1, 1), tol) &&
      small(chi(1, 1) - chi(2, 2), tol))
    return TensorStructure::isotropic;

  // Faraday: B along z.  chi13 = chi23 = 0, chi11 = chi22, Re(chi12) = 0.
  if (small(chi(0, 2), tol) && small(chi(2, 0), tol) && small(chi(1, 2), tol) &&
      small(chi(2, 1), tol) && small(chi(0, 0) - chi(1, 1), tol) &&
      std::abs(chi(0, 1).real()) <= tol &&
      small(chi(1, 0) - std::conj(chi(0, 1)), tol))
    return TensorStructure::faraday;

  // Cotton-Mouton: B along x.  chi12 = chi13 = 0, Re(chi23) = 0, chi22 = chi33.
  if (small(chi(0, 1), tol) && small(chi(1, 0), tol) && small(chi(0, 2), tol) &&
      small(chi(2, 0), tol) && small(chi(1, 1) - chi(2, 2), tol) &&
      std::abs(chi(1, 2).real()) <= tol &&
      small(chi(2, 1) - std::conj(chi(1, 2)), tol))
    return TensorStructure::cotton_mouton;

  return TensorStructure::general;
}

} // namespace optrot
