#include "optrot/atomic.hpp"

#include <cmath>
#include <stdexcept>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"

namespace optrot {

using constants::hbar;
using constants::pi;

double AtomScenario::omega_prime() const {
  return std::sqrt(delta * delta + std::norm(Omega));
}

AtomScenario AtomScenario::cesium_preset(cdouble Omega, double delta) {
  AtomScenario s;
  s.Omega = Omega;
  s.delta = delta;
  s.mass = 2.2069e-25;               // cesium atom
  s.k = s.mass * 1.0 / hbar * 0.2;   // 0.2 m/s longitudinal velocity
  s.sigma_z = 50e-6;
  return s;
}

std::pair<cdouble, cdouble> rabi_amplitudes(const AtomScenario& s, double t) {
  const double wp = s.omega_prime();
  const cdouble phase = std::exp(cdouble(0.0, 0.5 * s.delta * t));
  if (wp == 0.0) return {phase, 0.0};
  const double cs = std::cos(0.5 * wp * t);
  const double sn = std::sin(0.5 * wp * t);
  const cdouble i(0.0, 1.0);
  const cdouble psi1 = phase * (cs - i * (s.delta / wp) * sn);
  const cdouble psi2 = phase * (-i * s.Omega / wp) * sn;
  return {psi1, psi2};
}

EigenPair eigenpairs(const AtomScenario& s) {
  if (s.Omega == cdouble(0.0, 0.0))
    throw OmegaZero("eigenpairs: Omega must be nonzero");
  const double wp = s.omega_prime();
  EigenPair e;
  e.lambda_plus = 0.5 * (-s.delta + wp);
  e.lambda_minus = 0.5 * (-s.delta - wp);
  e.v_plus[0] = 1.0;
  e.v_plus[1] = (-s.delta + wp) / s.Omega;
  e.v_minus[0] = 1.0;
  e.v_minus[1] = (-s.delta - wp) / s.Omega;
  return e;
}

AtomicWavenumbers atomic_wavenumbers(const AtomScenario& s) {
  if (!(s.k > 0.0) || !(s.mass > 0.0))
    throw std::invalid_argument("atomic_wavenumbers: need k > 0 and mass > 0");
  const double wp = s.omega_prime();
  const double ksq = s.k * s.k;
  const double scale = s.mass / (hbar * ksq);

  AtomicWavenumbers out;
  const double rad_plus = 1.0 - scale * (-s.delta + wp);
  const double rad_minus = 1.0 - scale * (-s.delta - wp);
  auto branch = [&](double rad, bool& evan) {
    evan = rad < 0.0;
    return evan ? cdouble(0.0, s.k * std::sqrt(-rad))
                : cdouble(s.k * std::sqrt(rad), 0.0);
  };
  out.k_plus = branch(rad_plus, out.evanescent_plus);
  out.k_minus = branch(rad_minus, out.evanescent_minus);
  return out;
}

std::pair<cdouble, cdouble> semiclassical_profile(const AtomScenario& s,
                                                  double z) {
  // Stationary-wave amplitudes in which zm/(hbar k) plays the role of time.
  // The excited component carries the Omega/Omega' coefficient of the
  // time-dependent solution (with which it must agree at delta = 0).
  const double wp = s.omega_prime();
  const double tau = z * s.mass / (hbar * s.k);
  const cdouble phase = std::exp(cdouble(0.0, 0.5 * s.delta * tau));
  if (wp == 0.0) return {phase, 0.0};
  const double arg = 0.5 * wp * tau;
  const cdouble i(0.0, 1.0);
  const cdouble phi1 = phase * (std::cos(arg) - i * (s.delta / wp) * std::sin(arg));
  const cdouble phi2 = phase * (-i * s.Omega / wp) * std::sin(arg);
  return {phi1, phi2};
}

double rabi_wavelength(const AtomScenario& s) {
  const double wp = s.omega_prime();
  if (wp == 0.0) throw OmegaZero("rabi_wavelength: Omega' must be nonzero");
  return s.k * 2.0 * pi * hbar / (s.mass * wp);
}

AnalogyReport analogy_map(cdouble chi11, cdouble chi12, double omega,
                          const AtomScenario& atom) {
  if (std::abs(chi11) > 0.1 || std::abs(chi12) > 0.1)
    throw NotSmallChi("analogy_map: valid only for |chi| << 1");
  if (!(atom.k > 0.0) || !(atom.mass > 0.0))
    throw std::invalid_argument("analogy_map: need atomic k > 0 and mass > 0");
  const double mag = std::abs(chi12);
  if (!(mag > 0.0))
    throw std::invalid_argument("analogy_map: chi12 must be nonzero");

  const double recoil = hbar * atom.k * atom.k / atom.mass;
  AnalogyReport rep;
  rep.delta_eff = recoil * chi11.real();
  rep.omega_rabi_matter = recoil * mag;
  rep.omega_eff_temporal = omega * mag;
  rep.period = 2.0 * pi / rep.omega_eff_temporal;
  rep.splitting_time_atomic =
      2.0 * atom.sigma_z * atom.k / rep.omega_rabi_matter;
  return rep;
}

} // namespace optrot
