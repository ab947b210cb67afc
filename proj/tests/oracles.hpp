#pragma once

// Test-only oracles, independent of the library implementation paths they
// check.  Each rebuilds its result from the governing equations by a
// different numerical route (matrix inversion, determinant sampling, linear
// solve, root bracketing, closed-form Gaussian synthesis).

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "optrot/constants.hpp"
#include "optrot/medium.hpp"
#include "optrot/pulse.hpp"

namespace oracles {

using optrot::cdouble;
using Mat3 = std::array<std::array<cdouble, 3>, 3>;

/// Solves the 3x3 electron equation of motion
///   [W I + i omega [w]_x] r = rhs  (W = w0^2 - w^2 - i gamma w)
/// by Gaussian elimination and assembles chi = wp^2 M^{-1} column by column.
/// This never touches the closed-form element expressions.
inline Mat3 lorentz_chi_by_inverse(const optrot::LorentzMedium& med,
                                   double omega) {
  const cdouble I(0.0, 1.0);
  const cdouble W(med.omega0 * med.omega0 - omega * omega,
                  -med.gamma * omega);
  const double wx = med.omega_c[0], wy = med.omega_c[1], wz = med.omega_c[2];
  // cross-product matrix [w]_x
  Mat3 M{};
  M[0] = {W, I * omega * (-wz), I * omega * (wy)};
  M[1] = {I * omega * (wz), W, I * omega * (-wx)};
  M[2] = {I * omega * (-wy), I * omega * (wx), W};

  const double wp2 = med.omega_p * med.omega_p;
  Mat3 inv{};
  for (int col = 0; col < 3; ++col) {
    Mat3 A = M;
    std::array<cdouble, 3> b{};
    b[col] = 1.0;
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r = c + 1; r < 3; ++r)
        if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
      std::swap(A[c], A[piv]);
      std::swap(b[c], b[piv]);
      for (int r = c + 1; r < 3; ++r) {
        const cdouble f = A[r][c] / A[c][c];
        for (int cc = c; cc < 3; ++cc) A[r][cc] -= f * A[c][cc];
        b[r] -= f * b[c];
      }
    }
    for (int r = 2; r >= 0; --r) {
      cdouble s = b[r];
      for (int cc = r + 1; cc < 3; ++cc) s -= A[r][cc] * inv[cc][col];
      inv[r][col] = s / A[r][r];
    }
  }
  Mat3 chi{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) chi[r][c] = wp2 * inv[r][c];
  return chi;
}

/// Evaluates det of the full 3x3 wave-equation matrix
///   diag(-ksq, -ksq, 0) + (omega/c)^2 (I + chi)
/// at a given ksq (rule of Sarrus).
inline cdouble wave_det3(const optrot::SusceptibilityTensor& chi, double omega,
                         cdouble ksq) {
  const double q = (omega / optrot::constants::c) * (omega / optrot::constants::c);
  Mat3 A{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      A[r][c] = q * ((r == c ? 1.0 : 0.0) + chi(r, c));
  A[0][0] -= ksq;
  A[1][1] -= ksq;
  return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
         A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
         A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
}

/// Recovers the quartic coefficients alpha, beta of k^4 + alpha k^2 + beta
/// by sampling the determinant at three ksq values and fitting the monic
/// quadratic in ksq (the full determinant equals q*gamma3*(ksq^2 + alpha ksq
/// + beta)).
inline std::pair<cdouble, cdouble> quartic_by_determinant(
    const optrot::SusceptibilityTensor& chi, double omega) {
  const double q = (omega / optrot::constants::c) * (omega / optrot::constants::c);
  const cdouble lead = q * (1.0 + chi(2, 2));
  const double s = q; // sampling scale
  const cdouble d0 = wave_det3(chi, omega, 0.0) / lead;
  const cdouble d1 = wave_det3(chi, omega, s) / lead;
  const cdouble d2 = wave_det3(chi, omega, 2.0 * s) / lead;
  // d(x) = x^2 + alpha x + beta
  const cdouble beta = d0;
  const cdouble alpha = (d1 - d0) / s - s;
  // consistency: quadratic fit residual must vanish
  const cdouble chk = (d2 - 2.0 * d1 + d0) / (2.0 * s * s);
  if (std::abs(chk - 1.0) > 1e-8)
    throw std::runtime_error("determinant oracle: not quadratic in ksq");
  return {alpha, beta};
}

/// Independent 4x4 solve of the interface continuity equations in the
/// circular basis [1, -i], [1, +i] (Im chi12 > 0 convention); unknowns
/// (R11, R21, C+, C-).
struct InterfaceOracle {
  cdouble R11, R21, Cp, Cm;
};

inline InterfaceOracle interface_by_solve(double k, cdouble kp, cdouble km) {
  const cdouble I(0.0, 1.0);
  std::array<std::array<cdouble, 4>, 4> A{{
      {cdouble(1), cdouble(0), cdouble(-1), cdouble(-1)},
      {cdouble(-k), cdouble(0), -kp, -km},
      {cdouble(0), cdouble(1), I, -I},
      {cdouble(0), cdouble(-k), I * kp, -I * km},
  }};
  std::array<cdouble, 4> b{cdouble(-1), cdouble(-k), cdouble(0), cdouble(0)};
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 4; ++r) {
      const cdouble f = A[r][c] / A[c][c];
      for (int cc = c; cc < 4; ++cc) A[r][cc] -= f * A[c][cc];
      b[r] -= f * b[c];
    }
  }
  std::array<cdouble, 4> x{};
  for (int r = 3; r >= 0; --r) {
    cdouble s = b[r];
    for (int cc = r + 1; cc < 4; ++cc) s -= A[r][cc] * x[cc];
    x[r] = s / A[r][r];
  }
  return {x[0], x[1], x[2], x[3]};
}

/// Bisection root of f on [lo, hi] (f must change sign).
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, int iters = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Closed-form Gaussian synthesis of the constant-index field: for each
/// propagation slope n, the spectral integral evaluates to the analytic
/// envelope G(u) = (2/pi)^{1/4} (2 sigma_z)^{-1/2} e^{i k0 (u - z0)}
/// e^{-(u-z0)^2/(4 sigma_z^2)} at the (possibly complex) argument
/// u = n z - c t.
inline cdouble gaussian_envelope(const optrot::PulseSpec& spec, cdouble u) {
  const double pi = optrot::constants::pi;
  const cdouble arg = u - spec.z0;
  const cdouble I(0.0, 1.0);
  const double norm =
      std::pow(2.0 / pi, 0.25) / std::sqrt(2.0 * spec.sigma_z);
  return norm * std::exp(I * spec.k0 * arg -
                         arg * arg / (4.0 * spec.sigma_z * spec.sigma_z));
}

/// Full closed-form field for a constant-response family (vacuum + medium).
inline std::pair<cdouble, cdouble> field_closed_form(
    const optrot::PulseSpec& spec, const optrot::HarmonicFamily& fam, double z,
    double t) {
  const double ct = optrot::constants::c * t;
  if (z < 0.0) {
    const cdouble inc = gaussian_envelope(spec, z - ct);
    const cdouble refl = gaussian_envelope(spec, -z - ct);
    return {inc + fam.R11 * refl, fam.R21 * refl};
  }
  const cdouble sp = fam.C_plus * gaussian_envelope(spec, fam.n_plus * z - ct);
  const cdouble sm = fam.C_minus * gaussian_envelope(spec, fam.n_minus * z - ct);
  return {sp + sm, fam.ey_plus * sp + fam.ey_minus * sm};
}

} // namespace oracles
