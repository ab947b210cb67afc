#include "optrot/interface.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "optrot/errors.hpp"

namespace optrot {

namespace {

/// Handedness sign of a circular basis: +1 when the plus mode is [1,-i]
/// (Im chi12 > 0 convention), -1 when it is [1,+i].
double circular_sign(const PropagationModes& modes) {
  if (modes.degenerate) return 1.0;
  const cdouble rp = modes.r_plus();
  const cdouble rm = modes.r_minus();
  const bool circ = std::abs(std::abs(rp) - 1.0) < 1e-8 &&
                    std::abs(rp.real()) < 1e-8 && std::abs(rp + rm) < 1e-8;
  if (!circ)
    throw std::invalid_argument(
        "match_interface: modes do not form a circular basis");
  return rp.imag() < 0.0 ? 1.0 : -1.0;
}

/// Gaussian elimination with partial pivoting on a 4x4 complex system.
std::array<cdouble, 4> solve4(std::array<std::array<cdouble, 4>, 4> A,
                              std::array<cdouble, 4> b) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(A[col][col]) == 0.0)
      throw std::runtime_error("singular interface system");
    for (int r = col + 1; r < 4; ++r) {
      const cdouble f = A[r][col] / A[col][col];
      for (int cc = col; cc < 4; ++cc) A[r][cc] -= f * A[col][cc];
      b[r] -= f * b[col];
    }
  }
  std::array<cdouble, 4> x{};
  for (int r = 3; r >= 0; --r) {
    cdouble s = b[r];
    for (int cc = r + 1; cc < 4; ++cc) s -= A[r][cc] * x[cc];
    x[r] = s / A[r][r];
  }
  return x;
}

} // namespace

InterfaceSolution match_interface(double k, const PropagationModes& modes) {
  if (!(k > 0.0))
    throw std::invalid_argument("match_interface: k must be positive");
  const double sign = circular_sign(modes);
  const cdouble i(0.0, 1.0);
  const cdouble kp = modes.plus.k, km = modes.minus.k;
  const cdouble den = (k + kp) * (k + km);

  InterfaceSolution sol;
  sol.k = k;
  sol.k_plus = kp;
  sol.k_minus = km;
  sol.ey_plus = -i * sign;
  sol.ey_minus = i * sign;
  sol.evanescent_plus = modes.plus.evanescent;
  sol.evanescent_minus = modes.minus.evanescent;
  // Solving the four continuity equations.  Note the co-polarized reflection
  // reduces to the standard Fresnel (1-n)/(1+n) in the isotropic limit.
  sol.R11 = (k * k - kp * km) / den;
  sol.R21 = sign * (-i) * k * (km - kp) / den;
  sol.C_plus = k / (k + kp);
  sol.C_minus = k / (k + km);
  return sol;
}

GeneralInterfaceSolution match_interface_general(double k,
                                                 const PropagationModes& modes) {
  if (!(k > 0.0))
    throw std::invalid_argument("match_interface_general: k must be positive");
  const cdouble kp = modes.plus.k, km = modes.minus.k;
  const cdouble exp_ = modes.plus.ex, eyp = modes.plus.ey;
  const cdouble exm = modes.minus.ex, eym = modes.minus.ey;

  // Unknowns (R11, R21, A+, A-): continuity of Ex, Ex', Ey, Ey' at z = 0.
  std::array<std::array<cdouble, 4>, 4> A{{
      {cdouble(1), cdouble(0), -exp_, -exm},
      {cdouble(-k), cdouble(0), -kp * exp_, -km * exm},
      {cdouble(0), cdouble(1), -eyp, -eym},
      {cdouble(0), cdouble(-k), -kp * eyp, -km * eym},
  }};
  std::array<cdouble, 4> b{cdouble(-1), cdouble(-k), cdouble(0), cdouble(0)};
  const auto x = solve4(A, b);

  GeneralInterfaceSolution sol;
  sol.k = k;
  sol.plus = modes.plus;
  sol.minus = modes.minus;
  sol.R11 = x[0];
  sol.R21 = x[1];
  sol.A_plus = x[2];
  sol.A_minus = x[3];
  return sol;
}

double surviving_mode_transmittance(const InterfaceSolution& sol) {
  if (!sol.evanescent_minus)
    throw NotFilteringRegime("k_minus propagates; no surviving-mode filtering");
  return sol.n_plus().real() * std::norm(sol.C_plus);
}

double flux_transmittance(const InterfaceSolution& sol) {
  return 2.0 * (sol.n_plus().real() * std::norm(sol.C_plus) +
                sol.n_minus().real() * std::norm(sol.C_minus));
}

double penetration_length(const PropagationModes& modes) {
  if (!modes.minus.evanescent)
    throw NotEvanescent("k_minus is not evanescent");
  return 1.0 / modes.minus.k.imag();
}

} // namespace optrot
