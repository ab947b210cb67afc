#include <doctest.h>

#include <random>

#include "optrot/constants.hpp"
#include "optrot/dispersion.hpp"
#include "optrot/errors.hpp"
#include "oracles.hpp"

using namespace optrot;
using constants::c;

namespace {

const double kOmega = 3.7673031346177066e15; // 500 nm carrier

SusceptibilityTensor random_hermitian(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SusceptibilityTensor chi;
  for (int i = 0; i < 3; ++i) chi(i, i) = u(rng);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double re = 0.0, im = 0.0;
      do {
        re = u(rng);
        im = u(rng);
      } while (re * re + im * im > 1.0);
      chi(i, j) = {re, im};
      chi(j, i) = {re, -im};
    }
  return chi;
}

} // namespace

TEST_CASE("vacuum coefficients and degenerate modes") {
  const auto chi = SusceptibilityTensor::zero();
  const auto dc = dispersion_coefficients(chi, kOmega);
  const double q = (kOmega / c) * (kOmega / c);
  CHECK(dc.alpha.real() == doctest::Approx(-2.0 * q).epsilon(1e-15));
  CHECK(dc.beta.real() == doctest::Approx(q * q).epsilon(1e-15));
  CHECK(dc.alpha.imag() == 0.0);

  const auto modes = propagation_modes(chi, kOmega);
  CHECK(modes.degenerate);
  CHECK(modes.plus.n.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(modes.minus.n.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(modes.plus.ex == cdouble(1.0, 0.0));
  CHECK(modes.minus.ey == cdouble(1.0, 0.0));
}

TEST_CASE("Faraday coefficients follow from the root pair") {
  const cdouble chi11(0.3, 0.0), chi12(0.0, 0.45);
  const auto chi = SusceptibilityTensor::faraday(chi11, chi12, 0.1);
  const auto dc = dispersion_coefficients(chi, kOmega);
  const double q = (kOmega / c) * (kOmega / c);
  CHECK(dc.alpha.real() ==
        doctest::Approx(-2.0 * q * 1.3).epsilon(1e-14));
  CHECK(dc.beta.real() ==
        doctest::Approx(q * q * (1.3 * 1.3 - 0.45 * 0.45)).epsilon(1e-14));
}

TEST_CASE("weak circular birefringence") {
  const auto modes = faraday_modes(0.0, cdouble(0.0, 0.0002), kOmega);
  CHECK(modes.plus.n.real() ==
        doctest::Approx(std::sqrt(1.0002)).epsilon(1e-15));
  CHECK(modes.minus.n.real() ==
        doctest::Approx(std::sqrt(0.9998)).epsilon(1e-15));
  CHECK(std::abs(modes.r_plus() - cdouble(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(modes.r_minus() - cdouble(0.0, 1.0)) < 1e-14);
  CHECK_FALSE(modes.plus.evanescent);
  CHECK_FALSE(modes.minus.evanescent);

  // Jones vectors [1, r+] and [1, r-] are orthogonal
  const cdouble dot = 1.0 + modes.r_plus() * std::conj(modes.r_minus());
  CHECK(std::abs(dot) < 1e-14);
}

TEST_CASE("strong coupling makes the minus branch evanescent") {
  const auto modes = faraday_modes(0.0, cdouble(0.0, 1.2), kOmega);
  CHECK(modes.plus.k.real() ==
        doctest::Approx(std::sqrt(2.2) * kOmega / c).epsilon(1e-14));
  CHECK(modes.minus.k.real() == 0.0);
  CHECK(modes.minus.k.imag() ==
        doctest::Approx(std::sqrt(0.2) * kOmega / c).epsilon(1e-14));
  CHECK(modes.minus.evanescent);
  CHECK_FALSE(modes.plus.evanescent);
}

TEST_CASE("evanescence threshold is flagged as cutoff") {
  // 1 + chi11 = -|chi12| zeroes the plus branch, +|chi12| the minus one
  const auto upper = faraday_modes(-1.0 - 0.3, cdouble(0.0, 0.3), kOmega);
  CHECK(upper.plus.cutoff);
  CHECK(std::abs(upper.plus.k) < 1e-7 * kOmega / c);
  const auto lower = faraday_modes(0.3 - 1.0, cdouble(0.0, 0.3), kOmega);
  CHECK(lower.minus.cutoff);
  CHECK(std::abs(lower.minus.k) < 1e-7 * kOmega / c);
}

TEST_CASE("handedness swaps for negative Im(chi12)") {
  const auto modes = faraday_modes(0.0, cdouble(0.0, -0.3), kOmega);
  CHECK(std::abs(modes.r_plus() - cdouble(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(modes.r_minus() - cdouble(0.0, -1.0)) < 1e-14);
}

TEST_CASE("sweep-point quartic matches the determinant oracle") {
  // tensor frozen from the Lorentz model at omega/w0 = 0.98, wp = 0.84,
  // wcx = 2.0, wcz = 2.65 (values produced by the matrix-inverse oracle)
  SusceptibilityTensor chi;
  chi(0, 0) = 6.46443081377996887e+00;
  chi(0, 1) = {0.0, -1.73126122362076501e-01};
  chi(0, 2) = 8.56886868256740541e+00;
  chi(1, 0) = {0.0, 1.73126122362076501e-01};
  chi(1, 1) = -2.63989004448911962e-03;
  chi(1, 2) = {0.0, -1.30661224424208688e-01};
  chi(2, 0) = 8.56886868256740541e+00;
  chi(2, 1) = {0.0, 1.30661224424208661e-01};
  chi(2, 2) = 1.13511111143573231e+01;

  const double omega = 0.98; // omega0-scaled units
  const auto dc = dispersion_coefficients(chi, omega);
  const double q = (omega / c) * (omega / c);

  // frozen determinant-oracle values
  CHECK((dc.alpha / q).real() ==
        doctest::Approx(-2.51555805653371589).epsilon(1e-12));
  CHECK((dc.beta / (q * q)).real() ==
        doctest::Approx(1.44389078742629007).epsilon(1e-12));
  CHECK(std::abs((dc.alpha / q).imag()) < 1e-14);

  // live oracle agreement
  const auto [alpha, beta] = oracles::quartic_by_determinant(chi, omega);
  CHECK(std::abs(dc.alpha - alpha) < 1e-10 * std::abs(alpha));
  CHECK(std::abs(dc.beta - beta) < 1e-10 * std::abs(beta));
}

TEST_CASE("mode vectors satisfy the full 3x3 wave equation") {
  // includes the longitudinal component, so this exercises the E_z
  // elimination end to end
  SusceptibilityTensor chi;
  chi(0, 0) = 6.46443081377996887e+00;
  chi(0, 1) = {0.0, -1.73126122362076501e-01};
  chi(0, 2) = 8.56886868256740541e+00;
  chi(1, 0) = {0.0, 1.73126122362076501e-01};
  chi(1, 1) = -2.63989004448911962e-03;
  chi(1, 2) = {0.0, -1.30661224424208688e-01};
  chi(2, 0) = 8.56886868256740541e+00;
  chi(2, 1) = {0.0, 1.30661224424208661e-01};
  chi(2, 2) = 1.13511111143573231e+01;

  const double omega = 0.98;
  const double q = (omega / c) * (omega / c);
  const auto modes = propagation_modes(chi, omega);
  for (const Mode* m : {&modes.plus, &modes.minus}) {
    const cdouble e[3] = {m->ex, m->ey, m->ez};
    const cdouble ksq = m->k * m->k;
    double residual = 0.0;
    for (int r = 0; r < 3; ++r) {
      cdouble row = q * e[r];
      for (int cc = 0; cc < 3; ++cc) row += q * chi(r, cc) * e[cc];
      if (r < 2) row -= ksq * e[r];
      residual = std::max(residual, std::abs(row));
    }
    CHECK(residual < 1e-10 * q * (1.0 + chi.max_abs()));
  }
}

TEST_CASE("quartic residual over random Hermitian tensors") {
  std::mt19937 rng(11);
  int accepted = 0;
  while (accepted < 10000) {
    const auto chi = random_hermitian(rng);
    if (std::abs(1.0 + chi(2, 2)) < 0.05) continue;
    const auto dc = dispersion_coefficients(chi, kOmega);
    PropagationModes modes;
    try {
      modes = propagation_modes(chi, kOmega);
    } catch (const std::logic_error&) {
      continue; // ill-conditioned draw rejected by the row cross-check
    }
    if (modes.degenerate) continue;
    if (std::abs(dc.beta) < 1e-8 * std::pow(kOmega / c, 4)) continue;
    ++accepted;
    for (const Mode* m : {&modes.plus, &modes.minus}) {
      const cdouble k2 = m->k * m->k;
      const cdouble res = k2 * k2 + dc.alpha * k2 + dc.beta;
      CHECK(std::abs(res) < 1e-10 * std::abs(dc.beta));
    }
    // Hermitian tensors have real k^2 pairs: either real-positive k or
    // purely imaginary k
    for (const Mode* m : {&modes.plus, &modes.minus}) {
      const bool real_pos = m->k.imag() == 0.0 && m->k.real() > 0.0;
      const bool imag_pos = std::abs(m->k.real()) <= 1e-10 * std::abs(m->k) &&
                            m->k.imag() > 0.0;
      CHECK((real_pos || imag_pos || m->cutoff));
    }
  }
}

TEST_CASE("general solver equals the Faraday closed form") {
  // |chi12| stays above 0.05: the discriminant cancellation noise in the
  // quartic route scales like eps (1+chi11)^2/|chi12|^2 and would otherwise
  // dominate the 1e-12 agreement bound
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u11(-1.5, 1.5);
  std::uniform_real_distribution<double> u12(0.05, 1.2);
  std::uniform_real_distribution<double> sgn(0.0, 1.0);
  const double koc = kOmega / c;
  int accepted = 0;
  while (accepted < 10000) {
    const double chi11 = u11(rng);
    double im12 = u12(rng);
    if (sgn(rng) < 0.5) im12 = -im12;
    // keep clear of the degenerate and cutoff thresholds
    if (std::abs(1.0 + chi11 - std::abs(im12)) < 0.01) continue;
    if (std::abs(1.0 + chi11 + std::abs(im12)) < 0.01) continue;
    ++accepted;

    const cdouble chi12(0.0, im12);
    const auto chi = SusceptibilityTensor::faraday(chi11, chi12);
    const auto general = propagation_modes(chi, kOmega);
    const auto closed = faraday_modes(chi11, chi12, kOmega);

    CHECK(std::abs(general.plus.k - closed.plus.k) < 1e-12 * koc);
    CHECK(std::abs(general.minus.k - closed.minus.k) < 1e-12 * koc);
    CHECK(std::abs(general.r_plus() - closed.r_plus()) < 1e-12);
    CHECK(std::abs(general.r_minus() - closed.r_minus()) < 1e-12);
  }
}

TEST_CASE("polarization ellipses") {
  SUBCASE("circular") {
    const auto el = ellipse_from_ratio({0.0, -1.0});
    CHECK(el.eccentricity == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(el.handedness == PolarizationEllipse::Handedness::right);
  }
  SUBCASE("linear") {
    const auto el = ellipse_from_ratio({0.0, 0.0});
    CHECK(el.eccentricity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(el.handedness == PolarizationEllipse::Handedness::linear);
  }
  SUBCASE("elliptic") {
    const auto el = ellipse_from_ratio({0.0, 0.5});
    CHECK(el.semi_major == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(el.semi_minor == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(el.eccentricity ==
          doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
    CHECK(el.handedness == PolarizationEllipse::Handedness::left);
  }
  SUBCASE("eccentricity stays in [0,1] for random ratios") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
      const auto el = ellipse_from_ratio({u(rng), u(rng)});
      CHECK(el.eccentricity >= 0.0);
      CHECK(el.eccentricity <= 1.0);
      CHECK(el.semi_major >= el.semi_minor);
    }
  }
  SUBCASE("y-polarized vector") {
    const auto el = ellipse_from_jones(0.0, 1.0);
    CHECK(el.eccentricity == doctest::Approx(1.0));
  }
}

TEST_CASE("group velocities") {
  SUBCASE("vacuum") {
    const auto modes = faraday_modes(0.0, cdouble(0.0, 0.0), kOmega);
    const auto [vp, vm] = group_velocities(modes, kOmega);
    CHECK(vp == doctest::Approx(c).epsilon(1e-15));
    CHECK(vm == doctest::Approx(c).epsilon(1e-15));
  }
  SUBCASE("chi12 = 0.08i") {
    const auto modes = faraday_modes(0.0, cdouble(0.0, 0.08), kOmega);
    const auto [vp, vm] = group_velocities(modes, kOmega);
    CHECK(vp / c == doctest::Approx(1.0 / std::sqrt(1.08)).epsilon(1e-12));
    CHECK(vm / c == doctest::Approx(1.0 / std::sqrt(0.92)).epsilon(1e-12));
  }
  SUBCASE("splitting time from the velocity difference") {
    // 2 sigma_z / |v+ - v-| approaches 2 sigma_t / |chi12| as chi12 -> 0
    const double mag = 1e-4;
    const auto modes = faraday_modes(0.0, cdouble(0.0, mag), kOmega);
    const auto [vp, vm] = group_velocities(modes, kOmega);
    const double sigma_z = 30e-6;
    const double by_velocity = 2.0 * sigma_z / std::abs(vp - vm);
    const double closed = 2.0 * (sigma_z / c) / mag;
    CHECK(by_velocity / closed == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("evanescent branch refuses") {
    const auto modes = faraday_modes(0.0, cdouble(0.0, 1.2), kOmega);
    CHECK_THROWS_AS(group_velocities(modes, kOmega), EvanescentMode);
  }
}

TEST_CASE("longitudinal degeneracy") {
  SUBCASE("rejected when E_z is coupled") {
    auto chi = SusceptibilityTensor::zero();
    chi(2, 2) = -1.0;
    chi(0, 2) = {0.0, 0.1};
    chi(2, 0) = {0.0, -0.1};
    CHECK_THROWS_AS(dispersion_coefficients(chi, kOmega),
                    DegenerateLongitudinal);
  }
  SUBCASE("tolerated for a decoupled Faraday tensor") {
    // gamma3 = 0 happens at the longitudinal plasma resonance; the
    // transverse modes stay well defined there
    const auto chi = SusceptibilityTensor::faraday(0.2, cdouble(0.0, 0.4),
                                                   cdouble(-1.0, 0.0));
    const auto modes = propagation_modes(chi, kOmega);
    CHECK(modes.plus.n.real() ==
          doctest::Approx(std::sqrt(1.6)).epsilon(1e-13));
    CHECK(std::abs(modes.plus.ez) == 0.0);
  }
}
