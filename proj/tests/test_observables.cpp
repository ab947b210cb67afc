#include <doctest.h>

#include <cmath>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"
#include "optrot/observables.hpp"

using namespace optrot;
using constants::c;
using constants::pi;

namespace {

PulseSpec fig1_pulse(double sigma_t_fs = 100.0) {
  return PulseSpec::from_wavelength(500e-9, sigma_t_fs * 1e-15, -600e-6);
}

const double kOmega = fig1_pulse().omega0();

} // namespace

TEST_CASE("rotation scales") {
  SUBCASE("fig-4 parameters give the 4.5 ps transition") {
    const auto s = rotation_scales(cdouble(0.0, 0.08), kOmega, fig1_pulse());
    CHECK(s.delta_t == doctest::Approx(2.5e-12).epsilon(1e-12));
    CHECK(s.t_transition == doctest::Approx(4.5e-12).epsilon(1e-3));
  }
  SUBCASE("weak-rotation period and length") {
    const auto s = rotation_scales(cdouble(0.0, 2e-4), kOmega, fig1_pulse());
    CHECK(s.T == doctest::Approx(2.0 * pi / (kOmega * 2e-4)).epsilon(1e-15));
    CHECK(s.T == doctest::Approx(8339.1e-15).epsilon(1e-4));
    CHECK(s.L == doctest::Approx(c * s.T).epsilon(1e-15));
    CHECK(s.L / 2.0 == doctest::Approx(1250.0e-6).epsilon(1e-3));
  }
  SUBCASE("doubling chi12 halves every scale") {
    const auto a = rotation_scales(cdouble(0.0, 1e-3), kOmega, fig1_pulse());
    const auto b = rotation_scales(cdouble(0.0, 2e-3), kOmega, fig1_pulse());
    CHECK(a.T == doctest::Approx(2.0 * b.T).epsilon(1e-14));
    CHECK(a.L == doctest::Approx(2.0 * b.L).epsilon(1e-14));
    CHECK(a.delta_t == doctest::Approx(2.0 * b.delta_t).epsilon(1e-14));
  }
}

TEST_CASE("regime classification") {
  SUBCASE("fig-1: oscillating") {
    const auto chi = SusceptibilityTensor::faraday(0.0, cdouble(0.0, 2e-4));
    const auto rep = classify_regime(chi, fig1_pulse(), kOmega, 21e-12);
    CHECK(rep.regime == Regime::oscillating);
    CHECK(rep.abs_chi12 == doctest::Approx(2e-4));
    CHECK(rep.ideal_lower_margin > 1.0);  // chi12 < sigma_k/k0
    CHECK(rep.ideal_upper_margin > 100.0); // sigma_k/k0 << 1
  }
  SUBCASE("fig-3 at 600 fs: averaged") {
    const auto chi = SusceptibilityTensor::faraday(0.0, cdouble(0.0, 2e-3));
    const auto rep = classify_regime(chi, fig1_pulse(600.0), kOmega, 8e-12);
    CHECK(rep.regime == Regime::averaged);
  }
  SUBCASE("fig-3 at 100 fs stays oscillating") {
    const auto chi = SusceptibilityTensor::faraday(0.0, cdouble(0.0, 2e-3));
    const auto rep = classify_regime(chi, fig1_pulse(100.0), kOmega, 8e-12);
    CHECK(rep.regime == Regime::oscillating);
  }
  SUBCASE("fig-4: split once the horizon passes the transition") {
    const auto chi = SusceptibilityTensor::faraday(0.0, cdouble(0.0, 0.08));
    const auto rep = classify_regime(chi, fig1_pulse(), kOmega, 9e-12);
    CHECK(rep.regime == Regime::split);
    CHECK(rep.t_transition == doctest::Approx(4.5e-12).epsilon(1e-3));
  }
  SUBCASE("fig-6: filtered") {
    const auto chi = SusceptibilityTensor::faraday(0.0, cdouble(0.0, 1.2));
    const auto rep = classify_regime(chi, fig1_pulse(), kOmega, 5e-12);
    CHECK(rep.regime == Regime::filtered);
    CHECK(rep.evanescent_minus);
  }
}

TEST_CASE("oscillation metrics") {
  SUBCASE("clean cosine") {
    std::vector<double> t, y;
    const double period = 2.0;
    for (int i = 0; i <= 400; ++i) {
      t.push_back(i * 0.025);
      y.push_back(0.5 + 0.4 * std::cos(2.0 * pi * t.back() / period));
    }
    const auto m = oscillation_metrics(t, y, 0.0, 10.0);
    CHECK(m.oscillating);
    CHECK(m.period == doctest::Approx(period).epsilon(1e-3));
    CHECK(m.amplitude == doctest::Approx(0.8).epsilon(1e-2));
    CHECK(m.extrema_times.size() >= 8);
  }
  SUBCASE("constant trace reports no oscillation") {
    std::vector<double> t, y;
    for (int i = 0; i <= 100; ++i) {
      t.push_back(i * 0.1);
      y.push_back(0.75);
    }
    const auto m = oscillation_metrics(t, y, 0.0, 10.0);
    CHECK_FALSE(m.oscillating);
    CHECK(m.amplitude == 0.0);
  }
}

TEST_CASE("grid observables on a synthesized field") {
  const auto spec = fig1_pulse();
  // chi12 = 0.01i keeps the rotation length near 50 um, so a short grid
  // already shows rotation
  const auto fam = HarmonicFamily::from_susceptibility(
      SusceptibilityTensor::faraday(0.0, cdouble(0.0, 0.01)), kOmega);

  FieldGridRequest req;
  req.z_min = 0.0;
  req.z_max = 1000e-6; // pulse front at t_max sits ~13 sigma_z short of this
  req.dz = std::min(spec.sigma_z, fam.rotation_length(spec.k0)) / 20.0;
  req.t_min = 1.6e-12;
  req.t_max = 4.0e-12;
  req.dt = 0.08e-12;
  const auto grid = synthesize_field(spec, fam, req, {}, 2);

  SUBCASE("basis identity and late-time norm") {
    const auto trace = integrated_intensities(grid);
    double settled = 0.0;
    for (std::size_t i = 0; i < trace.t.size(); ++i) {
      CHECK(std::abs(trace.I1[i] + trace.I2[i] - trace.Iplus[i] -
                     trace.Iminus[i]) < 1e-10);
      if (trace.t[i] > 3.0e-12)
        settled = trace.I1[i] + trace.I2[i];
    }
    // reflection is O(chi^2); the pulse energy settles near 1
    CHECK(settled == doctest::Approx(1.0).epsilon(1e-3));
  }

  SUBCASE("fixed positions see the arrival") {
    const auto traces = fixed_position_traces(grid, {200e-6});
    REQUIRE(traces.size() == 1);
    double tmax = 0.0, imax = 0.0;
    for (std::size_t i = 0; i < traces[0].t.size(); ++i) {
      const double tot = traces[0].I1[i] + traces[0].I2[i];
      if (tot > imax) {
        imax = tot;
        tmax = traces[0].t[i];
      }
    }
    // expected arrival |z0 + z|/c with n ~ 1
    CHECK(tmax ==
          doctest::Approx((600e-6 + 200e-6) / c).epsilon(0.03));
  }

  SUBCASE("snapshots interpolate in time") {
    const auto snaps = snapshots(grid, {2.5e-12});
    REQUIRE(snaps.size() == 1);
    double zpk = 0.0, ipk = 0.0;
    for (std::size_t iz = 0; iz < snaps[0].z.size(); ++iz) {
      const double tot = snaps[0].I1[iz] + snaps[0].I2[iz];
      if (tot > ipk) {
        ipk = tot;
        zpk = snaps[0].z[iz];
      }
    }
    CHECK(zpk == doctest::Approx(c * 2.5e-12 - 600e-6).epsilon(0.05));
  }

  SUBCASE("out-of-range requests are rejected") {
    CHECK_THROWS_AS(fixed_position_traces(grid, {5e-3}), OutOfRange);
    CHECK_THROWS_AS(snapshots(grid, {9e-12}), OutOfRange);
  }
}

TEST_CASE("truncated grids are rejected") {
  const auto spec = fig1_pulse();
  const auto fam = HarmonicFamily::vacuum();
  FieldGridRequest req;
  req.z_min = -700e-6;
  req.z_max = 100e-6; // t_max puts the pulse centre right at z_max
  req.dz = spec.sigma_z / 20.0;
  req.t_min = 2.3e-12;
  req.t_max = 2.3e-12;
  req.dt = 1e-15;
  const auto grid = synthesize_field(spec, fam, req, {}, 2);
  CHECK_THROWS_AS(integrated_intensities(grid), GridTruncation);
}
