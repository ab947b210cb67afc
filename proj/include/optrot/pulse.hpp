#pragma once

#include <utility>
#include <vector>

#include "optrot/interface.hpp"

namespace optrot {

/// Gaussian spectral amplitude A(k) = sqrt(sigma_z) (2/pi)^{1/4}
/// exp(-(k-k0)^2 sigma_z^2) exp(-i k z0), normalised so that
/// \int dk |A|^2 = 1.
struct PulseSpec {
  double k0 = 0.0;      // central wavenumber (rad/m)
  double sigma_z = 0.0; // spatial width (m)
  double z0 = 0.0;      // initial centre (m), z0 < 0

  double sigma_k() const { return 0.5 / sigma_z; }
  double sigma_t() const;
  double omega0() const;

  static PulseSpec from_wavelength(double lambda0, double sigma_t, double z0);
  void validate() const;
};

cdouble spectral_amplitude(const PulseSpec& spec, double k);

/// Frequency-independent medium response across the pulse band: the
/// susceptibility is treated as constant, so the refraction indices and the
/// matching amplitudes do not depend on k and the harmonic solution for any
/// k follows by scaling k_pm = k n_pm.
struct HarmonicFamily {
  cdouble n_plus{1.0, 0.0}, n_minus{1.0, 0.0};
  cdouble ey_plus{0.0, -1.0}, ey_minus{0.0, 1.0};
  cdouble R11{0.0}, R21{0.0};
  cdouble C_plus{0.5}, C_minus{0.5};
  bool evanescent_plus = false, evanescent_minus = false;

  static HarmonicFamily vacuum();
  /// Builds modes and interface amplitudes at the carrier frequency omega0.
  /// Requires an isotropic or Faraday-form tensor.
  static HarmonicFamily from_susceptibility(const SusceptibilityTensor& chi,
                                            double omega0);
  InterfaceSolution interface_at(double k) const;

  /// Rotation length 2*pi/Re(k+ - k-) at wavenumber k0, infinite when the
  /// beat is absent (degenerate or filtered).
  double rotation_length(double k0) const;
};

/// Harmonic stationary solution F_k(z) for vertically polarized incidence:
/// incident + reflected for z < 0, the two-mode superposition for z >= 0.
std::pair<cdouble, cdouble> harmonic_profile(const InterfaceSolution& sol,
                                             double z);

struct FieldGridRequest {
  double z_min = 0.0, z_max = 0.0, dz = 0.0;
  double t_min = 0.0, t_max = 0.0, dt = 0.0;
};

struct FieldSample {
  cdouble Ex, Ey;
  double z, t;
};

struct FieldGrid {
  std::vector<double> z; // uniform
  std::vector<double> t; // uniform
  std::vector<cdouble> Ex, Ey; // row-major, index it*nz + iz

  std::size_t nz() const { return z.size(); }
  std::size_t nt() const { return t.size(); }
  std::size_t idx(std::size_t it, std::size_t iz) const {
    return it * z.size() + iz;
  }
  FieldSample sample(std::size_t it, std::size_t iz) const {
    return {Ex[idx(it, iz)], Ey[idx(it, iz)], z[iz], t[it]};
  }
};

struct QuadratureConfig {
  double band_sigmas = 8.0; // half-width of the k band in units of sigma_k
  int panel_order = 10;     // Gauss-Legendre points per panel
  int min_panels = 32;
  int max_panels = 1 << 15;
  double rel_tol = 1e-6;    // node-doubling stability criterion
};

/// Evaluates E(z,t) = (2 pi)^{-1/2} \int dk A(k) F_k(z) e^{-i c k t} by
/// composite Gauss-Legendre quadrature over the truncated band
/// [k0 - W, k0 + W].  The panel count is doubled until no |E| value moves by
/// more than rel_tol of the field maximum; throws QuadratureNotConverged at
/// max_panels.
FieldGrid synthesize_field(const PulseSpec& spec, const HarmonicFamily& fam,
                           const FieldGridRequest& req,
                           const QuadratureConfig& quad = {}, int threads = 1);

/// (E+, E-) = ((Ex + i Ey)/sqrt(2), (Ex - i Ey)/sqrt(2)).
std::pair<cdouble, cdouble> circular_components(cdouble Ex, cdouble Ey);

struct SpaceTimePoint {
  double z, t;
};

/// Same integral evaluated at scattered (z, t) points, with the doubling
/// criterion applied over the point set.
std::vector<FieldSample> synthesize_points(const PulseSpec& spec,
                                           const HarmonicFamily& fam,
                                           const std::vector<SpaceTimePoint>& pts,
                                           const QuadratureConfig& quad = {},
                                           int threads = 1);

} // namespace optrot
