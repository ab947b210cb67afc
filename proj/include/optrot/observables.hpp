#pragma once

#include <vector>

#include "optrot/pulse.hpp"

namespace optrot {

/// Time series of the energies stored in the medium per polarization
/// component: I^(1,2) for the linear basis, I^(+,-) for the circular one.
struct IntensityTrace {
  std::vector<double> t;
  std::vector<double> I1, I2;
  std::vector<double> Iplus, Iminus;
};

/// Characteristic scales of the polarization rotation for a Faraday medium
/// with chi11 = 0 and |chi12| << 1.
struct RotationScales {
  double T;            // rotation period 2 pi / (omega |chi12|)  (s)
  double L;            // rotation length c T  (m)
  double delta_t;      // pulse splitting time 2 sigma_t / |chi12|  (s)
  double t_transition; // |z0|/c + delta_t  (s)
};

enum class Regime { oscillating, averaged, split, filtered };

const char* to_string(Regime r);

struct RegimeReport {
  Regime regime;
  double sigma_t_over_T;     // averaging diagnostic
  double sigma_k_over_k0;    // quasi-monochromaticity
  double abs_chi12;
  double ideal_lower_margin; // (sigma_k/k0) / |chi12|, > 1 in the ideal window
  double ideal_upper_margin; // k0 / sigma_k, >> 1 in the ideal window
  bool evanescent_minus;
  bool evanescent_plus;
  double t_transition;
};

struct PositionTrace {
  double z;
  std::vector<double> t;
  std::vector<double> I1, I2, Iplus, Iminus;
};

struct Snapshot {
  double t;
  std::vector<double> z;
  std::vector<double> I1, I2, Iplus, Iminus;
};

struct OscillationMetrics {
  bool oscillating = false;
  double period = 0.0;     // 2 x mean extremum spacing
  double amplitude = 0.0;  // mean |I(max) - I(min)| over adjacent extrema
  std::vector<double> extrema_times;
};

/// Spatial integrals of |Ex|^2, |Ey|^2, |E+|^2, |E-|^2 over z >= 0 for each
/// time sample (composite trapezoid, deterministic order).  Throws
/// GridTruncation when the field at z_max exceeds truncation_tol of the grid
/// peak at any sampled time.
IntensityTrace integrated_intensities(const FieldGrid& grid,
                                      double truncation_tol = 1e-6);

RotationScales rotation_scales(cdouble chi12, double omega,
                               const PulseSpec& spec);

/// Per-position time series, linear interpolation in z.
std::vector<PositionTrace> fixed_position_traces(
    const FieldGrid& grid, const std::vector<double>& positions);

/// Per-time z profiles, linear interpolation in t.
std::vector<Snapshot> snapshots(const FieldGrid& grid,
                                const std::vector<double>& times);

/// Assigns the dynamical regime for a Faraday tensor: filtered when k- is
/// evanescent; split when the observation horizon outlasts the transition
/// time; averaged when the entrance interval (4 sigma_t) covers a full
/// rotation period; oscillating otherwise.
RegimeReport classify_regime(const SusceptibilityTensor& chi,
                             const PulseSpec& spec, double omega,
                             double horizon);

/// Extrema located by local quadratic refinement on the sampled trace
/// restricted to [window_lo, window_hi].
OscillationMetrics oscillation_metrics(const std::vector<double>& t,
                                       const std::vector<double>& y,
                                       double window_lo, double window_hi,
                                       double noise_floor = 1e-6);

} // namespace optrot
