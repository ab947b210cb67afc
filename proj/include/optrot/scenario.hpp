#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optrot/medium.hpp"
#include "optrot/pulse.hpp"

namespace optrot {

enum class MediumMode { direct_chi, lorentz };

/// Parsed scenario file.  Lengths in micrometres, times in femtoseconds;
/// Lorentz-mode frequencies are ratios to omega0 (the solver runs with
/// omega0 = 1).
struct ScenarioConfig {
  std::string preset_name;

  MediumMode medium = MediumMode::direct_chi;
  cdouble chi11{0.0, 0.0};
  cdouble chi12{0.0, 0.0};
  cdouble chi33{0.0, 0.0};

  std::optional<double> omega_ratio;
  std::optional<double> omega_p_ratio;
  double omega_cx_ratio = 0.0;
  double omega_cy_ratio = 0.0;
  double omega_cz_ratio = 0.0;
  double gamma_ratio = 0.0;

  std::optional<double> lambda0_um;
  std::optional<double> sigma_t_fs;
  std::optional<double> z0_um;

  std::optional<double> z_min_um, z_max_um, dz_um;
  std::optional<double> t_min_fs, t_max_fs, dt_fs;

  std::vector<double> positions_um;
  std::vector<double> snapshot_times_fs;

  std::optional<double> map_omega_min, map_omega_max;
  int map_omega_n = 0;
  std::optional<double> map_wcz_min, map_wcz_max;
  int map_wcz_n = 0;

  std::optional<double> scan_wcx_min, scan_wcx_max;
  int scan_wcx_n = 0;
  std::optional<double> scan_wcz_min, scan_wcz_max;
  int scan_wcz_n = 0;

  bool operator==(const ScenarioConfig&) const = default;

  /// Tensor for a direct-chi scenario (Faraday form).
  SusceptibilityTensor tensor() const;
  /// Lorentz medium in omega0 = 1 units.
  LorentzMedium lorentz_medium() const;
  /// Pulse for a direct-chi scenario, SI units.
  PulseSpec pulse() const;
};

/// key = value text with '#' comments; unknown keys are errors.
ScenarioConfig parse_scenario(const std::string& text);

/// Canonical text that parses back to an identical config.
std::string serialize_scenario(const ScenarioConfig& cfg);

/// "a+bi" complex literal, also accepting pure-real and pure-imaginary forms.
cdouble parse_complex(const std::string& text);
std::string format_complex(cdouble v);

const std::vector<std::string>& preset_names();
/// Throws ValidationError for an unknown name.
const std::string& preset_text(const std::string& name);
ScenarioConfig load_preset(const std::string& name);

} // namespace optrot
