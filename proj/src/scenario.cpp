#include "optrot/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "optrot/constants.hpp"
#include "optrot/errors.hpp"

namespace optrot {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double_strict(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty number at line " + std::to_string(line));
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw ParseError("bad number '" + t + "' at line " + std::to_string(line));
  return v;
}

int parse_int_strict(const std::string& text, int line) {
  const double v = parse_double_strict(text, line);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ParseError("expected integer at line " + std::to_string(line));
  return i;
}

std::vector<double> parse_list(const std::string& text, int line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double_strict(item, line));
  if (out.empty())
    throw ParseError("empty list at line " + std::to_string(line));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt(v[i]);
  }
  return s;
}

} // namespace

cdouble parse_complex(const std::string& text) {
  std::string t = trim(text);
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          t.end());
  if (t.empty()) throw ParseError("empty complex literal");

  auto as_double = [](const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
  };

  double re = 0.0;
  if (as_double(t, re)) return {re, 0.0};

  if (t.back() != 'i' && t.back() != 'I')
    throw ParseError("bad complex literal '" + text + "'");
  const std::string body = t.substr(0, t.size() - 1);

  // purely imaginary: "i", "-i", "0.2i"
  double im = 0.0;
  if (body.empty() || body == "+") return {0.0, 1.0};
  if (body == "-") return {0.0, -1.0};
  if (as_double(body, im)) return {0.0, im};

  // a+bi: split at the last +/- that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    const char c = body[p];
    if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos)
    throw ParseError("bad complex literal '" + text + "'");
  std::string re_s = body.substr(0, split);
  std::string im_s = body.substr(split);
  if (im_s == "+") im_s = "1";
  if (im_s == "-") im_s = "-1";
  if (!as_double(re_s, re) || !as_double(im_s, im))
    throw ParseError("bad complex literal '" + text + "'");
  return {re, im};
}

std::string format_complex(cdouble v) {
  if (v.imag() == 0.0) return fmt(v.real());
  if (v.real() == 0.0) return fmt(v.imag()) + "i";
  return fmt(v.real()) + (v.imag() >= 0.0 ? "+" : "") + fmt(v.imag()) + "i";
}

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  bool any_key = false;
  bool medium_set = false;
  bool chi_seen = false, lorentz_seen = false;

  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("missing '=' at line " + std::to_string(line));
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ParseError("missing key at line " + std::to_string(line));
    if (val.empty())
      throw ParseError("missing value at line " + std::to_string(line));
    any_key = true;

    auto num = [&] { return parse_double_strict(val, line); };
    auto integer = [&] { return parse_int_strict(val, line); };

    if (key == "preset_name") {
      cfg.preset_name = val;
    } else if (key == "medium") {
      medium_set = true;
      if (val == "chi")
        cfg.medium = MediumMode::direct_chi;
      else if (val == "lorentz")
        cfg.medium = MediumMode::lorentz;
      else
        throw ParseError("medium must be 'chi' or 'lorentz' at line " +
                         std::to_string(line));
    } else if (key == "chi11") {
      cfg.chi11 = parse_complex(val);
      chi_seen = true;
    } else if (key == "chi12") {
      cfg.chi12 = parse_complex(val);
      chi_seen = true;
    } else if (key == "chi33") {
      cfg.chi33 = parse_complex(val);
      chi_seen = true;
    } else if (key == "omega_ratio") {
      cfg.omega_ratio = num();
      lorentz_seen = true;
    } else if (key == "omega_p_ratio") {
      cfg.omega_p_ratio = num();
      lorentz_seen = true;
    } else if (key == "omega_cx_ratio") {
      cfg.omega_cx_ratio = num();
      lorentz_seen = true;
    } else if (key == "omega_cy_ratio") {
      cfg.omega_cy_ratio = num();
      lorentz_seen = true;
    } else if (key == "omega_cz_ratio") {
      cfg.omega_cz_ratio = num();
      lorentz_seen = true;
    } else if (key == "gamma_ratio") {
      cfg.gamma_ratio = num();
      lorentz_seen = true;
    } else if (key == "lambda0_um") {
      cfg.lambda0_um = num();
    } else if (key == "sigma_t_fs") {
      cfg.sigma_t_fs = num();
    } else if (key == "z0_um") {
      cfg.z0_um = num();
    } else if (key == "z_min_um") {
      cfg.z_min_um = num();
    } else if (key == "z_max_um") {
      cfg.z_max_um = num();
    } else if (key == "dz_um") {
      cfg.dz_um = num();
    } else if (key == "t_min_fs") {
      cfg.t_min_fs = num();
    } else if (key == "t_max_fs") {
      cfg.t_max_fs = num();
    } else if (key == "dt_fs") {
      cfg.dt_fs = num();
    } else if (key == "positions_um") {
      cfg.positions_um = parse_list(val, line);
    } else if (key == "snapshot_times_fs") {
      cfg.snapshot_times_fs = parse_list(val, line);
    } else if (key == "map_omega_min") {
      cfg.map_omega_min = num();
    } else if (key == "map_omega_max") {
      cfg.map_omega_max = num();
    } else if (key == "map_omega_n") {
      cfg.map_omega_n = integer();
    } else if (key == "map_wcz_min") {
      cfg.map_wcz_min = num();
    } else if (key == "map_wcz_max") {
      cfg.map_wcz_max = num();
    } else if (key == "map_wcz_n") {
      cfg.map_wcz_n = integer();
    } else if (key == "scan_wcx_min") {
      cfg.scan_wcx_min = num();
    } else if (key == "scan_wcx_max") {
      cfg.scan_wcx_max = num();
    } else if (key == "scan_wcx_n") {
      cfg.scan_wcx_n = integer();
    } else if (key == "scan_wcz_min") {
      cfg.scan_wcz_min = num();
    } else if (key == "scan_wcz_max") {
      cfg.scan_wcz_max = num();
    } else if (key == "scan_wcz_n") {
      cfg.scan_wcz_n = integer();
    } else {
      throw ParseError("unknown key '" + key + "' at line " +
                       std::to_string(line));
    }
  }

  if (!any_key) throw ParseError("scenario file is empty");
  if (!medium_set) throw ValidationError("medium: missing");
  if (cfg.medium == MediumMode::direct_chi && lorentz_seen)
    throw ValidationError("medium: lorentz keys present in a chi scenario");
  if (cfg.medium == MediumMode::lorentz && chi_seen)
    throw ValidationError("medium: chi keys present in a lorentz scenario");
  if (cfg.medium == MediumMode::lorentz && !cfg.omega_p_ratio)
    throw ValidationError("omega_p_ratio: required in lorentz mode");
  if (cfg.medium == MediumMode::direct_chi) {
    if (!cfg.lambda0_um) throw ValidationError("lambda0_um: required");
    if (!cfg.sigma_t_fs) throw ValidationError("sigma_t_fs: required");
    if (!cfg.z0_um) throw ValidationError("z0_um: required");
    if (*cfg.lambda0_um <= 0.0) throw ValidationError("lambda0_um: must be > 0");
    if (*cfg.sigma_t_fs <= 0.0) throw ValidationError("sigma_t_fs: must be > 0");
    if (*cfg.z0_um >= 0.0) throw ValidationError("z0_um: must be < 0");
  }
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::string out;
  out += "# optrot scenario (lengths um, times fs, lorentz frequencies as\n";
  out += "# ratios to omega0)\n";
  auto kv = [&](const char* k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  };
  if (!cfg.preset_name.empty()) kv("preset_name", cfg.preset_name);
  kv("medium", cfg.medium == MediumMode::direct_chi ? "chi" : "lorentz");
  if (cfg.medium == MediumMode::direct_chi) {
    kv("chi11", format_complex(cfg.chi11));
    kv("chi12", format_complex(cfg.chi12));
    if (cfg.chi33 != cdouble(0.0, 0.0)) kv("chi33", format_complex(cfg.chi33));
  } else {
    if (cfg.omega_ratio) kv("omega_ratio", fmt(*cfg.omega_ratio));
    kv("omega_p_ratio", fmt(*cfg.omega_p_ratio));
    if (cfg.omega_cx_ratio != 0.0) kv("omega_cx_ratio", fmt(cfg.omega_cx_ratio));
    if (cfg.omega_cy_ratio != 0.0) kv("omega_cy_ratio", fmt(cfg.omega_cy_ratio));
    if (cfg.omega_cz_ratio != 0.0) kv("omega_cz_ratio", fmt(cfg.omega_cz_ratio));
    if (cfg.gamma_ratio != 0.0) kv("gamma_ratio", fmt(cfg.gamma_ratio));
  }
  if (cfg.lambda0_um) kv("lambda0_um", fmt(*cfg.lambda0_um));
  if (cfg.sigma_t_fs) kv("sigma_t_fs", fmt(*cfg.sigma_t_fs));
  if (cfg.z0_um) kv("z0_um", fmt(*cfg.z0_um));
  if (cfg.z_min_um) kv("z_min_um", fmt(*cfg.z_min_um));
  if (cfg.z_max_um) kv("z_max_um", fmt(*cfg.z_max_um));
  if (cfg.dz_um) kv("dz_um", fmt(*cfg.dz_um));
  if (cfg.t_min_fs) kv("t_min_fs", fmt(*cfg.t_min_fs));
  if (cfg.t_max_fs) kv("t_max_fs", fmt(*cfg.t_max_fs));
  if (cfg.dt_fs) kv("dt_fs", fmt(*cfg.dt_fs));
  if (!cfg.positions_um.empty()) kv("positions_um", fmt_list(cfg.positions_um));
  if (!cfg.snapshot_times_fs.empty())
    kv("snapshot_times_fs", fmt_list(cfg.snapshot_times_fs));
  if (cfg.map_omega_min) kv("map_omega_min", fmt(*cfg.map_omega_min));
  if (cfg.map_omega_max) kv("map_omega_max", fmt(*cfg.map_omega_max));
  if (cfg.map_omega_n) kv("map_omega_n", std::to_string(cfg.map_omega_n));
  if (cfg.map_wcz_min) kv("map_wcz_min", fmt(*cfg.map_wcz_min));
  if (cfg.map_wcz_max) kv("map_wcz_max", fmt(*cfg.map_wcz_max));
  if (cfg.map_wcz_n) kv("map_wcz_n", std::to_string(cfg.map_wcz_n));
  if (cfg.scan_wcx_min) kv("scan_wcx_min", fmt(*cfg.scan_wcx_min));
  if (cfg.scan_wcx_max) kv("scan_wcx_max", fmt(*cfg.scan_wcx_max));
  if (cfg.scan_wcx_n) kv("scan_wcx_n", std::to_string(cfg.scan_wcx_n));
  if (cfg.scan_wcz_min) kv("scan_wcz_min", fmt(*cfg.scan_wcz_min));
  if (cfg.scan_wcz_max) kv("scan_wcz_max", fmt(*cfg.scan_wcz_max));
  if (cfg.scan_wcz_n) kv("scan_wcz_n", std::to_string(cfg.scan_wcz_n));
  return out;
}

SusceptibilityTensor ScenarioConfig::tensor() const {
  if (medium != MediumMode::direct_chi)
    throw ValidationError("tensor(): scenario is not in chi mode");
  return SusceptibilityTensor::faraday(chi11, chi12, chi33);
}

LorentzMedium ScenarioConfig::lorentz_medium() const {
  if (medium != MediumMode::lorentz)
    throw ValidationError("lorentz_medium(): scenario is not in lorentz mode");
  LorentzMedium med;
  med.omega0 = 1.0;
  med.omega_p = omega_p_ratio.value();
  med.omega_c = {omega_cx_ratio, omega_cy_ratio, omega_cz_ratio};
  med.gamma = gamma_ratio;
  return med;
}

PulseSpec ScenarioConfig::pulse() const {
  return PulseSpec::from_wavelength(lambda0_um.value() * 1e-6,
                                    sigma_t_fs.value() * 1e-15,
                                    z0_um.value() * 1e-6);
}

namespace {

const std::map<std::string, std::string>& preset_map() {
  // Bundled figure scenarios.  chi12 magnitudes are stored as i|chi12| so
  // the tensor keeps its required Re(chi12) = 0 form.
  static const std::map<std::string, std::string> presets = {
      {"fig1",
       "preset_name = fig1\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 0.0002i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 100\n"
       "z0_um = -600\n"
       "t_min_fs = 0\n"
       "t_max_fs = 21000\n"
       "dt_fs = 150\n"},
      {"fig2",
       "preset_name = fig2\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 0.0002i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 100\n"
       "z0_um = -600\n"
       "t_min_fs = 0\n"
       "t_max_fs = 19500\n"
       "dt_fs = 25\n"
       "positions_um = 1241,2492,3742,4993\n"
       "snapshot_times_fs = 6200,10368,14536,18704\n"},
      {"fig3",
       "preset_name = fig3\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 0.002i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 600\n"
       "z0_um = -600\n"
       "t_min_fs = 2000\n"
       "t_max_fs = 7000\n"
       "dt_fs = 40\n"},
      {"fig4",
       "preset_name = fig4\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 0.08i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 100\n"
       "z0_um = -600\n"
       "t_min_fs = 1500\n"
       "t_max_fs = 9000\n"
       "dt_fs = 75\n"},
      {"fig5",
       "preset_name = fig5\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 0.08i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 100\n"
       "z0_um = -600\n"
       "t_min_fs = 2000\n"
       "t_max_fs = 14000\n"
       "dt_fs = 20\n"
       "positions_um = 741,1341,1941,2541,3141\n"},
      {"fig6",
       "preset_name = fig6\n"
       "medium = chi\n"
       "chi11 = 0\n"
       "chi12 = 1.2i\n"
       "lambda0_um = 0.5\n"
       "sigma_t_fs = 100\n"
       "z0_um = -600\n"
       "t_min_fs = 1500\n"
       "t_max_fs = 5000\n"
       "dt_fs = 50\n"},
      {"fig7",
       "preset_name = fig7\n"
       "medium = lorentz\n"
       "omega_ratio = 0.98\n"
       "omega_p_ratio = 0.84\n"
       "omega_cz_ratio = 2.65\n"
       "scan_wcx_min = 0\n"
       "scan_wcx_max = 3.98\n"
       "scan_wcx_n = 200\n"},
      {"fig8",
       "preset_name = fig8\n"
       "medium = lorentz\n"
       "omega_p_ratio = 0.84\n"
       "map_omega_min = 0.85\n"
       "map_omega_max = 1.45\n"
       "map_omega_n = 200\n"
       "map_wcz_min = 0\n"
       "map_wcz_max = 3\n"
       "map_wcz_n = 200\n"},
      {"fig9",
       "preset_name = fig9\n"
       "medium = lorentz\n"
       "omega_ratio = 1.4142135623730951\n"
       "omega_p_ratio = 1\n"
       "scan_wcz_min = 0.005\n"
       "scan_wcz_max = 0.705\n"
       "scan_wcz_n = 200\n"},
      {"fig10",
       "preset_name = fig10\n"
       "medium = lorentz\n"
       "omega_ratio = 1.4142135623730951\n"
       "omega_p_ratio = 1\n"
       "scan_wcz_min = 0.005\n"
       "scan_wcz_max = 0.705\n"
       "scan_wcz_n = 200\n"},
  };
  return presets;
}

} // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : preset_map()) v.push_back(k);
    return v;
  }();
  return names;
}

const std::string& preset_text(const std::string& name) {
  const auto& m = preset_map();
  const auto it = m.find(name);
  if (it == m.end()) throw ValidationError("unknown preset '" + name + "'");
  return it->second;
}

ScenarioConfig load_preset(const std::string& name) {
  return parse_scenario(preset_text(name));
}

} // namespace optrot
