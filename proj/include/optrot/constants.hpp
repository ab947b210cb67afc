#pragma once

namespace optrot::constants {

inline constexpr double c = 299792458.0;            // m/s
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double m_e = 9.1093837015e-31;     // kg
inline constexpr double e_charge = 1.602176634e-19; // C
inline constexpr double pi = 3.14159265358979323846;

} // namespace optrot::constants
