#ifndef ACMRR_CONSTANTS_HPP
#define ACMRR_CONSTANTS_HPP

// Physical constants, CODATA 2018 (exact where the SI redefinition fixed them).
namespace acmrr::constants {

inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double h_planck = 6.62607015e-34;      // J s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double pi = 3.14159265358979323846;

inline constexpr double torr_to_pascal = 133.322368;
inline constexpr double atm_to_pascal = 101325.0;

}  // namespace acmrr::constants

#endif
