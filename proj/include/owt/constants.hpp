#pragma once

#include <numbers>

// CODATA 2018 values, SI units.
namespace owt::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
inline constexpr double vacuum_permeability = 1.25663706212e-6;
inline constexpr double planck = 6.62607015e-34;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double bohr_magneton = 9.2740100783e-24;
inline constexpr double boltzmann = 1.380649e-23;
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double bohr_radius = 5.29177210903e-11;
inline constexpr double atomic_mass_unit = 1.66053906660e-27;

inline constexpr double gauss = 1e-4;  // T
inline constexpr double nanometre = 1e-9;

}  // namespace owt::constants
