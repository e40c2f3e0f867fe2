#pragma once

namespace framedrag {

// Fundamental constants, SI units, CODATA 2018.
struct PhysicalConstants {
    double G = 6.67430e-11;          // gravitational constant [m^3 kg^-1 s^-2]
    double c = 299792458.0;          // speed of light [m/s]
    double hbar = 1.054571817e-34;   // reduced Planck constant [J s]
    double k_B = 1.380649e-23;       // Boltzmann constant [J/K]
    double eps0 = 8.8541878128e-12;  // vacuum permittivity [F/m]
    double mu0 = 1.25663706212e-6;   // vacuum permeability [N/A^2]
    double wien_b = 2.897771955e-3;  // Wien displacement constant [m K]
};

inline constexpr double elementary_charge = 1.602176634e-19;  // [C]
inline constexpr double atomic_mass_unit = 1.66053906892e-27; // [kg]

// H2 molecular mass (2.01588 g/mol)
inline constexpr double mass_h2 = 2.01588 * atomic_mass_unit;

} // namespace framedrag
