#pragma once

#include <complex>
#include <string>
#include <vector>

#include "framedrag/constants.hpp"

namespace framedrag {

struct SphereSpec {
    double radius = 50e-6;              // R [m]
    double density = 2200.0;            // rho [kg/m^3]
    double angular_velocity = 1e7;      // omega [rad/s]
    double relative_permittivity = 3.9; // eps_r at thermal wavelengths
    std::complex<double> refractive_index{1.47, 0.01 * 300e-9 / (4.0 * 3.14159265358979323846)};
    double magnetic_susceptibility = -1.13e-5; // chi_V (negative for silica)
    double gyromagnetic_ratio = 8e6;    // gamma [rad s^-1 T^-1]
};

struct ExperimentConfig {
    SphereSpec sphere_a;
    SphereSpec sphere_b;
    double separation = 200e-6;         // r, center to center [m]
    double bath_temperature = 0.6;      // T [K]
    double gas_pressure = 1e-17;        // P [Pa]
    double gas_molecule_mass = mass_h2; // [kg]
    double magnetic_field = 1.0;        // B [T]
    double field_gradient = 1e6;        // G0 [T/m]
    PhysicalConstants constants;
};

// All scalar scales derived from an ExperimentConfig. Couplings follow
// g(t) = alpha t l_A l_B / 2 and kappa(m,t) = alpha t m^2 / 2.
struct DerivedScales {
    double mass_a = 0, mass_b = 0;          // M [kg]
    double inertia_a = 0, inertia_b = 0;    // I [kg m^2]
    double ang_mom_a = 0, ang_mom_b = 0;    // L = I omega [J s]
    double l_a = 0, l_b = 0;                // quantum number L/hbar
    double alpha = 0;                       // G hbar / (c^2 r^3) [1/s]
    double v_g = 0;                         // alpha hbar l_a l_b [J]

    double coupling_g(double t) const { return 0.5 * alpha * t * l_a * l_b; }
    double coupling_kappa(double m, double t) const { return 0.5 * alpha * t * m * m; }
};

// Throws std::invalid_argument when the config violates its invariants.
DerivedScales derive_scales(const ExperimentConfig& config);

// Report-style check; empty result means the config is valid.
std::vector<std::string> validate_config(const ExperimentConfig& config);

} // namespace framedrag
