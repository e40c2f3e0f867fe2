#pragma once

#include <complex>
#include <string>
#include <vector>

#include "framedrag/params.hpp"

namespace framedrag {

struct BudgetLine {
    std::string name;
    double value = 0;       // J, s^-1 or K depending on the line
    std::string unit;
    double target = 0;
    bool pass = false;      // value <= target
    bool marginal = false;  // within a factor 3 of the target
    std::string note;
};

// Noise-side inputs that are not part of the trap/bath configuration.
struct BudgetInputs {
    double dipole_moment = 100.0 * elementary_charge * 1e-6; // p0 [C m]
    double dipole_tilt = 1.5707963267948966;                  // delta [rad], pi/2 = orthogonal
    double spin_time = 1.0;                                   // t_r [s]
    double ellipticity = 1e-5;                                // spheroid epsilon
    double reference_time = 10.0;                             // t for rate comparisons [s]
    double laser_wavelength = 300e-9;                         // [m]
    double debye_beta = 3e-4;                                 // c_M = beta T^3 [J/(kg K^4)]
    double laser_t_initial = 1.0;                             // [K]
};

// Barnett polarization p = hbar (gamma B + omega)/(k_B T); V_M = 1e-28 p^2 J
// (the fitted aggregate prefactor), compared against V_G. The report also
// carries the nominal ratio V_M/V_G = 1e10 p^2.
struct MagneticBudget {
    double polarization = 0;
    double v_m = 0;
    double ratio_nominal = 0; // 1e10 p^2
    BudgetLine line;
};
MagneticBudget magnetic_dipole_budget(const ExperimentConfig& config, double v_g);

// Rotating-dipole suppression with the time-averaged envelope
// ||<p>||^2 = p0^2 (cos^2 delta + sin^2 delta / (w_s t_r)^2);
// V = ||<p>||^2 / (4 pi eps0 r^3).
BudgetLine electric_dipole_suppression(double p0, double omega_s, double t_r, double r,
                                       double delta, double v_g,
                                       const PhysicalConstants& k = {});

// |V_G^(3)| = G M_A M_B a_A a_B e_A e_B / (512 r^3), plus the ellipticity
// threshold e* where it crosses v_g (equal spheres).
struct SpheroidBudget {
    double energy = 0;
    double prefactor = 0;           // energy / (e_A e_B)
    double ellipticity_threshold = 0;
    BudgetLine line;
};
SpheroidBudget spheroid_quadrupole(double mass_a, double mass_b, double a_a, double a_b,
                                   double eps_a, double eps_b, double r, double v_g,
                                   const PhysicalConstants& k = {});

// 23 hbar c R^6 / (4 pi r^7) ((eps-1)/(eps+2))^2; informational: commutes
// with angular momentum, pass unconditional.
BudgetLine casimir_energy(double radius, double eps, double r, const PhysicalConstants& k = {});

// Debye-model heating balance: T_f = (T_i^4 + 16 w_f lambda^2 Im[(eps-1)/(eps+2)]
// / (a R rho beta))^(1/4), a = 8.15e-11 m^4/(W s^2).
double laser_heating_final_temperature(double t_initial, double omega_f, double wavelength,
                                       double radius, double density,
                                       std::complex<double> refractive_index, double debye_beta);

struct DetectionReport {
    double omega_trap = 0;       // [rad/s]
    double lambda_coupling = 0;  // [1/s]
    double bsq_side = 0;         // <B^2> ~ G0^2 R^2 [T^2]
    double lsq_side = 0;         // omega^2/gamma^2 [T^2]
    bool b_dominates = false;
    double delta_z_coefficient = 0; // required dz ~ coeff * G0 * t^2
    double required_delta_z = 0;    // at t = 10 s and the configured G0 [m]
};
DetectionReport detection_trap(const ExperimentConfig& config);

// (Delta L_z)^2 = (gamma I G0 / (2 sin^2(Omega t/2)))^2 (dz2_t - dz2_0), in (J s)^2.
// Throws at sin(Omega t/2) = 0 and on dz2_t < dz2_0.
double detection_variance_map(double dz2_t, double dz2_0, double t,
                              const ExperimentConfig& config);

std::vector<BudgetLine> budget_report(const ExperimentConfig& config,
                                      const BudgetInputs& inputs = {});

} // namespace framedrag
