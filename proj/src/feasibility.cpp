#include "framedrag/feasibility.hpp"

#include <cmath>
#include <stdexcept>

#include "framedrag/blackbody.hpp"
#include "framedrag/collisions.hpp"

namespace framedrag {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double heating_a = 8.15e-11; // m^4/(W s^2)

BudgetLine make_line(std::string name, double value, std::string unit, double target,
                     std::string note = {}) {
    BudgetLine l;
    l.name = std::move(name);
    l.value = value;
    l.unit = std::move(unit);
    l.target = target;
    l.pass = value <= target;
    l.marginal = l.pass && target > 0 && value > target / 3.0;
    l.note = std::move(note);
    return l;
}

} // namespace

MagneticBudget magnetic_dipole_budget(const ExperimentConfig& config, double v_g) {
    const auto& k = config.constants;
    MagneticBudget out;
    const double numer = k.hbar * (config.sphere_a.gyromagnetic_ratio * config.magnetic_field +
                                   config.sphere_a.angular_velocity);
    if (numer == 0.0) {
        out.polarization = 0.0;
    } else {
        if (!(config.bath_temperature > 0))
            throw std::domain_error("Barnett polarization needs T > 0");
        out.polarization = numer / (k.k_B * config.bath_temperature);
    }
    out.v_m = 1e-28 * out.polarization * out.polarization;
    out.ratio_nominal = 1e10 * out.polarization * out.polarization;
    out.line = make_line("magnetic dipole (Barnett)", out.v_m, "J", v_g);
    if (!out.line.pass)
        out.line.note = "Faraday shield between the spheres suppresses this channel";
    return out;
}

BudgetLine electric_dipole_suppression(double p0, double omega_s, double t_r, double r,
                                       double delta, double v_g, const PhysicalConstants& k) {
    const double wt = omega_s * t_r;
    std::string note;
    if (wt < 10.0 && p0 != 0.0) note = "omega_s t_r not >> 1; averaging regime not reached";
    const double cd = std::cos(delta), sd = std::sin(delta);
    // time-averaged envelope: the oscillating in-plane part decays as 1/(w t)
    const double inplane = (wt > 0) ? sd * sd / (wt * wt) : sd * sd;
    const double p_avg_sq = p0 * p0 * (cd * cd + inplane);
    const double v = p_avg_sq / (4.0 * pi * k.eps0 * r * r * r);
    BudgetLine l = make_line("electric dipole (spun)", v, "J", v_g, note);
    return l;
}

SpheroidBudget spheroid_quadrupole(double mass_a, double mass_b, double a_a, double a_b,
                                   double eps_a, double eps_b, double r, double v_g,
                                   const PhysicalConstants& k) {
    SpheroidBudget out;
    out.prefactor = k.G * mass_a * mass_b * a_a * a_b / (512.0 * r * r * r);
    out.energy = out.prefactor * eps_a * eps_b;
    out.ellipticity_threshold = out.prefactor > 0 ? std::sqrt(v_g / out.prefactor) : 0.0;
    out.line = make_line("spheroid quadrupole", out.energy, "J", v_g,
                         "ellipticity threshold eps* = " + std::to_string(out.ellipticity_threshold));
    return out;
}

BudgetLine casimir_energy(double radius, double eps, double r, const PhysicalConstants& k) {
    if (!(r > 2.0 * radius)) throw std::domain_error("casimir_energy needs r > 2R");
    const double frac = (eps - 1.0) / (eps + 2.0);
    const double v = 23.0 * k.hbar * k.c * std::pow(radius, 6) / (4.0 * pi * std::pow(r, 7)) *
                     frac * frac;
    BudgetLine l;
    l.name = "Casimir-Polder";
    l.value = v;
    l.unit = "J";
    l.target = v; // informational
    l.pass = true;
    l.note = "position-only operator, commutes with angular momentum; cannot degrade this entanglement";
    return l;
}

double laser_heating_final_temperature(double t_initial, double omega_f, double wavelength,
                                       double radius, double density,
                                       std::complex<double> refractive_index, double debye_beta) {
    if (t_initial < 0 || omega_f < 0) throw std::domain_error("negative heating inputs");
    if (!(radius > 0) || !(density > 0) || !(debye_beta > 0))
        throw std::domain_error("heating needs positive R, rho, beta");
    const std::complex<double> eps = refractive_index * refractive_index;
    const double im = ((eps - 1.0) / (eps + 2.0)).imag();
    const double t4 = std::pow(t_initial, 4) +
                      16.0 * omega_f * wavelength * wavelength * im /
                          (heating_a * radius * density * debye_beta);
    if (t4 < 0.0) throw std::domain_error("negative absorbed power (Im eps < 0)");
    return std::pow(t4, 0.25);
}

DetectionReport detection_trap(const ExperimentConfig& config) {
    const auto& k = config.constants;
    const SphereSpec& s = config.sphere_a;
    if (!(config.field_gradient > 0)) throw std::domain_error("detection needs G0 > 0");
    const DerivedScales d = derive_scales(config);
    const double chi = std::abs(s.magnetic_susceptibility);
    const double g0 = config.field_gradient;

    DetectionReport rep;
    rep.omega_trap = std::sqrt(chi * g0 * g0 / (s.density * k.mu0));
    const double volume = (4.0 / 3.0) * pi * std::pow(s.radius, 3);
    const double mass = d.mass_a;
    rep.lambda_coupling = chi * volume * g0 /
                          (s.gyromagnetic_ratio * d.inertia_a * k.mu0 *
                           std::sqrt(2.0 * k.hbar * mass * rep.omega_trap));
    // dominance check of the trap term over the angular-momentum term,
    // center-of-mass excursion taken at the sphere scale z ~ R
    rep.bsq_side = g0 * g0 * s.radius * s.radius;
    rep.lsq_side = std::pow(s.angular_velocity / s.gyromagnetic_ratio, 2);
    rep.b_dominates = rep.bsq_side > 100.0 * rep.lsq_side;
    // small-t resolution target: dz ~ coeff G0 t^2 resolves (Delta L)^2 = (l_A+l_B) hbar^2
    rep.delta_z_coefficient = chi * std::sqrt(d.l_a + d.l_b) * k.hbar /
                              (2.0 * s.density * k.mu0 * s.gyromagnetic_ratio * d.inertia_a);
    rep.required_delta_z = rep.delta_z_coefficient * g0 * 100.0; // t = 10 s
    return rep;
}

double detection_variance_map(double dz2_t, double dz2_0, double t,
                              const ExperimentConfig& config) {
    const auto& k = config.constants;
    const SphereSpec& s = config.sphere_a;
    const DerivedScales d = derive_scales(config);
    const double omega = std::sqrt(std::abs(s.magnetic_susceptibility) *
                                   config.field_gradient * config.field_gradient /
                                   (s.density * k.mu0));
    const double sn = std::sin(0.5 * omega * t);
    if (std::abs(sn) < 1e-12)
        throw std::domain_error("singular readout time: sin(Omega t/2) = 0");
    if (dz2_t < dz2_0) throw std::domain_error("negative variance difference");
    const double coeff = s.gyromagnetic_ratio * d.inertia_a * config.field_gradient /
                         (2.0 * sn * sn);
    return coeff * coeff * (dz2_t - dz2_0);
}

std::vector<BudgetLine> budget_report(const ExperimentConfig& config, const BudgetInputs& in) {
    const auto& k = config.constants;
    const DerivedScales d = derive_scales(config);
    const double v_g = d.v_g;
    std::vector<BudgetLine> lines;

    lines.push_back(magnetic_dipole_budget(config, v_g).line);
    lines.push_back(electric_dipole_suppression(in.dipole_moment, config.sphere_a.angular_velocity,
                                                in.spin_time, config.separation, in.dipole_tilt,
                                                v_g, k));
    lines.push_back(spheroid_quadrupole(d.mass_a, d.mass_b, config.sphere_a.radius,
                                        config.sphere_b.radius, in.ellipticity, in.ellipticity,
                                        config.separation, v_g, k)
                        .line);
    lines.push_back(casimir_energy(config.sphere_a.radius,
                                   config.sphere_a.relative_permittivity, config.separation, k));

    // gas collisions: events per reference run
    {
        const double r = (config.gas_pressure > 0 && config.bath_temperature > 0)
                             ? collision_rate(config.sphere_a.radius, config.gas_pressure,
                                              config.bath_temperature, config.gas_molecule_mass, k)
                             : 0.0;
        const double rt = r * in.reference_time;
        BudgetLine l;
        l.name = "gas collisions";
        l.value = rt;
        l.unit = "events";
        l.target = 10.0;
        l.pass = rt <= l.target;
        l.marginal = rt >= 1.0;
        l.note = l.marginal ? "expected collisions not << 1; negativity highly sensitive here" : "";
        lines.push_back(l);
    }

    // blackbody absorption rate vs the unitary negativity growth rate
    {
        const double en_rate = 4.0 * d.alpha * d.l_a * d.l_b / std::log(2.0); // m=l preparation
        double gamma = 0.0;
        if (config.bath_temperature > 0) {
            const double volume = (4.0 / 3.0) * pi * std::pow(config.sphere_a.radius, 3);
            const double deff = effective_dipole(volume, config.sphere_a.relative_permittivity,
                                                 config.bath_temperature, k);
            gamma = blackbody_rates(2.0 * (d.l_a + 1.0), d.inertia_a, config.bath_temperature,
                                    deff, k)
                        .gamma;
        }
        BudgetLine l = make_line("blackbody radiation", gamma, "1/s", en_rate);
        if (!l.pass) l.note = "thermal photon exchange outruns entanglement generation";
        lines.push_back(l);
    }

    // laser heating endpoint vs the negativity-vanishing temperature scale
    {
        const double t_f = laser_heating_final_temperature(
            in.laser_t_initial, config.sphere_a.angular_velocity, in.laser_wavelength,
            config.sphere_a.radius, config.sphere_a.density, config.sphere_a.refractive_index,
            in.debye_beta);
        BudgetLine l = make_line("laser heating", t_f, "K", 1.7,
                                 "final temperature vs the negativity-vanishing scale");
        lines.push_back(l);
    }
    return lines;
}

} // namespace framedrag
