#include "framedrag/params.hpp"

#include <cmath>
#include <stdexcept>

namespace framedrag {

namespace {
constexpr double pi = 3.14159265358979323846;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> out;
    auto sphere = [&](const SphereSpec& s, const char* name) {
        if (!(s.radius > 0)) out.push_back(std::string(name) + ".radius nonpositive");
        if (!(s.density > 0)) out.push_back(std::string(name) + ".density nonpositive");
        if (s.angular_velocity < 0) out.push_back(std::string(name) + ".angular_velocity negative");
    };
    sphere(cfg.sphere_a, "sphere_a");
    sphere(cfg.sphere_b, "sphere_b");
    if (!(cfg.separation > cfg.sphere_a.radius + cfg.sphere_b.radius))
        out.push_back("separation <= contact distance");
    if (cfg.bath_temperature < 0) out.push_back("bath_temperature negative");
    if (cfg.gas_pressure < 0) out.push_back("gas_pressure negative");
    if (!(cfg.gas_molecule_mass > 0)) out.push_back("gas_molecule_mass nonpositive");
    return out;
}

DerivedScales derive_scales(const ExperimentConfig& cfg) {
    auto violations = validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw std::invalid_argument(msg);
    }
    const auto& k = cfg.constants;
    DerivedScales d;
    auto fill = [&](const SphereSpec& s, double& M, double& I, double& L, double& l) {
        M = (4.0 / 3.0) * pi * s.density * s.radius * s.radius * s.radius;
        I = 0.4 * M * s.radius * s.radius;
        L = I * s.angular_velocity;
        l = L / k.hbar;
    };
    fill(cfg.sphere_a, d.mass_a, d.inertia_a, d.ang_mom_a, d.l_a);
    fill(cfg.sphere_b, d.mass_b, d.inertia_b, d.ang_mom_b, d.l_b);
    const double r3 = cfg.separation * cfg.separation * cfg.separation;
    d.alpha = k.G * k.hbar / (k.c * k.c * r3);
    d.v_g = d.alpha * k.hbar * d.l_a * d.l_b;
    return d;
}

} // namespace framedrag
