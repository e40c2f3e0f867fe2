#include "framedrag/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace framedrag {

namespace {

constexpr double two_pi = 6.283185307179586;

struct Field {
    std::string section, key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

double parse_double(const std::string& s) {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ConfigError("malformed number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ConfigError("malformed integer: '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("malformed boolean: '" + s + "'");
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << v;
    return o.str();
}

// unit flags live outside RunConfig; they rescale on load
struct UnitFlags {
    bool omega_in_hz = false;
    bool gyromagnetic_in_hz = false;
};

std::vector<Field> field_registry(UnitFlags* units) {
    std::vector<Field> f;
    auto sphere_fields = [&](const std::string& sec, SphereSpec ExperimentConfig::*sp) {
        auto sdbl = [&, sp](const std::string& key, double SphereSpec::*mem) {
            f.push_back({sec, key,
                         [sp, mem](RunConfig& c, const std::string& v) { c.exp.*sp.*mem = parse_double(v); },
                         [sp, mem](const RunConfig& c) { return fmt(c.exp.*sp.*mem); }});
        };
        sdbl("radius_m", &SphereSpec::radius);
        sdbl("density_kg_m3", &SphereSpec::density);
        sdbl("angular_velocity_rad_s", &SphereSpec::angular_velocity);
        sdbl("relative_permittivity", &SphereSpec::relative_permittivity);
        sdbl("magnetic_susceptibility", &SphereSpec::magnetic_susceptibility);
        sdbl("gyromagnetic_ratio_rad_s_t", &SphereSpec::gyromagnetic_ratio);
        f.push_back({sec, "refractive_index_re",
                     [sp](RunConfig& c, const std::string& v) {
                         auto& n = c.exp.*sp;
                         n.refractive_index = {parse_double(v), n.refractive_index.imag()};
                     },
                     [sp](const RunConfig& c) { return fmt((c.exp.*sp).refractive_index.real()); }});
        f.push_back({sec, "refractive_index_im",
                     [sp](RunConfig& c, const std::string& v) {
                         auto& n = c.exp.*sp;
                         n.refractive_index = {n.refractive_index.real(), parse_double(v)};
                     },
                     [sp](const RunConfig& c) { return fmt((c.exp.*sp).refractive_index.imag()); }});
    };
    sphere_fields("sphere_a", &ExperimentConfig::sphere_a);
    sphere_fields("sphere_b", &ExperimentConfig::sphere_b);

    auto edbl = [&](const std::string& key, double ExperimentConfig::*mem) {
        f.push_back({"experiment", key,
                     [mem](RunConfig& c, const std::string& v) { c.exp.*mem = parse_double(v); },
                     [mem](const RunConfig& c) { return fmt(c.exp.*mem); }});
    };
    edbl("separation_m", &ExperimentConfig::separation);
    edbl("bath_temperature_k", &ExperimentConfig::bath_temperature);
    edbl("gas_pressure_pa", &ExperimentConfig::gas_pressure);
    edbl("gas_molecule_mass_kg", &ExperimentConfig::gas_molecule_mass);
    edbl("magnetic_field_t", &ExperimentConfig::magnetic_field);
    edbl("field_gradient_t_m", &ExperimentConfig::field_gradient);

    f.push_back({"units", "omega_in_hz",
                 [units](RunConfig&, const std::string& v) { if (units) units->omega_in_hz = parse_bool(v); },
                 [](const RunConfig&) { return std::string("false"); }});
    f.push_back({"units", "gyromagnetic_in_hz",
                 [units](RunConfig&, const std::string& v) { if (units) units->gyromagnetic_in_hz = parse_bool(v); },
                 [](const RunConfig&) { return std::string("false"); }});

    auto ndbl = [&](const std::string& key, double NumericsConfig::*mem) {
        f.push_back({"numerics", key,
                     [mem](RunConfig& c, const std::string& v) { c.num.*mem = parse_double(v); },
                     [mem](const RunConfig& c) { return fmt(c.num.*mem); }});
    };
    auto nint = [&](const std::string& key, int NumericsConfig::*mem) {
        f.push_back({"numerics", key,
                     [mem](RunConfig& c, const std::string& v) { c.num.*mem = parse_int(v); },
                     [mem](const RunConfig& c) { return std::to_string(c.num.*mem); }});
    };
    nint("window_half_width", &NumericsConfig::window_half_width);
    nint("collision_margin", &NumericsConfig::collision_margin);
    nint("blackbody_m_half_width", &NumericsConfig::blackbody_m_half_width);
    nint("blackbody_shell_half_width", &NumericsConfig::blackbody_shell_half_width);
    f.push_back({"numerics", "independent_baths",
                 [](RunConfig& c, const std::string& v) { c.num.independent_baths = parse_bool(v); },
                 [](const RunConfig& c) { return std::string(c.num.independent_baths ? "true" : "false"); }});
    ndbl("ode_local_tol", &NumericsConfig::ode_local_tol);
    ndbl("perturbative_g_max", &NumericsConfig::perturbative_g_max);

    auto bdbl = [&](const std::string& key, double BudgetInputs::*mem) {
        f.push_back({"budget", key,
                     [mem](RunConfig& c, const std::string& v) { c.budget.*mem = parse_double(v); },
                     [mem](const RunConfig& c) { return fmt(c.budget.*mem); }});
    };
    f.push_back({"budget", "dipole_moment_e_um",
                 [](RunConfig& c, const std::string& v) {
                     c.budget.dipole_moment = parse_double(v) * elementary_charge * 1e-6;
                 },
                 [](const RunConfig& c) {
                     return fmt(c.budget.dipole_moment / (elementary_charge * 1e-6));
                 }});
    bdbl("dipole_tilt_rad", &BudgetInputs::dipole_tilt);
    bdbl("spin_time_s", &BudgetInputs::spin_time);
    bdbl("ellipticity", &BudgetInputs::ellipticity);
    bdbl("reference_time_s", &BudgetInputs::reference_time);
    bdbl("laser_wavelength_m", &BudgetInputs::laser_wavelength);
    bdbl("debye_beta", &BudgetInputs::debye_beta);
    bdbl("laser_t_initial_k", &BudgetInputs::laser_t_initial);
    return f;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string env_name(const std::string& section, const std::string& key) {
    std::string out = "FRAMEDRAG_" + section + "_" + key;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

} // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    UnitFlags units;
    auto fields = field_registry(&units);
    auto find = [&](const std::string& sec, const std::string& key) -> Field* {
        for (auto& f : fields)
            if (f.section == sec && f.key == key) return &f;
        return nullptr;
    };

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (auto& f : fields) known = known || f.section == section;
            if (!known) throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        Field* f = find(section, key);
        if (!f)
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                              "' in section [" + section + "]");
        try {
            f->set(cfg, val);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
        }
    }

    // environment overrides
    for (auto& f : fields) {
        if (const char* v = std::getenv(env_name(f.section, f.key).c_str())) {
            try {
                f.set(cfg, v);
            } catch (const std::exception& e) {
                throw ConfigError(env_name(f.section, f.key) + ": " + e.what());
            }
        }
    }

    if (units.omega_in_hz) {
        cfg.exp.sphere_a.angular_velocity *= two_pi;
        cfg.exp.sphere_b.angular_velocity *= two_pi;
    }
    if (units.gyromagnetic_in_hz) {
        cfg.exp.sphere_a.gyromagnetic_ratio *= two_pi;
        cfg.exp.sphere_b.gyromagnetic_ratio *= two_pi;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
    auto fields = field_registry(nullptr);
    std::ostringstream out;
    std::string section;
    for (const auto& f : fields) {
        if (f.section == "units") continue; // already applied on load
        if (f.section != section) {
            section = f.section;
            out << "[" << section << "]\n";
        }
        out << f.key << " = " << f.get(cfg) << "\n";
    }
    return out.str();
}

} // namespace framedrag
