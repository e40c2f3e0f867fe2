#pragma once

#include <stdexcept>
#include <string>

#include "framedrag/feasibility.hpp"
#include "framedrag/params.hpp"

namespace framedrag {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericsConfig {
    int window_half_width = 6;
    int collision_margin = 8;
    int blackbody_m_half_width = 3;
    int blackbody_shell_half_width = 1;
    bool independent_baths = false;
    double ode_local_tol = 1e-8;
    double perturbative_g_max = 1e-2;
};

struct RunConfig {
    ExperimentConfig exp;
    NumericsConfig num;
    BudgetInputs budget;
};

// Flat key = value file with [sections]; '#' comments. Unknown sections or
// keys are errors. Every key can be overridden through the environment as
// FRAMEDRAG_<SECTION>_<KEY> (uppercased).
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);
RunConfig default_config();

// Byte-reproducible snapshot of a resolved configuration.
std::string dump_config(const RunConfig& cfg);

} // namespace framedrag
