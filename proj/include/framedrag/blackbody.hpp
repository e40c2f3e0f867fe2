#pragma once

#include <vector>

#include "framedrag/linalg.hpp"
#include "framedrag/params.hpp"
#include "framedrag/sparse.hpp"

namespace framedrag {

// Planck occupation of the mode at transition energy hbar^2 Delta / (2I);
// expm1-based so the Rayleigh-Jeans regime keeps full precision. T = 0 -> 0.
double planck_occupation(double delta, double inertia, double temperature,
                         const PhysicalConstants& k = {});

struct BlackbodyRates {
    double chi = 0;   // (1+N) side [1/s]
    double gamma = 0; // N side [1/s]
};

// chi_l / gamma_l at Delta_l = 2(l+1); d_eff carries the material response.
BlackbodyRates blackbody_rates(double delta, double inertia, double temperature,
                               double d_eff, const PhysicalConstants& k = {});

// Thermal effective dipole d_eff(V, eps_r, T): Planck energy density at the
// Wien peak, T^5 scaling.
double effective_dipole(double volume, double eps_r, double temperature,
                        const PhysicalConstants& k = {});

// Dimensionless dipole jump components between shells l0+boundary_shell and
// l0+boundary_shell+1 of a single-sphere window: A1 (m <- m+1 columns),
// A2 (m <- m-1, imaginary unit), A3 (m <- m). Fused products of the two 3-j
// symbols and M_{l,l',m}; O(1) entries at any l.
struct JumpOperatorSet {
    SparseOp a1, a2, a3;
    double chi = 0, gamma = 0;
    double delta = 0; // Delta_l of the lower shell
};

JumpOperatorSet build_jump_operators(const SphereBasis& w, int boundary_shell, double d_eff,
                                     double inertia, double temperature,
                                     const PhysicalConstants& k = {});

struct LindbladModel {
    ProductBasisPtr basis;
    SparseOp h;                     // H/hbar [1/s]
    std::vector<SparseOp> collapse; // rates folded in: sqrt(chi) A etc.
};

struct BlackbodyModelOptions {
    int shell_half_width = 1;
    int m_half_width = 3;
    bool independent_baths = false; // default: collective, same bath
    bool m_l_preparation = false;   // anchors at +-l instead of m=0
};

// H_I extended block-diagonally over the shell window plus the collective
// (A (x) 1 + 1 (x) A)-type collapse set for every shell boundary and dipole
// component.
LindbladModel build_master_equation(const ExperimentConfig& config,
                                    const BlackbodyModelOptions& opts = {});

struct IntegrateOptions {
    double local_tol = 1e-8;   // RK4 step-doubling local error target
    double trace_tol = 1e-7;   // max |Tr rho - 1| over the run
    double psd_tol = 1e-6;     // eigenvalue floor at output times
    double h_init = 1e-2;      // initial step [s]
    bool check_psd = true;
};

struct IntegrateDiagnostics {
    double max_trace_drift = 0;
    double max_herm_defect = 0;
    double min_eigenvalue = 0;
    long steps = 0;
    long rejected = 0;
};

// RK4 with step-doubling control. No renormalization: trace drift beyond
// trace_tol or eigenvalues below -psd_tol raise. rho is symmetrized each
// accepted step with the defect logged.
std::vector<DensityMatrix> integrate_master_equation(const LindbladModel& model,
                                                     const DensityMatrix& rho0,
                                                     const std::vector<double>& times,
                                                     const IntegrateOptions& opts = {},
                                                     IntegrateDiagnostics* diag = nullptr);

struct TemperatureRow {
    double temperature = 0;
    double log_negativity = 0;
    double global_entropy = 0;
};

struct TemperatureSweep {
    std::vector<TemperatureRow> rows;
    double t_star = -1;           // first T with E_N < 1e-6 (-1: none found)
    double entropy_at_t_star = 0;
};

TemperatureSweep negativity_vs_temperature(const ExperimentConfig& config, double t_fixed,
                                           const std::vector<double>& temperature_grid,
                                           const BlackbodyModelOptions& opts = {},
                                           const IntegrateOptions& iopts = {});

} // namespace framedrag
