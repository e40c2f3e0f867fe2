#pragma once

#include <vector>

#include "framedrag/linalg.hpp"
#include "framedrag/operators.hpp"
#include "framedrag/params.hpp"

namespace framedrag {

enum class Preparation { superposition, eigenstate };

// Normalized (|m>+|-m>) x (|m>+|-m>); collapses to the plain eigenstate
// when m = 0. Anchors must lie inside the windows.
StateVector initial_cat_state(const ProductBasisPtr& pb, AnchoredM m_a, AnchoredM m_b);
StateVector initial_eigenstate(const ProductBasisPtr& pb, AnchoredM m_a, AnchoredM m_b);

struct EvolutionResult {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> truncation_loss; // window-edge population per time
    int window_half_width = 0;
};

// psi(t) = exp(-i H t) psi0 by eigendecomposition of the (Hermitian) H.
// H carries H_I/hbar in 1/s. Norm drift beyond 1e-9 raises.
EvolutionResult evolve_exact(const OperatorMatrix& h, const StateVector& psi0,
                             const std::vector<double>& times);

struct PerturbativeResult {
    StateVector state; // unnormalized second-order expansion
    bool guard_ok = true;
};

// (1 + (i alpha t/2) O - (alpha^2 t^2/8) O^2) psi0. Guard flags g > g_max.
PerturbativeResult perturbative_state(const StateVector& psi0, double alpha, double t,
                                      double g_max = 1e-2);

// Closed-form reduced entropy in bits for couplings kappa <= g, with
// x^2 log2 x terms continuously extended to 0. Throws out_of_range when the
// leading log argument is nonpositive.
double entropy_closed_form(double g, double kappa);

struct EntropyCurveRow {
    double t = 0;
    double m_over_l = 0;
    double entropy_closed = 0;
    double entropy_exact = 0;
    double truncation_loss = 0;
};

struct EntropyCurveOptions {
    Preparation prep = Preparation::superposition;
    int initial_half_width = 6;
    int max_half_width = 48;
    double converge_rel = 1e-6;
};

// Rows over (t, m) with the closed form of the superposition family and the
// windowed exact entropy of the requested preparation. Windows auto-widen
// until S at the largest t moves less than converge_rel.
std::vector<EntropyCurveRow> entropy_curve(const ExperimentConfig& config,
                                           const std::vector<double>& m_fractions,
                                           const std::vector<double>& t_grid,
                                           const EntropyCurveOptions& opts = {},
                                           int* width_used = nullptr);

} // namespace framedrag
