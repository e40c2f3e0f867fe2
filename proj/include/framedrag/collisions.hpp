#pragma once

#include <string>
#include <vector>

#include "framedrag/linalg.hpp"
#include "framedrag/params.hpp"

namespace framedrag {

struct CollisionModel {
    double rate = 0;    // r [1/s]
    int max_quanta = 1; // n
    double time = 0;    // t [s]
};

// Poisson pmf (r t)^k e^{-rt} / k!
double poisson_weight(int k, double rate, double time);

// kinetic-theory impingement estimate r = pi R^2 P / sqrt(2 pi k_B T m)
double collision_rate(double radius, double pressure, double temperature,
                      double molecule_mass, const PhysicalConstants& k = {});

struct CollisionMixtureResult {
    DensityMatrix rho;
    double dropped_weight = 0;   // weight of annihilated branches (redistributed)
    double truncation_loss = 0;  // worst relative window-edge loss over branches
};

// rho = P(0) |psi><psi| + P(1)/(4n) sum_{q,sphere,±} branches, each branch
// trace-normalized, then the whole mixture renormalized. k >= 2 events are
// truncated (validity rt << 1 documented).
CollisionMixtureResult collision_mixture(const StateVector& psi_t, const CollisionModel& model);

struct CollisionCurveRow {
    double t = 0;
    int n = 0;
    std::string preparation; // "m0" or "ml"
    double log_negativity = 0;
};

struct CollisionCurveOptions {
    int half_width = 10; // window margin absorbs max_quanta ladder kicks
};

std::vector<CollisionCurveRow> collision_negativity_curve(const ExperimentConfig& config,
                                                          const std::vector<int>& n_list,
                                                          const std::vector<double>& t_grid,
                                                          const std::vector<std::string>& preparations,
                                                          const CollisionCurveOptions& opts = {});

} // namespace framedrag
