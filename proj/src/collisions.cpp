#include "framedrag/collisions.hpp"

#include <cmath>
#include <stdexcept>

#include "framedrag/dynamics.hpp"
#include "framedrag/entanglement.hpp"
#include "framedrag/operators.hpp"

namespace framedrag {

namespace {
constexpr double pi = 3.14159265358979323846;
}

double poisson_weight(int k, double rate, double time) {
    if (k < 0) throw std::domain_error("negative event count");
    const double rt = rate * time;
    if (rt < 0) throw std::domain_error("negative rate*time");
    if (rt == 0.0) return k == 0 ? 1.0 : 0.0;
    // exact pmf via lgamma to stay finite for large k
    return std::exp(k * std::log(rt) - rt - std::lgamma(k + 1.0));
}

double collision_rate(double radius, double pressure, double temperature,
                      double molecule_mass, const PhysicalConstants& k) {
    if (!(temperature > 0) || !(molecule_mass > 0))
        throw std::domain_error("collision_rate needs positive T and molecule mass");
    if (radius < 0 || pressure < 0) throw std::domain_error("negative radius or pressure");
    return pi * radius * radius * pressure /
           std::sqrt(2.0 * pi * k.k_B * temperature * molecule_mass);
}

CollisionMixtureResult collision_mixture(const StateVector& psi_t, const CollisionModel& model) {
    if (model.rate < 0 || model.max_quanta < 1)
        throw std::invalid_argument("collision model needs rate >= 0 and n >= 1");
    constexpr double overflow_tol = 1e-6;
    const double p0 = poisson_weight(0, model.rate, model.time);
    const double p1 = poisson_weight(1, model.rate, model.time);
    const int n = model.max_quanta;

    CollisionMixtureResult out;
    const double psi_norm2 = psi_t.v.squaredNorm();
    Eigen::MatrixXcd rho = (p0 / psi_norm2) * (psi_t.v * psi_t.v.adjoint());
    double total_weight = p0;

    const double branch_weight = p1 / (4.0 * n);
    if (p1 > 0.0) {
        for (int q = 1; q <= n; ++q) {
            for (Sphere s : {Sphere::A, Sphere::B}) {
                for (LadderSign sign : {LadderSign::plus, LadderSign::minus}) {
                    LadderPowerResult kicked = apply_ladder_power(psi_t, s, sign, q);
                    const double nn = kicked.state.v.squaredNorm();
                    // branch norms grow like l^2q; only the relative edge loss
                    // is meaningful
                    const double whole = nn + kicked.truncation_loss;
                    if (whole > 0.0)
                        out.truncation_loss =
                            std::max(out.truncation_loss, kicked.truncation_loss / whole);
                    if (nn <= 0.0) {
                        out.dropped_weight += branch_weight; // annihilated at the ladder edge
                        continue;
                    }
                    rho += (branch_weight / nn) * (kicked.state.v * kicked.state.v.adjoint());
                    total_weight += branch_weight;
                }
            }
        }
    }
    if (out.truncation_loss > overflow_tol)
        throw std::runtime_error("collision window overflow beyond tolerance: " +
                                 std::to_string(out.truncation_loss));
    rho /= total_weight; // dropped weight redistributed over kept branches
    out.rho = {std::move(rho), psi_t.basis};
    return out;
}

std::vector<CollisionCurveRow> collision_negativity_curve(const ExperimentConfig& config,
                                                          const std::vector<int>& n_list,
                                                          const std::vector<double>& t_grid,
                                                          const std::vector<std::string>& preparations,
                                                          const CollisionCurveOptions& opts) {
    const DerivedScales scales = derive_scales(config);
    const double rate = collision_rate(config.sphere_a.radius, config.gas_pressure,
                                       config.bath_temperature, config.gas_molecule_mass,
                                       config.constants);
    int n_max = 1;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        n_max = std::max(n_max, n);
    }

    std::vector<CollisionCurveRow> rows;
    for (const auto& prep : preparations) {
        AnchoredM m{0.0, 0};
        std::vector<AnchoredM> anchors{m};
        if (prep == "ml") {
            m = {scales.l_a, 0};
            anchors = {m, m.negated()};
        } else if (prep != "m0") {
            throw std::invalid_argument("preparation must be m0 or ml");
        }
        const int w = opts.half_width + n_max;
        SphereBasis wa = SphereBasis::windows(scales.l_a, anchors, w);
        ProductBasisPtr pb = make_product_basis(wa, wa);
        StateVector psi0 = initial_cat_state(pb, m, m);
        OperatorMatrix h = build_interaction_hamiltonian(*pb, scales.alpha);
        EvolutionResult evo = evolve_exact(h, psi0, t_grid);

        for (size_t k = 0; k < t_grid.size(); ++k) {
            for (int n : n_list) {
                CollisionModel model{rate, n, t_grid[k]};
                CollisionMixtureResult mix = collision_mixture(evo.states[k], model);
                CollisionCurveRow r;
                r.t = t_grid[k];
                r.n = n;
                r.preparation = prep;
                r.log_negativity = log_negativity(mix.rho);
                rows.push_back(r);
            }
        }
    }
    return rows;
}

} // namespace framedrag
