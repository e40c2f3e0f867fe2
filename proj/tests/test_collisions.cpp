#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "framedrag/collisions.hpp"
#include "framedrag/dynamics.hpp"
#include "framedrag/entanglement.hpp"

using namespace framedrag;

namespace {

// nominal-scale m=0 state evolved to coupling g, on a window wide enough to
// absorb n_max ladder kicks
StateVector evolved_m0(double g, int width) {
    ExperimentConfig cfg;
    const DerivedScales d = derive_scales(cfg);
    SphereBasis w = SphereBasis::windows(d.l_a, {AnchoredM{0.0, 0}}, width);
    ProductBasisPtr pb = make_product_basis(w, w);
    StateVector psi0 = initial_cat_state(pb, {0.0, 0}, {0.0, 0});
    OperatorMatrix h = build_interaction_hamiltonian(*pb, d.alpha);
    const double t = 2.0 * g / (d.alpha * d.l_a * d.l_b);
    return evolve_exact(h, psi0, {t}).states[0];
}

double trace_norm(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

} // namespace

TEST_CASE("poisson weights") {
    CHECK(poisson_weight(0, 0.0, 5.0) == 1.0);
    CHECK(poisson_weight(1, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(poisson_weight(2, 0.4, 1.0) == doctest::Approx(0.08 * std::exp(-0.4)).epsilon(1e-12));
    CHECK_THROWS_AS(poisson_weight(-1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("kinetic collision rate") {
    const double r = collision_rate(50e-6, 1e-17, 0.1, mass_h2);
    CHECK(r == doctest::Approx(0.46089).epsilon(1e-3)); // frozen from the formula
    CHECK(collision_rate(50e-6, 0.0, 0.1, mass_h2) == 0.0);
    // T^{-1/2} scaling
    CHECK(collision_rate(50e-6, 1e-17, 0.4, mass_h2) == doctest::Approx(r / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(collision_rate(50e-6, 1e-17, 0.0, mass_h2), std::domain_error);
    CHECK_THROWS_AS(collision_rate(50e-6, 1e-17, 0.1, -1.0), std::domain_error);
}

TEST_CASE("zero rate keeps the pure state") {
    StateVector psi = evolved_m0(5.8e-4, 8);
    auto mix = collision_mixture(psi, {0.0, 3, 10.0});
    CHECK((mix.rho.m - pure_density(psi).m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("local kicks keep product states separable") {
    ExperimentConfig cfg;
    const DerivedScales d = derive_scales(cfg);
    SphereBasis w = SphereBasis::windows(d.l_a, {AnchoredM{0.0, 0}}, 8);
    ProductBasisPtr pb = make_product_basis(w, w);
    StateVector prod = initial_cat_state(pb, {0.0, 0}, {0.0, 0}); // t = 0 product state
    auto mix = collision_mixture(prod, {1.0, 1, 1.0});
    validate_density(mix.rho);
    CHECK(log_negativity(mix.rho) == 0.0);
}

TEST_CASE("mixture is a valid density matrix with redistributed edge branches") {
    // m = l preparation: raising kicks annihilate on the top components
    ExperimentConfig cfg;
    const DerivedScales d = derive_scales(cfg);
    SphereBasis w = SphereBasis::windows(d.l_a, {AnchoredM{d.l_a, 0}, AnchoredM{-d.l_a, 0}}, 12);
    ProductBasisPtr pb = make_product_basis(w, w);
    StateVector psi0 = initial_cat_state(pb, {d.l_a, 0}, {d.l_a, 0});
    OperatorMatrix h = build_interaction_hamiltonian(*pb, d.alpha);
    StateVector psi = evolve_exact(h, psi0, {10.0}).states[0];

    auto mix = collision_mixture(psi, {0.1, 2, 10.0});
    validate_density(mix.rho, 1e-9, -1e-9);
    CHECK(mix.dropped_weight >= 0.0);
    CHECK(mix.truncation_loss < 1e-8);
}

TEST_CASE("negativity decreases with rate and with n in the visible regime") {
    StateVector psi = evolved_m0(5.8e-4, 14);
    const double en0 = log_negativity(psi);
    CHECK(en0 > 0.0);

    // non-increasing in r while the uncollided part dominates (rt <~ 4g);
    // beyond that the kicked branches' own negativity resurfaces and the
    // aggregate is no longer monotone
    double prev = en0;
    for (double r : {0.0, 2e-5, 1e-4, 2e-4}) {
        auto mix = collision_mixture(psi, {r, 1, 10.0});
        const double en = log_negativity(mix.rho);
        CHECK(en <= prev + 1e-12);
        prev = en;
    }
    // and every mixed value stays below the unitary one
    for (double r : {0.02, 0.1, 0.3}) {
        auto mix = collision_mixture(psi, {r, 1, 10.0});
        CHECK(log_negativity(mix.rho) < en0);
    }

    // monotone in n at rt = 1
    double e1 = log_negativity(collision_mixture(psi, {0.1, 1, 10.0}).rho);
    double e3 = log_negativity(collision_mixture(psi, {0.1, 3, 10.0}).rho);
    double e6 = log_negativity(collision_mixture(psi, {0.1, 6, 10.0}).rho);
    CHECK(e1 >= e3);
    CHECK(e3 >= e6);

    // a single expected collision causes the sharp drop
    CHECK(e1 < 0.5 * en0);
}

TEST_CASE("mixture converges to the pure state as rt -> 0") {
    StateVector psi = evolved_m0(5.8e-4, 12);
    const double en0 = log_negativity(psi);
    const DensityMatrix rho0 = pure_density(psi);

    for (double rt : {1e-4, 1e-3, 1e-2}) {
        auto mix = collision_mixture(psi, {rt, 1, 1.0});
        const double dist = trace_norm(mix.rho.m - rho0.m);
        CHECK(dist <= 2.0 * (1.0 - poisson_weight(0, rt, 1.0)) + 1e-12);
    }
    // negativity recovery verified at rt = 1e-4
    auto tiny = collision_mixture(psi, {1e-4, 1, 1.0});
    CHECK(log_negativity(tiny.rho) >= 0.9 * en0);
}

TEST_CASE("window overflow raises instead of silently truncating") {
    // a window too narrow for the requested quanta
    ExperimentConfig cfg;
    const DerivedScales d = derive_scales(cfg);
    SphereBasis w = SphereBasis::windows(d.l_a, {AnchoredM{0.0, 0}}, 2);
    ProductBasisPtr pb = make_product_basis(w, w);
    StateVector psi = initial_cat_state(pb, {0.0, 0}, {0.0, 0});
    CHECK_THROWS_AS(collision_mixture(psi, {0.5, 4, 1.0}), std::runtime_error);
}

TEST_CASE("collision curve starts at zero and stays finite") {
    ExperimentConfig cfg;
    cfg.gas_pressure = 1e-19; // keep rt small on the grid
    CollisionCurveOptions opts;
    opts.half_width = 8;
    auto rows = collision_negativity_curve(cfg, {1, 3}, {0.0, 5.0}, {"m0", "ml"}, opts);
    REQUIRE(rows.size() == 8);
    for (const auto& r : rows) {
        if (r.t == 0.0) CHECK(std::abs(r.log_negativity) < 1e-9);
        CHECK(std::isfinite(r.log_negativity));
    }
}
