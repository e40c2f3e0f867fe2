#include "framedrag/blackbody.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "framedrag/dynamics.hpp"
#include "framedrag/entanglement.hpp"
#include "framedrag/kernels.hpp"
#include "framedrag/operators.hpp"

namespace framedrag {

namespace {
constexpr double pi = 3.14159265358979323846;
}

double planck_occupation(double delta, double inertia, double temperature,
                         const PhysicalConstants& k) {
    if (delta <= 0 || inertia <= 0) throw std::domain_error("planck_occupation needs Delta, I > 0");
    if (temperature < 0) throw std::domain_error("negative temperature");
    if (temperature == 0.0) return 0.0;
    const double x = k.hbar * k.hbar * delta / (2.0 * inertia * k.k_B * temperature);
    return 1.0 / std::expm1(x);
}

BlackbodyRates blackbody_rates(double delta, double inertia, double temperature,
                               double d_eff, const PhysicalConstants& k) {
    if (delta <= 0 || inertia <= 0) throw std::domain_error("rates need Delta, I > 0");
    const double pref = delta * delta * delta * k.hbar * k.hbar /
                        (6.0 * k.c * k.c * k.c * inertia * inertia * inertia * k.eps0) *
                        d_eff * d_eff;
    const double n = planck_occupation(delta, inertia, temperature, k);
    return {pref * (1.0 + n), pref * n};
}

double effective_dipole(double volume, double eps_r, double temperature,
                        const PhysicalConstants& k) {
    if (volume <= 0) throw std::domain_error("effective_dipole needs V > 0");
    if (temperature < 0) throw std::domain_error("negative temperature");
    const double chi = eps_r - 1.0;
    const double b5 = std::pow(k.wien_b, 5);
    const double expfac = std::expm1(2.0 * pi * k.hbar * k.c / (k.wien_b * k.k_B));
    const double t5 = std::pow(temperature, 5);
    const double val = 32.0 * pi * pi * volume * volume * chi * chi * k.c * k.hbar * k.eps0 * t5 /
                       (b5 * expfac);
    return std::sqrt(std::max(0.0, val));
}

JumpOperatorSet build_jump_operators(const SphereBasis& w, int boundary_shell, double d_eff,
                                     double inertia, double temperature,
                                     const PhysicalConstants& k) {
    const int s = boundary_shell;
    const double l0 = w.l0();
    const double l = l0 + s; // lower shell
    JumpOperatorSet out;
    out.delta = 2.0 * (l + 1.0);

    std::vector<std::tuple<int, int, cplx>> t1, t2, t3;
    bool any = false;
    for (int i = 0; i < w.dim(); ++i) {
        const Site& site = w.site(i);
        if (site.shell != s) continue;
        // exact pieces at the lower-shell site (l, m)
        const double lpm1 = w.piece_l_plus_m_plus1(i);  // l+m+1
        const double lmm1 = w.piece_l_minus_m_plus1(i); // l-m+1
        const double d1 = 2.0 * l0 + (2.0 * s + 1.0);   // 2l+1
        const double d2 = d1 + 1.0;                     // 2l+2
        const double d3 = d1 + 2.0;                     // 2l+3
        const double lp1 = l0 + (s + 1.0);              // l+1

        // A1: |l,m><l+1,m+1|
        {
            const int j = w.index_of({s + 1, site.anchor, site.offset + 1});
            if (j >= 0) {
                const double v = lp1 * lpm1 * (lpm1 + 1.0) / (d1 * d2 * d3);
                if (v > 0) { t1.emplace_back(i, j, cplx{-std::sqrt(v), 0}); any = true; }
            }
        }
        // A2: |l,m><l+1,m-1|, imaginary unit prefactor
        {
            const int j = w.index_of({s + 1, site.anchor, site.offset - 1});
            if (j >= 0) {
                const double v = lp1 * lmm1 * (lmm1 + 1.0) / (d1 * d2 * d3);
                if (v > 0) { t2.emplace_back(i, j, cplx{0, -std::sqrt(v)}); any = true; }
            }
        }
        // A3: |l,m><l+1,m|
        {
            const int j = w.index_of({s + 1, site.anchor, site.offset});
            if (j >= 0) {
                const double v = lpm1 * lmm1 / (d1 * d3);
                if (v > 0) { t3.emplace_back(i, j, cplx{std::sqrt(v), 0}); any = true; }
            }
        }
    }
    if (!any) throw std::invalid_argument("shell boundary not contained in the window");

    out.a1 = SparseOp::from_triplets(w.dim(), w.dim(), std::move(t1));
    out.a2 = SparseOp::from_triplets(w.dim(), w.dim(), std::move(t2));
    out.a3 = SparseOp::from_triplets(w.dim(), w.dim(), std::move(t3));
    const BlackbodyRates r = blackbody_rates(out.delta, inertia, temperature, d_eff, k);
    out.chi = r.chi;
    out.gamma = r.gamma;
    return out;
}

namespace {

// A (x) 1 + 1 (x) B on the product basis, from single-sphere sparse factors
SparseOp collective(const ProductBasis& pb, const SparseOp& a, const SparseOp& b,
                    double wa, double wb) {
    std::vector<std::tuple<int, int, cplx>> trips;
    const int da = pb.a.dim(), db = pb.b.dim();
    for (int r = 0; r < a.rows; ++r)
        for (int p = a.rptr[r]; p < a.rptr[r + 1]; ++p)
            for (int ib = 0; ib < db; ++ib)
                trips.emplace_back(pb.index(r, ib), pb.index(a.col[p], ib), wa * a.val[p]);
    for (int r = 0; r < b.rows; ++r)
        for (int p = b.rptr[r]; p < b.rptr[r + 1]; ++p)
            for (int ia = 0; ia < da; ++ia)
                trips.emplace_back(pb.index(ia, r), pb.index(ia, b.col[p]), wb * b.val[p]);
    return SparseOp::from_triplets(pb.dim(), pb.dim(), std::move(trips));
}

SparseOp one_sided(const ProductBasis& pb, const SparseOp& op, Sphere side, double weight) {
    std::vector<std::tuple<int, int, cplx>> trips;
    const int da = pb.a.dim(), db = pb.b.dim();
    if (side == Sphere::A) {
        for (int r = 0; r < op.rows; ++r)
            for (int p = op.rptr[r]; p < op.rptr[r + 1]; ++p)
                for (int ib = 0; ib < db; ++ib)
                    trips.emplace_back(pb.index(r, ib), pb.index(op.col[p], ib), weight * op.val[p]);
    } else {
        for (int r = 0; r < op.rows; ++r)
            for (int p = op.rptr[r]; p < op.rptr[r + 1]; ++p)
                for (int ia = 0; ia < da; ++ia)
                    trips.emplace_back(pb.index(ia, r), pb.index(ia, op.col[p]), weight * op.val[p]);
    }
    return SparseOp::from_triplets(pb.dim(), pb.dim(), std::move(trips));
}

} // namespace

LindbladModel build_master_equation(const ExperimentConfig& config,
                                    const BlackbodyModelOptions& opts) {
    if (opts.shell_half_width < 1) throw std::invalid_argument("shell window half-width must be >= 1");
    const DerivedScales scales = derive_scales(config);
    const auto& k = config.constants;

    auto sphere_window = [&](const SphereSpec&, double l) {
        std::vector<AnchoredM> anchors;
        if (opts.m_l_preparation) anchors = {AnchoredM{l, 0}, AnchoredM{-l, 0}};
        else anchors = {AnchoredM{0.0, 0}};
        return SphereBasis::shell_windows(l, opts.shell_half_width, anchors, opts.m_half_width);
    };
    SphereBasis wa = sphere_window(config.sphere_a, scales.l_a);
    SphereBasis wb = sphere_window(config.sphere_b, scales.l_b);
    ProductBasisPtr pb = make_product_basis(std::move(wa), std::move(wb));

    LindbladModel model;
    model.basis = pb;
    model.h = SparseOp::from_dense(build_interaction_hamiltonian(*pb, scales.alpha).mat, 0.0);

    auto vol = [](const SphereSpec& s) {
        return (4.0 / 3.0) * pi * s.radius * s.radius * s.radius;
    };
    const double deff_a = effective_dipole(vol(config.sphere_a), config.sphere_a.relative_permittivity,
                                           config.bath_temperature, k);
    const double deff_b = effective_dipole(vol(config.sphere_b), config.sphere_b.relative_permittivity,
                                           config.bath_temperature, k);

    for (int s = -opts.shell_half_width; s < opts.shell_half_width; ++s) {
        const JumpOperatorSet ja = build_jump_operators(pb->a, s, deff_a, scales.inertia_a,
                                                        config.bath_temperature, k);
        const JumpOperatorSet jb = build_jump_operators(pb->b, s, deff_b, scales.inertia_b,
                                                        config.bath_temperature, k);
        const SparseOp* ops_a[3] = {&ja.a1, &ja.a2, &ja.a3};
        const SparseOp* ops_b[3] = {&jb.a1, &jb.a2, &jb.a3};
        for (int p = 0; p < 3; ++p) {
            if (ja.chi == 0.0 && ja.gamma == 0.0 && jb.chi == 0.0 && jb.gamma == 0.0) continue;
            if (opts.independent_baths) {
                model.collapse.push_back(one_sided(*pb, *ops_a[p], Sphere::A, std::sqrt(ja.chi)));
                model.collapse.push_back(one_sided(*pb, *ops_b[p], Sphere::B, std::sqrt(jb.chi)));
                model.collapse.push_back(one_sided(*pb, ops_a[p]->adjoint(), Sphere::A, std::sqrt(ja.gamma)));
                model.collapse.push_back(one_sided(*pb, ops_b[p]->adjoint(), Sphere::B, std::sqrt(jb.gamma)));
            } else {
                model.collapse.push_back(
                    collective(*pb, *ops_a[p], *ops_b[p], std::sqrt(ja.chi), std::sqrt(jb.chi)));
                model.collapse.push_back(collective(*pb, ops_a[p]->adjoint(), ops_b[p]->adjoint(),
                                                    std::sqrt(ja.gamma), std::sqrt(jb.gamma)));
            }
        }
    }
    return model;
}

namespace {

struct Integrator {
    const LindbladModel& model;
    SparseOp h_eff; // H - (i/2) sum C^dag C, non-Hermitian
    int dim;
    RowMatrix g, gdag, n_buf, ndag;

    explicit Integrator(const LindbladModel& m)
        : model(m), dim(m.basis->dim()), g(dim, dim), gdag(dim, dim), n_buf(dim, dim), ndag(dim, dim) {
        SparseOp acc = model.h;
        for (const auto& c : model.collapse) {
            SparseOp cdc = sparse_product(c.adjoint(), c);
            acc = sparse_add(acc, sparse_scale(cplx{0, -0.5}, cdc));
        }
        h_eff = std::move(acc);
    }

    // drho = -i (H_eff rho - (H_eff rho)^dag) + sum C rho C^dag  (rho Hermitian)
    void rhs(const RowMatrix& rho, RowMatrix& out) {
        g.set_zero();
        h_eff.apply_left_add(cplx{1, 0}, rho, g);
        adjoint_into(g, gdag);
        const std::size_t len = out.d.size();
        for (std::size_t i = 0; i < len; ++i)
            out.d[i] = cplx{0, -1} * (g.d[i] - gdag.d[i]);
        for (const auto& c : model.collapse) {
            n_buf.set_zero();
            c.apply_left_add(cplx{1, 0}, rho, n_buf); // N = C rho
            adjoint_into(n_buf, ndag);                // N^dag = rho C^dag
            c.apply_left_add(cplx{1, 0}, ndag, out);  // += C rho C^dag
        }
    }
};

void rk4_step(Integrator& I, const RowMatrix& y, double h, RowMatrix& out,
              RowMatrix& k1, RowMatrix& k2, RowMatrix& k3, RowMatrix& k4, RowMatrix& stage) {
    using framedrag::kernels::zaxpy;
    const std::size_t n = y.d.size();
    I.rhs(y, k1);
    stage = y;
    zaxpy(n, cplx{h / 2, 0}, k1.d.data(), stage.d.data());
    I.rhs(stage, k2);
    stage = y;
    zaxpy(n, cplx{h / 2, 0}, k2.d.data(), stage.d.data());
    I.rhs(stage, k3);
    stage = y;
    zaxpy(n, cplx{h, 0}, k3.d.data(), stage.d.data());
    I.rhs(stage, k4);
    out = y;
    zaxpy(n, cplx{h / 6, 0}, k1.d.data(), out.d.data());
    zaxpy(n, cplx{h / 3, 0}, k2.d.data(), out.d.data());
    zaxpy(n, cplx{h / 3, 0}, k3.d.data(), out.d.data());
    zaxpy(n, cplx{h / 6, 0}, k4.d.data(), out.d.data());
}

double diff_norm(const RowMatrix& a, const RowMatrix& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.d.size(); ++i) acc += std::norm(a.d[i] - b.d[i]);
    return std::sqrt(acc);
}

} // namespace

std::vector<DensityMatrix> integrate_master_equation(const LindbladModel& model,
                                                     const DensityMatrix& rho0,
                                                     const std::vector<double>& times,
                                                     const IntegrateOptions& opts,
                                                     IntegrateDiagnostics* diag) {
    if (rho0.m.rows() != model.basis->dim())
        throw std::invalid_argument("rho0/model dimension mismatch");
    for (size_t k = 1; k < times.size(); ++k)
        if (times[k] < times[k - 1]) throw std::invalid_argument("times not ascending");

    Integrator I(model);
    const int d = I.dim;
    RowMatrix y = RowMatrix::from_eigen(rho0.m);
    RowMatrix ofull(d, d), ohalf(d, d), k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
    IntegrateDiagnostics local;
    IntegrateDiagnostics& dg = diag ? *diag : local;
    dg.min_eigenvalue = 1.0;

    std::vector<DensityMatrix> out;
    double t = 0.0;
    double h = opts.h_init;
    for (double target : times) {
        if (target < t) throw std::invalid_argument("output time before start");
        while (t < target) {
            const double step = std::min(h, target - t);
            rk4_step(I, y, step, ofull, k1, k2, k3, k4, stage);
            rk4_step(I, y, step / 2, ohalf, k1, k2, k3, k4, stage);
            rk4_step(I, ohalf, step / 2, ohalf, k1, k2, k3, k4, stage);
            const double err = diff_norm(ofull, ohalf) / 15.0;
            if (err <= opts.local_tol || step < 1e-12) {
                y = ohalf;
                t += step;
                dg.max_herm_defect = std::max(dg.max_herm_defect, hermitize(y));
                const double drift = std::abs(trace(y).real() - 1.0) + std::abs(trace(y).imag());
                dg.max_trace_drift = std::max(dg.max_trace_drift, drift);
                if (drift > opts.trace_tol)
                    throw std::runtime_error("trace drift above tolerance: " + std::to_string(drift));
                ++dg.steps;
            } else {
                ++dg.rejected;
            }
            const double scale = err > 0 ? 0.9 * std::pow(opts.local_tol / err, 0.2) : 4.0;
            h = step * std::clamp(scale, 0.2, 4.0);
            if (h <= 0 || !std::isfinite(h)) throw std::runtime_error("step size collapsed");
        }
        DensityMatrix snap{y.to_eigen(), model.basis};
        if (opts.check_psd) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(snap.m, Eigen::EigenvaluesOnly);
            const double mineig = es.eigenvalues().minCoeff();
            dg.min_eigenvalue = std::min(dg.min_eigenvalue, mineig);
            if (mineig < -opts.psd_tol)
                throw std::runtime_error("negative eigenvalue beyond tolerance: " + std::to_string(mineig));
        }
        out.push_back(std::move(snap));
    }
    return out;
}

TemperatureSweep negativity_vs_temperature(const ExperimentConfig& config, double t_fixed,
                                           const std::vector<double>& temperature_grid,
                                           const BlackbodyModelOptions& opts,
                                           const IntegrateOptions& iopts) {
    auto run_point = [&](double temp) {
        ExperimentConfig cfg = config;
        cfg.bath_temperature = temp;
        const DerivedScales scales = derive_scales(cfg);
        LindbladModel model = build_master_equation(cfg, opts);
        StateVector psi0 = opts.m_l_preparation
                               ? initial_cat_state(model.basis, AnchoredM{scales.l_a, 0},
                                                   AnchoredM{scales.l_b, 0})
                               : initial_eigenstate(model.basis, AnchoredM{0.0, 0}, AnchoredM{0.0, 0});
        DensityMatrix rho0 = pure_density(psi0);
        auto states = integrate_master_equation(model, rho0, {t_fixed}, iopts);
        TemperatureRow row;
        row.temperature = temp;
        row.log_negativity = log_negativity(states.back());
        row.global_entropy = von_neumann_entropy_bits(states.back());
        return row;
    };

    // grid points are independent; run a couple at a time
    TemperatureSweep sweep;
    sweep.rows.resize(temperature_grid.size());
    const std::size_t workers = std::min<std::size_t>(
        std::max(1u, std::thread::hardware_concurrency()), temperature_grid.size());
    std::vector<std::future<TemperatureRow>> slots(temperature_grid.size());
    std::size_t launched = 0, done = 0;
    while (done < temperature_grid.size()) {
        while (launched < temperature_grid.size() && launched - done < workers) {
            slots[launched] = std::async(std::launch::async, run_point, temperature_grid[launched]);
            ++launched;
        }
        sweep.rows[done] = slots[done].get();
        ++done;
    }

    for (const auto& row : sweep.rows) {
        if (sweep.t_star < 0 && row.log_negativity < 1e-6) {
            sweep.t_star = row.temperature;
            sweep.entropy_at_t_star = row.global_entropy;
        }
    }
    return sweep;
}

} // namespace framedrag
