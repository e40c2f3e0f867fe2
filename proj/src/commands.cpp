#include "framedrag/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <chrono>

#include "framedrag/blackbody.hpp"
#include "framedrag/collisions.hpp"
#include "framedrag/dynamics.hpp"
#include "framedrag/entanglement.hpp"
#include "framedrag/wigner.hpp"

namespace framedrag {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    std::ostringstream o;
    o << std::setprecision(12) << v;
    return o.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n == 1) return {hi};
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

} // namespace

void write_manifest(const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& outputs, double wall_seconds) {
    if (outputs.empty()) return;
    std::ofstream f(outputs.front() + ".manifest");
    if (!f) return; // the manifest never blocks the run
    f << "command: " << command << "\n";
    f << "version: " << version_string << "\n";
    f << "wall_seconds: " << std::setprecision(3) << wall_seconds << "\n";
    for (const auto& o : outputs) f << "output: " << o << "\n";
    f << "config:\n" << dump_config(cfg);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
    out << m.rows() << " " << m.cols() << "\n";
    out << std::setprecision(17);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << m(i, j).real() << "," << m(i, j).imag();
        }
        out << "\n";
    }
}

Eigen::MatrixXcd read_matrix(std::istream& in) {
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
        throw std::runtime_error("matrix file: malformed header");
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("matrix file: truncated data");
            const auto comma = tok.find(',');
            if (comma == std::string::npos) throw std::runtime_error("matrix file: expected re,im");
            m(i, j) = {std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))};
        }
    return m;
}

int cmd_derive(const RunConfig& cfg, std::ostream& out) {
    const DerivedScales d = derive_scales(cfg.exp);
    out << "quantity            A                    B\n";
    out << "mass_kg             " << num(d.mass_a) << "   " << num(d.mass_b) << "\n";
    out << "inertia_kg_m2       " << num(d.inertia_a) << "   " << num(d.inertia_b) << "\n";
    out << "ang_momentum_J_s    " << num(d.ang_mom_a) << "   " << num(d.ang_mom_b) << "\n";
    out << "quantum_number_l    " << num(d.l_a) << "   " << num(d.l_b) << "\n";
    out << "alpha_per_s         " << num(d.alpha) << "\n";
    out << "v_g_J               " << num(d.v_g) << "\n";
    out << "g_at_t(1s)          " << num(d.coupling_g(1.0)) << "\n";
    out << "g_at_t(10s)         " << num(d.coupling_g(10.0)) << "\n";
    return exit_ok;
}

int cmd_entropy_curve(const RunConfig& cfg, const EntropyCurveArgs& args, std::ostream& log) {
    if (args.points < 1 || args.t_max <= 0) throw ConfigError("entropy-curve needs points >= 1, t-max > 0");
    EntropyCurveOptions opts;
    opts.prep = args.eigenstate ? Preparation::eigenstate : Preparation::superposition;
    opts.initial_half_width = cfg.num.window_half_width;
    const auto t0 = std::chrono::steady_clock::now();
    auto rows = entropy_curve(cfg.exp, args.m_list, linspace(0.0, args.t_max, args.points), opts);
    auto f = open_out(args.out_path);
    f << "t_seconds,m_over_l,entropy_closed_bits,entropy_exact_bits,truncation_loss\n";
    for (const auto& r : rows)
        f << num(r.t) << "," << num(r.m_over_l) << "," << num(r.entropy_closed) << ","
          << num(r.entropy_exact) << "," << num(r.truncation_loss) << "\n";
    f.close();
    write_manifest("entropy-curve", cfg, {args.out_path},
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    log << "wrote " << rows.size() << " rows to " << args.out_path << "\n";
    return exit_ok;
}

int cmd_collision(const RunConfig& cfg, const CollisionArgs& args, std::ostream& log) {
    if (args.points < 1 || args.t_max <= 0) throw ConfigError("collision needs points >= 1, t-max > 0");
    CollisionCurveOptions opts;
    opts.half_width = cfg.num.collision_margin;
    const auto t0 = std::chrono::steady_clock::now();
    auto rows = collision_negativity_curve(cfg.exp, args.n_list,
                                           linspace(0.0, args.t_max, args.points),
                                           args.preparations, opts);
    auto f = open_out(args.out_path);
    f << "t_seconds,n,preparation,log_negativity\n";
    for (const auto& r : rows)
        f << num(r.t) << "," << r.n << "," << r.preparation << "," << num(r.log_negativity) << "\n";
    f.close();
    write_manifest("collision", cfg, {args.out_path},
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    log << "wrote " << rows.size() << " rows to " << args.out_path << "\n";
    return exit_ok;
}

int cmd_blackbody(const RunConfig& cfg, const BlackbodyArgs& args, std::ostream& log) {
    BlackbodyModelOptions opts;
    opts.m_half_width = cfg.num.blackbody_m_half_width;
    opts.shell_half_width = cfg.num.blackbody_shell_half_width;
    opts.independent_baths = cfg.num.independent_baths;
    IntegrateOptions iopts;
    iopts.local_tol = cfg.num.ode_local_tol;

    const auto t0 = std::chrono::steady_clock::now();
    if (args.sweep) {
        double t1 = 0, t2 = 0;
        int steps = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(*args.sweep);
        if (!(ss >> t1 >> c1 >> t2 >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 ||
            t2 < t1)
            throw ConfigError("--sweep-T wants T1:T2:steps");
        opts.m_l_preparation = false; // |l,0> state per the temperature study
        auto sweep = negativity_vs_temperature(cfg.exp, args.sweep_time, linspace(t1, t2, steps),
                                               opts, iopts);
        auto f = open_out(args.out_path);
        f << "T_kelvin,log_negativity,global_entropy_bits\n";
        for (const auto& r : sweep.rows)
            f << num(r.temperature) << "," << num(r.log_negativity) << "," << num(r.global_entropy)
              << "\n";
        f.close();
        write_manifest("blackbody", cfg, {args.out_path},
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        log << "wrote " << sweep.rows.size() << " rows to " << args.out_path;
        if (sweep.t_star >= 0)
            log << " (negativity gone at T* = " << num(sweep.t_star) << " K, S = "
                << num(sweep.entropy_at_t_star) << " bits)";
        log << "\n";
        return exit_ok;
    }

    if (args.points < 1 || args.t_max <= 0) throw ConfigError("blackbody needs points >= 1, t-max > 0");
    opts.m_l_preparation = true;
    auto f = open_out(args.out_path);
    f << "t_seconds,T_kelvin,log_negativity,trace_defect\n";
    const auto t_grid = linspace(args.t_max / args.points, args.t_max, args.points);
    for (double temp : args.temperatures) {
        ExperimentConfig e = cfg.exp;
        e.bath_temperature = temp;
        const DerivedScales scales = derive_scales(e);
        LindbladModel model = build_master_equation(e, opts);
        StateVector psi0 = initial_cat_state(model.basis, AnchoredM{scales.l_a, 0},
                                             AnchoredM{scales.l_b, 0});
        IntegrateDiagnostics diag;
        auto states = integrate_master_equation(model, pure_density(psi0), t_grid, iopts, &diag);
        for (size_t i = 0; i < t_grid.size(); ++i)
            f << num(t_grid[i]) << "," << num(temp) << "," << num(log_negativity(states[i]))
              << "," << num(diag.max_trace_drift) << "\n";
    }
    f.close();
    write_manifest("blackbody", cfg, {args.out_path},
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    log << "wrote " << args.points * args.temperatures.size() << " rows to " << args.out_path << "\n";
    return exit_ok;
}

int cmd_witness(const RunConfig& cfg, const WitnessArgs& args, std::ostream& out) {
    const DerivedScales scales = derive_scales(cfg.exp);
    const int w = cfg.num.window_half_width;
    std::vector<AnchoredM> anchors;
    AnchoredM m{0.0, 0};
    if (args.m_l_preparation) {
        m = {scales.l_a, 0};
        anchors = {m, m.negated()};
    } else {
        anchors = {m};
    }
    SphereBasis wa = SphereBasis::windows(scales.l_a, anchors, w);
    SphereBasis wb = SphereBasis::windows(scales.l_b, anchors, w);
    ProductBasisPtr pb = make_product_basis(std::move(wa), std::move(wb));

    WitnessReport rep;
    if (!args.state_file.empty()) {
        std::ifstream in(args.state_file);
        if (!in) throw ConfigError("cannot open state file: " + args.state_file);
        Eigen::MatrixXcd c = read_matrix(in);
        if (c.rows() != pb->a.dim() || c.cols() != pb->b.dim())
            throw ConfigError("state file dimensions do not match the configured windows");
        StateVector psi;
        psi.basis = pb;
        psi.v = Eigen::VectorXcd(pb->dim());
        for (int ia = 0; ia < pb->a.dim(); ++ia)
            for (int ib = 0; ib < pb->b.dim(); ++ib)
                psi.v[pb->index(ia, ib)] = c(ia, ib);
        const double nn = psi.v.norm();
        if (nn <= 0) throw ConfigError("state file holds the zero vector");
        psi.v /= nn;
        rep = witness_sum_uncertainty(psi, 1e-8, args.added_variance);
    } else {
        StateVector psi0 = initial_cat_state(pb, m, m);
        OperatorMatrix h = build_interaction_hamiltonian(*pb, scales.alpha);
        EvolutionResult evo = evolve_exact(h, psi0, {args.time});
        rep = witness_sum_uncertainty(evo.states.back(), 1e-8, args.added_variance);
    }

    out << "sum-uncertainty witness (hbar^2 units)\n";
    out << "  var_x + var_y + var_z = " << num(rep.var_x) << " + " << num(rep.var_y) << " + "
        << num(rep.var_z) << "\n";
    out << "  total                 = " << num(rep.total_variance_sum) << "\n";
    out << "  separable bound       = " << num(rep.bound) << "\n";
    out << "  margin                = " << num(rep.margin) << "\n";
    out << (rep.violated ? "VIOLATED: state is entangled\n"
                         : "not violated: no separability verdict\n");
    return rep.violated ? exit_ok : exit_verdict;
}

int cmd_budget(const RunConfig& cfg, const BudgetArgs& args, std::ostream& out) {
    auto lines = budget_report(cfg.exp, cfg.budget);
    if (args.format == "csv") {
        out << "name,value,unit,target,pass\n";
        for (const auto& l : lines)
            out << l.name << "," << num(l.value) << "," << l.unit << "," << num(l.target) << ","
                << (l.pass ? "PASS" : "FAIL") << "\n";
    } else if (args.format == "text") {
        out << std::left;
        for (const auto& l : lines) {
            out << "  " << std::setw(28) << l.name << std::setw(16)
                << (l.pass ? (l.marginal ? "PASS (marginal)" : "PASS") : "FAIL")
                << num(l.value) << " " << l.unit << "  (target " << num(l.target) << " " << l.unit
                << ")";
            if (!l.note.empty()) out << "  -- " << l.note;
            out << "\n";
        }
    } else {
        throw ConfigError("--format wants csv or text");
    }
    return exit_ok;
}

int cmd_detection(const RunConfig& cfg, const DetectionArgs& args, std::ostream& out) {
    RunConfig c = cfg;
    if (args.gradient) c.exp.field_gradient = *args.gradient;
    const DetectionReport r = detection_trap(c.exp);
    out << "trap frequency Omega        = " << num(r.omega_trap) << " rad/s\n";
    out << "coupling lambda             = " << num(r.lambda_coupling) << " 1/s\n";
    out << "<B^2> side                  = " << num(r.bsq_side) << " T^2\n";
    out << "<L^2>/(I gamma)^2 side      = " << num(r.lsq_side) << " T^2\n";
    out << "trap term dominates         = " << (r.b_dominates ? "yes" : "no") << "\n";
    out << "required dz coefficient     = " << num(r.delta_z_coefficient) << " m per (T/m) s^2\n";
    out << "required dz at t=10s        = " << num(r.required_delta_z) << " m\n";
    return exit_ok;
}

int cmd_wigner3j(const std::vector<double>& jm, std::ostream& out) {
    if (jm.size() != 6) throw ConfigError("wigner3j wants j1 j2 j3 m1 m2 m3");
    const double j1 = jm[0], j2 = jm[1], j3 = jm[2], m1 = jm[3], m2 = jm[4], m3 = jm[5];
    double v = 0.0;
    if (std::max({j1, j2, j3}) <= 50.0) {
        v = wigner3j_oracle(j1, j2, j3, m1, m2, m3);
    } else {
        // large-l mode: dipole triples (1, l, l+1)
        if (j1 != 1.0 || std::abs(j3 - (j2 + 1.0)) > 0.0)
            throw ConfigError("large-l mode supports dipole triples (1, l, l+1) only");
        if (m1 == 0.0 && m2 == 0.0 && m3 == 0.0) v = wigner3j_dipole_000(j2);
        else if (m1 == -1.0) v = wigner3j_dipole(j2, +1, -m2);
        else if (m1 == +1.0) v = wigner3j_dipole(j2, -1, -m2);
        else if (m1 == 0.0) v = wigner3j_dipole(j2, 0, -m2);
        else throw ConfigError("large-l mode supports m1 in {-1,0,+1}");
        if (m1 + m2 + m3 != 0.0) v = 0.0;
    }
    out << std::setprecision(15) << v << "\n";
    return exit_ok;
}

} // namespace framedrag
