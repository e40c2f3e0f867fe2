// framedrag: desk-scale simulation of two rotating microspheres whose angular
// momenta couple through the general-relativistic frame-dragging interaction.

#include <iostream>

#include <CLI11.hpp>

#include "framedrag/commands.hpp"

using namespace framedrag;

int main(int argc, char** argv) {
    CLI::App app{"rotating-microsphere frame-dragging entanglement testbed"};
    app.require_subcommand(1);

    std::string config_path = "configs/nominal.ini";
    app.add_option("-c,--config", config_path, "configuration file")->capture_default_str();

    auto* derive = app.add_subcommand("derive", "print derived scales");

    EntropyCurveArgs ent;
    auto* entropy = app.add_subcommand("entropy-curve", "entropy vs time per m (CSV)");
    entropy->add_option("--m-list", ent.m_list, "m/l values")->capture_default_str();
    entropy->add_option("--t-max", ent.t_max, "max time [s]")->capture_default_str();
    entropy->add_option("--points", ent.points, "time samples")->capture_default_str();
    entropy->add_flag("--eigenstate", ent.eigenstate, "|l,m> preparation instead of the superposition");
    entropy->add_option("--out", ent.out_path, "output CSV")->required();

    CollisionArgs col;
    auto* collision = app.add_subcommand("collision", "collision-mixture negativity (CSV)");
    collision->add_option("--n-list", col.n_list, "max exchanged quanta")->capture_default_str();
    collision->add_option("--prep", col.preparations, "preparations: m0 and/or ml")->capture_default_str();
    collision->add_option("--t-max", col.t_max, "max time [s]")->capture_default_str();
    collision->add_option("--points", col.points, "time samples")->capture_default_str();
    collision->add_option("--out", col.out_path, "output CSV")->required();

    BlackbodyArgs bb;
    auto* blackbody = app.add_subcommand("blackbody", "black-body master equation (CSV)");
    blackbody->add_option("--t-max", bb.t_max, "max time [s] (time-curve mode)")->capture_default_str();
    blackbody->add_option("--points", bb.points, "time samples")->capture_default_str();
    blackbody->add_option("--temps", bb.temperatures, "bath temperatures [K]")->capture_default_str();
    std::string sweep;
    blackbody->add_option("--sweep-T", sweep, "T1:T2:steps temperature sweep at fixed time");
    blackbody->add_option("--time", bb.sweep_time, "fixed evolution time for the sweep [s]")
        ->capture_default_str();
    blackbody->add_option("--out", bb.out_path, "output CSV")->required();

    WitnessArgs wit;
    auto* witness = app.add_subcommand("witness", "sum-uncertainty witness verdict");
    witness->add_option("--state-file", wit.state_file, "re,im matrix file over the configured windows");
    witness->add_option("--time", wit.time, "evolution time when no state file is given")
        ->capture_default_str();
    witness->add_flag("!--m0", wit.m_l_preparation, "use the m=0 preparation instead of m=l");
    witness->add_option("--added-variance", wit.added_variance,
                        "detector-noise variance added per component [hbar^2]")
        ->capture_default_str();

    BudgetArgs bud;
    auto* budget = app.add_subcommand("budget", "noise/feasibility budget");
    budget->add_option("--format", bud.format, "csv or text")->capture_default_str();

    DetectionArgs det;
    auto* detection = app.add_subcommand("detection", "center-of-mass readout scheme numbers");
    double gradient = 0;
    auto* gopt = detection->add_option("--gradient", gradient, "field gradient override [T/m]");

    std::vector<double> jm;
    auto* wigner = app.add_subcommand("wigner3j", "Wigner 3-j value (oracle or large-l mode)");
    wigner->add_option("values", jm, "j1 j2 j3 m1 m2 m3")->expected(6);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        if (wigner->parsed()) return cmd_wigner3j(jm, std::cout);

        RunConfig cfg = load_config(config_path);
        if (derive->parsed()) return cmd_derive(cfg, std::cout);
        if (entropy->parsed()) return cmd_entropy_curve(cfg, ent, std::cout);
        if (collision->parsed()) return cmd_collision(cfg, col, std::cout);
        if (blackbody->parsed()) {
            if (!sweep.empty()) bb.sweep = sweep;
            return cmd_blackbody(cfg, bb, std::cout);
        }
        if (witness->parsed()) return cmd_witness(cfg, wit, std::cout);
        if (budget->parsed()) return cmd_budget(cfg, bud, std::cout);
        if (detection->parsed()) {
            if (gopt->count()) det.gradient = gradient;
            return cmd_detection(cfg, det, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numeric;
    }
    return exit_usage;
}
