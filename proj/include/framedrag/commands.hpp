#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "framedrag/config.hpp"
#include "framedrag/linalg.hpp"

namespace framedrag {

// exit codes shared by the CLI surface
inline constexpr int exit_ok = 0;
inline constexpr int exit_verdict = 1; // domain verdict (witness not violated)
inline constexpr int exit_usage = 2;   // usage/config error
inline constexpr int exit_numeric = 3; // numerical failure

inline constexpr const char* version_string = "framedrag 1.0.0";

// plain-text complex matrix: header line "rows cols", then row-major
// "re,im" pairs separated by spaces
void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix(std::istream& in);

// run record written next to every output file (<out>.manifest): command,
// version, wall time, output list and the byte-reproducible config snapshot
void write_manifest(const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& outputs, double wall_seconds);

struct EntropyCurveArgs {
    std::vector<double> m_list{0.0, 0.5, 0.9, 1.0};
    double t_max = 10.0;
    int points = 21;
    bool eigenstate = false;
    std::string out_path;
};

struct CollisionArgs {
    std::vector<int> n_list{1, 3, 6};
    std::vector<std::string> preparations{"m0", "ml"};
    double t_max = 10.0;
    int points = 9;
    std::string out_path;
};

struct BlackbodyArgs {
    double t_max = 10.0;
    int points = 9;
    std::vector<double> temperatures{0.6, 0.8, 1.1};
    std::optional<std::string> sweep; // "T1:T2:steps" switches to the sweep mode
    double sweep_time = 1.0;
    std::string out_path;
};

struct WitnessArgs {
    std::string state_file; // empty: evolve the configured preparation
    double time = 10.0;
    bool m_l_preparation = true;
    double added_variance = 0.0; // detector-noise variance per component
};

struct BudgetArgs {
    std::string format = "text"; // or "csv"
};

struct DetectionArgs {
    std::optional<double> gradient;
};

int cmd_derive(const RunConfig& cfg, std::ostream& out);
int cmd_entropy_curve(const RunConfig& cfg, const EntropyCurveArgs& args, std::ostream& log);
int cmd_collision(const RunConfig& cfg, const CollisionArgs& args, std::ostream& log);
int cmd_blackbody(const RunConfig& cfg, const BlackbodyArgs& args, std::ostream& log);
int cmd_witness(const RunConfig& cfg, const WitnessArgs& args, std::ostream& out);
int cmd_budget(const RunConfig& cfg, const BudgetArgs& args, std::ostream& out);
int cmd_detection(const RunConfig& cfg, const DetectionArgs& args, std::ostream& out);
int cmd_wigner3j(const std::vector<double>& jm, std::ostream& out);

} // namespace framedrag
