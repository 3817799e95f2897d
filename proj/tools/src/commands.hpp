#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <jerkseg/jerk_profile.hpp>
#include <jerkseg/planner.hpp>

#include "config.hpp"

namespace jerkseg::cli {

/// Process exit codes shared by all commands.
enum exit_code : int {
    exit_ok = 0,
    exit_validation = 2,
    exit_planning = 3,
    exit_numerical = 4,
};

struct plan_options {
    double a_max = 0.0;
    std::optional<double> j_max;          ///< defaults to limits.j_lim
    std::optional<int> n_iter;            ///< overrides planner.n_iter
    std::optional<bool> single_precision; ///< overrides planner.single_precision
};

/// Plans one segment and writes it as a sectioned document (effective config
/// echo, switching times, coefficients, overshoot and verification report).
void cmd_plan(const plan_config& cfg, const plan_options& opt, std::ostream& out);

struct simulate_options {
    std::optional<double> a_max;         ///< plan/construct for this target
    std::optional<double> j_max;
    std::string method = "ocp";          ///< "ocp", "zv" or "scurve"
    std::optional<std::string> profile_path;  ///< read steps instead of planning
    double dt = 1e-4;
    std::optional<double> t_end;         ///< defaults to the profile end time
};

/// Samples a trajectory and writes CSV rows
/// t,jerk,z_ddot,z_dot,z,x,x_dot,x_ddot.
void cmd_simulate(const plan_config& cfg, const simulate_options& opt,
                  std::ostream& out);

struct sweep_options {
    double a_min = 1.0;
    double a_max = 40.0;
    int points = 64;
    bool log_spacing = false;
    std::vector<std::string> methods{"ocp", "zv", "scurve"};
    std::optional<double> j_max;
    int jobs = 1;
};

/// Terminal-time comparison per method; CSV rows method,a_max,t_f,status.
void cmd_sweep(const plan_config& cfg, const sweep_options& opt, std::ostream& out);

struct fit_options {
    double t_start = 0.0;
    bool detrend = false;  ///< subtract the sample mean before fitting
};

/// Fits the residual oscillation of a two-column (t, x) series read from
/// `in` and writes the parameter document.
void cmd_fit(const plan_config& cfg, const fit_options& opt, std::istream& in,
             std::ostream& out);

struct critical_damping_options {
    double a_min = 20.0;
    double a_max = 40.0;
    int points = 16;
    std::optional<double> j_max;
};

/// Critical damping per acceleration; CSV rows a_max,d_crit,status.
void cmd_critical_damping(const plan_config& cfg,
                          const critical_damping_options& opt, std::ostream& out);

struct error_curve_options {
    std::vector<double> a_values{20.0};
    int points = 128;
    std::optional<double> j_max;
};

/// Line-search objective samples; CSV rows a_max,phi_f,error,root_phi_f.
void cmd_error_curve(const plan_config& cfg, const error_curve_options& opt,
                     std::ostream& out);

/// Maps a thrown library error onto the exit-code contract.
int exit_code_for(const std::exception& e);

}  // namespace jerkseg::cli
