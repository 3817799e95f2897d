#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace cli = jerkseg::cli;

int main(int argc, char** argv) {
    CLI::App app{"Time-optimal jerk-segment planner for plants with an "
                 "oscillatory base"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("-c,--config", config_path, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);

    // plan
    auto* plan = app.add_subcommand("plan", "plan one time-optimal jerk segment");
    cli::plan_options plan_opt;
    plan->add_option("--amax", plan_opt.a_max, "target acceleration [m/s^2]")->required();
    double plan_jmax = 0.0;
    auto* plan_jmax_opt = plan->add_option("--jmax", plan_jmax, "jerk bound [m/s^3]");
    int plan_iters = 0;
    auto* plan_iter_opt = plan->add_option("--iters", plan_iters, "line-search refinements");
    bool plan_single = false;
    auto* plan_single_opt =
        plan->add_flag("--single-precision", plan_single, "run the search in float arithmetic");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "sample a trajectory as CSV");
    cli::simulate_options sim_opt;
    double sim_amax = 0.0;
    auto* sim_amax_opt = simulate->add_option("--amax", sim_amax, "target acceleration [m/s^2]");
    double sim_jmax = 0.0;
    auto* sim_jmax_opt = simulate->add_option("--jmax", sim_jmax, "jerk bound [m/s^3]");
    simulate->add_option("--method", sim_opt.method, "ocp, zv or scurve")
        ->check(CLI::IsMember({"ocp", "zv", "scurve"}));
    std::string sim_profile;
    auto* sim_profile_opt = simulate->add_option(
        "--profile", sim_profile, "step file with 't jerk_step' rows instead of planning");
    simulate->add_option("--dt", sim_opt.dt, "sample step [s]");
    double sim_tend = 0.0;
    auto* sim_tend_opt = simulate->add_option("--t-end", sim_tend, "end of the grid [s]");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "terminal times per method as CSV");
    cli::sweep_options sweep_opt;
    sweep->add_option("--amax-min", sweep_opt.a_min, "range start [m/s^2]");
    sweep->add_option("--amax-max", sweep_opt.a_max, "range end [m/s^2]");
    sweep->add_option("--points", sweep_opt.points, "grid size");
    sweep->add_flag("--log", sweep_opt.log_spacing, "logarithmic spacing");
    sweep->add_option("--methods", sweep_opt.methods, "subset of ocp zv scurve");
    double sweep_jmax = 0.0;
    auto* sweep_jmax_opt = sweep->add_option("--jmax", sweep_jmax, "jerk bound [m/s^3]");
    sweep->add_option("--jobs", sweep_opt.jobs, "worker threads (output order is fixed)");

    // fit
    auto* fit = app.add_subcommand("fit", "fit the residual oscillation of a (t, x) series");
    cli::fit_options fit_opt;
    std::string fit_input = "-";
    fit->add_option("--input", fit_input, "two-column file, '-' for stdin");
    fit->add_option("--t-start", fit_opt.t_start, "fit samples at or after this time [s]");
    fit->add_flag("--detrend", fit_opt.detrend, "subtract the sample mean before fitting");

    // critical-damping
    auto* crit = app.add_subcommand("critical-damping",
                                    "largest damping that still needs several sections");
    cli::critical_damping_options crit_opt;
    crit->add_option("--amax-min", crit_opt.a_min, "range start [m/s^2]");
    crit->add_option("--amax-max", crit_opt.a_max, "range end [m/s^2]");
    crit->add_option("--points", crit_opt.points, "grid size");
    double crit_jmax = 0.0;
    auto* crit_jmax_opt = crit->add_option("--jmax", crit_jmax, "jerk bound [m/s^3]");

    // error-curve
    auto* curve = app.add_subcommand("error-curve", "line-search objective samples as CSV");
    cli::error_curve_options curve_opt;
    curve->add_option("--amax", curve_opt.a_values, "accelerations [m/s^2]");
    curve->add_option("--points", curve_opt.points, "samples per curve");
    double curve_jmax = 0.0;
    auto* curve_jmax_opt = curve->add_option("--jmax", curve_jmax, "jerk bound [m/s^3]");

    CLI11_PARSE(app, argc, argv);

    try {
        const cli::plan_config cfg = cli::load_config(config_path);

        if (*plan) {
            if (*plan_jmax_opt) plan_opt.j_max = plan_jmax;
            if (*plan_iter_opt) plan_opt.n_iter = plan_iters;
            if (*plan_single_opt) plan_opt.single_precision = plan_single;
            cli::cmd_plan(cfg, plan_opt, std::cout);
        } else if (*simulate) {
            if (*sim_amax_opt) sim_opt.a_max = sim_amax;
            if (*sim_jmax_opt) sim_opt.j_max = sim_jmax;
            if (*sim_profile_opt) sim_opt.profile_path = sim_profile;
            if (*sim_tend_opt) sim_opt.t_end = sim_tend;
            cli::cmd_simulate(cfg, sim_opt, std::cout);
        } else if (*sweep) {
            if (*sweep_jmax_opt) sweep_opt.j_max = sweep_jmax;
            cli::cmd_sweep(cfg, sweep_opt, std::cout);
        } else if (*fit) {
            if (fit_input == "-") {
                cli::cmd_fit(cfg, fit_opt, std::cin, std::cout);
            } else {
                std::ifstream in(fit_input);
                if (!in) {
                    throw jerkseg::validation_error("InvalidArgument: cannot open " + fit_input);
                }
                cli::cmd_fit(cfg, fit_opt, in, std::cout);
            }
        } else if (*crit) {
            if (*crit_jmax_opt) crit_opt.j_max = crit_jmax;
            cli::cmd_critical_damping(cfg, crit_opt, std::cout);
        } else if (*curve) {
            if (*curve_jmax_opt) curve_opt.j_max = curve_jmax;
            cli::cmd_error_curve(cfg, curve_opt, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
    return cli::exit_ok;
}
