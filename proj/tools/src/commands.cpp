#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <jerkseg/baselines.hpp>
#include <jerkseg/oracle.hpp>
#include <jerkseg/residual_fit.hpp>
#include <jerkseg/studies.hpp>

namespace jerkseg::cli {

namespace {

planner_settings settings_from(const plan_config& cfg) {
    planner_settings st;
    st.n_iter = cfg.planner.n_iter;
    st.single_precision = cfg.planner.single_precision;
    st.use_table = cfg.planner.precompute;
    st.closure_tol = cfg.planner.closure_tol;
    st.terminal_tol = cfg.planner.terminal_tol;
    return st;
}

void emit_values(std::ostream& out, const char* key,
                 const std::vector<double>& values) {
    out << key << " =";
    for (const double v : values) out << " " << format_double(v);
    out << "\n";
}

jerk_profile profile_from_file(const std::string& path);

}  // namespace

void cmd_plan(const plan_config& cfg, const plan_options& opt, std::ostream& out) {
    const double j_max = opt.j_max.value_or(cfg.limits.j_lim);
    planner_settings st = settings_from(cfg);
    if (opt.n_iter) st.n_iter = *opt.n_iter;
    if (opt.single_precision) st.single_precision = *opt.single_precision;

    const auto seg = plan_segment(cfg.plant, opt.a_max, j_max, st);
    const auto rep = verify_segment(seg, cfg.plant, st.terminal_tol, 1e-8);

    emit_config(out, cfg);
    out << "\n[segment]\n";
    out << "a_max = " << format_double(seg.a_max) << "\n";
    out << "j_max = " << format_double(seg.j_max) << "\n";
    out << "n = " << seg.n() << "\n";
    out << "n_el = " << seg.structure.n_el << "\n";
    out << "t_f = " << format_double(seg.t_f) << "\n";
    out << "phi_f = " << format_double(seg.phi_f) << "\n";
    out << "c1 = " << format_double(seg.structure.c1) << "\n";
    out << "delta_phi_abs = " << format_double(seg.structure.delta_phi_abs) << "\n";
    out << "orientation = "
        << (seg.orientation == search_orientation::standard ? "standard" : "flipped")
        << "\n";
    out << "line_search_evals = " << seg.line_search_evals << "\n";
    emit_values(out, "times", seg.times);
    emit_values(out, "coeffs", seg.coeffs);
    std::vector<double> jerk_steps;
    for (const double c : seg.coeffs) jerk_steps.push_back(c * seg.j_max);
    emit_values(out, "jerk_steps", jerk_steps);
    out << "\n[overshoot]\n";
    out << "max_accel = " << format_double(seg.overshoot.max_accel) << "\n";
    out << "argmax_t = " << format_double(seg.overshoot.argmax_t) << "\n";
    out << "exceeds = " << (seg.overshoot.exceeds ? "true" : "false") << "\n";
    out << "\n[verification]\n";
    out << "residual_x = " << format_double(rep.residual_x) << "\n";
    out << "residual_x_dot = " << format_double(rep.residual_x_dot) << "\n";
    out << "residual_z_ddot = " << format_double(rep.residual_z_ddot) << "\n";
    out << "closure = " << format_double(rep.closure_residual) << "\n";
    out << "switching_residual = " << format_double(rep.switching_residual) << "\n";
    out << "c1_witness = " << format_double(rep.c1) << "\n";
    out << "shift_witness = " << format_double(rep.shift) << "\n";
    out << "terminal_ok = " << (rep.terminal_ok ? "true" : "false") << "\n";
    out << "switching_law_ok = " << (rep.switching_law_ok ? "true" : "false") << "\n";
    out << "jerk_bound_ok = " << (rep.jerk_bound_ok ? "true" : "false") << "\n";
    out << "all_ok = " << (rep.all_ok() ? "true" : "false") << "\n";
}

namespace {

jerk_profile profile_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("InvalidArgument: cannot open profile " + path);
    std::vector<jerk_step> steps;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        std::istringstream row(line);
        double t, a;
        char sep;
        if (row >> t) {
            if (!(row >> a)) {
                row.clear();
                if (!(row >> sep >> a)) {
                    throw validation_error("InvalidArgument: malformed profile row: " + line);
                }
            }
            steps.push_back({t, a});
        }
    }
    return jerk_profile(std::move(steps));
}

}  // namespace

void cmd_simulate(const plan_config& cfg, const simulate_options& opt,
                  std::ostream& out) {
    const derived_params dp = derive_params(cfg.plant);
    const double j_max = opt.j_max.value_or(cfg.limits.j_lim);

    jerk_profile prof;
    if (opt.profile_path) {
        prof = profile_from_file(*opt.profile_path);
    } else {
        if (!opt.a_max) {
            throw validation_error("InvalidArgument: either a profile or a_max is required");
        }
        if (opt.method == "ocp") {
            prof = plan_segment(cfg.plant, *opt.a_max, j_max, settings_from(cfg)).profile();
        } else if (opt.method == "zv") {
            prof = zv_segment(dp, *opt.a_max, j_max);
        } else if (opt.method == "scurve") {
            prof = scurve_segment(*opt.a_max, j_max);
        } else {
            throw validation_error("InvalidArgument: unknown method " + opt.method);
        }
    }

    const double t_end = opt.t_end.value_or(prof.end_time());
    const auto tr = sample_trajectory(prof, opt.dt, t_end, dp);
    out << "t,jerk,z_ddot,z_dot,z,x,x_dot,x_ddot\n";
    for (std::size_t i = 0; i < tr.rows(); ++i) {
        const auto& s = tr.states[i];
        out << format_double(tr.t[i]) << "," << format_double(tr.jerk[i]) << ","
            << format_double(s.z_ddot) << "," << format_double(s.z_dot) << ","
            << format_double(s.z) << "," << format_double(s.x) << ","
            << format_double(s.x_dot) << "," << format_double(tr.x_ddot[i]) << "\n";
    }
}

void cmd_sweep(const plan_config& cfg, const sweep_options& opt, std::ostream& out) {
    if (opt.points < 1 || opt.a_min <= 0.0 || opt.a_max < opt.a_min) {
        throw validation_error("InvalidArgument: bad sweep range");
    }
    std::vector<double> a_values;
    for (int i = 0; i < opt.points; ++i) {
        const double f = opt.points == 1 ? 0.0
                                         : static_cast<double>(i) / (opt.points - 1);
        a_values.push_back(opt.log_spacing
                               ? opt.a_min * std::pow(opt.a_max / opt.a_min, f)
                               : opt.a_min + (opt.a_max - opt.a_min) * f);
    }
    const double j_max = opt.j_max.value_or(cfg.limits.j_lim);
    const auto rows = sweep_methods(cfg.plant, a_values, j_max, opt.methods, opt.jobs);
    out << "method,a_max,t_f,status\n";
    for (const auto& row : rows) {
        out << row.method << "," << format_double(row.a_max) << ","
            << (row.ok ? format_double(row.t_f) : "nan") << ","
            << (row.ok ? "ok" : "failed") << "\n";
    }
}

void cmd_fit(const plan_config& cfg, const fit_options& opt, std::istream& in,
             std::ostream& out) {
    std::vector<double> t;
    std::vector<double> x;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        for (auto& c : line) {
            if (c == ',' || c == ';') c = ' ';
        }
        std::istringstream row(line);
        double ti, xi;
        if (row >> ti >> xi) {
            t.push_back(ti);
            x.push_back(xi);
        }
    }
    if (opt.detrend && !x.empty()) {
        // a segment tail oscillates around the shifted equilibrium, which the
        // offset-free oscillation model cannot absorb
        double mean = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= opt.t_start) {
                mean += x[i];
                ++count;
            }
        }
        if (count > 0) mean /= static_cast<double>(count);
        for (auto& v : x) v -= mean;
    }
    const auto fit = fit_residual(t, x, opt.t_start, derive_params(cfg.plant));
    out << "[fit]\n";
    out << "a0 = " << format_double(fit.a0) << "\n";
    out << "delta = " << format_double(fit.delta) << "\n";
    out << "omega_d = " << format_double(fit.omega_d) << "\n";
    out << "phi0 = " << format_double(fit.phi0) << "\n";
    out << "rms = " << format_double(fit.rms) << "\n";
    out << "samples = " << fit.samples << "\n";
    out << "iterations = " << fit.iterations << "\n";
}

void cmd_critical_damping(const plan_config& cfg,
                          const critical_damping_options& opt, std::ostream& out) {
    if (opt.points < 1 || opt.a_min <= 0.0 || opt.a_max < opt.a_min) {
        throw validation_error("InvalidArgument: bad acceleration range");
    }
    const double j_max = opt.j_max.value_or(cfg.limits.j_lim);
    out << "a_max,d_crit,status\n";
    for (int i = 0; i < opt.points; ++i) {
        const double f = opt.points == 1 ? 0.0
                                         : static_cast<double>(i) / (opt.points - 1);
        const double a = opt.a_min + (opt.a_max - opt.a_min) * f;
        try {
            const double d_crit = critical_damping(cfg.plant, a, j_max);
            out << format_double(a) << "," << format_double(d_crit) << ",ok\n";
        } catch (const numerical_error&) {
            out << format_double(a) << ",nan,never_multiple\n";
        }
    }
}

void cmd_error_curve(const plan_config& cfg, const error_curve_options& opt,
                     std::ostream& out) {
    const double j_max = opt.j_max.value_or(cfg.limits.j_lim);
    const auto curves = error_curves(cfg.plant, opt.a_values, j_max, opt.points);
    out << "a_max,phi_f,error,root_phi_f\n";
    for (const auto& curve : curves) {
        for (const auto& p : curve.points) {
            out << format_double(curve.a_max) << "," << format_double(p.phi_f)
                << "," << format_double(p.error) << ","
                << format_double(curve.root_phi_f) << "\n";
        }
    }
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const validation_error*>(&e)) return exit_validation;
    if (dynamic_cast<const planning_error*>(&e)) return exit_planning;
    if (dynamic_cast<const numerical_error*>(&e)) return exit_numerical;
    return exit_numerical;
}

}  // namespace jerkseg::cli
