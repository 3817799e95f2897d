#include <jerkseg/studies.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <jerkseg/baselines.hpp>

namespace jerkseg {

namespace {

int sections_at_damping(system_params sys, double d, double a_max, double j_max) {
    sys.d = d;
    planner_settings st;
    st.record_trace = false;
    return plan_segment(sys, a_max, j_max, st).structure.n_el;
}

}  // namespace

double critical_damping(const system_params& templ, double a_max, double j_max,
                        double rel_tol) {
    if (!(a_max > 0.0) || !(j_max > 0.0)) {
        throw validation_error("InvalidArgument: a_max and j_max must be > 0");
    }
    if (sections_at_damping(templ, 0.0, a_max, j_max) < 2) {
        throw numerical_error(
            "NeverMultiple: a single negative section is optimal even without damping");
    }
    if (sections_at_damping(templ, templ.d, a_max, j_max) >= 2) {
        throw numerical_error(
            "NotBracketed: the template damping itself requires multiple sections");
    }
    double lo = 0.0;  // needs >= 2 sections
    double hi = templ.d;
    while (hi - lo > rel_tol * templ.d) {
        const double mid = 0.5 * (lo + hi);
        if (sections_at_damping(templ, mid, a_max, j_max) >= 2) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<time_advantage_row> time_advantage(const system_params& sys,
                                               std::span<const double> a_values,
                                               double j_max,
                                               std::span<const double> d_values) {
    std::vector<time_advantage_row> rows;
    rows.reserve(a_values.size() * d_values.size());
    planner_settings free_structure;
    free_structure.record_trace = false;
    planner_settings single = free_structure;
    single.mode = structure_mode::force_single;

    for (const double d : d_values) {
        system_params s = sys;
        s.d = d;
        for (const double a : a_values) {
            const jerk_segment opt = plan_segment(s, a, j_max, free_structure);
            const jerk_segment forced = plan_segment(s, a, j_max, single);
            time_advantage_row row;
            row.d = d;
            row.a_max = a;
            row.n_el_optimal = opt.structure.n_el;
            row.t_f_optimal = opt.t_f;
            row.t_f_single = forced.t_f;
            row.abs_gain = forced.t_f - opt.t_f;
            row.rel_gain = row.abs_gain / opt.t_f;
            row.abs_gain_4seg = 4.0 * row.abs_gain;
            row.rel_gain_4seg = row.abs_gain_4seg / (4.0 * opt.t_f);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<error_curve> error_curves(const system_params& sys,
                                      std::span<const double> a_values,
                                      double j_max, int n_points) {
    if (n_points < 2) throw validation_error("InvalidArgument: n_points must be >= 2");
    const derived_params dp = derive_params(sys);
    std::vector<error_curve> out;
    out.reserve(a_values.size());
    planner_settings st;
    st.record_trace = false;
    for (const double a : a_values) {
        error_curve curve;
        curve.a_max = a;
        const double a_star = dp.omega_d * a / j_max;
        const double inset = 1e-9;
        for (int i = 0; i < n_points; ++i) {
            const double phi = a_star + inset +
                               (std::numbers::pi - 2.0 * inset) * i / (n_points - 1);
            curve.points.push_back({phi, length_error(phi, a_star, dp.p1)});
        }
        curve.root_phi_f = plan_segment(sys, a, j_max, st).phi_f;
        out.push_back(std::move(curve));
    }
    return out;
}

std::vector<sweep_row> sweep_methods(const system_params& sys,
                                     std::span<const double> a_values,
                                     double j_max,
                                     std::span<const std::string> methods,
                                     int jobs) {
    const derived_params dp = derive_params(sys);
    std::vector<sweep_row> rows(methods.size() * a_values.size());

    const auto fill = [&](std::size_t begin, std::size_t end) {
        planner_settings st;
        st.record_trace = false;
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::string& method = methods[idx / a_values.size()];
            const double a = a_values[idx % a_values.size()];
            sweep_row row{method, a, std::numeric_limits<double>::quiet_NaN(), false};
            try {
                if (method == "ocp") {
                    row.t_f = plan_segment(sys, a, j_max, st).t_f;
                } else if (method == "zv") {
                    row.t_f = zv_terminal_time(dp, a, j_max);
                } else if (method == "scurve") {
                    row.t_f = a / j_max;
                } else {
                    throw validation_error("InvalidArgument: unknown method " + method);
                }
                row.ok = true;
            } catch (const planning_error&) {
            } catch (const numerical_error&) {
            }
            rows[idx] = std::move(row);
        }
    };

    const std::size_t total = rows.size();
    jobs = std::max(1, jobs);
    if (jobs == 1 || total < 2) {
        fill(0, total);
    } else {
        const std::size_t workers = std::min<std::size_t>(jobs, total);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(fill, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace jerkseg
