#pragma once

#include <span>
#include <string>
#include <vector>

#include <jerkseg/planner.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// Largest damping value at which the planned segment still needs more than
/// one negative section, located by bisection on d in [0, templ.d] with a
/// relative tolerance on d.
///
/// Throws numerical_error("NeverMultiple...") when even the undamped plant
/// plans with a single section, and numerical_error("NotBracketed...") when
/// the template damping itself still needs several sections.
double critical_damping(const system_params& templ, double a_max, double j_max,
                        double rel_tol = 1e-6);

/// One row of the multi-section versus forced-single-section comparison.
struct time_advantage_row {
    double d;            ///< damping used [kg/s]
    double a_max;        ///< [m/s^2]
    int n_el_optimal;    ///< sections of the unconstrained optimum
    double t_f_optimal;  ///< [s]
    double t_f_single;   ///< terminal time with the structure forced to one section [s]
    double abs_gain;     ///< t_f_single - t_f_optimal [s]
    double rel_gain;     ///< abs_gain / t_f_optimal
    double abs_gain_4seg;  ///< gain for four segments concatenated [s]
    double rel_gain_4seg;  ///< relative gain of the four-segment concatenation
};

/// Compares the free optimum against the forced single-section solution for
/// every (d, a_max) combination. The forced solution keeps the terminal
/// constraints; only the switching-law optimality is given up.
std::vector<time_advantage_row> time_advantage(const system_params& sys,
                                               std::span<const double> a_values,
                                               double j_max,
                                               std::span<const double> d_values);

struct error_curve_point {
    double phi_f;
    double error;
};

/// Samples of the line-search objective over its full interval, with the
/// planner's root attached.
struct error_curve {
    double a_max;
    std::vector<error_curve_point> points;
    double root_phi_f;
};

std::vector<error_curve> error_curves(const system_params& sys,
                                      std::span<const double> a_values,
                                      double j_max, int n_points);

/// One row of the method comparison sweep.
struct sweep_row {
    std::string method;  ///< "ocp", "zv" or "scurve"
    double a_max;
    double t_f;
    bool ok;
};

/// Terminal times per method over a range of accelerations. Rows that fail
/// to plan are marked, not fatal. `jobs` > 1 splits the acceleration grid
/// over threads; the output ordering is independent of it.
std::vector<sweep_row> sweep_methods(const system_params& sys,
                                     std::span<const double> a_values,
                                     double j_max,
                                     std::span<const std::string> methods,
                                     int jobs = 1);

}  // namespace jerkseg
