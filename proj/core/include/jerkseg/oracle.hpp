#pragma once

#include <jerkseg/jerk_profile.hpp>
#include <jerkseg/system.hpp>

namespace jerkseg {

/// Classical fixed-step fourth-order Runge-Kutta integration of the
/// state-space model. Steps are split exactly at the jerk discontinuities,
/// which are known a priori, so each substep integrates a linear system with
/// constant input. Independent of the closed-form responses; used to certify
/// them.
sampled_trajectory rk4_integrate(const system_params& sys,
                                 const jerk_profile& profile, double dt,
                                 double t_end,
                                 std::size_t cap = default_grid_cap);

/// Result of the exhaustive grid search over four-step segments.
struct brute_force_result {
    double t2 = 0.0;
    double t3 = 0.0;
    double t_f = 0.0;
    double residual_x = 0.0;      ///< |x(t_f) + a_max m_s/k| at the winner [m]
    double residual_x_dot = 0.0;  ///< |x_dot(t_f)| at the winner [m/s]
    std::size_t candidates = 0;   ///< candidates examined
};

/// Desk-scale optimality oracle for the single-negative-section regime:
/// scans every grid candidate 0 < t2 < t3 < t_f inside the admissible
/// terminal-time interval, in ascending t_f, and returns the first candidate
/// whose terminal residuals (by the closed forms) pass a grid-commensurate
/// feasibility bound. t3 - t2 is pinned by the exact terminal-acceleration
/// condition, which removes one grid dimension without excluding any
/// feasible candidate.
///
/// Throws numerical_error("NoFeasible...") when no candidate passes.
brute_force_result brute_force_n4(const system_params& sys, double a_max,
                                  double j_max, double grid_res);

}  // namespace jerkseg
